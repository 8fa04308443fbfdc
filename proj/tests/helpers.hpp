#pragma once

#include <cmath>
#include <string>

#include <doctest.h>

#include "gptinfo/error.hpp"

// Absolute-tolerance comparison.
inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

#define CHECK_ERROR_CODE(expr, ec)                                 \
  do {                                                             \
    bool thrown_ = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const gptinfo::Error& e_) {                           \
      thrown_ = true;                                              \
      CHECK_MESSAGE(e_.code() == (ec), std::string(gptinfo::to_string(e_.code()))); \
    }                                                              \
    CHECK_MESSAGE(thrown_, std::string("expected ").append(gptinfo::to_string(ec))); \
  } while (0)
