import json
import math

import numpy as np
import pytest

import gptinfo


def test_classical_entropy():
    assert gptinfo.classical_entropy([0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-12)
    assert gptinfo.classical_entropy([0.5, 0.5], "tsallis:2") == pytest.approx(0.5, abs=1e-12)
    assert gptinfo.entropy_upper_bound(4, "renyi:2") == pytest.approx(math.log(4), abs=1e-12)
    assert gptinfo.majorizes([1.0, 0.0], [0.5, 0.5])


def test_validation_errors_carry_codes():
    with pytest.raises(gptinfo.GptinfoError) as info:
        gptinfo.classical_entropy([0.5, 0.6])
    assert info.value.code == "NotNormalized"
    with pytest.raises(ValueError):
        gptinfo.classical_entropy([1.0], "renyi:1")


def test_quantum():
    rho = np.diag([0.7, 0.3]).astype(complex)
    assert gptinfo.eigen_spectrum(rho) == pytest.approx([0.7, 0.3])
    exact = gptinfo.quantum_entropy(rho)
    value, effects = gptinfo.quantum_entropy_min_search(rho, budget=100, seed=1)
    assert value >= exact - 1e-9
    assert value == pytest.approx(exact, abs=1e-6)
    assert len(effects) >= 2


def test_holevo_zero_plus():
    zero = np.array([[1, 0], [0, 0]], dtype=complex)
    plus = np.full((2, 2), 0.5, dtype=complex)
    chi = gptinfo.holevo_chi([0.5, 0.5], [zero, plus])
    c = math.sqrt(0.5)
    lam = [(1 + c) / 2, (1 - c) / 2]
    assert chi == pytest.approx(-sum(x * math.log(x) for x in lam), abs=1e-12)
    z = [np.diag([1, 0]).astype(complex), np.diag([0, 1]).astype(complex)]
    assert gptinfo.accessible_info([0.5, 0.5], [zero, plus], z) <= chi + 1e-9


def test_polytopes():
    square = gptinfo.StateSpace.regular_polygon(4)
    assert len(square) == 4
    assert len(square.frames()) == 6
    s = square.spectrum([0.0, 0.0])
    assert s["exists"] and s["weights"] == pytest.approx([0.5, 0.5])
    quad = gptinfo.StateSpace.custom([[1, 0], [-1, 0], [0, 1], [0, -2]])
    assert quad.spectrum([0, 0])["weights"] == pytest.approx([2 / 3, 1 / 3])
    value, frame = square.frame_entropy([0.0, 0.0])
    assert value == pytest.approx(math.log(2))
    assert square.spectral_entropy([0.0, 0.0]) == pytest.approx(math.log(2))


def test_composites():
    square = gptinfo.StateSpace.regular_polygon(4)
    pr = gptinfo.pr_box(square, square)
    separable, witness = gptinfo.is_separable(square, square, pr)
    assert not separable and witness == []
    assert gptinfo.max_tensor_member(square, square, pr)
    bit = gptinfo.StateSpace.simplex(2)
    assert gptinfo.classical_collapse_check(bit, bit)
    assert not gptinfo.classical_collapse_check(square, square)


def test_cli_in_process():
    code, out, err = gptinfo.run_cli(["entropy", "--pair", "shannon", "--p", "0.5,0.5"])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.693147180560)
    code, _, err = gptinfo.run_cli(["entropy"])
    assert code == 2 and "--p" in err
