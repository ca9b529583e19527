import numpy as np
import pytest
from hypothesis import given

from conelab.algebra import Element, block_scalars, diag, mul, random_element, scale, unit
from conelab.errors import ShapeMismatch
from conelab.jordan import (
    ConeMap,
    JordanIso,
    extract_jordan_sandwich,
    extract_jordan_sqrt_congruence,
    max_pointwise_gap,
    random_jordan_iso,
    verify_jordan,
)
from conelab.spectral import op_norm, spectrum

from conftest import pd, seeds, shapes


def test_identity_and_transpose():
    x = Element([[[1, 2], [3, 4]]])
    assert JordanIso.identity([2])(x) == x
    assert JordanIso.transpose_map([2])(x).allclose(Element([[[1, 3], [2, 4]]]))
    J = random_jordan_iso([2, 3], 0)
    assert J(unit([2, 3])).allclose(unit([2, 3]), atol=1e-12)


def test_validation():
    with pytest.raises(ValueError):
        JordanIso([0], [np.array([[1, 1], [0, 1]], dtype=complex)])
    with pytest.raises(ValueError):
        JordanIso([0, 0], [np.eye(2), np.eye(2)])
    J = JordanIso.identity([2])
    with pytest.raises(ShapeMismatch):
        J(unit([3]))


def test_block_permutation():
    J = JordanIso([1, 0], [np.eye(2), np.eye(2)])
    x = Element([np.diag([1.0, 2.0]), np.diag([3.0, 4.0])])
    y = J(x)
    assert np.allclose(y.blocks[0], np.diag([3, 4])) and np.allclose(y.blocks[1], np.diag([1, 2]))


@given(shapes, seeds)
def test_random_jordan_is_jordan(shape, seed):
    J = random_jordan_iso(shape, seed)
    rep = verify_jordan(J, shape, 20, seed, tol=1e-9)
    assert rep.passed, rep.violations
    x = pd(shape, seed)
    assert J.inverse()(J(x)).allclose(x, atol=1e-10 * op_norm(x))
    assert np.allclose(spectrum(J(x)), spectrum(x), atol=1e-10 * op_norm(x))


def test_verify_jordan_rejects_scaled_map():
    J = JordanIso.identity([2])
    rep = verify_jordan(lambda x: scale(J(x), 2.0), [2], 10)
    assert "unit" in rep.failing()


def test_verify_jordan_rejects_noncentral_sqrt_congruence():
    phi = ConeMap.sqrt_congruence(JordanIso.identity([2]), Element([[[2, 1], [1, 1]]]))
    rep = verify_jordan(phi, [2], 100)
    assert rep.violations["additivity"] > 0.01


def test_cone_map_examples():
    J = JordanIso.identity([2])
    x = diag(1, 3)
    assert ConeMap.sandwich(J, unit([2]))(x).allclose(x)
    assert ConeMap.sqrt_congruence(J, unit([2]))(x).allclose(x, atol=1e-12)
    assert ConeMap.sqrt_congruence(J, scale(unit([2]), 2))(x).allclose(diag(2, 6), atol=1e-12)
    with pytest.raises(ValueError):
        ConeMap("Sandwich", J)
    with pytest.raises(ValueError):
        ConeMap("Nope", J)


def test_power_deformed_of_plain_is_plain():
    J = random_jordan_iso([3], 2)
    psi = ConeMap.power_deformed(ConeMap.plain(J), 2.0)
    assert max_pointwise_gap(psi, J, [3], 20) < 1e-10


def test_inverse_sqrt_congruence_relation():
    J = random_jordan_iso([2], 1)
    a = pd([2], 9)
    f1, f2 = ConeMap.sqrt_congruence(J, a), ConeMap.inverse_sqrt_congruence(J, a)
    x = pd([2], 10)
    from conelab.spectral import inv

    assert f2(x).allclose(inv(f1(inv(x))), atol=1e-9)


@given(shapes, seeds)
def test_extraction_sandwich_recovers(shape, seed):
    J = random_jordan_iso(shape, seed)
    a = random_element(shape, "PositiveInvertible", (0.25, 4), seed + 1)
    rec = extract_jordan_sandwich(ConeMap.sandwich(J, a), unit(shape))
    assert max_pointwise_gap(rec, J, shape, 20, seed) < 1e-9


@given(shapes, seeds)
def test_extraction_sqrt_congruence_recovers(shape, seed):
    J = random_jordan_iso(shape, seed)
    a = random_element(shape, "PositiveInvertible", (0.25, 4), seed + 1)
    rec = extract_jordan_sqrt_congruence(ConeMap.sqrt_congruence(J, a), unit(shape))
    assert max_pointwise_gap(rec, J, shape, 20, seed) < 1e-8


def test_extraction_of_plain_is_identity_recovery():
    J = random_jordan_iso([2, 3], 4)
    e = unit([2, 3])
    assert max_pointwise_gap(extract_jordan_sandwich(J, e), J, [2, 3], 10) < 1e-10
    assert max_pointwise_gap(extract_jordan_sqrt_congruence(J, e), J, [2, 3], 10) < 1e-10
    ident = JordanIso.identity([2])
    assert max_pointwise_gap(extract_jordan_sqrt_congruence(lambda x: x, unit([2])), ident, [2], 10) < 1e-10


def test_sandwich_extraction_of_wrong_form_is_not_jordan():
    phi = ConeMap.sqrt_congruence(JordanIso.identity([2]), Element([[[2, 1], [1, 1]]]))
    rep = verify_jordan(extract_jordan_sandwich(phi, unit([2])), [2], 50)
    assert not rep.passed


def test_central_weight_gives_scaled_jordan():
    J = random_jordan_iso([2, 3], 3)
    c = block_scalars([2, 3], [2.0, 5.0])
    phi = ConeMap.sqrt_congruence(J, c)
    x = pd([2, 3], 1)
    assert phi(x).allclose(mul(c, J(x)), atol=1e-9 * op_norm(x))
