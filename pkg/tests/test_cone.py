import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conelab.algebra import Element, diag, mul, random_element, random_unitary, scale, unit
from conelab.cone import (
    compression_norm,
    diamond_p,
    geometric_mean,
    loewner_leq,
    order_witness_from_norms,
    sequential_product,
    thompson_distance,
    thompson_distance_dominance,
    thompson_distance_spectral,
)
from conelab.errors import NumericalHealthFailure
from conelab.spectral import inv, sqrtm

from conftest import pd, seeds, shapes


def test_loewner_examples():
    assert loewner_leq(diag(1, 2), diag(2, 2)).holds
    v = loewner_leq(diag(1, 3), diag(2, 2))
    assert not v.holds
    assert v.witness.allclose(diag(0, 1))
    same = loewner_leq(diag(1, 3), diag(1, 3))
    assert same.holds and same.margin == 0.0


def test_thompson_examples():
    x = pd([2], 1)
    assert thompson_distance(x, x) == pytest.approx(0, abs=1e-14)
    assert thompson_distance(diag(1, 4), diag(2, 2)) == pytest.approx(math.log(2))
    assert thompson_distance(unit([2]), scale(unit([2]), 3)) == pytest.approx(math.log(3))


@given(shapes, seeds)
def test_thompson_routes_agree(shape, seed):
    x, y = pd(shape, seed), pd(shape, seed + 1)
    assert abs(thompson_distance_dominance(x, y) - thompson_distance_spectral(x, y)) <= 1e-8


def test_thompson_cross_check_raises(monkeypatch):
    import conelab.cone as cone

    monkeypatch.setattr(cone, "thompson_distance_spectral", lambda x, y: 123.0)
    with pytest.raises(NumericalHealthFailure):
        cone.thompson_distance(diag(1, 2), diag(2, 1))


@given(shapes, seeds)
def test_thompson_metric_axioms(shape, seed):
    x, y, z = pd(shape, seed), pd(shape, seed + 1), pd(shape, seed + 2)
    dxy = thompson_distance(x, y)
    assert dxy == pytest.approx(thompson_distance(y, x), abs=1e-10)
    assert dxy <= thompson_distance(x, z) + thompson_distance(z, y) + 1e-10


def test_geometric_mean_examples():
    y = pd([2], 3)
    assert geometric_mean(unit([2]), y).allclose(sqrtm(y), atol=1e-12)
    assert geometric_mean(diag(1, 4), diag(4, 1)).allclose(diag(2, 2))
    assert geometric_mean(y, y).allclose(y, atol=1e-12)


@given(shapes, seeds)
def test_geometric_mean_riccati(shape, seed):
    # x # y is the positive solution g of g x^-1 g = y
    x, y = pd(shape, seed), pd(shape, seed + 1)
    g = geometric_mean(x, y)
    assert mul(mul(g, inv(x)), g).allclose(y, atol=1e-9 * 10)
    assert geometric_mean(y, x).allclose(g, atol=1e-9 * 10)


def test_diamond_examples():
    y = pd([2], 5)
    assert diamond_p(unit([2]), y, 1).allclose(y, atol=1e-12)
    # commuting case: (x y^2 x)^(1/2) = x y
    assert diamond_p(diag(4, 1), diag(1, 9), 2).allclose(diag(4, 9), atol=1e-12)
    x = pd([2], 6)
    for p in (0.5, 1, 2, 3):
        assert diamond_p(x, unit([2]), p).allclose(x, atol=1e-10)
    assert sequential_product(x, y).allclose(diamond_p(x, y, 1), atol=1e-10)
    with pytest.raises(ValueError):
        diamond_p(x, y, 0)


def test_order_witness_examples():
    x = order_witness_from_norms(diag(2, 0), diag(1, 0))
    assert compression_norm(x, diag(2, 0)) > compression_norm(x, diag(1, 0))
    assert compression_norm(x, diag(2, 0)) == pytest.approx(2, rel=0.1)
    assert order_witness_from_norms(diag(1, 0), diag(2, 0)) is None
    assert order_witness_from_norms(diag(1, 0), diag(1, 0)) is None


@given(shapes, seeds, st.booleans())
def test_order_witness_separates(shape, seed, normalize):
    a = random_element(shape, "Positive", (0, 5), seed)
    b = random_element(shape, "Positive", (0, 5), seed + 1)
    if loewner_leq(a, b).holds:
        assert order_witness_from_norms(a, b) is None
        return
    x = order_witness_from_norms(a, b, normalize=normalize)
    assert compression_norm(x, a) > compression_norm(x, b)
    assert loewner_leq(scale(unit(shape), 0.0), x).holds
    if normalize:
        assert loewner_leq(x, unit(shape)).holds


@given(shapes, seeds)
def test_thompson_congruence_and_inversion_invariance(shape, seed):
    x, y = pd(shape, seed), pd(shape, seed + 1)
    rng = np.random.default_rng(seed)
    c = Element([random_unitary(n, rng) * rng.uniform(0.5, 2) for n in shape.dims], shape)
    cong = lambda z: mul(mul(c, z), c.H)  # noqa: E731
    d = thompson_distance(x, y)
    assert thompson_distance(cong(x), cong(y)) == pytest.approx(d, abs=1e-8)
    assert thompson_distance(inv(x), inv(y)) == pytest.approx(d, abs=1e-8)
