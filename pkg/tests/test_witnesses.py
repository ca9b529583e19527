import pytest
from hypothesis import given, settings

from conelab.algebra import Element, block_scalars, diag, is_central, mul, random_element, scalar, sub
from conelab.errors import Inconclusive
from conelab.witnesses import (
    additivity_defect,
    centrality_conditions,
    search_nonadditivity_witness,
    search_seminorm_gap_witness,
    search_squaring_witness,
    sqrt_congruence_map,
)
from conelab.spectral import hermitian_eig, op_norm, product_seminorm

from conftest import pd, seeds

A = Element([[[2, 1], [1, 1]]])


def test_nonadditivity_central_cases():
    assert search_nonadditivity_witness(scalar([2], 2.0), 200, 0) is None
    assert search_nonadditivity_witness(block_scalars([2, 3], [2, 5]), 200, 0) is None


def test_nonadditivity_witness_for_example():
    w = search_nonadditivity_witness(A, 2000, 0)
    assert w.margin > 1e-3
    phi = sqrt_congruence_map(A)
    d, s = additivity_defect(phi, w.elements["x"], w.elements["y"])
    assert d / s == pytest.approx(w.margin)


def test_squaring_central_cases():
    assert search_squaring_witness(scalar([2], 3.0), 200, 0) is None
    assert search_squaring_witness(block_scalars([2, 3], [1, 2]), 200, 0) is None


def test_squaring_witness_diag():
    a = diag(1, 2)
    w = search_squaring_witness(a, 2000, 0)
    x = w.elements["x"]
    assert hermitian_eig(sub(x, a)).min >= -1e-12
    assert hermitian_eig(sub(mul(x, x), mul(a, a))).min < -1e-6


def test_seminorm_gap_central_and_example():
    assert search_seminorm_gap_witness(scalar([2], 1.5), 200, 0) is None
    w = search_seminorm_gap_witness(A, 2000, 0)
    x = w.elements["x"]
    ax = op_norm(mul(A, x))
    assert ax - product_seminorm(A, x) > 1e-8 * ax


@given(seeds)
def test_sandwich_equals_square_seminorm_for_any_a(seed):
    a, x = pd([3], seed), pd([3], seed + 1)
    assert centrality_conditions(a, x)["sandwich_vs_seminorm"] < 1e-9


def test_budget_exhaustion_is_inconclusive():
    with pytest.raises(Inconclusive):
        search_nonadditivity_witness(Element([[[1.0, 1e-7], [1e-7, 1.0]]]), 3, 0)


@settings(max_examples=15)
@given(seeds)
def test_noncentral_always_yields_witness(seed):
    a = random_element([2, 3], "PositiveInvertible", (0.25, 4), seed)
    assert not is_central(a)
    assert search_nonadditivity_witness(a, 2000, seed).margin > 0
    assert search_squaring_witness(a, 2000, seed).margin > 0
    assert search_seminorm_gap_witness(a, 2000, seed).margin > 0


def test_witnesses_are_deterministic():
    a = pd([3], 4)
    w1, w2 = search_nonadditivity_witness(a, 2000, 9), search_nonadditivity_witness(a, 2000, 9)
    assert w1.elements["y"] == w2.elements["y"] and w1.margin == w2.margin
