import numpy as np
import pytest
from hypothesis import given

from conelab.algebra import (
    AlgebraShape,
    Element,
    ElementClass,
    add,
    adjoint,
    block_scalars,
    classify,
    commutator_defect,
    diag,
    is_central,
    jordan_product,
    mul,
    random_central,
    random_element,
    scalar,
    triple_product,
    unit,
)
from conelab.errors import InvalidRange, ShapeMismatch

from conftest import seeds, shapes


def test_diagonal_arithmetic():
    assert add(diag(1, 2), diag(3, 4)) == diag(4, 6)
    assert mul(diag(1, 2), diag(3, 4)) == diag(3, 8)


def test_adjoint_of_nilpotent():
    a = Element([[[0, 1j], [0, 0]]])
    assert adjoint(a) == Element([[[0, 0], [-1j, 0]]])


def test_jordan_product_examples():
    a = diag(1, 2)
    assert jordan_product(a, a).allclose(diag(1, 4))
    b = Element([[[1, 2], [3, 4]]])
    assert jordan_product(unit([2]), b).allclose(b)
    sx = Element([[[0, 1], [1, 0]]])
    assert jordan_product(sx, diag(1, -1)).allclose(Element([np.zeros((2, 2))]))


def test_triple_product_examples():
    b = Element([[[1, 2], [3, 4]]])
    assert triple_product(unit([2]), b).allclose(b)
    assert triple_product(diag(2, 3), unit([2])).allclose(diag(4, 9))
    g = Element([[[1, 1], [0, 1]]])
    assert triple_product(g, unit([2])).allclose(mul(g, g))


def test_unit_shapes():
    e = unit([1, 3])
    assert np.allclose(e.blocks[0], [[1]])
    assert np.allclose(e.blocks[1], np.eye(3))


def test_shape_validation():
    with pytest.raises(ValueError):
        AlgebraShape([])
    with pytest.raises(ValueError):
        AlgebraShape([2, 0])
    with pytest.raises(ShapeMismatch):
        add(diag(1, 2), unit([3]))
    with pytest.raises(ValueError):
        Element([[[np.nan, 0], [0, 1]]])


def test_operators_match_functions():
    a, b = diag(1, 2), diag(3, 5)
    assert a + b == add(a, b)
    assert a * b == mul(a, b)
    assert (2 * a) == diag(2, 4)
    assert a.H == adjoint(a)


def test_element_is_immutable():
    a = diag(1, 2)
    with pytest.raises((ValueError, AttributeError)):
        a.blocks[0][0, 0] = 5
    with pytest.raises(AttributeError):
        a.shape = AlgebraShape([3])


@pytest.mark.parametrize(
    "a, expected",
    [
        (diag(1, 2), {ElementClass.POSITIVE_INVERTIBLE}),
        (diag(1, 0), {ElementClass.EFFECT}),
        (diag(0.5, 1.0), {ElementClass.EFFECT, ElementClass.POSITIVE_INVERTIBLE}),
        (diag(-1, 1), {ElementClass.SELF_ADJOINT}),
        (Element([[[0, 1], [0, 0]]]), {ElementClass.GENERAL}),
    ],
)
def test_classify_most_specific(a, expected):
    assert set(classify(a).most_specific) == expected


def test_classify_examples():
    c = classify(diag(1, 2))
    assert ElementClass.POSITIVE_INVERTIBLE in c and ElementClass.EFFECT not in c
    c = classify(diag(1, 0))
    assert ElementClass.POSITIVE in c and ElementClass.POSITIVE_INVERTIBLE not in c
    assert ElementClass.EFFECT in classify(diag(0.5, 1.0))


def test_class_lattice_is_nested():
    c = classify(diag(0.5, 1.0))
    assert {ElementClass.SELF_ADJOINT, ElementClass.POSITIVE, ElementClass.GENERAL} <= set(c.classes)


def test_centrality_examples():
    assert is_central(block_scalars([2, 3], [2, 3]))
    assert not is_central(Element([np.diag([1, 2]), np.eye(3)]))
    assert is_central(unit([2, 3]))
    assert is_central(scalar([3], 5.0))


@given(shapes, seeds)
def test_central_iff_zero_commutator(shape, seed):
    c = random_central(shape, (0.5, 2.0), seed)
    assert is_central(c) and commutator_defect(c) < 1e-12
    a = random_element(shape, "PositiveInvertible", (0.5, 2.0), seed)
    assert is_central(a) == (commutator_defect(a) < 1e-9)


def test_random_element_spectrum_range():
    a = random_element([2], "PositiveInvertible", (0.5, 2.0), 7)
    w = np.linalg.eigvalsh(a.blocks[0])
    assert w.min() >= 0.5 - 1e-12 and w.max() <= 2.0 + 1e-12


def test_random_element_forced_singular():
    a = random_element([2], "Positive", (0.0, 1.0), 3)
    assert abs(np.linalg.det(a.blocks[0])) < 1e-12
    assert ElementClass.POSITIVE_INVERTIBLE not in classify(a)


def test_random_element_deterministic():
    assert random_element([2, 3], "Effect", (0, 1), 11) == random_element([2, 3], "Effect", (0, 1), 11)


@pytest.mark.parametrize(
    "cls, rng",
    [("PositiveInvertible", (0.0, 1.0)), ("Positive", (-1.0, 1.0)), ("Effect", (0.0, 2.0)),
     ("PositiveInvertible", (2.0, 1.0))],
)
def test_random_element_bad_ranges(cls, rng):
    with pytest.raises(InvalidRange):
        random_element([2], cls, rng, 0)


@given(shapes, seeds)
def test_random_classes_classify(shape, seed):
    for cls, rng in [("PositiveInvertible", (0.1, 10)), ("Effect", (0.0, 1.0)), ("SelfAdjoint", (-1, 1))]:
        a = random_element(shape, cls, rng, seed)
        assert ElementClass.parse(cls) in classify(a)
