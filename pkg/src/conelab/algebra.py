"""Finite-dimensional unital C*-algebras as direct sums of full matrix blocks.

Every algebra is ``M_{n_1}(C) + ... + M_{n_k}(C)``.  An :class:`Element` is a
tuple of square complex blocks, one per summand.  Elements are immutable:
block arrays are flagged read-only and every operation returns a new element.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidRange, ShapeMismatch

#: relative tolerance used by :func:`classify`
DEFAULT_TOL = 1e-9
#: absolute floor on the smallest eigenvalue of a positive invertible element
TOL_INV = 1e-8


@dataclass(frozen=True)
class AlgebraShape:
    """Block sizes ``(n_1, ..., n_k)`` of a direct sum of matrix algebras."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        dims = tuple(int(n) for n in dims)
        if not dims:
            raise ShapeMismatch("an algebra needs at least one block")
        if any(n < 1 for n in dims):
            raise ShapeMismatch(f"block sizes must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total_dim(self) -> int:
        """Complex dimension ``sum n_i**2``."""
        return sum(n * n for n in self.dims)

    @property
    def is_commutative(self) -> bool:
        return all(n == 1 for n in self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __str__(self) -> str:
        return "+".join(f"M{n}" for n in self.dims)


def as_shape(shape) -> AlgebraShape:
    if isinstance(shape, AlgebraShape):
        return shape
    if isinstance(shape, int):
        return AlgebraShape([shape])
    return AlgebraShape(shape)


def _frozen(block) -> np.ndarray:
    arr = np.array(block, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


class Element:
    """A member of a direct sum of full complex matrix algebras."""

    __slots__ = ("shape", "blocks")

    def __init__(self, blocks: Sequence, shape=None, *, check: bool = True):
        blocks = tuple(_frozen(b) for b in blocks)
        if shape is None:
            shape = AlgebraShape([b.shape[0] if b.ndim == 2 else 0 for b in blocks])
        shape = as_shape(shape)
        if check:
            if len(blocks) != len(shape.dims):
                raise ShapeMismatch(
                    f"expected {len(shape.dims)} blocks for shape {shape.dims}, got {len(blocks)}"
                )
            for i, (b, n) in enumerate(zip(blocks, shape.dims)):
                if b.shape != (n, n):
                    raise ShapeMismatch(f"block {i} has shape {b.shape}, expected {(n, n)}")
                if not np.all(np.isfinite(b)):
                    raise ValueError(f"block {i} contains non-finite entries")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def _raw(cls, blocks, shape: AlgebraShape) -> "Element":
        # internal fast path: blocks already validated complex arrays
        obj = object.__new__(cls)
        frozen = []
        for b in blocks:
            b = np.asarray(b, dtype=np.complex128)
            if b.flags.writeable:
                b.setflags(write=False)
            frozen.append(b)
        object.__setattr__(obj, "shape", shape)
        object.__setattr__(obj, "blocks", tuple(frozen))
        return obj

    # arithmetic sugar; the named functions below are the reference surface
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __matmul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return scale(self, 1.0 / other)

    @property
    def H(self) -> "Element":
        return adjoint(self)

    def to_dense(self) -> np.ndarray:
        """Block-diagonal dense matrix; handy for cross-checks against numpy."""
        n = sum(self.shape.dims)
        out = np.zeros((n, n), dtype=np.complex128)
        k = 0
        for b in self.blocks:
            m = b.shape[0]
            out[k:k + m, k:k + m] = b
            k += m
        return out

    def allclose(self, other: "Element", atol: float = 1e-12) -> bool:
        _check_same(self, other)
        return all(np.allclose(x, y, rtol=0.0, atol=atol) for x, y in zip(self.blocks, other.blocks))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self) -> str:
        inner = ", ".join(np.array2string(b, precision=4, separator=",") for b in self.blocks)
        return f"Element(shape={list(self.shape.dims)}, blocks=[{inner}])"


# ---------------------------------------------------------------------------
# constructors


def from_blocks(*blocks) -> Element:
    """Build an element from square blocks given positionally."""
    return Element([np.atleast_2d(np.asarray(b, dtype=np.complex128)) for b in blocks])


def diag(*values) -> Element:
    """Single-block diagonal element, e.g. ``diag(1, 2)``."""
    return Element([np.diag(np.asarray(values, dtype=np.complex128))])


def unit(shape) -> Element:
    shape = as_shape(shape)
    return Element._raw([np.eye(n, dtype=np.complex128) for n in shape.dims], shape)


def zeros(shape) -> Element:
    shape = as_shape(shape)
    return Element._raw([np.zeros((n, n), dtype=np.complex128) for n in shape.dims], shape)


def scalar(shape, value: complex) -> Element:
    shape = as_shape(shape)
    return Element._raw([value * np.eye(n, dtype=np.complex128) for n in shape.dims], shape)


def block_scalars(shape, values: Sequence[complex]) -> Element:
    """Central element taking the value ``values[i]`` on block ``i``."""
    shape = as_shape(shape)
    if len(values) != len(shape.dims):
        raise ShapeMismatch("one scalar per block required")
    return Element._raw([v * np.eye(n, dtype=np.complex128) for v, n in zip(values, shape.dims)], shape)


# ---------------------------------------------------------------------------
# arithmetic


def _check_same(a: Element, b: Element) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape.dims} vs {b.shape.dims}")


def add(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return Element._raw([x + y for x, y in zip(a.blocks, b.blocks)], a.shape)


def sub(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return Element._raw([x - y for x, y in zip(a.blocks, b.blocks)], a.shape)


def scale(a: Element, lam: complex) -> Element:
    return Element._raw([lam * x for x in a.blocks], a.shape)


def mul(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return Element._raw([x @ y for x, y in zip(a.blocks, b.blocks)], a.shape)


def adjoint(a: Element) -> Element:
    return Element._raw([x.conj().T.copy() for x in a.blocks], a.shape)


def arith(a: Element, b: Element | None = None, kind: str = "add", lam: complex = 1.0) -> Element:
    """Dispatch on ``kind`` in {add, sub, scale, mul, adjoint}."""
    if kind == "add":
        return add(a, b)
    if kind == "sub":
        return sub(a, b)
    if kind == "mul":
        return mul(a, b)
    if kind == "scale":
        return scale(a, lam)
    if kind == "adjoint":
        return adjoint(a)
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def jordan_product(a: Element, b: Element) -> Element:
    """``(ab + ba) / 2``."""
    _check_same(a, b)
    return Element._raw([0.5 * (x @ y + y @ x) for x, y in zip(a.blocks, b.blocks)], a.shape)


def triple_product(a: Element, b: Element) -> Element:
    """``a b a``."""
    _check_same(a, b)
    return Element._raw([x @ y @ x for x, y in zip(a.blocks, b.blocks)], a.shape)


def hermitian_part(a: Element) -> Element:
    return Element._raw([0.5 * (x + x.conj().T) for x in a.blocks], a.shape)


def frobenius(a: Element) -> float:
    return float(np.sqrt(sum(np.vdot(x, x).real for x in a.blocks)))


def max_abs(a: Element) -> float:
    return max(float(np.max(np.abs(x))) for x in a.blocks)


# ---------------------------------------------------------------------------
# classification


class ElementClass(enum.Enum):
    GENERAL = "General"
    SELF_ADJOINT = "SelfAdjoint"
    POSITIVE = "Positive"
    POSITIVE_INVERTIBLE = "PositiveInvertible"
    EFFECT = "Effect"

    @classmethod
    def parse(cls, text: str) -> "ElementClass":
        key = text.replace("-", "").replace("_", "").lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown element class {text!r}")


@dataclass(frozen=True)
class Classification:
    """Membership flags; Effect and PositiveInvertible both refine Positive."""

    self_adjoint: bool
    positive: bool
    positive_invertible: bool
    effect: bool

    @property
    def classes(self) -> frozenset[ElementClass]:
        out = {ElementClass.GENERAL}
        if self.self_adjoint:
            out.add(ElementClass.SELF_ADJOINT)
        if self.positive:
            out.add(ElementClass.POSITIVE)
        if self.positive_invertible:
            out.add(ElementClass.POSITIVE_INVERTIBLE)
        if self.effect:
            out.add(ElementClass.EFFECT)
        return frozenset(out)

    @property
    def most_specific(self) -> frozenset[ElementClass]:
        """The maximal classes (two of them when an element is both an invertible and an effect)."""
        if self.positive_invertible or self.effect:
            return frozenset(
                c for c, flag in ((ElementClass.POSITIVE_INVERTIBLE, self.positive_invertible),
                                  (ElementClass.EFFECT, self.effect)) if flag
            )
        if self.positive:
            return frozenset({ElementClass.POSITIVE})
        if self.self_adjoint:
            return frozenset({ElementClass.SELF_ADJOINT})
        return frozenset({ElementClass.GENERAL})

    def __contains__(self, cls: ElementClass) -> bool:
        return cls in self.classes


def _extreme_eigenvalues(a: Element) -> tuple[float, float]:
    from .spectral import eigvalsh

    lo, hi = np.inf, -np.inf
    for w in eigvalsh(a):
        lo = min(lo, float(w[0]))
        hi = max(hi, float(w[-1]))
    return lo, hi


def classify(a: Element, tol: float = DEFAULT_TOL, tol_inv: float = TOL_INV) -> Classification:
    from .spectral import op_norm

    norm = op_norm(a)
    skew = op_norm(sub(a, adjoint(a)))
    if skew > tol * norm:
        return Classification(False, False, False, False)
    lo, hi = _extreme_eigenvalues(hermitian_part(a))
    positive = lo >= -tol * norm
    return Classification(
        self_adjoint=True,
        positive=positive,
        positive_invertible=lo >= tol_inv,
        effect=positive and hi <= 1.0 + tol,
    )


def is_self_adjoint(a: Element, tol: float = DEFAULT_TOL) -> bool:
    return classify(a, tol).self_adjoint


def is_central(a: Element, tol: float = DEFAULT_TOL) -> bool:
    """True iff every block is within ``tol * ||a||`` of a scalar multiple of its identity."""
    scale_ = max(max(np.linalg.norm(b, 2) for b in a.blocks), 1e-300)
    for b in a.blocks:
        n = b.shape[0]
        dev = b - (np.trace(b) / n) * np.eye(n)
        if np.linalg.norm(dev, 2) > tol * scale_:
            return False
    return True


def commutator_defect(a: Element) -> float:
    """``max ||a E - E a||`` over the matrix units ``E`` of every block, relative to ``||a||``.

    Zero exactly on the centre; used to cross-check :func:`is_central`.
    """
    scale_ = max(max(np.linalg.norm(b, 2) for b in a.blocks), 1e-300)
    worst = 0.0
    for b in a.blocks:
        n = b.shape[0]
        for i in range(n):
            for j in range(n):
                e = np.zeros((n, n), dtype=np.complex128)
                e[i, j] = 1.0
                worst = max(worst, float(np.linalg.norm(b @ e - e @ b, 2)))
    return worst / scale_


# ---------------------------------------------------------------------------
# random instances


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(n: int, rng) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian matrix, phases fixed by ``diag(R)``."""
    rng = _rng(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return q * ph


def random_element(
    shape,
    cls: ElementClass | str = ElementClass.POSITIVE_INVERTIBLE,
    spectrum_range: tuple[float, float] = (0.5, 2.0),
    seed=None,
    *,
    singular: bool | None = None,
) -> Element:
    """Draw a random element of the requested class.

    Self-adjoint classes are built as ``U diag(s) U*`` with ``U`` Haar per block and
    ``s`` uniform in ``spectrum_range``.  For ``Positive`` with ``lo == 0`` (or when
    ``singular`` is set) one eigenvalue of one block is forced to exactly zero.
    ``General`` elements have Gaussian entries scaled by ``hi``.
    """
    shape = as_shape(shape)
    if isinstance(cls, str):
        cls = ElementClass.parse(cls)
    lo, hi = (float(v) for v in spectrum_range)
    if not lo <= hi:
        raise InvalidRange(f"lo={lo} > hi={hi}")
    if cls is ElementClass.POSITIVE_INVERTIBLE and lo <= 0:
        raise InvalidRange("positive invertible elements need lo > 0")
    if cls is ElementClass.POSITIVE and lo < 0:
        raise InvalidRange("positive elements need lo >= 0")
    if cls is ElementClass.EFFECT and not (0.0 <= lo and hi <= 1.0):
        raise InvalidRange("effects need [lo, hi] inside [0, 1]")
    rng = _rng(seed)

    if cls is ElementClass.GENERAL:
        blocks = [
            hi * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)
            for n in shape.dims
        ]
        return Element._raw(blocks, shape)

    if singular is None:
        singular = cls is ElementClass.POSITIVE and lo == 0.0
    if singular and cls is ElementClass.POSITIVE_INVERTIBLE:
        raise InvalidRange("a positive invertible element cannot be singular")
    if singular and lo > 0:
        raise InvalidRange("forcing a zero eigenvalue needs lo == 0")

    spectra = [rng.uniform(lo, hi, size=n) for n in shape.dims]
    if singular:
        k = int(rng.integers(len(shape.dims)))
        spectra[k][int(rng.integers(shape.dims[k]))] = 0.0
    blocks = []
    for n, s in zip(shape.dims, spectra):
        u = random_unitary(n, rng)
        b = (u * s) @ u.conj().T
        blocks.append(0.5 * (b + b.conj().T))
    return Element._raw(blocks, shape)


def random_central(shape, spectrum_range=(0.5, 2.0), seed=None) -> Element:
    """Positive central element: an independent positive scalar on each block."""
    shape = as_shape(shape)
    rng = _rng(seed)
    lo, hi = spectrum_range
    return block_scalars(shape, rng.uniform(lo, hi, size=len(shape.dims)))


def random_unit_vector_element(shape, rng, block: int | None = None) -> Element:
    """Rank-one projection ``v v*`` sitting in a single block."""
    shape = as_shape(shape)
    rng = _rng(rng)
    if block is None:
        block = int(rng.integers(len(shape.dims)))
    return rank_one(shape, block, _random_unit(shape.dims[block], rng))


def _random_unit(n: int, rng) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def rank_one(shape, block: int, v: np.ndarray) -> Element:
    """Embed ``v v*`` into ``block``; other blocks are zero."""
    shape = as_shape(shape)
    v = np.asarray(v, dtype=np.complex128)
    blocks = [np.zeros((n, n), dtype=np.complex128) for n in shape.dims]
    blocks[block] = np.outer(v, v.conj())
    return Element._raw(blocks, shape)
