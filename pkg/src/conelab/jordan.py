"""Jordan *-isomorphisms between block algebras and the cone maps built from them.

On ``M_{n_1} + ... + M_{n_k}`` every Jordan *-isomorphism routes source block ``i`` to
target block ``perm[i]`` (equal sizes), optionally transposes it, and conjugates by a
unitary of the target block.  :class:`JordanIso` stores exactly that data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    AlgebraShape,
    Element,
    _rng,
    add,
    as_shape,
    mul,
    random_element,
    random_unitary,
    scale,
    sub,
    unit,
)
from .errors import ShapeMismatch
from .spectral import func_calc, inv, op_norm, powm, sqrtm

UNITARY_TOL = 1e-10

ElementMap = Callable[[Element], Element]


@dataclass(frozen=True, eq=False)
class JordanIso:
    """Block permutation, per-block transpose flag and per-target-block unitary.

    ``perm[i]`` is the target block receiving source block ``i``; ``transpose[i]``
    says whether source block ``i`` is transposed; ``unitaries[j]`` conjugates
    target block ``j``.
    """

    perm: tuple[int, ...]
    unitaries: tuple[np.ndarray, ...]
    transpose: tuple[bool, ...]
    source: AlgebraShape = field(init=False)
    target: AlgebraShape = field(init=False)

    def __init__(self, perm: Sequence[int], unitaries: Sequence, transpose: Sequence[bool] | None = None,
                 *, check: bool = True):
        perm = tuple(int(i) for i in perm)
        us = []
        for u in unitaries:
            u = np.array(u, dtype=np.complex128)
            u.setflags(write=False)
            us.append(u)
        if transpose is None:
            transpose = (False,) * len(perm)
        transpose = tuple(bool(t) for t in transpose)
        if sorted(perm) != list(range(len(us))):
            raise ShapeMismatch(f"perm {perm} is not a bijection onto {len(us)} target blocks")
        if len(transpose) != len(perm):
            raise ShapeMismatch("one transpose flag per source block required")
        for j, u in enumerate(us):
            if u.ndim != 2 or u.shape[0] != u.shape[1]:
                raise ShapeMismatch(f"unitary {j} is not square")
        target = AlgebraShape([u.shape[0] for u in us])
        source = AlgebraShape([target.dims[perm[i]] for i in range(len(perm))])
        if check:
            for j, u in enumerate(us):
                n = u.shape[0]
                if np.linalg.norm(u.conj().T @ u - np.eye(n)) > UNITARY_TOL * n:
                    raise ValueError(f"matrix {j} is not unitary")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "unitaries", tuple(us))
        object.__setattr__(self, "transpose", transpose)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)

    @classmethod
    def identity(cls, shape) -> "JordanIso":
        shape = as_shape(shape)
        return cls(range(len(shape.dims)), [np.eye(n) for n in shape.dims])

    @classmethod
    def transpose_map(cls, shape) -> "JordanIso":
        shape = as_shape(shape)
        return cls(range(len(shape.dims)), [np.eye(n) for n in shape.dims], [True] * len(shape.dims))

    def __call__(self, x: Element) -> Element:
        return apply_jordan(self, x)

    def inverse(self) -> "JordanIso":
        """The inverse Jordan *-isomorphism, target back to source."""
        k = len(self.perm)
        inv_perm = [0] * k
        for i, j in enumerate(self.perm):
            inv_perm[j] = i
        # x_i -> U (x_i^T?) U*; undo: y -> (U* y U)^T? routed back to i
        us = [None] * k
        flags = [False] * k
        for i, j in enumerate(self.perm):
            u = self.unitaries[j]
            if self.transpose[i]:
                # y = U x^T U*  =>  x = (U* y U)^T = U^T y^T conj(U)
                us[i] = u.T
            else:
                us[i] = u.conj().T
            flags[j] = self.transpose[i]
        return JordanIso(inv_perm, us, flags)

    def replace(self, *, perm=None, unitaries=None, transpose=None, check=True) -> "JordanIso":
        return JordanIso(
            self.perm if perm is None else perm,
            self.unitaries if unitaries is None else unitaries,
            self.transpose if transpose is None else transpose,
            check=check,
        )

    def __eq__(self, other):
        if not isinstance(other, JordanIso):
            return NotImplemented
        return (
            self.perm == other.perm
            and self.transpose == other.transpose
            and all(np.array_equal(u, v) for u, v in zip(self.unitaries, other.unitaries))
        )

    __hash__ = None


def random_jordan_iso(shape, seed=None, *, transpose: bool | None = None,
                      permute: bool = True) -> JordanIso:
    """Random automorphism of ``shape``: Haar unitaries, random flags, and a random
    permutation among blocks of equal size (so source and target shapes agree)."""
    shape = as_shape(shape)
    rng = _rng(seed)
    k = len(shape.dims)
    perm = list(range(k))
    if permute:
        for n in set(shape.dims):
            idx = [i for i in range(k) if shape.dims[i] == n]
            shuffled = list(rng.permutation(idx))
            for i, j in zip(idx, shuffled):
                perm[i] = int(j)
    us = [random_unitary(shape.dims[j], rng) for j in range(k)]
    if transpose is None:
        flags = [bool(f) for f in rng.integers(0, 2, size=k)]
    else:
        flags = [transpose] * k
    return JordanIso(perm, us, flags)


def apply_jordan(J: JordanIso, x: Element) -> Element:
    """Route, optionally transpose, then conjugate: ``U x_i^(T) U*``."""
    if x.shape != J.source:
        raise ShapeMismatch(f"element shape {x.shape.dims} is not the source {J.source.dims}")
    out = [None] * len(J.perm)
    for i, b in enumerate(x.blocks):
        j = J.perm[i]
        u = J.unitaries[j]
        if J.transpose[i]:
            b = b.T
        out[j] = u @ b @ u.conj().T
    return Element._raw(out, J.target)


# ---------------------------------------------------------------------------
# black-box verification


@dataclass
class JordanReport:
    """Largest relative violation of each Jordan axiom over the samples."""

    violations: dict[str, float]
    tol: float
    samples: int

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.violations.values())

    @property
    def max_violation(self) -> float:
        return max(self.violations.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.violations.items() if v > self.tol]


JORDAN_AXIOMS = ("additivity", "homogeneity", "squares", "triple_product", "unit", "norm")


def verify_jordan(J_like: ElementMap, shape, sample_count: int = 100, seed=0,
                  tol: float = 1e-8, spectrum_range=(0.25, 4.0)) -> JordanReport:
    """Check a black-box map on positive definite samples against the Jordan axioms.

    Checked: additivity and positive homogeneity inside the cone, ``J(x^2) = J(x)^2``,
    ``J(x y x) = J(x) J(y) J(x)``, ``J(e) = e`` and ``||J(x)|| = ||x||``.
    """
    shape = as_shape(shape)
    rng = _rng(seed)
    v = dict.fromkeys(JORDAN_AXIOMS, 0.0)
    e = unit(shape)
    je = J_like(e)
    v["unit"] = op_norm(sub(je, unit(je.shape)))
    for _ in range(sample_count):
        x = random_element(shape, "PositiveInvertible", spectrum_range, rng)
        y = random_element(shape, "PositiveInvertible", spectrum_range, rng)
        t = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
        jx, jy = J_like(x), J_like(y)
        nx, ny = op_norm(jx), op_norm(jy)
        v["additivity"] = max(v["additivity"], op_norm(sub(J_like(add(x, y)), add(jx, jy))) / (nx + ny))
        v["homogeneity"] = max(v["homogeneity"], op_norm(sub(J_like(scale(x, t)), scale(jx, t))) / (t * nx))
        v["squares"] = max(v["squares"], op_norm(sub(J_like(mul(x, x)), mul(jx, jx))) / nx ** 2)
        jxyx = mul(mul(jx, jy), jx)
        v["triple_product"] = max(
            v["triple_product"], op_norm(sub(J_like(mul(mul(x, y), x)), jxyx)) / (nx * nx * ny)
        )
        n_true = op_norm(x)
        v["norm"] = max(v["norm"], abs(nx - n_true) / n_true)
    return JordanReport(v, tol, sample_count)


def max_pointwise_gap(f: ElementMap, g: ElementMap, shape, sample_count: int = 100, seed=0,
                      spectrum_range=(0.25, 4.0), cls="PositiveInvertible") -> float:
    """``max ||f(x) - g(x)|| / ||g(x)||`` over fresh random samples."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(sample_count):
        x = random_element(shape, cls, spectrum_range, rng)
        gx = g(x)
        worst = max(worst, op_norm(sub(f(x), gx)) / max(op_norm(gx), 1e-300))
    return worst


# ---------------------------------------------------------------------------
# cone maps

CONE_MAP_KINDS = ("PlainJordan", "Sandwich", "SqrtCongruence", "InverseSqrtCongruence", "PowerDeformed")


def _sym(a: Element) -> Element:
    return Element._raw([0.5 * (b + b.conj().T) for b in a.blocks], a.shape)


@dataclass(frozen=True, eq=False)
class ConeMap:
    """A map between positive cones assembled from a Jordan *-isomorphism.

    kinds
        ``PlainJordan``: ``J(x)``.
        ``Sandwich``: ``a^(1/2) J(x) a^(1/2)``.
        ``SqrtCongruence``: ``(a J(x)^2 a)^(1/2)``.
        ``InverseSqrtCongruence``: ``(a^(-1) J(x)^2 a^(-1))^(1/2)``.
        ``PowerDeformed``: ``inner(x^(1/p))^p``.
    """

    kind: str
    jordan: JordanIso
    weight: Element | None = None
    inner: "ConeMap | None" = None
    p: float | None = None
    _factor: Element | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in CONE_MAP_KINDS:
            raise ValueError(f"unknown cone map kind {self.kind!r}")
        if self.kind in ("Sandwich", "SqrtCongruence", "InverseSqrtCongruence"):
            if self.weight is None:
                raise ValueError(f"{self.kind} needs a weight")
            if self.weight.shape != self.jordan.target:
                raise ShapeMismatch("weight must live in the target algebra")
            if self.kind == "Sandwich":
                factor = sqrtm(self.weight)
            elif self.kind == "SqrtCongruence":
                factor = self.weight
            else:
                factor = inv(self.weight)
            object.__setattr__(self, "_factor", factor)
        if self.kind == "PowerDeformed":
            if self.inner is None or self.p is None or not self.p > 0:
                raise ValueError("PowerDeformed needs an inner map and p > 0")

    @classmethod
    def plain(cls, J: JordanIso) -> "ConeMap":
        return cls("PlainJordan", J)

    @classmethod
    def sandwich(cls, J: JordanIso, a: Element) -> "ConeMap":
        return cls("Sandwich", J, a)

    @classmethod
    def sqrt_congruence(cls, J: JordanIso, a: Element) -> "ConeMap":
        return cls("SqrtCongruence", J, a)

    @classmethod
    def inverse_sqrt_congruence(cls, J: JordanIso, a: Element) -> "ConeMap":
        return cls("InverseSqrtCongruence", J, a)

    @classmethod
    def power_deformed(cls, inner: "ConeMap", p: float) -> "ConeMap":
        return cls("PowerDeformed", inner.jordan, inner=inner, p=float(p))

    @property
    def source(self) -> AlgebraShape:
        return self.jordan.source

    @property
    def target(self) -> AlgebraShape:
        return self.jordan.target

    def __call__(self, x: Element) -> Element:
        return apply_cone_map(self, x)


def apply_cone_map(m: ConeMap, x: Element) -> Element:
    if m.kind == "PowerDeformed":
        return _sym(powm(m.inner(powm(x, 1.0 / m.p)), m.p))
    jx = apply_jordan(m.jordan, x)
    if m.kind == "PlainJordan":
        return jx
    f = m._factor
    if m.kind == "Sandwich":
        return _sym(mul(mul(f, jx), f))
    jx2 = mul(jx, jx)
    return sqrtm(_sym(mul(mul(f, jx2), f)))


# ---------------------------------------------------------------------------
# extraction of the Jordan part from a black box


def extract_jordan_sandwich(phi: ElementMap, e_src: Element) -> ElementMap:
    """Return ``x -> phi(e)^(-1/2) phi(x) phi(e)^(-1/2)``.

    Raises :class:`SingularError` when ``phi(e)`` is not invertible.
    """
    r = func_calc(phi(e_src), "power", -0.5)

    def recovered(x: Element) -> Element:
        return _sym(mul(mul(r, phi(x)), r))

    return recovered


def extract_jordan_sqrt_congruence(phi: ElementMap, e_src: Element) -> ElementMap:
    """Return ``x -> (phi(e)^(-1) phi(x)^2 phi(e)^(-1))^(1/2)``."""
    ai = inv(phi(e_src))

    def recovered(x: Element) -> Element:
        px = phi(x)
        return sqrtm(_sym(mul(mul(ai, mul(px, px)), ai)))

    return recovered
