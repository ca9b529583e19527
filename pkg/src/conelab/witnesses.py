"""Counterexample searches for the centrality dichotomies.

Each search takes a positive invertible ``a``.  For central ``a`` it confirms the
positive statement on ``budget`` random samples and returns ``None``; a violation
there can only be numerical and raises :class:`NumericalHealthFailure`.  For
non-central ``a`` it tries proof-guided candidates first, then random ones, and
raises :class:`Inconclusive` if the budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Element,
    _rng,
    add,
    is_central,
    mul,
    random_element,
    rank_one,
    scale,
    sub,
)
from .errors import Inconclusive, NumericalHealthFailure
from .jordan import JordanIso
from .spectral import (
    hermitian_eig,
    hermitian_norm,
    inv,
    op_norm,
    product_seminorm,
    sqrtm,
)

DEFAULT_BUDGET = 2000
ADDITIVITY_THRESHOLD = 1e-6
SQUARING_THRESHOLD = 1e-6
GAP_THRESHOLD = 1e-8
T_GRID = tuple(np.logspace(-3, 1, 9))
SAMPLE_RANGE = (0.1, 10.0)


@dataclass
class Witness:
    """Named inputs plus the two quantities they separate.

    ``margin`` is the relative separation; accepted witnesses have ``margin > 0``.
    """

    elements: dict[str, Element]
    quantity_lhs: float
    quantity_rhs: float
    margin: float
    kind: str = ""
    extra: dict = field(default_factory=dict)


def _sym(a: Element) -> Element:
    return Element._raw([0.5 * (b + b.conj().T) for b in a.blocks], a.shape)


def additivity_defect(phi: Callable[[Element], Element], x: Element, y: Element) -> tuple[float, float]:
    """``(||phi(x+y) - phi(x) - phi(y)||, ||phi(x)|| + ||phi(y)||)``."""
    px, py = phi(x), phi(y)
    d = op_norm(sub(phi(add(x, y)), add(px, py)))
    return d, op_norm(px) + op_norm(py)


def sqrt_congruence_map(a: Element, jordan: JordanIso | None = None) -> Callable[[Element], Element]:
    """``x -> (a J(x)^2 a)^(1/2)``."""

    def phi(x: Element) -> Element:
        jx = jordan(x) if jordan is not None else x
        return sqrtm(_sym(mul(mul(a, mul(jx, jx)), a)))

    return phi


def search_additivity_witness(
    phi: Callable[[Element], Element],
    shape,
    budget: int = DEFAULT_BUDGET,
    seed=0,
    *,
    candidates: Iterable[Element] = (),
    pairs_per_candidate: int = 4,
    threshold: float = ADDITIVITY_THRESHOLD,
    names: tuple[str, str] = ("x", "y"),
) -> Witness:
    """First pair ``(x, y)`` with additivity defect above ``threshold`` (relative).

    Each deterministic candidate ``x`` is paired with ``pairs_per_candidate`` random
    ``y`` before falling back to fully random pairs.  Raises :class:`Inconclusive`.
    """
    rng = _rng(seed)
    used = 0

    def attempt(x, y):
        d, s = additivity_defect(phi, x, y)
        if d > threshold * s:
            return Witness({names[0]: x, names[1]: y}, d, threshold * s, d / s, "nonadditivity")
        return None

    for x in candidates:
        for _ in range(pairs_per_candidate):
            if used >= budget:
                break
            used += 1
            w = attempt(x, random_element(x.shape, "PositiveInvertible", SAMPLE_RANGE, rng))
            if w is not None:
                w.extra["evaluations"] = used
                return w
    while used < budget:
        used += 1
        x = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        y = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        w = attempt(x, y)
        if w is not None:
            w.extra["evaluations"] = used
            return w
    raise Inconclusive(f"no additivity defect above {threshold:g} in {budget} pairs")


def confirm_additive(phi, shape, budget: int, seed=0, tol: float = DEFAULT_TOL) -> float:
    """Largest relative additivity defect over ``budget`` random pairs."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(budget):
        x = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        y = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        d, s = additivity_defect(phi, x, y)
        worst = max(worst, d / s)
    return worst


def search_nonadditivity_witness(
    a: Element, budget: int = DEFAULT_BUDGET, seed=0, *, jordan: JordanIso | None = None,
    tol: float = DEFAULT_TOL,
) -> Witness | None:
    """Witness that ``x -> (a J(x)^2 a)^(1/2)`` is not additive, or ``None`` when ``a`` is central.

    The first candidates use ``J(x) = a^(-1)``, where the map takes the value ``e``.
    """
    phi = sqrt_congruence_map(a, jordan)
    if is_central(a):
        worst = confirm_additive(phi, a.shape, budget, seed)
        if worst > tol:
            raise NumericalHealthFailure(f"central weight but additivity defect {worst:.3e}")
        return None
    ai = inv(a)
    x0 = jordan.inverse()(ai) if jordan is not None else ai
    w = search_additivity_witness(phi, a.shape, budget, seed, candidates=[x0])
    w.elements = {"a": a, **w.elements}
    return w


# ---------------------------------------------------------------------------
# local monotonicity of squaring


def _squares_margin(a: Element, x: Element) -> float:
    """``lambda_min(x^2 - a^2)``."""
    return hermitian_eig(_sym(sub(mul(x, x), mul(a, a)))).min


def _noncentral_directions(a: Element) -> list[tuple[int, np.ndarray]]:
    """``(u_i + u_j)/sqrt(2)`` for eigenvector pairs of ``a`` with distinct eigenvalues."""
    es = hermitian_eig(a)
    norm = hermitian_norm(a)
    out = []
    for k, (w, u) in enumerate(zip(es.eigenvalues, es.vectors)):
        n = len(w)
        for i in range(n):
            for j in range(i + 1, n):
                if w[j] - w[i] > 1e-9 * norm:
                    out.append((k, (u[:, i] + u[:, j]) / np.sqrt(2.0)))
    return out


def search_squaring_witness(
    a: Element, budget: int = DEFAULT_BUDGET, seed=0, *, tol: float = DEFAULT_TOL,
    threshold: float = SQUARING_THRESHOLD,
) -> Witness | None:
    """Find ``x >= a`` with ``a^2`` not below ``x^2``; ``None`` for central ``a``.

    Candidates are ``x = a + t v v*`` over ``t`` in a log grid 1e-3 ... 10.  Success
    means ``lambda_min(x^2 - a^2) < -threshold * ||a||^2``.
    """
    rng = _rng(seed)
    shape = a.shape
    norm2 = hermitian_norm(a) ** 2
    if is_central(a):
        worst = 0.0
        for i in range(budget):
            p = random_element(shape, "Positive", (0.0, 2.0), rng, singular=bool(i % 2))
            x = add(a, p)
            worst = max(worst, -_squares_margin(a, x) / hermitian_norm(x) ** 2)
        if worst > tol:
            raise NumericalHealthFailure(f"central a but squaring not monotone ({worst:.3e})")
        return None

    def directions():
        yield from _noncentral_directions(a)
        while True:
            k = int(rng.integers(len(shape.dims)))
            v = rng.standard_normal(shape.dims[k]) + 1j * rng.standard_normal(shape.dims[k])
            yield k, v / np.linalg.norm(v)

    used = 0
    for k, v in directions():
        proj = rank_one(shape, k, v)
        for t in T_GRID:
            if used >= budget:
                raise Inconclusive(f"no squaring witness in {budget} candidates")
            used += 1
            x = add(a, scale(proj, float(t)))
            lam = _squares_margin(a, x)
            if lam < -threshold * norm2:
                return Witness({"a": a, "x": x}, lam, 0.0, -lam / norm2, "squaring",
                               {"t": float(t), "evaluations": used})
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# norm vs spectral seminorm


def centrality_conditions(a: Element, x: Element) -> dict[str, float]:
    """Relative defects of the four norm conditions that characterise central ``a``.

    Keys: ``conjugation`` (||a x a^-1|| = ||x||), ``square_vs_sandwich``
    (||a^2 x|| = ||a x a||), ``seminorm`` (||a x|| = ||a x||_S), ``square_seminorm``
    (||a^2 x|| = ||a^2 x||_S), plus ``sandwich_vs_seminorm`` (||a x a|| = ||a^2 x||_S),
    which holds for every ``a``.
    """
    a2 = mul(a, a)
    ai = inv(a)
    nx = op_norm(x)
    axai = op_norm(mul(mul(a, x), ai))
    a2x = op_norm(mul(a2, x))
    axa = hermitian_norm(_sym(mul(mul(a, x), a)))
    ax = op_norm(mul(a, x))
    ax_s = product_seminorm(a, x)
    a2x_s = product_seminorm(a2, x)
    return {
        "conjugation": abs(axai - nx) / nx,
        "square_vs_sandwich": abs(a2x - axa) / axa,
        "seminorm": abs(ax - ax_s) / ax,
        "square_seminorm": abs(a2x - a2x_s) / a2x,
        "sandwich_vs_seminorm": abs(axa - a2x_s) / axa,
    }


def _gap(a: Element, x: Element) -> tuple[float, float]:
    ax = op_norm(mul(a, x))
    return ax, product_seminorm(a, x)


def search_seminorm_gap_witness(
    a: Element, budget: int = DEFAULT_BUDGET, seed=0, *, tol: float = DEFAULT_TOL,
    threshold: float = GAP_THRESHOLD,
) -> Witness | None:
    """Find ``x`` with ``||a x|| > ||a x||_S``; ``None`` (after checking all conditions) for central ``a``.

    The first candidate inverts a squaring witness ``X >= a`` (so ``a <= x0^-1`` and
    ``a^2`` is not below ``x0^-2``); random positive definite ``x`` follow.
    """
    rng = _rng(seed)
    shape = a.shape
    if is_central(a):
        worst = 0.0
        for _ in range(budget):
            x = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
            worst = max(worst, *centrality_conditions(a, x).values())
        if worst > tol:
            raise NumericalHealthFailure(f"central a but norm conditions violated ({worst:.3e})")
        return None

    used = 0
    candidates = []
    try:
        sq = search_squaring_witness(a, budget, rng)
        used += sq.extra["evaluations"]
        candidates.append(inv(sq.elements["x"]))
    except Inconclusive:
        used = budget
    for x in candidates:
        ax, ax_s = _gap(a, x)
        if ax - ax_s > threshold * ax:
            return Witness({"a": a, "x": x}, ax, ax_s, (ax - ax_s) / ax, "seminorm_gap",
                           {"route": "squaring", "evaluations": used})
    while used < budget:
        used += 1
        x = random_element(shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        ax, ax_s = _gap(a, x)
        if ax - ax_s > threshold * ax:
            return Witness({"a": a, "x": x}, ax, ax_s, (ax - ax_s) / ax, "seminorm_gap",
                           {"route": "random", "evaluations": used})
    raise Inconclusive(f"no seminorm gap witness in {budget} candidates")
