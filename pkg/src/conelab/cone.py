"""Order and metric geometry of the positive cones."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Element,
    _check_same,
    add,
    mul,
    rank_one,
    scale,
    sub,
    unit,
)
from .errors import NumericalHealthFailure, WitnessNotFound
from .spectral import (
    func_calc,
    hermitian_eig,
    hermitian_norm,
    inf_dominance,
    inv_sqrtm,
    powm,
    sqrtm,
)

#: the two Thompson-distance routes must agree to this (absolute, on log scale)
THOMPSON_CROSSCHECK = 1e-8
WITNESS_EPSILONS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)
WITNESS_MARGIN = 1e-10


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of ``a <= b``.

    ``margin`` is ``lambda_min(b - a) / max(||a||, ||b||)``.  When the order fails,
    ``witness`` is the rank-one projection ``v v*`` onto a direction with
    ``v* (b - a) v < 0``.
    """

    holds: bool
    margin: float
    witness: Element | None = None

    def __bool__(self) -> bool:
        return self.holds


def _min_eig_direction(c: Element) -> tuple[float, int, np.ndarray]:
    es = hermitian_eig(c)
    k = min(range(len(es.eigenvalues)), key=lambda i: es.eigenvalues[i][0])
    return float(es.eigenvalues[k][0]), k, es.vectors[k][:, 0]


def loewner_leq(a: Element, b: Element, tol: float = DEFAULT_TOL) -> OrderVerdict:
    _check_same(a, b)
    scale_ = max(hermitian_norm(a), hermitian_norm(b), 1e-300)
    lam, k, v = _min_eig_direction(sub(b, a))
    margin = lam / scale_
    if margin >= -tol:
        return OrderVerdict(True, margin)
    return OrderVerdict(False, margin, rank_one(a.shape, k, v))


def dominance_constants(x: Element, y: Element) -> tuple[float, float]:
    """``(inf{t: x <= t y}, inf{s: y <= s x})``."""
    return inf_dominance(x, y), inf_dominance(y, x)


def thompson_distance_dominance(x: Element, y: Element) -> float:
    """Route 1: log of the larger of the two optimal dominance constants."""
    return math.log(max(dominance_constants(x, y)))


def thompson_distance_spectral(x: Element, y: Element) -> float:
    """Route 2: ``max |log lambda|`` over ``sigma(x^(-1/2) y x^(-1/2))``.

    Uses one whitening only; the smallest eigenvalue stands in for the reverse
    dominance constant through similarity.
    """
    r = inv_sqrtm(x)
    es = hermitian_eig(mul(mul(r, y), r))
    return max(math.log(es.max), -math.log(es.min))


def thompson_distance(x: Element, y: Element, *, check: bool = True) -> float:
    """Thompson metric on the positive definite cone.

    Both routes are evaluated; a disagreement above 1e-8 raises
    :class:`NumericalHealthFailure`.
    """
    d1 = thompson_distance_dominance(x, y)
    if not check:
        return d1
    d2 = thompson_distance_spectral(x, y)
    if abs(d1 - d2) > THOMPSON_CROSSCHECK * max(1.0, abs(d1)):
        raise NumericalHealthFailure(f"Thompson routes disagree: {d1!r} vs {d2!r}")
    return d1


def geometric_mean(x: Element, y: Element) -> Element:
    """``x # y = x^(1/2) (x^(-1/2) y x^(-1/2))^(1/2) x^(1/2)``."""
    _check_same(x, y)
    rx = func_calc(x, "sqrt")
    rxi = func_calc(x, "power", -0.5)
    inner = sqrtm(mul(mul(rxi, y), rxi))
    out = mul(mul(rx, inner), rx)
    return _sym(out)


def diamond_p(x: Element, y: Element, p: float) -> Element:
    """``x <>_p y = (x^(p/2) y^p x^(p/2))^(1/p)`` for positive ``x, y`` and ``p > 0``."""
    _check_same(x, y)
    if not p > 0:
        raise ValueError("p must be positive")
    xh = powm(x, p / 2.0)
    inner = _sym(mul(mul(xh, powm(y, p)), xh))
    return powm(inner, 1.0 / p)


def sequential_product(x: Element, y: Element) -> Element:
    """``x^(1/2) y x^(1/2)``; the ``p = 1`` case of :func:`diamond_p`."""
    r = sqrtm(x)
    return _sym(mul(mul(r, y), r))


def _sym(a: Element) -> Element:
    return Element._raw([0.5 * (b + b.conj().T) for b in a.blocks], a.shape)


def compression_norm(x: Element, a: Element) -> float:
    """``||x a x||`` for self-adjoint ``x`` and positive ``a``."""
    return hermitian_norm(_sym(mul(mul(x, a), x)))


def order_witness_from_norms(
    a: Element, b: Element, *, tol: float = DEFAULT_TOL, normalize: bool = False
) -> Element | None:
    """Exhibit ``x`` positive invertible with ``||x a x|| > ||x b x||`` when ``a`` is not below ``b``.

    ``x = v v* + eps e`` with ``v`` the most negative eigendirection of ``b - a``; eps is
    swept over the fixed decades 1e-2 ... 1e-8 until the gap exceeds 1e-10 (relative to
    ``max(||a||, ||b||)``).  Returns ``None`` when ``a <= b``.  With ``normalize=True`` the
    witness is rescaled to norm one, so it also satisfies ``x <= e``.

    Raises
    ------
    WitnessNotFound
        No eps in the sweep gave a strict gap.
    """
    verdict = loewner_leq(a, b, tol)
    if verdict.holds:
        return None
    scale_ = max(hermitian_norm(a), hermitian_norm(b), 1e-300)
    proj = verdict.witness
    e = unit(a.shape)
    for eps in WITNESS_EPSILONS:
        x = add(proj, scale(e, eps))
        if compression_norm(x, a) - compression_norm(x, b) >= WITNESS_MARGIN * scale_:
            if normalize:
                x = scale(x, 1.0 / (1.0 + eps))
            return x
    raise WitnessNotFound(f"no eps in {WITNESS_EPSILONS} separates ||xax|| from ||xbx||")
