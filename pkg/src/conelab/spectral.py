"""Hermitian eigensystems, functional calculus, norms and the dominance functional."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._jacobi import jacobi_hermitian
from .algebra import DEFAULT_TOL, Element, _check_same, adjoint, mul, sub
from .errors import DomainError, NoConvergence, SingularError, UnsupportedElement

JACOBI_RTOL = 1e-12
MAX_SWEEPS = 64
#: eigenvalues of x^(1/2) y x^(1/2) below this times ||x|| ||y|| count as zero
PRODUCT_ZERO_RTOL = 1e-10
#: an element is treated as singular when lambda_min <= this times lambda_max
SINGULAR_RTOL = 1e-13


@dataclass(frozen=True)
class EigenSystem:
    """Per-block ascending eigenvalues and unitary eigenvector matrices."""

    eigenvalues: tuple[np.ndarray, ...]
    vectors: tuple[np.ndarray, ...]
    shape: object

    def reconstruct(self) -> Element:
        return Element._raw(
            [(u * w) @ u.conj().T for w, u in zip(self.eigenvalues, self.vectors)], self.shape
        )

    @property
    def spectrum(self) -> np.ndarray:
        """Sorted union of the block spectra (with multiplicity)."""
        return np.sort(np.concatenate(self.eigenvalues))

    @property
    def min(self) -> float:
        return min(float(w[0]) for w in self.eigenvalues)

    @property
    def max(self) -> float:
        return max(float(w[-1]) for w in self.eigenvalues)


def _eig_block(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if b.shape[0] == 1:
        return np.array([b[0, 0].real]), np.ones((1, 1), dtype=np.complex128)
    w, v, _, ok = jacobi_hermitian(b, JACOBI_RTOL, MAX_SWEEPS)
    if not ok:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (n={b.shape[0]})")
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig(a: Element) -> EigenSystem:
    """Cyclic-Jacobi eigendecomposition of the Hermitian part ``(a + a*) / 2``."""
    ws, vs = [], []
    for b in a.blocks:
        w, v = _eig_block(b)
        ws.append(w)
        vs.append(v)
    return EigenSystem(tuple(ws), tuple(vs), a.shape)


def eigvalsh(a: Element) -> list[np.ndarray]:
    return [_eig_block(b)[0] for b in a.blocks]


def spectrum(a: Element) -> np.ndarray:
    """Sorted spectrum of a self-adjoint element."""
    return np.sort(np.concatenate(eigvalsh(a)))


# ---------------------------------------------------------------------------
# functional calculus

_FUNCS = ("power", "sqrt", "inverse", "log", "exp")


def _norm_of_eigs(ws) -> float:
    return max(float(np.max(np.abs(w))) for w in ws)


def func_calc(a: Element, f: str, p: float | None = None, *, tol: float = DEFAULT_TOL) -> Element:
    """Apply ``f`` to a self-adjoint element through its eigendecomposition.

    Parameters
    ----------
    a : Element
        Self-adjoint element (its Hermitian part is used).
    f : {"power", "sqrt", "inverse", "log", "exp"}
        Function to apply; ``power`` needs the exponent ``p``.
    tol : float
        Eigenvalues in ``[-tol * ||a||, 0)`` are rounding noise and are set to zero
        for ``sqrt`` and positive powers; anything more negative is a
        :class:`DomainError`.

    Raises
    ------
    DomainError
        Negative spectrum under a root/log/fractional power.
    SingularError
        ``inverse`` or a negative power of a singular positive element.
    """
    if f not in _FUNCS:
        raise ValueError(f"unknown function {f!r}; expected one of {_FUNCS}")
    if f == "power":
        if p is None:
            raise ValueError("power needs an exponent p")
        p = float(p)
    es = hermitian_eig(a)
    ws = es.eigenvalues
    norm = _norm_of_eigs(ws)
    lo = es.min

    if f == "exp":
        fw = [np.exp(w) for w in ws]
    elif f == "power" and p == int(p) and p >= 0:
        fw = [w ** int(p) for w in ws]
    else:
        needs_invertible = f in ("inverse", "log") or (f == "power" and p < 0)
        if lo < -tol * norm:
            raise DomainError(f"{f} needs a positive element, min eigenvalue {lo:.3e}")
        if needs_invertible and lo <= SINGULAR_RTOL * norm:
            if f == "log":
                raise DomainError(f"log of a singular element (min eigenvalue {lo:.3e})")
            raise SingularError(f"{f} of a singular element (min eigenvalue {lo:.3e})")
        # below the singularity floor an eigenvalue is rounding noise around zero;
        # fractional powers would amplify it (1e-16 ** 0.25 = 1e-4)
        ws = [np.where(w <= SINGULAR_RTOL * norm, 0.0, w) for w in ws]
        if f == "sqrt":
            fw = [np.sqrt(w) for w in ws]
        elif f == "inverse":
            fw = [1.0 / w for w in ws]
        elif f == "log":
            fw = [np.log(w) for w in ws]
        else:
            fw = [w ** p for w in ws]
    return _rebuild(es, fw)


def _rebuild(es: EigenSystem, fw) -> Element:
    blocks = []
    for u, w in zip(es.vectors, fw):
        b = (u * w) @ u.conj().T
        blocks.append(0.5 * (b + b.conj().T))
    return Element._raw(blocks, es.shape)


def sqrtm(a: Element) -> Element:
    return func_calc(a, "sqrt")


def inv(a: Element) -> Element:
    return func_calc(a, "inverse")


def powm(a: Element, p: float) -> Element:
    return func_calc(a, "power", p)


def inv_sqrtm(a: Element) -> Element:
    return func_calc(a, "power", -0.5)


# ---------------------------------------------------------------------------
# norms


def op_norm(a: Element) -> float:
    """Operator norm ``sqrt(max sigma(a* a))``, maximised over blocks."""
    best = 0.0
    for b in a.blocks:
        w = _eig_block(b.conj().T @ b)[0]
        best = max(best, float(w[-1]))
    return float(np.sqrt(max(best, 0.0)))


def hermitian_norm(a: Element) -> float:
    """``max |lambda|`` for self-adjoint ``a``; equals :func:`op_norm` there."""
    return _norm_of_eigs(eigvalsh(a))


class PositiveProduct(NamedTuple):
    """Hint that an element is the product ``x y`` of two positive elements."""

    x: Element
    y: Element


def spectral_seminorm(a: Element | None, hint="hermitian", *, tol: float = 1e-9) -> float:
    """Spectral radius of ``a`` for the structured cases the library supports.

    ``hint="hermitian"`` requires ``a`` self-adjoint and returns ``max |lambda|``.
    ``hint=PositiveProduct(x, y)`` returns ``max sigma(x^(1/2) y x^(1/2))``; ``a`` may be
    ``None`` or must equal ``x y``.  General non-normal elements raise
    :class:`UnsupportedElement`.
    """
    if isinstance(hint, PositiveProduct):
        x, y = hint
        if a is not None:
            _check_same(a, x)
            scale_ = max(op_norm(x) * op_norm(y), 1e-300)
            if op_norm(sub(a, mul(x, y))) > tol * scale_:
                raise UnsupportedElement("element does not match the supplied product x y")
        return product_seminorm(x, y)
    if hint == "hermitian":
        if a is None:
            raise UnsupportedElement("no element supplied")
        norm = op_norm(a)
        if op_norm(sub(a, adjoint(a))) > tol * max(norm, 1e-300):
            raise UnsupportedElement("element is not self-adjoint; supply a PositiveProduct hint")
        return hermitian_norm(a)
    raise UnsupportedElement(f"unsupported hint {hint!r}")


def sandwich(x: Element, y: Element) -> Element:
    """``x^(1/2) y x^(1/2)`` for positive ``x``."""
    r = sqrtm(x)
    return mul(mul(r, y), r)


def spectrum_of_positive_product(x: Element, y: Element) -> np.ndarray:
    """Sorted spectrum of ``x y`` for positive ``x, y`` (via ``x^(1/2) y x^(1/2)``).

    Eigenvalues at or below ``1e-10 * ||x|| ||y||`` are reported as exact zeros.
    """
    w = spectrum(sandwich(x, y))
    cutoff = PRODUCT_ZERO_RTOL * op_norm(x) * op_norm(y)
    w = np.where(w <= cutoff, 0.0, w)
    return w


def product_is_invertible(x: Element, y: Element) -> bool:
    return bool(spectrum_of_positive_product(x, y)[0] > 0.0)


def product_seminorm(x: Element, y: Element) -> float:
    """``||x y||_S`` for positive ``x, y``."""
    return float(max(spectrum(sandwich(x, y))[-1], 0.0))


def inf_dominance(x: Element, y: Element) -> float:
    """``inf{t : x <= t y}`` computed as ``||y^(-1/2) x y^(-1/2)||``."""
    r = inv_sqrtm(y)
    return hermitian_norm(mul(mul(r, x), r))
