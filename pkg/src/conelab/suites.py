"""Executable property suites for the preserver statements.

Each suite builds canonical maps from a random Jordan *-isomorphism and weight,
samples inputs from its domain, evaluates both sides of every identity and keeps
the largest relative violation per check.  Reverse directions hand the map to an
extraction routine as a black box and compare with the hidden ground truth.

Randomness is derived from ``SeedSequence([seed, suite, dims..., stage, index])``
so every trial is independent of execution order and thread count.
"""

from __future__ import annotations

import math
import os
import re
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import (
    AlgebraShape,
    Element,
    add,
    as_shape,
    is_central,
    mul,
    random_central,
    random_element,
    random_unit_vector_element,
    scale,
    sub,
    unit,
)
from .cone import (
    compression_norm,
    diamond_p,
    geometric_mean,
    loewner_leq,
    order_witness_from_norms,
    thompson_distance,
)
from .errors import HarnessFailure, Inconclusive, WitnessNotFound
from .io import element_to_json, jordan_to_json
from .jordan import (
    ConeMap,
    JordanIso,
    extract_jordan_sandwich,
    extract_jordan_sqrt_congruence,
    random_jordan_iso,
    verify_jordan,
)
from .spectral import (
    hermitian_eig,
    hermitian_norm,
    inv,
    inv_sqrtm,
    op_norm,
    powm,
    product_is_invertible,
    product_seminorm,
    spectrum_of_positive_product,
    sqrtm,
)
from .witnesses import (
    DEFAULT_BUDGET,
    Witness,
    additivity_defect,
    centrality_conditions,
    search_additivity_witness,
    search_nonadditivity_witness,
    search_seminorm_gap_witness,
    search_squaring_witness,
)

DEFAULT_TRIALS = 500
DEFAULT_TOL = 1e-8
#: spectrum comparisons and pointwise recovery run at this multiple of the suite tolerance
LOOSE_FACTOR = 10.0
N_MAPS = 5
MAX_REVERSE_SAMPLES = 100
MIN_REVERSE_SAMPLES = 20
MAX_REPORT_WITNESSES = 4
SINGULAR_EVERY = (3, 10)  # trials i with i % 10 < 3 draw rank-deficient inputs
SAMPLE_RANGE = (0.1, 10.0)
WEIGHT_RANGE = (0.25, 4.0)
DISTINCT_MARGIN = 1e-3
#: randomly drawn "non-central" weights deviate from the centre by at least this (relative)
NONCENTRAL_MIN = 0.1

SUITE_NAMES = (
    "GyoeNormIdentities",
    "Ax2aCentrality",
    "QimEquivalence",
    "HooEquivalence",
    "NormEqualityLemma",
    "SeminormOrderLemma",
    "TripleNormJordan",
    "Thm36Equivalences",
    "HunaTwoMaps",
    "Example38NonAdditive",
    "AdditiveBijection",
    "GeoMeanCentrality",
    "OgasawaraLocal",
    "CentralityCriteria",
    "ExtheSemidefinite",
    "IneqSemidefinite",
    "Semi13Equivalences",
    "EffectDiamond",
)
PARAMETRIZED = frozenset({"Thm36Equivalences", "Semi13Equivalences", "EffectDiamond"})
MUTATIONS = ("perturb_weight", "perturb_unitary", "break_transpose", "swap_blocks")


# ---------------------------------------------------------------------------
# identifiers


@dataclass(frozen=True)
class SuiteId:
    """Suite tag plus the exponent ``p`` for the parametrised suites."""

    name: str
    p: float | None = None

    def __post_init__(self):
        if self.name not in SUITE_NAMES:
            raise ValueError(f"unknown suite {self.name!r}")
        if self.name in PARAMETRIZED:
            p = 1.0 if self.p is None else float(self.p)
            if not (math.isfinite(p) and p > 0):
                raise ValueError(f"{self.name} needs p > 0, got {self.p!r}")
            object.__setattr__(self, "p", p)
        elif self.p is not None:
            raise ValueError(f"{self.name} takes no parameter")

    _PATTERN = re.compile(r"^\s*([A-Za-z0-9]+)\s*(?::\s*([^\s()]+)|\(\s*(?:p\s*=\s*)?([^()]+?)\s*\))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "SuiteId":
        """Accepts ``Name``, ``Name:p``, ``Name(p)`` and ``Name(p=...)``."""
        m = cls._PATTERN.match(text)
        if not m:
            raise ValueError(f"cannot parse suite id {text!r}")
        name, p1, p2 = m.groups()
        raw = p1 if p1 is not None else p2
        p = None
        if raw is not None:
            try:
                p = float(raw)
            except ValueError as exc:
                raise ValueError(f"bad parameter in suite id {text!r}") from exc
        return cls(name, p)

    def __str__(self) -> str:
        return self.name if self.p is None else f"{self.name}(p={self.p:g})"


def all_suites(ps=(1.0,)) -> list[SuiteId]:
    out = []
    for name in SUITE_NAMES:
        if name in PARAMETRIZED:
            out.extend(SuiteId(name, p) for p in ps)
        else:
            out.append(SuiteId(name))
    return out


@dataclass(frozen=True)
class Mutation:
    """Negative control applied to the canonical construction."""

    kind: str
    delta: float | None = None

    def __post_init__(self):
        if self.kind not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.kind!r}")
        if self.kind in ("perturb_weight", "perturb_unitary"):
            if self.delta is None or not self.delta >= 1e-3:
                raise ValueError(f"{self.kind} needs delta >= 1e-3")
        elif self.delta is not None:
            raise ValueError(f"{self.kind} takes no delta")

    @classmethod
    def parse(cls, text: str) -> "Mutation":
        m = re.match(r"^\s*(\w+)\s*(?:\(\s*([^()]*?)\s*\))?\s*$", text)
        if not m:
            raise ValueError(f"cannot parse mutation {text!r}")
        kind, arg = m.groups()
        return cls(kind, float(arg) if arg else None)

    @property
    def expected(self) -> str:
        # a consistent transpose flip is again a Jordan *-isomorphism
        return "Pass" if self.kind == "break_transpose" else "Fail"

    def __str__(self) -> str:
        return self.kind if self.delta is None else f"{self.kind}({self.delta:g})"


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckStat:
    """Largest violation of one check, where it happened and on which inputs."""

    name: str
    tol: float
    max_violation: float = 0.0
    where: str = ""
    inputs: dict = field(default_factory=dict)
    per_map: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol

    def to_json(self) -> dict:
        return {"tol": self.tol, "max_violation": self.max_violation, "where": self.where,
                "passed": self.passed}


@dataclass
class SuiteReport:
    """Verdict of one suite run.

    ``verdict`` is ``"Pass"`` when every check is within its own tolerance and no
    witness search was inconclusive, ``"Fail"`` when a check exceeds its tolerance
    and ``"Inconclusive"`` otherwise.
    """

    suite: SuiteId
    shape: AlgebraShape
    trials: int
    seed: int
    tol: float
    verdict: str
    max_violation: float
    checks: dict[str, CheckStat]
    witnesses: list[Witness]
    reason: str | None = None
    params: dict = field(default_factory=dict)
    statement: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"

    def failing_checks(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def worst_check(self) -> CheckStat | None:
        if not self.checks:
            return None
        return max(self.checks.values(), key=lambda c: c.max_violation / c.tol)

    def worst_inputs(self) -> dict[str, Element]:
        c = self.worst_check()
        return dict(c.inputs) if c is not None else {}

    def to_json(self) -> dict:
        labels, elems = [], []
        if self.verdict == "Fail":
            c = self.worst_check()
            for k, v in c.inputs.items():
                labels.append(f"{c.name}:{k}")
                elems.append(element_to_json(v))
        for i, w in enumerate(self.witnesses):
            for k, v in w.elements.items():
                labels.append(f"{w.kind}[{i}]:{k}")
                elems.append(element_to_json(v))
        params = dict(self.params)
        params.update(
            shape=list(self.shape.dims),
            trials=self.trials,
            tol=self.tol,
            p=self.suite.p,
            checks={k: c.to_json() for k, c in self.checks.items()},
            witness_labels=labels,
            witness_margins=[w.margin for w in self.witnesses],
        )
        return {
            "suite": self.suite.name,
            "params": params,
            "verdict": self.verdict,
            "max_violation": self.max_violation,
            "witnesses": elems,
            "seed": self.seed,
            "paper_ref": self.statement,
            "reason": self.reason,
        }


# ---------------------------------------------------------------------------
# per-unit recording


class _Recorder:
    def __init__(self, where: str, map_index: int):
        self.where = where
        self.map_index = map_index
        self.checks: dict[str, tuple[float, float, dict]] = {}
        self.witnesses: list[Witness] = []
        self.inconclusive: list[str] = []

    def check(self, name: str, violation: float, *, loose: bool = False, **inputs) -> None:
        v = float(violation)
        if not math.isfinite(v):
            v = math.inf
        factor = LOOSE_FACTOR if loose else 1.0
        cur = self.checks.get(name)
        if cur is None or v > cur[0]:
            self.checks[name] = (v, factor, inputs)

    def exceeds(self, name: str, value: float, threshold: float, **inputs) -> None:
        """Record a check that requires ``value > threshold``."""
        self.check(name, max(0.0, 1.0 - value / threshold) if value <= threshold else 0.0, **inputs)

    def found(self, w: Witness | None) -> None:
        if w is not None:
            self.witnesses.append(w)

    def search(self, fn: Callable, *args, **kw) -> Witness | None:
        try:
            w = fn(*args, **kw)
        except (Inconclusive, WitnessNotFound) as exc:
            self.inconclusive.append(str(exc))
            return None
        self.found(w)
        return w


def _rel(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _rel_el(a: Element, b: Element) -> float:
    return op_norm(sub(a, b)) / max(op_norm(b), 1e-300)


def _spec_dist(s1: np.ndarray, s2: np.ndarray) -> float:
    return float(np.max(np.abs(s1 - s2))) / max(float(np.max(np.abs(s2))), 1e-300)


def _sym(a: Element) -> Element:
    return Element._raw([0.5 * (b + b.conj().T) for b in a.blocks], a.shape)


# ---------------------------------------------------------------------------
# maps and mutations


@dataclass
class MapSet:
    """One constructed instance: the maps applied to the x- and y-arguments.

    ``truth`` is the Jordan part the reverse direction must recover.
    """

    index: int
    J: JordanIso
    truth: JordanIso
    weight: Element | None
    weight_y: Element | None
    phi_x: Callable[[Element], Element]
    phi_y: Callable[[Element], Element]
    extra: dict = field(default_factory=dict)


def _perturb_unitaries(J: JordanIso, delta: float, rng) -> JordanIso:
    us = []
    for u in J.unitaries:
        n = u.shape[0]
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        us.append(u + delta * g / np.linalg.norm(g, 2))
    return J.replace(unitaries=us, check=False)


def _swap_targets(J: JordanIso, rng) -> JordanIso:
    dims = J.target.dims
    pairs = [(i, j) for i in range(len(dims)) for j in range(i + 1, len(dims)) if dims[i] == dims[j]]
    if not pairs:
        raise ValueError("swap_blocks needs two target blocks of equal size")
    i, j = pairs[int(rng.integers(len(pairs)))]
    swap = {i: j, j: i}
    return J.replace(perm=[swap.get(t, t) for t in J.perm])


def _bump(a: Element, delta: float, rng) -> Element:
    """``a + delta ||a|| v v*`` for a random unit vector ``v``."""
    return add(a, scale(random_unit_vector_element(a.shape, rng), delta * hermitian_norm(a)))


def _mutated_jordan(J: JordanIso, mutation: Mutation | None, rng) -> JordanIso:
    if mutation is None:
        return J
    if mutation.kind == "perturb_unitary":
        return _perturb_unitaries(J, mutation.delta, rng)
    if mutation.kind == "break_transpose":
        return J.replace(transpose=[not f for f in J.transpose])
    return J


def _make_map(kind: str, J: JordanIso, a: Element | None) -> Callable[[Element], Element]:
    if kind == "plain":
        return ConeMap.plain(J)
    if kind == "sandwich":
        return ConeMap.sandwich(J, a)
    if kind == "sqrt":
        return ConeMap.sqrt_congruence(J, a)
    if kind == "isqrt":
        return ConeMap.inverse_sqrt_congruence(J, a)
    raise ValueError(kind)


def _noncentral_weight(shape, rng) -> Element:
    if all(n == 1 for n in shape.dims):
        raise ValueError("a commutative algebra has no non-central elements")
    while True:
        a = random_element(shape, "PositiveInvertible", WEIGHT_RANGE, rng)
        if not is_central(a, NONCENTRAL_MIN):
            return a


# ---------------------------------------------------------------------------
# suite context


@dataclass
class _Ctx:
    suite: SuiteId
    shape: AlgebraShape
    trials: int
    seed: int
    tol: float
    mutation: Mutation | None
    weight: Element | None
    jordan: JordanIso | None
    budget: int

    @property
    def reverse_samples(self) -> int:
        return min(MAX_REVERSE_SAMPLES, max(MIN_REVERSE_SAMPLES, self.trials))

    def rng(self, stage: int, index: int) -> np.random.Generator:
        code = zlib.crc32(str(self.suite).encode())
        ss = np.random.SeedSequence([int(self.seed), code, *self.shape.dims, stage, index])
        return np.random.default_rng(ss)

    def pd(self, rng) -> Element:
        return random_element(self.shape, "PositiveInvertible", SAMPLE_RANGE, rng)

    def psd(self, rng, singular: bool) -> Element:
        if singular:
            return random_element(self.shape, "Positive", (0.0, SAMPLE_RANGE[1]), rng, singular=True)
        return random_element(self.shape, "Positive", SAMPLE_RANGE, rng, singular=False)

    def effect(self, rng, singular: bool) -> Element:
        if singular:
            return random_element(self.shape, "Effect", (0.0, 1.0), rng, singular=True)
        return random_element(self.shape, "Effect", (0.05, 1.0), rng, singular=False)

    @staticmethod
    def singular(i: int) -> bool:
        return i % SINGULAR_EVERY[1] < SINGULAR_EVERY[0]


class _Suite:
    statement = ""
    #: None, "plain", "sandwich", "sqrt" or a custom family handled in ``build``
    family: str | None = None
    central_first = False

    def build(self, ctx: _Ctx, m: int, rng) -> MapSet:
        mut = ctx.mutation
        if self.family is None:
            if mut is not None and mut.kind != "perturb_weight":
                raise ValueError(f"{mut.kind} does not apply to {ctx.suite.name}")
            return MapSet(m, None, None, None, None, None, None)
        J0 = ctx.jordan if ctx.jordan is not None else random_jordan_iso(ctx.shape, rng)
        J = _mutated_jordan(J0, mut, rng)
        Jy = _swap_targets(J, rng) if mut is not None and mut.kind == "swap_blocks" else J
        kind = self.family
        a = a_y = None
        if kind in ("sandwich", "sqrt"):
            if ctx.weight is not None:
                a = ctx.weight
            elif self.central_first and m == 0:
                a = random_central(J.target, WEIGHT_RANGE, rng)
            else:
                a = random_element(J.target, "PositiveInvertible", WEIGHT_RANGE, rng)
            a_y = a
            if mut is not None and mut.kind == "perturb_weight":
                a_y = _bump(a, mut.delta, rng)
        elif mut is not None and mut.kind == "perturb_weight":
            # unweighted family: the mutation moves phi(e) away from e on both sides
            kind = "sandwich"
            a = a_y = _bump(unit(J.target), mut.delta, rng)
        return MapSet(m, J0, J, a, a_y, _make_map(kind, J, a), _make_map(kind, Jy, a_y),
                      {"J_candidates": J0})

    def trial(self, ctx: _Ctx, ms: MapSet, rng, i: int, rec: _Recorder) -> None:
        raise NotImplementedError

    def final(self, ctx: _Ctx, ms: MapSet, rng, rec: _Recorder) -> None:
        pass

    def post(self, ctx: _Ctx, checks: dict[str, CheckStat], n_maps: int) -> list[tuple[str, float]]:
        return []


def _reverse_checks(ctx: _Ctx, rec: _Recorder, extracted, truth: JordanIso, rng,
                    *, domain: str = "definite", prefix: str = "") -> None:
    """Compare an extracted map with the hidden Jordan part and run the axiom check."""
    n = ctx.reverse_samples
    worst, worst_x = 0.0, None
    for k in range(n):
        if domain == "semidefinite":
            x = ctx.psd(rng, _Ctx.singular(k))
        elif domain == "effect":
            x = ctx.effect(rng, _Ctx.singular(k))
        else:
            x = ctx.pd(rng)
        g = _rel_el(extracted(x), truth(x))
        if g > worst:
            worst, worst_x = g, x
    rec.check(prefix + "recovery", worst, loose=True, **({"x": worst_x} if worst_x is not None else {}))
    rep = verify_jordan(extracted, ctx.shape, n, rng, tol=ctx.tol)
    for axiom, v in rep.violations.items():
        rec.check(f"{prefix}jordan_{axiom}", v)


# ---------------------------------------------------------------------------
# the suites


class _Gyoe(_Suite):
    statement = "(a x^2 a)^(1/2) a^-1 has the norm of x, and (a x^2 a)^(1/2) (a y^2 a)^(-1/2) the norm of x y^-1"

    def trial(self, ctx, ms, rng, i, rec):
        a = random_element(ctx.shape, "PositiveInvertible", SAMPLE_RANGE, rng)
        x, y = ctx.pd(rng), ctx.pd(rng)
        a_y = a
        if ctx.mutation is not None:
            a_y = _bump(a, ctx.mutation.delta, rng)
        left = sqrtm(_sym(mul(mul(a, mul(x, x)), a)))
        rec.check("first_identity", _rel(op_norm(mul(left, inv(a_y))), op_norm(x)), a=a, x=x)
        right = inv_sqrtm(_sym(mul(mul(a_y, mul(y, y)), a_y)))
        rec.check("second_identity", _rel(op_norm(mul(left, right)), op_norm(mul(x, inv(y)))),
                  a=a, x=x, y=y)


class _Ax2a(_Suite):
    statement = "x -> (a x^2 a)^(1/2) is additive exactly when a is central"

    def trial(self, ctx, ms, rng, i, rec):
        c = random_central(ctx.shape, (0.5, 2.0), rng)
        x, y = ctx.pd(rng), ctx.pd(rng)
        phi = lambda z: sqrtm(_sym(mul(mul(c, mul(z, z)), c)))  # noqa: E731
        d, s = additivity_defect(phi, x, y)
        rec.check("additive_if_central", d / s, a=c, x=x, y=y)
        rec.check("equals_ax_if_central", _rel_el(phi(x), mul(c, x)), a=c, x=x)
        if not ctx.shape.is_commutative:
            a = _noncentral_weight(ctx.shape, rng)
            rec.search(search_nonadditivity_witness, a, ctx.budget, rng)


class _Qim(_Suite):
    statement = ("phi = (a J(x)^2 a)^(1/2) preserves the norm of x y^-1; the converse recovers J, "
                 "and phi is additive exactly when phi(e) is central")
    family = "sqrt"
    central_first = True

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        lhs = op_norm(mul(ms.phi_x(x), inv(ms.phi_y(y))))
        rec.check("norm_quotient", _rel(lhs, op_norm(mul(x, inv(y)))), x=x, y=y)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        phi = ms.phi_x
        rec.check("weight_at_unit", _rel_el(phi(e), ms.weight))
        _reverse_checks(ctx, rec, extract_jordan_sqrt_congruence(phi, e), ms.truth, rng)
        a = phi(e)
        if is_central(ms.weight):
            for _ in range(ctx.reverse_samples):
                x, y = ctx.pd(rng), ctx.pd(rng)
                d, s = additivity_defect(phi, x, y)
                rec.check("additive_if_central", d / s, x=x, y=y)
                rec.check("equals_weight_times_J", _rel_el(phi(x), mul(ms.weight, ms.truth(x))), x=x)
        else:
            cands = []
            try:
                cands.append(ms.truth.inverse()(inv(a)))
            except ValueError:
                pass
            rec.search(search_additivity_witness, phi, ctx.shape, ctx.budget, rng, candidates=cands)


class _Hoo(_Suite):
    statement = ("phi = a^(1/2) J(x) a^(1/2) preserves the spectrum and spectral seminorm of x y^-1 "
                 "and the Thompson metric; the converse recovers J")
    family = "sandwich"
    central_first = True

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        px, py = ms.phi_x(x), ms.phi_y(y)
        pyi, yi = inv(py), inv(y)
        rec.check("seminorm_quotient", _rel(product_seminorm(px, pyi), product_seminorm(x, yi)), x=x, y=y)
        rec.check("spectrum_quotient",
                  _spec_dist(spectrum_of_positive_product(px, pyi), spectrum_of_positive_product(x, yi)),
                  loose=True, x=x, y=y)
        d0 = thompson_distance(x, y)
        rec.check("thompson_isometry", abs(thompson_distance(px, py) - d0) / max(1.0, d0), x=x, y=y)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("weight_at_unit", _rel_el(ms.phi_x(e), ms.weight))
        _reverse_checks(ctx, rec, extract_jordan_sandwich(ms.phi_x, e), ms.truth, rng)


class _NormEquality(_Suite):
    statement = "a = a' iff ||a x|| = ||a' x|| for all x iff ||x a x|| = ||x a' x|| for all x"

    def trial(self, ctx, ms, rng, i, rec):
        a, x = ctx.pd(rng), ctx.pd(rng)
        rec.check("square_link", _rel(op_norm(mul(a, x)) ** 2, compression_norm(x, mul(a, a))), a=a, x=x)
        a2 = ctx.pd(rng)
        for label, (u, v) in (("sandwich", (a, a2)), ("product", (mul(a, a), mul(a2, a2)))):
            if not loewner_leq(u, v).holds:
                pair = (u, v)
            elif not loewner_leq(v, u).holds:
                pair = (v, u)
            else:
                continue
            try:
                w = order_witness_from_norms(*pair)
            except WitnessNotFound as exc:
                rec.inconclusive.append(str(exc))
                continue
            if label == "sandwich":
                lhs, rhs = compression_norm(w, pair[0]), compression_norm(w, pair[1])
            else:
                lhs, rhs = op_norm(mul(sqrtm(pair[0]), w)), op_norm(mul(sqrtm(pair[1]), w))
            rec.exceeds(f"{label}_witness_separates", lhs - rhs, 0.0 if lhs > rhs else 1.0, x=w)
            if lhs > rhs:
                rec.found(Witness({"a": a, "a_prime": a2, "x": w}, lhs, rhs, (lhs - rhs) / lhs,
                                  f"norm_equality_{label}"))


class _SeminormOrder(_Suite):
    statement = "a <= a' iff ||a y||_S <= ||a' y||_S for every positive definite y"

    def trial(self, ctx, ms, rng, i, rec):
        a, y = ctx.pd(rng), ctx.pd(rng)
        a2 = add(a, ctx.psd(rng, _Ctx.singular(i)))
        lo, hi = product_seminorm(a, y), product_seminorm(a2, y)
        rec.check("monotone", max(0.0, lo - hi) / hi, a=a, a_prime=a2, y=y)
        rec.check("jacobson_identity", _rel(compression_norm(y, a), product_seminorm(a, mul(y, y))), a=a, y=y)
        b = ctx.pd(rng)
        if loewner_leq(a, b).holds:
            return
        try:
            x = order_witness_from_norms(a, b)
        except WitnessNotFound as exc:
            rec.inconclusive.append(str(exc))
            return
        y2 = _sym(mul(x, x))
        l2, r2 = product_seminorm(a, y2), product_seminorm(b, y2)
        rec.check("converse_witness", 0.0 if l2 > r2 else 1.0, a=a, b=b, y=y2)
        if l2 > r2:
            rec.found(Witness({"a": a, "a_prime": b, "y": y2}, l2, r2, (l2 - r2) / l2, "seminorm_order"))


class _TripleNorm(_Suite):
    statement = "a Jordan *-isomorphism preserves ||y x y||, and maps preserving it are Jordan"
    family = "plain"

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        py = ms.phi_y(y)
        lhs = hermitian_norm(_sym(mul(mul(py, ms.phi_x(x)), py)))
        rec.check("triple_norm", _rel(lhs, compression_norm(y, x)), x=x, y=y)
        rec.check("norm_preserved", _rel(op_norm(ms.phi_x(x)), op_norm(x)), x=x)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("unit_fixed", op_norm(sub(ms.phi_x(e), e)))
        _reverse_checks(ctx, rec, ms.phi_x, ms.truth, rng)


class _Thm36(_Suite):
    statement = ("for phi on positive definite cones: phi is Jordan iff it preserves ||x y||, "
                 "||x y||_S, sigma(x y), or the norm of (x^(p/2) y^p x^(p/2))^(1/p)")
    family = "plain"
    keys = ("norm_product", "seminorm_product", "spectrum_product", "power_mean_norm")

    def forward(self, ctx, ms, x, y, rec):
        p = ctx.suite.p
        px, py = ms.phi_x(x), ms.phi_y(y)
        rec.check("norm_product", _rel(op_norm(mul(px, py)), op_norm(mul(x, y))), x=x, y=y)
        rec.check("seminorm_product", _rel(product_seminorm(px, py), product_seminorm(x, y)), x=x, y=y)
        rec.check("spectrum_product",
                  _spec_dist(spectrum_of_positive_product(px, py), spectrum_of_positive_product(x, y)),
                  loose=True, x=x, y=y)
        rec.check("power_mean_norm",
                  _rel(hermitian_norm(diamond_p(px, py, p)), hermitian_norm(diamond_p(x, y, p))), x=x, y=y)
        return px, py

    def trial(self, ctx, ms, rng, i, rec):
        self.forward(ctx, ms, ctx.pd(rng), ctx.pd(rng), rec)

    def final(self, ctx, ms, rng, rec):
        p = ctx.suite.p
        e = unit(ctx.shape)
        rec.check("unit_fixed", op_norm(sub(ms.phi_x(e), e)))
        phi = ms.phi_x
        psi = lambda z: _sym(powm(phi(powm(z, 1.0 / p)), p))  # noqa: E731
        _reverse_checks(ctx, rec, psi, ms.truth, rng, prefix="deformed_")
        _reverse_checks(ctx, rec, phi, ms.truth, rng)

    def post(self, ctx, checks, n_maps):
        out = []
        for m in range(n_maps):
            verdicts = {checks[k].per_map.get(m, 0.0) <= checks[k].tol for k in self.keys if k in checks}
            out.append(0.0 if len(verdicts) <= 1 else 1.0)
        return [("equivalence_consistency", max(out, default=0.0))]


class _Huna(_Suite):
    statement = ("||phi1(x) phi2(y)|| = ||x y|| with phi1(e) = e forces phi1 = phi2 = J; without it "
                 "the pair (a J(x)^2 a)^(1/2), (a^-1 J(x)^2 a^-1)^(1/2) also qualifies")
    family = "plain"

    def build(self, ctx, m, rng):
        ms = super().build(ctx, m, rng)
        a = ctx.weight if ctx.weight is not None else _noncentral_weight(ctx.shape, rng)
        ms.extra["a"] = a
        ms.extra["b1"] = ConeMap.sqrt_congruence(ms.truth, a)
        Jy = ms.truth
        if ctx.mutation is not None and ctx.mutation.kind == "swap_blocks":
            Jy = _swap_targets(ms.truth, rng)
        ms.extra["b2"] = ConeMap.inverse_sqrt_congruence(Jy, a)
        return ms

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        nxy = op_norm(mul(x, y))
        rec.check("unital_pair_norm", _rel(op_norm(mul(ms.phi_x(x), ms.phi_y(y))), nxy), x=x, y=y)
        b1, b2 = ms.extra["b1"], ms.extra["b2"]
        rec.check("weighted_pair_norm", _rel(op_norm(mul(b1(x), b2(y))), nxy), x=x, y=y)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("unital_pair_unit", op_norm(sub(ms.phi_x(e), e)))
        gap = 0.0
        for _ in range(ctx.reverse_samples):
            x = ctx.pd(rng)
            gap = max(gap, _rel_el(ms.phi_x(x), ms.phi_y(x)))
        rec.check("unital_pair_coincide", gap)
        _reverse_checks(ctx, rec, ms.phi_x, ms.truth, rng)
        b1, b2 = ms.extra["b1"], ms.extra["b2"]
        x = ctx.pd(rng)
        rec.exceeds("weighted_pair_differ", _rel_el(b1(x), b2(x)), DISTINCT_MARGIN, x=x)
        rec.exceeds("weighted_pair_nonunital", op_norm(sub(b1(e), e)), DISTINCT_MARGIN)


class _Example38(_Suite):
    statement = ("phi1 = (a J(x)^2 a)^(1/2) and phi2 = (a^-1 J(x)^2 a^-1)^(1/2) satisfy "
                 "||phi1(x) phi2(y)|| = ||x y|| while phi1 is not additive for non-central a")
    family = "plain"

    def build(self, ctx, m, rng):
        ms = super().build(ctx, m, rng)
        a = ctx.weight if ctx.weight is not None else _noncentral_weight(ctx.shape, rng)
        if is_central(a):
            raise ValueError("Example38NonAdditive needs a non-central weight")
        J = ms.truth
        ms.weight = a
        ms.phi_x = ConeMap.sqrt_congruence(J, a)
        Jy = J
        if ctx.mutation is not None and ctx.mutation.kind == "swap_blocks":
            Jy = _swap_targets(J, rng)
        a_y = a
        if ctx.mutation is not None and ctx.mutation.kind == "perturb_weight":
            a_y = _bump(a, ctx.mutation.delta, rng)
        ms.phi_y = ConeMap.inverse_sqrt_congruence(Jy, a_y)
        return ms

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        rec.check("pair_norm", _rel(op_norm(mul(ms.phi_x(x), ms.phi_y(y))), op_norm(mul(x, y))), x=x, y=y)
        rec.check("inverse_relation", _rel_el(ms.phi_y(y), inv(ms.phi_x(inv(y)))), y=y)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("weight_at_unit", _rel_el(ms.phi_x(e), ms.weight))
        cands = []
        try:
            cands.append(ms.truth.inverse()(inv(ms.weight)))
        except ValueError:
            pass
        try:
            w = search_additivity_witness(ms.phi_x, ctx.shape, ctx.budget, rng, candidates=cands,
                                          threshold=DISTINCT_MARGIN)
        except Inconclusive:
            # a barely non-central weight may not admit the larger margin; settle for any witness
            w = rec.search(search_additivity_witness, ms.phi_x, ctx.shape, ctx.budget, rng,
                           candidates=cands)
            if w is not None:
                rec.inconclusive.append(f"witness margin {w.margin:.2e} below {DISTINCT_MARGIN:g}")
                w.elements = {"a": ms.weight, **w.elements}
            return
        w.elements = {"a": ms.weight, **w.elements}
        rec.found(w)


class _AdditiveBijection(_Suite):
    statement = "an additive bijection of positive definite cones is T(e)^(1/2) J T(e)^(1/2)"
    family = "sandwich"

    def trial(self, ctx, ms, rng, i, rec):
        x, y = ctx.pd(rng), ctx.pd(rng)
        tx, ty = ms.phi_x(x), ms.phi_y(y)
        s = op_norm(tx) + op_norm(ty)
        rec.check("additivity", op_norm(sub(ms.phi_x(add(x, y)), add(tx, ty))) / s, x=x, y=y)
        mid = ms.phi_x(scale(add(x, y), 0.5))
        rec.check("midpoint", op_norm(sub(mid, scale(add(tx, ty), 0.5))) / (0.5 * s), x=x, y=y)
        rec.check("halving", _rel_el(ms.phi_x(scale(x, 0.5)), scale(tx, 0.5)), x=x)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        _reverse_checks(ctx, rec, extract_jordan_sandwich(ms.phi_x, e), ms.truth, rng)


class _GeoMean(_Suite):
    statement = "x -> (b # x)^2 is additive exactly when b is central"

    def trial(self, ctx, ms, rng, i, rec):
        c = random_central(ctx.shape, (0.5, 2.0), rng)
        x, y = ctx.pd(rng), ctx.pd(rng)
        phi = lambda z: _sym(mul(geometric_mean(c, z), geometric_mean(c, z)))  # noqa: E731
        d, s = additivity_defect(phi, x, y)
        rec.check("additive_if_central", d / s, b=c, x=x, y=y)
        cx = mul(c, x)
        rec.check("equals_bx_if_central", _rel_el(phi(x), cx), b=c, x=x)
        rec.check("square_mean_if_central", _rel_el(geometric_mean(mul(c, c), mul(x, x)), cx), b=c, x=x)
        rec.check("value_at_unit", _rel_el(phi(unit(ctx.shape)), c), b=c)
        if not ctx.shape.is_commutative:
            b = _noncentral_weight(ctx.shape, rng)
            psi = lambda z: _sym(mul(geometric_mean(b, z), geometric_mean(b, z)))  # noqa: E731
            w = rec.search(search_additivity_witness, psi, ctx.shape, ctx.budget, rng,
                           candidates=[inv(b), b])
            if w is not None:
                w.elements = {"b": b, **w.elements}


class _Ogasawara(_Suite):
    statement = "a is central iff a <= x implies a^2 <= x^2 for positive definite x"

    def trial(self, ctx, ms, rng, i, rec):
        c = random_central(ctx.shape, (0.5, 2.0), rng)
        x = add(c, ctx.psd(rng, _Ctx.singular(i)))
        lam = hermitian_eig(_sym(sub(mul(x, x), mul(c, c)))).min
        rec.check("squares_monotone_if_central", max(0.0, -lam) / hermitian_norm(x) ** 2, a=c, x=x)
        if not ctx.shape.is_commutative:
            a = _noncentral_weight(ctx.shape, rng)
            rec.search(search_squaring_witness, a, ctx.budget, rng)


class _CentralityCriteria(_Suite):
    statement = ("a is central iff ||a x a^-1|| = ||x||, iff ||a^2 x|| = ||a x a||, iff "
                 "||a x|| = ||a x||_S, iff ||a^2 x|| = ||a^2 x||_S for all positive definite x")

    def trial(self, ctx, ms, rng, i, rec):
        c = random_central(ctx.shape, (0.5, 2.0), rng)
        x = ctx.pd(rng)
        for k, v in centrality_conditions(c, x).items():
            rec.check(f"{k}_if_central", v, a=c, x=x)
        if not ctx.shape.is_commutative:
            a = _noncentral_weight(ctx.shape, rng)
            rec.check("sandwich_vs_seminorm", centrality_conditions(a, x)["sandwich_vs_seminorm"], a=a, x=x)
            rec.search(search_seminorm_gap_witness, a, ctx.budget, rng)


class _Exthe(_Suite):
    statement = ("a positively homogeneous order isomorphism of positive semidefinite cones is "
                 "phi(e)^(1/2) J phi(e)^(1/2)")
    family = "sandwich"

    def trial(self, ctx, ms, rng, i, rec):
        sing = _Ctx.singular(i)
        x = ctx.psd(rng, sing)
        px = ms.phi_x(x)
        npx = max(op_norm(px), 1e-300)
        for t in (0.0, 0.5, 2.0):
            rec.check("homogeneity", op_norm(sub(ms.phi_x(scale(x, t)), scale(px, t))) / npx, x=x)
        for x2 in (x, add(x, ctx.psd(rng, not sing))):
            rec.check("order_forward", max(0.0, -loewner_leq(px, ms.phi_y(x2)).margin), x=x, x_prime=x2)
        z = ctx.psd(rng, sing)
        src = loewner_leq(x, z)
        if not src.holds and src.margin < -DISTINCT_MARGIN:
            img = loewner_leq(px, ms.phi_y(z))
            rec.check("order_reflect", -src.margin if img.holds else 0.0, x=x, z=z)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        _reverse_checks(ctx, rec, extract_jordan_sandwich(ms.phi_x, e), ms.truth, rng, domain="semidefinite")


class _Ineq(_Suite):
    statement = "for positive a, b: a <= b iff ||x a x|| <= ||x b x|| for every positive x (x <= e suffices)"

    def trial(self, ctx, ms, rng, i, rec):
        sing = _Ctx.singular(i)
        a = ctx.psd(rng, sing)
        b = add(a, ctx.psd(rng, sing))
        x = ctx.psd(rng, sing)
        lo, hi = compression_norm(x, a), compression_norm(x, b)
        rec.check("forward", max(0.0, lo - hi) / max(hi, 1e-300), a=a, b=b, x=x)
        c = ctx.psd(rng, sing)
        if loewner_leq(a, c).holds:
            return
        for normalize in (False, True):
            try:
                w = order_witness_from_norms(a, c, normalize=normalize)
            except WitnessNotFound as exc:
                rec.inconclusive.append(str(exc))
                return
            l2, r2 = compression_norm(w, a), compression_norm(w, c)
            name = "normalized_witness" if normalize else "witness"
            ok = l2 > r2 and (not normalize or loewner_leq(w, unit(ctx.shape)).holds)
            rec.check(name, 0.0 if ok else 1.0, a=a, b=c, x=w)
            if ok and not normalize:
                rec.found(Witness({"a": a, "b": c, "x": w}, l2, r2, (l2 - r2) / l2, "order"))


class _Semi13(_Thm36):
    statement = ("on positive semidefinite cones: phi is Jordan iff it preserves ||x y||, "
                 "||x y||_S, sigma(x y), or the norm of (x^(p/2) y^p x^(p/2))^(1/p)")

    def trial(self, ctx, ms, rng, i, rec):
        sing = _Ctx.singular(i)
        x, y = ctx.psd(rng, sing), ctx.psd(rng, sing)
        px, py = self.forward(ctx, ms, x, y, rec)
        same = product_is_invertible(px, py) == product_is_invertible(x, y)
        rec.check("invertibility_flags", 0.0 if same else 1.0, x=x, y=y)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("unit_fixed", op_norm(sub(ms.phi_x(e), e)))
        phi = ms.phi_x
        psi = lambda z: _sym(mul(phi(sqrtm(z)), phi(sqrtm(z))))  # noqa: E731
        _reverse_checks(ctx, rec, psi, ms.truth, rng, domain="semidefinite", prefix="squared_")
        _reverse_checks(ctx, rec, phi, ms.truth, rng, domain="semidefinite")


class _EffectDiamond(_Suite):
    statement = ("a surjection of effect algebras preserving the norm of x <>_p y is a Jordan "
                 "*-isomorphism; the extension ||a|| phi(a/||a||) is homogeneous")
    family = "plain"
    T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)

    @staticmethod
    def extend(phi):
        def tilde(a: Element) -> Element:
            n = hermitian_norm(a)
            if n == 0.0:
                return Element._raw([np.zeros_like(b) for b in a.blocks], a.shape)
            return scale(phi(scale(a, 1.0 / n)), n)

        return tilde

    def trial(self, ctx, ms, rng, i, rec):
        p = ctx.suite.p
        sing = _Ctx.singular(i)
        x, y = ctx.effect(rng, sing), ctx.effect(rng, sing)
        px, py = ms.phi_x(x), ms.phi_y(y)
        rec.check("diamond_norm",
                  _rel(hermitian_norm(diamond_p(px, py, p)), hermitian_norm(diamond_p(x, y, p))), x=x, y=y)
        npx = max(op_norm(px), 1e-300)
        for t in self.T_GRID:
            rec.check("homogeneity", op_norm(sub(ms.phi_x(scale(x, t)), scale(px, t))) / npx, x=x)
        tilde = self.extend(ms.phi_x)
        rec.check("extension_agrees", _rel_el(tilde(x), px), x=x)
        a = ctx.psd(rng, sing)
        b = ctx.psd(rng, not sing)
        ta, tb = tilde(a), tilde(b)
        rec.check("extension_diamond_norm",
                  _rel(hermitian_norm(diamond_p(ta, tb, p)), hermitian_norm(diamond_p(a, b, p))), a=a, b=b)

    def final(self, ctx, ms, rng, rec):
        e = unit(ctx.shape)
        rec.check("unit_fixed", op_norm(sub(ms.phi_x(e), e)))
        _reverse_checks(ctx, rec, ms.phi_x, ms.truth, rng, domain="effect", prefix="effect_")
        _reverse_checks(ctx, rec, self.extend(ms.phi_x), ms.truth, rng)


_SUITES: dict[str, _Suite] = {
    "GyoeNormIdentities": _Gyoe(),
    "Ax2aCentrality": _Ax2a(),
    "QimEquivalence": _Qim(),
    "HooEquivalence": _Hoo(),
    "NormEqualityLemma": _NormEquality(),
    "SeminormOrderLemma": _SeminormOrder(),
    "TripleNormJordan": _TripleNorm(),
    "Thm36Equivalences": _Thm36(),
    "HunaTwoMaps": _Huna(),
    "Example38NonAdditive": _Example38(),
    "AdditiveBijection": _AdditiveBijection(),
    "GeoMeanCentrality": _GeoMean(),
    "OgasawaraLocal": _Ogasawara(),
    "CentralityCriteria": _CentralityCriteria(),
    "ExtheSemidefinite": _Exthe(),
    "IneqSemidefinite": _Ineq(),
    "Semi13Equivalences": _Semi13(),
    "EffectDiamond": _EffectDiamond(),
}


def statement(suite: SuiteId | str) -> str:
    name = suite.name if isinstance(suite, SuiteId) else SuiteId.parse(suite).name
    return _SUITES[name].statement


# ---------------------------------------------------------------------------
# driver


def _threads(threads: int | None) -> int:
    if threads is None:
        raw = os.environ.get("CONELAB_THREADS", "1")
        try:
            threads = int(raw)
        except ValueError:
            threads = 1
    return max(1, threads)


def run_suite(
    suite: SuiteId | str,
    shape,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    mutation: Mutation | str | None = None,
    weight: Element | None = None,
    jordan: JordanIso | None = None,
    witness_budget: int = DEFAULT_BUDGET,
    threads: int | None = None,
) -> SuiteReport:
    """Run one suite and merge all trials into a :class:`SuiteReport`.

    Parameters
    ----------
    suite : SuiteId or str
        Suite to run (``"Thm36Equivalences:2"`` style strings are accepted).
    shape : AlgebraShape or sequence of int
        Block sizes of the algebra.
    trials : int
        Random input draws; up to five maps are constructed and trials cycle through them.
    seed : int
        Root seed.  The report is a deterministic function of all arguments.
    tol : float
        Relative tolerance; spectrum and recovery checks use ``10 * tol``.
    mutation : Mutation or str, optional
        Negative control, see :func:`mutate_and_expect_failure`.
    weight, jordan : optional
        Override the random weight ``a`` or Jordan part used by every map.
    threads : int, optional
        Worker threads; defaults to ``$CONELAB_THREADS`` or 1.

    Raises
    ------
    NumericalHealthFailure
        A cross-check between two computation routes disagreed.
    """
    if isinstance(suite, str):
        suite = SuiteId.parse(suite)
    if isinstance(mutation, str):
        mutation = Mutation.parse(mutation)
    shape = as_shape(shape)
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if weight is not None and weight.shape != shape:
        raise ValueError("weight must live in the suite's algebra")
    if jordan is not None and (jordan.source != shape or jordan.target != shape):
        raise ValueError("jordan must map the suite's algebra to itself")
    impl = _SUITES[suite.name]
    ctx = _Ctx(suite, shape, trials, int(seed), float(tol), mutation, weight, jordan, int(witness_budget))

    n_maps = min(N_MAPS, trials)
    maps = [impl.build(ctx, m, ctx.rng(1, m)) for m in range(n_maps)]

    def run_trial(i: int) -> _Recorder:
        ms = maps[i % n_maps]
        rec = _Recorder(f"trial {i}", ms.index)
        impl.trial(ctx, ms, ctx.rng(0, i), i, rec)
        return rec

    def run_final(m: int) -> _Recorder:
        rec = _Recorder(f"map {m} reverse", m)
        impl.final(ctx, maps[m], ctx.rng(2, m), rec)
        return rec

    n_workers = _threads(threads)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            recs = list(pool.map(run_trial, range(trials))) + list(pool.map(run_final, range(n_maps)))
    else:
        recs = [run_trial(i) for i in range(trials)] + [run_final(m) for m in range(n_maps)]

    checks: dict[str, CheckStat] = {}
    witnesses: list[Witness] = []
    inconclusive: list[str] = []
    for rec in recs:
        for name, (v, factor, inputs) in rec.checks.items():
            c = checks.get(name)
            if c is None:
                c = checks[name] = CheckStat(name, tol * factor, -1.0)
            if v > c.max_violation:
                c.max_violation, c.where, c.inputs = v, rec.where, inputs
            c.per_map[rec.map_index] = max(c.per_map.get(rec.map_index, 0.0), v)
        witnesses.extend(rec.witnesses)
        inconclusive.extend(rec.inconclusive)
    for name, v in impl.post(ctx, checks, n_maps):
        checks[name] = CheckStat(name, tol, v, "all maps")
    for c in checks.values():
        c.max_violation = max(c.max_violation, 0.0)

    max_violation = max((c.max_violation for c in checks.values()), default=0.0)
    reason = None
    if any(not c.passed for c in checks.values()):
        verdict = "Fail"
        worst = max(checks.values(), key=lambda c: c.max_violation / c.tol)
        reason = f"{worst.name} violated by {worst.max_violation:.3e} (tol {worst.tol:.0e}) at {worst.where}"
    elif inconclusive:
        verdict = "Inconclusive"
        reason = f"{len(inconclusive)} witness search(es) exhausted their budget: {inconclusive[0]}"
    else:
        verdict = "Pass"

    params: dict = {
        "witnesses_found": len(witnesses),
        "inconclusive_searches": len(inconclusive),
        "maps": n_maps,
        "witness_budget": ctx.budget,
        "mutation": str(mutation) if mutation is not None else None,
    }
    if weight is not None:
        params["weight"] = element_to_json(weight)
    if jordan is not None:
        params["jordan"] = jordan_to_json(jordan)
    return SuiteReport(suite, shape, trials, int(seed), float(tol), verdict, max_violation, checks,
                       witnesses[:MAX_REPORT_WITNESSES], reason, params, impl.statement)


def mutate_and_expect_failure(
    suite: SuiteId | str,
    mutation: Mutation | str,
    shape=(2,),
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    *,
    check: bool = True,
    **kw,
) -> SuiteReport:
    """Run a suite on a deliberately broken construction.

    Every mutation except ``break_transpose`` must produce ``Fail`` with
    ``max_violation >= delta / 10``; ``break_transpose`` yields another Jordan
    *-isomorphism and must ``Pass``.  An unmet expectation raises
    :class:`HarnessFailure` when ``check`` is set.
    """
    if isinstance(mutation, str):
        mutation = Mutation.parse(mutation)
    report = run_suite(suite, shape, trials, seed, tol, mutation=mutation, **kw)
    expected = mutation.expected
    report.params["expected"] = expected
    if check:
        if report.verdict != expected:
            raise HarnessFailure(
                f"{report.suite} under {mutation}: expected {expected}, got {report.verdict}"
            )
        if expected == "Fail" and mutation.delta is not None and report.max_violation < mutation.delta / 10:
            raise HarnessFailure(
                f"{report.suite} under {mutation}: violation {report.max_violation:.3e} "
                f"below delta/10 = {mutation.delta / 10:.1e}"
            )
    return report
