"""L^p criteria on finite discrete measure spaces.

The witness family used throughout is

    W_n(x) = x + (1 - e^{-x}) / n        (IdPlusSoft(1/n)),

which lies strictly above the identity on (0, inf), so the scaling constant
c = 1 is admissible for every n, and decreases pointwise to the identity.
Infima over all of the class are certified one-sidedly: every roster pair
gives an upper bound and W_n attains the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .funcrep import (
    Compose, Id, IdPlusSoft, Log1p, Power, Scale, Sum, YoungExpr, density, evaluate,
    has_constant_density,
)

__all__ = [
    "DiscreteMeasureSpace", "MeasurableFn", "ScalingWindow", "SlopeResult",
    "lp_norm", "asymptotic_slope", "min_scaling", "decompose_theorem9",
    "Decomposition", "witness", "stress_roster", "scaling_pairs",
    "sandwich_check", "SandwichReport", "tail_identity", "TailReport",
    "norm_identity", "NormReport", "scalar_recover", "RecoverReport",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class DiscreteMeasureSpace:
    atoms: tuple[tuple[str, float], ...]

    def __post_init__(self):
        atoms = tuple((str(lab), float(w)) for lab, w in self.atoms)
        if not atoms:
            raise ValueError("a measure space needs at least one atom")
        for lab, w in atoms:
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"atom {lab!r} has weight {w!r}; weights must be positive and finite")
        if len({lab for lab, _ in atoms}) != len(atoms):
            raise ValueError("atom labels must be unique")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "DiscreteMeasureSpace":
        return cls(tuple((f"w{i}", w) for i, w in enumerate(weights)))

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.atoms]

    @property
    def total(self) -> float:
        return math.fsum(w for _, w in self.atoms)

    def __len__(self):
        return len(self.atoms)

    def measure(self, mask) -> float:
        """lambda of the atom set selected by a boolean mask."""
        return math.fsum(w for (_, w), m in zip(self.atoms, mask) if m)


@dataclass(frozen=True)
class MeasurableFn:
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("function values must be finite")
        object.__setattr__(self, "values", vals)

    def abs(self) -> np.ndarray:
        return np.abs(np.array(self.values))

    def check(self, space: DiscreteMeasureSpace):
        if len(self.values) != len(space):
            raise ValueError(f"{len(self.values)} values for {len(space)} atoms")


def _pnorm(weights, values, p: float) -> float:
    return math.fsum(weights * np.abs(values) ** p) ** (1.0 / p)


def lp_norm(space: DiscreteMeasureSpace, f: MeasurableFn, p: float) -> float:
    """(sum_i lambda_i |f_i|**p)**(1/p)."""
    if not p >= 1:
        raise ValueError("p must be >= 1")
    f.check(space)
    return _pnorm(space.weights, f.abs(), p)


# -- functions with positive asymptotic slope -----------------------------------

@dataclass
class SlopeResult:
    value: float | None
    in_tilde: bool | None
    source: str
    stable: bool
    ratios: list[float] = field(default_factory=list)

    def as_dict(self):
        return {"value": self.value, "in_tilde": self.in_tilde, "source": self.source,
                "stable": self.stable}


SLOPE_RTOL = 1e-6
SLOPE_FLOOR = 1e-9
ZERO_DECAY = 0.999


def asymptotic_slope(phi: YoungExpr, use_flags: bool = True) -> SlopeResult:
    """lim Phi(t)/t from t = 2**20 ... 2**40.

    The numeric estimate is the last ratio when the last five agree to 1e-6
    relative.  A limit of 0 never stabilises relatively, so ratios whose last
    five step quotients all stay below 0.999 (geometric decay under doubling)
    are read as slope 0.  With ``use_flags`` the slope propagated analytically
    through the tree decides the value and the membership (slope > 1e-9);
    otherwise anything else is inconclusive (``in_tilde`` None).
    """
    t = 2.0 ** np.arange(20, 41)
    ratios = list(evaluate(phi, t) / t)
    last = ratios[-5:]
    ref = last[-1]
    stable = ref > 0 and all(abs(r / ref - 1.0) <= SLOPE_RTOL for r in last)
    quotients = [b / a for a, b in zip(ratios[-6:], ratios[-5:])]
    vanishing = not stable and all(q <= ZERO_DECAY for q in quotients)
    if use_flags:
        L = phi.slope()
        return SlopeResult(L, L > SLOPE_FLOOR, "analytic_flag", stable or vanishing, ratios)
    if vanishing:
        return SlopeResult(0.0, False, "numeric", True, ratios)
    if not stable:
        return SlopeResult(None, None, "numeric", False, ratios)
    return SlopeResult(ref, ref > SLOPE_FLOOR, "numeric", True, ratios)


@dataclass(frozen=True)
class ScalingWindow:
    """T = {c >= 1 : c*Delta > id on (0, inf)} as (left end, endpoint included)."""

    c_inf: float
    attained: bool

    def __post_init__(self):
        if not self.c_inf >= 1:
            raise ValueError("c_inf must be >= 1")

    def contains(self, c: float) -> bool:
        return c > self.c_inf or (c == self.c_inf and self.attained)

    def member(self, bump: float = 1e-6) -> float:
        """A concrete element of T."""
        return self.c_inf if self.attained else self.c_inf * (1.0 + bump)


def scaling_grid() -> np.ndarray:
    # float resolution limits strictness checks near 1e16; stay well below
    return np.logspace(-6.0, 8.0, 141)


def min_scaling(delta: YoungExpr, grid: Sequence[float] | None = None) -> ScalingWindow:
    """Left end of T_Delta and whether it belongs to T_Delta."""
    L = asymptotic_slope(delta).value
    if not (L is not None and L > SLOPE_FLOOR):
        raise ValueError("asymptotic slope is 0: the function is not in the positive-slope class")
    x = scaling_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = evaluate(delta, x)
    c_inf = max(1.0, float(np.max(x / vals)), 1.0 / L)
    attained = bool(np.all(c_inf * vals > x))
    return ScalingWindow(c_inf, attained)


@dataclass
class Decomposition:
    c: float
    precondition: bool
    vanishes: bool
    positive: bool
    slope_chain: bool
    strict: bool
    witness: float | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.precondition and self.vanishes and self.positive and self.slope_chain

    def as_dict(self):
        return {"c": self.c, "passed": self.passed, "precondition": self.precondition,
                "vanishes": self.vanishes, "positive": self.positive,
                "slope_chain": self.slope_chain, "strict": self.strict,
                "witness": self.witness, "detail": self.detail}


def decompose_theorem9(phi: YoungExpr, c: float, grid: Sequence[float] | None = None) -> Decomposition:
    """Check that D = c*Phi - id vanishes at 0, is positive and concave.

    Concavity is checked through the slope chain
    (y - x) d(y) <= D(y) - D(x) <= (y - x) d(x), d = c*phi - 1, on consecutive
    and wide grid pairs.  ``strict`` reports that D is not linear and that some
    pair separates the two bounds by more than rounding noise.
    """
    if not c >= 1:
        raise ValueError("c must be >= 1")
    x = scaling_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = evaluate(phi, x)
    above = c * vals > x
    if not above.all():
        t = float(x[np.argmin(above)])
        return Decomposition(c, False, False, False, False, False, t,
                             f"c*Phi(t) <= t at t = {t:g}")
    D = c * vals - x
    dD = c * density(phi, x) - 1.0
    vanishes = c * evaluate(phi, 0.0) - 0.0 == 0.0
    positive = bool(np.all(D > 0))

    n = len(x)
    pairs = [(i, i + 1) for i in range(n - 1)] + [(i, j) for i in range(0, n, 10) for j in range(i + 5, n, 10)]
    cphi = c * density(phi, x)
    chain, resolved_strict, witness = True, False, None
    for i, j in pairs:
        gap = x[j] - x[i]
        rise = D[j] - D[i]
        lo, hi = gap * dD[j], gap * dD[i]
        # D = c*Phi - x cancels: absolute error scales with c*Phi + x
        noise = 16 * _EPS * (c * vals[j] + x[j] + gap * cphi[i])
        slack = 1e-9 * (abs(rise) + abs(lo) + abs(hi)) + noise
        if lo > rise + slack or rise > hi + slack:
            chain = False
            witness = float(x[i]) if witness is None else witness
        if hi - lo > 2 * slack and lo < rise < hi:
            resolved_strict = True
    strict = chain and resolved_strict and not has_constant_density(phi)
    return Decomposition(c, True, vanishes, positive, chain, strict, witness)


# -- witness family and rosters ---------------------------------------------------

def witness(n: int) -> YoungExpr:
    """W_n = id + (1 - e^{-id})/n."""
    return IdPlusSoft(1.0 / n)


def stress_roster(n_max: int = 1024) -> list[YoungExpr]:
    """Positive-slope functions used as adversaries for the upper sandwich bound.

    Besides catalog members this includes steep saturating functions
    k(1 - e^{-m x}) + m x, whose ratio Phi(y)/Phi(1) is close to 1 already for
    small y; IdPlusSoft(k) alone saturates at rate 1 and is too mild.
    """
    out: list[YoungExpr] = [
        Id(), IdPlusSoft(1.0), Scale(Id(), 0.5), Sum((Id(), Log1p())),
        Sum((Id(), Power(0.5))), Scale(IdPlusSoft(3.0), 2.0),
    ]
    k = 2
    while k <= n_max:
        out.append(IdPlusSoft(float(k)))
        k *= 4
    for m in (10.0, 100.0, 1000.0):
        for kk in (1e3, 1e6):
            out.append(Compose(IdPlusSoft(kk), Scale(Id(), m)))
    return out


def scaling_pairs(roster: Sequence[YoungExpr]) -> list[tuple[YoungExpr, float]]:
    """(Delta, c) with c in T_Delta: the left end (or just above it) and twice that."""
    out = []
    for d in roster:
        w = min_scaling(d)
        out.append((d, w.member()))
        out.append((d, 2.0 * w.c_inf))
    return out


@dataclass
class SandwichReport:
    norm: float
    lower_witness: float
    upper_corrected: float
    upper_printed: float
    sup_roster: float
    violations: list[int]
    printed_violations: list[int]
    lower_sequence: list[tuple[int, float]]

    @property
    def passed(self) -> bool:
        return abs(self.lower_witness - self.norm) <= 1e-12 * max(1.0, self.norm) and not self.violations

    def as_dict(self):
        return {"norm": self.norm, "lower_witness": self.lower_witness,
                "upper_corrected": self.upper_corrected, "upper_printed": self.upper_printed,
                "sup_roster": self.sup_roster, "violations": self.violations,
                "printed_violations": self.printed_violations, "passed": self.passed}


def normalized_value(space: DiscreteMeasureSpace, f: MeasurableFn, p: float, phi: YoungExpr) -> float:
    """Phi(1)**-1 * || Phi o |f| ||_p."""
    return _pnorm(space.weights, evaluate(phi, f.abs()), p) / evaluate(phi, 1.0)


def sandwich_check(space: DiscreteMeasureSpace, f: MeasurableFn, p: float, n_max: int = 1024,
                   roster: Sequence[YoungExpr] | None = None) -> SandwichReport:
    """Lower and upper bounds for sup_Phi Phi(1)**-1 ||Phi o |f|||_p.

    The identity attains the lower bound ||f||_p.  Every roster member must
    respect ||f||_p + lambda(Omega)**(1/p); the weaker-looking bound
    ||f||_p + lambda(Omega) is evaluated too and its violations (possible for
    p > 1 and lambda(Omega) < 1) are listed, informationally.
    """
    if not p >= 1:
        raise ValueError("p must be >= 1")
    f.check(space)
    norm = lp_norm(space, f, p)
    lower = normalized_value(space, f, p, Id())
    upper = norm + space.total ** (1.0 / p)
    printed = norm + space.total
    roster = stress_roster(n_max) if roster is None else list(roster)
    values = [normalized_value(space, f, p, phi) for phi in roster]
    violations = [i for i, v in enumerate(values) if v > upper + 1e-12]
    printed_v = [i for i, v in enumerate(values) if v > printed + 1e-12]
    # witnesses W_n approach id, so their normalised values tend to ||f||_p
    seq = []
    n = 1
    while n <= n_max:
        seq.append((n, normalized_value(space, f, p, witness(n))))
        n *= 2
    return SandwichReport(norm, lower, upper, printed, max(values), violations, printed_v, seq)


@dataclass
class TailReport:
    eps: float
    direct: float
    witnesses: list[tuple[int, float]]
    infimum: float
    reached_at: int | None
    one_sided_ok: bool
    roster_ok: bool

    @property
    def passed(self) -> bool:
        return self.one_sided_ok and self.roster_ok and self.reached_at is not None

    def as_dict(self):
        return {"eps": self.eps, "direct": self.direct, "infimum": self.infimum,
                "reached_at": self.reached_at, "one_sided_ok": self.one_sided_ok,
                "roster_ok": self.roster_ok, "passed": self.passed}


def tail_identity(space: DiscreteMeasureSpace, f: MeasurableFn, eps: float, n_max: int = 64,
                  roster: Sequence[YoungExpr] | None = None) -> TailReport:
    """lambda(|f| >= eps) against lambda(Delta o |f| >= eps/c)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not eps >= 0:
        raise ValueError("eps must be >= 0")
    f.check(space)
    a = f.abs()
    direct = space.measure(a >= eps)
    wits = [(n, space.measure(evaluate(witness(n), a) >= eps)) for n in range(1, n_max + 1)]
    one_sided = all(v >= direct for _, v in wits)
    inf = min(v for _, v in wits)
    reached = next((n for n, v in wits if v == direct), None)
    pairs = scaling_pairs(stress_roster() if roster is None else roster)
    roster_ok = all(space.measure(evaluate(d, a) >= eps / c) >= direct for d, c in pairs)
    return TailReport(eps, direct, wits, inf, reached, one_sided, roster_ok)


@dataclass
class NormReport:
    p: float
    norm: float
    witnesses: list[tuple[int, float]]
    infimum: float
    tolerance: float
    monotone: bool
    roster_ok: bool

    @property
    def passed(self) -> bool:
        return self.monotone and self.roster_ok and self.infimum - self.norm <= self.tolerance

    def as_dict(self):
        return {"p": self.p, "norm": self.norm, "infimum": self.infimum,
                "tolerance": self.tolerance, "monotone": self.monotone,
                "roster_ok": self.roster_ok, "passed": self.passed}


def norm_identity(space: DiscreteMeasureSpace, f: MeasurableFn, p: float, n_max: int = 1000,
                  roster: Sequence[YoungExpr] | None = None) -> NormReport:
    """||f||_p against c * ||Delta o |f|||_p over roster pairs and the witness chain."""
    if not p >= 1:
        raise ValueError("p must be >= 1")
    f.check(space)
    a = f.abs()
    w = space.weights
    norm = _pnorm(w, a, p)
    wits = [(n, _pnorm(w, evaluate(witness(n), a), p)) for n in range(1, n_max + 1)]
    monotone = all(wits[i + 1][1] <= wits[i][1] for i in range(len(wits) - 1))
    monotone = monotone and all(v >= norm for _, v in wits)
    pairs = scaling_pairs(stress_roster() if roster is None else roster)
    roster_ok = all(c * _pnorm(w, evaluate(d, a), p) >= norm * (1 - 1e-12) for d, c in pairs)
    tol = max(1e-9, 2.0 * space.total ** (1.0 / p) / n_max)
    return NormReport(p, norm, wits, wits[-1][1], tol, monotone, roster_ok)


@dataclass
class RecoverReport:
    y: float
    value: float
    n_max: int
    within: bool

    def as_dict(self):
        return {"y": self.y, "value": self.value, "n_max": self.n_max, "within": self.within}


def scalar_recover(y: float, n_max: int = 100, space: DiscreteMeasureSpace | None = None,
                   p: float = 1.0) -> RecoverReport:
    """|y| as lambda(Omega)**(-1/p) inf_n || W_n o |f| ||_p with f constant = y."""
    if not math.isfinite(y):
        raise ValueError("y must be finite")
    space = DiscreteMeasureSpace((("omega", 1.0),)) if space is None else space
    f = np.full(len(space), abs(y))
    scale = space.total ** (-1.0 / p)
    values = [scale * _pnorm(space.weights, evaluate(witness(n), f), p) for n in range(1, n_max + 1)]
    value = min(values)
    gap = value - abs(y)
    # relative slack covers the rounding of the norm for atoms with weight != 1
    slack = 1e-12 * max(1.0, abs(y))
    return RecoverReport(y, value, n_max, -slack <= gap <= 1.0 / n_max + slack)
