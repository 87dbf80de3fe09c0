"""Fixed-point families Y_b / A_b, their composition-convex hierarchies, set
distances, and the order structure keyed to b.

The families themselves are uncountable; a :class:`FnRoster` is a finite
sample of one.  Every sup/inf below is exact over the roster and only
witnesses (never certifies) the corresponding statement about the full set.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .funcrep import (
    Compose, Convex, Scale, WeightVector, YoungExpr, evaluate, has_constant_density,
)
from .ymetric import metric_d, metric_d_result

__all__ = [
    "FnRoster", "SetDistanceReport", "OrderReport", "DiameterReport",
    "SeparationReport", "scale_to_b", "member_fixed", "gen_hierarchy",
    "set_distance", "distance_matrix", "order_witness", "diameter_check",
    "separation_check", "c_b", "h_b", "FIXED_RTOL", "HIERARCHY_CAP",
]

FIXED_RTOL = 1e-9
HIERARCHY_CAP = 512
ROSTER_CAVEAT = "finite roster: sup/inf are exact over the listed members only"


def h_b(x, b: float):
    """Affine majorant x + b of every member of Y_b."""
    return np.asarray(x, dtype=float) + b


def c_b(b: float) -> float:
    """int h_b**2 d mu = (b**2 + b + 1)/3."""
    return (b * b + b + 1.0) / 3.0


def member_fixed(phi: YoungExpr, b: float, rtol: float = FIXED_RTOL) -> bool:
    """True iff |Phi(b) - b| <= rtol * max(1, b)."""
    return abs(evaluate(phi, b) - b) <= rtol * max(1.0, b)


def scale_to_b(phi: YoungExpr, b: float) -> YoungExpr:
    """(b / Phi(b)) * Phi, the representative of Phi's ray inside Y_b."""
    if not b > 0:
        raise ValueError("b must be positive")
    at_b = evaluate(phi, b)
    if not at_b > 0:
        raise ValueError(f"Phi(b) = {at_b!r} is not positive")
    return Scale(phi, b / at_b)


@dataclass
class FnRoster:
    label: str
    b: float | None
    members: list[YoungExpr]
    truncated: bool = False
    rtol: float = FIXED_RTOL

    def __post_init__(self):
        self.members = list(self.members)
        if not self.members:
            raise ValueError("a roster needs at least one member")
        if self.b is not None:
            if not self.b > 0:
                raise ValueError("b must be positive")
            for i, m in enumerate(self.members):
                if not member_fixed(m, self.b, self.rtol):
                    raise ValueError(
                        f"member {i} does not fix b = {self.b}: Phi(b) = {evaluate(m, self.b)!r}"
                    )

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def a_members(self) -> list[YoungExpr]:
        """Sub-roster flagged as having the density-level property."""
        return [m for m in self.members if m.in_A() is True]


def gen_hierarchy(n: int, b: float, seeds: FnRoster, weights: WeightVector | Sequence[float],
                  cap: int = HIERARCHY_CAP) -> FnRoster:
    """Sampled level ``n`` of the composition-convex hierarchy over ``seeds``.

    Level 1 is the seed roster itself.  For n >= 2 the output lists every
    n-fold composition of seed members (lexicographic order over index
    tuples) followed by the convex combinations, under ``weights``, of each
    lexicographic k-subset of those compositions, k = len(weights).  At most
    ``cap`` members are emitted; hitting the cap sets ``truncated`` and warns.
    Members whose analytic flag is set form the A-sub-roster
    (see :meth:`FnRoster.a_members`).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if seeds.b != b:
        raise ValueError(f"seed roster is for b = {seeds.b}, not {b}")
    for i, s in enumerate(seeds):
        if not member_fixed(s, b):
            raise ValueError(f"seed {i} does not fix b")
    w = weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))
    if n == 1:
        return FnRoster(f"{seeds.label}^(1)", b, list(seeds.members))

    out: list[YoungExpr] = []
    truncated = False
    comps: list[YoungExpr] = []
    for idx in itertools.product(range(len(seeds)), repeat=n):
        if len(out) >= cap:
            truncated = True
            break
        parts = [seeds.members[i] for i in idx]
        expr = parts[-1]
        for outer in reversed(parts[:-1]):
            expr = Compose(outer, expr)
        comps.append(expr)
        out.append(expr)
    k = len(w)
    if k >= 2 and not truncated:
        for combo in itertools.combinations(range(len(comps)), k):
            if len(out) >= cap:
                truncated = True
                break
            out.append(Convex(w, tuple(comps[i] for i in combo)))
    if truncated:
        warnings.warn(f"hierarchy level {n} truncated at {cap} members", RuntimeWarning, stacklevel=2)
    return FnRoster(f"{seeds.label}^({n})", b, out, truncated=truncated)


def distance_matrix(F: Sequence[YoungExpr], G: Sequence[YoungExpr], tol: float = 1e-10) -> np.ndarray:
    F, G = list(F), list(G)
    D = np.empty((len(F), len(G)))
    cache: dict = {}
    for i, f in enumerate(F):
        for j, g in enumerate(G):
            key = (id(g), id(f))
            D[i, j] = cache[key] if key in cache else metric_d(f, g, tol)
            cache[(id(f), id(g))] = D[i, j]
    return D


@dataclass
class SetDistanceReport:
    forward: float
    backward: float
    hausdorff: float
    matrix: np.ndarray | None = None
    caveat: str = ROSTER_CAVEAT

    def as_dict(self):
        return {"forward": self.forward, "backward": self.backward,
                "hausdorff": self.hausdorff, "caveat": self.caveat}

    def rows(self):
        """(i, j, d) triples in row-major order, for CSV output."""
        if self.matrix is None:
            return []
        return [(i, j, float(self.matrix[i, j]))
                for i in range(self.matrix.shape[0]) for j in range(self.matrix.shape[1])]


def set_distance(F: FnRoster | Sequence[YoungExpr], G: FnRoster | Sequence[YoungExpr],
                 tol: float = 1e-10) -> SetDistanceReport:
    """Directed sup-inf distances F->G and G->F and their maximum."""
    F, G = list(F), list(G)
    if not F or not G:
        raise ValueError("both rosters must be nonempty")
    D = distance_matrix(F, G, tol)
    forward = float(D.min(axis=1).max())
    backward = float(D.min(axis=0).max())
    return SetDistanceReport(forward, backward, max(forward, backward), D)


@dataclass
class OrderReport:
    b1: float
    b2: float
    sandwich: bool
    strict_interior: bool | None
    raw_pair: tuple[float, float]
    printed_inequality_holds: bool
    order: str
    witness: float | None = None

    def as_dict(self):
        return {
            "b1": self.b1, "b2": self.b2, "sandwich": self.sandwich,
            "strict_interior": self.strict_interior,
            "phi1_at_b2": self.raw_pair[0], "phi2_at_b1": self.raw_pair[1],
            "printed_inequality_holds": self.printed_inequality_holds,
            "order": self.order, "witness": self.witness,
        }


def order_witness(b1: float, b2: float, phi1: YoungExpr, phi2: YoungExpr,
                  grid: Sequence[float] | None = None) -> OrderReport:
    """Compare members of Y_b1 and Y_b2 on [b1, b2], b1 < b2.

    The verified statement is phi1 <= id <= phi2 on [b1, b2] (strict in the
    interior when the density is not constant).  The raw pair
    (phi1(b2), phi2(b1)) is reported alongside so that the strict inequality
    phi1(b2) < phi2(b1) can be inspected; it does not hold in general.
    """
    if not (0 < b1 < b2):
        raise ValueError("need 0 < b1 < b2")
    if not member_fixed(phi1, b1):
        raise ValueError("phi1 does not fix b1")
    if not member_fixed(phi2, b2):
        raise ValueError("phi2 does not fix b2")
    x = np.linspace(b1, b2, 65) if grid is None else np.asarray(grid, dtype=float)
    if np.any(x < b1) or np.any(x > b2):
        raise ValueError("grid must lie inside [b1, b2]")
    v1, v2 = evaluate(phi1, x), evaluate(phi2, x)
    slack = FIXED_RTOL * np.maximum(1.0, x)
    bad = (v1 > x + slack) | (v2 < x - slack)
    sandwich = not bad.any()
    witness = float(x[np.argmax(bad)]) if bad.any() else None

    strict = None
    interior = (x > b1) & (x < b2)
    if interior.any() and not (has_constant_density(phi1) and has_constant_density(phi2)):
        ok1 = has_constant_density(phi1) or np.all(v1[interior] < x[interior])
        ok2 = has_constant_density(phi2) or np.all(v2[interior] > x[interior])
        strict = bool(ok1 and ok2)
    pair = (evaluate(phi1, b2), evaluate(phi2, b1))
    return OrderReport(b1, b2, sandwich, strict, pair, pair[0] < pair[1],
                       "Y_b1 < Y_b2", witness)


@dataclass
class DiameterReport:
    b: float
    diameter: float
    bound: float
    within_bound: bool
    majorant_ok: bool
    majorant_witness: tuple[int, float] | None
    caveat: str = ROSTER_CAVEAT

    @property
    def passed(self):
        return self.within_bound and self.majorant_ok

    def as_dict(self):
        return {"b": self.b, "diameter": self.diameter, "bound": self.bound,
                "within_bound": self.within_bound, "majorant_ok": self.majorant_ok,
                "majorant_witness": self.majorant_witness, "caveat": self.caveat}


def diameter_check(F: FnRoster, grid: Sequence[float] | None = None, tol: float = 1e-10) -> DiameterReport:
    """Roster diameter against sqrt(2 C_b), and Phi <= x + b on the grid."""
    if F.b is None:
        raise ValueError("roster has no b")
    b = F.b
    members = list(F)
    diam = 0.0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            diam = max(diam, metric_d(members[i], members[j], tol))
    bound = math.sqrt(2.0 * c_b(b))
    x = np.logspace(-3, 4, 64) if grid is None else np.asarray(grid, dtype=float)
    witness = None
    for i, m in enumerate(members):
        over = evaluate(m, x) > h_b(x, b) * (1 + 1e-12)
        if over.any():
            witness = (i, float(x[np.argmax(over)]))
            break
    return DiameterReport(b, diam, bound, diam <= bound + 1e-6, witness is None, witness)


@dataclass
class SeparationReport:
    min_distance: float
    argmin: int
    error_budget: float
    positive: bool
    caveat: str = "roster minimum witnesses positivity only; it does not bound the infimum"

    def as_dict(self):
        return {"min_distance": self.min_distance, "argmin": self.argmin,
                "error_budget": self.error_budget, "positive": self.positive,
                "caveat": self.caveat}


def separation_check(F: FnRoster, phi2: YoungExpr, b2: float, tol: float = 1e-10) -> SeparationReport:
    """min over F of d(., phi2) for phi2 in Y_b2, with F sampling Y_b1, b1 != b2."""
    if F.b is None:
        raise ValueError("roster has no b")
    b1 = F.b
    if b1 == b2:
        raise ValueError("b1 and b2 must differ")
    if not member_fixed(phi2, b2):
        raise ValueError("phi2 does not fix b2")
    if member_fixed(phi2, b1) or any(member_fixed(m, b2) for m in F):
        # e.g. the identity, which fixes every point
        raise ValueError("a function fixing both b1 and b2 cannot witness separation")
    best, arg, budget = math.inf, -1, 0.0
    for i, m in enumerate(F):
        res = metric_d_result(m, phi2, tol)
        d = math.sqrt(max(res.value, 0.0))
        if d < best:
            best, arg = d, i
            # sqrt(I) is uncertain by at most sqrt(err) around I ~ 0
            budget = math.sqrt(res.abs_error_est)
    return SeparationReport(best, arg, budget, best > budget)
