"""Explicit A_b approximation sequences and their metric convergence.

Two constructions are provided.  For Psi in Y_b written as b*Phi/Phi(b),

    seq7(n) = b * Phi**(n/(n+1)) / Phi(b)**(n/(n+1)),

and for Delta in a composition/convex level of Y_b,

    seq8(j) = P_j o Delta,   P_j(x) = (b**(1/j) x)**(j/(j+1)),

mapped over the summands when Delta is a convex combination.  Every member
fixes b and has the density-level property; d(target, member) decays like 1/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .fixed_b import member_fixed, scale_to_b
from .funcrep import Compose, Convex, Id, PowerOf, Scale, YoungExpr
from .ymetric import metric_d

__all__ = [
    "ConvergenceReport", "theorem7_seq", "theorem8_seq", "power_root",
    "log_indices", "verify_convergence",
]


def theorem7_seq(phi: YoungExpr, b: float, n: int) -> YoungExpr:
    """n-th member of the power-root sequence approximating scale_to_b(phi, b)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return scale_to_b(PowerOf(n / (n + 1), phi), b)


def power_root(b: float, j: int) -> YoungExpr:
    """x -> (b**(1/j) x)**(j/(j+1)), which fixes b."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return PowerOf(j / (j + 1), Scale(Id(), b ** (1.0 / j)))


def theorem8_seq(delta: YoungExpr, b: float, j: int) -> YoungExpr:
    """j-th approximant of ``delta`` from the A-part of its hierarchy level.

    A convex combination at the root is approximated summand by summand with
    the weights kept; any other tree is treated as a composition.
    """
    if not member_fixed(delta, b):
        raise ValueError("delta does not fix b")
    p = power_root(b, j)
    if isinstance(delta, Convex):
        return Convex(delta.weights, tuple(Compose(p, a) for a in delta.args))
    return Compose(p, delta)


def log_indices(n_max: int) -> list[int]:
    """Fibonacci-like index set 1, 2, 3, 5, 8, ... capped by (and ending at) n_max."""
    out = [1, 2]
    while out[-1] + out[-2] <= n_max:
        out.append(out[-1] + out[-2])
    out = [i for i in out if i <= n_max]
    if out[-1] != n_max:
        out.append(n_max)
    return out


@dataclass
class ConvergenceReport:
    pairs: list[tuple[int, float]]
    monotone_from: int | None
    final: float
    verdict: str
    threshold: float

    def as_dict(self):
        return {"pairs": [[n, d] for n, d in self.pairs], "monotone_from": self.monotone_from,
                "final": self.final, "verdict": self.verdict, "threshold": self.threshold}

    def d(self, n: int) -> float:
        return dict(self.pairs)[n]


MONOTONE_SLACK = 1e-12


def verify_convergence(target: YoungExpr, seq: Callable[[int], YoungExpr], n_max: int,
                       threshold: float, indices: Sequence[int] | None = None,
                       tol: float = 1e-10) -> ConvergenceReport:
    """d(target, seq(n)) over a logarithmic index set up to ``n_max``.

    ``monotone_from`` is the first index from which the sampled distances are
    non-increasing (None when only the last sample qualifies).  The verdict is
    ``converged`` when that tail exists and the last distance is at most
    ``threshold``; otherwise ``stalled``.
    """
    if n_max < 10:
        raise ValueError("n_max must be >= 10")
    idx = sorted(set(indices)) if indices is not None else log_indices(n_max)
    pairs = [(n, metric_d(target, seq(n), tol)) for n in idx]
    start = len(pairs) - 1
    while start > 0 and pairs[start][1] <= pairs[start - 1][1] + MONOTONE_SLACK:
        start -= 1
    monotone_from = pairs[start][0] if start < len(pairs) - 1 else None
    final = pairs[-1][1]
    ok = monotone_from is not None and final <= threshold
    return ConvergenceReport(pairs, monotone_from, final, "converged" if ok else "stalled", threshold)
