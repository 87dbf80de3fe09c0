"""The mu-weighted L2 norm and metric, the density-level functional, and
the proportionality relation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .funcrep import YoungExpr, density, evaluate
from .quad import QuadResult, Verdict, integrate_mu, tail_integral

__all__ = [
    "Membership", "LevelVerdict", "norm_mu", "metric_d", "metric_d_result",
    "density_level", "proportional", "proportionality_grid", "PROPORTIONAL_RTOL",
]

Evaluable = Union[YoungExpr, Callable]

PROPORTIONAL_RTOL = 1e-9


def _as_callable(f: Evaluable) -> Callable:
    if isinstance(f, YoungExpr):
        return lambda x: evaluate(f, x)
    return f


def norm_mu(phi: Evaluable, tol: float = 1e-10) -> float:
    """||Phi|| = sqrt(int Phi**2 d mu)."""
    f = _as_callable(phi)
    res = integrate_mu(lambda x: f(x) ** 2, tol)
    _require(res)
    return math.sqrt(max(res.value, 0.0))


def metric_d_result(f: Evaluable, g: Evaluable, tol: float = 1e-10) -> QuadResult:
    """The squared distance int (f - g)**2 d mu as a full quadrature result."""
    if f is g or (isinstance(f, YoungExpr) and f == g):
        return QuadResult(0.0, 0.0, Verdict.CONVERGED)
    ff, gg = _as_callable(f), _as_callable(g)
    return integrate_mu(lambda x: (ff(x) - gg(x)) ** 2, tol)


def metric_d(f: Evaluable, g: Evaluable, tol: float = 1e-10) -> float:
    """d(f, g) = sqrt(int (f - g)**2 d mu).

    Symmetric bit for bit, since (a - b)**2 == (b - a)**2 in IEEE arithmetic.
    """
    res = metric_d_result(f, g, tol)
    _require(res)
    return math.sqrt(max(res.value, 0.0))


def _require(res: QuadResult):
    if not res.converged:
        raise ArithmeticError(
            f"quadrature did not reach tolerance (estimate {res.value!r}, "
            f"error {res.abs_error_est!r} after {res.panels} panels)"
        )


class Membership(str, enum.Enum):
    IN_A = "in_A"
    NOT_IN_A = "not_in_A"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass
class LevelVerdict:
    a_value: float
    membership: Membership
    source: str                      # "analytic_flag" or "numeric"
    numeric: QuadResult | None = None

    def as_dict(self):
        out = {
            "a_value": self.a_value,
            "membership": str(self.membership),
            "source": self.source,
        }
        if self.numeric is not None:
            out["numeric_verdict"] = str(self.numeric.verdict)
        return out


def density_level(phi: Evaluable, tol: float = 1e-10, use_flags: bool = True) -> LevelVerdict:
    """A_Phi(inf) = int_1^inf phi(t)/t dt and membership in A.

    Analytic flags carried by the tree decide membership whenever present; the
    doubling tail integral supplies the numeric value and is the fallback
    classifier.  When the flag says ``in_A`` but the numeric run is not
    conclusive, ``a_value`` is the extrapolated estimate of the finite value.
    """
    if isinstance(phi, YoungExpr):
        psi = lambda t: density(phi, t) / t  # noqa: E731
    else:
        psi = phi
    res = tail_integral(psi, tol)

    flag = phi.in_A() if (use_flags and isinstance(phi, YoungExpr)) else None
    if flag is True:
        return LevelVerdict(res.value, Membership.IN_A, "analytic_flag", res)
    if flag is False:
        return LevelVerdict(math.inf, Membership.NOT_IN_A, "analytic_flag", res)
    if res.verdict is Verdict.CONVERGED:
        return LevelVerdict(res.value, Membership.IN_A, "numeric", res)
    if res.verdict is Verdict.DIVERGENT:
        return LevelVerdict(math.inf, Membership.NOT_IN_A, "numeric", res)
    return LevelVerdict(res.value, Membership.UNKNOWN, "numeric", res)


def proportionality_grid(n: int = 25) -> np.ndarray:
    return np.logspace(-3.0, 3.0, n)


def proportional(phi: Evaluable, psi: Evaluable, grid: Sequence[float] | None = None,
                 rtol: float = PROPORTIONAL_RTOL) -> float | None:
    """The constant c with psi = c*phi on the grid, or None.

    The grid must hold at least 16 positive points spanning 4 decades.
    """
    x = np.asarray(proportionality_grid() if grid is None else grid, dtype=float)
    if x.size < 16 or np.any(x <= 0):
        raise ValueError("grid needs at least 16 positive points")
    if math.log10(x.max() / x.min()) < 4.0 - 1e-12:
        raise ValueError("grid must span at least four decades")
    a = np.asarray(_as_callable(phi)(x), dtype=float)
    b = np.asarray(_as_callable(psi)(x), dtype=float)
    ratios = b / a
    c = float(np.median(ratios))
    if not (c > 0 and math.isfinite(c)):
        return None
    if np.all(np.abs(ratios / c - 1.0) <= rtol):
        return c
    return None
