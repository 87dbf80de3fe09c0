"""Concave Young-functions as immutable expression trees.

A tree is built from four atoms

    Id            x
    Power(a)      x**a,                 0 < a <= 1
    Log1p         log(1 + x)
    IdPlusSoft(c) x + c*(1 - exp(-x)),  c > 0

and five combinators (Scale, PowerOf, Compose, Sum, Convex).  Every node
evaluates on numpy arrays, has a closed-form right derivative (the density),
and carries two analytic facts that are propagated structurally: whether the
density-level integral int_1^inf phi(t)/t dt is finite, and the asymptotic
slope lim Phi(t)/t.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

__all__ = [
    "YoungExpr", "Id", "Power", "Log1p", "IdPlusSoft", "Scale", "PowerOf",
    "Compose", "Sum", "Convex", "WeightVector", "Violation", "ValidationReport",
    "DescriptorError", "ParameterError", "parse_descriptor", "from_dict",
    "serialize", "evaluate", "evaluate_flagged", "density", "density_fd",
    "combine", "validate", "default_grid", "a_flag", "analytic_slope",
    "has_constant_density",
]

WEIGHT_SUM_TOL = 1e-12


class ParameterError(ValueError):
    """A node parameter is outside its admissible range."""


class DescriptorError(ValueError):
    """Malformed descriptor document.

    ``position`` is the character offset for JSON syntax errors, ``path`` a
    JSONPath-like locator for structural errors.
    """

    def __init__(self, message: str, position: int | None = None, path: str | None = None):
        loc = []
        if position is not None:
            loc.append(f"position {position}")
        if path is not None:
            loc.append(f"at {path}")
        super().__init__(message + (f" ({', '.join(loc)})" if loc else ""))
        self.position = position
        self.path = path


def _check_positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


def _check_expr(value, name="argument"):
    if not isinstance(value, YoungExpr):
        raise ParameterError(f"{name} must be a YoungExpr, got {type(value).__name__}")


@dataclass(frozen=True)
class WeightVector:
    """Finite probability vector (t_1, ..., t_k) with entries in [0, 1]."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(t) for t in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ParameterError("weight vector must be nonempty")
        for i, t in enumerate(w):
            if not (0.0 <= t <= 1.0):
                raise ParameterError(f"weight {i} = {t} outside [0, 1]")
        total = math.fsum(w)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ParameterError(f"weights sum to {total!r}, not 1")

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


class YoungExpr:
    """Base class of all tree nodes.

    Subclasses implement ``_value`` and ``_density`` on float arrays without
    precondition checks; the public :func:`evaluate` and :func:`density`
    (also reachable as ``expr(x)`` and ``expr.density(x)``) do the checking.
    """

    kind: str = ""

    def _value(self, x):
        raise NotImplementedError

    def _density(self, x):
        raise NotImplementedError

    def in_A(self) -> bool | None:
        """Analytic density-level flag, ``None`` when undecided."""
        raise NotImplementedError

    def slope(self) -> float:
        """Analytic value of lim_{t->inf} Phi(t)/t."""
        raise NotImplementedError

    def unbounded(self) -> bool:
        return True

    def constant_density(self) -> bool:
        """True when the density is constant, i.e. the function is linear."""
        return False

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __call__(self, x):
        return evaluate(self, x)

    def density(self, x):
        return density(self, x)


@dataclass(frozen=True)
class Id(YoungExpr):
    kind = "id"

    def _value(self, x):
        return x

    def _density(self, x):
        return np.ones_like(x)

    def in_A(self):
        return False

    def slope(self):
        return 1.0

    def constant_density(self):
        return True

    def to_dict(self):
        return {"kind": "id"}


@dataclass(frozen=True)
class Power(YoungExpr):
    alpha: float
    kind = "power"

    def __post_init__(self):
        a = self.alpha
        if not (isinstance(a, (int, float)) and 0.0 < a <= 1.0):
            raise ParameterError(f"alpha must lie in (0, 1], got {a!r}")
        object.__setattr__(self, "alpha", float(a))

    def _value(self, x):
        if self.alpha == 1.0:
            return x
        return np.power(x, self.alpha)

    def _density(self, x):
        if self.alpha == 1.0:
            return np.ones_like(x)
        return self.alpha * np.power(x, self.alpha - 1.0)

    def in_A(self):
        # int_1^inf a t**(a-2) dt = a/(1-a) for a < 1
        return self.alpha < 1.0

    def slope(self):
        return 1.0 if self.alpha == 1.0 else 0.0

    def constant_density(self):
        return self.alpha == 1.0

    def to_dict(self):
        return {"kind": "power", "alpha": self.alpha}


@dataclass(frozen=True)
class Log1p(YoungExpr):
    kind = "log1p"

    def _value(self, x):
        return np.log1p(x)

    def _density(self, x):
        return 1.0 / (1.0 + x)

    def in_A(self):
        return True

    def slope(self):
        return 0.0

    def to_dict(self):
        return {"kind": "log1p"}


@dataclass(frozen=True)
class IdPlusSoft(YoungExpr):
    """x + c(1 - e^{-x}); strictly above the identity on (0, inf)."""

    c: float
    kind = "id_plus_soft"

    def __post_init__(self):
        _check_positive("c", self.c)
        object.__setattr__(self, "c", float(self.c))

    def _value(self, x):
        return x - self.c * np.expm1(-x)

    def _density(self, x):
        return 1.0 + self.c * np.exp(-x)

    def in_A(self):
        # phi >= 1, so phi(t)/t is not integrable at infinity
        return False

    def slope(self):
        return 1.0

    def to_dict(self):
        return {"kind": "id_plus_soft", "c": self.c}


@dataclass(frozen=True)
class Scale(YoungExpr):
    """c * arg."""

    arg: YoungExpr
    c: float
    kind = "scale"

    def __post_init__(self):
        _check_expr(self.arg, "arg")
        _check_positive("c", self.c)
        object.__setattr__(self, "c", float(self.c))

    def _value(self, x):
        return self.c * self.arg._value(x)

    def _density(self, x):
        return self.c * self.arg._density(x)

    def in_A(self):
        return self.arg.in_A()

    def slope(self):
        return self.c * self.arg.slope()

    def unbounded(self):
        return self.arg.unbounded()

    def constant_density(self):
        return self.arg.constant_density()

    def to_dict(self):
        return {"kind": "scale", "c": self.c, "arg": self.arg.to_dict()}


@dataclass(frozen=True)
class PowerOf(YoungExpr):
    """arg ** alpha with 0 < alpha < 1; always has the density-level property."""

    alpha: float
    arg: YoungExpr
    kind = "power_of"

    def __post_init__(self):
        a = self.alpha
        if not (isinstance(a, (int, float)) and 0.0 < a < 1.0):
            raise ParameterError(f"power_of alpha must lie in (0, 1), got {a!r}")
        _check_expr(self.arg, "arg")
        object.__setattr__(self, "alpha", float(a))

    def _value(self, x):
        return np.power(self.arg._value(x), self.alpha)

    def _density(self, x):
        inner = self.arg._value(x)
        return self.alpha * np.power(inner, self.alpha - 1.0) * self.arg._density(x)

    def in_A(self):
        return True

    def slope(self):
        # Phi**a <= (K t)**a for large t, and a < 1
        return 0.0

    def unbounded(self):
        return self.arg.unbounded()

    def to_dict(self):
        return {"kind": "power_of", "alpha": self.alpha, "arg": self.arg.to_dict()}


@dataclass(frozen=True)
class Compose(YoungExpr):
    """outer o inner."""

    outer: YoungExpr
    inner: YoungExpr
    kind = "compose"

    def __post_init__(self):
        _check_expr(self.outer, "outer")
        _check_expr(self.inner, "inner")

    def _value(self, x):
        return self.outer._value(self.inner._value(x))

    def _density(self, x):
        return self.outer._density(self.inner._value(x)) * self.inner._density(x)

    def in_A(self):
        a, b = self.outer.in_A(), self.inner.in_A()
        if a or b:
            return True
        if a is None or b is None:
            return None
        return False

    def slope(self):
        return self.outer.slope() * self.inner.slope()

    def unbounded(self):
        return self.outer.unbounded() and self.inner.unbounded()

    def constant_density(self):
        return self.outer.constant_density() and self.inner.constant_density()

    def to_dict(self):
        return {"kind": "compose", "outer": self.outer.to_dict(), "inner": self.inner.to_dict()}


def _combine_flags(flags):
    # A_{sum}(inf) is the sum of the summands' integrals
    if any(f is False for f in flags):
        return False
    if any(f is None for f in flags):
        return None
    return True


@dataclass(frozen=True)
class Sum(YoungExpr):
    args: tuple[YoungExpr, ...]
    kind = "sum"

    def __post_init__(self):
        args = tuple(self.args)
        if len(args) < 2:
            raise ParameterError("sum needs at least two operands")
        for i, a in enumerate(args):
            _check_expr(a, f"args[{i}]")
        object.__setattr__(self, "args", args)

    def _value(self, x):
        total = self.args[0]._value(x)
        for a in self.args[1:]:
            total = total + a._value(x)
        return total

    def _density(self, x):
        total = self.args[0]._density(x)
        for a in self.args[1:]:
            total = total + a._density(x)
        return total

    def in_A(self):
        return _combine_flags([a.in_A() for a in self.args])

    def slope(self):
        return math.fsum(a.slope() for a in self.args)

    def unbounded(self):
        return any(a.unbounded() for a in self.args)

    def constant_density(self):
        return all(a.constant_density() for a in self.args)

    def to_dict(self):
        return {"kind": "sum", "args": [a.to_dict() for a in self.args]}


@dataclass(frozen=True)
class Convex(YoungExpr):
    """sum_i t_i * args[i] with (t_i) a probability vector."""

    weights: WeightVector
    args: tuple[YoungExpr, ...]
    kind = "convex"

    def __post_init__(self):
        w = self.weights
        if not isinstance(w, WeightVector):
            w = WeightVector(tuple(w))
            object.__setattr__(self, "weights", w)
        args = tuple(self.args)
        if len(args) != len(w):
            raise ParameterError(f"{len(w)} weights for {len(args)} operands")
        for i, a in enumerate(args):
            _check_expr(a, f"args[{i}]")
        object.__setattr__(self, "args", args)

    def _active(self):
        return [(t, a) for t, a in zip(self.weights, self.args) if t > 0.0]

    def _value(self, x):
        total = 0.0
        for t, a in zip(self.weights, self.args):
            if t > 0.0:
                total = total + t * a._value(x)
        return total

    def _density(self, x):
        total = 0.0
        for t, a in zip(self.weights, self.args):
            if t > 0.0:
                total = total + t * a._density(x)
        return total

    def in_A(self):
        return _combine_flags([a.in_A() for _, a in self._active()])

    def slope(self):
        return math.fsum(t * a.slope() for t, a in self._active())

    def unbounded(self):
        return any(a.unbounded() for _, a in self._active())

    def constant_density(self):
        return all(a.constant_density() for _, a in self._active())

    def to_dict(self):
        return {
            "kind": "convex",
            "weights": list(self.weights.weights),
            "args": [a.to_dict() for a in self.args],
        }


# -- evaluation ---------------------------------------------------------------

def _as_array(x, *, strict: bool):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite")
    if strict and np.any(arr <= 0):
        raise ValueError("the density is defined on (0, inf) only; x must be > 0")
    if not strict and np.any(arr < 0):
        raise ValueError("x must be >= 0")
    return arr


def _unwrap(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def evaluate(expr: YoungExpr, x):
    """Phi(x) for scalar or array x >= 0.  Overflow shows up as +inf."""
    arr = _as_array(x, strict=False)
    with np.errstate(over="ignore"):
        out = expr._value(arr)
    return _unwrap(np.asarray(out, dtype=float) + np.zeros_like(arr), x)


def evaluate_flagged(expr: YoungExpr, x: float) -> tuple[float, bool]:
    """Scalar evaluation returning ``(value, overflowed)``."""
    value = evaluate(expr, x)
    return value, math.isinf(value)


def density(expr: YoungExpr, x):
    """Right derivative phi(x) for x > 0 via closed-form chain/product rules."""
    arr = _as_array(x, strict=True)
    with np.errstate(over="ignore"):
        out = expr._density(arr)
    return _unwrap(np.asarray(out, dtype=float) + np.zeros_like(arr), x)


def density_fd(f: Callable, x: float, h: float | None = None) -> float:
    """One-sided (right) difference quotient, the fallback for opaque callables."""
    if x <= 0:
        raise ValueError("x must be > 0")
    if h is None:
        h = max(1e-7, 1e-7 * x)
    return (float(f(x + h)) - float(f(x))) / h


def a_flag(expr: YoungExpr) -> bool | None:
    return expr.in_A()


def analytic_slope(expr: YoungExpr) -> float:
    return expr.slope()


def has_constant_density(expr: YoungExpr) -> bool:
    return expr.constant_density()


# -- construction -------------------------------------------------------------

def combine(kind: str, *parts, **params) -> YoungExpr:
    """Build a combinator node.

    >>> combine("compose", Power(0.5), Power(0.5))(16.0)
    2.0
    """
    if kind == "scale":
        (arg,) = parts
        return Scale(arg, params["c"])
    if kind == "power_of":
        (arg,) = parts
        return PowerOf(params["alpha"], arg)
    if kind == "compose":
        if len(parts) < 2:
            raise ParameterError("compose needs at least two operands")
        # right-nested: parts[0] o parts[1] o ... o parts[-1]
        expr = parts[-1]
        for outer in reversed(parts[:-1]):
            expr = Compose(outer, expr)
        return expr
    if kind == "sum":
        if not parts:
            raise ParameterError("empty operand list")
        return Sum(tuple(parts))
    if kind == "convex":
        if not parts:
            raise ParameterError("empty operand list")
        return Convex(WeightVector(tuple(params["weights"])), tuple(parts))
    raise ParameterError(f"unknown combinator {kind!r}")


_ATOMS = {"id": Id, "log1p": Log1p}


def from_dict(doc: Any, path: str = "$") -> YoungExpr:
    if not isinstance(doc, dict):
        raise DescriptorError("descriptor must be an object", path=path)
    kind = doc.get("kind")
    if kind is None:
        raise DescriptorError("missing field 'kind'", path=path)

    def need(name):
        if name not in doc:
            raise DescriptorError(f"{kind}: missing field {name!r}", path=path)
        return doc[name]

    def number(name):
        v = need(name)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise DescriptorError(f"{kind}: field {name!r} must be a number", path=f"{path}.{name}")
        return float(v)

    def sub(name):
        return from_dict(need(name), f"{path}.{name}")

    def sublist(name):
        v = need(name)
        if not isinstance(v, list):
            raise DescriptorError(f"{kind}: field {name!r} must be a list", path=f"{path}.{name}")
        return tuple(from_dict(a, f"{path}.{name}[{i}]") for i, a in enumerate(v))

    try:
        if kind in _ATOMS:
            return _ATOMS[kind]()
        if kind == "power":
            return Power(number("alpha"))
        if kind == "id_plus_soft":
            return IdPlusSoft(number("c"))
        if kind == "scale":
            return Scale(sub("arg"), number("c"))
        if kind == "power_of":
            return PowerOf(number("alpha"), sub("arg"))
        if kind == "compose":
            return Compose(sub("outer"), sub("inner"))
        if kind == "sum":
            return Sum(sublist("args"))
        if kind == "convex":
            w = need("weights")
            if not isinstance(w, list) or not all(
                isinstance(t, (int, float)) and not isinstance(t, bool) for t in w
            ):
                raise DescriptorError("convex: weights must be a list of numbers", path=f"{path}.weights")
            return Convex(WeightVector(tuple(w)), sublist("args"))
    except ParameterError as exc:
        raise DescriptorError(str(exc), path=path) from exc
    raise DescriptorError(f"unknown kind {kind!r}", path=path)


def parse_descriptor(text: str) -> YoungExpr:
    """Parse a JSON descriptor document into a tree."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"syntax error: {exc.msg}", position=exc.pos) from exc
    return from_dict(doc)


def serialize(expr: YoungExpr) -> str:
    return json.dumps(expr.to_dict(), sort_keys=True)


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    check: str
    witness: float | int
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self):
        return {
            "passed": self.passed,
            "violations": [
                {"check": v.check, "witness": v.witness, "detail": v.detail}
                for v in self.violations
            ],
        }


def default_grid(n: int = 61) -> np.ndarray:
    return np.logspace(-3.0, 3.0, n)


UNBOUNDED_PROBE = 1e12
UNBOUNDED_LEVEL = 1e3
_REL = 1e-9


def validate(expr: YoungExpr, grid: Sequence[float] | None = None) -> ValidationReport:
    """Grid-sampled necessary conditions for membership in the class.

    Checks Phi(0) = 0, positivity, strict increase, positive non-increasing
    density, secant-slope concavity and (analytically or heuristically)
    unboundedness.  The first witness of each failed check is recorded.
    """
    x = np.asarray(default_grid() if grid is None else grid, dtype=float)
    if x.ndim != 1 or x.size < 8:
        raise ValueError("grid needs at least 8 points")
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise ValueError("grid must be strictly positive and strictly increasing")
    if x[0] > 1e-3 or x[-1] < 1e3:
        raise ValueError("grid must span at least [1e-3, 1e3]")

    report = ValidationReport()

    def flag(check, witness, detail):
        if not any(v.check == check for v in report.violations):
            report.violations.append(Violation(check, float(witness), detail))

    zero = evaluate(expr, 0.0)
    if zero != 0.0:
        flag("zero_at_origin", 0.0, f"Phi(0) = {zero!r}")

    vals = evaluate(expr, x)
    dens = density(expr, x)
    for xi, v in zip(x, vals):
        if not (v > 0 and math.isfinite(v)):
            flag("positive", xi, f"Phi({xi:g}) = {v!r}")
    for i in np.nonzero(np.diff(vals) <= 0)[0]:
        flag("increasing", x[i + 1], f"Phi({x[i + 1]:g}) <= Phi({x[i]:g})")
    for xi, d in zip(x, dens):
        if not (d > 0 and math.isfinite(d)):
            flag("density_positive", xi, f"phi({xi:g}) = {d!r}")
    for i in range(len(x) - 1):
        if dens[i + 1] > dens[i] * (1 + _REL):
            flag("density_nonincreasing", x[i + 1], f"phi rises from {dens[i]!r} to {dens[i + 1]!r}")

    slopes = np.diff(vals) / np.diff(x)
    for i in range(len(slopes) - 1):
        if slopes[i + 1] > slopes[i] + _REL * abs(slopes[i]):
            flag("concave", x[i + 1], f"secant slope rises from {slopes[i]!r} to {slopes[i + 1]!r}")

    if not expr.unbounded():
        big = evaluate(expr, UNBOUNDED_PROBE)
        if not big > UNBOUNDED_LEVEL:
            flag("unbounded", UNBOUNDED_PROBE, f"Phi(1e12) = {big!r} <= 1e3")
    return report
