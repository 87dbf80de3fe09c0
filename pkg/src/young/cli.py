"""``young``: command-line access to every check in the package.

Exit status: 0 success, 1 a verified property failed (or a numeric verdict
was inconclusive), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import density as dens
from . import fixed_b, lpspace
from .funcrep import DescriptorError, WeightVector, evaluate_flagged, from_dict, parse_descriptor, serialize, validate
from .funcrep import density as phi_density
from .quad import QuadratureError
from .ymetric import density_level, metric_d, norm_mu

COMMANDS = (
    "eval", "density", "validate", "norm", "dist", "alevel", "scale-b", "hierarchy",
    "setdist", "order", "dense7", "dense8", "slope", "cmin", "lp-sandwich", "lp-tail",
    "lp-norm", "recover",
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: dict[str, Path] = field(default_factory=dict)
    quad_tol: float = 1e-10
    membership_tol: float = fixed_b.FIXED_RTOL
    out: Path | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not (self.quad_tol > 0 and self.membership_tol > 0):
            raise UsageError("tolerances must be positive")
        for name, path in self.inputs.items():
            if not path.is_file():
                raise UsageError(f"--{name}: no such file {str(path)!r}")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")


@dataclass
class Outcome:
    line: str
    summary: dict
    table: list[tuple] | None = None
    header: tuple[str, ...] = ()
    ok: bool = True


# -- file readers -------------------------------------------------------------

def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: syntax error: {exc.msg}", position=exc.pos) from exc


def load_fn(path: Path):
    return parse_descriptor(path.read_text())


def load_roster(path: Path, mtol: float) -> fixed_b.FnRoster:
    doc = _read_json(path)
    if isinstance(doc, list):
        doc = {"members": doc}
    if not isinstance(doc, dict) or "members" not in doc:
        raise DescriptorError(f"{path}: roster needs a 'members' list")
    members = [from_dict(m, f"$.members[{i}]") for i, m in enumerate(doc["members"])]
    b = doc.get("b")
    try:
        return fixed_b.FnRoster(doc.get("label", path.stem), None if b is None else float(b),
                                members, rtol=mtol)
    except ValueError as exc:
        raise DescriptorError(f"{path}: {exc}") from exc


def _pairs(doc, key, path):
    if isinstance(doc, dict):
        doc = doc.get(key)
    if not isinstance(doc, list):
        raise DescriptorError(f"{path}: expected a list of (label, number) pairs")
    out = []
    for i, item in enumerate(doc):
        if isinstance(item, dict):
            item = (item.get("label"), item.get("weight", item.get("value")))
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise DescriptorError(f"{path}: entry {i} is not a (label, number) pair")
        lab, num = item
        if isinstance(num, bool) or not isinstance(num, (int, float)):
            raise DescriptorError(f"{path}: entry {i} has a non-numeric value")
        out.append((str(lab), float(num)))
    return out


def load_space(path: Path) -> lpspace.DiscreteMeasureSpace:
    try:
        return lpspace.DiscreteMeasureSpace(tuple(_pairs(_read_json(path), "atoms", path)))
    except ValueError as exc:
        raise DescriptorError(str(exc)) from exc


def load_measurable(path: Path, space: lpspace.DiscreteMeasureSpace) -> lpspace.MeasurableFn:
    vals = dict(_pairs(_read_json(path), "values", path))
    missing = [lab for lab in space.labels if lab not in vals]
    extra = [lab for lab in vals if lab not in set(space.labels)]
    if missing or extra:
        raise DescriptorError(f"{path}: labels do not match the space (missing {missing}, unknown {extra})")
    return lpspace.MeasurableFn(tuple(vals[lab] for lab in space.labels))


# -- commands -----------------------------------------------------------------

def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.command}")


def _g(x):
    return format(x, ".12g")


def cmd_eval(args, cfg):
    _need(args, "fn", "x")
    phi = load_fn(args.fn)
    value, overflow = evaluate_flagged(phi, args.x)
    return Outcome(_g(value), {"x": args.x, "value": value, "overflow": overflow})


def cmd_density(args, cfg):
    _need(args, "fn", "x")
    value = phi_density(load_fn(args.fn), args.x)
    return Outcome(_g(value), {"x": args.x, "density": value})


def cmd_validate(args, cfg):
    _need(args, "fn")
    rep = validate(load_fn(args.fn))
    rows = [(v.check, v.witness, v.detail) for v in rep.violations]
    line = "passed" if rep.passed else "failed: " + ", ".join(v.check for v in rep.violations)
    return Outcome(line, rep.as_dict(), rows, ("check", "witness", "detail"), rep.passed)


def cmd_norm(args, cfg):
    _need(args, "fn")
    value = norm_mu(load_fn(args.fn), cfg.quad_tol)
    return Outcome(_g(value), {"norm": value})


def cmd_dist(args, cfg):
    _need(args, "fn", "fn2")
    value = metric_d(load_fn(args.fn), load_fn(args.fn2), cfg.quad_tol)
    return Outcome(_g(value), {"d": value})


def cmd_alevel(args, cfg):
    _need(args, "fn")
    v = density_level(load_fn(args.fn), cfg.quad_tol)
    shown = "inf" if math.isinf(v.a_value) else f"{v.a_value:.6f}"
    return Outcome(f"{shown} {v.membership}", v.as_dict(), ok=str(v.membership) != "unknown")


def cmd_scale_b(args, cfg):
    _need(args, "fn", "b")
    out = fixed_b.scale_to_b(load_fn(args.fn), args.b)
    return Outcome(serialize(out), json.loads(serialize(out)))


def _weights(args):
    if args.weights is None:
        return WeightVector((0.5, 0.5))
    try:
        return WeightVector(tuple(float(t) for t in args.weights.split(",")))
    except ValueError as exc:
        raise UsageError(f"--weights: {exc}") from exc


def cmd_hierarchy(args, cfg):
    _need(args, "roster", "n")
    seeds = load_roster(args.roster, cfg.membership_tol)
    if seeds.b is None:
        raise UsageError("the seed roster needs a 'b' header")
    level = fixed_b.gen_hierarchy(args.n, seeds.b, seeds, _weights(args))
    rows = [(i, m.in_A() is True, serialize(m)) for i, m in enumerate(level)]
    summary = {"label": level.label, "b": level.b, "size": len(level), "truncated": level.truncated,
               "a_members": sum(1 for r in rows if r[1]),
               "members": [m.to_dict() for m in level]}
    line = f"{len(level)} members ({summary['a_members']} in_A){' TRUNCATED' if level.truncated else ''}"
    return Outcome(line, summary, rows, ("index", "in_A", "descriptor"))


def cmd_setdist(args, cfg):
    _need(args, "roster", "roster2")
    F = load_roster(args.roster, cfg.membership_tol)
    G = load_roster(args.roster2, cfg.membership_tol)
    rep = fixed_b.set_distance(F, G, cfg.quad_tol)
    line = f"forward {_g(rep.forward)} backward {_g(rep.backward)} hausdorff {_g(rep.hausdorff)}"
    return Outcome(line, rep.as_dict(), rep.rows(), ("i", "j", "d"))


def cmd_order(args, cfg):
    _need(args, "fn", "fn2", "b", "b2")
    rep = fixed_b.order_witness(args.b, args.b2, load_fn(args.fn), load_fn(args.fn2))
    line = (f"sandwich {'pass' if rep.sandwich else 'FAIL'} raw ({_g(rep.raw_pair[0])}, "
            f"{_g(rep.raw_pair[1])}) printed-inequality {'holds' if rep.printed_inequality_holds else 'fails'}")
    return Outcome(line, rep.as_dict(), ok=rep.sandwich)


def _convergence(rep):
    line = f"final {_g(rep.final)} monotone_from {rep.monotone_from} verdict {rep.verdict}"
    return Outcome(line, rep.as_dict(), list(rep.pairs), ("n", "d_n"), rep.verdict == "converged")


def cmd_dense7(args, cfg):
    _need(args, "fn", "b")
    phi = load_fn(args.fn)
    target = fixed_b.scale_to_b(phi, args.b)
    rep = dens.verify_convergence(target, lambda n: dens.theorem7_seq(phi, args.b, n),
                                  args.nmax or 200, args.threshold, tol=cfg.quad_tol)
    return _convergence(rep)


def cmd_dense8(args, cfg):
    _need(args, "fn", "b")
    delta = load_fn(args.fn)
    rep = dens.verify_convergence(delta, lambda j: dens.theorem8_seq(delta, args.b, j),
                                  args.nmax or 200, args.threshold, tol=cfg.quad_tol)
    return _convergence(rep)


def cmd_slope(args, cfg):
    _need(args, "fn")
    r = lpspace.asymptotic_slope(load_fn(args.fn))
    return Outcome(f"{_g(r.value)} in_tilde={r.in_tilde}", r.as_dict())


def cmd_cmin(args, cfg):
    _need(args, "fn")
    phi = load_fn(args.fn)
    if lpspace.asymptotic_slope(phi).in_tilde is False:
        # no scaling constant exists: a negative answer, not a usage error
        return Outcome("empty (asymptotic slope 0)", {"c_inf": None, "attained": False}, ok=False)
    w = lpspace.min_scaling(phi)
    return Outcome(f"{_g(w.c_inf)} {'attained' if w.attained else 'not attained'}",
                   {"c_inf": w.c_inf, "attained": w.attained})


def _space_fn(args):
    _need(args, "space", "fn")
    space = load_space(args.space)
    return space, load_measurable(args.fn, space)


def cmd_lp_sandwich(args, cfg):
    space, f = _space_fn(args)
    rep = lpspace.sandwich_check(space, f, args.p, args.nmax or 1024)
    line = (f"lower {_g(rep.lower_witness)} sup {_g(rep.sup_roster)} bound {_g(rep.upper_corrected)} "
            f"verdict {'pass' if rep.passed else 'FAIL'}")
    if rep.printed_violations:
        line += f" (printed bound {_g(rep.upper_printed)} exceeded by {len(rep.printed_violations)} members)"
    return Outcome(line, rep.as_dict(), rep.lower_sequence, ("n", "witness_value"), rep.passed)


def cmd_lp_tail(args, cfg):
    _need(args, "eps")
    space, f = _space_fn(args)
    rep = lpspace.tail_identity(space, f, args.eps, args.nmax or 64)
    line = f"direct {_g(rep.direct)} inf {_g(rep.infimum)} verdict {'pass' if rep.passed else 'FAIL'}"
    return Outcome(line, rep.as_dict(), rep.witnesses, ("n", "witness_value"), rep.passed)


def cmd_lp_norm(args, cfg):
    space, f = _space_fn(args)
    rep = lpspace.norm_identity(space, f, args.p, args.nmax or 1000)
    line = f"norm {_g(rep.norm)} inf {_g(rep.infimum)} verdict {'pass' if rep.passed else 'FAIL'}"
    return Outcome(line, rep.as_dict(), rep.witnesses, ("n", "witness_value"), rep.passed)


def cmd_recover(args, cfg):
    _need(args, "y")
    space = load_space(args.space) if args.space is not None else None
    rep = lpspace.scalar_recover(args.y, args.nmax or 100, space, args.p)
    return Outcome(f"{_g(rep.value)} {'pass' if rep.within else 'FAIL'}", rep.as_dict(), ok=rep.within)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# -- driver -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="young", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--fn", type=Path, help="descriptor file (function-values file for lp-*)")
    p.add_argument("--fn2", type=Path)
    p.add_argument("--roster", type=Path)
    p.add_argument("--roster2", type=Path)
    p.add_argument("--space", type=Path)
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--b2", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--weights", help="comma-separated convex weights (hierarchy)")
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--mtol", type=float, default=fixed_b.FIXED_RTOL, help="fixed-point tolerance")
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def _render(outcome: Outcome, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if outcome.table is not None:
            w.writerow(outcome.header)
            w.writerows(outcome.table)
        else:
            w.writerow(sorted(outcome.summary))
            w.writerow([outcome.summary[k] for k in sorted(outcome.summary)])
        return buf.getvalue()
    return json.dumps(outcome.summary, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = {k: getattr(args, k) for k in ("fn", "fn2", "roster", "roster2", "space")
              if getattr(args, k) is not None}
    try:
        cfg = RunConfig(args.command, inputs, args.tol, args.mtol, args.out, args.format)
        outcome = HANDLERS[args.command](args, cfg)
    except (UsageError, DescriptorError, OSError) as exc:
        print(f"young: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, QuadratureError) as exc:
        print(f"young: numeric failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # precondition violations of the numeric operations
        print(f"young: error: {exc}", file=sys.stderr)
        return 2

    print(outcome.line)
    if cfg.out is not None:
        try:
            cfg.out.write_text(_render(outcome, cfg.format))
        except OSError as exc:
            print(f"young: error: {exc}", file=sys.stderr)
            return 2
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
