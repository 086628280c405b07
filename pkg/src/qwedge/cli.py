"""Command-line front end.

Configuration precedence: flags, then QWEDGE_N / QWEDGE_DEPTH /
QWEDGE_CLASSICAL / QWEDGE_FORMAT, then defaults (sl_infinity, depth 8,
quantum, text output).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass

from .errors import BoundaryViolation, ParseError, QWedgeError
from .fock import Basis
from .textio import (FORMATS, format_factor, format_partition, format_tensor_vector,
                     format_wedge_term, format_wedge_vector, parse_generator, parse_partition,
                     parse_tensor_vector, parse_wedge_vector)

ENV_PREFIX = "QWEDGE_"
DEFAULT_DEPTH = 8


@dataclass
class SessionConfig:
    n: int | None = None
    depth: int = DEFAULT_DEPTH
    classical: bool = False
    fmt: str = "text"

    @property
    def basis(self) -> Basis:
        return Basis(self.n)

    def validate(self):
        if self.n is not None and self.n < 2:
            raise ValueError("--n must be at least 2")
        if self.depth < (self.n or 1) + 2:
            raise ValueError(f"--depth must be at least n + 2 = {(self.n or 1) + 2}")
        if self.fmt not in FORMATS:
            raise ValueError(f"--format must be one of {', '.join(FORMATS)}")


def _env_bool(v: str) -> bool:
    return v.strip().lower() in ("1", "true", "yes", "on")


def resolve_config(args, environ=None) -> SessionConfig:
    env = os.environ if environ is None else environ
    cfg = SessionConfig()
    if env.get(ENV_PREFIX + "N"):
        cfg.n = int(env[ENV_PREFIX + "N"])
    if env.get(ENV_PREFIX + "DEPTH"):
        cfg.depth = int(env[ENV_PREFIX + "DEPTH"])
    if env.get(ENV_PREFIX + "CLASSICAL"):
        cfg.classical = _env_bool(env[ENV_PREFIX + "CLASSICAL"])
    if env.get(ENV_PREFIX + "FORMAT"):
        cfg.fmt = env[ENV_PREFIX + "FORMAT"]
    if getattr(args, "n", None) is not None:
        cfg.n = args.n
    if getattr(args, "depth", None) is not None:
        cfg.depth = args.depth
    if getattr(args, "classical", False):
        cfg.classical = True
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    cfg.validate()
    return cfg


_VAC = re.compile(r"^\s*vacuum(-?\d+)\s*$")


def _wedge_input(text: str, cfg: SessionConfig):
    from .wedge import WedgeVector, vacuum_wedge
    m = _VAC.match(text)
    if m:
        return WedgeVector.single(cfg.basis, vacuum_wedge(cfg.basis, int(m.group(1))))
    return parse_wedge_vector(text, cfg.basis)


def _maybe_q1(v, cfg):
    return v.eval_q1() if cfg.classical else v


# ---------------------------------------------------------------------------
# subcommands; each returns (lines, exit code)
# ---------------------------------------------------------------------------

def cmd_straighten(args, cfg):
    v = _maybe_q1(parse_wedge_vector(args.expr, cfg.basis), cfg)
    return [format_wedge_vector(v, cfg.fmt)], 0


def cmd_antisym(args, cfg):
    from .hecke import antisymmetrize
    x = parse_tensor_vector(args.expr, cfg.basis)
    width = args.width or x.depth
    y = _maybe_q1(antisymmetrize(x, width), cfg)
    return [format_tensor_vector(y, "z-form" if cfg.fmt == "text" else cfg.fmt)], 0


def cmd_act(args, cfg):
    from .uqaction import act_on_wedge
    g = parse_generator(args.gen)
    w = _wedge_input(args.expr, cfg)
    v = act_on_wedge(g, w, classical=cfg.classical)
    return [format_wedge_vector(_maybe_q1(v, cfg), cfg.fmt)], 0


def cmd_vertex(args, cfg):
    from .vertex import compose, matrix_coefficient, split_first
    w = _wedge_input(args.input, cfg)
    basis = cfg.basis
    lines = []
    if args.steps == 1:
        exp = split_first(w, cfg.depth)
        lines.append("first\tcoefficient\trest")
        for first, c, rest in exp.rows():
            if args.max_j is not None and not _within(basis, first, w, args.max_j):
                continue
            c = c.eval_q1() if cfg.classical else c
            fz = format_factor(basis, first, zform=basis.n is not None)
            lines.append(f"{fz}\t{c}\t{format_wedge_term(rest, basis, _rest_fmt(cfg))}")
        return lines, 0
    groups = compose(w, args.steps, cfg.depth)
    if args.target:
        target = _wedge_input(args.target, cfg)
        (t, _), = target.items()
        mc = _maybe_q1(matrix_coefficient(groups, t, basis), cfg)
        return [format_tensor_vector(mc, "z-form" if cfg.fmt == "text" else cfg.fmt)], 0
    lines.append("prefix\trest")
    for prefix in sorted(groups, reverse=True):
        pf = " (x) ".join(format_factor(basis, m, zform=basis.n is not None) for m in prefix)
        lines.append(f"{pf}\t{format_wedge_vector(_maybe_q1(groups[prefix], cfg), _rest_fmt(cfg))}")
    return lines, 0


def _rest_fmt(cfg):
    return "z-form" if cfg.fmt == "structured" else cfg.fmt


def _within(basis, first, w, max_j) -> bool:
    if basis.n is not None:
        return 1 <= basis.exponent(first) <= max_j
    (term, _), = list(w.items())[:1]
    return term.charge - first <= max_j


def cmd_kz(args, cfg):
    from .kz import slot_results
    n = cfg.n if cfg.n is not None else 2
    lines = []
    code = 0
    for i, ok, first in slot_results(n, args.N):
        lines.append(f"slot {i}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            code = 1
            key, poly = first
            lines.append(f"  letters {key}: {poly}")
    return lines, code


def cmd_young(args, cfg):
    from .wedge import wedge_from_young, young_from_wedge
    basis = cfg.basis
    if args.from_wedge:
        v = parse_wedge_vector(args.from_wedge, basis)
        if len(v) != 1:
            raise ValueError("expected a single normally ordered wedge")
        (w, _), = v.items()
        parts, charge = young_from_wedge(w)
        if cfg.fmt == "structured":
            return [f"partition\t{format_partition(parts)}\tcharge\t{charge}"], 0
        return [format_partition(parts)], 0
    parts = parse_partition(args.from_partition)
    w = wedge_from_young(parts, basis.vacuum_start(args.klass))
    return [format_wedge_term(w, basis, cfg.fmt if cfg.fmt != "structured" else "z-form")], 0


def cmd_weight(args, cfg):
    from .wedge import weight
    v = _wedge_input(args.expr, cfg)
    results = {tuple(sorted(weight(cfg.basis, w).total.items())) for w in v}
    if len(results) != 1:
        raise ValueError("input is not a weight vector")
    w0 = next(iter(v))
    wt = weight(cfg.basis, w0)
    lines = ["H " + " ".join(f"{i}:{h}" for i, h in sorted(wt.total.items()))]
    if cfg.basis.n is not None:
        lines.append("graded " + " ".join(f"{i},{d}:{h}" for (i, d), h in sorted(wt.graded.items())))
    lines.append(f"level {wt.level()}")
    return lines, 0


def cmd_probe(args, cfg):
    from .wedge import stability_probe
    v = _wedge_input(args.input, cfg)
    (w, _), = list(v.items())[:1]
    rep = stability_probe(cfg.basis, w, args.L1, args.L2, classical=cfg.classical)
    return rep.lines(), 0


def cmd_selftest(args, cfg):
    from .acceptance import run_all
    results = run_all(quick=args.quick, archive_dir=args.archive, only=args.only)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results if r.gating)
    return lines, 0 if ok else 1


# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=argparse.SUPPRESS, help="rank n (omit for sl_infinity)")
    p.add_argument("--depth", type=int, default=argparse.SUPPRESS, help="truncation depth L")
    p.add_argument("--classical", action="store_true", default=argparse.SUPPRESS,
                   help="evaluate at q = 1")
    p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qwedge", parents=[common],
                                     description="Exact q-wedge computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("straighten", parents=[common], help="normal form of a wedge expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("antisym", parents=[common], help="truncated q-antisymmetrization of a tensor")
    p.add_argument("expr")
    p.add_argument("--width", type=int)
    p.set_defaults(func=cmd_antisym)

    p = sub.add_parser("act", parents=[common], help="apply a generator to a wedge")
    p.add_argument("gen")
    p.add_argument("expr")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("vertex", parents=[common], help="split off first factors")
    p.add_argument("--input", default="vacuum0")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--max-j", type=int, dest="max_j")
    p.add_argument("--target")
    p.set_defaults(func=cmd_vertex)

    for name in ("kz", "kz-check"):
        p = sub.add_parser(name, parents=[common], help="verify the KZ system for the wedge polynomial")
        p.add_argument("--N", type=int, required=True)
        p.set_defaults(func=cmd_kz)

    p = sub.add_parser("young", parents=[common], help="Young diagram correspondence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--from-wedge", dest="from_wedge")
    g.add_argument("--from-partition", dest="from_partition")
    p.add_argument("--class", dest="klass", type=int, default=0)
    p.set_defaults(func=cmd_young)

    p = sub.add_parser("weight", parents=[common], help="H_i eigenvalues of a wedge")
    p.add_argument("expr")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("probe", parents=[common], help="compare truncations at two depths")
    p.add_argument("--input", default="vacuum0")
    p.add_argument("--L1", type=int, required=True)
    p.add_argument("--L2", type=int, required=True)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="fewer random trials")
    p.add_argument("--only", type=int, nargs="+", metavar="K", help="run only these criteria")
    p.add_argument("--archive", metavar="DIR", help="write the probe report into DIR")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, environ=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args, environ)
        lines, code = args.func(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundaryViolation as exc:
        hint = f" (try --depth {exc.suggested_depth})" if exc.suggested_depth else ""
        print(f"error: {exc}{hint}", file=sys.stderr)
        return 2
    except (QWedgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
