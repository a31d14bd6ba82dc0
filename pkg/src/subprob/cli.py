"""Command line front end.

Exit codes: 0 ok, 1 violations (or failed checks), 2 input errors.

    subprob validate FILE
    subprob derive-sp FILE [--dot PATH] [--epsilon Q] [--format text|dot]
    subprob simulate FILE TERM STATE [--seed N --sessions N --trials N --delta X --csv PATH --format text|csv]
    subprob check-morphism SRC DST MORPHISM
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from .category import (
    IllDefinedMorphismError,
    derive_sp_morphism,
    load_morphism,
    validate_sep_morphism,
    validate_sp_morphism,
)
from .choice import SimulationError, SimulationPolicy, recover_subset
from .experiments import factors, format_term, parse_term, symbols
from .intervals import ONE, DomainError, ParseError, format_set, interval, parse_rational
from .properties import class_table, derive_sp_general, to_dot, validate_sp
from .sep import SepSystem, load_sep, validate_sep

__all__ = ["RunConfig", "main", "build_parser"]


@dataclass
class RunConfig:
    command: str
    paths: List[str]
    seed: int = 0
    sessions: int = 200
    trials: int = 100_000
    delta: float = 0.01
    epsilon: Optional[str] = None
    output: Optional[str] = None
    fmt: str = "text"


class InputError(Exception):
    pass


def _load(path: str) -> SepSystem:
    try:
        return load_sep(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_validate(path: str, out) -> int:
    sys_ = _load(path)
    violations = validate_sep(sys_)
    if not violations:
        print(f"{path}: OK ({len(sys_.states)} states, {len(sys_.base)} base experiments)", file=out)
        return 0
    print(f"{path}: {len(violations)} violation(s)", file=out)
    for v in violations:
        print(f"  {v}", file=out)
    return 1


def cmd_derive_sp(path: str, out, dot_out: Optional[str] = None, epsilon: Optional[str] = None,
                  fmt: str = "text") -> int:
    sys_ = _load(path)
    violations = validate_sep(sys_)
    if violations:
        print(f"{path}: not a valid SEP", file=out)
        for v in violations:
            print(f"  {v}", file=out)
        return 1
    A = ONE
    if epsilon is not None:
        try:
            eps = parse_rational(epsilon)
            A = interval(1 - eps, 1)
        except (ParseError, DomainError) as exc:
            raise InputError(f"--epsilon: {exc}") from None
    sp = derive_sp_general(sys_, A)
    if fmt == "dot":
        out.write(to_dot(sp.lattice))
        return 0
    sp_violations = validate_sp(sp)
    print(f"certainty set A = {format_set(A)}", file=out)
    print(f"{len(sp.lattice)} properties", file=out)
    print(class_table(sp), file=out)
    for w in sp.warnings:
        print(f"warning: {w}", file=out)
    if dot_out:
        Path(dot_out).write_text(to_dot(sp.lattice))
    if sp_violations:
        print(f"SP axioms: {len(sp_violations)} violation(s)", file=out)
        for v in sp_violations:
            print(f"  {v}", file=out)
        return 1
    print("SP axioms: OK", file=out)
    return 0


def cmd_simulate(path: str, term: str, state: str, cfg: RunConfig, out) -> int:
    sys_ = _load(path)
    try:
        t = parse_term(term)
    except ParseError as exc:
        raise InputError(f"term: {exc}") from None
    unknown = symbols(t) - set(sys_.base)
    if unknown:
        raise InputError(f"unknown experiment(s): {', '.join(sorted(unknown))}")
    if state not in sys_.states:
        raise InputError(f"unknown state {state!r}")
    if cfg.sessions < 1 or cfg.trials < 1 or cfg.delta <= 0:
        raise InputError("sessions and trials must be >= 1 and delta > 0")
    policy = SimulationPolicy(seed=cfg.seed)
    try:
        report = recover_subset(sys_, factors(t), state, policy, cfg.sessions, cfg.trials, cfg.delta)
    except SimulationError as exc:
        print(f"error: {exc}", file=out)
        return 1
    if cfg.output:
        Path(cfg.output).write_text(report.to_csv())
    if cfg.fmt == "csv":
        out.write(report.to_csv())
    else:
        print(f"experiment: {format_term(t)}  state: {state}  seed: {cfg.seed}  trials: {cfg.trials}", file=out)
        print(report.summary(), file=out)
    return 0 if (report.soundness and report.coverage) else 1


def cmd_check_morphism(src_path: str, dst_path: str, morph_path: str, out) -> int:
    src, dst = _load(src_path), _load(dst_path)
    try:
        phi = load_morphism(morph_path)
    except OSError as exc:
        raise InputError(f"{morph_path}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise InputError(f"{morph_path}: {exc}") from None
    for label, s in (("source", src), ("target", dst)):
        vs = validate_sep(s)
        if vs:
            raise InputError(f"{label} system is not a valid SEP: " + "; ".join(map(str, vs)))
    sep_violations = validate_sep_morphism(src, dst, phi)
    print(f"SEP morphism: {'OK' if not sep_violations else f'{len(sep_violations)} violation(s)'}", file=out)
    for v in sep_violations:
        print(f"  {v}", file=out)
    if sep_violations:
        return 1
    try:
        psi = derive_sp_morphism(phi, src, dst)
    except IllDefinedMorphismError as exc:
        print(f"SP morphism: ill-defined: {exc}", file=out)
        return 1
    from .properties import derive_sp

    sp_violations = validate_sp_morphism(derive_sp(src), derive_sp(dst), psi)
    print(f"SP morphism: {'OK' if not sp_violations else f'{len(sp_violations)} violation(s)'}", file=out)
    for v in sp_violations:
        print(f"  {v}", file=out)
    for a, b in psi.n.items():
        print(f"  n({a}) = {b}", file=out)
    return 0 if not sp_violations else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subprob", description="Subset-probability calculus tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("path")

    p = sub.add_parser("derive-sp", help="derive the state property system")
    p.add_argument("path")
    p.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as DOT")
    p.add_argument("--epsilon", metavar="Q", help="use A = [1 - Q, 1] instead of {1}")
    p.add_argument("--format", choices=["text", "dot"], default="text")

    p = sub.add_parser("simulate", help="recover a subset probability by simulation")
    p.add_argument("path")
    p.add_argument("term")
    p.add_argument("state")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sessions", type=int, default=200)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--format", choices=["text", "csv"], default="text")

    p = sub.add_parser("check-morphism", help="check a SEP morphism and its related SP morphism")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("morphism")
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.path, out)
        if args.command == "derive-sp":
            return cmd_derive_sp(args.path, out, args.dot, args.epsilon, args.format)
        if args.command == "simulate":
            cfg = RunConfig("simulate", [args.path], seed=args.seed, sessions=args.sessions,
                            trials=args.trials, delta=args.delta, output=args.csv, fmt=args.format)
            return cmd_simulate(args.path, args.term, args.state, cfg, out)
        if args.command == "check-morphism":
            return cmd_check_morphism(args.src, args.dst, args.morphism, out)
    except InputError as exc:
        print(f"error: {exc}", file=out)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
