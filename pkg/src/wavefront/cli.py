"""Command-line entry point: emit, verify, member, bench.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import resource
import sys
import time
from pathlib import Path

from .algebra.modular import BudgetExceeded, UnluckyPrimeExhaustion
from .algebra.mpoly import MPoly
from .algebra.serialize import to_json_obj, to_text
from . import certificates, factory, golden, membership
from .factory import FactoryError, Unsupported
from .maps import InvalidType, SingularityType, build_map, generating_family, parse_point, parse_type

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

WHAT = ("theta", "R", "S", "A", "B", "B0", "delta", "r", "g", "H", "k0", "k1", "map", "family")
STRATEGIES = ("auto", "direct", "bareiss", "prs", "hybrid", "crt-primes", "evaluate-interpolate")
STRATEGY_ALIASES = {"modular": "hybrid"}


class UsageError(Exception):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WAVEFRONT_THREADS", "1")))
    except ValueError:
        raise UsageError("WAVEFRONT_THREADS must be an integer")


def _strategy(name: str) -> str:
    name = STRATEGY_ALIASES.get(name, name)
    if name not in STRATEGIES:
        raise UsageError(f"unknown strategy {name!r}")
    return name


def _modular_kw(strategy: str, checkpoint: str | None) -> dict:
    kw = {}
    if strategy in ("hybrid", "auto"):
        kw["workers"] = _threads()
        if checkpoint:
            kw["checkpoint"] = checkpoint
    return kw


# ----------------------------------------------------------------------------
# emit


def _emit_polys(t: SingularityType, what: str, args) -> list[MPoly]:
    if t.family in ("Morin", "CrossCap"):
        if what == "theta":
            return [factory.morin_theta(t, form=args.form)]
        if what == "S":
            return [factory.morin_S(t)]
        if what == "map":
            return list(build_map(t).components)
        raise UsageError(f"--what {what} is not available for {t.tag}")
    if what == "map":
        return list(build_map(t).components)
    if what == "family":
        return [generating_family(t).F]
    cs = factory.char_system(t)
    vv = ("v",) + cs.params
    if what in ("theta", "R", "S"):
        strategy = _strategy(args.strategy)
        if what == "S" and t.family != "E":
            return [factory.compute_S(cs, strategy, args.budget, **_modular_kw(strategy, args.checkpoint))]
        res = factory.build_theta(t, strategy=strategy, budget=args.budget, with_S=(what == "S"),
                                  **_modular_kw(strategy, args.checkpoint))
        return [{"theta": res.theta, "R": res.R, "S": res.S}[what]]
    if what in ("A", "B"):
        return [getattr(cs, what).to_mpoly(vv)]
    if what == "B0":
        if cs.B0 is None:
            raise UsageError("B0 exists for E types only")
        return [cs.B0.to_mpoly(vv)]
    if what == "delta":
        return [cs.delta]
    if what == "r":
        return [cs.r]
    if what == "g":
        if not cs.g:
            raise UsageError("the g-system exists for E types only")
        return list(cs.g)
    if what in ("H", "k0", "k1"):
        if t.family != "E" or t.k != 6:
            raise UsageError(f"{what} exists for E6 only")
        aux = factory.e6_aux()
        if what == "H":
            return [aux.H_derived if args.derived else aux.H]
        up = aux.k0_derived if what == "k0" and args.derived else (
            aux.k0 if what == "k0" else (aux.k1_derived if args.derived else aux.k1))
        return [up.to_mpoly(("u",) + up.params)]
    raise UsageError(f"unknown --what {what!r}")


def _format_polys(polys: list[MPoly], fmt: str) -> str:
    if fmt == "json":
        objs = [to_json_obj(p) for p in polys]
        return json.dumps(objs[0] if len(objs) == 1 else objs, separators=(",", ":")) + "\n"
    return "".join(to_text(p) + "\n" for p in polys)


def cmd_emit(args) -> int:
    t = parse_type(args.type)
    text = _format_polys(_emit_polys(t, args.what, args), args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ----------------------------------------------------------------------------
# verify


def _print_cert(c, fmt: str) -> None:
    if fmt == "json":
        print(c.to_json())
    else:
        res = c.residue if not isinstance(c.residue, (dict, list)) else json.dumps(c.residue)
        print(f"{c.verdict.upper():13s} {c.kind:20s} {c.name}  residue={res}")


def cmd_verify(args) -> int:
    if args.golden:
        directory = Path(args.golden_dir) if args.golden_dir else None
        if args.update:
            for p in golden.write_golden(directory):
                print(f"wrote {p}")
            return EXIT_OK
        results = golden.check_golden(directory, include_slow=not args.fast,
                                      only=parse_type(args.type).tag if args.type else None)
        bad = 0
        for r in results:
            if args.format == "json":
                print(json.dumps({"golden": r.entry.relpath, "ok": r.ok, "reason": r.reason}))
            else:
                print(f"{'PASS' if r.ok else 'FAIL':5s} {r.entry.relpath} {r.reason}".rstrip())
            bad += not r.ok
        return EXIT_FAIL if bad else EXIT_OK
    if not args.type:
        raise UsageError("verify needs --type (or --golden)")
    t = parse_type(args.type)
    random.seed(args.seed)
    certs = certificates.verify_suite(t, args.suite, full=args.full, strategy=_strategy(args.strategy),
                                      budget=args.budget)
    for c in certs:
        _print_cert(c, args.format)
    passed = sum(c.passed for c in certs)
    summary = {"type": t.tag, "suite": args.suite, "certificates": len(certs), "passed": passed}
    if args.format == "json":
        print(json.dumps({"summary": summary}))
    else:
        print(f"{t.tag} {args.suite}: {passed}/{len(certs)} certificates passed")
    return EXIT_OK if certs and passed == len(certs) else EXIT_FAIL


# ----------------------------------------------------------------------------
# member


def cmd_member(args) -> int:
    t = parse_type(args.type)
    try:
        x = parse_point(args.point)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --point: {exc}")
    v = membership.member(t, x)
    out = {"type": t.tag, "point": [str(c) for c in x], **v.to_dict()}
    if args.count:
        out["preimages"] = membership.preimage_count(t, x)
    print(json.dumps(out, default=str))
    return EXIT_OK


# ----------------------------------------------------------------------------
# bench


def _peak_mb() -> float:
    kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return round(kb / 1024, 1)


def bench(t: SingularityType, strategies: list[str], budget=None, what: str = "R",
          checkpoint: str | None = None) -> list[dict]:
    """One report per strategy on the type's (A, B) resultant (or Psc for ``what='S'``)."""
    cs = factory.char_system(t)
    reports = []
    for name in strategies:
        strategy = _strategy(name)
        rep = {"type": t.tag, "what": what, "strategy": name}
        t0 = time.perf_counter()
        try:
            fn = factory.compute_R if what == "R" else factory.compute_S
            f = fn(cs, strategy, budget, **_modular_kw(strategy, checkpoint))
        except BudgetExceeded as exc:
            rep.update(status="budget-exceeded", wall_time=round(time.perf_counter() - t0, 3),
                       detail=str(exc))
            reports.append(rep)
            continue
        wall = time.perf_counter() - t0
        text = to_text(f)
        status = "ok"
        if budget is not None and wall > float(budget):
            status = "budget-exceeded"
        rep.update(status=status, wall_time=round(wall, 3), peak_memory_mb=_peak_mb(),
                   terms=len(f), bytes=len(text.encode()),
                   checksum=hashlib.sha256(text.encode()).hexdigest())
        reports.append(rep)
    return reports


def cmd_bench(args) -> int:
    t = parse_type(args.type)
    if not t.is_ade:
        raise UsageError("bench needs an A, D or E type")
    random.seed(args.seed)
    names = [s.strip() for s in args.strategies.split(",") if s.strip()]
    if not names:
        raise UsageError("no strategies given")
    for n in names:
        _strategy(n)
    reports = bench(t, names, args.budget, args.what, args.checkpoint)
    for r in reports:
        print(json.dumps(r))
    sums = {r["checksum"] for r in reports if r.get("status") == "ok"}
    agree = len(sums) <= 1
    print(json.dumps({"summary": {"type": t.tag, "strategies": len(reports), "checksums_agree": agree}}))
    return EXIT_OK if agree else EXIT_FAIL


# ----------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wavefront", description="Exact discriminants of wave-front singularity maps.")
    p.add_argument("--json", action="store_true", help="report errors as JSON on stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--strategy", default="auto", help=f"one of {', '.join(STRATEGIES)} (or 'modular')")
        sp.add_argument("--budget", type=float, default=None, help="wall-clock budget in seconds")
        sp.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("emit", help="print a polynomial")
    e.add_argument("--type", required=True)
    e.add_argument("--what", required=True, choices=WHAT)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--output", "-o")
    e.add_argument("--form", choices=("default", "resultant"), default="default")
    e.add_argument("--derived", action="store_true", help="E6 k0/k1/H: the derived forms")
    e.add_argument("--checkpoint", help="directory for modular checkpoints")
    common(e)
    e.set_defaults(fn=cmd_emit)

    v = sub.add_parser("verify", help="run certificates or golden-file checks")
    v.add_argument("--type")
    v.add_argument("--suite", default="all", choices=certificates.SUITES)
    v.add_argument("--full", action="store_true", help="include checks needing the full E8 resultant")
    v.add_argument("--golden", action="store_true")
    v.add_argument("--golden-dir")
    v.add_argument("--update", action="store_true", help="with --golden: rewrite the golden files")
    v.add_argument("--fast", action="store_true", help="with --golden: skip slow derivations")
    v.add_argument("--format", choices=("text", "json"), default="text")
    common(v)
    v.set_defaults(fn=cmd_verify)

    m = sub.add_parser("member", help="decide image membership of a rational point")
    m.add_argument("--type", required=True)
    m.add_argument("--point", required=True, help='comma-separated rationals, e.g. "1/4,0,1"')
    m.add_argument("--count", action="store_true", help="also report the number of real preimages")
    m.set_defaults(fn=cmd_member)

    b = sub.add_parser("bench", help="compare resultant strategies")
    b.add_argument("--type", required=True)
    b.add_argument("--strategies", default="bareiss,prs,hybrid")
    b.add_argument("--what", choices=("R", "S"), default="R")
    b.add_argument("--checkpoint")
    common(b)
    b.set_defaults(fn=cmd_bench)
    return p


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand (emit, verify, member, bench)")
        return args.fn(args)
    except (UsageError, InvalidType, Unsupported) as exc:
        return _error(exc, EXIT_USAGE, as_json)
    except BudgetExceeded as exc:
        return _error(exc, EXIT_BUDGET, as_json)
    except (FactoryError, UnluckyPrimeExhaustion) as exc:
        return _error(exc, EXIT_FAIL, as_json)


def _error(exc: Exception, code: int, as_json: bool) -> int:
    if as_json:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code}) + "\n")
    else:
        sys.stderr.write(f"wavefront: {exc}\n")
    return code


def main() -> None:
    sys.exit(run())
