"""Command-line front end for the solvable Hall subgroup toolkit.

Subcommands:

  order       exact factored group order for a descriptor
  check       arithmetic-criteria verdict with a cited trace
  verify      brute-force oracle certificate (Found witness / Exhausted)
  pairs       per-pair verdicts and certificates plus the pairwise combination
  crosscheck  engine-vs-oracle sweep over a descriptor grid

Exit codes: 0 decided/consistent, 1 usage or construction error, 2 unknown or
inconclusive, 3 engine/oracle mismatch. ``--json`` emits a schema-stable
object with fields {schema_version, request, engine, oracle, pairs,
consistency, timings}. Caps and budgets resolve as flags over config-file
entries over the HALL_MAX_ENUM environment variable over built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .arith import PrimeSet, is_prime
from .catalog import (
    DescriptorError,
    GroupDescriptor,
    group_order,
    parse_descriptor,
    prime_spectrum,
)
from .constructions import UnsupportedConstructionError, build_group
from .criteria import (
    Decision,
    Verdict,
    combine_pairwise,
    decide_pair,
    decide_solvable_hall,
)
from .oracle import (
    DEFAULT_MAX_TUPLES,
    CertKind,
    EnumerationCapError,
    HallCertificate,
    InconclusiveError,
    Theorem1ViolationError,
    hall_search,
    solvable_hall_exists,
    theorem1_check,
)
from .permgrp import format_cycles

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2
EXIT_MISMATCH = 3

CONSISTENT = "Consistent"
MISMATCH = "Mismatch"
NOT_COMPARABLE = "NotComparable"


class UsageError(Exception):
    pass


@dataclass
class Settings:
    budget_ms: int | None
    threads: int
    max_enum: int


@dataclass
class CheckRequest:
    command: str
    descriptor: GroupDescriptor
    pi: PrimeSet | None
    settings: Settings


@dataclass
class CheckReport:
    request: CheckRequest
    engine_verdict: Verdict | None = None
    oracle_certificate: HallCertificate | None = None
    pair_table: list | None = None
    combined: Verdict | None = None
    consistency: str = NOT_COMPARABLE
    timings: dict | None = None


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_pi(text: str) -> PrimeSet:
    try:
        pi = PrimeSet.parse(text)
    except ValueError as err:
        raise UsageError(str(err))
    if len(pi) == 0:
        raise UsageError("pi must contain at least one prime")
    return pi


def _parse_descriptor(text: str) -> GroupDescriptor:
    try:
        return parse_descriptor(text)
    except DescriptorError as err:
        raise UsageError(str(err))


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo = hi = text
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B")
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return a, b


def _load_config(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, val = line.partition("=")
                if not sep:
                    raise UsageError(f"bad config line {line!r}; expected key=value")
                values[key.strip()] = val.strip()
    except OSError as err:
        raise UsageError(f"cannot read config: {err}")
    return values


def _settings(args) -> Settings:
    config = _load_config(args.config) if getattr(args, "config", None) else {}

    def pick(flag, key, env=None, default=None):
        if flag is not None:
            return flag
        if key in config:
            try:
                return int(config[key])
            except ValueError:
                raise UsageError(f"config {key} must be an integer")
        if env is not None and env in os.environ:
            try:
                return int(os.environ[env])
            except ValueError:
                raise UsageError(f"{env} must be an integer")
        return default

    return Settings(
        budget_ms=pick(getattr(args, "budget_ms", None), "budget_ms"),
        threads=pick(getattr(args, "threads", None), "threads", default=1),
        max_enum=pick(
            getattr(args, "max_enum", None),
            "max_enum",
            env="HALL_MAX_ENUM",
            default=DEFAULT_MAX_TUPLES,
        ),
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="pihall", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON schema")
    common.add_argument("--config", metavar="FILE", help="key=value overrides")
    knobs = argparse.ArgumentParser(add_help=False)
    knobs.add_argument("--budget-ms", type=int, default=None, metavar="N")
    knobs.add_argument("--threads", type=int, default=None, metavar="N",
                       help="oracle worker processes (0 = auto)")
    knobs.add_argument("--max-enum", type=int, default=None, metavar="N",
                       help="tuple-space cap (HALL_MAX_ENUM)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="factored group order")
    p.add_argument("descriptor")
    p.set_defaults(handler=_handle_order)

    p = sub.add_parser("check", parents=[common], help="engine verdict")
    p.add_argument("descriptor")
    p.add_argument("--pi", required=True)
    p.set_defaults(handler=_handle_check)

    p = sub.add_parser("verify", parents=[common, knobs], help="oracle certificate")
    p.add_argument("descriptor")
    p.add_argument("--pi", required=True)
    p.set_defaults(handler=_handle_verify)

    p = sub.add_parser("pairs", parents=[common, knobs], help="pairwise table")
    p.add_argument("descriptor")
    p.add_argument("--pi", required=True)
    p.set_defaults(handler=_handle_pairs)

    p = sub.add_parser("crosscheck", parents=[common, knobs], help="grid sweep")
    p.add_argument("--family", required=True, choices=["PSL2", "Sym", "Alt"])
    p.add_argument("--q", metavar="A..B")
    p.add_argument("--n", metavar="A..B")
    p.add_argument("--pi-size", type=int, default=None, metavar="K")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(handler=_handle_crosscheck)

    return parser


# ---------------------------------------------------------------------------
# rendering


def _verdict_json(v: Verdict) -> dict:
    return {
        "decision": v.decision.value,
        "solvable_note": v.solvable_note.value,
        "conjugacy_note": v.conjugacy_note.value,
        "reason": v.reason or None,
        "sigma": v.sigma.render(),
        "trace": [
            {"rule": f.rule_id, "citation": f.citation, "bindings": dict(f.bindings)}
            for f in v.trace
        ],
    }


def _cert_json(c: HallCertificate) -> dict:
    return {
        "kind": c.kind.value,
        "pi": c.pi.render(),
        "target_order": c.target_order,
        "witness_order": c.witness_order if c.kind is CertKind.FOUND else None,
        "witness_generators": (
            [format_cycles(p) for p in c.witness_generators]
            if c.witness_generators is not None
            else None
        ),
        "solvable": c.solvable,
        "tuples_examined": c.tuples_examined,
        "pruned": c.pruned,
    }


def _request_json(req: CheckRequest, **extra) -> dict:
    body = {
        "command": req.command,
        "descriptor": req.descriptor.render() if req.descriptor else None,
        "pi": req.pi.render() if req.pi is not None else None,
        "budget_ms": req.settings.budget_ms,
        "threads": req.settings.threads,
        "max_enum": req.settings.max_enum,
    }
    body.update(extra)
    return body


def _report_json(report: CheckReport, **request_extra) -> dict:
    pairs = None
    if report.pair_table is not None:
        pairs = {
            "cells": report.pair_table,
            "combined": (
                _verdict_json(report.combined) if report.combined is not None else None
            ),
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "request": _request_json(report.request, **request_extra),
        "engine": (
            _verdict_json(report.engine_verdict)
            if report.engine_verdict is not None
            else None
        ),
        "oracle": (
            _cert_json(report.oracle_certificate)
            if report.oracle_certificate is not None
            else None
        ),
        "pairs": pairs,
        "consistency": report.consistency,
        "timings": report.timings or {},
    }


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _verdict_lines(v: Verdict, indent: str = "") -> list[str]:
    lines = [f"{indent}decision: {v.decision.value}"]
    if v.decision is Decision.YES:
        lines.append(f"{indent}solvability: {v.solvable_note.value}")
        lines.append(f"{indent}conjugacy: {v.conjugacy_note.value}")
    if v.reason:
        lines.append(f"{indent}reason: {v.reason}")
    lines.append(f"{indent}trace:")
    for f in v.trace:
        lines.append(f"{indent}  [{f.rule_id}] {f.citation}")
        if f.bindings:
            rendered = ", ".join(f"{k}={val}" for k, val in f.bindings)
            lines.append(f"{indent}      {rendered}")
    return lines


def _cert_lines(c: HallCertificate, indent: str = "") -> list[str]:
    if c.kind is CertKind.FOUND:
        lines = [
            f"{indent}oracle: Found  order={c.witness_order}  solvable={c.solvable}"
        ]
        for p in c.witness_generators:
            lines.append(f"{indent}  gen {format_cycles(p)}")
    else:
        lines = [f"{indent}oracle: Exhausted  target_order={c.target_order}"]
    lines.append(
        f"{indent}counts: examined={c.tuples_examined} pruned={c.pruned}"
    )
    return lines


# ---------------------------------------------------------------------------
# programmatic commands (argparse handlers wrap these)


def cmd_order(desc: str) -> dict:
    d = _parse_descriptor(desc)
    info = group_order(d)
    factored = " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in info.order.factors
    )
    generic = " * ".join(
        f"({label})" if "-" in label or "+" in label else label
        for label, _ in info.generic_factors
    )
    if info.divisor != 1:
        generic = f"({generic}) / {info.divisor}"
    return {
        "descriptor": d.render(),
        "order": info.order.value,
        "factored": factored,
        "generic": generic,
        "spectrum": prime_spectrum(d).render(),
    }


def cmd_check(desc: str, pi: str, settings: Settings | None = None) -> CheckReport:
    settings = settings or Settings(None, 1, DEFAULT_MAX_TUPLES)
    d = _parse_descriptor(desc)
    request = CheckRequest("check", d, _parse_pi(pi), settings)
    t0 = time.monotonic()
    verdict = decide_solvable_hall(d, request.pi)
    ms = int((time.monotonic() - t0) * 1000)
    return CheckReport(
        request, engine_verdict=verdict, timings={"engine_ms": ms, "total_ms": ms}
    )


def cmd_verify(desc: str, pi: str, settings: Settings | None = None) -> CheckReport:
    settings = settings or Settings(None, 1, DEFAULT_MAX_TUPLES)
    d = _parse_descriptor(desc)
    request = CheckRequest("verify", d, _parse_pi(pi), settings)
    g = build_group(d)
    t0 = time.monotonic()
    cert = hall_search(
        g,
        request.pi,
        budget_ms=settings.budget_ms,
        threads=settings.threads,
        max_tuples=settings.max_enum,
    )
    ms = int((time.monotonic() - t0) * 1000)
    return CheckReport(
        request,
        oracle_certificate=cert,
        timings={"oracle_ms": ms, "total_ms": ms},
    )


def _pair_consistency(engine: Verdict, cert: HallCertificate | None) -> str:
    if cert is None or engine.decision is Decision.UNKNOWN:
        return NOT_COMPARABLE
    truth = cert.kind is CertKind.FOUND and bool(cert.solvable)
    agrees = (engine.decision is Decision.YES) == truth
    return CONSISTENT if agrees else MISMATCH


def cmd_pairs(desc: str, pi: str, settings: Settings | None = None) -> CheckReport:
    settings = settings or Settings(None, 1, DEFAULT_MAX_TUPLES)
    d = _parse_descriptor(desc)
    request = CheckRequest("pairs", d, _parse_pi(pi), settings)
    sigma = sorted(request.pi & prime_spectrum(d))
    if len(sigma) < 2:
        raise UsageError("pairs needs at least two primes of pi dividing the order")
    try:
        g = build_group(d)
    except UnsupportedConstructionError:
        g = None
    t0 = time.monotonic()
    table = []
    consistency = NOT_COMPARABLE
    for r, s in combinations(sigma, 2):
        verdict = decide_pair(d, r, s)
        cert = None
        if g is not None:
            cert = hall_search(
                g,
                PrimeSet((r, s)),
                budget_ms=settings.budget_ms,
                threads=settings.threads,
                max_tuples=settings.max_enum,
            )
        cell_consistency = _pair_consistency(verdict, cert)
        if cell_consistency is MISMATCH:
            consistency = MISMATCH
        elif cell_consistency is CONSISTENT and consistency is not MISMATCH:
            consistency = CONSISTENT
        table.append(
            {
                "pair": f"{r},{s}",
                "engine": _verdict_json(verdict),
                "oracle": _cert_json(cert) if cert is not None else None,
                "consistency": cell_consistency,
            }
        )
    combined = combine_pairwise(d, request.pi)
    ms = int((time.monotonic() - t0) * 1000)
    return CheckReport(
        request,
        pair_table=table,
        combined=combined,
        consistency=consistency,
        timings={"total_ms": ms},
    )


# ---------------------------------------------------------------------------
# handlers


def _handle_order(args) -> int:
    info = cmd_order(args.descriptor)
    if args.json:
        settings = _settings(args)
        request = CheckRequest("order", _parse_descriptor(args.descriptor), None, settings)
        payload = _report_json(CheckReport(request, timings={}), catalog=info)
        _print_json(payload)
    else:
        print(f"{info['descriptor']}  |S| = {info['order']}")
        print(f"  = {info['factored']}")
        print(f"  = {info['generic']}")
        print(f"  spectrum: {info['spectrum']}")
    return EXIT_OK


def _handle_check(args) -> int:
    report = cmd_check(args.descriptor, args.pi, _settings(args))
    verdict = report.engine_verdict
    if args.json:
        _print_json(_report_json(report))
    else:
        print(f"{report.request.descriptor.render()}  pi={report.request.pi.render()}")
        print("\n".join(_verdict_lines(verdict)))
    return EXIT_UNKNOWN if verdict.decision is Decision.UNKNOWN else EXIT_OK


def _handle_verify(args) -> int:
    settings = _settings(args)
    try:
        report = cmd_verify(args.descriptor, args.pi, settings)
    except InconclusiveError as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (UnsupportedConstructionError, EnumerationCapError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    cert = report.oracle_certificate
    if args.json:
        _print_json(_report_json(report))
    else:
        print(f"{report.request.descriptor.render()}  pi={report.request.pi.render()}")
        print("\n".join(_cert_lines(cert)))
    return EXIT_OK


def _handle_pairs(args) -> int:
    settings = _settings(args)
    try:
        report = cmd_pairs(args.descriptor, args.pi, settings)
    except InconclusiveError as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_UNKNOWN
    except EnumerationCapError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _print_json(_report_json(report))
    else:
        print(f"{report.request.descriptor.render()}  pi={report.request.pi.render()}")
        for cell in report.pair_table:
            engine = cell["engine"]
            line = f"  {{{cell['pair']}}}: engine={engine['decision']}"
            if engine["reason"]:
                line += f" ({engine['reason']})"
            oracle = cell["oracle"]
            if oracle is not None:
                if oracle["kind"] == "Found":
                    line += (
                        f"  oracle=Found order={oracle['witness_order']}"
                        f" solvable={oracle['solvable']}"
                    )
                else:
                    line += "  oracle=Exhausted"
            line += f"  [{cell['consistency']}]"
            print(line)
        print(f"combined (pairwise criterion): {report.combined.decision.value}")
    if report.consistency is MISMATCH:
        return EXIT_MISMATCH
    if report.combined.decision is Decision.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def _grid(args) -> list[GroupDescriptor]:
    if args.family == "PSL2":
        if args.n:
            raise UsageError("--n does not apply to PSL2; use --q")
        lo, hi = _parse_range(args.q) if args.q else (5, 41)
        return [
            parse_descriptor(f"PSL+:2:{q}") for q in range(lo, hi + 1) if is_prime(q)
        ]
    if args.q:
        raise UsageError("--q applies only to PSL2; use --n")
    if args.family == "Sym":
        lo, hi = _parse_range(args.n) if args.n else (3, 8)
    else:
        lo, hi = _parse_range(args.n) if args.n else (5, 8)
    return [parse_descriptor(f"{args.family}:{n}") for n in range(lo, hi + 1)]


def _handle_crosscheck(args) -> int:
    settings = _settings(args)
    fmt = "json" if args.json else args.format
    descriptors = _grid(args)
    sizes = (
        [args.pi_size]
        if args.pi_size is not None
        else [2, 3, 4]
    )
    kwargs = {
        "budget_ms": settings.budget_ms,
        "threads": settings.threads,
        "max_tuples": settings.max_enum,
    }
    t0 = time.monotonic()
    cells = []
    mismatches = violations = inconclusive = unknown_cells = 0
    for d in descriptors:
        g = build_group(d)
        primes = sorted(prime_spectrum(d))
        for k in sizes:
            for sub in combinations(primes, k):
                pi = PrimeSet(sub)
                engine = decide_solvable_hall(d, pi)
                if engine.decision is Decision.UNKNOWN:
                    unknown_cells += 1
                theorem1 = "holds"
                try:
                    rep = theorem1_check(g, pi, **kwargs)
                    exists = rep.solvable_exists
                except Theorem1ViolationError as err:
                    violations += 1
                    theorem1 = "VIOLATED"
                    exists = err.report.solvable_exists
                except (InconclusiveError, EnumerationCapError):
                    inconclusive += 1
                    cells.append(
                        {
                            "descriptor": d.render(),
                            "pi": pi.render(),
                            "engine": engine.decision.value,
                            "oracle": "Inconclusive",
                            "consistency": NOT_COMPARABLE,
                            "theorem1": "inconclusive",
                        }
                    )
                    continue
                if engine.decision is Decision.UNKNOWN:
                    consistency = NOT_COMPARABLE
                elif (engine.decision is Decision.YES) == exists:
                    consistency = CONSISTENT
                else:
                    consistency = MISMATCH
                    mismatches += 1
                cells.append(
                    {
                        "descriptor": d.render(),
                        "pi": pi.render(),
                        "engine": engine.decision.value,
                        "oracle": "SolvableHall" if exists else "NoSolvableHall",
                        "consistency": consistency,
                        "theorem1": theorem1,
                    }
                )
    ms = int((time.monotonic() - t0) * 1000)
    summary = {
        "cells": len(cells),
        "mismatches": mismatches,
        "violations": violations,
        "inconclusive": inconclusive,
        "unknown": unknown_cells,
        "unknown_rate": round(unknown_cells / len(cells), 4) if cells else 0.0,
    }

    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "request": {
                "command": "crosscheck",
                "family": args.family,
                "range": args.q or args.n,
                "pi_size": args.pi_size,
                "budget_ms": settings.budget_ms,
                "threads": settings.threads,
                "max_enum": settings.max_enum,
            },
            "engine": None,
            "oracle": None,
            "pairs": {"cells": cells, "summary": summary},
            "consistency": MISMATCH if mismatches or violations else CONSISTENT,
            "timings": {"total_ms": ms},
        }
        _print_json(payload)
    elif fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(
            out,
            fieldnames=["descriptor", "pi", "engine", "oracle", "consistency", "theorem1"],
        )
        writer.writeheader()
        writer.writerows(cells)
        sys.stdout.write(out.getvalue())
    else:
        width = max((len(c["descriptor"]) for c in cells), default=10)
        for c in cells:
            print(
                f"{c['descriptor']:{width}s}  {c['pi']:12s} "
                f"engine={c['engine']:8s} oracle={c['oracle']:14s} "
                f"{c['consistency']}  thm1={c['theorem1']}"
            )
        print(
            f"cells={summary['cells']} mismatches={mismatches} "
            f"violations={violations} inconclusive={inconclusive} "
            f"unknown={unknown_cells} (rate {summary['unknown_rate']})"
        )
    if mismatches or violations:
        return EXIT_MISMATCH
    if inconclusive:
        return EXIT_UNKNOWN
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedConstructionError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
