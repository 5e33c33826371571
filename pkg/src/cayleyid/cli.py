"""Command-line front end: ``verify``, ``suite`` and ``bfunction``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product as cartesian
from typing import Sequence

from .cayley import (FAMILIES, GRASSMANN_FAMILIES, IdentityCase, expected_bfunction,
                     factored_bfunction, full_minor, grassmann_path_check, minor_pairs,
                     random_parameters, validate_case, validate_dims, verify_identity)
from .lemmas import LEMMAS, default_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_TWO_DIM = ("rect_two_matrix", "rect_sym", "rect_antisym", "product_param", "border_param")
_HALF_SIZE = ("antisym_pf", "antisym_det")

DESK_CAPS = {
    "ordinary": (4,), "symmetric": (4,), "antisym_pf": (3,), "antisym_det": (3,),
    "rect_two_matrix": (2, 4), "rect_sym": (2, 4), "rect_antisym": (1, 3), "rect_multi": (3, 3),
    "diag_param": (3,), "diag_param_sym": (3,), "laplacian_row": (4,), "laplacian_sym": (4,),
    "tree_row": (4,), "tree_sym": (4,), "product_param": (2, 4), "border_param": (2, 4),
}
ALPHA_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2, 7))
_MIXED_ALPHA = (Fraction(2, 7), Fraction(1), Fraction(0), Fraction(1, 2))


class UsageError(Exception):
    pass


def family_name(text: str) -> str:
    name = text.strip().lower().replace("-", "_")
    if name not in FAMILIES:
        raise UsageError(f"unknown family {text!r}; choose from {', '.join(FAMILIES)}")
    return name


_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*[+-]?\d+\s*)?$")


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise UsageError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not _RATIONAL.match(text):
        raise UsageError(f"not a rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise UsageError(f"zero denominator in {text!r}") from None


def parse_int_list(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    text = text.strip()
    if text in ("", "[]", "-"):
        return ()
    try:
        return tuple(int(p) for p in text.strip("[]").split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def read_matrix_file(path: str) -> tuple[tuple[Fraction, ...], ...]:
    """Load ``{"rows": r, "cols": c, "entries": [["p/q", ...], ...]}``."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {path!r}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise UsageError(f"matrix file {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not {"rows", "cols", "entries"} <= data.keys():
        raise UsageError(f"matrix file {path!r} needs keys rows, cols, entries")
    rows, cols, entries = data["rows"], data["cols"], data["entries"]
    if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (rows, cols)):
        raise UsageError(f"matrix file {path!r}: rows and cols must be non-negative integers")
    if not isinstance(entries, list) or len(entries) != rows or any(
            not isinstance(r, list) or len(r) != cols for r in entries):
        raise UsageError(f"matrix file {path!r}: entries do not form a {rows}x{cols} array")
    return tuple(tuple(parse_rational(v) for v in r) for r in entries)


def dims_from_args(family: str, args) -> tuple[int, ...]:
    if family == "rect_multi":
        if args.dims is not None:
            return parse_int_list(args.dims)
        if args.l is not None and args.n is not None:
            return (args.n,) * args.l
        raise UsageError("rect_multi needs --dims n1,n2,... or --l with --n")
    if family in _TWO_DIM:
        if args.m is None or args.n is None:
            raise UsageError(f"{family} needs --m and --n")
        return (args.m, args.n)
    if family in _HALF_SIZE:
        if args.m is not None:
            return (args.m,)
        if args.n is not None:
            if args.n % 2:
                raise UsageError(f"{family} needs an even matrix order; pass --m for half the order")
            return (args.n // 2,)
        raise UsageError(f"{family} needs --m")
    if args.n is None:
        raise UsageError(f"{family} needs --n")
    return (args.n,)


def _vector(text: str | None, size: int, conv, name: str):
    if text is None:
        return None
    parts = [p for p in text.split(",")]
    if len(parts) == 1:
        parts = parts * size
    if len(parts) != size:
        raise UsageError(f"--{name} needs 1 or {size} values")
    return tuple(conv(p) for p in parts)


def _beta_entry(text: str) -> int:
    if text.strip() not in ("0", "1"):
        raise UsageError("--beta entries must be 0 or 1")
    return int(text)


def case_from_args(args) -> IdentityCase:
    family = family_name(args.family)
    dims = dims_from_args(family, args)
    try:
        dims = validate_dims(family, dims)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    I = parse_int_list(args.minor_i)
    J = parse_int_list(args.minor_j)
    if I is None and J is None:
        I = J = None
    elif I is None:
        I = J
    elif J is None:
        J = I
    if I is None:
        I = J = full_minor(family, dims)
    alpha = beta = None
    if family in ("diag_param", "diag_param_sym"):
        beta = _vector(args.beta, dims[0], _beta_entry, "beta")
        if family == "diag_param":
            alpha = _vector(args.alpha, dims[0], parse_rational, "alpha")
    elif args.alpha is not None or args.beta is not None:
        raise UsageError("--alpha/--beta apply only to the diagonal-parametrized families")
    A = B = None
    seed = None
    if family in ("product_param", "border_param"):
        seed = args.seed
        A, B = random_parameters(family, dims, seed)
        if args.matrix_file:
            A = read_matrix_file(args.matrix_file)
        if args.matrix_file_b:
            B = read_matrix_file(args.matrix_file_b)
    elif args.matrix_file or args.matrix_file_b:
        raise UsageError("--matrix-file applies only to product_param and border_param")
    i0 = None
    if family in ("tree_row", "tree_sym"):
        i0 = 1 if args.i0 is None else args.i0
    case = IdentityCase(family, dims, tuple(I), tuple(J), alpha=alpha, beta=beta, A=A, B=B,
                        i0=i0, seed=seed)
    try:
        return validate_case(case)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _format_report_table(rep: dict) -> str:
    lines = [
        f"family      {rep['family']}",
        f"dims        {','.join(map(str, rep['dims']))}",
        f"minor       I={rep['minor']['I']} J={rep['minor']['J']}",
        f"outcome     {rep['outcome']}",
        f"expected b  {rep['expected_b']}",
        f"computed b  {rep['computed_b'] if rep['computed_b'] is not None else '-'}",
        f"lhs         {rep['lhs']}",
        f"rhs         {rep['rhs']}",
        f"elapsed     {rep['elapsed_ms']:.1f} ms",
    ]
    if "params" in rep:
        lines.insert(3, f"params      {dumps(rep['params'])}")
    if "detail" in rep:
        lines.append(f"detail      {rep['detail']}")
    return "\n".join(lines)


def run_verify(args, out=None) -> int:
    out = out or sys.stdout
    case = case_from_args(args)
    report = verify_identity(case).to_json()
    if args.no_timing:
        report["elapsed_ms"] = 0
    print(dumps(report) if args.format == "json" else _format_report_table(report), file=out)
    return EXIT_FAIL if report["outcome"] == "fails" else EXIT_OK


def run_bfunction(args, out=None) -> int:
    out = out or sys.stdout
    family = family_name(args.family)
    dims = dims_from_args(family, args)
    try:
        factored = factored_bfunction(family, dims)
        expanded = str(expected_bfunction(family, dims))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(dumps({"family": family, "dims": list(dims), "factored": factored,
                     "expanded": expanded}), file=out)
    else:
        print(factored, file=out)
        print(expanded, file=out)
    return EXIT_OK


# --- suite ---------------------------------------------------------------------


@dataclass
class SuiteConfig:
    """What a suite run covers.

    ``caps`` bounds the sizes per family: one bound for single-size families,
    ``(m, n)`` for the rectangular and parametrized pairs, and ``(blocks, size)``
    for the multi-matrix family. A zero anywhere disables that family.
    """

    caps: dict = field(default_factory=lambda: dict(DESK_CAPS))
    minors: bool = True
    seed: int = 0
    format: str = "table"
    jobs: int = 1
    grassmann_cap: int = 3
    grassmann_powers: tuple = (1, 2, 3)
    lemma_cap: int = 3
    draws: int = 5
    families: tuple | None = None
    lemmas: bool = True
    identities: bool = True

    def validate(self) -> "SuiteConfig":
        for fam, cap in self.caps.items():
            if fam not in FAMILIES:
                raise UsageError(f"unknown family {fam!r} in caps")
            desk = DESK_CAPS[fam]
            if len(cap) != len(desk) or any(c < 0 or c > d for c, d in zip(cap, desk)):
                raise UsageError(f"caps for {fam} must be {len(desk)} value(s) within {desk}")
        if not 0 <= self.grassmann_cap <= 3:
            raise UsageError("Grassmann cap must lie in 0..3")
        if not 0 <= self.lemma_cap <= 3:
            raise UsageError("lemma cap must lie in 0..3")
        if self.jobs < 1:
            raise UsageError("jobs must be positive")
        if self.draws < 0:
            raise UsageError("draws must be non-negative")
        if self.format not in ("table", "json"):
            raise UsageError("format must be table or json")
        return self

    def shrink(self, limit: int) -> "SuiteConfig":
        """Clamp every size bound to ``limit``."""
        caps = {f: tuple(min(c, limit) for c in cap) for f, cap in self.caps.items()}
        return replace(self, caps=caps, grassmann_cap=min(self.grassmann_cap, limit),
                       lemma_cap=min(self.lemma_cap, limit))


def family_dims(family: str, cap: Sequence[int]) -> list[tuple[int, ...]]:
    if any(c <= 0 for c in cap):
        return []
    if family == "rect_multi":
        blocks, size = cap
        return [d for ell in range(1, blocks + 1) for d in cartesian(range(1, size + 1), repeat=ell)]
    if family in _TWO_DIM:
        mcap, ncap = cap
        return [(m, n) for m in range(1, mcap + 1) for n in range(m, ncap + 1)]
    return [(n,) for n in range(1, cap[0] + 1)]


def _pairs(family: str, dims, minors: bool):
    if minors:
        return minor_pairs(family, dims)
    full = full_minor(family, dims)
    return [(full, full)]


def _alpha_grid(n: int) -> list[tuple]:
    return [(a,) * n for a in ALPHA_VALUES] + [_MIXED_ALPHA[:n]]


def identity_cases(config: SuiteConfig) -> list[IdentityCase]:
    cases = []
    for family in FAMILIES:
        if config.families is not None and family not in config.families:
            continue
        for dims in family_dims(family, config.caps.get(family, (0,))):
            variants: list[dict] = [{}]
            if family == "diag_param":
                variants = [{"alpha": a, "beta": b} for a in _alpha_grid(dims[0])
                            for b in cartesian((0, 1), repeat=dims[0])]
            elif family == "diag_param_sym":
                variants = [{"beta": b} for b in cartesian((0, 1), repeat=dims[0])]
            elif family in ("tree_row", "tree_sym"):
                variants = [{"i0": i} for i in range(1, dims[0] + 1)]
            elif family in ("product_param", "border_param"):
                variants = [{"seed": config.seed + d} for d in range(config.draws)]
            for I, J in _pairs(family, dims, config.minors):
                for extra in variants:
                    cases.append(IdentityCase(family, dims, I, J, **extra))
    return cases


def grassmann_cases(config: SuiteConfig) -> list[tuple[IdentityCase, int]]:
    g = config.grassmann_cap
    out = []
    for family in GRASSMANN_FAMILIES:
        if config.families is not None and family not in config.families:
            continue
        cap = config.caps.get(family, (0,))
        if g <= 0 or any(c <= 0 for c in cap):
            continue
        for dims in family_dims(family, cap):
            order = 2 * dims[0] if family == "antisym_pf" else dims[-1]
            if order > g:
                continue
            seeds = [None]
            if family in ("product_param", "border_param"):
                seeds = [config.seed + d for d in range(config.draws)]
            for I, J in _pairs(family, dims, config.minors):
                for seed in seeds:
                    for s0 in config.grassmann_powers:
                        out.append((IdentityCase(family, dims, I, J, seed=seed), s0))
    return out


def _jsonable(v):
    if isinstance(v, (tuple, list)):
        return [_jsonable(e) for e in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def _case_fields(case: IdentityCase) -> dict:
    out = {"family": case.family, "dims": list(case.dims),
           "minor": {"I": list(case.I), "J": list(case.J)}}
    if case.seed is not None:
        out["seed"] = case.seed
    return out


def _run_task(task):
    kind = task[0]
    start = time.perf_counter()
    if kind == "identity":
        case = task[1]
        try:
            rec = verify_identity(case).to_json()
        except Exception as exc:  # a crash is reported as a failure, not raised
            rec = _case_fields(case)
            rec.update(holds=False, outcome="fails", expected_b=None, computed_b=None,
                       lhs="", rhs="", detail=f"{type(exc).__name__}: {exc}")
            rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        return rec
    if kind == "grassmann":
        case, s0 = task[1], task[2]
        rec = _case_fields(case)
        rec["s0"] = s0
        try:
            rec["holds"] = bool(grassmann_path_check(case, s0))
        except Exception as exc:
            rec["holds"] = False
            rec["detail"] = f"{type(exc).__name__}: {exc}"
    else:
        name, params = task[1], task[2]
        rec = {"lemma": name, "params": {k: _jsonable(v) for k, v in params.items()}}
        try:
            rec["holds"] = bool(LEMMAS[name](**params))
        except Exception as exc:
            rec["holds"] = False
            rec["detail"] = f"{type(exc).__name__}: {exc}"
    rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return rec


def _task_key(task) -> tuple:
    if task[0] == "identity":
        return (0, task[1].key())
    if task[0] == "grassmann":
        return (1, task[1].key(), task[2])
    return (2, task[1], dumps({k: _jsonable(v) for k, v in task[2].items()}))


def suite_tasks(config: SuiteConfig) -> list[tuple]:
    tasks: list[tuple] = []
    if config.identities:
        tasks += [("identity", c) for c in identity_cases(config)]
        tasks += [("grassmann", c, s0) for c, s0 in grassmann_cases(config)]
    if config.lemmas:
        tasks += [("lemma", name, params) for name, params in default_grid(config.lemma_cap, config.seed)]
    tasks.sort(key=_task_key)
    return tasks


def execute_suite(config: SuiteConfig) -> dict:
    """Run every task of ``config`` and return the merged, key-ordered result."""
    config.validate()
    tasks = suite_tasks(config)
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * config.jobs))))
    else:
        records = [_run_task(t) for t in tasks]
    result = {"identities": [], "grassmann": [], "lemmas": []}
    summary = {"passed": 0, "failed": 0, "vacuous": 0}
    for task, rec in zip(tasks, records):
        section = {"identity": "identities", "grassmann": "grassmann", "lemma": "lemmas"}[task[0]]
        result[section].append(rec)
        outcome = rec.get("outcome") or ("holds" if rec["holds"] else "fails")
        summary[{"holds": "passed", "fails": "failed", "vacuous": "vacuous"}[outcome]] += 1
    result["summary"] = summary
    return result


def strip_timing(result: dict) -> dict:
    for section in ("identities", "grassmann", "lemmas"):
        for rec in result.get(section, []):
            rec["elapsed_ms"] = 0
    return result


def _suite_table(result: dict) -> str:
    groups: dict = {}
    for rec in result["identities"]:
        key = ("identity", rec["family"], ",".join(map(str, rec["dims"])))
        g = groups.setdefault(key, {"holds": 0, "fails": 0, "vacuous": 0, "ms": 0.0})
        g[rec["outcome"]] += 1
        g["ms"] += rec["elapsed_ms"]
    for rec in result["grassmann"]:
        key = ("grassmann", rec["family"], ",".join(map(str, rec["dims"])))
        g = groups.setdefault(key, {"holds": 0, "fails": 0, "vacuous": 0, "ms": 0.0})
        g["holds" if rec["holds"] else "fails"] += 1
        g["ms"] += rec["elapsed_ms"]
    for rec in result["lemmas"]:
        key = ("lemma", rec["lemma"], "")
        g = groups.setdefault(key, {"holds": 0, "fails": 0, "vacuous": 0, "ms": 0.0})
        g["holds" if rec["holds"] else "fails"] += 1
        g["ms"] += rec["elapsed_ms"]
    lines = [f"{'kind':<10} {'name':<26} {'dims':<8} {'pass':>5} {'fail':>5} {'vac':>4} {'ms':>10}"]
    for (kind, name, dims), g in groups.items():
        lines.append(f"{kind:<10} {name:<26} {dims:<8} {g['holds']:>5} {g['fails']:>5} "
                     f"{g['vacuous']:>4} {g['ms']:>10.1f}")
    for section in ("identities", "grassmann", "lemmas"):
        for rec in result[section]:
            if not rec["holds"] and rec.get("outcome") != "vacuous":
                lines.append("FAILED " + dumps({k: v for k, v in rec.items() if k not in ("lhs", "rhs")}))
    s = result["summary"]
    lines.append(f"passed {s['passed']}  failed {s['failed']}  vacuous {s['vacuous']}")
    return "\n".join(lines)


def _parse_caps(items: Sequence[str], base: dict) -> dict:
    caps = dict(base)
    for item in items:
        if "=" not in item:
            raise UsageError(f"--cap expects FAMILY=SIZE[,SIZE], got {item!r}")
        fam, _, val = item.partition("=")
        fam = family_name(fam)
        sizes = parse_int_list(val)
        if len(sizes) == 1:
            sizes = sizes * len(DESK_CAPS[fam])
        caps[fam] = sizes
    return caps


def resolve_jobs(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("CAYLEY_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CAYLEY_THREADS must be an integer, got {env!r}") from None
    return 1


def config_from_args(args) -> SuiteConfig:
    config = SuiteConfig(seed=args.seed, format=args.format, jobs=resolve_jobs(args.jobs),
                         minors=not args.no_minors, draws=args.draws)
    config.caps = _parse_caps(args.cap or [], config.caps)
    if args.max_size is not None:
        config = config.shrink(args.max_size)
    if args.family:
        config.families = tuple(family_name(f) for f in args.family)
    if args.lemmas_only:
        config.identities = False
    if args.no_lemmas:
        config.lemmas = False
    if args.no_grassmann:
        config.grassmann_cap = 0
    return config.validate()


def run_suite(config: SuiteConfig, out=None, timing: bool = True,
              output: str | None = None) -> int:
    out = out or sys.stdout
    result = execute_suite(config)
    if not timing:
        strip_timing(result)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(dumps(result) + "\n")
    print(dumps(result) if config.format == "json" else _suite_table(result), file=out)
    return EXIT_OK if result["summary"]["failed"] == 0 else EXIT_FAIL


# --- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleyid",
                                     description="Exact verification of Cayley-type operator identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def shape_flags(p):
        p.add_argument("--family", required=True)
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--l", type=int, help="number of blocks for rect_multi")
        p.add_argument("--dims", help="comma-separated block sizes for rect_multi")
        p.add_argument("--format", choices=("table", "json"), default="table")

    v = sub.add_parser("verify", help="check one identity")
    shape_flags(v)
    v.add_argument("--minor-i", help="row indices, e.g. 1,3 (default: all)")
    v.add_argument("--minor-j", help="column indices (default: same as rows)")
    v.add_argument("--alpha", help="diag_param weights, one value or one per row")
    v.add_argument("--beta", help="diagonal exponents in {0,1}, one value or one per row")
    v.add_argument("--matrix-file", help="JSON file holding the parameter matrix A")
    v.add_argument("--matrix-file-b", help="JSON file holding the parameter matrix B")
    v.add_argument("--i0", type=int, help="root vertex for the spanning-tree families")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    s = sub.add_parser("suite", help="run the desk-scale suite")
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, help="worker processes (default: CAYLEY_THREADS or 1)")
    s.add_argument("--cap", action="append", metavar="FAMILY=SIZE[,SIZE]")
    s.add_argument("--max-size", type=int, help="clamp every size bound")
    s.add_argument("--family", action="append", help="restrict to these families")
    s.add_argument("--no-minors", action="store_true", help="full-size identities only")
    s.add_argument("--draws", type=int, default=5, help="random parameter draws per size")
    s.add_argument("--lemmas-only", action="store_true")
    s.add_argument("--no-lemmas", action="store_true")
    s.add_argument("--no-grassmann", action="store_true")
    s.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")
    s.add_argument("--output", help="also write the JSON result to this file")

    b = sub.add_parser("bfunction", help="print the expected b-function")
    shape_flags(b)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return run_verify(args)
        if args.command == "bfunction":
            return run_bfunction(args)
        return run_suite(config_from_args(args), timing=not args.no_timing, output=args.output)
    except UsageError as exc:
        print(f"cayleyid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
