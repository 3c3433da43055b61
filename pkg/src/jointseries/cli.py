"""Command line: ``compute``, ``verify`` and ``table``.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from jointseries import __version__
from jointseries.canonical import FORMATS, parse_json, render, to_json_obj
from jointseries.oracle import FormPair, dims
from jointseries.ring import series_prefix
from jointseries.springer import KINDS, PoincareResult, poincare_series

log = logging.getLogger("jointseries")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3
CACHE_CHECK_TERMS = 10


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d1: Optional[int] = None
    d2: Optional[int] = None
    kind: str = "both"
    terms: Optional[int] = None
    format: str = "text"
    out: Optional[str] = None
    jobs: int = 1
    cache_dir: Optional[str] = None

    def validate(self):
        for d in (self.d1, self.d2):
            if d is None:
                raise UsageError("both degrees are required")
            if d < 1:
                raise UsageError("degrees must be ≥ 1")
        if self.terms is not None and self.terms < 0:
            raise UsageError("--terms must be ≥ 0")
        if self.jobs < 1:
            raise UsageError("--jobs must be ≥ 1")

    @property
    def kinds(self) -> tuple[str, ...]:
        return KINDS if self.kind == "both" else (self.kind,)


# -- atomic files and the cache --------------------------------------------


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_path(cache_dir, d1: int, d2: int, kind: str) -> Path:
    return Path(cache_dir) / f"v{__version__}" / f"{kind}_{d1}_{d2}.json"


def read_cache(cache_dir, pair: FormPair, kind: str) -> Optional[PoincareResult]:
    if not cache_dir:
        return None
    path = cache_path(cache_dir, pair.d1, pair.d2, kind)
    if not path.exists():
        return None
    try:
        return parse_json(path.read_text())
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("unreadable cache entry %s: %s", path, exc)
        return None


def oracle_mismatch(value, pair: FormPair, kind: str, terms: int):
    """First ``(n, computed, oracle)`` disagreement in degrees 0..terms, else None."""
    got = series_prefix(value, terms)
    want = dims(pair, terms, kind)
    for n, (a, b) in enumerate(zip(got, want)):
        if a != b:
            return n, a, b
    return None


def cached_or_compute(pair: FormPair, kind: str, cache_dir, terms: Optional[int] = None) -> PoincareResult:
    """Reuse a cache entry only if it passes the oracle prefix check; refresh the cache."""
    hit = read_cache(cache_dir, pair, kind)
    if hit is not None:
        bad = oracle_mismatch(hit.value, pair, kind, CACHE_CHECK_TERMS)
        if bad is None:
            if terms is None:
                return PoincareResult(pair, kind, hit.value, hit.presentation, None)
            return PoincareResult(pair, kind, hit.value, hit.presentation,
                                  tuple(series_prefix(hit.value, terms)))
        log.warning("cache entry %s %s failed oracle check at z^%d; recomputing", kind, pair, bad[0])
    result = poincare_series(pair, kind, terms)
    if cache_dir:
        entry = PoincareResult(pair, kind, result.value, result.presentation, None)
        write_atomic(cache_path(cache_dir, pair.d1, pair.d2, kind), render(entry, "json") + "\n")
    return result


# -- commands ----------------------------------------------------------------


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        write_atomic(Path(cfg.out), text)
    else:
        sys.stdout.write(text)


def cmd_compute(cfg: RunConfig) -> int:
    cfg.validate()
    pair = FormPair(cfg.d1, cfg.d2)
    results = [cached_or_compute(pair, kind, cfg.cache_dir, cfg.terms) for kind in cfg.kinds]
    if cfg.format == "json":
        objs = [to_json_obj(r) for r in results]
        text = json.dumps(objs[0] if len(objs) == 1 else objs) + "\n"
    else:
        lines = []
        for r in results:
            line = render(r, cfg.format)
            if r.series is not None:
                line += "\n" + " ".join(map(str, r.series))
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    cfg.validate()
    pair = FormPair(cfg.d1, cfg.d2)
    terms = 10 if cfg.terms is None else cfg.terms
    lines = []
    status = EXIT_OK
    for kind in cfg.kinds:
        # a cache entry is checked as-is, without the automatic refresh
        hit = read_cache(cfg.cache_dir, pair, kind)
        value = hit.value if hit is not None else poincare_series(pair, kind).value
        got = series_prefix(value, terms)
        want = dims(pair, terms, kind)
        first_bad = None
        for n, (a, b) in enumerate(zip(got, want)):
            ok = a == b
            lines.append(f"{kind} z^{n}: series={a} oracle={b} {'PASS' if ok else 'FAIL'}")
            if not ok and first_bad is None:
                first_bad = (n, a, b)
        if first_bad is None:
            lines.append(f"PASS {kind} ({pair.d1},{pair.d2}) degrees 0..{terms}")
        else:
            n, a, b = first_bad
            lines.append(f"FAIL {kind} ({pair.d1},{pair.d2}) first mismatch at z^{n}: series={a} oracle={b}")
            status = EXIT_MISMATCH
    _emit(cfg, "\n".join(lines) + "\n")
    return status


def _table_job(args):
    d1, d2, kind, terms, cache_dir, out = args
    t0 = time.perf_counter()
    pair = FormPair(d1, d2)
    try:
        result = cached_or_compute(pair, kind, cache_dir, terms)
        bad = oracle_mismatch(result.value, pair, kind, CACHE_CHECK_TERMS)
        if bad is not None:
            return d1, d2, kind, "mismatch", time.perf_counter() - t0, f"z^{bad[0]}: {bad[1]} != {bad[2]}"
        write_atomic(Path(out) / f"{kind}_{d1}_{d2}.json", render(result, "json") + "\n")
    except OSError as exc:
        return d1, d2, kind, "io", time.perf_counter() - t0, str(exc)
    return d1, d2, kind, "ok", time.perf_counter() - t0, ""


def table_pairs(bound1: int, bound2: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, bound1 + 1) for b in range(a, bound2 + 1)]


def cmd_table(cfg: RunConfig) -> int:
    cfg.validate()
    if not cfg.out:
        raise UsageError("table needs --out DIRECTORY")
    terms = CACHE_CHECK_TERMS if cfg.terms is None else cfg.terms
    jobs = [
        (a, b, kind, terms, cfg.cache_dir, cfg.out)
        for a, b in table_pairs(cfg.d1, cfg.d2)
        for kind in cfg.kinds
    ]
    Path(cfg.out).mkdir(parents=True, exist_ok=True)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            outcomes = list(pool.map(_table_job, jobs))
    else:
        outcomes = [_table_job(j) for j in jobs]
    status = EXIT_OK
    for d1, d2, kind, state, seconds, msg in outcomes:
        log.info("%s (%d,%d) %s in %.3fs %s", kind, d1, d2, state, seconds, msg)
        if state == "mismatch":
            log.error("%s (%d,%d) failed the oracle check: %s", kind, d1, d2, msg)
            status = max(status, EXIT_MISMATCH)
        elif state == "io":
            log.error("%s (%d,%d) could not be written: %s", kind, d1, d2, msg)
            status = EXIT_IO if status == EXIT_OK else status
    n_ok = sum(1 for o in outcomes if o[3] == "ok")
    log.info("table: %d of %d files written", n_ok, len(outcomes))
    return status


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=("invariants", "covariants", "both"), default="both")
    common.add_argument("--terms", type=int, default=None, help="series coefficients 0..N")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", default=None, help="output file (directory for table)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cache-dir", default=os.environ.get("POINCARE_CACHE_DIR"))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="jointseries", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("compute", "verify"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--d1", type=int, required=True)
        p.add_argument("--d2", type=int, required=True)
    p = sub.add_parser("table", parents=[common])
    p.add_argument("--max", type=int, default=None, help="bound on both degrees")
    p.add_argument("--d1", type=int, default=None, help="bound on the first degree")
    p.add_argument("--d2", type=int, default=None, help="bound on the second degree")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d1, d2 = ns.d1, ns.d2
    if ns.command == "table" and getattr(ns, "max", None) is not None:
        d1 = ns.max if d1 is None else d1
        d2 = ns.max if d2 is None else d2
    return RunConfig(ns.command, d1, d2, ns.kind, ns.terms, ns.format, ns.out, ns.jobs, ns.cache_dir)


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "table": cmd_table}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose or ns.command == "table" else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
