"""Exhaustive and sampled enumeration of labeled digraphs, plus the theorem
verification drivers built on top of it.

A labeled digraph on n vertices is encoded as an n(n-1)-bit arc mask: arc
(u, v) occupies bit u*(n-1) + (v if v < u else v - 1), so each vertex's
out-row is a contiguous field and exhaustive scans are plain integer ranges.
Scans are split into fixed-size chunks processed by a worker pool; chunk
boundaries never depend on the worker count and partial results are merged
in chunk order, so reports are bit-identical whatever the parallelism.

Filters are condition identifiers (see conditions.resolve) plus the scan
extras "strong", "min_out:<t>" and "min_in:<t>"; they short-circuit in the
order given. An optional named evaluator runs on filter survivors and flags
exceptions: "no_hc", "no_prehc", "no_bypass", "no_dnk" (takes k), "lemma5"
and "lemma7_sweep". Names rather than callables cross the process boundary.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Callable, Iterable

from . import conditions, families
from .digraph import Digraph, _strong_raw, make_cycle
from .insertion import lemma7_consequences
from .iso import CANON_MAX_N, canonical_form, is_balanced_complete_bipartite, is_isomorphic_to_t5
from .search import (
    _bypass_raw,
    _embed_raw,
    _hc_on_subset_raw,
    _iter_cycles_raw,
    _prehc_exists_raw,
)

EXHAUSTIVE_MAX_N = 5
LONG_MAX_N = 6
SAMPLE_MAX_N = 16
EXH_CHUNK = 1 << 14
SAMPLE_CHUNK = 4096
_PROGRESS_STEP = 1 << 20
_MODELS = ("uniform", "dense")


# ---------------------------------------------------------------------------
# Arc-mask encoding
# ---------------------------------------------------------------------------


def mask_bits(n: int) -> int:
    return n * (n - 1)


def mask_of(g: Digraph) -> int:
    n = g.n
    mask = 0
    for u in range(n):
        r = g.rows[u]
        raw = ((r >> (u + 1)) << u) | (r & ((1 << u) - 1))
        mask |= raw << (u * (n - 1))
    return mask


@lru_cache(maxsize=8)
def _tables(n: int):
    """Per-row decode tables.

    EXPAND[u][raw] is the n-bit out-row (diagonal bit reinserted as 0);
    SPREAD[u][raw] packs the same arcs column-wise into 8-bit lanes, so the
    transpose of a whole mask is one sum of n table entries.
    """
    width = n - 1
    expand = []
    spread = []
    for u in range(n):
        e_u = []
        s_u = []
        for raw in range(1 << width):
            row = ((raw >> u) << (u + 1)) | (raw & ((1 << u) - 1))
            e_u.append(row)
            packed = 0
            r = row
            while r:
                b = r & -r
                r ^= b
                v = b.bit_length() - 1
                packed |= 1 << (8 * v + u)
            s_u.append(packed)
        expand.append(tuple(e_u))
        spread.append(tuple(s_u))
    return tuple(expand), tuple(spread)


def digraph_from_mask(n: int, mask: int) -> Digraph:
    width = n - 1
    field = (1 << width) - 1
    rows = []
    for u in range(n):
        raw = (mask >> (u * width)) & field
        rows.append(((raw >> u) << (u + 1)) | (raw & ((1 << u) - 1)))
    return Digraph._from_rows(n, rows)


# ---------------------------------------------------------------------------
# Tasks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationTask:
    """What to scan and how.

    mode "exhaustive" walks all 2^(n(n-1)) arc masks (n <= 5, or 6 with
    allow_long); mode "sample" draws sample_count seeded masks, uniform or
    dense (union of two uniform draws). Filters and the evaluator are given
    by identifier so tasks stay picklable.
    """

    n: int
    mode: str = "exhaustive"
    filters: tuple[str, ...] = ()
    sample_count: int = 0
    seed: int | None = None
    model: str = "uniform"
    evaluator: str | None = None
    evaluator_arg: int | None = None
    allow_long: bool = False

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"order must be a positive integer, got {self.n!r}")
        if self.mode == "exhaustive":
            limit = LONG_MAX_N if self.allow_long else EXHAUSTIVE_MAX_N
            if self.n > limit:
                raise ValueError(
                    f"exhaustive scan at n={self.n} refused"
                    f" (limit {EXHAUSTIVE_MAX_N}, {LONG_MAX_N} with allow_long)"
                )
        elif self.mode == "sample":
            if self.n > SAMPLE_MAX_N:
                raise ValueError(f"sampling supports n <= {SAMPLE_MAX_N}")
            if self.sample_count < 1:
                raise ValueError("sample mode needs sample_count >= 1")
            if self.seed is None:
                raise ValueError("sample mode needs an explicit seed")
            if self.model not in _MODELS:
                raise ValueError(f"unknown sample model {self.model!r}")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        for fid in self.filters:
            _resolve_filter(fid)
        if self.evaluator is not None and self.evaluator not in _EVALUATORS:
            raise ValueError(f"unknown evaluator {self.evaluator!r}")

    @property
    def mode_label(self) -> str:
        if self.mode == "exhaustive":
            return "exhaustive"
        return f"sample:{self.model}:{self.sample_count}"


def _resolve_filter(fid: str) -> Callable:
    """Raw predicate for a filter id: f(n, rows, cols, dout, din) -> keep?"""
    name, _, param = fid.partition(":")
    if name == "strong":
        if param:
            raise ValueError("filter 'strong' takes no parameter")
        return lambda n, rows, cols, dout, din: _strong_raw(n, rows, cols)
    if name in ("min_out", "min_in"):
        try:
            t = int(param)
        except ValueError:
            raise ValueError(f"bad filter id {fid!r}: integer threshold required")
        if name == "min_out":
            return lambda n, rows, cols, dout, din, t=t: min(dout) >= t
        return lambda n, rows, cols, dout, din, t=t: min(din) >= t
    return conditions.resolve(fid).raw


# ---------------------------------------------------------------------------
# Evaluators (structure oracles applied to filter survivors)
# ---------------------------------------------------------------------------


def _eval_no_hc(n, rows, cols, dout, din) -> bool:
    return _hc_on_subset_raw(n, rows, cols, (1 << n) - 1) is None


def _eval_no_prehc(n, rows, cols, dout, din) -> bool:
    return not _prehc_exists_raw(n, rows, cols)


def _eval_no_bypass(n, rows, cols, dout, din) -> bool:
    return _bypass_raw(n, rows, cols) is None


def _make_no_dnk(n: int, k: int):
    pattern = families.bypass_pattern(n, k)
    prows, pcols = pattern.rows, pattern.cols

    def eval_no_dnk(n, rows, cols, dout, din) -> bool:
        return _embed_raw(n, rows, cols, prows, pcols) is None

    return eval_no_dnk


def _eval_lemma5(n, rows, cols, dout, din) -> bool:
    return conditions._lemma5_violation(n, rows, cols, dout, din) is not None


def _eval_lemma7_sweep(n, rows, cols, dout, din) -> bool:
    """Flag any bypass-free digraph that breaks a bypass-free consequence:
    an (n-1)-cycle failing a lemma7 clause, or a good cycle (which would
    force a bypass)."""
    if n < 4:
        return False
    if not _prehc_exists_raw(n, rows, cols):
        return False
    if _bypass_raw(n, rows, cols) is not None:
        return False
    g = Digraph._from_rows(n, rows)
    full = (1 << n) - 1
    for cyc in _iter_cycles_raw(n, rows, n - 1):
        used = 0
        for v in cyc:
            used |= 1 << v
        off = (full ^ used).bit_length() - 1
        if dout[off] + din[off] >= n:
            return True
        if not lemma7_consequences(g, make_cycle(g, cyc), off).all_ok:
            return True
    return False


_EVALUATORS = {
    "no_hc": lambda task: _eval_no_hc,
    "no_prehc": lambda task: _eval_no_prehc,
    "no_bypass": lambda task: _eval_no_bypass,
    "no_dnk": lambda task: _make_no_dnk(task.n, task.evaluator_arg),
    "lemma5": lambda task: _eval_lemma5,
    "lemma7_sweep": lambda task: _eval_lemma7_sweep,
}


# ---------------------------------------------------------------------------
# Chunked scanning
# ---------------------------------------------------------------------------

_CTX: dict | None = None


def _compile_ctx(task: EnumerationTask, collect_survivors: bool) -> dict:
    n = task.n
    expand, spread = _tables(n)
    return {
        "task": task,
        "n": n,
        "expand": expand,
        "spread": spread,
        "filters": [_resolve_filter(fid) for fid in task.filters],
        "evaluator": None if task.evaluator is None else _EVALUATORS[task.evaluator](task),
        "collect": collect_survivors,
    }


def _init_worker(task: EnumerationTask, collect_survivors: bool):
    global _CTX
    _CTX = _compile_ctx(task, collect_survivors)


def _mix(seed: int, chunk_index: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + chunk_index) & ((1 << 64) - 1)


def _chunk_masks(task: EnumerationTask, chunk_index: int) -> Iterable[int]:
    bits = mask_bits(task.n)
    if task.mode == "exhaustive":
        start = chunk_index * EXH_CHUNK
        stop = min(start + EXH_CHUNK, 1 << bits)
        return range(start, stop)
    start = chunk_index * SAMPLE_CHUNK
    count = min(SAMPLE_CHUNK, task.sample_count - start)
    rng = Random(_mix(task.seed, chunk_index))
    if task.model == "dense":
        return [rng.getrandbits(bits) | rng.getrandbits(bits) for _ in range(count)]
    return [rng.getrandbits(bits) for _ in range(count)]


def _scan_chunk(chunk_index: int):
    ctx = _CTX
    task = ctx["task"]
    n = ctx["n"]
    width = n - 1
    field = (1 << width) - 1
    expand = ctx["expand"]
    spread = ctx["spread"]
    filters = ctx["filters"]
    evaluator = ctx["evaluator"]
    collect = ctx["collect"]
    vrange = range(n)
    lane = 0xFF

    scanned = 0
    passed = 0
    hits: list[int] = []
    for mask in _chunk_masks(task, chunk_index):
        scanned += 1
        rows = []
        packed = 0
        m = mask
        for u in vrange:
            raw = m & field
            m >>= width
            rows.append(expand[u][raw])
            packed += spread[u][raw]
        dout = [r.bit_count() for r in rows]
        cols = [(packed >> (8 * v)) & lane for v in vrange]
        din = [c.bit_count() for c in cols]
        ok = True
        for f in filters:
            if not f(n, rows, cols, dout, din):
                ok = False
                break
        if not ok:
            continue
        passed += 1
        if collect:
            hits.append(mask)
        elif evaluator is not None and evaluator(n, rows, cols, dout, din):
            hits.append(mask)
    return chunk_index, scanned, passed, hits


@dataclass(frozen=True)
class ScanResult:
    scanned: int
    passed_filters: int
    flagged: tuple[int, ...] = ()


def _worker_count(explicit: int | None) -> int:
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get("HAMBYPASS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"HAMBYPASS_THREADS must be an integer, got {env!r}")
    return min(4, os.cpu_count() or 1)


def enumerate_digraphs(
    task: EnumerationTask,
    visitor: Callable[[int], None] | None = None,
    workers: int | None = None,
) -> ScanResult:
    """Run the scan. With a visitor, every filter survivor's mask is passed
    to it (in scan order) and no evaluator may be set; otherwise survivors
    feed the task's evaluator and flagged masks come back in the result.
    Progress lines go to stderr every 2^20 digraphs.
    """
    if visitor is not None and task.evaluator is not None:
        raise ValueError("visitor and evaluator are mutually exclusive")
    collect = visitor is not None
    if task.mode == "exhaustive":
        total = 1 << mask_bits(task.n)
        nchunks = (total + EXH_CHUNK - 1) // EXH_CHUNK
    else:
        nchunks = (task.sample_count + SAMPLE_CHUNK - 1) // SAMPLE_CHUNK

    nworkers = min(_worker_count(workers), nchunks)
    scanned = 0
    passed = 0
    flagged: list[int] = []

    def absorb(part):
        nonlocal scanned, passed
        _, cscanned, cpassed, hits = part
        before = scanned
        scanned += cscanned
        passed += cpassed
        if collect:
            for mask in hits:
                visitor(mask)
        else:
            flagged.extend(hits)
        if scanned // _PROGRESS_STEP != before // _PROGRESS_STEP:
            print(f"scanned {scanned}", file=sys.stderr, flush=True)

    if nworkers == 1:
        _init_worker(task, collect)
        for i in range(nchunks):
            absorb(_scan_chunk(i))
    else:
        import multiprocessing

        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(nworkers, initializer=_init_worker, initargs=(task, collect)) as pool:
            for part in pool.imap(_scan_chunk, range(nchunks)):
                absorb(part)
    return ScanResult(scanned, passed, tuple(flagged))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionRecord:
    canonical_hex: str
    witness: Digraph


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    n: int
    mode: str
    seed: int | None
    scanned: int
    passed_filters: int
    exceptions: tuple[ExceptionRecord, ...]
    verdict: str
    elapsed_ms: int

    def to_json_dict(self, include_elapsed: bool = True) -> dict:
        doc: dict = {"theorem": self.theorem, "n": self.n, "mode": self.mode}
        if self.seed is not None:
            doc["seed"] = self.seed
        doc["scanned"] = self.scanned
        doc["passed_filters"] = self.passed_filters
        doc["exceptions"] = [
            {
                "canonical_hex": rec.canonical_hex,
                "witness": {
                    "n": rec.witness.n,
                    "m": rec.witness.m,
                    "arcs": [list(a) for a in rec.witness.arcs()],
                },
            }
            for rec in self.exceptions
        ]
        doc["verdict"] = self.verdict
        if include_elapsed:
            doc["elapsed_ms"] = self.elapsed_ms
        return doc


def _canonical_key(g: Digraph) -> str:
    # Beyond the exact-canonicalization bound the raw adjacency stands in;
    # sampled theorem runs are expected to produce no exceptions anyway.
    if g.n <= CANON_MAX_N:
        return canonical_form(g).hex
    return "raw:" + format(mask_of(g), "x")


def _dedupe(n: int, flagged: Iterable[int]) -> tuple[ExceptionRecord, ...]:
    seen: dict[str, Digraph] = {}
    for mask in flagged:
        g = digraph_from_mask(n, mask)
        key = _canonical_key(g)
        if key not in seen:
            seen[key] = g
    return tuple(ExceptionRecord(key, seen[key]) for key in sorted(seen))


def _run_theorem(
    theorem: str,
    task: EnumerationTask,
    allowed: Callable[[Digraph], bool] | None,
    *,
    report_only: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    t0 = time.monotonic()
    result = enumerate_digraphs(task, workers=workers)
    exceptions = _dedupe(task.n, result.flagged)
    if report_only:
        verdict = "report-only"
    elif all(allowed is not None and allowed(rec.witness) for rec in exceptions):
        verdict = "confirmed"
    else:
        verdict = "counterexample-found"
    return TheoremReport(
        theorem=theorem,
        n=task.n,
        mode=task.mode_label,
        seed=task.seed,
        scanned=result.scanned,
        passed_filters=result.passed_filters,
        exceptions=exceptions,
        verdict=verdict,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )


def _make_task(n, filters, evaluator, evaluator_arg, sample, seed, model, allow_long):
    if sample is None:
        return EnumerationTask(
            n=n,
            mode="exhaustive",
            filters=tuple(filters),
            evaluator=evaluator,
            evaluator_arg=evaluator_arg,
            allow_long=allow_long,
        )
    return EnumerationTask(
        n=n,
        mode="sample",
        filters=tuple(filters),
        sample_count=sample,
        seed=seed,
        model=model,
        evaluator=evaluator,
        evaluator_arg=evaluator_arg,
    )


# ---------------------------------------------------------------------------
# Theorem drivers
# ---------------------------------------------------------------------------


def _nothing_allowed(g: Digraph) -> bool:
    return False


def check_theorem6(
    n: int,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Strong plus a_k:0 forces a Hamiltonian cycle; no exception allowed."""
    if n < 3:
        raise ValueError("thm6 needs n >= 3")
    task = _make_task(n, ("a_k:0", "strong"), "no_hc", None, sample, seed, model, allow_long)
    return _run_theorem("thm6", task, _nothing_allowed, workers=workers)


def check_theorem11(
    n: int,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Strong plus a_k:0 forces an (n-1)-cycle except balanced complete
    bipartite digraphs."""
    if n < 4:
        raise ValueError("thm11 needs n >= 4")
    task = _make_task(n, ("a_k:0", "strong"), "no_prehc", None, sample, seed, model, allow_long)
    return _run_theorem("thm11", task, is_balanced_complete_bipartite, workers=workers)


def check_theorem12(
    n: int,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Strong plus a_k:0 forces a Hamiltonian bypass except the one
    5-vertex tournament."""
    if n < 4:
        raise ValueError("thm12 needs n >= 4")
    task = _make_task(n, ("a_k:0", "strong"), "no_bypass", None, sample, seed, model, allow_long)
    return _run_theorem("thm12", task, is_isomorphic_to_t5, workers=workers)


@lru_cache(maxsize=8)
def _theorem8_allowed_keys(n: int) -> frozenset[str]:
    keys = set()
    if n == 3:
        keys.add(_canonical_key(families.directed_cycle(3)))
    if n >= 4:
        for k in range(1, n - 1):
            keys.add(_canonical_key(families.d1(n, k)))
    if n == 5:
        keys.add(_canonical_key(families.t5()))
    if n >= 5 and n % 2 == 1:
        b = n - (n + 1) // 2
        if n == 5:
            for inner in families.iter_inner_specs(b):
                keys.add(_canonical_key(families.d0(n, inner)))
        else:
            for inner in (families.InnerSpec.empty(), families.InnerSpec.complete()):
                keys.add(_canonical_key(families.d0(n, inner)))
    return frozenset(keys)


def check_theorem8(
    n: int,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Strong plus degree_sum:-2 forces a bypass outside a short list of
    extremal families."""
    if n < 3:
        raise ValueError("thm8 needs n >= 3")
    task = _make_task(
        n, ("degree_sum:-2", "strong"), "no_bypass", None, sample, seed, model, allow_long
    )
    allowed_keys = _theorem8_allowed_keys(n)

    def allowed(g: Digraph) -> bool:
        return _canonical_key(g) in allowed_keys

    return _run_theorem("thm8", task, allowed, workers=workers)


def check_theorem9(
    n: int,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Strong plus meyniel forces a spanning reversed-tail pattern with k=3."""
    if n < 4:
        raise ValueError("thm9 needs n >= 4")
    task = _make_task(n, ("meyniel", "strong"), "no_dnk", 3, sample, seed, model, allow_long)
    return _run_theorem("thm9", task, _nothing_allowed, workers=workers)


def check_theorem16_conjecture(
    n: int,
    min_in_degree: int = 3,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """thm13 hypothesis with degree floors forces a bypass for n >= 6.

    min_in_degree=3 is the proven statement (confirmed expected); 2 probes
    the open strengthening, so its report carries no asserted outcome.
    """
    if n < 6:
        raise ValueError("thm16 needs n >= 6")
    if min_in_degree not in (2, 3):
        raise ValueError("min_in_degree must be 2 or 3")
    filters = ("min_out:2", f"min_in:{min_in_degree}", "thm13", "strong")
    task = _make_task(n, filters, "no_bypass", None, sample, seed, model, allow_long)
    return _run_theorem(
        "thm16",
        task,
        _nothing_allowed,
        report_only=(min_in_degree == 2),
        workers=workers,
    )


def explore_no_bypass(
    n: int,
    cond_id: str,
    *,
    sample: int | None = None,
    seed: int | None = None,
    model: str = "uniform",
    allow_long: bool = False,
    workers: int | None = None,
) -> TheoremReport:
    """Catalog of strong, condition-satisfying, bypass-free digraphs.

    Open-ended by design: the report lists the deduplicated survivors and
    asserts nothing about them.
    """
    if n < 1:
        raise ValueError("order must be positive")
    task = _make_task(n, (cond_id, "strong"), "no_bypass", None, sample, seed, model, allow_long)
    return _run_theorem(f"explore:{cond_id}", task, None, report_only=True, workers=workers)
