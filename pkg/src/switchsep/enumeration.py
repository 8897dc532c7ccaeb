"""Exhaustive scans over switching classes.

Every switching class of labelled graphs on ``n`` vertices contains exactly
one graph in which vertex 0 is isolated.  Such a representative is fixed by
the ``(n-1)(n-2)/2`` adjacency bits among vertices ``1..n-1``, so a plain
integer counter enumerates the classes.  Counter bit ``k`` is the ``k``-th
pair in graph6 column order restricted to vertices ``1..n-1``:
``(1,2), (1,3), (2,3), (1,4), ...``.

The scans run on numpy arrays holding one adjacency row per vertex and one
column per graph.  Separability of a representative uses the pair-closure
rule from :mod:`switchsep.separability`; separability of subgraphs is read
from lookup tables indexed by the counter of the subgraph's own
representative.  Deleting vertices commutes with switching, so a subgraph
of a representative has the same separability as the matching subgraph of
any member of its class.
"""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator

import numpy as np

from .graph import Graph
from .graph6 import encode

log = logging.getLogger(__name__)

MAX_ORDER = 10
CHUNK = 1 << 18
CHECKPOINT_EVERY = 1 << 20

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def free_pairs(order: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(2, order) for i in range(1, j)]


def class_count(order: int) -> int:
    return 1 << ((order - 1) * (order - 2) // 2)


def _check_order(order: int, lo: int = 4, hi: int = MAX_ORDER) -> None:
    if not isinstance(order, int) or not lo <= order <= hi:
        raise ValueError(f"order must be in {lo}..{hi}, got {order!r}")


def representative(order: int, counter: int) -> Graph:
    """The class representative with the given counter value."""
    _check_order(order, 1)
    if not 0 <= counter < class_count(order):
        raise ValueError(f"counter {counter} out of range for order {order}")
    edges = [p for k, p in enumerate(free_pairs(order)) if counter >> k & 1]
    return Graph.from_edges(order, edges)


def representative_counter(g: Graph) -> int:
    """Counter of the representative of ``g``'s switching class."""
    u = g.rows[0]
    counter = 0
    for k, (i, j) in enumerate(free_pairs(g.order)):
        flip = (u >> i ^ u >> j) & 1
        if (g.rows[i] >> j & 1) ^ flip:
            counter |= 1 << k
    return counter


def switching_class_representatives(order: int) -> Iterator[Graph]:
    """Yield one graph per switching class, vertex 0 isolated, by counter."""
    _check_order(order)
    for counter in range(class_count(order)):
        yield representative(order, counter)


# ---------------------------------------------------------------- kernels


def decode_rows(order: int, counters: np.ndarray) -> np.ndarray:
    """Adjacency rows, shape ``(order, len(counters))``, dtype uint16."""
    counters = counters.astype(np.uint64, copy=False)
    rows = np.zeros((order, counters.size), dtype=np.uint16)
    for k, (i, j) in enumerate(free_pairs(order)):
        bit = ((counters >> np.uint64(k)) & np.uint64(1)).astype(np.uint16)
        rows[i] |= bit << np.uint16(j)
        rows[j] |= bit << np.uint16(i)
    return rows


def batch_separable(rows: np.ndarray) -> np.ndarray:
    """Separability of each column, assuming vertex 0 is isolated in all."""
    n = rows.shape[0]
    limit = n - 2
    sep = np.zeros(rows.shape[1], dtype=bool)
    for c in range(1, n):
        diffs = rows ^ rows[c]
        for d in range(c + 1, n):
            w = np.full(rows.shape[1], (1 << c) | (1 << d), dtype=np.uint16)
            while True:
                acc = w.copy()
                for x in range(1, n):
                    if x == c:
                        continue
                    acc |= diffs[x] * ((w >> np.uint16(x)) & np.uint16(1))
                if np.array_equal(acc, w):
                    break
                w = acc
            sep |= _POPCOUNT16[w] <= limit
    return sep


def subgraph_counters(rows: np.ndarray, keep: list[int]) -> np.ndarray:
    """Counters of the class representatives of the subgraphs induced on ``keep``."""
    keep = sorted(keep)
    k = len(keep)
    smask = np.uint16(sum(1 << v for v in keep))
    if keep[0] == 0:
        sub = rows
    else:
        u = rows[keep[0]] & smask
        sub = rows.copy()
        for x in keep[1:]:
            in_u = ((u >> np.uint16(x)) & np.uint16(1)).astype(bool)
            sub[x] ^= np.where(in_u, smask & ~u, u)
    out = np.zeros(rows.shape[1], dtype=np.uint64)
    for b, (i, j) in enumerate(free_pairs(k)):
        bit = (sub[keep[i]] >> np.uint16(keep[j])) & np.uint16(1)
        out |= bit.astype(np.uint64) << np.uint64(b)
    return out


@lru_cache(maxsize=None)
def separability_table(order: int) -> np.ndarray:
    """``table[c]`` is the separability of the representative with counter ``c``."""
    _check_order(order)
    total = class_count(order)
    out = np.empty(total, dtype=bool)
    for lo in range(0, total, CHUNK):
        hi = min(total, lo + CHUNK)
        out[lo:hi] = batch_separable(decode_rows(order, np.arange(lo, hi, dtype=np.uint64)))
    out.setflags(write=False)
    return out


def _scan_chunk(mode: str, order: int, lo: int, hi: int) -> tuple[int, int, list[int]]:
    counters = np.arange(lo, hi, dtype=np.uint64)
    rows = decode_rows(order, counters)
    nonsep = ~batch_separable(rows)
    nonsep_count = int(nonsep.sum())
    rows, counters = rows[:, nonsep], counters[nonsep]

    deletions = [[v] for v in range(order)]
    if mode == "theorem1":
        deletions += [list(p) for p in combinations(range(order), 2)]
    for removed in deletions:
        if counters.size == 0:
            break
        keep = [v for v in range(order) if v not in removed]
        table = separability_table(len(keep))
        alive = table[subgraph_counters(rows, keep)]
        rows, counters = rows[:, alive], counters[alive]
    return hi - lo, nonsep_count, [int(c) for c in counters]


def _scan_chunk_star(args):
    return _scan_chunk(*args)


# ----------------------------------------------------------------- reports


@dataclass
class SearchReport:
    mode: str
    order: int
    classes_scanned: int = 0
    nonseparable_count: int = 0
    counterexample_counters: list[int] = field(default_factory=list)
    wall_time: float = 0.0
    worker_count: int = 1

    @property
    def counterexamples(self) -> list[str]:
        return [encode(representative(self.order, c)) for c in self.counterexample_counters]

    def merge(self, scanned: int, nonsep: int, found: list[int]) -> None:
        self.classes_scanned += scanned
        self.nonseparable_count += nonsep
        self.counterexample_counters = sorted(self.counterexample_counters + found)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "order": self.order,
            "classes_scanned": self.classes_scanned,
            "nonseparable_count": self.nonseparable_count,
            "counterexamples": self.counterexamples,
            "counterexample_counters": self.counterexample_counters,
            "wall_time": self.wall_time,
            "worker_count": self.worker_count,
        }


def write_checkpoint(path: Path, report: SearchReport, next_counter: int) -> None:
    text = (
        f"order={report.order}\n"
        f"mode={report.mode}\n"
        f"next_counter={next_counter}\n"
        f"classes_scanned={report.classes_scanned}\n"
        f"nonseparable_count={report.nonseparable_count}\n"
        f"counterexamples={','.join(map(str, report.counterexample_counters))}\n"
    )
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def read_checkpoint(path: Path) -> tuple[SearchReport, int]:
    fields = {}
    for line in path.read_text().splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    try:
        report = SearchReport(
            mode=fields["mode"],
            order=int(fields["order"]),
            classes_scanned=int(fields["classes_scanned"]),
            nonseparable_count=int(fields["nonseparable_count"]),
            counterexample_counters=[int(c) for c in fields["counterexamples"].split(",") if c],
        )
        next_counter = int(fields["next_counter"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed checkpoint {path}: {exc}") from None
    if report.classes_scanned != next_counter:
        raise ValueError(f"checkpoint {path} is inconsistent: scanned != next_counter")
    return report, next_counter


def default_jobs() -> int:
    return int(os.environ.get("SWITCHSEP_JOBS", "1"))


def _run(
    mode: str,
    order: int,
    jobs: int | None,
    checkpoint: str | Path | None,
    chunk: int,
) -> SearchReport:
    jobs = default_jobs() if jobs is None else jobs
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    total = class_count(order)
    report, start = SearchReport(mode, order), 0
    path = Path(checkpoint) if checkpoint is not None else None
    if path is not None and path.exists():
        report, start = read_checkpoint(path)
        if (report.mode, report.order) != (mode, order):
            raise ValueError(
                f"checkpoint is for {report.mode} order {report.order}, not {mode} order {order}"
            )
        log.info("resuming %s order %d at counter %d", mode, order, start)

    t0 = time.perf_counter()
    tasks = [(mode, order, lo, min(total, lo + chunk)) for lo in range(start, total, chunk)]
    pool = Pool(jobs) if jobs > 1 and len(tasks) > 1 else None
    try:
        results = pool.imap(_scan_chunk_star, tasks) if pool else map(_scan_chunk_star, tasks)
        for (_, _, lo, hi), part in zip(tasks, results):
            report.merge(*part)
            if path is not None and (hi % CHECKPOINT_EVERY == 0 or hi == total):
                write_checkpoint(path, report, hi)
            log.debug("%s order %d: %d/%d", mode, order, hi, total)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    report.wall_time = time.perf_counter() - t0
    report.worker_count = jobs
    return report


def verify_theorem1(
    order: int,
    jobs: int | None = None,
    checkpoint: str | Path | None = None,
    chunk: int = CHUNK,
) -> SearchReport:
    """Non-separable classes whose order n-1 and n-2 subgraphs are all separable."""
    _check_order(order, 6, 9)
    return _run("theorem1", order, jobs, checkpoint, chunk)


def search_conjecture(
    order: int,
    jobs: int | None = None,
    checkpoint: str | Path | None = None,
    chunk: int = CHUNK,
) -> SearchReport:
    """Non-separable classes of even order whose one-vertex deletions are all separable."""
    _check_order(order, 6, 10)
    if order % 2:
        raise ValueError(
            f"odd order {order}: circulant_gn({order}) already is such a graph"
        )
    if order == 10:
        log.warning("order 10 scans 2^36 classes; expect a very long run")
    return _run("conjecture", order, jobs, checkpoint, chunk)


def scan_one_deletion(order: int) -> SearchReport:
    """The conjecture scan without the parity restriction (orders 5..9)."""
    _check_order(order, 5, 9)
    return _run("conjecture", order, 1, None, CHUNK)
