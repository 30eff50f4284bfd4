"""Exhaustive enumeration of Feynman graphs at fixed b, bucketed by degree.

The scan walks every fixed-point-free involution on the 4b vertices
(backtracking on the smallest unmatched vertex), keeps the connected
graphs and buckets them by 2*omega.  With ``dedup_iso`` the labeled
graphs are partitioned into isomorphism classes by expanding whole group
orbits, which also yields the exact labeled multiplicity of each class
(the content usually hidden in a symmetry factor).
"""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import COLORS, FeynmanGraph, GraphError, KLEIN_GROUP, sigma, to_text
from .classify import canonical_form

MAX_B_LABELED = 5
MAX_B_DEDUP = 4
_REP_CAP = 64


class CensusBudgetError(GraphError):
    pass


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def enumerate_matchings(b: int):
    """Yield every fixed-point-free involution on 4b vertices exactly
    once, as partner tuples; reference generator for the jitted scans."""
    n = 4 * b
    m = [-1] * n

    def rec(v):
        while v < n and m[v] >= 0:
            v += 1
        if v >= n:
            yield tuple(m)
            return
        for w in range(v + 1, n):
            if m[w] < 0:
                m[v] = w
                m[w] = v
                yield from rec(v + 1)
                m[v] = -1
                m[w] = -1

    yield from rec(0)


def split_prefixes(b: int, min_count: int):
    """Deterministic subtree split: fix the partners of the first
    smallest-unmatched vertices until at least min_count subtrees exist."""
    n = 4 * b
    prefixes = [()]
    while len(prefixes) < min_count:
        nxt = []
        for pre in prefixes:
            used = {x for p in pre for x in p}
            v = 0
            while v in used:
                v += 1
            free = [w for w in range(v + 1, n) if w not in used]
            if not free:
                nxt.append(pre)
                continue
            for w in free:
                nxt.append(pre + ((v, w),))
        if nxt == prefixes:
            break
        prefixes = nxt
    return prefixes


def _sig_table(b: int):
    return np.array([sigma(c, b) for c in COLORS], dtype=np.int8)


def _prefix_array(prefix):
    if not prefix:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(prefix, dtype=np.int64)


def _leaves_below(b: int, prefix) -> int:
    return double_factorial(4 * b - 2 * len(prefix) - 1)


def _store_job(args):
    b, prefix = args
    sig = _sig_table(b)
    cap = _leaves_below(b, prefix)
    out_m = np.empty((cap, 4 * b), dtype=np.int8)
    out_w = np.empty(cap, dtype=np.int64)
    total, stored = _kernels.scan_store(b, _prefix_array(prefix), sig,
                                        out_m, out_w)
    return total, out_m[:stored].copy(), out_w[:stored].copy()


def _aggregate_job(args):
    b, prefix = args
    sig = _sig_table(b)
    hist = np.zeros(3 * b + 7, dtype=np.int64)
    rep_m = np.empty((_REP_CAP, 4 * b), dtype=np.int8)
    total, connected, min_two, nrep = _kernels.scan_aggregate(
        b, _prefix_array(prefix), sig, hist, rep_m)
    return total, connected, hist, int(min_two), rep_m[:nrep].copy()


def _run_jobs(job, argslist, parallel_width: int):
    if parallel_width <= 1 or len(argslist) <= 1:
        return [job(a) for a in argslist]
    with ProcessPoolExecutor(max_workers=parallel_width) as pool:
        # map preserves submission order, so merges stay deterministic.
        return list(pool.map(job, argslist))


def group_vertex_perms(b: int) -> np.ndarray:
    """All b! * 4^b vertex permutations of the isomorphism group."""
    perms = []
    for bp in itertools.permutations(range(b)):
        for twists in itertools.product(KLEIN_GROUP, repeat=b):
            perms.append([4 * bp[v // 4] + twists[v // 4][v % 4]
                          for v in range(4 * b)])
    return np.array(perms, dtype=np.int64)


@dataclass(frozen=True)
class ClassEntry:
    key: str            # canonical key text
    representative: str  # serialized graph, lex-min labeled matching
    labeled_count: int


@dataclass(frozen=True)
class Bucket:
    two_omega: int
    labeled_count: int
    iso_class_count: int | None
    classes: tuple  # ClassEntry, empty when iso dedup is off
    representatives: tuple  # serialized sample graphs (labeled-only mode)


@dataclass(frozen=True)
class CensusReport:
    b: int
    dedup_iso: bool
    total_matchings: int
    connected_labeled: int
    buckets: tuple  # Buckets sorted by two_omega
    max_faces: int
    min_two_omega: int
    parallel_width: int
    elapsed: float | None

    def bucket(self, two_omega: int) -> Bucket | None:
        for bk in self.buckets:
            if bk.two_omega == two_omega:
                return bk
        return None

    def to_obj(self, include_timing: bool = False) -> dict:
        obj = {
            "b": self.b,
            "dedup_iso": self.dedup_iso,
            "total_matchings": self.total_matchings,
            "connected_labeled": self.connected_labeled,
            "max_faces": self.max_faces,
            "min_two_omega": self.min_two_omega,
            "parallel_width": self.parallel_width,
            "buckets": [
                {
                    "two_omega": bk.two_omega,
                    "labeled_count": bk.labeled_count,
                    "iso_class_count": bk.iso_class_count,
                    "classes": [
                        {"key": ce.key,
                         "representative": ce.representative,
                         "labeled_count": ce.labeled_count}
                        for ce in bk.classes
                    ],
                    "representatives": list(bk.representatives),
                }
                for bk in self.buckets
            ],
        }
        if include_timing:
            obj["elapsed_seconds"] = self.elapsed
        return obj

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_obj(include_timing), indent=2,
                          sort_keys=True) + "\n"

    def to_table(self) -> str:
        lines = ["b\ttwo_omega\tlabeled_count\tiso_classes"]
        for bk in self.buckets:
            iso = "" if bk.iso_class_count is None else str(bk.iso_class_count)
            lines.append(f"{self.b}\t{bk.two_omega}\t{bk.labeled_count}\t{iso}")
        return "\n".join(lines) + "\n"


def _graph_from_row(b, row) -> FeynmanGraph:
    return FeynmanGraph(b, tuple(int(x) for x in row))


def _iso_partition(b: int, rows: np.ndarray):
    """Partition labeled matchings into group orbits.

    Expanding one orbit per class costs |group| transforms per class,
    which is far cheaper than canonicalizing every labeled graph.
    """
    P = group_vertex_perms(b)
    gsz = P.shape[0]
    ridx = np.arange(gsz)[:, None]
    remaining = {row.tobytes() for row in rows}
    classes = []
    for mb in sorted(remaining):
        if mb not in remaining:
            continue
        m = np.frombuffer(mb, dtype=np.int8).astype(np.int64)
        T = np.empty((gsz, 4 * b), dtype=np.int8)
        # transformed matching: T[g, P[g, v]] = P[g, m[v]]
        T[ridx, P] = P[:, m]
        orbit = {T[g].tobytes() for g in range(gsz)}
        if not orbit <= remaining:
            raise AssertionError("orbit escapes the labeled population")
        remaining -= orbit
        rep = min(orbit)
        classes.append((rep, len(orbit)))
    classes.sort(key=lambda t: t[0])
    out = []
    for rep, mult in classes:
        G = _graph_from_row(b, np.frombuffer(rep, dtype=np.int8))
        out.append(ClassEntry(canonical_form(G).as_text(), to_text(G), mult))
    return out


def connected_scan(b: int, parallel_width: int = 1):
    """All connected labeled matchings at b, with their 2*omega values.

    Returns (total matchings visited, matchings array, two_omega array);
    the visit count is asserted against (4b-1)!!.
    """
    expected = double_factorial(4 * b - 1)
    prefixes = (split_prefixes(b, 8 * parallel_width)
                if parallel_width > 1 else [()])
    results = _run_jobs(_store_job, [(b, pre) for pre in prefixes],
                        parallel_width)
    total = sum(r[0] for r in results)
    M = np.concatenate([r[1] for r in results])
    W = np.concatenate([r[2] for r in results])
    if total != expected:
        raise AssertionError(
            f"scan visited {total} matchings, expected {expected}")
    return total, M, W


def census(b: int, dedup_iso: bool | None = None,
           parallel_width: int = 1) -> CensusReport:
    """Exhaustive census of connected graphs with b bubbles.

    Hard caps: b <= 4 with isomorphism dedup (default on), b <= 5
    labeled-only.  Refuses anything beyond rather than emitting partial
    output.
    """
    if b < 1:
        raise GraphError(f"b must be >= 1, got {b}")
    if dedup_iso is None:
        dedup_iso = b <= MAX_B_DEDUP
    if b > MAX_B_LABELED:
        raise CensusBudgetError(
            f"b={b} exceeds the labeled-scan budget (max {MAX_B_LABELED})")
    if dedup_iso and b > MAX_B_DEDUP:
        raise CensusBudgetError(
            f"b={b} exceeds the iso-dedup budget (max {MAX_B_DEDUP}); "
            f"rerun with dedup_iso=False for a labeled-only scan")
    t0 = time.monotonic()
    expected = double_factorial(4 * b - 1)
    prefixes = (split_prefixes(b, 8 * parallel_width)
                if parallel_width > 1 else [()])
    argslist = [(b, pre) for pre in prefixes]

    if dedup_iso:
        total, M, W = connected_scan(b, parallel_width)
        buckets = []
        for two in sorted(int(t) for t in set(W.tolist())):
            rows = M[W == two]
            classes = _iso_partition(b, rows)
            if sum(ce.labeled_count for ce in classes) != rows.shape[0]:
                raise AssertionError("class multiplicities do not add up")
            buckets.append(Bucket(two, int(rows.shape[0]), len(classes),
                                  tuple(classes), ()))
        connected = int(M.shape[0])
    else:
        results = _run_jobs(_aggregate_job, argslist, parallel_width)
        total = sum(r[0] for r in results)
        if total != expected:
            raise AssertionError(
                f"scan visited {total} matchings, expected {expected}")
        connected = sum(r[1] for r in results)
        hist = sum(r[2] for r in results)
        min_two = min(r[3] for r in results)
        reps = []
        for r in results:
            if r[3] == min_two:
                for row in r[4]:
                    if len(reps) < _REP_CAP:
                        reps.append(to_text(_graph_from_row(b, row)))
        buckets = [Bucket(two, int(hist[two]), None, (),
                          tuple(reps) if two == min_two else ())
                   for two in range(len(hist)) if hist[two] > 0]

    min_two_omega = buckets[0].two_omega
    max_faces = (6 + 3 * b - min_two_omega) // 2
    return CensusReport(b, dedup_iso, expected, connected, tuple(buckets),
                        max_faces, min_two_omega, parallel_width,
                        time.monotonic() - t0)


def max_face_classes(b: int, parallel_width: int = 1):
    """Isomorphism classes achieving the maximal face count at this b."""
    report = census(b, dedup_iso=True, parallel_width=parallel_width)
    return list(report.buckets[0].classes)
