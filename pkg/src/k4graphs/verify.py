"""Executable checkers for the model's lemmas, proposition and theorem.

Each check sweeps an exhaustive or seeded-random population and returns
a CheckReport whose violation list is expected to be empty.  Every
violation carries a serialized counterexample sufficient to replay it.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import _kernels
from .census import census, connected_scan, _sig_table
from .classify import (
    generate_random_melonic,
    generate_random_nlo,
    is_melonic,
    is_nlo_tadpole,
)
from .core import (
    COLORS,
    FeynmanGraph,
    face_counts,
    faces,
    from_text,
    is_connected,
    to_text,
    total_faces,
)
from .moves import (
    connected_by_two_point,
    flip_matching,
    insert_dipole,
    is_two_edge_cut,
    splice,
    split_two_edge_cut,
    _face_components,
)

CHECK_NAMES = ("faces", "flip", "corollary", "length2", "gmax", "split")


@dataclass
class CheckReport:
    name: str
    population: str
    checked: int = 0
    violations: list = field(default_factory=list)
    seed: object = None
    elapsed: float | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, **kw):
        self.violations.append(kw)

    def to_obj(self, include_timing: bool = False) -> dict:
        obj = {
            "name": self.name,
            "population": self.population,
            "checked": self.checked,
            "seed": self.seed,
            "passed": self.passed,
            "violations": self.violations,
        }
        if include_timing:
            obj["elapsed_seconds"] = self.elapsed
        return obj

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_obj(include_timing), indent=2,
                          sort_keys=True) + "\n"


def _connected_graphs(b: int):
    _, M, _ = connected_scan(b)
    for row in M:
        yield FeynmanGraph(b, tuple(int(x) for x in row))


def _random_connected(rng: random.Random, b_max: int) -> FeynmanGraph:
    """Mixture of the leading/NLO generators over b <= b_max."""
    b = rng.randint(1, b_max)
    if b % 2 == 0:
        return generate_random_melonic(b, rng.random())
    return generate_random_nlo(b, rng.random())


def check_face_formulas(b_max: int = 12, samples_per_b: int = 3,
                        seed=0) -> CheckReport:
    """Melonic graphs have F = 3b/2 + 3; melon-decorated double tadpoles
    have F = 3(b-1)/2 + 4."""
    report = CheckReport("faces",
                         f"generated graphs, b <= {b_max}, "
                         f"{samples_per_b} samples per b plus a "
                         f"deterministic chain", seed=seed)
    t0 = time.monotonic()
    rng = random.Random(seed)
    for b in range(1, b_max + 1):
        expected = 3 * b // 2 + 3 if b % 2 == 0 else 3 * (b - 1) // 2 + 4
        graphs = [generate_random_melonic(b, rng.random()) if b % 2 == 0
                  else generate_random_nlo(b, rng.random())
                  for _ in range(samples_per_b)]
        # systematic chain: always insert on the first edge
        G = generate_random_melonic(2, 0) if b % 2 == 0 else \
            generate_random_nlo(1, 0)
        while G.b < b:
            G = insert_dipole(G, G.zero_edges()[0])
        graphs.append(G)
        for G in graphs:
            report.checked += 1
            F = total_faces(G)
            if F != expected:
                report.add(graph=to_text(G), faces=F, expected=expected)
    report.elapsed = time.monotonic() - t0
    return report


def _flip_pair_cases(G: FeynmanGraph, edges, comps, before):
    """Yield (pair, per-color face-on-pair counts, per-variant deltas)
    over the non-2-edge-cut edge pairs of G."""
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            eL, eR = edges[i], edges[j]
            if is_two_edge_cut(G, eL, eR):
                continue
            fp = tuple(len({comps[ci][eL[0]], comps[ci][eR[0]]})
                       for ci in range(3))
            deltas = {}
            for variant in ("A", "B"):
                m2 = FeynmanGraph(G.b, flip_matching(G, eL, eR, variant))
                after = face_counts(m2)
                deltas[variant] = tuple(a - x for a, x in zip(after, before))
            yield (eL, eR), fp, deltas


def _lemma_violations(report, G, pair, fp, deltas):
    gtxt = None
    for ci in range(3):
        dA = deltas["A"][ci]
        dB = deltas["B"][ci]
        ok = True
        if abs(dA) > 1 or abs(dB) > 1:
            ok = False
        elif fp[ci] == 2 and not (dA == -1 and dB == -1):
            ok = False
        elif fp[ci] == 1 and sorted((dA, dB)) != [0, 1]:
            ok = False
        if not ok:
            if gtxt is None:
                gtxt = to_text(G)
            report.add(graph=gtxt, pair=list(map(list, pair)),
                       color=COLORS[ci], faces_on_pair=fp[ci],
                       delta_A=dA, delta_B=dB)


def check_flip_lemma(samples: int = 10000, seed=0,
                     exhaustive_bmax: int = 3) -> CheckReport:
    """|dF_c| <= 1 for flips of non-2-edge-cut pairs; a pair on two
    color-c faces merges them under both variants; a pair on one color-c
    face splits it under exactly one variant."""
    report = CheckReport(
        "flip",
        f"exhaustive connected graphs b <= {exhaustive_bmax}, all "
        f"non-2-edge-cut pairs; plus {samples} random (graph, pair) "
        f"samples from generators b <= 6", seed=seed)
    t0 = time.monotonic()
    for b in range(1, exhaustive_bmax + 1):
        for G in _connected_graphs(b):
            edges = G.zero_edges()
            comps = [_face_components(G, c) for c in COLORS]
            before = face_counts(G)
            for pair, fp, deltas in _flip_pair_cases(G, edges, comps, before):
                report.checked += 1
                _lemma_violations(report, G, pair, fp, deltas)
    rng = random.Random(seed)
    done = 0
    while done < samples:
        G = _random_connected(rng, 6)
        edges = G.zero_edges()
        if len(edges) < 2:
            continue
        eL, eR = rng.sample(edges, 2)
        if is_two_edge_cut(G, eL, eR):
            continue
        comps = [_face_components(G, c) for c in COLORS]
        before = face_counts(G)
        fp = tuple(len({comps[ci][eL[0]], comps[ci][eR[0]]})
                   for ci in range(3))
        deltas = {}
        for variant in ("A", "B"):
            m2 = FeynmanGraph(G.b, flip_matching(G, eL, eR, variant))
            deltas[variant] = tuple(a - x for a, x in
                                    zip(face_counts(m2), before))
        report.checked += 1
        _lemma_violations(report, G, (eL, eR), fp, deltas)
        done += 1
    report.elapsed = time.monotonic() - t0
    return report


def _corollary_violation(fp, deltas):
    if sum(1 for x in fp if x == 1) < 2:
        return None
    best = max(sum(d) for d in deltas.values())
    if best > 0:
        return None
    if best == 0 and 2 in fp:
        return None
    return best


def check_corollary_total(samples: int = 10000, seed=0,
                          exhaustive_bmax: int = 3) -> CheckReport:
    """When two colors each have a single face on the pair, some flip
    strictly increases F, except possibly dF = 0 when the third color
    has two faces on the pair."""
    report = CheckReport(
        "corollary",
        f"exhaustive connected graphs b <= {exhaustive_bmax}, all "
        f"non-2-edge-cut pairs; plus {samples} random samples from "
        f"generators b <= 6", seed=seed)
    t0 = time.monotonic()
    for b in range(1, exhaustive_bmax + 1):
        for G in _connected_graphs(b):
            edges = G.zero_edges()
            comps = [_face_components(G, c) for c in COLORS]
            before = face_counts(G)
            for pair, fp, deltas in _flip_pair_cases(G, edges, comps, before):
                report.checked += 1
                bad = _corollary_violation(fp, deltas)
                if bad is not None:
                    report.add(graph=to_text(G),
                               pair=list(map(list, pair)),
                               faces_on_pair=list(fp), best_total=bad)
    rng = random.Random(seed)
    done = 0
    while done < samples:
        G = _random_connected(rng, 6)
        edges = G.zero_edges()
        if len(edges) < 2:
            continue
        eL, eR = rng.sample(edges, 2)
        if is_two_edge_cut(G, eL, eR):
            continue
        comps = [_face_components(G, c) for c in COLORS]
        before = face_counts(G)
        fp = tuple(len({comps[ci][eL[0]], comps[ci][eR[0]]})
                   for ci in range(3))
        deltas = {}
        for variant in ("A", "B"):
            m2 = FeynmanGraph(G.b, flip_matching(G, eL, eR, variant))
            deltas[variant] = tuple(a - x for a, x in
                                    zip(face_counts(m2), before))
        report.checked += 1
        bad = _corollary_violation(fp, deltas)
        if bad is not None:
            report.add(graph=to_text(G), pair=[list(eL), list(eR)],
                       faces_on_pair=list(fp), best_total=bad)
        done += 1
    report.elapsed = time.monotonic() - t0
    return report


def check_length2_lemma(b_max: int = 4) -> CheckReport:
    """Every max-face graph carrying a proper face of length 2 has its
    four companion vertices tied by 2-point functions across the two
    bubbles of the face."""
    report = CheckReport(
        "length2", f"max-face census classes for b <= {b_max}")
    t0 = time.monotonic()
    for b in range(1, b_max + 1):
        rep = census(b, dedup_iso=True)
        for ce in rep.buckets[0].classes:
            G = from_text(ce.representative)
            for c in COLORS:
                for face in faces(G, c):
                    if face.length != 2 or not face.proper:
                        continue
                    report.checked += 1
                    bubbles = sorted({v // 4 for v in face.vertices})
                    on_face = set(face.vertices)
                    comp_a = [4 * bubbles[0] + l for l in range(4)
                              if 4 * bubbles[0] + l not in on_face]
                    comp_b = [4 * bubbles[1] + l for l in range(4)
                              if 4 * bubbles[1] + l not in on_face]
                    pairings = [
                        ((comp_a[0], comp_b[0]), (comp_a[1], comp_b[1])),
                        ((comp_a[0], comp_b[1]), (comp_a[1], comp_b[0])),
                    ]
                    ok = any(connected_by_two_point(G, *p1)
                             and connected_by_two_point(G, *p2)
                             for p1, p2 in pairings)
                    if not ok:
                        report.add(graph=to_text(G), color=c,
                                   face_vertices=list(face.vertices))
    report.elapsed = time.monotonic() - t0
    return report


def check_theorem_gmax(b: int) -> CheckReport:
    """Set equality between the max-face classes and the melonic (b even)
    or melon-decorated double tadpole (b odd) classes, both inclusions,
    plus the face-count formulas."""
    report = CheckReport(
        "gmax", f"exhaustive census with iso dedup at b = {b}")
    t0 = time.monotonic()
    rep = census(b, dedup_iso=True)
    recognizer = is_melonic if b % 2 == 0 else is_nlo_tadpole
    expected_two = 0 if b % 2 == 0 else 1
    if rep.min_two_omega != expected_two:
        report.add(reason="min two_omega off", got=rep.min_two_omega,
                   expected=expected_two)
    for bucket in rep.buckets:
        maximal = bucket.two_omega == rep.min_two_omega
        for ce in bucket.classes:
            report.checked += 1
            hit = recognizer(from_text(ce.representative))
            if maximal and not hit:
                report.add(graph=ce.representative, two_omega=bucket.two_omega,
                           reason="max-face class not recognized")
            if not maximal and hit:
                report.add(graph=ce.representative, two_omega=bucket.two_omega,
                           reason="recognized class is not max-face")
    report.elapsed = time.monotonic() - t0
    return report


def check_split_identity(samples: int = 200, seed=0,
                         census_bmax: int = 4) -> CheckReport:
    """F(G) = F(G_L) + F(G_R) - 3 on every 2-edge-cut.

    Exhaustive over every pair of every connected graph with
    b <= census_bmax (jitted bulk route), plus randomized splits through
    the split operation itself, plus odd-odd splices checked against
    F = 3b/2 + 2.
    """
    report = CheckReport(
        "split",
        f"every 2-edge-cut in the b <= {census_bmax} census; {samples} "
        f"random generator splits and odd-odd splices", seed=seed)
    t0 = time.monotonic()
    for b in range(1, census_bmax + 1):
        _, M, _ = connected_scan(b)
        cuts, bad = _kernels.split_identity_bulk(b, M, _sig_table(b))
        report.checked += int(cuts)
        if bad:
            report.add(b=b, reason="bulk split identity violations",
                       count=int(bad))
    rng = random.Random(seed)
    for _ in range(samples):
        b = rng.choice((4, 6, 8))
        G = generate_random_melonic(b, rng.random()) if rng.random() < 0.5 \
            else generate_random_nlo(b - 1, rng.random())
        edges = G.zero_edges()
        eL, eR = rng.sample(edges, 2)
        if not is_two_edge_cut(G, eL, eR):
            continue
        GL, GR = split_two_edge_cut(G, eL, eR)
        report.checked += 1
        if (total_faces(G) != total_faces(GL) + total_faces(GR) - 3
                or GL.b + GR.b != G.b
                or not is_connected(GL) or not is_connected(GR)):
            report.add(graph=to_text(G), pair=[list(eL), list(eR)],
                       left=to_text(GL), right=to_text(GR))
    for _ in range(samples):
        bl = rng.choice((1, 3, 5))
        br = rng.choice((1, 3, 5))
        GL = generate_random_nlo(bl, rng.random())
        GR = generate_random_nlo(br, rng.random())
        G = splice(GL, GR, rng.choice(GL.zero_edges()),
                   rng.choice(GR.zero_edges()))
        report.checked += 1
        if total_faces(G) != 3 * G.b // 2 + 2:
            report.add(graph=to_text(G), reason="odd-odd splice face count",
                       faces=total_faces(G), expected=3 * G.b // 2 + 2)
    report.elapsed = time.monotonic() - t0
    return report


def run_suite(checks=CHECK_NAMES, b_max: int = 3, samples: int = 10000,
              seed=0, gmax_bs=None):
    """Run the selected checks; returns the list of reports."""
    reports = []
    for name in checks:
        if name == "faces":
            reports.append(check_face_formulas(seed=seed))
        elif name == "flip":
            reports.append(check_flip_lemma(samples=samples, seed=seed,
                                            exhaustive_bmax=min(b_max, 3)))
        elif name == "corollary":
            reports.append(check_corollary_total(samples=samples, seed=seed,
                                                 exhaustive_bmax=min(b_max, 3)))
        elif name == "length2":
            reports.append(check_length2_lemma(b_max=min(b_max + 1, 4)))
        elif name == "gmax":
            for b in (gmax_bs or range(1, min(b_max, 4) + 1)):
                reports.append(check_theorem_gmax(b))
        elif name == "split":
            reports.append(check_split_identity(seed=seed,
                                                census_bmax=min(b_max + 1, 4)))
        else:
            raise ValueError(f"unknown check {name!r}")
    return reports
