"""Shared random generators and the independent homology oracle.

Everything here is deliberately low-tech: the oracle uses dense 0/1 row
matrices and textbook elimination so that it shares no code path with the
package's bit-packed reduction, and the generators rejection-sample until
the exact-arithmetic validators accept the instance.
"""
from __future__ import annotations

import random
from fractions import Fraction

from plstrat import (GenericityError, JacobiSet, PlanarArrangement, PLMap,
                     Poset, SimplicialComplex)
from plstrat.io import example_map


# ---------------------------------------------------------------------------
# naive GF(2) homology oracle

def _row_rank(rows: list[list[int]]) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col]),
                     None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                rows[r] = [(x + y) % 2 for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def naive_reduced_betti(k: SimplicialComplex) -> dict[int, int]:
    """Reduced Z/2 Betti numbers of the augmented complex, by dense
    row-echelon elimination on plain integer lists."""
    by_dim: dict[int, list[tuple]] = {-1: [()]}
    for s in k.sorted_simplices():
        by_dim.setdefault(s.dim, []).append(tuple(s))
    top = max(by_dim)
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        row_index = {s: i for i, s in enumerate(by_dim[d - 1])}
        columns = []
        for c in by_dim.get(d, []):
            col = [0] * len(row_index)
            if d == 0:
                col[row_index[()]] = 1
            else:
                for i in range(len(c)):
                    col[row_index[c[:i] + c[i + 1:]]] = 1
            columns.append(col)
        ranks[d] = _row_rank([list(r) for r in zip(*columns)]) if columns else 0
    return {d: len(by_dim.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
            for d in range(-1, top + 1)}


# ---------------------------------------------------------------------------
# random instances

def random_complex(rng: random.Random, max_simplices: int = 30) -> SimplicialComplex:
    while True:
        nv = rng.randint(1, 7)
        facets = []
        for _ in range(rng.randint(1, 6)):
            size = rng.randint(1, min(4, nv))
            facets.append(tuple(rng.sample(range(nv), size)))
        k = SimplicialComplex.from_facets(facets)
        if len(k) <= max_simplices:
            return k


def random_poset(rng: random.Random, max_elements: int = 8) -> Poset:
    # relations only point from lower to higher index, so the transitive
    # closure of any sample is automatically antisymmetric
    n = rng.randint(1, max_elements)
    labels = [f"x{i}" for i in range(n)]
    rel = [(labels[i], labels[j])
           for i in range(n) for j in range(i + 1, n)
           if rng.random() < 0.3]
    return Poset(labels, rel)


_SURFACES: list[SimplicialComplex] = []


def closed_surfaces() -> list[SimplicialComplex]:
    if not _SURFACES:
        _SURFACES.append(example_map("octahedron").domain)
        _SURFACES.append(example_map("torus_grid").domain)
    return _SURFACES


def random_surface_map(rng: random.Random) -> PLMap:
    """A height with distinct random integer values on a small closed
    surface; distinct values give every k=1 genericity condition."""
    dom = rng.choice(closed_surfaces())
    verts = sorted(dom.vertices)
    vals = rng.sample(range(-10 * len(verts), 10 * len(verts)), len(verts))
    return PLMap(dom, 1, {v: (Fraction(x),) for v, x in zip(verts, vals)})


def random_segments(rng: random.Random, max_segments: int = 12,
                    attempts: int = 500):
    """A connected generic arrangement of integer chords of a square.

    Chords with endpoints on opposite sides cross often, so rejection
    sampling quickly finds a set that the exact validator accepts and whose
    union is connected."""
    for _ in range(attempts):
        n = rng.randint(2, max_segments)
        segs = []
        for _ in range(n):
            if rng.random() < 0.5:
                a = (Fraction(-20), Fraction(rng.randint(-19, 19)))
                b = (Fraction(20), Fraction(rng.randint(-19, 19)))
            else:
                a = (Fraction(rng.randint(-19, 19)), Fraction(-20))
                b = (Fraction(rng.randint(-19, 19)), Fraction(20))
            segs.append((a, b))
        ends = [p for s in segs for p in s]
        if len(set(ends)) != len(ends):
            continue
        try:
            arr = PlanarArrangement(segs)
        except GenericityError:
            continue
        if arr.component_count() == 1:
            return segs, arr
    raise AssertionError("segment sampler exhausted its attempts")


def segments_as_map(segs) -> tuple[PLMap, JacobiSet]:
    """Wrap a segment set as a disjoint-edges map whose critical locus is
    the whole domain, so image refinement applies to it directly."""
    facets = [(2 * i, 2 * i + 1) for i in range(len(segs))]
    dom = SimplicialComplex.from_facets(facets)
    values = {}
    for i, (a, b) in enumerate(segs):
        values[2 * i] = a
        values[2 * i + 1] = b
    f = PLMap(dom, 2, values)
    return f, JacobiSet(complex=dom, notion="H", k=2)
