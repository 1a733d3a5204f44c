"""Refinement of critical-value sets in the codomain and the stratification
of the plane they induce.

For k = 1 the image of the critical locus is a finite set of values and the
complement decomposes into open intervals.  For k = 2 the image is a set of
segments; after splitting at pairwise transverse crossings the result is an
honest one-complex embedded in the plane, and faces of the subdivision are
extracted with a half-edge walk using exact orientation predicates.  Anything
tangential, overlapping or concurrent beyond two segments is rejected as
non-generic, never repaired.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .errors import (DegeneracyError, GenericityError, InputError, InternalError,
                     StructuralError)
from .geometry import (canon_key, cross2, dot, frac, on_segment,
                       proper_crossing, segments_share_line_overlap, vadd,
                       vscale, vsub)
from .posets import Poset, StratifiedSpace, wedge_extend

Point = tuple


def _point(p) -> Point:
    return tuple(frac(x) for x in p)


# ---------------------------------------------------------------------------
# planar arrangements of segments

@dataclass(frozen=True)
class Face:
    index: int
    bounded: bool
    cycles: tuple        # walks of directed edges (u, v); first is the outer cycle when bounded
    area2: Fraction      # twice the signed area of the outer cycle (0 if unbounded)


class PlanarArrangement:
    """The subdivision of the plane induced by a set of interior-disjoint
    segments (shared endpoints allowed, crossings must be transverse)."""

    def __init__(self, segments: Sequence[tuple]):
        segs = []
        for p, q in segments:
            p, q = _point(p), _point(q)
            if p == q:
                raise StructuralError("zero-length segment")
            segs.append((p, q))
        self.segments = tuple(segs)
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self):
        segs = self.segments
        cuts: list[dict] = [{Fraction(0): p, Fraction(1): q} for p, q in segs]
        crossing_pairs: dict[Point, set] = {}
        for i in range(len(segs)):
            a, b = segs[i]
            for j in range(i + 1, len(segs)):
                c, d = segs[j]
                if segments_share_line_overlap(a, b, c, d):
                    raise GenericityError(f"segments {i} and {j} overlap along a line")
                x = proper_crossing(a, b, c, d)
                if x is not None:
                    cuts[i][_param(x, a, b)] = x
                    cuts[j][_param(x, c, d)] = x
                    crossing_pairs.setdefault(x, set()).add((i, j))
                    continue
                for e, (u, v) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
                    if on_segment(e, u, v, closed=False):
                        raise GenericityError(
                            f"endpoint {e!r} lies interior to another segment")
        for x, pairs in crossing_pairs.items():
            if len(pairs) > 1:
                raise GenericityError(f"three or more segments meet at {x!r}")
        self.crossing_points = frozenset(crossing_pairs)

        vid: dict[Point, int] = {}
        for i in range(len(segs)):
            for t in sorted(cuts[i]):
                vid.setdefault(cuts[i][t], None)
        self.vertices: list[Point] = sorted(vid)
        vid = {p: n for n, p in enumerate(self.vertices)}
        edges: dict[tuple[int, int], int] = {}
        for i in range(len(segs)):
            ts = sorted(cuts[i])
            for t0, t1 in zip(ts, ts[1:]):
                u, v = vid[cuts[i][t0]], vid[cuts[i][t1]]
                key = (min(u, v), max(u, v))
                if key in edges:
                    raise GenericityError("duplicate sub-segment between two points")
                edges[key] = i
        self.edges: list[tuple[int, int]] = sorted(edges)
        self.edge_source: list[int] = [edges[e] for e in self.edges]
        self._extract_faces()
        self._check_euler()

    def _extract_faces(self):
        verts = self.vertices
        rotation: dict[int, list[int]] = {u: [] for u in range(len(verts))}
        for u, v in self.edges:
            rotation[u].append(v)
            rotation[v].append(u)

        def ccw_cmp(u):
            def cmp(a, b):
                da, db = vsub(verts[a], verts[u]), vsub(verts[b], verts[u])
                ha = 0 if (da[1] > 0 or (da[1] == 0 and da[0] > 0)) else 1
                hb = 0 if (db[1] > 0 or (db[1] == 0 and db[0] > 0)) else 1
                if ha != hb:
                    return ha - hb
                c = cross2(da, db)
                return -1 if c > 0 else (1 if c < 0 else 0)
            return cmp

        for u in rotation:
            rotation[u].sort(key=cmp_to_key(ccw_cmp(u)))
        rot_index = {(u, v): i for u, nbrs in rotation.items() for i, v in enumerate(nbrs)}

        # next half-edge of (u, v): at v, step clockwise from the reversal;
        # this walks each face with its interior on the left.
        def next_he(u, v):
            nbrs = rotation[v]
            i = rot_index[(v, u)]
            return (v, nbrs[(i - 1) % len(nbrs)])

        directed = [(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges]
        directed.sort()
        orbit_of: dict[tuple[int, int], int] = {}
        orbits: list[list[tuple[int, int]]] = []
        for h in directed:
            if h in orbit_of:
                continue
            walk = []
            cur = h
            while cur not in orbit_of:
                orbit_of[cur] = len(orbits)
                walk.append(cur)
                cur = next_he(*cur)
            if cur != h:
                raise InternalError("half-edge walk did not close up")
            orbits.append(walk)

        areas = []
        for walk in orbits:
            a2 = sum(cross2(verts[u], verts[v]) for u, v in walk)
            areas.append(a2)

        positive = [i for i, a in enumerate(areas) if a > 0]
        outer = [i for i, a in enumerate(areas) if a <= 0]

        def walk_vertices(i):
            return [u for u, _ in orbits[i]]

        def strictly_inside(p, i) -> bool:
            walk = orbits[i]
            for u, v in walk:
                if on_segment(p, verts[u], verts[v]):
                    return False
            cnt = 0
            for u, v in walk:
                a, b = verts[u], verts[v]
                if (a[1] > p[1]) != (b[1] > p[1]):
                    x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                    if x > p[0]:
                        cnt ^= 1
            return cnt == 1

        parent: dict[int, int | None] = {}
        for i in outer:
            anchor = verts[min(walk_vertices(i))]
            best = None
            for j in positive:
                if strictly_inside(anchor, j):
                    if best is None or areas[j] < areas[best]:
                        best = j
            parent[i] = best

        order = sorted(positive, key=lambda i: (min(walk_vertices(i)), areas[i]))
        faces: list[Face] = []
        for n, i in enumerate(order):
            holes = tuple(tuple(orbits[h2]) for h2 in sorted(outer) if parent[h2] == i)
            faces.append(Face(index=n, bounded=True,
                              cycles=(tuple(orbits[i]),) + holes, area2=areas[i]))
        unb = tuple(tuple(orbits[i]) for i in sorted(outer) if parent[i] is None)
        faces.append(Face(index=len(order), bounded=False, cycles=unb, area2=Fraction(0)))
        self.faces: list[Face] = faces

    def _check_euler(self):
        v, e, fcount = len(self.vertices), len(self.edges), len(self.faces)
        if v == 0:
            if e != 0 or fcount != 1:
                raise InternalError("empty arrangement must be a single face")
            return
        if v - e + fcount != 1 + self.component_count():
            raise InternalError("Euler relation V - E + F = 1 + C violated")

    # -- queries ------------------------------------------------------------

    def component_count(self) -> int:
        parent = list(range(len(self.vertices)))
        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(i) for i in range(len(self.vertices))})

    def euler_lhs(self) -> int:
        """V - E + F, the unbounded face counted once."""
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_boundary(self, index: int) -> tuple[set, set]:
        """Vertex indices and edge keys appearing on the face's cycles."""
        face = self.faces[index]
        vs: set[int] = set()
        es: set[tuple[int, int]] = set()
        for walk in face.cycles:
            for u, v in walk:
                vs.add(u)
                vs.add(v)
                es.add((min(u, v), max(u, v)))
        return vs, es

    def locate(self, p) -> tuple:
        """The lowest-dimensional cell containing the point: ("v", i),
        ("e", i) or ("f", i)."""
        p = _point(p)
        for i, q in enumerate(self.vertices):
            if p == q:
                return ("v", i)
        for i, (u, v) in enumerate(self.edges):
            if on_segment(p, self.vertices[u], self.vertices[v], closed=False):
                return ("e", i)
        for face in sorted((f for f in self.faces if f.bounded),
                           key=lambda f: (f.area2, f.index)):
            if self._inside_outer(p, face):
                return ("f", face.index)
        return ("f", self.faces[-1].index)

    def _inside_outer(self, p, face: Face) -> bool:
        cnt = 0
        for u, v in face.cycles[0]:
            a, b = self.vertices[u], self.vertices[v]
            if (a[1] > p[1]) != (b[1] > p[1]):
                x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                if x > p[0]:
                    cnt ^= 1
        return cnt == 1

    def bounding_box(self):
        xs = [p[0] for p in self.vertices] or [Fraction(0)]
        ys = [p[1] for p in self.vertices] or [Fraction(0)]
        return (min(xs), min(ys), max(xs), max(ys))

    def face_interior_samples(self, index: int, n: int = 1) -> list[Point]:
        """Deterministic interior points of a face.

        Bounded faces: points slightly off boundary-edge midpoints, with the
        offset halved until location confirms the face; thin faces that defeat
        the cap are reported as a degeneracy.  The unbounded face walks away
        from the bounding box.
        """
        face = self.faces[index]
        x0, y0, x1, y1 = self.bounding_box()
        if not face.bounded:
            return [(x1 + 1 + i, y1 + 1 + i) for i in range(n)]
        vs, es = self.face_boundary(index)
        out: list[Point] = []
        bases: list[tuple[Point, Point]] = []
        for u, v in sorted(es):
            a, b = self.vertices[u], self.vertices[v]
            for j in range(1, n + 1):
                t = Fraction(j, n + 1)
                bases.append((vadd(a, vscale(t, vsub(b, a))), vsub(b, a)))
        for base, d in bases:
            normal = (-d[1], d[0])
            found = None
            for m in range(1, 64):
                for sgn in (1, -1):
                    cand = vadd(base, vscale(Fraction(sgn, 2 ** m), normal))
                    if self.locate(cand) == ("f", index):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None and found not in out:
                out.append(found)
            if len(out) == n:
                return out
        if not out:
            raise DegeneracyError(f"could not sample the interior of face {index}")
        return out


def _param(x, a, b) -> Fraction:
    d = vsub(b, a)
    return dot(vsub(x, a), d) / dot(d, d)


# ---------------------------------------------------------------------------
# refined image of a critical locus

@dataclass(frozen=True, eq=False)
class RefinedImage:
    """The image of the critical locus split into cells that meet only along
    shared sub-cells.

    For k = 1 only `points` is populated.  For k = 2 the arrangement holds
    the split segments; `vertex_sources` lists, per arrangement vertex, the
    locus simplices whose closed image contains it, and multiplicity counts
    the preimage points inside the locus (2 exactly at crossings).
    """
    k: int
    points: tuple
    point_sources: tuple
    multiplicities: tuple
    arrangement: PlanarArrangement | None
    vertex_sources: tuple
    edge_sourcesimplices: tuple


def refine_image(f, j) -> RefinedImage:
    """Split the image of the critical locus at crossings.

    k = 1: the critical values in increasing order.  k = 2: every locus edge
    maps to a segment; all pairwise crossings must be transverse and no three
    segments may meet in a non-vertex point.
    """
    k = f.k
    jc = j.complex
    if k == 1:
        by_value: dict = {}
        for s in jc.simplices_of_dim(0):
            by_value.setdefault(f.value(s[0])[0], []).append(s)
        points = tuple(sorted(by_value))
        sources = tuple(tuple(sorted(by_value[p], key=canon_key)) for p in points)
        mult = tuple(len(src) for src in sources)
        return RefinedImage(k=1, points=points, point_sources=sources,
                            multiplicities=mult, arrangement=None,
                            vertex_sources=(), edge_sourcesimplices=())
    if k != 2:
        raise StructuralError("image refinement supports k in {1, 2}")

    jverts = jc.simplices_of_dim(0)
    images: dict = {}
    for s in jverts:
        p = f.value(s[0])
        if p in images:
            raise GenericityError(
                f"locus vertices {images[p]!r} and {s!r} share an image point")
        images[p] = s
    jedges = jc.simplices_of_dim(1)
    segments = [(f.value(e[0]), f.value(e[1])) for e in jedges]
    arr = PlanarArrangement(segments)
    vertex_sources = []
    mult = []
    for p in arr.vertices:
        srcs: list = []
        count = 0
        if p in images:
            srcs.append(images[p])
            count += 1
        for e, (a, b) in zip(jedges, segments):
            if on_segment(p, a, b, closed=False):
                srcs.append(e)
                count += 1
            elif p in (a, b):
                srcs.append(e)
        vertex_sources.append(tuple(sorted(srcs, key=canon_key)))
        mult.append(count)
    for p, m in zip(arr.vertices, mult):
        if p in arr.crossing_points and m != 2:
            raise InternalError("crossing point without preimage multiplicity 2")
    edge_src = tuple(jedges[i] for i in arr.edge_source)
    return RefinedImage(k=2, points=tuple(arr.vertices),
                        point_sources=tuple(vertex_sources),
                        multiplicities=tuple(mult), arrangement=arr,
                        vertex_sources=tuple(vertex_sources),
                        edge_sourcesimplices=edge_src)


def containment_comparable(r: RefinedImage) -> bool:
    """Check that cells of the refined image meet only in shared sub-cells:
    distinct cells have disjoint relative interiors, and any point common to
    two cells is a vertex cell of both.  For a family of points and straight
    segments this is exactly the containment-comparability of closed cells."""
    if r.k == 1:
        return len(set(r.points)) == len(r.points)
    arr = r.arrangement
    pts = arr.vertices
    for i, (u, v) in enumerate(arr.edges):
        for p in pts:
            if on_segment(p, pts[u], pts[v], closed=False):
                return False
        for jdx in range(i + 1, len(arr.edges)):
            a, b = arr.edges[jdx]
            if proper_crossing(pts[u], pts[v], pts[a], pts[b]) is not None:
                return False
            if segments_share_line_overlap(pts[u], pts[v], pts[a], pts[b]):
                return False
    return True


# ---------------------------------------------------------------------------
# codomain stratification

@dataclass(frozen=True, eq=False)
class CodomainStratification:
    """Stratification of R^k by the refined critical-value cells and the
    connected components of their complement."""
    k: int
    space: StratifiedSpace
    geometry: dict
    refined: RefinedImage

    def locate(self, y) -> str:
        """Label of the lowest-dimensional stratum containing y."""
        if self.k == 1:
            y = frac(y[0] if isinstance(y, (tuple, list)) else y)
            pts = self.refined.points
            for i, p in enumerate(pts):
                if y == p:
                    return f"p{i}"
            lo = sum(1 for p in pts if p < y)
            return f"i{lo}"
        kind, idx = self.refined.arrangement.locate(y)
        if kind == "f" and idx == len(self.refined.arrangement.faces) - 1:
            return "f_out"
        return f"{kind}{idx}"


def build_codomain_stratification(f, j) -> CodomainStratification:
    refined = refine_image(f, j)
    return stratification_from_refined(refined)


# label prefixes fix the cell dimension across every stratification here
_STRATUM_DIM = {"p": 0, "v": 0, "z": 0, "i": 1, "e": 1, "c": 1, "f": 2}


def stratum_dimension(label: str) -> int:
    return _STRATUM_DIM[label[0]]


def stratification_from_refined(refined: RefinedImage) -> CodomainStratification:
    if refined.k == 1:
        pts = refined.points
        n = len(pts)
        pcells = [f"p{i}" for i in range(n)]
        icells = [f"i{i}" for i in range(n + 1)]
        pairs = []
        for i in range(n):
            pairs.append((pcells[i], icells[i]))
            pairs.append((pcells[i], icells[i + 1]))
        if n == 0:
            poset = Poset(icells, [])
        else:
            poset = wedge_extend(Poset(pcells, []), icells, pairs)
        geometry: dict = {}
        for i, p in enumerate(pts):
            geometry[pcells[i]] = p
        for i in range(n + 1):
            lo = pts[i - 1] if i > 0 else None
            hi = pts[i] if i < n else None
            geometry[icells[i]] = (lo, hi)
        cells = frozenset(pcells) | frozenset(icells)
        space = StratifiedSpace(poset=poset, cells=cells,
                                closure=frozenset(pairs),
                                assignment={c: c for c in cells})
        return CodomainStratification(k=1, space=space, geometry=geometry,
                                      refined=refined)

    arr = refined.arrangement
    vcells = [f"v{i}" for i in range(len(arr.vertices))]
    ecells = [f"e{i}" for i in range(len(arr.edges))]
    def fname(face: Face) -> str:
        return f"f{face.index}" if face.bounded else "f_out"
    fcells = [fname(face) for face in arr.faces]

    incidence = []
    for i, (u, v) in enumerate(arr.edges):
        incidence.append((f"v{u}", ecells[i]))
        incidence.append((f"v{v}", ecells[i]))
    wedge_pairs = []
    for face in arr.faces:
        vs, es = arr.face_boundary(face.index)
        for u in sorted(vs):
            wedge_pairs.append((f"v{u}", fname(face)))
        for ekey in sorted(es):
            wedge_pairs.append((f"e{arr.edges.index(ekey)}", fname(face)))
    base = Poset(vcells + ecells, incidence) if vcells or ecells else Poset([], [])
    poset = wedge_extend(base, fcells, wedge_pairs)

    geometry = {}
    for i, p in enumerate(arr.vertices):
        geometry[vcells[i]] = p
    for i, (u, v) in enumerate(arr.edges):
        geometry[ecells[i]] = (arr.vertices[u], arr.vertices[v])
    for face in arr.faces:
        geometry[fname(face)] = face
    cells = frozenset(vcells) | frozenset(ecells) | frozenset(fcells)
    closure = frozenset(incidence) | frozenset(wedge_pairs)
    space = StratifiedSpace(poset=poset, cells=cells, closure=closure,
                            assignment={c: c for c in cells})
    return CodomainStratification(k=2, space=space, geometry=geometry,
                                  refined=refined)


# ---------------------------------------------------------------------------
# singular loci of two-parameter families

@dataclass(frozen=True)
class SingularLocus:
    """A drawn apparent contour: polyline strands in the plane with marked
    birth/death vertices.  A strand whose first and last points agree is
    closed."""
    strands: tuple
    cusp_marks: tuple = ()

    def __post_init__(self):
        strands = tuple(tuple(_point(p) for p in s) for s in self.strands)
        for s in strands:
            if len(s) < 2:
                raise InputError("each strand needs at least two points")
        marks = tuple((int(i), int(v)) for i, v in self.cusp_marks)
        for i, v in marks:
            if not (0 <= i < len(strands)) or not (0 <= v < len(strands[i])):
                raise InputError(f"cusp mark {(i, v)!r} out of range")
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "cusp_marks", marks)

    def is_closed(self, i: int) -> bool:
        return self.strands[i][0] == self.strands[i][-1]


@dataclass(frozen=True, eq=False)
class LocusStratification:
    """Stratification of the plane by a singular locus: marked 0-cells,
    strand chains between them, and complement faces."""
    space: StratifiedSpace
    geometry: dict
    marks: dict            # zero-cell label -> frozenset of mark kinds
    arrangement: PlanarArrangement

    def zero_cells(self) -> list[str]:
        return sorted(self.marks)


def _strand_segments(strand, closed):
    pts = strand[:-1] if closed else strand
    n = len(pts)
    segs = []
    count = n if closed else n - 1
    for i in range(count):
        a, b = pts[i], pts[(i + 1) % n]
        segs.append((a, b))
    return pts, segs


def stratify_singular_locus(locus: SingularLocus,
                            extra_cuts: Sequence[tuple] = ()) -> LocusStratification:
    """Stratify the plane by a singular locus.

    Zero-cells appear at strand endpoints, at marked birth/death vertices, at
    transverse crossings between strands, and at vertical tangencies, which
    are vertices where consecutive x-increments change sign strictly; a zero
    x-increment (a vertical segment) is rejected as non-generic.  `extra_cuts`
    exists so tests can inject unneeded 0-cells and watch the coarseness
    check fail.
    """
    special: dict[Point, set] = {}

    def mark(p, kind):
        special.setdefault(p, set()).add(kind)

    all_segments: list[tuple] = []
    seg_strand: list[int] = []
    for si, strand in enumerate(locus.strands):
        closed = locus.is_closed(si)
        pts, segs = _strand_segments(strand, closed)
        n = len(pts)
        dx = []
        for a, b in segs:
            d = b[0] - a[0]
            if d == 0:
                raise GenericityError(
                    f"vertical segment in strand {si}; tangency direction undefined")
            dx.append(d)
        if not closed:
            mark(pts[0], "endpoint")
            mark(pts[-1], "endpoint")
        idxs = range(n) if closed else range(1, n - 1)
        for i in idxs:
            before = dx[(i - 1) % len(dx)] if closed else dx[i - 1]
            after = dx[i % len(dx)] if closed else dx[i]
            if (before > 0) != (after > 0):
                mark(pts[i], "tangency")
        all_segments.extend(segs)
        seg_strand.extend(si for _ in segs)
    for si, vi in locus.cusp_marks:
        strand = locus.strands[si]
        mark(strand[vi], "cusp")
    for si, vi in extra_cuts:
        strand = locus.strands[si]
        mark(strand[vi], "extra")

    arr = PlanarArrangement(all_segments)
    for p in arr.crossing_points:
        mark(p, "crossing")

    for p in special:
        if arr.locate(p)[0] != "v":
            raise InternalError(f"marked point {p!r} is not an arrangement vertex")

    zero_points = sorted(special)
    zid = {p: f"z{i}" for i, p in enumerate(zero_points)}
    marks = {zid[p]: frozenset(special[p]) for p in zero_points}

    # chains: connected runs of arrangement edges avoiding the special points
    parent = {}
    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for i in range(len(arr.edges)):
        parent[("e", i)] = ("e", i)
    incident: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(arr.edges):
        incident.setdefault(u, []).append(i)
        incident.setdefault(v, []).append(i)
    for u, eis in incident.items():
        if arr.vertices[u] in special:
            continue
        if len(eis) != 2:
            raise GenericityError(
                f"unmarked point {arr.vertices[u]!r} has degree {len(eis)}")
        parent[find(("e", eis[0]))] = find(("e", eis[1]))
    groups: dict = {}
    for i in range(len(arr.edges)):
        groups.setdefault(find(("e", i)), []).append(i)
    chain_lists = sorted(groups.values())
    cid_of_edge: dict[int, str] = {}
    chain_cells = []
    for n, eis in enumerate(chain_lists):
        cell = f"c{n}"
        chain_cells.append(cell)
        for i in eis:
            cid_of_edge[i] = cell

    incidence = set()
    for i, (u, v) in enumerate(arr.edges):
        for w in (u, v):
            p = arr.vertices[w]
            if p in special:
                incidence.add((zid[p], cid_of_edge[i]))
    def fname(face: Face) -> str:
        return f"f{face.index}" if face.bounded else "f_out"
    wedge_pairs = set()
    fcells = []
    for face in arr.faces:
        fcells.append(fname(face))
        vs, es = arr.face_boundary(face.index)
        for u in sorted(vs):
            p = arr.vertices[u]
            if p in special:
                wedge_pairs.add((zid[p], fname(face)))
        for ekey in sorted(es):
            wedge_pairs.add((cid_of_edge[arr.edges.index(ekey)], fname(face)))

    base = Poset(list(zid.values()) + chain_cells, sorted(incidence))
    poset = wedge_extend(base, fcells, sorted(wedge_pairs))

    geometry: dict = {}
    for p, z in zid.items():
        geometry[z] = p
    for n, eis in enumerate(chain_lists):
        geometry[f"c{n}"] = tuple((arr.vertices[arr.edges[i][0]],
                                   arr.vertices[arr.edges[i][1]]) for i in eis)
    for face in arr.faces:
        geometry[fname(face)] = face
    cells = frozenset(zid.values()) | frozenset(chain_cells) | frozenset(fcells)
    closure = frozenset(incidence) | frozenset(wedge_pairs)
    space = StratifiedSpace(poset=poset, cells=cells, closure=closure,
                            assignment={c: c for c in cells})
    return LocusStratification(space=space, geometry=geometry, marks=marks,
                               arrangement=arr)


def coarseness_check(ls: LocusStratification) -> tuple[bool, list[str]]:
    """A stratification is coarse when no 0-cell can be absorbed: every
    0-cell either carries a structural mark (crossing, cusp, tangency,
    endpoint) or has degree other than two, so merging its incident 1-cells
    would erase required structure.  Returns (is_coarse, removable cells)."""
    arr = ls.arrangement
    degree: dict[Point, int] = {}
    for u, v in arr.edges:
        for w in (u, v):
            p = arr.vertices[w]
            degree[p] = degree.get(p, 0) + 1
    removable = []
    for z in sorted(ls.marks):
        kinds = ls.marks[z] - {"extra"}
        if kinds:
            continue
        if degree.get(ls.geometry[z], 0) == 2:
            removable.append(z)
    return (not removable, removable)


# ---------------------------------------------------------------------------
# svg rendering

_PALETTE = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee",
            "#aa3377", "#bbbbbb", "#222255", "#225555", "#553311")


def _f(x) -> str:
    return f"{float(x):.6f}"


def render_svg(strat) -> str:
    """Deterministic SVG for a codomain or locus stratification."""
    if isinstance(strat, CodomainStratification) and strat.k == 1:
        return _render_line_svg(strat)
    arr = strat.arrangement if isinstance(strat, LocusStratification) \
        else strat.refined.arrangement
    x0, y0, x1, y1 = arr.bounding_box()
    pad = max((x1 - x0), (y1 - y0), Fraction(1)) / 10
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    labels = sorted(strat.space.cells)
    color = {c: _PALETTE[i % len(_PALETTE)] for i, c in enumerate(labels)}
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}">']
    lines.append(f'  <rect x="{_f(x0)}" y="{_f(-y1)}" width="{_f(w)}" height="{_f(h)}" fill="{color.get("f_out", "#ffffff")}" fill-opacity="0.15"/>')
    for face in arr.faces:
        if not face.bounded:
            continue
        walk = face.cycles[0]
        pts = " ".join(f"{_f(arr.vertices[u][0])},{_f(-arr.vertices[u][1])}" for u, _ in walk)
        lines.append(f'  <polygon points="{pts}" fill="{color.get(f"f{face.index}", "#dddddd")}" fill-opacity="0.35" stroke="none"/>')
    for i, (u, v) in enumerate(arr.edges):
        a, b = arr.vertices[u], arr.vertices[v]
        lines.append(f'  <line x1="{_f(a[0])}" y1="{_f(-a[1])}" x2="{_f(b[0])}" y2="{_f(-b[1])}" stroke="#333333" stroke-width="{_f(pad / 8)}"/>')
    for i, p in enumerate(arr.vertices):
        lines.append(f'  <circle cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(pad / 4)}" fill="#111111"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _render_line_svg(strat: CodomainStratification) -> str:
    pts = strat.refined.points
    if pts:
        lo, hi = min(pts), max(pts)
    else:
        lo = hi = Fraction(0)
    pad = max(hi - lo, Fraction(1)) / 4
    x0, x1 = lo - pad, hi + pad
    labels = sorted(strat.space.cells)
    color = {c: _PALETTE[i % len(_PALETTE)] for i, c in enumerate(labels)}
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(x0)} -1 {_f(x1 - x0)} 2">']
    bounds = [x0] + list(pts) + [x1]
    for i in range(len(bounds) - 1):
        a, b = bounds[i], bounds[i + 1]
        lines.append(f'  <line x1="{_f(a)}" y1="0" x2="{_f(b)}" y2="0" stroke="{color.get(f"i{i}", "#999999")}" stroke-width="0.12"/>')
    for i, p in enumerate(pts):
        lines.append(f'  <circle cx="{_f(p)}" cy="0" r="0.18" fill="{color.get(f"p{i}", "#111111")}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
