"""Finite abstract simplicial complexes and their combinatorial operations.

Simplices are sorted tuples of vertex labels; a complex is a face-closed
finite set of simplices.  Everything is immutable, so the operations below
return fresh objects and can be called from worker threads freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import EmptyComplexError, NotAMemberError, StructuralError
from .geometry import canon_key
from .posets import MonotoneMap, Poset, StratifiedSpace, chain_poset


class Simplex(tuple):
    """A simplex as a strictly increasing tuple of vertex labels."""

    def __new__(cls, vertices: Iterable):
        vs = tuple(sorted(vertices, key=canon_key))
        if len(set(vs)) != len(vs):
            raise StructuralError(f"repeated vertex in simplex {vs!r}")
        if not vs:
            raise StructuralError("a simplex needs at least one vertex")
        return super().__new__(cls, vs)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def faces(self) -> Iterable["Simplex"]:
        """All nonempty faces, the simplex itself included."""
        for r in range(1, len(self) + 1):
            for c in combinations(self, r):
                yield Simplex(c)

    def boundary(self) -> list["Simplex"]:
        """Codimension-one faces; empty for a vertex."""
        if len(self) == 1:
            return []
        return [Simplex(self[:i] + self[i + 1:]) for i in range(len(self))]

    def __repr__(self) -> str:
        return f"Simplex({list(self)!r})"


class SimplicialComplex:
    """A face-closed set of simplices.  May be empty."""

    def __init__(self, simplices: Iterable, *, check: bool = True):
        simp = frozenset(Simplex(s) for s in simplices)
        if check:
            for s in simp:
                for f in s.boundary():
                    if f not in simp:
                        raise StructuralError(
                            f"not face-closed: {f!r} missing under {s!r}")
        self.simplices = simp

    @classmethod
    def from_facets(cls, facets: Iterable) -> "SimplicialComplex":
        """Build the face closure of the given generating simplices."""
        simp: set = set()
        for f in facets:
            simp.update(Simplex(f).faces())
        return cls(simp, check=False)

    @property
    def dimension(self) -> int:
        """Max simplex dimension; -1 for the empty complex."""
        return max((s.dim for s in self.simplices), default=-1)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for s in self.simplices for v in s)

    def facets(self) -> list[Simplex]:
        """Maximal simplices, in deterministic order."""
        out = [s for s in self.simplices
               if not any(s != t and set(s) < set(t) for t in self.simplices)]
        return sorted(out, key=canon_key)

    def simplices_of_dim(self, d: int) -> list[Simplex]:
        return sorted((s for s in self.simplices if s.dim == d), key=canon_key)

    def sorted_simplices(self) -> list[Simplex]:
        return sorted(self.simplices, key=lambda s: (s.dim, canon_key(s)))

    def is_pure(self) -> bool:
        if not self.simplices:
            return True
        d = self.dimension
        return all(f.dim == d for f in self.facets())

    def __contains__(self, s) -> bool:
        try:
            return Simplex(s) in self.simplices
        except StructuralError:
            return False

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.simplices)} simplices, dim {self.dimension})"

    def _require(self, s: Simplex):
        if s not in self.simplices:
            raise NotAMemberError(f"{s!r} is not a simplex of the complex")

    def _require_nonempty(self):
        if not self.simplices:
            raise EmptyComplexError("operation undefined on the empty complex")


def star(k: SimplicialComplex, sigma) -> SimplicialComplex:
    """Closed star: all cofaces of sigma together with their faces."""
    sigma = Simplex(sigma)
    k._require(sigma)
    cofaces = {t for t in k.simplices if set(sigma) <= set(t)}
    return SimplicialComplex.from_facets(cofaces)


def open_star(k: SimplicialComplex, sigma) -> frozenset:
    """The cofaces of sigma themselves (not face-closed)."""
    sigma = Simplex(sigma)
    k._require(sigma)
    return frozenset(t for t in k.simplices if set(sigma) <= set(t))


def link(k: SimplicialComplex, sigma) -> SimplicialComplex:
    """All simplices tau disjoint from sigma with tau + sigma in the complex."""
    sigma = Simplex(sigma)
    k._require(sigma)
    out = set()
    for t in k.simplices:
        ts = set(t)
        ss = set(sigma)
        if ss <= ts and ts != ss:
            rest = tuple(v for v in t if v not in ss)
            out.add(Simplex(rest))
    return SimplicialComplex(out, check=False)


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join of complexes on disjoint vertex sets."""
    if a.vertices & b.vertices:
        raise StructuralError("join requires disjoint vertex sets")
    out = set(a.simplices) | set(b.simplices)
    for s in a.simplices:
        for t in b.simplices:
            out.add(Simplex(tuple(s) + tuple(t)))
    return SimplicialComplex(out, check=False)


def native_stratification(k: SimplicialComplex) -> StratifiedSpace:
    """The face-order stratification: each point of the carrier belongs to the
    lowest-dimensional simplex containing it, so cells are the simplices
    themselves and the poset is the face order."""
    k._require_nonempty()
    poset = face_poset(k)
    closure = frozenset((f, s) for s in k.simplices for f in s.faces() if f != s)
    return StratifiedSpace(poset=poset, cells=frozenset(k.simplices),
                           closure=closure,
                           assignment={s: s for s in k.simplices})


def face_poset(k: SimplicialComplex) -> Poset:
    k._require_nonempty()
    rel = [(f, s) for s in k.simplices for f in s.boundary()]
    return Poset(k.simplices, rel)


def skeletal_filtration(k: SimplicialComplex) -> MonotoneMap:
    """Dimension as a monotone map from the face poset onto 0..dim."""
    k._require_nonempty()
    target = chain_poset(range(k.dimension + 1))
    return MonotoneMap(face_poset(k), target, {s: s.dim for s in k.simplices})


# ---------------------------------------------------------------------------
# manifold / sphere recognition

@dataclass(frozen=True)
class ManifoldReport:
    """Outcome of the combinatorial manifold checks.

    `link_checks` maps each simplex to a verdict "sphere" / "not-sphere" /
    "undecided"; sphere recognition is only attempted through dimension two,
    higher-dimensional links are reported undecided.
    """
    is_pure: bool
    is_weak_pseudomanifold: bool
    complex_verdict: str
    link_checks: dict
    notes: tuple = ()


def _is_single_cycle(k: SimplicialComplex) -> bool:
    verts = k.vertices
    edges = k.simplices_of_dim(1)
    if k.dimension != 1 or not verts or len(edges) != len(verts):
        return False
    deg: dict = {v: 0 for v in verts}
    for e in edges:
        deg[e[0]] += 1
        deg[e[1]] += 1
    if any(d != 2 for d in deg.values()):
        return False
    return _is_connected(k)


def _is_connected(k: SimplicialComplex) -> bool:
    verts = list(k.vertices)
    if not verts:
        return False
    adj: dict = {v: set() for v in verts}
    for e in k.simplices_of_dim(1):
        adj[e[0]].add(e[1])
        adj[e[1]].add(e[0])
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** s.dim for s in k.simplices)


def sphere_verdict(k: SimplicialComplex) -> str:
    """Classify a complex as a sphere of dimension <= 2 when possible.

    The empty complex counts as the (-1)-sphere, matching its role as the
    link of a facet in a closed pseudomanifold.
    """
    d = k.dimension
    if d == -1:
        return "sphere"
    if d == 0:
        return "sphere" if len(k.simplices) == 2 else "not-sphere"
    if d == 1:
        return "sphere" if _is_single_cycle(k) else "not-sphere"
    if d == 2:
        if not k.is_pure():
            return "not-sphere"
        tri_per_edge: dict = {}
        for t in k.simplices_of_dim(2):
            for e in t.boundary():
                tri_per_edge[e] = tri_per_edge.get(e, 0) + 1
        if any(c != 2 for c in tri_per_edge.values()):
            return "not-sphere"
        if not _is_connected(k):
            return "not-sphere"
        for v in k.vertices:
            if not _is_single_cycle(link(k, (v,))):
                return "not-sphere"
        return "sphere" if euler_characteristic(k) == 2 else "not-sphere"
    return "undecided"


def manifold_check(k: SimplicialComplex) -> ManifoldReport:
    """Weak pseudomanifold check plus per-link sphere verdicts.

    Weak means: pure, every ridge in exactly two facets, all links connected.
    A non-pure complex is reported (never raised) with the failure noted.
    """
    k._require_nonempty()
    notes: list[str] = []
    pure = k.is_pure()
    if not pure:
        notes.append("complex is not pure")
    n = k.dimension
    ridge_count: dict = {}
    for f in k.simplices_of_dim(n):
        for r in f.boundary():
            ridge_count[r] = ridge_count.get(r, 0) + 1
    closed = all(c == 2 for c in ridge_count.values())
    if not closed and pure:
        notes.append("some ridge is not shared by exactly two facets")

    link_checks: dict = {}
    links_connected = True
    for s in k.sorted_simplices():
        lk = link(k, s)
        link_checks[s] = sphere_verdict(lk)
        if s.dim < n and lk.dimension >= 1 and not _is_connected(lk):
            links_connected = False
    if not links_connected:
        notes.append("some link is disconnected")

    return ManifoldReport(
        is_pure=pure,
        is_weak_pseudomanifold=pure and closed and links_connected,
        complex_verdict=sphere_verdict(k),
        link_checks=link_checks,
        notes=tuple(notes),
    )
