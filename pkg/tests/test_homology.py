"""Reduced Z/2 homology against hand values and the independent oracle."""
from itertools import combinations

from helpers import naive_reduced_betti, random_complex
from plstrat import (SimplicialComplex, boundary_columns, euler_characteristic,
                     is_h_nontrivial, join, reduced_betti)


def boundary_sphere(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(combinations(range(n + 2), n + 1))


def test_empty_complex_has_augmentation_class():
    b = reduced_betti(SimplicialComplex([]))
    assert b[-1] == 1
    assert b.as_dict() == {-1: 1}
    assert is_h_nontrivial(SimplicialComplex([]))


def test_two_points():
    b = reduced_betti(SimplicialComplex.from_facets([("x",), ("y",)]))
    assert b[-1] == 0 and b[0] == 1


def test_four_cycle():
    b = reduced_betti(SimplicialComplex.from_facets([(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert b[0] == 0 and b[1] == 1


def test_single_arc_is_trivial():
    arc = SimplicialComplex.from_facets([(0, 1), (1, 2)])
    assert not is_h_nontrivial(arc)
    assert reduced_betti(arc).is_trivial


def test_two_disjoint_arcs():
    k = SimplicialComplex.from_facets([(0, 1), (1, 2), (3, 4), (4, 5)])
    assert is_h_nontrivial(k)
    assert reduced_betti(k)[0] == 1


def test_out_of_range_degrees_read_zero():
    b = reduced_betti(SimplicialComplex.from_facets([(0,)]))
    assert b[7] == 0 and b[-3] == 0


def test_boundary_of_boundary_vanishes():
    k = boundary_sphere(2)
    cols = boundary_columns(k)
    for d in range(1, k.dimension + 1):
        lower = cols[d - 1]
        for mask in cols[d]:
            acc = 0
            i = 0
            while mask:
                if mask & 1:
                    acc ^= lower[i]
                mask >>= 1
                i += 1
            assert acc == 0


def test_boundary_spheres_up_to_dim_three():
    for n in range(4):
        b = reduced_betti(boundary_sphere(n))
        expected = {d: (1 if d == n else 0) for d in range(-1, n + 1)}
        assert b.as_dict() == expected


def test_cones_are_trivial():
    pt = SimplicialComplex.from_facets([("apex",)])
    for base in (boundary_sphere(0), boundary_sphere(1),
                 SimplicialComplex.from_facets([(0, 1), (2, 3)])):
        assert reduced_betti(join(pt, base)).is_trivial


def test_euler_characteristic_consistency(rng):
    for _ in range(15):
        k = random_complex(rng)
        b = reduced_betti(k)
        alt = sum((-1) ** d * v for d, v in b.as_dict().items() if d >= 0)
        assert euler_characteristic(k) == alt + 1


def test_matches_naive_oracle(rng):
    for _ in range(15):
        k = random_complex(rng)
        assert reduced_betti(k).as_dict() == naive_reduced_betti(k)
