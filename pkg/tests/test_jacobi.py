"""Criticality notions, genericity and the critical locus."""
from fractions import Fraction

import pytest

from helpers import random_surface_map
from plstrat import (GenericityError, PLMap, Simplex, SimplicialComplex,
                     StructuralError, check_generic, criticality_verdict,
                     directional_links, domain_stratification, h_side_verdicts,
                     is_d_critical, is_h_critical, is_l_critical_surface,
                     jacobi_set, reduced_betti, sphere_verdict,
                     stratify_domain_by_locus, validate_poset)
from plstrat.geometry import cone_is_full, vsub
from plstrat.io import example_map

F = Fraction


@pytest.fixture(scope="module")
def octa() -> PLMap:
    return example_map("octahedron")


@pytest.fixture(scope="module")
def torus() -> PLMap:
    return example_map("torus_grid")


@pytest.fixture(scope="module")
def tetra() -> PLMap:
    return example_map("solid_tetrahedron")


@pytest.fixture(scope="module")
def cones() -> PLMap:
    return example_map("double_cone")


@pytest.fixture(scope="module")
def saddle() -> PLMap:
    return example_map("saddle_patch")


class TestPLMap:
    def test_values_coerced_to_rational_tuples(self, octa):
        assert octa.value("m") == (F(3),)
        assert octa.value("b") == (F(1, 2),)
        assert all(isinstance(x, F) for x in octa.value("a"))

    def test_missing_value_rejected(self):
        dom = SimplicialComplex.from_facets([(0, 1)])
        with pytest.raises(StructuralError):
            PLMap(dom, 1, {0: (F(0),)})

    def test_value_length_must_match_k(self):
        dom = SimplicialComplex.from_facets([(0,)])
        with pytest.raises(StructuralError):
            PLMap(dom, 2, {0: (F(1),)})

    def test_affine_evaluation(self, tetra):
        e = Simplex(("a", "b"))
        mid = tetra.at(e, [F(1, 2), F(1, 2)])
        a, b = tetra.image(e)
        assert mid == tuple((x + y) / 2 for x, y in zip(a, b))
        assert tetra.barycenter_image(e) == mid

    def test_at_rejects_non_convex_weights(self, tetra):
        with pytest.raises(StructuralError):
            tetra.at(("a", "b"), [F(2), F(-1)])


class TestGenericity:
    def test_distinct_heights_pass(self, octa):
        assert check_generic(octa).passed

    def test_planar_projection_passes(self, tetra):
        assert check_generic(tetra).passed

    def test_duplicate_heights_fail(self):
        dom = SimplicialComplex.from_facets([(0, 1), (1, 2)])
        f = PLMap(dom, 1, {0: (F(0),), 1: (F(1),), 2: (F(1),)})
        rep = check_generic(f)
        assert not rep.passed
        assert any(code == "G2" for code, _, _ in rep.violations)

    def test_suspension_input_fails_g2(self, cones):
        # the suspension example keeps opposite equator vertices at one
        # height, so the global audit flags it even though the verdicts at
        # the cone points are still well defined
        rep = check_generic(cones)
        assert not rep.passed


class TestDirectionalLinks:
    def test_octahedron_pole(self, octa):
        up, low = directional_links(octa, Simplex(("m",)), (F(1),))
        assert len(up) == 0
        assert sphere_verdict(low) == "sphere"
        assert len(low.simplices_of_dim(1)) == 4

    def test_octahedron_equator_vertex(self, octa):
        up, low = directional_links(octa, Simplex(("a",)), (F(1),))
        for side in (up, low):
            assert reduced_betti(side).is_trivial
            assert len(side.vertices) > 0

    def test_suspension_cone_point_upper_link_is_s0(self, cones):
        up, _ = directional_links(cones, Simplex(("n",)), (F(1),))
        assert up.dimension == 0
        assert len(up.vertices) == 2

    def test_tie_raises(self):
        dom = SimplicialComplex.from_facets([(0, 1)])
        f = PLMap(dom, 1, {0: (F(0),), 1: (F(0),)})
        with pytest.raises(GenericityError):
            directional_links(f, Simplex((0,)), (F(1),))


class TestHCriticality:
    def test_octahedron_verdicts(self, octa):
        assert is_h_critical(octa, Simplex(("m",)))
        assert is_h_critical(octa, Simplex(("w",)))
        for v in "abcd":
            assert not is_h_critical(octa, Simplex((v,)))

    def test_suspension_cone_points(self, cones):
        assert is_h_critical(cones, Simplex(("n",)))
        assert is_h_critical(cones, Simplex(("s",)))

    def test_side_symmetry(self, octa, torus):
        for f in (octa, torus):
            for v in sorted(f.domain.vertices):
                a, b = h_side_verdicts(f, Simplex((v,)))
                assert a == b

    def test_orientation_flip_swaps_sides(self, tetra):
        # with a boundary the per-side verdicts may differ (a silhouette
        # edge sees an empty side), but flipping the normal only swaps them,
        # so the combined verdict cannot depend on the orientation
        from plstrat.jacobi import _normal_direction
        for e in tetra.domain.simplices_of_dim(1):
            u = _normal_direction(tetra, e)
            up, low = directional_links(tetra, e, u)
            up2, low2 = directional_links(tetra, e, tuple(-c for c in u))
            assert (up, low) == (low2, up2)


class TestDCriticality:
    def test_octahedron_extremum(self, octa):
        assert is_d_critical(octa, Simplex(("m",)))
        assert not is_d_critical(octa, Simplex(("a",)))

    def test_suspension_cone_points_are_d_regular(self, cones):
        assert not is_d_critical(cones, Simplex(("n",)))
        assert not is_d_critical(cones, Simplex(("s",)))

    def test_saddle_is_d_regular(self, saddle):
        assert not is_d_critical(saddle, Simplex(("p",)))

    def test_pointwise_constancy_on_candidates(self, tetra, torus):
        # the differential test must not depend on where in the open
        # simplex the directions are based
        for f in (tetra, torus):
            for s in f.domain.simplices_of_dim(f.k - 1):
                for weights in _interior_weights(len(s)):
                    x = f.at(s, weights)
                    dirs = []
                    star_verts = {v for t in f.domain.simplices
                                  if set(s) <= set(t) for v in t}
                    for v in sorted(star_verts - set(s)):
                        dirs.append(vsub(f.value(v), x))
                    for w in s:
                        d = vsub(f.value(w), x)
                        dirs.append(d)
                        dirs.append(tuple(-c for c in d))
                    assert (not cone_is_full(dirs, f.k)) == is_d_critical(f, s)


def _interior_weights(n: int):
    if n == 1:
        return [[F(1)]]
    rest = [F(1, 4) / (n - 1)] * (n - 1)
    return [[F(1, n)] * n, [F(3, 4)] + rest]


class TestLCriticality:
    def test_octahedron(self, octa):
        assert is_l_critical_surface(octa, Simplex(("m",))) is True
        assert is_l_critical_surface(octa, Simplex(("a",))) is False

    def test_saddle_l_critical_despite_d_regular(self, saddle):
        assert is_l_critical_surface(saddle, Simplex(("p",))) is True

    def test_torus_extrema_and_regular(self, torus):
        assert is_l_critical_surface(torus, Simplex(("v00",))) is True
        assert is_l_critical_surface(torus, Simplex(("v11",))) is False

    def test_undecided_outside_surface_case(self, tetra):
        assert is_l_critical_surface(tetra, Simplex(("a",))) is None


class TestJacobiSet:
    def test_octahedron_poles_under_all_notions(self, octa):
        for notion in ("H", "D", "L"):
            j = jacobi_set(octa, notion)
            assert {v[0] for v in j.complex.simplices_of_dim(0)} == {"m", "w"}

    def test_torus_four_critical_vertices(self, torus):
        j = jacobi_set(torus)
        assert len(j.complex.simplices_of_dim(0)) == 4

    def test_projection_locus_is_simplicial_circle(self, tetra):
        j = jacobi_set(tetra)
        k = j.complex
        assert len(k.simplices_of_dim(0)) == 4
        assert len(k.simplices_of_dim(1)) == 4
        assert sphere_verdict(k) == "sphere"

    def test_face_closed_and_bounded_dimension(self, tetra, torus):
        for f in (tetra, torus):
            j = jacobi_set(f)
            SimplicialComplex(j.complex.simplices)  # closure re-validated
            assert j.complex.dimension <= f.k - 1

    def test_thread_count_does_not_change_result(self, tetra, torus):
        for f in (tetra, torus):
            assert jacobi_set(f, jobs=1).complex == jacobi_set(f, jobs=4).complex

    def test_l_notion_needs_surface(self, tetra):
        with pytest.raises(StructuralError):
            jacobi_set(tetra, "L")

    def test_unknown_notion_rejected(self, octa):
        with pytest.raises(StructuralError):
            jacobi_set(octa, "Q")


class TestDomainStratification:
    def test_octahedron_three_strata(self, octa):
        space = domain_stratification(octa)
        assert len(space.poset) == 3
        assert validate_poset(space.poset)

    def test_torus_five_strata(self, torus):
        space = domain_stratification(torus)
        assert len(space.poset) == 5

    def test_empty_locus_single_stratum(self, octa):
        from plstrat import JacobiSet
        empty = JacobiSet(SimplicialComplex([]), "H", 1)
        space = stratify_domain_by_locus(octa.domain, empty)
        assert len(space.poset) == 1
        assert set(space.assignment.values()) == {"C0"}


class TestMorseCount:
    def test_upper_link_betti_pattern_sums_to_euler(self, octa, torus):
        for f, chi in ((octa, 2), (torus, 0)):
            total = 0
            for v in sorted(f.domain.vertices):
                up, _ = directional_links(f, Simplex((v,)), (F(1),))
                b = reduced_betti(up)
                if b[-1]:
                    total += 1          # local max: empty upper link
                elif b[1]:
                    total += 1          # local min: upper link a full circle
                elif b[0]:
                    total -= b[0]       # saddle, with multiplicity
            assert total == chi

    def test_random_surfaces_satisfy_euler_count(self, rng):
        from plstrat import euler_characteristic
        for _ in range(5):
            f = random_surface_map(rng)
            chi = euler_characteristic(f.domain)
            total = 0
            for v in sorted(f.domain.vertices):
                up, _ = directional_links(f, Simplex((v,)), (F(1),))
                b = reduced_betti(up)
                if b[-1]:
                    total += 1
                elif b[1]:
                    total += 1
                elif b[0]:
                    total -= b[0]
            assert total == chi


def test_verdict_bundle_consistency(octa):
    v = criticality_verdict(octa, Simplex(("m",)))
    assert v.h_critical and v.d_critical and v.l_critical is True
    r = criticality_verdict(octa, Simplex(("a",)))
    assert not r.h_critical and not r.d_critical and r.l_critical is False
