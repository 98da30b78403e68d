"""Core chirotope structure: orientation, axioms, extremes, crossing, formats."""

import random
from itertools import combinations, permutations

import pytest

from chirotri import (Chirotope, GeneralPositionViolation, InvalidTriple,
                      NotARootedChirotope, PointSet, RootedChirotope,
                      SharedEndpoint, TooSmall, chirotope_from_points, convex,
                      convex_hull_labels, count_triangulations, flip, orient,
                      read_chi, segments_cross, write_chi)
from chirotri.chirotope import sorted_triples

from helpers import chi1_fixture_points, random_point_set


def test_orient_basic():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (0, 1), (1, 0)) == -1
    with pytest.raises(GeneralPositionViolation):
        orient((0, 0), (1, 0), (2, 0))


def test_chirotope_from_points_triangle_and_square():
    tri = chirotope_from_points(PointSet([(0, 0), (4, 0), (0, 4)]))
    assert dict(tri.items()) == {(0, 1, 2): 1}
    sq = chirotope_from_points(PointSet([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert sq.sign(0, 1, 2) == 1 and sq.sign(0, 2, 3) == 1
    assert all(s == 1 for _, s in sq.items())


def test_chirotope_from_points_requires_general_position_and_size():
    with pytest.raises(GeneralPositionViolation):
        chirotope_from_points(PointSet([(0, 0), (1, 1), (2, 2), (0, 1)]))
    with pytest.raises(TooSmall):
        chirotope_from_points(PointSet([(0, 0), (1, 0)]))


def test_chi1_fixture_axioms_and_interior_point():
    ps = chi1_fixture_points()
    chi = chirotope_from_points(ps)
    # oracle: recompute expected signs straight from the coordinates
    for t in sorted_triples(4):
        assert chi.sign(*t) == orient(ps[t[0]], ps[t[1]], ps[t[2]])
    assert chi.check_axioms().ok
    assert 3 not in chi.extreme_elements()
    assert chi.extreme_elements() == frozenset({0, 1, 2})


def test_sign_parity_semantics():
    tri = convex(3).chi
    assert tri.sign(0, 1, 2) == 1
    assert tri.sign(0, 2, 1) == -1
    rng = random.Random(5)
    chi = chirotope_from_points(random_point_set(7, rng))
    for _ in range(100):
        x, y, z = rng.sample(range(7), 3)
        assert chi.sign(x, y, z) == -chi.sign(y, x, z)
        assert chi.sign(x, y, z) == chi.sign(y, z, x)
        assert chi.sign(x, y, z) == -chi.sign(x, z, y)


def test_sign_rejects_bad_triples():
    chi = convex(4).chi
    with pytest.raises(InvalidTriple):
        chi.sign(0, 0, 1)
    with pytest.raises(InvalidTriple):
        chi.sign(0, 1, 4)


def test_axioms_hold_for_random_realizable():
    rng = random.Random(11)
    for n in range(4, 10):
        chi = chirotope_from_points(random_point_set(n, rng))
        report = chi.check_axioms()
        assert report.ok
        assert chi.is_verified


def test_axioms_convex6_and_mutated_convex5():
    assert convex(6).chi.check_axioms().ok
    table = {t: 1 for t in sorted_triples(5)}
    table[(1, 2, 4)] = -1
    report = Chirotope(5, table).check_axioms()
    assert not report.ok
    assert report.interiority or report.transitivity


def test_extreme_elements_convex_and_double_circle():
    assert convex(5).chi.extreme_elements() == frozenset(range(5))
    from chirotri import double_circle_points
    chi = chirotope_from_points(double_circle_points(4))
    assert chi.extreme_elements() == frozenset(range(4))


def test_extremes_match_geometric_hull():
    rng = random.Random(13)
    for n in (5, 6, 7, 8):
        ps = random_point_set(n, rng)
        chi = chirotope_from_points(ps)
        hull = convex_hull_labels(ps)
        assert chi.extreme_elements() == frozenset(hull)
        # hull_neighbors agrees with ccw hull adjacency at every hull vertex
        h = len(hull)
        for pos, v in enumerate(hull):
            rc = RootedChirotope(chi, v)
            up, um = rc.hull_neighbors()
            assert up == hull[(pos + 1) % h]
            assert um == hull[(pos - 1) % h]


def test_hull_neighbors_examples():
    assert RootedChirotope(convex(5).chi, 0).hull_neighbors() == (1, 4)
    assert RootedChirotope(convex(3).chi, 2).hull_neighbors() == (0, 1)
    chi = chirotope_from_points(chi1_fixture_points())
    up, um = RootedChirotope(chi, 2).hull_neighbors()
    assert {up, um} == {0, 1}  # interior point 3 is never a neighbor


def test_rooted_requires_extreme_root():
    chi = chirotope_from_points(chi1_fixture_points())
    with pytest.raises(NotARootedChirotope):
        RootedChirotope(chi, 3)


def test_segments_cross_convex4():
    chi = convex(4).chi
    assert segments_cross(chi, (0, 2), (1, 3))
    assert not segments_cross(chi, (0, 1), (2, 3))
    with pytest.raises(SharedEndpoint):
        segments_cross(chi, (0, 1), (1, 2))


def test_segments_cross_symmetry():
    rng = random.Random(17)
    chi = chirotope_from_points(random_point_set(8, rng))
    for _ in range(60):
        x, y, z, t = rng.sample(range(8), 4)
        c = segments_cross(chi, (x, y), (z, t))
        assert segments_cross(chi, (z, t), (x, y)) == c
        assert segments_cross(chi, (y, x), (z, t)) == c
        assert segments_cross(chi, (x, y), (t, z)) == c


def test_restrict():
    sub, lmap = convex(6).chi.restrict({0, 1, 2})
    assert sub == convex(3).chi
    assert lmap == {0: 0, 1: 1, 2: 2}
    rng = random.Random(19)
    chi = chirotope_from_points(random_point_set(6, rng))
    same, lmap = chi.restrict(range(6))
    assert same == chi and all(lmap[i] == i for i in range(6))
    with pytest.raises(TooSmall):
        chi.restrict({0, 1})


def test_flip():
    rng = random.Random(23)
    chi = chirotope_from_points(random_point_set(6, rng))
    assert flip(flip(chi)) == chi
    assert flip(convex(3).chi).sign(0, 1, 2) == -1
    from chirotri import chi1, enumerate_triangulations
    c1 = chi1().chi
    # crossing is invariant under a global sign flip, so the triangulation
    # families coincide exactly
    assert list(enumerate_triangulations(flip(c1))) == list(enumerate_triangulations(c1))
    assert count_triangulations(flip(c1)) == count_triangulations(c1)


def test_relabeling_invariance():
    rng = random.Random(29)
    ps = random_point_set(7, rng)
    chi = chirotope_from_points(ps)
    perm = list(range(7))
    rng.shuffle(perm)
    ps2 = ps.relabeled(perm)
    chi2 = chirotope_from_points(ps2)
    assert chi2.check_axioms().ok
    assert count_triangulations(chi2) == count_triangulations(chi)
    # new label i holds old label perm[i]
    assert chi2.extreme_elements() == frozenset(
        perm.index(x) for x in chi.extreme_elements())


def test_chi_format_roundtrip():
    rng = random.Random(31)
    chi = chirotope_from_points(random_point_set(7, rng))
    text = write_chi(chi, root=None)
    back, root = read_chi(text)
    assert back == chi and root is None
    text2 = write_chi(chi, root=4)
    back2, root2 = read_chi(text2)
    assert back2 == chi and root2 == 4
    # comments and unicode minus are tolerated
    commented = text2.replace("triples", "triples  # signs follow")
    assert read_chi(commented)[0] == chi
    assert read_chi(text.replace("-", "−"))[0] == chi


def test_pts_format_roundtrip():
    ps = PointSet([(0, 0), (1, 0), ("1/2", "3/4")])
    text = ps.to_text()
    assert PointSet.from_text(text) == ps
    parsed = PointSet.from_text("0 0\n# comment\n2 3\n1/3 2\n")
    assert len(parsed) == 3


def test_permutation_storage_consistency():
    # querying any permutation of a stored triple returns stored sign * parity
    chi = convex(4).chi
    base = {t: chi.sign(*t) for t in sorted_triples(4)}
    for t, s in base.items():
        for p in permutations(t):
            inv = sum(1 for i, j in combinations(range(3), 2) if p[i] > p[j])
            assert chi.sign(*p) == s * (-1) ** inv
