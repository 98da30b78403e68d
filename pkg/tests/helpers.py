"""Shared helpers: random realizable fixtures and small reference oracles."""

from math import comb

from chirotri import PointSet, RootedChirotope, chirotope_from_points


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def random_point_set(n, rng, span=60) -> PointSet:
    """Random integer-grid points in general position (rejection sampling)."""
    while True:
        pts = [(rng.randrange(span), rng.randrange(span)) for _ in range(n)]
        if len(set(pts)) != n:
            continue
        ps = PointSet(pts)
        try:
            ps.validate_general_position()
        except Exception:
            continue
        return ps


def random_rooted(n, rng, span=60) -> RootedChirotope:
    chi = chirotope_from_points(random_point_set(n, rng, span))
    root = rng.choice(sorted(chi.extreme_elements()))
    return RootedChirotope(chi, root)


def chi1_fixture_points() -> PointSet:
    """Triangle (0,0), (4,0), (2,3) with interior point (2,1)."""
    return PointSet([(0, 0), (4, 0), (2, 3), (2, 1)])
