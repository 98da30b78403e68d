"""Join, twist and meet of rooted chirotopes, plus the generator families.

The join merges two rooted chirotopes at their roots and identifies the left
root's hull predecessor with the right root's hull successor; the merged
ground set keeps the left block first, then the right block, then the shared
point x0, then the new root last. The meet is the same merge with the two
mixed-block orientation cases negated; it also equals a twist/join/twist
composition, and both constructions are compared triple-for-triple on every
call.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chirotope import Chirotope, RootedChirotope, chirotope_from_points
from .errors import ConstructionFailed, OutOfRange, TooLarge, TooSmall
from .geometry import PointSet

KOCH_MATERIALIZE_CAP = 5  # level cap: koch(i) has 2**i + 2 elements


@dataclass(frozen=True)
class LabelMap:
    """How operand labels land in a merged chirotope.

    from_left / from_right map every operand label (roots included) to a
    result label. Exactly two merges happen: both roots map to new_root, and
    the left predecessor / right successor pair maps to x0.
    """

    from_left: dict
    from_right: dict
    x0: int
    new_root: int


def _merge(rc1: RootedChirotope, rc2: RootedChirotope, negate_mixed: bool):
    chi1, r1 = rc1.chi, rc1.root
    chi2, r2 = rc2.chi, rc2.root
    if chi1.n < 3 or chi2.n < 3:
        raise TooSmall("both operands need at least 3 elements")
    _, um1 = rc1.hull_neighbors()
    up2, _ = rc2.hull_neighbors()

    left = [x for x in range(chi1.n) if x != r1 and x != um1]
    right = [x for x in range(chi2.n) if x != r2 and x != up2]
    x0 = len(left) + len(right)
    root3 = x0 + 1
    n3 = root3 + 1  # == n1 + n2 - 2

    from_left = {x: i for i, x in enumerate(left)}
    from_right = {x: len(left) + i for i, x in enumerate(right)}
    from_left[um1] = x0
    from_right[up2] = x0
    from_left[r1] = root3
    from_right[r2] = root3

    # result label -> non-root operand label (x0 has a preimage on both sides)
    pre1 = {v: k for k, v in from_left.items() if k != r1}
    pre2 = {v: k for k, v in from_right.items() if k != r2}

    s1 = chi1._sign
    s2 = chi2._sign
    g1 = pre1.get
    g2 = pre2.get
    mix = -1 if negate_mixed else 1

    table = {}
    for a, b, c in combinations(range(n3), 3):
        if c == root3:
            la, lb = g1(a), g1(b)
            if la is not None and lb is not None:
                s = s1(la, lb, r1)
            else:
                ra, rb = g2(a), g2(b)
                if ra is not None and rb is not None:
                    s = s2(ra, rb, r2)
                elif la is not None:
                    s = 1      # left element, then right element, then root
                else:
                    s = -1     # right element first: odd permutation of above
        else:
            la, lb, lc = g1(a), g1(b), g1(c)
            if la is not None and lb is not None and lc is not None:
                s = s1(la, lb, lc)
            else:
                ra, rb, rc = g2(a), g2(b), g2(c)
                if ra is not None and rb is not None and rc is not None:
                    s = s2(ra, rb, rc)
                elif (la is None) + (lb is None) + (lc is None) == 1:
                    # one strictly-right element: orient it into last position
                    if lc is None:
                        s = mix * s1(la, lb, r1)
                    elif lb is None:
                        s = -mix * s1(la, lc, r1)
                    else:
                        s = mix * s1(lb, lc, r1)
                else:
                    # one strictly-left element: orient it into first position
                    if ra is None:
                        s = mix * s2(r2, rb, rc)
                    elif rb is None:
                        s = -mix * s2(r2, ra, rc)
                    else:
                        s = mix * s2(r2, ra, rb)
        table[(a, b, c)] = s

    rc = RootedChirotope(Chirotope(n3, table), root3)
    return rc, LabelMap(from_left, from_right, x0, root3)


def join(rc1: RootedChirotope, rc2: RootedChirotope):
    """Join of two rooted chirotopes. Returns (result, label map)."""
    return _merge(rc1, rc2, negate_mixed=False)


def twist(rc: RootedChirotope) -> RootedChirotope:
    """Replace the root by its opposite phantom element, in place label-wise.

    Signs among non-root elements are unchanged; every triple involving the
    root is negated. Applying twist twice restores the original.
    """
    r = rc.root
    table = {t: (-s if r in t else s) for t, s in rc.chi.items()}
    return RootedChirotope(Chirotope(rc.chi.n, table), r)


def meet(rc1: RootedChirotope, rc2: RootedChirotope):
    """Meet of two rooted chirotopes. Returns (result, label map).

    Built directly as the negated-mixed-case merge; cross-checked against the
    twist composition twist(join(twist(.), twist(.))) on every call. The two
    constructions must agree triple-for-triple (the twist route consumes the
    operands in the opposite slot order, since twisting swaps each root's hull
    successor and predecessor and the merged pair must stay the same).
    """
    direct, lmap = _merge(rc1, rc2, negate_mixed=True)
    via_twists, jmap = _merge(twist(rc2), twist(rc1), negate_mixed=False)
    via_twists = twist(via_twists)

    perm = {}
    for old, new in lmap.from_left.items():
        perm[new] = jmap.from_right[old]
    for old, new in lmap.from_right.items():
        perm[new] = jmap.from_left[old]
    for (a, b, c), s in direct.chi.items():
        if via_twists.chi.sign(perm[a], perm[b], perm[c]) != s:
            raise AssertionError(
                f"meet constructions disagree on triple ({a}, {b}, {c})")
    return direct, lmap


# -- generator families ------------------------------------------------------


def convex(n: int) -> RootedChirotope:
    """Counterclockwise-labeled convex n-gon, rooted at label 0."""
    if n < 3:
        raise TooSmall(f"convex position needs n >= 3, got {n}")
    table = {t: 1 for t in combinations(range(n), 3)}
    return RootedChirotope(Chirotope(n, table), 0)


def triangle() -> RootedChirotope:
    return convex(3)


def chi1() -> RootedChirotope:
    """Four points with one interior: the meet of two rooted triangles."""
    return meet(triangle(), triangle())[0]


def chi_k(k: int) -> RootedChirotope:
    """The k-th iterated join of the one-interior-point configuration.

    chi_k(1) is chi1 itself; each step joins chi1 on the right; the result has
    2k + 2 elements.
    """
    if k < 1:
        raise OutOfRange(f"need k >= 1, got {k}")
    rc = chi1()
    for _ in range(k - 1):
        rc = join(rc, chi1())[0]
    return rc


def koch(i: int) -> RootedChirotope:
    """Level-i rooted Koch chain: alternately self-join (odd i) and self-meet.

    Level 0 is the rooted triangle; level i has 2**i + 2 elements. Levels
    above the materialization cap must go through the polynomial pipeline.
    """
    if i < 0:
        raise OutOfRange(f"need i >= 0, got {i}")
    if i > KOCH_MATERIALIZE_CAP:
        raise TooLarge(
            f"koch({i}) has {2 ** i + 2} elements; materialization is capped at "
            f"level {KOCH_MATERIALIZE_CAP} - use the polynomial pipeline")
    rc = triangle()
    for level in range(1, i + 1):
        op = join if level % 2 == 1 else meet
        rc = op(rc, rc)[0]
    return rc


def double_circle_points(k: int) -> PointSet:
    """2k exact-rational points: k outer in convex position, k just inside.

    Outer points sit on the rational unit circle; each inner point is the
    midpoint of one hull edge pulled toward the centroid by a small rational
    factor. The factor halves until the configuration validates: general
    position, extreme set equal to the outer labels, and every orientation
    that is nonzero in the midpoint limit unchanged by the pull.
    """
    if not 3 <= k <= 12:
        raise OutOfRange(f"need 3 <= k <= 12, got {k}")
    ts = [Fraction(2 * j - (k - 1), 2) for j in range(k)]
    outer = [((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)) for t in ts]
    cx = sum(p[0] for p in outer) / k
    cy = sum(p[1] for p in outer) / k
    mids = []
    for j in range(k):
        q = outer[(j + 1) % k]
        p = outer[j]
        mids.append(((p[0] + q[0]) / 2, (p[1] + q[1]) / 2))

    def build(eps: Fraction, salt: int) -> PointSet:
        inner = []
        for j, (mx, my) in enumerate(mids):
            # distinct per-point factors break accidental mirror symmetries;
            # the salt changes the pattern across retries
            e = eps * (100 * k + (salt + 1) * (j + 1)) / (100 * k)
            inner.append((mx + e * (cx - mx), my + e * (cy - my)))
        return PointSet(list(outer) + inner)

    def limit_orient(ps, a, b, c):
        # orientation when inner points collapse onto their edge midpoints
        def lim(i):
            return ps[i] if i < k else mids[i - k]
        pa, pb, pc = lim(a), lim(b), lim(c)
        return ((pb[0] - pa[0]) * (pc[1] - pa[1])
                - (pb[1] - pa[1]) * (pc[0] - pa[0]))

    eps = Fraction(1, 2 ** 20)
    for attempt in range(60):
        ps = build(eps, attempt // 10)
        try:
            chi = chirotope_from_points(ps)
        except Exception:
            eps /= 2
            continue
        if chi.extreme_elements() != frozenset(range(k)):
            eps /= 2
            continue
        ok = True
        for a, b, c in combinations(range(2 * k), 3):
            if max(a, b, c) < k:
                continue
            d = limit_orient(ps, a, b, c)
            if d != 0 and (1 if d > 0 else -1) != chi._sign(a, b, c):
                ok = False
                break
        if ok:
            return ps
        eps /= 2
    raise ConstructionFailed(f"could not validate double circle for k={k}")


def double_circle(k: int) -> RootedChirotope:
    """Double-circle chirotope rooted at outer label 0."""
    return RootedChirotope(chirotope_from_points(double_circle_points(k)), 0)
