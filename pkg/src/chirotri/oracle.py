"""Brute-force enumeration of triangulations and weak triangulations.

Triangulations are the inclusion-maximal families of pairwise non-crossing
segments; they are enumerated by deterministic backtracking over segments in
lexicographic order against a precomputed pairwise-crossing bitmatrix. A
segment may only be skipped if some chosen segment crosses it, so every
maximal family is produced exactly once.

This module is the ground truth that every recursive counting formula in the
package is tested against; it is deliberately simple and size-capped.
"""

from __future__ import annotations

from itertools import combinations

from .chirotope import Chirotope, RootedChirotope
from .errors import OracleTooLarge
from .polynomials import BivarPoly, UnivarPoly

DEFAULT_ORACLE_CAP = 12


class WeakGround:
    """Ground set of a rooted chirotope extended by the root's opposite phantom.

    The phantom element v gets label n; triples (x, y, v) with x, y non-root
    are oriented opposite to (x, y, root), and triples holding both the root
    and v are undefined. Segments at the root never cross segments at v, so
    crossing queries never touch an undefined triple. The segment (root, v)
    itself is excluded from every candidate family.
    """

    __slots__ = ("rc", "v", "_table", "_n")

    def __init__(self, rc: RootedChirotope):
        self.rc = rc
        self._n = rc.chi.n
        self.v = self._n
        table = dict(rc.chi._table)
        r = rc.root
        for x, y in combinations(range(self._n), 2):
            if x != r and y != r:
                table[(x, y, self.v)] = -rc.chi._sign(x, y, r)
        self._table = table

    def sign(self, x, y, z):
        s = 1
        if x > y:
            x, y, s = y, x, -s
        if y > z:
            y, z, s = z, y, -s
            if x > y:
                x, y, s = y, x, -s
        return s * self._table[(x, y, z)]

    def segments(self):
        r, v = self.rc.root, self.v
        return [p for p in combinations(range(self._n + 1), 2) if p != (r, v)]


def _crossing_masks(signf, segs, u_elt=None, v_elt=None):
    """masks[i] = bitmask of segments crossing segment i."""
    m = len(segs)
    masks = [0] * m
    for i in range(m):
        a, b = segs[i]
        for j in range(i + 1, m):
            c, d = segs[j]
            if a == c or a == d or b == c or b == d:
                continue
            if u_elt is not None:
                in1 = a == u_elt or b == u_elt
                in2 = c == v_elt or d == v_elt
                if (in1 and in2) or ((a == v_elt or b == v_elt)
                                     and (c == u_elt or d == u_elt)):
                    continue  # root-side and phantom-side segments never cross
            if signf(a, b, c) != signf(a, b, d) and signf(c, d, a) != signf(c, d, b):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def _iter_maximal(masks):
    """Yield every maximal independent set of the crossing graph as a bitmask.

    Depth-first over segment indices; the include branch is explored first so
    the output order is deterministic. A skipped segment carries a pending
    obligation that some later chosen segment must cross it.
    """
    m = len(masks)
    all_bits = (1 << m) - 1
    suffix = [(all_bits >> i) << i for i in range(m + 1)]
    stack = [(0, 0, 0, 0)]  # (index, dominated, pending, chosen)
    while stack:
        i, dom, pend, chosen = stack.pop()
        while i < m and (dom >> i) & 1:
            i += 1
        if i == m:
            if pend == 0:
                yield chosen
            continue
        bit = 1 << i
        if masks[i] & suffix[i + 1] & ~dom:
            stack.append((i + 1, dom, pend | bit, chosen))
        stack.append((i + 1, dom | masks[i], pend & ~masks[i], chosen | bit))


def _check_cap(n, cap):
    limit = DEFAULT_ORACLE_CAP if cap is None else cap
    if n > limit:
        raise OracleTooLarge(
            f"{n} elements exceeds the oracle cap {limit}; pass a larger cap "
            f"to override")


def enumerate_triangulations(chi: Chirotope, cap: int | None = None):
    """Stream every triangulation of the chirotope as a sorted segment tuple."""
    _check_cap(chi.n, cap)
    segs = list(combinations(range(chi.n), 2))
    masks = _crossing_masks(chi._sign, segs)
    for mask in _iter_maximal(masks):
        yield tuple(segs[i] for i in range(len(segs)) if (mask >> i) & 1)


def enumerate_weak(rc: RootedChirotope, cap: int | None = None):
    """Stream every weak triangulation (over the phantom-extended ground set)."""
    _check_cap(rc.chi.n, cap)
    wg = WeakGround(rc)
    segs = wg.segments()
    masks = _crossing_masks(wg.sign, segs, u_elt=rc.root, v_elt=wg.v)
    for mask in _iter_maximal(masks):
        yield tuple(segs[i] for i in range(len(segs)) if (mask >> i) & 1)


def count_triangulations(chi: Chirotope, cap: int | None = None) -> int:
    _check_cap(chi.n, cap)
    segs = list(combinations(range(chi.n), 2))
    masks = _crossing_masks(chi._sign, segs)
    return sum(1 for _ in _iter_maximal(masks))


def _incidence_masks(segs, n_labels):
    inc = [0] * n_labels
    for i, (a, b) in enumerate(segs):
        inc[a] |= 1 << i
        inc[b] |= 1 << i
    return inc


def brute_Q(rc: RootedChirotope, cap: int | None = None) -> UnivarPoly:
    """Triangulation polynomial by root degree, from direct enumeration."""
    _check_cap(rc.chi.n, cap)
    segs = list(combinations(range(rc.chi.n), 2))
    masks = _crossing_masks(rc.chi._sign, segs)
    root_mask = _incidence_masks(segs, rc.chi.n)[rc.root]
    acc: dict[int, int] = {}
    for mask in _iter_maximal(masks):
        d = (mask & root_mask).bit_count()
        acc[d] = acc.get(d, 0) + 1
    return UnivarPoly(acc)


def brute_P(rc: RootedChirotope, cap: int | None = None) -> BivarPoly:
    """Weak-triangulation polynomial by (root degree, phantom degree)."""
    _check_cap(rc.chi.n, cap)
    wg = WeakGround(rc)
    segs = wg.segments()
    masks = _crossing_masks(wg.sign, segs, u_elt=rc.root, v_elt=wg.v)
    inc = _incidence_masks(segs, rc.chi.n + 1)
    root_mask = inc[rc.root]
    v_mask = inc[wg.v]
    acc: dict[tuple[int, int], int] = {}
    for mask in _iter_maximal(masks):
        key = ((mask & root_mask).bit_count(), (mask & v_mask).bit_count())
        acc[key] = acc.get(key, 0) + 1
    return BivarPoly(acc)
