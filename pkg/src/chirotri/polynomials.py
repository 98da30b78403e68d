"""Sparse exact polynomials and the recursive triangulation-counting calculus.

Coefficients are Python ints (arbitrary precision) keyed by exponent; no zero
coefficient is ever stored. The merge recursion combines the weak
triangulation polynomials of two rooted chirotopes: terms of root degrees
(d1, d2) recombine into root degrees given by the polynomial N(d1, d2), and
the phantom-degree product is divided by the phantom variable exactly once
because the shared segment from the phantom to the merged hull point is
counted on both sides.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import comb

from .errors import EmptyInput, InternalInvariantViolation, OutOfRange


def _clean(d):
    return {e: c for e, c in d.items() if c != 0}


class UnivarPoly:
    """Univariate polynomial with integer coefficients, exponents >= 0."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict | None = None):
        coeffs = coeffs or {}
        for e in coeffs:
            if not isinstance(e, int) or e < 0:
                raise OutOfRange(f"bad exponent {e!r}")
        self._c = _clean(coeffs)

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1):
        return cls({exp: coeff})

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def terms(self):
        """(exponent, coefficient) pairs, exponent-ascending."""
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise EmptyInput("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise EmptyInput("zero polynomial has no exponents")
        return max(self._c)

    def __add__(self, other):
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return UnivarPoly(out)

    def __sub__(self, other):
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) - c
        return UnivarPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return UnivarPoly({e: c * other for e, c in self._c.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return UnivarPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, UnivarPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._c.items())

    def deriv_at_one(self) -> int:
        return sum(e * c for e, c in self._c.items())

    def shift(self, k: int) -> "UnivarPoly":
        if k < 0 and any(e + k < 0 for e in self._c):
            raise InternalInvariantViolation("negative exponent after shift")
        return UnivarPoly({e + k: c for e, c in self._c.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        bits = []
        for e, c in sorted(self._c.items(), reverse=True):
            term = "1" if (c == 1 and e == 0) else (
                f"{c}" if e == 0 else (f"u^{e}" if c == 1 else f"{c}*u^{e}"))
            bits.append(term)
        return " + ".join(bits)

    def to_json(self) -> str:
        terms = [[e, str(c)] for e, c in self.terms()]
        return json.dumps({"terms": terms}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "UnivarPoly":
        data = json.loads(text)
        return cls({int(e): int(c) for e, c in data["terms"]})


class BivarPoly:
    """Bivariate polynomial in (u, v), integer coefficients, exponents >= 0."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict | None = None):
        coeffs = coeffs or {}
        for (a, b) in coeffs:
            if a < 0 or b < 0:
                raise OutOfRange(f"bad exponent pair ({a}, {b})")
        self._c = _clean(coeffs)

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def monomial(cls, ue: int, ve: int, coeff: int = 1):
        return cls({(ue, ve): coeff})

    def coeff(self, ue: int, ve: int) -> int:
        return self._c.get((ue, ve), 0)

    def terms(self):
        """((u-exp, v-exp), coefficient) pairs in lexicographic order."""
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def u_slices(self) -> dict[int, dict[int, int]]:
        """u-exponent -> {v-exponent: coefficient}."""
        out: dict[int, dict[int, int]] = {}
        for (a, b), c in self._c.items():
            out.setdefault(a, {})[b] = c
        return out

    def min_v_exp(self) -> int:
        if not self._c:
            raise EmptyInput("zero polynomial has no exponents")
        return min(b for _, b in self._c)

    def __add__(self, other):
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivarPoly({k: c * other for k, c in self._c.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._c.items():
            for (a2, b2), c2 in other._c.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, u, v):
        return sum(c * u ** a * v ** b for (a, b), c in self._c.items())

    def __repr__(self):
        if not self._c:
            return "0"
        bits = []
        for (a, b), c in sorted(self._c.items(), reverse=True):
            term = "" if c == 1 and (a or b) else str(c)
            if a:
                term += ("*" if term else "") + f"u^{a}"
            if b:
                term += ("*" if term else "") + f"v^{b}"
            bits.append(term or "1")
        return " + ".join(bits)

    def to_json(self) -> str:
        terms = [[a, b, str(c)] for (a, b), c in self.terms()]
        return json.dumps({"terms": terms}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BivarPoly":
        data = json.loads(text)
        return cls({(int(a), int(b)): int(c) for a, b, c in data["terms"]})


# -- the counting calculus ---------------------------------------------------


@lru_cache(maxsize=None)
def _n_poly_terms(d1: int, d2: int) -> tuple:
    if d1 < 2 or d2 < 2:
        raise OutOfRange(f"degrees must be >= 2, got ({d1}, {d2})")
    acc = {d1 + d2 - 1: 1}
    for i1 in range(1, d1):
        for i2 in range(1, d2):
            e = i1 + i2
            acc[e] = acc.get(e, 0) + comb(d1 - i1 + d2 - i2 - 2, d1 - i1 - 1)
    return tuple(sorted(acc.items()))


def n_poly(d1: int, d2: int) -> UnivarPoly:
    """Recombination polynomial for merging root degrees d1 and d2.

    One term u^(d1+d2-1) for the merge that keeps the shared hull segment,
    plus a binomial-weighted term u^(i1+i2) for every way of re-hanging the
    remaining root neighbors across the merge.
    """
    return UnivarPoly(dict(_n_poly_terms(d1, d2)))


def join_Q(q1: UnivarPoly, q2: UnivarPoly) -> UnivarPoly:
    """Triangulation polynomial of a join from the operand polynomials."""
    for q in (q1, q2):
        if q.is_zero() or q.min_exp < 2:
            raise OutOfRange("operand polynomials need minimum exponent >= 2")
    acc: dict[int, int] = {}
    for d1, c1 in q1.terms():
        for d2, c2 in q2.terms():
            w = c1 * c2
            for e, cn in _n_poly_terms(d1, d2):
                acc[e] = acc.get(e, 0) + w * cn
    return UnivarPoly(acc)


def join_P(p1: BivarPoly, p2: BivarPoly) -> BivarPoly:
    """Weak-triangulation polynomial of a join from the operand polynomials.

    The phantom-degree product v^(b1+b2) is shifted down by one; the shift
    must be exact because the segment from the phantom to the merged hull
    point occurs in both operands.

    When both operands factor into a u-part times a v-part (chains do), the
    result factors the same way and is assembled from two univariate
    products; otherwise the full double sum over root-degree pairs runs.
    """
    s1 = p1.u_slices()
    s2 = p2.u_slices()
    if not s1 or not s2:
        raise EmptyInput("zero operand polynomial")
    if min(s1) < 2 or min(s2) < 2:
        raise OutOfRange("operand polynomials need minimum u-exponent >= 2")
    split1 = try_split(p1)
    split2 = try_split(p2)
    if split1 is not None and split2 is not None:
        up1, vp1 = split1
        up2, vp2 = split2
        u_part = join_Q(up1, up2)
        v_part = (vp1 * vp2).shift(-1)
        return BivarPoly({(a, b): cu * cv
                          for a, cu in u_part.terms()
                          for b, cv in v_part.terms()})
    acc: dict[tuple[int, int], int] = {}
    for d1, va in s1.items():
        for d2, vb in s2.items():
            prod: dict[int, int] = {}
            for b1, c1 in va.items():
                for b2, c2 in vb.items():
                    k = b1 + b2
                    prod[k] = prod.get(k, 0) + c1 * c2
            for e, cn in _n_poly_terms(d1, d2):
                for b, c in prod.items():
                    key = (e, b)
                    acc[key] = acc.get(key, 0) + cn * c
    acc = _clean(acc)
    if any(b < 1 for _, b in acc):
        raise InternalInvariantViolation(
            "phantom-degree product has an exponent-0 term; operands are not "
            "weak-triangulation polynomials")
    return BivarPoly({(a, b - 1): c for (a, b), c in acc.items()})


def swap_vars(p: BivarPoly) -> BivarPoly:
    """Transpose the roles of the two variables."""
    return BivarPoly({(b, a): c for (a, b), c in p._c.items()})


def meet_P(p1: BivarPoly, p2: BivarPoly) -> BivarPoly:
    """Weak-triangulation polynomial of a meet: the join with roles swapped."""
    return swap_vars(join_P(swap_vars(p1), swap_vars(p2)))


def q_from_p(p: BivarPoly) -> UnivarPoly:
    """Slice of the weak polynomial at the minimal phantom degree.

    Weak triangulations of minimal phantom degree are exactly the extensions
    of true triangulations, so this recovers the triangulation polynomial.
    """
    if p.is_zero():
        raise EmptyInput("zero polynomial")
    m = p.min_v_exp()
    return UnivarPoly({a: c for (a, b), c in p._c.items() if b == m})


def count_weak_join(p1: BivarPoly, p2: BivarPoly, kind: str = "join") -> int:
    """Total weak-triangulation count of a join or meet, by marginals only.

    Equals the full merged polynomial evaluated at (1, 1) but never builds
    it: only the per-root-degree totals of each operand are needed.
    """
    if kind == "meet":
        p1 = swap_vars(p1)
        p2 = swap_vars(p2)
    elif kind != "join":
        raise OutOfRange(f"kind must be 'join' or 'meet', got {kind!r}")
    s1 = p1.u_slices()
    s2 = p2.u_slices()
    if not s1 or not s2:
        raise EmptyInput("zero operand polynomial")
    if min(s1) < 2 or min(s2) < 2:
        raise OutOfRange("operand polynomials need minimum u-exponent >= 2")
    a = {d: sum(vs.values()) for d, vs in s1.items()}
    b = {d: sum(vs.values()) for d, vs in s2.items()}
    total = 0
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            total += c1 * c2 * comb(d1 + d2 - 2, d1 - 1)
    return total


def try_split(p: BivarPoly):
    """Factor p as (polynomial in u) * (polynomial in v), if possible.

    Returns (U, V) with U primitive-scaled so the product is exact, or None
    when the coefficient matrix has rank above one. Chains always split.
    """
    if p.is_zero():
        return None
    slices = p.u_slices()
    a0 = min(slices)
    row0 = slices[a0]
    b0 = min(row0)
    from math import gcd
    g = 0
    for c in row0.values():
        g = gcd(g, c)
    v_part = {b: c // g for b, c in row0.items()}
    u_part = {}
    for a, row in slices.items():
        lead = row.get(b0)
        if lead is None or lead % v_part[b0] != 0:
            return None
        u_part[a] = lead // v_part[b0]
    # verify the outer product reproduces p exactly
    prod: dict[tuple[int, int], int] = {}
    for a, cu in u_part.items():
        for b, cv in v_part.items():
            prod[(a, b)] = cu * cv
    if _clean(prod) != p._c:
        return None
    return UnivarPoly(u_part), UnivarPoly(v_part)
