"""Exact double-circle triangulation counts and their asymptotic law.

The chirotopes obtained by repeatedly joining the one-interior-point
configuration onto itself carry triangulation polynomials Q_1, Q_2, ... whose
recursion only involves the recombination polynomials N(d, 3). The number of
triangulations of the double circle with k outer points is
Q_{k-1}(1) - [u^2] Q_{k-1}.

The generating function F(z, u) = sum_k Q_k(u) z^k satisfies

    F(z,u) K(z,u) = z [ u^3 (u-1)^2 - (u^4 - u^3 + u^2) F(z,1)
                        - u^2 (u-1) dF/du(z,1) ]

with kernel K(z,u) = (u-1)^2 (1 - z u^2) - z u^3. Substituting the two small
kernel roots u2(x) in (0,1) and u1(x) in (1,2) eliminates F and yields closed
forms for F(x,1) and dF/du(x,1); their square-root singularity at x = 1/12
gives the asymptotic constant. All analytics here are numeric at configurable
precision and validated against the exact integer pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import InternalInvariantViolation, NumericalInstability, OutOfRange
from .polynomials import UnivarPoly, join_Q

DEFAULT_DPS = 50


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


# -- exact integer pipeline ---------------------------------------------------


def qk_step(q: UnivarPoly) -> UnivarPoly:
    """One recursion step: convolve the coefficients of q with N(d, 3).

    Computed with suffix sums so a step over a degree-D polynomial costs O(D)
    big-integer operations:

        result = u^2 * q(u)
               + sum_{i>=1} (M_i - i*S_i) u^(i+1) + S_i u^(i+2)

    where S_i and M_i are the suffix sums of the coefficients and of
    coefficient*degree strictly above i.
    """
    if q.is_zero() or q.min_exp < 2:
        raise OutOfRange("step input needs minimum exponent >= 2")
    dmax = q.max_exp
    out: dict[int, int] = {}
    for d, c in q.terms():
        out[d + 2] = out.get(d + 2, 0) + c
    s = 0  # sum of q_d for d > i
    m = 0  # sum of d*q_d for d > i
    coeffs = q._c
    for i in range(dmax - 1, 0, -1):
        c = coeffs.get(i + 1, 0)
        s += c
        m += (i + 1) * c
        out[i + 1] = out.get(i + 1, 0) + m - i * s
        out[i + 2] = out.get(i + 2, 0) + s
    return UnivarPoly(out)


def qk_step_reference(q: UnivarPoly) -> UnivarPoly:
    """Same step through the generic merge recursion, for cross-checking."""
    return join_Q(q, UnivarPoly.monomial(3))


def _divide_by_u_minus_1(coeffs: list) -> tuple[list, int]:
    """Synthetic division by (u - 1); returns (quotient coeffs, remainder)."""
    n = len(coeffs)
    out = [0] * (n - 1)
    carry = 0
    for e in range(n - 1, 0, -1):
        carry += coeffs[e]
        out[e - 1] = carry
    return out, carry + coeffs[0]


def qk_step_closedform(q: UnivarPoly) -> UnivarPoly:
    """One recursion step via the summation-free rational form.

    Builds (q(u) - q(1)) * (u^4 - u^3 + u^2) - q'(1) * u^2 (u - 1) and divides
    exactly by (u - 1)^2; a nonzero remainder means the input was not a valid
    step polynomial.
    """
    if q.is_zero() or q.min_exp < 2:
        raise OutOfRange("step input needs minimum exponent >= 2")
    total = q(1)
    deriv = q.deriv_at_one()
    mult = UnivarPoly({4: 1, 3: -1, 2: 1})
    num = (q - UnivarPoly({0: total})) * mult - deriv * UnivarPoly({3: 1, 2: -1})
    dense = [0] * (num.max_exp + 1)
    for e, c in num.terms():
        dense[e] = c
    for _ in range(2):
        dense, rem = _divide_by_u_minus_1(dense)
        if rem != 0:
            raise InternalInvariantViolation(
                "closed-form step: division by (u-1)^2 left a remainder")
    return UnivarPoly({e: c for e, c in enumerate(dense) if c})


class QkTable:
    """Q_1 .. Q_kmax with cached totals, u^2 coefficients, and derivatives."""

    def __init__(self, kmax: int):
        if kmax < 1:
            raise OutOfRange(f"need kmax >= 1, got {kmax}")
        self.kmax = kmax
        self.polys = [UnivarPoly.monomial(3)]
        for _ in range(kmax - 1):
            self.polys.append(qk_step(self.polys[-1]))
        self.totals = [p(1) for p in self.polys]
        self.slice2 = [p.coeff(2) for p in self.polys]
        self.derivs = [p.deriv_at_one() for p in self.polys]

    def q(self, k: int) -> UnivarPoly:
        if not 1 <= k <= self.kmax:
            raise OutOfRange(f"k={k} outside 1..{self.kmax}")
        return self.polys[k - 1]

    def total(self, k: int) -> int:
        return self.totals[k - 1]

    def coeff2(self, k: int) -> int:
        return self.slice2[k - 1]

    def deriv(self, k: int) -> int:
        return self.derivs[k - 1]


def qk_sequence(kmax: int) -> QkTable:
    return QkTable(kmax)


def dc_count(k: int, table: QkTable | None = None) -> int:
    """Exact number of triangulations of the double circle with k outer points."""
    if k < 3:
        raise OutOfRange(f"need k >= 3, got {k}")
    if table is None or table.kmax < k - 1:
        table = QkTable(k - 1)
    return table.total(k - 1) - table.coeff2(k - 1)


# -- kernel analytics ---------------------------------------------------------


@dataclass(frozen=True)
class KernelPoint:
    """The two small kernel roots above a fixed x in (0, 1/12)."""

    x: object
    u1: object  # root in (1, 2)
    u2: object  # root in (0, 1)


@dataclass(frozen=True)
class AsymptoticConstants:
    """Singular-expansion constants and the asymptotic prefactor."""

    c1: object
    c2: object
    d1: object
    d2: object
    theorem_constant: object


def kernel(x, u):
    """K(x, u) = (u - 1)^2 (1 - x u^2) - x u^3, evaluated exactly as written."""
    return (u - 1) ** 2 * (1 - x * u * u) - x * u ** 3


def _bisect(f, lo, hi, steps):
    flo = f(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def small_roots(x, dps: int | None = None) -> KernelPoint:
    """The kernel roots u2 in (0, 1) and u1 in (1, 2) above x, by bisection."""
    with mp.workdps(dps or DEFAULT_DPS):
        xm = _to_mpf(x)
        if not (0 < xm < mp.mpf(1) / 12):
            raise OutOfRange(f"x={x} outside (0, 1/12)")
        f = lambda u: kernel(xm, u)
        steps = int(mp.mp.dps * 3.4) + 40
        u2 = _bisect(f, mp.mpf(0), mp.mpf(1), steps)
        u1 = _bisect(f, mp.mpf(1), mp.mpf(2), steps)
        if abs(f(u1)) > mp.mpf(10) ** -30 or abs(f(u2)) > mp.mpf(10) ** -30:
            raise NumericalInstability("kernel root residual above tolerance")
        return KernelPoint(xm, u1, u2)


def f_closed(x, dps: int | None = None):
    """(F(x,1), dF/du(x,1)) from the closed forms in the two small roots."""
    with mp.workdps(dps or DEFAULT_DPS):
        pt = small_roots(x, dps=dps)
        u1, u2 = pt.u1, pt.u2
        den = u1 + u2 - u1 * u2
        if abs(den) < mp.mpf(10) ** -20:
            raise NumericalInstability("closed-form denominator near zero")
        f = (u1 - 1) * (1 - u2) * (u1 + u2 - 1) / den
        df = (u1 * u2 * (u1 * u2 - u1 - u2 + 2)
              + u1 ** 2 + u2 ** 2 - 2 * u1 - 2 * u2 + 1) / den
        return f, df


def f_series(x, terms: int, table: QkTable | None = None, dps: int | None = None):
    """Truncated series for F(x, 1), from the exact totals."""
    if table is None or table.kmax < terms:
        table = QkTable(terms)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = _to_mpf(x)
        return mp.fsum(table.total(k) * xm ** k for k in range(1, terms + 1))


def df_series(x, terms: int, table: QkTable | None = None, dps: int | None = None):
    """Truncated series for dF/du(x, 1), from the exact derivatives."""
    if table is None or table.kmax < terms:
        table = QkTable(terms)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = _to_mpf(x)
        return mp.fsum(table.deriv(k) * xm ** k for k in range(1, terms + 1))


def f_series_bivar(x, u, terms: int, table: QkTable | None = None,
                   dps: int | None = None):
    """Truncated series for F(x, u)."""
    if table is None or table.kmax < terms:
        table = QkTable(terms)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = _to_mpf(x)
        um = _to_mpf(u)
        return mp.fsum(table.q(k)(um) * xm ** k for k in range(1, terms + 1))


def functional_equation_residual(x, u, terms: int = 80,
                                 table: QkTable | None = None,
                                 dps: int | None = None):
    """|F K - z(u^3 (u-1)^2 - (u^4-u^3+u^2) F(z,1) - u^2 (u-1) dF(z,1))|.

    All three series are truncated at the same order, so the residual is the
    truncation tail only.
    """
    if table is None or table.kmax < terms:
        table = QkTable(terms)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = _to_mpf(x)
        um = _to_mpf(u)
        fu = f_series_bivar(xm, um, terms, table, dps=dps)
        f1 = f_series(xm, terms, table, dps=dps)
        df1 = df_series(xm, terms, table, dps=dps)
        lhs = fu * kernel(xm, um)
        rhs = xm * (um ** 3 * (um - 1) ** 2
                    - (um ** 4 - um ** 3 + um ** 2) * f1
                    - um ** 2 * (um - 1) * df1)
        return abs(lhs - rhs)


def constants(dps: int | None = None) -> AsymptoticConstants:
    """High-precision values of the singular-expansion constants.

    c2 simplifies exactly to 6*sqrt(21)/49 and the asymptotic prefactor to
    9*c2 / (2*sqrt(pi)); both routes are evaluated from the surd expressions.
    """
    with mp.workdps(dps or DEFAULT_DPS):
        r21 = mp.sqrt(21)
        c1 = (-13 + 3 * r21) / (7 - r21)
        c2 = mp.mpf(12) / 7 * r21 * (5 - r21) / (7 - r21) ** 2
        d1 = (53 - 11 * r21) / (7 - r21)
        d2 = 4 * c2
        theorem_constant = 9 * c2 / (2 * mp.sqrt(mp.pi))
        return AsymptoticConstants(c1, c2, d1, d2, theorem_constant)


@dataclass(frozen=True)
class AsymptoticRow:
    k: int
    exact: int
    estimate: object
    ratio: object


def asymptotic_report(ks, table: QkTable | None = None,
                      dps: int | None = None) -> list[AsymptoticRow]:
    """Exact counts against the estimate constant * 12^(k-2) * k^(-3/2)."""
    ks = sorted(ks)
    if any(k < 3 for k in ks):
        raise OutOfRange("report needs k >= 3")
    if table is None or table.kmax < max(ks) - 1:
        table = QkTable(max(ks) - 1)
    cs = constants(dps=dps)
    rows = []
    with mp.workdps(dps or DEFAULT_DPS):
        for k in ks:
            exact = dc_count(k, table)
            est = cs.theorem_constant * mp.mpf(12) ** (k - 2) * mp.mpf(k) ** mp.mpf("-1.5")
            rows.append(AsymptoticRow(k, exact, est, exact / est))
    return rows
