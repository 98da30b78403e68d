"""Abstract chirotopes: exact orientation tables over triples of labels.

A chirotope on n elements stores one sign per sorted triple (i < j < k);
queries on arbitrary orderings apply the permutation parity, so the
alternating symmetry holds by construction. Axiom checking (interiority and
transitivity) is an exhaustive scan, vectorized with numpy so that randomized
test sweeps stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (
    GeneralPositionViolation,
    InvalidTriple,
    MalformedFile,
    NotARootedChirotope,
    SharedEndpoint,
    TooSmall,
)
from .geometry import PointSet, orient


def sorted_triples(n: int):
    """All label triples (i < j < k) in lexicographic order."""
    return combinations(range(n), 3)


class Chirotope:
    """Immutable sign table over all sorted triples of 0..n-1."""

    __slots__ = ("n", "_table", "_verified")

    def __init__(self, n: int, table: dict):
        if n < 3:
            raise TooSmall(f"need at least 3 elements, got {n}")
        expected = n * (n - 1) * (n - 2) // 6
        if len(table) != expected:
            raise InvalidTriple(f"table has {len(table)} entries, expected {expected}")
        for t, s in table.items():
            if s not in (1, -1):
                raise InvalidTriple(f"sign of {t} must be +1 or -1, got {s}")
        self.n = n
        self._table = dict(table)
        self._verified = False

    # -- queries ---------------------------------------------------------

    def sign(self, x: int, y: int, z: int) -> int:
        """Orientation of the ordered triple (x, y, z), with parity semantics."""
        n = self.n
        if not (0 <= x < n and 0 <= y < n and 0 <= z < n):
            raise InvalidTriple(f"label out of range in ({x}, {y}, {z})")
        if x == y or y == z or x == z:
            raise InvalidTriple(f"repeated label in ({x}, {y}, {z})")
        return self._sign(x, y, z)

    def _sign(self, x, y, z):
        # manual 3-element sort, tracking the permutation parity
        s = 1
        if x > y:
            x, y, s = y, x, -s
        if y > z:
            y, z, s = z, y, -s
            if x > y:
                x, y, s = y, x, -s
        return s * self._table[(x, y, z)]

    def items(self):
        """(sorted triple, sign) pairs in lexicographic order."""
        for t in sorted_triples(self.n):
            yield t, self._table[t]

    def __eq__(self, other):
        return (isinstance(other, Chirotope) and self.n == other.n
                and self._table == other._table)

    def __repr__(self):
        return f"Chirotope(n={self.n})"

    @property
    def is_verified(self) -> bool:
        """True once an axiom scan has passed on this instance."""
        return self._verified

    # -- structure -------------------------------------------------------

    def flipped(self) -> "Chirotope":
        """Chirotope with every orientation reversed."""
        return Chirotope(self.n, {t: -s for t, s in self._table.items()})

    def restrict(self, keep) -> tuple["Chirotope", dict]:
        """Restriction to a label subset, relabeled densely in increasing order.

        Returns the restricted chirotope and the old-label -> new-label map.
        """
        kept = sorted(set(keep))
        if len(kept) < 3:
            raise TooSmall(f"restriction needs at least 3 labels, got {len(kept)}")
        if kept[0] < 0 or kept[-1] >= self.n:
            raise InvalidTriple(f"labels out of range in {kept}")
        table = {}
        for (a, b, c) in combinations(range(len(kept)), 3):
            table[(a, b, c)] = self._table[(kept[a], kept[b], kept[c])]
        return Chirotope(len(kept), table), {old: new for new, old in enumerate(kept)}

    def extreme_elements(self) -> frozenset:
        """Labels x admitting a witness y with sign(x, y, z) constant over z."""
        out = []
        for x in range(self.n):
            if self._has_witness(x)[0]:
                out.append(x)
        return frozenset(out)

    def _has_witness(self, x):
        found = False
        witnesses = {}
        for y in range(self.n):
            if y == x:
                continue
            sig = 0
            ok = True
            for z in range(self.n):
                if z == x or z == y:
                    continue
                s = self._sign(x, y, z)
                if sig == 0:
                    sig = s
                elif s != sig:
                    ok = False
                    break
            if ok:
                found = True
                witnesses[sig] = y
        return found, witnesses

    # -- axiom scan ------------------------------------------------------

    def _sign_cube(self):
        n = self.n
        cube = np.zeros((n, n, n), dtype=np.int8)
        for (i, j, k), s in self._table.items():
            cube[i, j, k] = cube[j, k, i] = cube[k, i, j] = s
            cube[j, i, k] = cube[i, k, j] = cube[k, j, i] = -s
        return cube

    def check_axioms(self) -> "AxiomReport":
        """Exhaustive interiority and transitivity scan.

        Degenerate tuples are excluded automatically because every premise
        requires a nonzero stored sign and the diagonal of the cube is zero.
        """
        cube = self._sign_cube()
        n = self.n

        # interiority over ordered (x, y, z, t):
        #   sign(t,y,z) = sign(x,t,z) = sign(x,y,t) = 1  requires  sign(x,y,z) = 1
        a1 = cube.transpose(1, 2, 0)[None, :, :, :]     # [x,y,z,t] <- cube[t,y,z]
        a2 = cube.transpose(0, 2, 1)[:, None, :, :]     # cube[x,t,z]
        a3 = cube[:, :, None, :]                        # cube[x,y,t]
        a4 = cube[:, :, :, None]                        # cube[x,y,z]
        bad = (a1 == 1) & (a2 == 1) & (a3 == 1) & (a4 == -1)
        interiority = [tuple(int(v) for v in row) for row in np.argwhere(bad)]

        # transitivity over ordered (s, t, x, y, z), chunked over s:
        #   sign(t,s,x) = sign(t,s,y) = sign(t,s,z) = sign(x,y,t) = sign(y,z,t) = 1
        #   requires sign(x,z,t) = 1
        transitivity = []
        ct = cube.transpose(2, 0, 1)                    # ct[t,x,y] = cube[x,y,t]
        for s in range(n):
            cs = cube[:, s, :]                          # cs[t,x] = cube[t,s,x]
            b1 = cs[:, :, None, None]
            b2 = cs[:, None, :, None]
            b3 = cs[:, None, None, :]
            b4 = ct[:, :, :, None]                      # cube[x,y,t]
            b5 = ct[:, None, :, :]                      # cube[y,z,t]
            b6 = ct[:, :, None, :]                      # cube[x,z,t]
            bad = ((b1 == 1) & (b2 == 1) & (b3 == 1)
                   & (b4 == 1) & (b5 == 1) & (b6 == -1))
            for t, x, y, z in np.argwhere(bad):
                transitivity.append((s, int(t), int(x), int(y), int(z)))

        report = AxiomReport(interiority, transitivity)
        if report.ok:
            self._verified = True
        return report


@dataclass
class AxiomReport:
    """Violation lists from an exhaustive axiom scan; empty lists mean valid.

    interiority rows are ordered tuples (x, y, z, t); transitivity rows are
    ordered tuples (s, t, x, y, z), matching the quantifier order of the scan.
    """

    interiority: list = field(default_factory=list)
    transitivity: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.interiority and not self.transitivity


@dataclass(frozen=True)
class RootedChirotope:
    """A chirotope with a distinguished extreme element (the root)."""

    chi: Chirotope
    root: int

    def __post_init__(self):
        if not (0 <= self.root < self.chi.n):
            raise NotARootedChirotope(f"root {self.root} out of range")
        if not self.chi._has_witness(self.root)[0]:
            raise NotARootedChirotope(f"root {self.root} is not extreme")

    @property
    def n(self) -> int:
        return self.chi.n

    def hull_neighbors(self) -> tuple[int, int]:
        """(successor, predecessor) of the root in counterclockwise hull order.

        The successor is the unique y with sign(root, y, z) = +1 for every z;
        the predecessor is the unique y with constant sign -1.
        """
        plus = minus = None
        for y in range(self.chi.n):
            if y == self.root:
                continue
            sig = 0
            ok = True
            for z in range(self.chi.n):
                if z == self.root or z == y:
                    continue
                s = self.chi._sign(self.root, y, z)
                if sig == 0:
                    sig = s
                elif s != sig:
                    ok = False
                    break
            if not ok:
                continue
            if sig == 1:
                if plus is not None:
                    raise NotARootedChirotope("multiple all-positive witnesses")
                plus = y
            elif sig == -1:
                if minus is not None:
                    raise NotARootedChirotope("multiple all-negative witnesses")
                minus = y
        if plus is None or minus is None:
            raise NotARootedChirotope("missing hull neighbor witness")
        return plus, minus


def chirotope_from_points(ps: PointSet) -> Chirotope:
    """Orientation chirotope of an exact-rational point set in general position."""
    n = len(ps)
    if n < 3:
        raise TooSmall(f"need at least 3 points, got {n}")
    table = {}
    for i, j, k in sorted_triples(n):
        try:
            table[(i, j, k)] = orient(ps[i], ps[j], ps[k])
        except GeneralPositionViolation as exc:
            raise GeneralPositionViolation(f"labels ({i}, {j}, {k}): {exc}") from exc
    return Chirotope(n, table)


def flip(chi: Chirotope) -> Chirotope:
    return chi.flipped()


def segments_cross(chi: Chirotope, a, b) -> bool:
    """Whether segments a = (x, y) and b = (z, t) cross in the chirotope.

    Endpoints must be pairwise distinct; a shared endpoint raises
    SharedEndpoint so the caller decides (touching is never "crossing").
    """
    x, y = a
    z, t = b
    if x == y or z == t:
        raise InvalidTriple(f"degenerate segment in {a}, {b}")
    if len({x, y, z, t}) != 4:
        raise SharedEndpoint(f"segments {a} and {b} share an endpoint")
    return (chi.sign(x, y, z) != chi.sign(x, y, t)
            and chi.sign(z, t, x) != chi.sign(z, t, y))


# -- .chi text format ------------------------------------------------------

_CHI_HEADER = "chirotope v1"


def write_chi(chi: Chirotope, root=None) -> str:
    """Serialize to the ``.chi`` text format; one +/- char per sorted triple."""
    lines = [_CHI_HEADER, f"n {chi.n}"]
    if root is not None:
        lines.append(f"root {root}")
    lines.append("triples")
    signs = "".join("+" if s == 1 else "-" for _, s in chi.items())
    lines.extend(signs[i:i + 60] for i in range(0, len(signs), 60))
    return "\n".join(lines) + "\n"


def read_chi(text: str) -> tuple[Chirotope, int | None]:
    """Parse the ``.chi`` text format; returns (chirotope, root or None)."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != _CHI_HEADER:
        raise MalformedFile("missing 'chirotope v1' header")
    if len(lines) < 2 or not lines[1].startswith("n "):
        raise MalformedFile("missing 'n <N>' line")
    try:
        n = int(lines[1][2:])
    except ValueError as exc:
        raise MalformedFile(f"bad element count {lines[1]!r}") from exc
    pos = 2
    root = None
    if pos < len(lines) and lines[pos].startswith("root "):
        try:
            root = int(lines[pos][5:])
        except ValueError as exc:
            raise MalformedFile(f"bad root {lines[pos]!r}") from exc
        pos += 1
    if pos >= len(lines) or lines[pos] != "triples":
        raise MalformedFile("missing 'triples' line")
    blob = "".join(lines[pos + 1:])
    blob = "".join(blob.split())
    expected = n * (n - 1) * (n - 2) // 6
    if len(blob) != expected:
        raise MalformedFile(f"expected {expected} sign characters, got {len(blob)}")
    table = {}
    for t, ch in zip(sorted_triples(n), blob):
        if ch == "+":
            table[t] = 1
        elif ch in "-−":
            table[t] = -1
        else:
            raise MalformedFile(f"bad sign character {ch!r}")
    return Chirotope(n, table), root
