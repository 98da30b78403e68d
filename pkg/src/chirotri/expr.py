"""Composition expression language: parser, printer, and two-mode evaluator.

Grammar::

    expr    := term { ('v' | '^') term }          # infix join / meet
    term    := IDENT | IDENT '(' args ')' | '(' expr ')'
    args    := value { ',' value }

``join``/``meet`` calls take two or more arguments and fold left; ``twist``
and ``flip`` take exactly one. Infix ``v`` and ``^`` share one precedence
level and may not be mixed without parentheses. Atom builtins: ``triangle``,
``convex(n)``, ``chi1``, ``chik(k)``, ``koch(i)``, ``dc(k)``,
``load("path"[, root])``.

Evaluation either materializes the rooted chirotope (refusing results beyond
the oracle cap) or propagates weak-triangulation polynomials without ever
materializing a large chirotope. In polynomial mode the recursive generators
expand into shared subtrees of triangle leaves, so any level is reachable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

from . import compose
from .chirotope import RootedChirotope, chirotope_from_points, read_chi
from .errors import ExprSyntaxError, NotARootedChirotope, OutOfRange, TooLarge
from .geometry import PointSet
from .oracle import DEFAULT_ORACLE_CAP, brute_P
from .polynomials import BivarPoly, join_P, meet_P, swap_vars


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Join:
    left: object
    right: object


@dataclass(frozen=True)
class Meet:
    left: object
    right: object


@dataclass(frozen=True)
class Twist:
    inner: object


@dataclass(frozen=True)
class Flip:
    inner: object


Expr = (Atom, Join, Meet, Twist, Flip)

_BUILTIN_ARITIES = {
    "triangle": (0, 0),
    "chi1": (0, 0),
    "convex": (1, 1),
    "chik": (1, 1),
    "koch": (1, 1),
    "dc": (1, 1),
    "load": (1, 2),
}


# -- tokenizer / parser -------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # IDENT NUMBER STRING ( ) , ^ EOF
    text: str
    line: int
    col: int


def _tokenize(src: str):
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "(),^":
            toks.append(_Tok(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = src.find('"', i + 1)
            if j < 0:
                raise ExprSyntaxError("unterminated string", line, col)
            toks.append(_Tok("STRING", src[i + 1:j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("NUMBER", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Tok("IDENT", src[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {t.text or t.kind!r}",
                                  t.line, t.col)
        return self.next()

    def expr(self):
        node = self.term()
        seen_op = None
        while True:
            t = self.peek()
            if t.kind == "^":
                op = "^"
            elif t.kind == "IDENT" and t.text == "v":
                op = "v"
            else:
                return node
            if seen_op is None:
                seen_op = op
            elif op != seen_op:
                raise ExprSyntaxError(
                    "parentheses required to mix infix join and meet",
                    t.line, t.col)
            self.next()
            rhs = self.term()
            node = Join(node, rhs) if op == "v" else Meet(node, rhs)

    def term(self):
        t = self.peek()
        if t.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "IDENT":
            raise ExprSyntaxError(f"expected an expression, found "
                                  f"{t.text or t.kind!r}", t.line, t.col)
        self.next()
        name = t.text
        if name in ("join", "meet", "twist", "flip"):
            self.expect("(")
            args = [self.expr()]
            while self.peek().kind == ",":
                self.next()
                args.append(self.expr())
            self.expect(")")
            if name in ("twist", "flip"):
                if len(args) != 1:
                    raise ExprSyntaxError(f"{name} takes exactly 1 argument, "
                                          f"got {len(args)}", t.line, t.col)
                return Twist(args[0]) if name == "twist" else Flip(args[0])
            if len(args) < 2:
                raise ExprSyntaxError(f"{name} takes at least 2 arguments, "
                                      f"got {len(args)}", t.line, t.col)
            node = args[0]
            for rhs in args[1:]:
                node = Join(node, rhs) if name == "join" else Meet(node, rhs)
            return node
        if name not in _BUILTIN_ARITIES:
            raise ExprSyntaxError(f"unknown identifier {name!r}", t.line, t.col)
        lo, hi = _BUILTIN_ARITIES[name]
        args = ()
        if self.peek().kind == "(":
            self.next()
            vals = []
            if self.peek().kind != ")":
                vals.append(self.value())
                while self.peek().kind == ",":
                    self.next()
                    vals.append(self.value())
            self.expect(")")
            args = tuple(vals)
        if not lo <= len(args) <= hi:
            raise ExprSyntaxError(
                f"{name} takes {lo} to {hi} argument(s), got {len(args)}"
                if lo != hi else
                f"{name} takes {lo} argument(s), got {len(args)}",
                t.line, t.col)
        if name == "load":
            if not isinstance(args[0], str):
                raise ExprSyntaxError("load needs a quoted path", t.line, t.col)
            if len(args) == 2 and not isinstance(args[1], int):
                raise ExprSyntaxError("load root must be an integer", t.line, t.col)
        elif any(not isinstance(a, int) for a in args):
            raise ExprSyntaxError(f"{name} takes integer arguments", t.line, t.col)
        return Atom(name, args)

    def value(self):
        t = self.peek()
        if t.kind == "NUMBER":
            self.next()
            return int(t.text)
        if t.kind == "STRING":
            self.next()
            return t.text
        raise ExprSyntaxError(f"expected a number or string, found "
                              f"{t.text or t.kind!r}", t.line, t.col)


def parse_expr(src: str):
    p = _Parser(_tokenize(src))
    node = p.expr()
    t = p.peek()
    if t.kind != "EOF":
        raise ExprSyntaxError(f"trailing input {t.text!r}", t.line, t.col)
    return node


def print_expr(e) -> str:
    """Canonical text form; reparsing reproduces the identical tree."""
    if isinstance(e, Atom):
        if not e.args:
            return e.name
        rendered = ", ".join(f'"{a}"' if isinstance(a, str) else str(a)
                             for a in e.args)
        return f"{e.name}({rendered})"
    if isinstance(e, Join):
        return f"join({print_expr(e.left)}, {print_expr(e.right)})"
    if isinstance(e, Meet):
        return f"meet({print_expr(e.left)}, {print_expr(e.right)})"
    if isinstance(e, Twist):
        return f"twist({print_expr(e.inner)})"
    return f"flip({print_expr(e.inner)})"


# -- evaluation ----------------------------------------------------------------


class EvalMode(enum.Enum):
    MATERIALIZE = "materialize"
    POLYNOMIAL = "polynomial"


def load_rooted(path: str, root: int | None = None) -> RootedChirotope:
    """Load a rooted chirotope from a ``.chi`` or ``.pts`` file."""
    text = Path(path).read_text()
    if str(path).endswith(".pts"):
        chi = chirotope_from_points(PointSet.from_text(text))
        file_root = None
    else:
        chi, file_root = read_chi(text)
    root = file_root if root is None else root
    if root is None:
        raise NotARootedChirotope(f"{path}: no root given and none in the file")
    return RootedChirotope(chi, root)


def _materialize_atom(e: Atom) -> RootedChirotope:
    name, args = e.name, e.args
    if name == "triangle":
        return compose.triangle()
    if name == "chi1":
        return compose.chi1()
    if name == "convex":
        return compose.convex(args[0])
    if name == "chik":
        return compose.chi_k(args[0])
    if name == "koch":
        return compose.koch(args[0])
    if name == "dc":
        return compose.double_circle(args[0])
    return load_rooted(args[0], args[1] if len(args) == 2 else None)


def _expand_for_polynomials(e: Atom):
    """Rewrite a recursive generator atom into a shared tree of small leaves."""
    if e.name == "koch":
        node = Atom("triangle")
        for level in range(1, e.args[0] + 1):
            node = Join(node, node) if level % 2 == 1 else Meet(node, node)
        return node
    if e.name == "chik":
        node = Atom("chi1")
        for _ in range(e.args[0] - 1):
            node = Join(node, Atom("chi1"))
        return node
    if e.name == "convex" and e.args[0] > 9:
        node = Atom("triangle")
        for _ in range(e.args[0] - 3):
            node = Join(node, Atom("triangle"))
        return node
    return None


def eval_expr(e, mode: EvalMode = EvalMode.MATERIALIZE,
              oracle_cap: int | None = None):
    """Evaluate an expression tree; see EvalMode for the two strategies."""
    cap = DEFAULT_ORACLE_CAP if oracle_cap is None else oracle_cap
    memo: dict = {}
    if mode == EvalMode.MATERIALIZE:
        return _eval_mat(e, cap, memo)
    if mode == EvalMode.POLYNOMIAL:
        return _eval_poly(e, cap, memo)
    raise OutOfRange(f"unknown mode {mode!r}")


def _eval_mat(e, cap, memo) -> RootedChirotope:
    got = memo.get(e)
    if got is not None:
        return got
    if isinstance(e, Atom):
        rc = _materialize_atom(e)
    elif isinstance(e, Join):
        rc = compose.join(_eval_mat(e.left, cap, memo),
                          _eval_mat(e.right, cap, memo))[0]
    elif isinstance(e, Meet):
        rc = compose.meet(_eval_mat(e.left, cap, memo),
                          _eval_mat(e.right, cap, memo))[0]
    elif isinstance(e, Twist):
        rc = compose.twist(_eval_mat(e.inner, cap, memo))
    elif isinstance(e, Flip):
        inner = _eval_mat(e.inner, cap, memo)
        rc = RootedChirotope(inner.chi.flipped(), inner.root)
    else:
        raise OutOfRange(f"not an expression node: {e!r}")
    if rc.chi.n > cap:
        raise TooLarge(
            f"materialized result has {rc.chi.n} elements, above the oracle "
            f"cap {cap}; use the polynomial mode")
    memo[e] = rc
    return rc


def _eval_poly(e, cap, memo) -> BivarPoly:
    got = memo.get(e)
    if got is not None:
        return got
    if isinstance(e, Atom):
        expanded = _expand_for_polynomials(e)
        if expanded is not None:
            p = _eval_poly(expanded, cap, memo)
        else:
            p = brute_P(_materialize_atom(e), cap=cap)
    elif isinstance(e, Join):
        p = join_P(_eval_poly(e.left, cap, memo), _eval_poly(e.right, cap, memo))
    elif isinstance(e, Meet):
        p = meet_P(_eval_poly(e.left, cap, memo), _eval_poly(e.right, cap, memo))
    elif isinstance(e, Twist):
        p = swap_vars(_eval_poly(e.inner, cap, memo))
    elif isinstance(e, Flip):
        # reversing every orientation leaves the crossing relation unchanged
        p = _eval_poly(e.inner, cap, memo)
    else:
        raise OutOfRange(f"not an expression node: {e!r}")
    memo[e] = p
    return p
