"""Sparse homogeneous multivariate polynomials over a prime field.

Monomials are exponent tuples ordered by graded reverse lexicographic
order with the user-declared variable sequence.  The text grammar is::

    expr     ::= ["-"] term { ("+" | "-") term }
    term     ::= factor { ["*"] factor }          (implicit products allowed)
    factor   ::= atom [ "^" integer ]
    atom     ::= integer | variable | "(" expr ")"

Whitespace is ignored; coefficients are integers reduced mod p.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import ParseError, UserError
from .field import PrimeField

Monomial = tuple  # tuple of nonnegative ints, one per variable

MAX_EXPONENT = 1 << 24


def grevlex_key(exp: Monomial):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if a | b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming divisibility."""
    return tuple(x - y for x, y in zip(a, b))


@lru_cache(maxsize=4096)
def graded_piece_basis(nvars: int, m: int) -> tuple:
    """All degree-m monomials in nvars variables, descending grevlex."""
    if nvars <= 0:
        raise UserError("nvars must be positive")
    if m < 0:
        return ()
    mons = []

    def rec(prefix, remaining, k):
        if k == 1:
            mons.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, k - 1)

    rec((), m, nvars)
    mons.sort(key=grevlex_key, reverse=True)
    assert len(mons) == comb(m + nvars - 1, nvars - 1)
    return tuple(mons)


class Poly:
    """Immutable sparse polynomial; terms map Monomial -> nonzero int in [1, p)."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: PrimeField, nvars: int, terms: dict):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c % field.p for e, c in terms.items() if c % field.p}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, exp: Monomial, coeff: int = 1):
        return cls(field, len(exp), {tuple(exp): coeff})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise UserError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def _check(self, other: Poly):
        if self.field.p != other.field.p or self.nvars != other.nvars:
            raise UserError("polynomials live in different rings")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.field, self.nvars, terms)

    def __sub__(self, other: Poly) -> Poly:
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) - c
        return Poly(self.field, self.nvars, terms)

    def __neg__(self) -> Poly:
        return Poly(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c: int) -> Poly:
        return Poly(self.field, self.nvars, {e: cc * c for e, cc in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        p = self.field.p
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                terms[e] = (terms.get(e, 0) + c1 * c2) % p
        return Poly(self.field, self.nvars, terms)

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise UserError("negative polynomial power")
        if k > MAX_EXPONENT:
            raise UserError(f"exponent {k} exceeds cap {MAX_EXPONENT}")
        result = Poly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field.p == other.field.p
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.p, self.nvars, frozenset(self.terms.items())))

    # -- printing -----------------------------------------------------

    def to_string(self, varnames) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(varnames, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(coeff)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.to_string(names)} over F_{self.field.p})"


# -- parser -----------------------------------------------------------


class _Tokenizer:
    def __init__(self, text: str, varnames):
        self.text = text
        self.pos = 0
        # longest-match-first so that declared names like "xy" win over "x","y"
        self.varnames = sorted(varnames, key=len, reverse=True)
        self.tokens = []
        self._scan()

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("INT", int(text[i:j]), i))
                i = j
                continue
            if ch in "+-*^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            for name in self.varnames:
                if text.startswith(name, i):
                    self.tokens.append(("VAR", name, i))
                    i += len(name)
                    break
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("END", None, len(text)))


class _Parser:
    def __init__(self, text, varnames, field: PrimeField):
        self.toks = _Tokenizer(text, varnames).tokens
        self.idx = 0
        self.field = field
        self.varnames = list(varnames)
        self.nvars = len(self.varnames)

    def peek(self):
        return self.toks[self.idx]

    def next(self):
        tok = self.toks[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Poly:
        negate = False
        if self.peek()[0] == "-":
            self.next()
            negate = True
        elif self.peek()[0] == "+":
            self.next()
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            result = result - rhs if op == "-" else result + rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.next()
                result = result * self.factor()
            elif kind in ("INT", "VAR", "("):  # implicit multiplication
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("INT")
            k = tok[1]
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds cap {MAX_EXPONENT}", tok[2])
            base = base**k
        return base

    def atom(self) -> Poly:
        tok = self.next()
        kind, value, pos = tok
        if kind == "INT":
            return Poly.constant(self.field, self.nvars, value)
        if kind == "VAR":
            return Poly.variable(self.field, self.nvars, self.varnames.index(value))
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str, varnames, field: PrimeField) -> Poly:
    """Parse a polynomial over the given variables and field."""
    if len(set(varnames)) != len(list(varnames)):
        raise UserError("duplicate variable names")
    return _Parser(text, varnames, field).parse()
