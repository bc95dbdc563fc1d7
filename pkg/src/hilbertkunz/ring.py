"""Graded rings: the free ring K[X_1..X_N] and hypersurface quotients S/(H).

Normal forms with respect to the single relation H use the classical
one-divisor division algorithm under the fixed grevlex order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import NotPrimaryError, UserError
from .field import PrimeField
from .poly import (
    Poly,
    graded_piece_basis,
    grevlex_key,
    monomial_div,
    monomial_divides,
    monomial_mul,
)


class GradedRing:
    """Standard-graded ring, either free or a hypersurface quotient.

    For the hypersurface kind the relation is normalized to be monic
    (leading coefficient 1 under grevlex); this changes the relation only
    by a unit and keeps the quotient ring unchanged.
    """

    def __init__(self, field: PrimeField, varnames, relation: Poly | None = None):
        self.field = field
        self.vars = tuple(varnames)
        self.nvars = len(self.vars)
        if self.nvars < 1:
            raise UserError("need at least one variable")
        if relation is not None:
            if relation.is_zero():
                raise UserError("hypersurface relation must be nonzero")
            if not relation.is_homogeneous():
                raise UserError("hypersurface relation must be homogeneous")
            if relation.nvars != self.nvars or relation.field.p != field.p:
                raise UserError("relation lives in a different ring")
            if relation.degree() < 1:
                raise UserError("hypersurface relation must have degree >= 1")
            lead = relation.leading_monomial()
            lc = relation.terms[lead]
            if lc != 1:
                relation = relation.scale(field.inv(lc))
            self._lt = lead
            # H = LT + tail, so LT == -tail in the quotient
            self._tail = {
                e: field.neg(c) for e, c in relation.terms.items() if e != lead
            }
        self.relation = relation
        self._basis_cache = {}
        self._index_cache = {}

    @property
    def kind(self) -> str:
        return "free" if self.relation is None else "hypersurface"

    @property
    def relation_degree(self) -> int:
        if self.relation is None:
            raise UserError("free ring has no relation")
        return self.relation.degree()

    def leading_relation_monomial(self):
        if self.relation is None:
            raise UserError("free ring has no relation")
        return self._lt

    # -- graded pieces -------------------------------------------------

    def hilbert_dim(self, m: int) -> int:
        """Dimension of the degree-m graded piece."""
        if m < 0:
            return 0
        n = self.nvars
        dim = comb(m + n - 1, n - 1)
        if self.relation is not None:
            h = self.relation.degree()
            if m - h >= 0:
                dim -= comb(m - h + n - 1, n - 1)
        return dim

    def basis(self, m: int) -> tuple:
        """Monomial basis of the degree-m piece, descending grevlex.

        For the hypersurface kind: degree-m monomials not divisible by
        the leading monomial of H.
        """
        if m < 0:
            return ()
        cached = self._basis_cache.get(m)
        if cached is not None:
            return cached
        mons = graded_piece_basis(self.nvars, m)
        if self.relation is not None:
            lt = self._lt
            mons = tuple(e for e in mons if not monomial_divides(lt, e))
        assert len(mons) == self.hilbert_dim(m)
        self._basis_cache[m] = mons
        return mons

    def basis_index(self, m: int) -> dict:
        cached = self._index_cache.get(m)
        if cached is None:
            cached = {e: i for i, e in enumerate(self.basis(m))}
            self._index_cache[m] = cached
        return cached

    # -- normal forms --------------------------------------------------

    def reduce_terms(self, terms: dict) -> dict:
        """Reduce a term dict modulo the relation (hypersurface kind)."""
        lt = self._lt
        tail = self._tail
        p = self.field.p
        out = {e: c % p for e, c in terms.items() if c % p}
        heap = []
        for e in out:
            if monomial_divides(lt, e):
                k = grevlex_key(e)
                heapq.heappush(heap, ((-k[0], tuple(-x for x in k[1])), e))
        while heap:
            _, e = heapq.heappop(heap)
            c = out.get(e)
            if not c:
                continue
            del out[e]
            quot = monomial_div(e, lt)
            for te, tc in tail.items():
                ne = monomial_mul(quot, te)
                nc = (out.get(ne, 0) + c * tc) % p
                if nc:
                    if ne not in out and monomial_divides(lt, ne):
                        k = grevlex_key(ne)
                        heapq.heappush(
                            heap, ((-k[0], tuple(-x for x in k[1])), ne)
                        )
                    out[ne] = nc
                elif ne in out:
                    del out[ne]
        return out

    def normal_form(self, f: Poly) -> Poly:
        """Representative of f with no term divisible by LT(H)."""
        if self.relation is None:
            raise UserError("normal_form requires a hypersurface ring")
        if f.nvars != self.nvars or f.field.p != self.field.p:
            raise UserError("polynomial lives in a different ring")
        return Poly(self.field, self.nvars, self.reduce_terms(f.terms))

    def reduce(self, f: Poly) -> Poly:
        """normal_form on hypersurface rings, identity on free rings."""
        return f if self.relation is None else self.normal_form(f)

    def pow_reduced(self, f: Poly, k: int) -> Poly:
        """f^k reduced after every multiplication to bound term counts."""
        result = Poly.constant(self.field, self.nvars, 1)
        base = self.reduce(f)
        while k:
            if k & 1:
                result = self.reduce(result * base)
            if k > 1:
                base = self.reduce(base * base)
            k >>= 1
        return result

    def parse(self, text: str) -> Poly:
        from .poly import parse_poly

        return self.reduce(parse_poly(text, self.vars, self.field))

    def poly_str(self, f: Poly) -> str:
        return f.to_string(self.vars)

    def __repr__(self):
        if self.relation is None:
            return f"F_{self.field.p}[{','.join(self.vars)}]"
        return f"F_{self.field.p}[{','.join(self.vars)}]/({self.poly_str(self.relation)})"


def first_vanishing_degree(ring: GradedRing, gens, bound: int) -> int:
    """Smallest m with (R/(gens))_m = 0, or NotPrimaryError if none <= bound.

    In a standard-graded ring one vanishing graded piece forces all
    higher ones to vanish, so the first hit is returned immediately.
    """
    from . import engine

    for m in range(0, bound + 1):
        if engine.colength_of_generators(ring, gens, m) == 0:
            return m
    raise NotPrimaryError(
        f"no vanishing graded piece up to degree {bound}; ideal is not primary "
        "(or raise the primarity bound)"
    )


@dataclass
class IdealSpec:
    """A homogeneous primary ideal given by explicit generators.

    Construction checks homogeneity, records generator degrees, reduces
    generators to normal form, and verifies primarity up to a bound
    (default 2 * sum of generator degrees).
    """

    ring: GradedRing
    gens: tuple
    degrees: tuple = dc_field(init=False)
    primarity_degree: int = dc_field(init=False)
    primarity_bound: int | None = None

    def __post_init__(self):
        gens = []
        for g in self.gens:
            g = self.ring.reduce(g)
            if g.is_zero():
                raise UserError("zero generator")
            if not g.is_homogeneous():
                raise UserError(f"generator {g!r} is not homogeneous")
            gens.append(g)
        if len(gens) < 2:
            raise UserError("need at least two generators")
        self.gens = tuple(gens)
        self.degrees = tuple(g.degree() for g in gens)
        bound = self.primarity_bound
        if bound is None:
            bound = 2 * sum(self.degrees)
        if bound < sum(self.degrees):
            raise UserError("primarity bound must be at least the degree sum")
        self.primarity_degree = first_vanishing_degree(self.ring, self.gens, bound)

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def field(self) -> PrimeField:
        return self.ring.field

    def max_pair_degree(self) -> int:
        ds = sorted(self.degrees, reverse=True)
        return ds[0] + ds[1]

    def __repr__(self):
        gens = ", ".join(self.ring.poly_str(g) for g in self.gens)
        return f"({gens}) in {self.ring!r}"


def check_primary(ideal: IdealSpec, bound: int) -> int:
    """First m with (R/I)_m = 0; NotPrimaryError if none up to the bound."""
    if bound < sum(ideal.degrees):
        raise UserError("primarity bound must be at least the degree sum")
    return first_vanishing_degree(ideal.ring, ideal.gens, bound)
