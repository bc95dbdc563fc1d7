"""Direct computation of the Hilbert-Kunz function, degree by degree.

For each degree m the engine assembles the multiplication map

    (+)_i R_{m - q d_i}  ->  R_m,   (a_i) |-> sum_i a_i g_i,

with g_i the reduced q-th generator powers, in monomial coordinates of
the per-degree bases, and computes one rank.  The colength of the
degree-m piece of R/(g_1, ..., g_n) is then dim R_m - rank, and the
kernel dimension of the same matrix is the global syzygy dimension
h^0(Syz(g_1..g_n)(m)).  Both are reported from a single elimination;
the alternating-sum identity relating them is asserted as a free
indexing cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CapExceededError, InternalError, UserError
from .linalg import RankBuilder
from .ring import GradedRing, IdealSpec

DEFAULT_SAFETY = 16


def validate_prime_power(p: int, q: int) -> int:
    """Return e with q = p^e, or raise."""
    if q < 1:
        raise UserError(f"q must be a positive power of {p}, got {q}")
    e = 0
    while q > 1:
        if q % p:
            raise UserError(f"q must be a power of the characteristic {p}")
        q //= p
        e += 1
    return e


def frobenius_power_gens(ideal: IdealSpec, q: int) -> tuple:
    """Reduced generators of the q-th Frobenius power."""
    validate_prime_power(ideal.field.p, q)
    return tuple(ideal.ring.pow_reduced(g, q) for g in ideal.gens)


def _free2_block(ring: GradedRing, g, m: int) -> np.ndarray:
    """Multiplication-by-g block R_{m-d} -> R_m for the free ring K[x,y].

    With bases indexed by y-exponent the map is a shifted copy of g's
    coefficient vector in every column.
    """
    d = g.degree()
    cols = m - d + 1
    rows = m + 1
    cvec = np.zeros(d + 1, dtype=np.int64)
    for exp, c in g.terms.items():
        cvec[exp[1]] = c
    block = np.zeros((rows, cols), dtype=np.int64)
    for j in range(cols):
        block[j : j + d + 1, j] = cvec
    return block


def _generic_columns(ring: GradedRing, g, m: int):
    """Columns of the multiplication-by-g map as {row: coeff} dicts."""
    d = g.degree()
    index = ring.basis_index(m)
    reduce_needed = ring.relation is not None
    gterms = g.terms
    for mu in ring.basis(m - d):
        prod = {}
        for exp, c in gterms.items():
            key = tuple(a + b for a, b in zip(mu, exp))
            prod[key] = prod.get(key, 0) + c
        if reduce_needed:
            prod = ring.reduce_terms(prod)
        yield {index[e]: c for e, c in prod.items()}


@dataclass(frozen=True)
class DegreePiece:
    """Per-degree data from one elimination."""

    m: int
    colength: int
    syzygy_h0: int
    rank: int
    dim_target: int
    dim_source: int


def _degree_piece(ideal: IdealSpec, gens_q, q: int, m: int) -> DegreePiece:
    ring = ideal.ring
    rows = ring.hilbert_dim(m)
    source_dims = [ring.hilbert_dim(m - q * d) for d in ideal.degrees]
    cols = sum(source_dims)
    if rows == 0 or cols == 0:
        return DegreePiece(m, rows, cols, 0, rows, cols)
    builder = RankBuilder(ideal.field, rows)
    fed = 0
    for g, dim_i in zip(gens_q, source_dims):
        if dim_i == 0:
            continue
        if ring.relation is None and ring.nvars == 2:
            builder.add_columns(_free2_block(ring, g, m))
        else:
            for col in _generic_columns(ring, g, m):
                builder.add_column(col)
        fed += dim_i
    if fed != cols:
        raise InternalError("column count mismatch while building the map")
    rank = builder.rank()
    colength = rows - rank
    h0 = cols - rank
    # rank-nullity form of the alternating sum; guards indexing errors
    if colength != rows - cols + h0:
        raise InternalError("alternating-sum identity violated")
    return DegreePiece(m, colength, h0, rank, rows, cols)


def degree_piece(ideal: IdealSpec, q: int, m: int) -> DegreePiece:
    """Colength and syzygy dimension of the degree-m piece of R/I^[q]."""
    if m < 0:
        return DegreePiece(m, 0, 0, 0, 0, 0)
    gens_q = frobenius_power_gens(ideal, q)
    return _degree_piece(ideal, gens_q, q, m)


def graded_piece_colength(ideal: IdealSpec, q: int, m: int) -> int:
    return degree_piece(ideal, q, m).colength


def syzygy_h0(ideal: IdealSpec, q: int, m: int) -> int:
    """dim H^0(Y, Syz(f_1^q, ..., f_n^q)(m)) = kernel of the degree-m map."""
    return degree_piece(ideal, q, m).syzygy_h0


def colength_of_generators(ring: GradedRing, gens, m: int) -> int:
    """Degree-m colength of the plain ideal (gens); used by primarity checks."""
    rows = ring.hilbert_dim(m)
    if rows == 0:
        return 0
    gens = [ring.reduce(g) for g in gens]
    builder = RankBuilder(ring.field, rows)
    for g in gens:
        if g.is_zero():
            continue
        d = g.degree()
        if ring.hilbert_dim(m - d) == 0:
            continue
        if ring.relation is None and ring.nvars == 2:
            builder.add_columns(_free2_block(ring, g, m))
        else:
            for col in _generic_columns(ring, g, m):
                builder.add_column(col)
    return rows - builder.rank()


@dataclass
class HKRow:
    """One row of the Hilbert-Kunz function: q -> colength of I^[q]."""

    q: int
    phi: int
    cutoff: int  # first degree of the terminal run of zero colengths
    per_degree: dict = dc_field(default_factory=dict)


@dataclass
class HKFunctionTable:
    ideal: IdealSpec
    rows: dict = dc_field(default_factory=dict)  # q -> HKRow

    def add(self, row: HKRow) -> None:
        self.rows[row.q] = row

    def sorted_rows(self):
        return [self.rows[q] for q in sorted(self.rows)]


def hk_value(
    ideal: IdealSpec,
    q: int,
    *,
    consecutive_zeros: int | None = None,
    hard_cap: int | None = None,
    keep_degrees: bool = True,
) -> HKRow:
    """phi(I, q) = length(R/I^[q]) by summing per-degree colengths.

    In a standard-graded quotient one vanishing graded piece forces all
    higher pieces to vanish, so summation stops at the first run of
    ``consecutive_zeros`` zero degrees (default: sum of the generator
    degrees, as cheap insurance against indexing bugs).  The a-priori
    degree bound q * max_{i != j}(d_i + d_j) plus slack serves as a hard
    cap; hitting it signals non-primary input or a bug.
    """
    validate_prime_power(ideal.field.p, q)
    if consecutive_zeros is None:
        consecutive_zeros = max(1, sum(ideal.degrees))
    if hard_cap is None:
        hard_cap = q * ideal.max_pair_degree() + DEFAULT_SAFETY + consecutive_zeros
    gens_q = frobenius_power_gens(ideal, q)
    per_degree = {}
    phi = 0
    zeros_run = 0
    m = 0
    while True:
        piece = _degree_piece(ideal, gens_q, q, m)
        c = piece.colength
        if keep_degrees:
            per_degree[m] = c
        phi += c
        zeros_run = zeros_run + 1 if c == 0 else 0
        if zeros_run >= consecutive_zeros:
            cutoff = m - zeros_run + 1
            break
        m += 1
        if m > hard_cap:
            raise CapExceededError(
                f"no vanishing tail up to degree {hard_cap} for q={q}; "
                "non-primary input or raise the cap"
            )
    return HKRow(q=q, phi=phi, cutoff=cutoff, per_degree=per_degree)


def hk_table(ideal: IdealSpec, q_list, **kwargs) -> HKFunctionTable:
    table = HKFunctionTable(ideal)
    for q in q_list:
        table.add(hk_value(ideal, q, **kwargs))
    return table
