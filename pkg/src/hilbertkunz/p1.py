"""Exact splitting types and slope data over the projective line.

Over R = K[x,y] every syzygy bundle splits as a direct sum of twists
O(-e_1) + ... + O(-e_{n-1}), and the global-section profile determines
the twists: the first difference h0(m) - h0(m-1) counts the twists with
e_j <= m.  Pulling back under Frobenius scales every twist by p, so
comparing the twist multisets at two q values tests whether the slope
data has stabilized.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import engine
from .errors import InternalError, UserError
from .ring import IdealSpec
from .slopes import HNData, ehk_from_hn, validate


def _require_p1(ideal: IdealSpec) -> None:
    if ideal.ring.relation is not None or ideal.ring.nvars != 2:
        raise UserError("splitting types require the free ring in two variables")


@dataclass(frozen=True)
class SplittingType:
    """Twist multiset of the syzygy bundle of the q-th generator powers."""

    q: int
    twists: tuple  # ascending positive integers, one per syzygy rank

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(int(e) for e in self.twists)))


@dataclass(frozen=True)
class NotStabilized:
    """Twist multisets at two q values that are not Frobenius-scaled copies."""

    first: SplittingType
    second: SplittingType

    def __bool__(self):
        return False


def splitting_type(ideal: IdealSpec, q: int) -> SplittingType:
    """Recover the twists from second differences of the h0 profile."""
    _require_p1(ideal)
    engine.validate_prime_power(ideal.field.p, q)
    gens_q = engine.frobenius_power_gens(ideal, q)
    n = ideal.n
    cap = q * ideal.max_pair_degree() + 1
    twists = []
    prev_h0 = 0
    prev_delta = 0
    for m in range(cap + 1):
        h0 = engine._degree_piece(ideal, gens_q, q, m).syzygy_h0
        delta = h0 - prev_h0
        new = delta - prev_delta
        if new < 0 or delta > n - 1:
            raise InternalError(
                f"h0 profile at q={q}, m={m} is inconsistent with a split bundle"
            )
        twists.extend([m] * new)
        prev_h0, prev_delta = h0, delta
        if len(twists) == n - 1:
            break
    st = SplittingType(q=q, twists=tuple(twists))
    if len(st.twists) != n - 1:
        raise InternalError(
            f"found {len(st.twists)} twists, expected {n - 1} (rank of the bundle)"
        )
    if sum(st.twists) != q * sum(ideal.degrees):
        raise InternalError(
            f"twist sum {sum(st.twists)} != q * sum(d_i) = {q * sum(ideal.degrees)}"
        )
    return st


def hn_from_splittings(s1: SplittingType, s2: SplittingType, *, n=None, degY=1):
    """Slope data from two splitting types, if the second is the scaled first.

    Returns HNData on stabilization, else NotStabilized with both
    multisets.  n defaults to one more than the twist count.
    """
    if s2.q <= s1.q:
        raise UserError("second splitting type must have the larger q")
    if s2.q % s1.q:
        raise UserError("q values must differ by a power of the characteristic")
    ratio = s2.q // s1.q
    if ratio < 2:
        raise UserError("q values must differ by a power of the characteristic")
    scaled = tuple(sorted(ratio * e for e in s1.twists))
    if scaled != s2.twists:
        return NotStabilized(first=s1, second=s2)
    if n is None:
        n = len(s1.twists) + 1
    nus = []
    ranks = []
    for e in s1.twists:
        v = Fraction(e, s1.q)
        if nus and nus[-1] == v:
            ranks[-1] += 1
        else:
            nus.append(v)
            ranks.append(1)
    return HNData(n=n, degY=degY, ranks=tuple(ranks), nus=tuple(nus))


def _twists_from_hn(hn: HNData, q: int) -> list:
    twists = []
    for r, v in zip(hn.ranks, hn.nus):
        e = v * q
        if e.denominator != 1:
            raise UserError(f"threshold {v} does not give integer twists at q={q}")
        twists.extend([int(e)] * r)
    return twists


@dataclass
class ProfileReport:
    """Outcome of checking the h0 profile against predicted twists."""

    q: int
    twists: tuple
    checked_range: tuple
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_h0_profile(ideal: IdealSpec, q: int, hn: HNData) -> ProfileReport:
    """Check computed h0 values against the split-bundle predictions.

    On the projective line (genus 0, deg(omega) = -2, deg Y = 1) every
    threshold statement is an exact equality:

    * h0 = 0 strictly below q*nu_1;
    * h0(m) = sum_j max(0, m - e_j + 1) everywhere;
    * the per-interval linear count between consecutive thresholds;
    * h1(m) = sum_j max(0, e_j - m - 1) vanishes for m >= q*nu_t - 1,
      and equals the alternating-sum defect everywhere (Serre duality).
    """
    _require_p1(ideal)
    problems = validate(hn, ideal.degrees)
    if problems:
        raise UserError("invalid slope data: " + "; ".join(problems))
    gens_q = engine.frobenius_power_gens(ideal, q)
    twists = _twists_from_hn(hn, q)
    e_max = max(twists)
    nu1_q = hn.nus[0] * q
    top = e_max + 2
    report = ProfileReport(q=q, twists=tuple(twists), checked_range=(0, top))
    prefix_rank = []
    prefix_wsum = []
    acc_r, acc_w = 0, Fraction(0)
    for r, v in zip(hn.ranks, hn.nus):
        acc_r += r
        acc_w += r * v
        prefix_rank.append(acc_r)
        prefix_wsum.append(acc_w)
    for m in range(0, top + 1):
        piece = engine._degree_piece(ideal, gens_q, q, m)
        h0 = piece.syzygy_h0
        expected = sum(max(0, m - e + 1) for e in twists)
        if h0 != expected:
            report.mismatches.append(
                f"m={m}: h0={h0}, split formula predicts {expected}"
            )
        if m < nu1_q and h0 != 0:
            report.mismatches.append(f"m={m}: h0={h0} nonzero below q*nu_1={nu1_q}")
        h1 = sum(max(0, e - m - 1) for e in twists)
        if m >= e_max - 1 and h1 != 0:
            report.mismatches.append(f"m={m}: h1={h1} nonzero at or above q*nu_t-1")
        # Serre duality / alternating sum: colength = h1(Syz(m)) - sum_i h1(O(m-qd_i));
        # beyond the generator degrees the last sum vanishes.
        if m >= q * max(ideal.degrees) and piece.colength != h1:
            report.mismatches.append(
                f"m={m}: colength={piece.colength} != h1={h1} (duality defect)"
            )
        # interval formula between thresholds k and k+1 (exact for genus 0)
        for k in range(hn.t - 1):
            lo = hn.nus[k] * q - 2
            hi = hn.nus[k + 1] * q
            if lo < m < hi:
                linear = -q * prefix_wsum[k] + (m + 1) * prefix_rank[k]
                if linear != h0:
                    report.mismatches.append(
                        f"m={m}: interval formula gives {linear}, h0={h0}"
                    )
    return report


@dataclass
class SplittingReport:
    """End-to-end record: splittings, stabilization, slope data, residual check."""

    ideal: IdealSpec
    splittings: list
    stabilized: bool
    hn: HNData | None
    ehk: Fraction | None
    phi_rows: list  # (q, phi)
    residual_bound: Fraction | None
    max_residual: Fraction | None
    verified_q: int | None


def analyze_ideal(
    ideal: IdealSpec,
    *,
    max_exponent: int = 3,
    extra_phi_q: tuple = (1,),
) -> SplittingReport:
    """Compute splittings at q = p, p^2, ... until stabilized, then verify.

    phi is computed at the stabilization pair plus ``extra_phi_q``; the
    residual constant C is estimated from the two smallest q and checked
    at the largest.
    """
    _require_p1(ideal)
    p = ideal.field.p
    splittings = [splitting_type(ideal, p)]
    hn = None
    for e in range(2, max_exponent + 1):
        nxt = splitting_type(ideal, p**e)
        result = hn_from_splittings(splittings[-1], nxt, n=ideal.n)
        splittings.append(nxt)
        if isinstance(result, HNData):
            hn = result
            break
    if hn is None:
        return SplittingReport(
            ideal, splittings, False, None, None, [], None, None, None
        )
    ehk = ehk_from_hn(hn, ideal.degrees)
    q_values = sorted({s.q for s in splittings} | {int(q) for q in extra_phi_q})
    phi_rows = [(q, engine.hk_value(ideal, q, keep_degrees=False).phi) for q in q_values]
    small = phi_rows[:2]
    c_bound = max(Fraction(abs(phi - ehk * q * q), q) for q, phi in small)
    q_big, phi_big = phi_rows[-1]
    residual = Fraction(abs(phi_big - ehk * q_big * q_big), q_big)
    return SplittingReport(
        ideal=ideal,
        splittings=splittings,
        stabilized=True,
        hn=hn,
        ehk=ehk,
        phi_rows=phi_rows,
        residual_bound=c_bound,
        max_residual=residual,
        verified_q=q_big,
    )
