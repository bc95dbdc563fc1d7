"""Command-line front end.

Subcommands: compute | splitting | formula | reconstruct | verify-corpus.
Ring and ideal data come from a flat key = value config file or from the
equivalent command-line flags (flags win).  Outputs are deterministic:
the same config always produces byte-identical tables and reports.

Exit codes: 0 success, 1 user error, 2 cap exceeded, 3 corpus failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import corpus, engine
from .errors import CapExceededError, ParseError, UserError
from .field import PrimeField
from .p1 import analyze_ideal
from .poly import parse_poly
from .reconstruct import (
    AmbiguousReconstruction,
    default_denominator_bound,
    estimate_ehk,
    nu2_from_ehk,
)
from .ring import GradedRing, IdealSpec
from .slopes import (
    HNData,
    ehk_from_hn,
    ehk_plane_curve,
    ehk_strongly_semistable,
)

EXIT_OK = 0
EXIT_USER = 1
EXIT_CAP = 2
EXIT_CORPUS = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; remap to the user-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UserError(message)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UserError(f"not a rational number: {text!r} ({exc})")


def format_rational(x) -> str:
    """Reduced num/den; plain integer when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- config ------------------------------------------------------------


def read_config(path: str) -> dict:
    """Flat `key = value` lines; '#' starts a comment; later keys win."""
    config = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UserError(f"{path}:{lineno}: expected key = value, got {raw.rstrip()!r}")
                key, _, value = line.partition("=")
                config[key.strip()] = value.strip()
    except OSError as exc:
        raise UserError(f"cannot read config {path}: {exc}")
    return config


def _merge_config(args) -> dict:
    config = read_config(args.config) if args.config else {}
    for key in ("p", "vars", "hypersurface", "gens", "q"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return config


def build_ideal(config: dict) -> IdealSpec:
    try:
        p = int(config["p"])
    except KeyError:
        raise UserError("missing required key: p")
    except ValueError:
        raise UserError(f"p must be an integer, got {config['p']!r}")
    field = PrimeField(p)
    varnames = tuple(v.strip() for v in config.get("vars", "x,y").split(",") if v.strip())
    relation = None
    if config.get("hypersurface"):
        relation = parse_poly(config["hypersurface"], varnames, field)
    ring = GradedRing(field, varnames, relation=relation)
    gens_text = config.get("gens")
    if not gens_text:
        raise UserError("missing required key: gens (separated by ';')")
    gens = tuple(ring.parse(t.strip()) for t in gens_text.split(";") if t.strip())
    bound = None
    if config.get("primarity_bound"):
        bound = int(config["primarity_bound"])
    return IdealSpec(ring, gens, primarity_bound=bound)


def _q_list(config: dict, p: int) -> list:
    text = config.get("q")
    if not text:
        raise UserError("missing required key: q (comma-separated prime powers)")
    qs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            q = int(part)
        except ValueError:
            raise UserError(f"q values must be integers, got {part!r}")
        engine.validate_prime_power(p, q)
        qs.append(q)
    if not qs:
        raise UserError("empty q list")
    return sorted(set(qs))


def _echo_config(config: dict, out) -> None:
    for key in sorted(config):
        print(f"# {key} = {config[key]}", file=out)


# -- subcommands -------------------------------------------------------


def _evaluate_terms(terms, point, p) -> int:
    total = 0
    for exp, c in terms.items():
        v = c
        for a, e in zip(point, exp):
            if e:
                v = v * pow(a, e, p) % p
        total = (total + v) % p
    return total


def check_smoothness_advisory(ring: GradedRing, limit: int = 50) -> str | None:
    """Brute-force search for a common zero of H and its partials over F_p.

    Advisory only: smoothness over the algebraic closure is what the
    slope theory needs, and a rational singular point is merely a strong
    hint.  Returns a message, or None when p exceeds the search limit.
    """
    p = ring.field.p
    if ring.relation is None:
        return "free ring: Proj R is the projective line, smooth"
    if p > limit:
        return None
    partials = []
    for i in range(ring.nvars):
        terms = {}
        for exp, c in ring.relation.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = (terms.get(tuple(e), 0) + c * exp[i]) % p
        partials.append(terms)
    from itertools import product as _product

    for point in _product(range(p), repeat=ring.nvars):
        if not any(point):
            continue
        if _evaluate_terms(ring.relation.terms, point, p):
            continue
        if all(_evaluate_terms(d, point, p) == 0 for d in partials):
            return f"singular point {point} on the curve over F_{p}"
    return f"no F_{p}-rational singular point (smoothness over the closure not certified)"


def cmd_compute(args) -> int:
    config = _merge_config(args)
    ideal = build_ideal(config)
    if getattr(args, "check_smooth", False):
        note = check_smoothness_advisory(ideal.ring)
        if note is None:
            note = "characteristic too large for the brute-force advisory check"
        print(f"smoothness advisory: {note}", file=sys.stderr)
    qs = _q_list(config, ideal.field.p)
    table = engine.hk_table(ideal, qs, keep_degrees=True)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        _echo_config(config, out)
        print("q,phi", file=out)
        for row in table.sorted_rows():
            print(f"{row.q},{row.phi}", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.degrees_out:
        with open(args.degrees_out, "w", encoding="utf-8") as fh:
            _echo_config(config, fh)
            print("q,m,colength", file=fh)
            for row in table.sorted_rows():
                for m in sorted(row.per_degree):
                    print(f"{row.q},{m},{row.per_degree[m]}", file=fh)
    return EXIT_OK


def cmd_splitting(args) -> int:
    config = _merge_config(args)
    ideal = build_ideal(config)
    report = analyze_ideal(ideal, max_exponent=args.max_exponent)
    out = sys.stdout
    _echo_config(config, out)
    print(f"ring = {ideal.ring!r}", file=out)
    print(f"gens = {'; '.join(ideal.ring.poly_str(g) for g in ideal.gens)}", file=out)
    for s in report.splittings:
        print(f"twists[q={s.q}] = {','.join(str(e) for e in s.twists)}", file=out)
    print(f"stabilized = {'yes' if report.stabilized else 'no'}", file=out)
    if not report.stabilized:
        print("note = raise --max-exponent to push more Frobenius pullbacks", file=out)
        return EXIT_OK
    hn = report.hn
    print(f"ranks = {','.join(str(r) for r in hn.ranks)}", file=out)
    print(f"nus = {','.join(format_rational(v) for v in hn.nus)}", file=out)
    print(f"ehk = {format_rational(report.ehk)}", file=out)
    for q, phi in report.phi_rows:
        resid = abs(Fraction(phi) - report.ehk * q * q)
        print(f"phi[q={q}] = {phi}  residual = {format_rational(resid)}", file=out)
    print(f"residual_bound_C = {format_rational(report.residual_bound)}", file=out)
    print(f"max_residual_over_q = {format_rational(report.max_residual)}", file=out)
    print(f"verified_at_q = {report.verified_q}", file=out)
    return EXIT_OK


def _parse_hn(text: str, degY: int) -> HNData:
    """Slope data as 'r1:nu1,r2:nu2,...' with rational thresholds."""
    ranks, nus = [], []
    for part in text.split(","):
        part = part.strip()
        if ":" not in part:
            raise UserError(f"slope step must look like rank:threshold, got {part!r}")
        r_text, _, v_text = part.partition(":")
        try:
            ranks.append(int(r_text))
        except ValueError:
            raise UserError(f"rank must be an integer, got {r_text!r}")
        nus.append(_frac(v_text))
    n = sum(ranks) + 1
    return HNData(n=n, degY=degY, ranks=tuple(ranks), nus=tuple(nus))


def _parse_degrees(text: str) -> tuple:
    try:
        return tuple(int(d) for d in text.split(","))
    except ValueError:
        raise UserError(f"degrees must be comma-separated integers, got {text!r}")


def cmd_formula(args) -> int:
    modes = [bool(args.hn), args.plane_curve, args.semistable]
    if sum(modes) != 1:
        raise UserError("choose exactly one of --hn, --plane-curve, --semistable")
    if args.plane_curve:
        if args.h is None or args.nu2 is None:
            raise UserError("--plane-curve needs --h and --nu2")
        value = ehk_plane_curve(args.h, _frac(args.nu2))
    elif args.semistable:
        if not args.d:
            raise UserError("--semistable needs --d")
        value = ehk_strongly_semistable(_parse_degrees(args.d), args.degY)
    else:
        if not args.d:
            raise UserError("--hn needs --d")
        hn = _parse_hn(args.hn, args.degY)
        value = ehk_from_hn(hn, _parse_degrees(args.d))
    print(format_rational(value))
    return EXIT_OK


def _read_phi_csv(path: str) -> list:
    rows = []
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#") or line == "q,phi":
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise UserError(f"{path}: expected 'q,phi' rows, got {line!r}")
                rows.append((int(parts[0]), int(parts[1])))
    except OSError as exc:
        raise UserError(f"cannot read table {path}: {exc}")
    except ValueError as exc:
        raise UserError(f"{path}: non-integer table entry ({exc})")
    if len(rows) < 2:
        raise UserError(f"{path}: need at least two (q, phi) rows")
    return rows


def cmd_reconstruct(args) -> int:
    rows = _read_phi_csv(args.table)
    if args.bound is not None:
        bound = args.bound
    else:
        import math

        qs = [q for q, _ in rows]
        p = min(q for q in qs if q > 1)
        # conservative default: n unknown from a bare table, use n = 3
        e_cap = max(1, round(math.log(max(qs), p)))
        bound = default_denominator_bound(3, args.degY, p, e_cap).bound
    window = _frac(args.window) if args.window else None
    window_constant = args.window_constant
    if window is None and window_constant is None:
        # a bare CSV does not carry the generator degrees, so the usual
        # 4 * sum(d_i) default is unavailable; 16 covers the corpus cases
        window_constant = 16
    try:
        value, report = estimate_ehk(
            rows, bound, window=window, window_constant=window_constant
        )
    except AmbiguousReconstruction as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        return EXIT_USER
    print(f"ehk = {format_rational(value)}")
    print(f"raw_estimate = {format_rational(report.raw)}")
    print(f"q_pair = {report.q_pair[0]},{report.q_pair[1]}")
    print(f"denominator_bound = {report.bound}")
    print(f"window = {format_rational(report.window)}")
    for q in sorted(report.residuals):
        print(f"residual[q={q}] = {format_rational(report.residuals[q])}")
    if args.plane_curve_h:
        nu2 = nu2_from_ehk(args.plane_curve_h, value)
        text = format_rational(nu2) if isinstance(nu2, Fraction) else str(nu2)
        print(f"nu2 = {text}")
    return EXIT_OK


def cmd_verify_corpus(args) -> int:
    results = corpus.run_all(readme_path=args.readme)
    failures = 0
    for r in results:
        print(r.line())
        if not r.ok:
            failures += 1
    if failures:
        print(f"{failures} criterion(s) failed", file=sys.stderr)
        return EXIT_CORPUS
    print("all criteria passed")
    return EXIT_OK


# -- wiring ------------------------------------------------------------


def _add_ring_flags(sub):
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--p", help="prime characteristic")
    sub.add_argument("--vars", help="comma-separated variable names (default x,y)")
    sub.add_argument("--hypersurface", help="relation polynomial H for R = K[vars]/(H)")
    sub.add_argument("--gens", help="ideal generators separated by ';'")


def make_parser() -> _Parser:
    parser = _Parser(prog="hilbertkunz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="Hilbert-Kunz function values as CSV")
    _add_ring_flags(c)
    c.add_argument("--q", help="comma-separated prime powers")
    c.add_argument("--out", help="summary CSV path (default stdout)")
    c.add_argument("--degrees-out", help="per-degree CSV path (q,m,colength)")
    c.add_argument(
        "--check-smooth",
        action="store_true",
        help="advisory brute-force search for rational singular points of H",
    )
    c.set_defaults(fn=cmd_compute)

    s = sub.add_parser("splitting", help="splitting types, slope data, formula check")
    _add_ring_flags(s)
    s.add_argument("--max-exponent", type=int, default=3, help="largest Frobenius exponent tried")
    s.set_defaults(fn=cmd_splitting)

    f = sub.add_parser("formula", help="closed-form multiplicity from slope data")
    f.add_argument("--hn", help="slope data as r1:nu1,r2:nu2,...")
    f.add_argument("--d", help="generator degrees, comma separated")
    f.add_argument("--degY", type=int, default=1, help="degree of the polarization")
    f.add_argument("--plane-curve", action="store_true", help="use e = h(nu2^2 - 3 nu2 + 3)")
    f.add_argument("--semistable", action="store_true", help="strongly semistable closed form")
    f.add_argument("--h", type=int, help="plane curve degree")
    f.add_argument("--nu2", help="top threshold (rational)")
    f.set_defaults(fn=cmd_formula)

    r = sub.add_parser("reconstruct", help="rational multiplicity from a phi table CSV")
    r.add_argument("--table", required=True, help="CSV with q,phi rows (as written by compute)")
    r.add_argument("--bound", type=int, help="denominator bound (default 2*(n-1)!*degY*p^e)")
    r.add_argument("--degY", type=int, default=1, help="degY factor for the default bound")
    r.add_argument("--window", help="absolute acceptance window (rational)")
    r.add_argument("--window-constant", type=int, help="window K, accepted when |x - r| <= K/q1")
    r.add_argument("--plane-curve-h", type=int, help="also invert to nu2 for this curve degree")
    r.set_defaults(fn=cmd_reconstruct)

    v = sub.add_parser("verify-corpus", help="run the known-answer acceptance corpus")
    v.add_argument("--readme", help="README path checked by the documentation criterion")
    v.set_defaults(fn=cmd_verify_corpus)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USER
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
