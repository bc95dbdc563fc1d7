"""The eight acceptance criteria, one test and one printed verdict each.

The check logic lives in hilbertkunz.corpus (shared with the CLI's
verify-corpus subcommand); this file runs each criterion once, prints
its pass/fail line, and enforces the stated runtime budgets.
"""

import os

import pytest

from hilbertkunz import corpus

README = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "README.md")


def report(result, budget_seconds):
    print()
    print(result.line())
    assert result.ok, result.detail
    assert result.seconds < budget_seconds, (
        f"criterion {result.number} took {result.seconds:.1f}s, budget {budget_seconds}s"
    )


def test_criterion_1_regular_ring_exactness():
    report(corpus.criterion_1(), budget_seconds=1)


def test_criterion_2_monomial_oracle_equivalence():
    report(corpus.criterion_2(), budget_seconds=60)


def test_criterion_3_projective_line_theorem_check():
    report(corpus.criterion_3(), budget_seconds=300)


@pytest.fixture(scope="module")
def plane_cubic_results():
    return corpus.criterion_4(), corpus.criterion_5()


def test_criterion_4_smooth_plane_cubic(plane_cubic_results):
    report(plane_cubic_results[0], budget_seconds=600)


def test_criterion_5_singular_plane_cubic(plane_cubic_results):
    report(plane_cubic_results[1], budget_seconds=900)


def test_criterion_6_formula_identities():
    report(corpus.criterion_6(), budget_seconds=30)


def test_criterion_7_plane_curve_bounds(plane_cubic_results):
    values = [
        (r.values["h"], r.values["ehk"])
        for r in plane_cubic_results
        if r.values and "ehk" in r.values
    ]
    report(corpus.criterion_7(values), budget_seconds=10)


def test_criterion_8_scope_documented():
    report(corpus.criterion_8(README), budget_seconds=5)
