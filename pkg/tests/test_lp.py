"""Exact LP: certificates against a Fourier-Motzkin elimination oracle.

The oracle decides feasibility of {A v = b, v >= 0} by eliminating variables
one at a time from the inequality system (each equality split into <= and >=),
then checking the variable-free residue for contradictions. It shares no code
with the simplex.
"""

import random
from fractions import Fraction

import pytest

from jointcert.errors import DimensionMismatch
from jointcert.lp import LinearFeasibilityProblem, lp_feasible, verify_certificate


def _normalize(coeffs, rhs):
    """Scale a row (sum c v <= rhs) so its leading nonzero coefficient is +-1."""
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs
    scale = abs(lead)
    return tuple(c / scale for c in coeffs), rhs / scale


def _tighten(rows):
    """Keep only the smallest right-hand side per coefficient direction and
    drop rows that are trivially true; returns None on a found contradiction."""
    best = {}
    for coeffs, rhs in rows:
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                return None
            continue
        if coeffs not in best or rhs < best[coeffs]:
            best[coeffs] = rhs
    return set(best.items())


def fme_feasible(problem):
    """Fourier-Motzkin elimination for small systems (<= 8 variables).

    Rows are kept normalized and pruned to the tightest bound per direction;
    variables are eliminated in order of smallest positive*negative product.
    """
    n = problem.variable_count
    assert n <= 8, "oracle is meant for small systems"
    # inequalities as (coeff tuple, rhs) meaning sum c_j v_j <= rhs
    raw = []
    for coeffs, b in problem.equalities:
        raw.append(_normalize(tuple(coeffs), b))
        raw.append(_normalize(tuple(-c for c in coeffs), -b))
    for j, nonneg in enumerate(problem.flags()):
        if nonneg:
            row = [Fraction(0)] * n
            row[j] = Fraction(-1)
            raw.append((tuple(row), Fraction(0)))
    ineqs = _tighten(raw)
    if ineqs is None:
        return False
    remaining = set(range(n))
    while remaining:
        def cost(j):
            pos = sum(1 for coeffs, _ in ineqs if coeffs[j] > 0)
            neg = sum(1 for coeffs, _ in ineqs if coeffs[j] < 0)
            return pos * neg

        j = min(remaining, key=cost)
        remaining.discard(j)
        keep, pos, neg = [], [], []
        for coeffs, rhs in ineqs:
            if coeffs[j] > 0:
                pos.append((coeffs, rhs))
            elif coeffs[j] < 0:
                neg.append((coeffs, rhs))
            else:
                keep.append((coeffs, rhs))
        for pc, pr in pos:
            for nc, nr in neg:
                # combine so column j cancels: row_p / p_j + row_n / (-n_j)
                combo = tuple(pc[k] / pc[j] + nc[k] / (-nc[j]) for k in range(n))
                rhs = pr / pc[j] + nr / (-nc[j])
                keep.append(_normalize(combo, rhs))
        ineqs = _tighten(keep)
        if ineqs is None:
            return False
    return True


def random_problem(rng, n_vars, n_rows):
    rows = []
    for _ in range(n_rows):
        coeffs = [
            Fraction(rng.randint(-3, 3), rng.randint(1, 4)) if rng.random() < 0.7 else Fraction(0)
            for _ in range(n_vars)
        ]
        rhs = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        rows.append((tuple(coeffs), rhs))
    return LinearFeasibilityProblem(n_vars, tuple(rows))


def test_trivial_feasible():
    p = LinearFeasibilityProblem(1, (((Fraction(1),), Fraction(1)),))
    cert = lp_feasible(p)
    assert cert.feasible and cert.witness == (Fraction(1),)
    assert verify_certificate(p, cert)


def test_trivial_infeasible():
    p = LinearFeasibilityProblem(1, (((Fraction(1),), Fraction(-1)),))
    cert = lp_feasible(p)
    assert not cert.feasible
    assert verify_certificate(p, cert)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LinearFeasibilityProblem(2, (((Fraction(1),), Fraction(0)),))


def test_agreement_with_elimination_oracle():
    rng = random.Random(99)
    n_feasible = n_infeasible = 0
    for trial in range(40):
        n_vars = rng.randint(2, 6)
        n_rows = rng.randint(1, 4)
        problem = random_problem(rng, n_vars, n_rows)
        cert = lp_feasible(problem)
        assert verify_certificate(problem, cert), f"trial {trial}: certificate failed"
        assert cert.feasible == fme_feasible(problem), f"trial {trial}: oracle disagrees"
        n_feasible += cert.feasible
        n_infeasible += not cert.feasible
    assert n_feasible > 5 and n_infeasible > 5  # both verdicts exercised


def test_free_variable_split():
    # v0 free, v1 >= 0: v0 = -2 is reachable only through the split
    p = LinearFeasibilityProblem(
        2,
        (((Fraction(1), Fraction(1)), Fraction(-2)),),
        nonnegative=(False, True),
    )
    cert = lp_feasible(p)
    assert cert.feasible and verify_certificate(p, cert)
    # with both nonnegative the same system is infeasible
    p2 = LinearFeasibilityProblem(2, (((Fraction(1), Fraction(1)), Fraction(-2)),))
    cert2 = lp_feasible(p2)
    assert not cert2.feasible and verify_certificate(p2, cert2)


def test_determinism():
    rng = random.Random(3)
    problem = random_problem(rng, 5, 4)
    a = lp_feasible(problem)
    b = lp_feasible(problem)
    assert a == b


def test_zero_rows_handled():
    p = LinearFeasibilityProblem(
        2,
        (
            ((Fraction(0), Fraction(0)), Fraction(0)),
            ((Fraction(1), Fraction(0)), Fraction(2)),
        ),
    )
    cert = lp_feasible(p)
    assert cert.feasible and verify_certificate(p, cert)
    p_bad = LinearFeasibilityProblem(2, (((Fraction(0), Fraction(0)), Fraction(1)),))
    cert_bad = lp_feasible(p_bad)
    assert not cert_bad.feasible and verify_certificate(p_bad, cert_bad)
