"""Exact rational linear feasibility with independently verifiable certificates.

Problem form: find v with A v = b, where the variables flagged nonnegative
(all of them by default) satisfy v_j >= 0. The solver is a phase-1 simplex on
a dense Fraction tableau with Bland's rule, so it is deterministic and cannot
cycle. Every verdict carries a certificate:

* Feasible  -> an explicit witness v, re-checkable by substitution;
* Infeasible -> a separating functional f with f^T A >= 0 componentwise on the
  nonnegative cone (and f^T A_j = 0 for free columns) while f^T b < 0, so no
  nonnegative v can satisfy A v = b. `verify_certificate` re-multiplies from
  scratch and shares no state with the solver.

Free variables are handled by the classical split v = v+ - v-.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LinearFeasibilityProblem:
    variable_count: int
    equalities: tuple  # of (coefficient row tuple, rhs Fraction)
    nonnegative: Optional[tuple] = None  # per-variable flags; None = all True

    def __post_init__(self):
        rows = []
        for row, rhs in self.equalities:
            coeffs = tuple(Fraction(c) for c in row)
            if len(coeffs) != self.variable_count:
                raise DimensionMismatch(
                    f"row of length {len(coeffs)} in a {self.variable_count}-variable problem"
                )
            rows.append((coeffs, Fraction(rhs)))
        object.__setattr__(self, "equalities", tuple(rows))
        if self.nonnegative is not None:
            flags = tuple(bool(f) for f in self.nonnegative)
            if len(flags) != self.variable_count:
                raise DimensionMismatch("nonnegative flag vector length mismatch")
            object.__setattr__(self, "nonnegative", flags)

    def flags(self):
        if self.nonnegative is None:
            return (True,) * self.variable_count
        return self.nonnegative


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Tagged verdict: a witness when feasible, a separating functional when not."""

    feasible: bool
    witness: Optional[tuple] = None
    functional: Optional[tuple] = None

    def __str__(self):
        return "Feasible" if self.feasible else "Infeasible"


def _expand_free_columns(problem):
    """Rewrite free variables as differences of nonnegative pairs.

    Returns (rows, rhs, mapping) where mapping[j] = (plus_col, minus_col_or_None)
    recovers original variable j from the expanded witness.
    """
    flags = problem.flags()
    mapping = []
    ncols = 0
    for f in flags:
        if f:
            mapping.append((ncols, None))
            ncols += 1
        else:
            mapping.append((ncols, ncols + 1))
            ncols += 2
    rows = []
    rhs = []
    for coeffs, b in problem.equalities:
        row = [ZERO] * ncols
        for j, c in enumerate(coeffs):
            plus, minus = mapping[j]
            row[plus] = c
            if minus is not None:
                row[minus] = -c
        rows.append(row)
        rhs.append(b)
    return rows, rhs, mapping


def lp_feasible(problem):
    """Exact feasibility verdict with certificate (phase-1 simplex, Bland's rule)."""
    rows, rhs, mapping = _expand_free_columns(problem)
    m = len(rows)
    n = len(rows[0]) if m else 0

    if m == 0:
        return FeasibilityCertificate(True, witness=(ZERO,) * problem.variable_count)

    # Sign-normalize so every right-hand side is nonnegative; remember flips.
    sigma = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-c for c in rows[i]]
            rhs[i] = -rhs[i]
            sigma.append(-1)
        else:
            sigma.append(1)

    # Tableau columns: n structural | m artificial | rhs.
    width = n + m + 1
    tab = []
    for i in range(m):
        row = rows[i] + [ZERO] * m + [rhs[i]]
        row[n + i] = ONE
        tab.append(row)
    basis = [n + i for i in range(m)]

    # Phase-1 objective row: z_j = sum of artificial rows minus cost (cost 1 on
    # artificials, 0 on structurals); stored as z_j so entering needs z_j > 0.
    z = [ZERO] * width
    for i in range(m):
        for j in range(width):
            z[j] += tab[i][j]
    for i in range(m):
        z[n + i] -= ONE

    while True:
        enter = -1
        for j in range(n + m):
            if z[j] > 0:
                enter = j
                break  # Bland: smallest eligible column index
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width - 1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # Phase-1 objective is bounded below by 0, so this cannot happen.
            raise RuntimeError("phase-1 simplex claims unboundedness")
        piv = tab[leave][enter]
        tab[leave] = [c / piv for c in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [c - f * p for c, p in zip(tab[i], tab[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [c - f * p for c, p in zip(z, tab[leave])]
        basis[leave] = enter

    if z[width - 1] == 0:
        expanded = [ZERO] * (n + m)
        for i in range(m):
            expanded[basis[i]] = tab[i][width - 1]
        witness = []
        for plus, minus in mapping:
            v = expanded[plus]
            if minus is not None:
                v -= expanded[minus]
            witness.append(v)
        return FeasibilityCertificate(True, witness=tuple(witness))

    # Infeasible: dual multipliers off the artificial columns give Farkas' f.
    functional = tuple(-sigma[i] * (z[n + i] + ONE) for i in range(m))
    return FeasibilityCertificate(False, functional=functional)


def verify_certificate(problem, certificate):
    """Independent exact re-check of a certificate against the raw problem data.

    Deliberately naive: plain re-multiplication, no shared code with the
    solver beyond the problem container.
    """
    flags = problem.flags()
    if certificate.feasible:
        w = certificate.witness
        if w is None or len(w) != problem.variable_count:
            return False
        for v, f in zip(w, flags):
            if f and v < 0:
                return False
        for coeffs, b in problem.equalities:
            total = ZERO
            for c, v in zip(coeffs, w):
                total += c * v
            if total != b:
                return False
        return True
    f = certificate.functional
    if f is None or len(f) != len(problem.equalities):
        return False
    combined_b = ZERO
    for fi, (_, b) in zip(f, problem.equalities):
        combined_b += fi * b
    if combined_b >= 0:
        return False
    for j in range(problem.variable_count):
        col = ZERO
        for fi, (coeffs, _) in zip(f, problem.equalities):
            col += fi * coeffs[j]
        if flags[j]:
            if col < 0:
                return False
        elif col != 0:
            return False
    return True
