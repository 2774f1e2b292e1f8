"""Exact credence calculus and betting simulation for duplication experiments.

Setup: N laboratories, each holding one copy of each participant. Per lab an
independent coin lands Heads with probability q; on Heads the *duplicated*
role's copy is multiplied into M copies, the *fixed* role's copy is not. All
copies are then woken and offered a ticket at price 2/3 - eps that pays $1 if
their lab's coin showed Heads.

Payout convention: the wording of the original puzzle is internally
inconsistent (a Heads wager said to pay on Tails); this module settles
tickets as pays-on-Heads, which is the only convention under which the
stated per-copy profit accounting balances. See README.

Credence rules weight an alternative i (with prior p_i and copy count m_i) by
rho_i * p_i, where rho is: the copy count m_i (self-location by counting,
the "thirder" reading, no update on irrelevant indexical information), the
constant 1 (reflection, the "halfer" reading), or caller-supplied weights.
All exact quantities are Fractions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .errors import EmptyCounts, JointcertError
from .rationals import format_rational

HEADS = "heads"
TAILS = "tails"


class CredenceRule:
    """Weight factory: rho(label, copy_count) -> nonnegative Fraction."""

    name = "abstract"

    def rho(self, label, count):
        raise NotImplementedError


class ElgaNUI(CredenceRule):
    """Weight each alternative by its copy count (times its prior)."""

    name = "elga"

    def rho(self, label, count):
        return Fraction(count)


class Reflection(CredenceRule):
    """Ignore copy counts; the prior alone survives."""

    name = "reflection"

    def rho(self, label, count):
        return Fraction(1)


class CustomWeights(CredenceRule):
    """Explicit per-label weights (copy counts are ignored)."""

    name = "custom"

    def __init__(self, weights: Mapping):
        ws = {k: Fraction(v) for k, v in weights.items()}
        if any(w < 0 for w in ws.values()):
            raise JointcertError("custom weights must be nonnegative")
        if ws and all(w == 0 for w in ws.values()):
            raise JointcertError("custom weights must not all be zero")
        self.weights = ws

    def rho(self, label, count):
        return self.weights[label]


ELGA_NUI = ElgaNUI()
REFLECTION = Reflection()


@dataclass(frozen=True)
class AgentRole:
    duplicated_on_heads: bool

    @property
    def name(self):
        return "duplicated" if self.duplicated_on_heads else "fixed"


DUPLICATED = AgentRole(True)
FIXED = AgentRole(False)


@dataclass(frozen=True)
class DuplicationExperiment:
    labs: int  # N
    factor: int  # M; 1 means no duplication
    heads_prob: Fraction = Fraction(1, 2)  # q
    epsilon: Fraction = Fraction(1, 100)
    price: Optional[Fraction] = None  # defaults to 2/3 - epsilon

    def __post_init__(self):
        object.__setattr__(self, "heads_prob", Fraction(self.heads_prob))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        price = Fraction(2, 3) - self.epsilon if self.price is None else Fraction(self.price)
        object.__setattr__(self, "price", price)
        if self.labs < 1 or self.factor < 1:
            raise JointcertError("labs and factor must be positive")
        if not (0 <= self.heads_prob <= 1):
            raise JointcertError("coin bias must lie in [0, 1]")
        if not (0 < self.price < 1):
            raise JointcertError("ticket price must lie in (0, 1)")
        if self.epsilon <= 0:
            raise JointcertError("epsilon must be positive")


def self_locate(counts: Mapping, rule: CredenceRule):
    """Distribution over labels within a single world, per the given rule."""
    if not counts:
        raise EmptyCounts("self-location needs at least one label")
    weights = {label: rule.rho(label, count) for label, count in counts.items()}
    total = sum(weights.values())
    if total == 0:
        raise EmptyCounts("all self-location weights vanish")
    return {label: w / total for label, w in weights.items()}


def credence_outcome(rule: CredenceRule, experiment: DuplicationExperiment, role: AgentRole):
    """Single-lab credence over {heads, tails} for the given role and rule."""
    q = experiment.heads_prob
    m_heads = experiment.factor if role.duplicated_on_heads else 1
    w_heads = rule.rho(HEADS, m_heads) * q
    w_tails = rule.rho(TAILS, 1) * (1 - q)
    total = w_heads + w_tails
    if total == 0:
        raise EmptyCounts("degenerate experiment: both outcome weights vanish")
    return {HEADS: w_heads / total, TAILS: w_tails / total}


def heads_count_distribution(labs, factor, heads_prob=Fraction(1, 2)):
    """Copy-weighted distribution of the Heads count k over {0..N}.

    P(k) is proportional to (N + (M-1)k) * C(N, k) * q^k (1-q)^(N-k): the
    binomial chance of k Heads labs re-weighted by the number of duplicated-
    role copies that wake up to see it.
    """
    q = Fraction(heads_prob)
    weights = {}
    for k in range(labs + 1):
        copies = labs + (factor - 1) * k
        weights[k] = copies * math.comb(labs, k) * q**k * (1 - q) ** (labs - k)
    total = sum(weights.values())
    return {k: w / total for k, w in weights.items()}


@dataclass(frozen=True)
class BinomialCredence:
    p_heads: Fraction
    p_tails: Fraction
    constant: Fraction  # the normalization constant of the copy-weighted sum


def credence_via_binomial(labs, factor, heads_prob=Fraction(1, 2)):
    """Total subjective outcome probability summed over the Heads count.

    Computes the literal double sum: over k, the copy-weighted chance of k
    times the within-k counting credence (M k Heads-copies out of
    N + (M-1) k). That the result is independent of N is a theorem the tests
    check, not an input.
    """
    q = Fraction(heads_prob)
    raw_heads = Fraction(0)
    raw_tails = Fraction(0)
    for k in range(labs + 1):
        copies = labs + (factor - 1) * k
        binom = math.comb(labs, k) * q**k * (1 - q) ** (labs - k)
        weight = copies * binom
        if copies:
            raw_heads += weight * Fraction(factor * k, copies)
            raw_tails += weight * Fraction(labs - k, copies)
    constant = 1 / (raw_heads + raw_tails)
    return BinomialCredence(
        p_heads=constant * raw_heads,
        p_tails=constant * raw_tails,
        constant=constant,
    )


# --- Monte Carlo betting ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimulationResult:
    experiment: DuplicationExperiment
    runs: int
    seed: int
    heads_per_run: np.ndarray  # k_r, int64
    copy_counts: dict  # role name -> {outcome -> total copies}

    def _per_run(self, role):
        """(copies, tails copies, profit * price_denominator) arrays per run."""
        e = self.experiment
        k = self.heads_per_run.astype(object)
        n = e.labs
        fac = e.factor if role.duplicated_on_heads else 1
        copies = n + (fac - 1) * k
        tails_copies = n - k
        den = e.price.denominator
        win = (1 - e.price) * den  # integers once scaled by den
        lose = -e.price * den
        profit_scaled = fac * k * int(win) + (n - k) * int(lose)
        return copies, tails_copies, profit_scaled

    def exact_expectations(self, role):
        """Pooled per-copy expectations implied by the experiment parameters."""
        e = self.experiment
        q = e.heads_prob
        fac = e.factor if role.duplicated_on_heads else 1
        copies_mean = fac * q + (1 - q)
        tails_fraction = (1 - q) / copies_mean
        profit = (fac * q * (1 - e.price) - (1 - q) * e.price) / copies_mean
        return {"tails_fraction": tails_fraction, "profit_per_copy": profit}

    def empirical(self, role):
        """Pooled ratio estimates with delta-method standard errors."""
        copies, tails, profit_scaled = self._per_run(role)
        den = self.experiment.price.denominator
        c = np.array([int(v) for v in copies], dtype=float)
        t = np.array([int(v) for v in tails], dtype=float)
        p = np.array([int(v) for v in profit_scaled], dtype=float) / den
        out = {}
        for key, num in (("tails_fraction", t), ("profit_per_copy", p)):
            ratio = float(num.sum() / c.sum())
            resid = num - ratio * c
            se = math.sqrt(float((resid**2).mean()) / len(c)) / float(c.mean())
            out[key] = ratio
            out[key + "_se"] = se
        return out

    def copies_total(self, role):
        return sum(self.copy_counts[role.name].values())


def _run_generator(seed, run_index):
    # counter-based split: one independent Philox stream per run, merged in
    # run order, so results are bitwise reproducible regardless of scheduling
    bitgen = np.random.Philox(key=np.uint64(seed), counter=run_index << 128)
    return np.random.Generator(bitgen)


def lab_outcomes(experiment, seed, run_index):
    """Per-lab Heads indicators for one run (1 = Heads), reproducible."""
    rng = _run_generator(seed, run_index)
    q = experiment.heads_prob
    draws = rng.integers(0, q.denominator, size=experiment.labs)
    return (draws < q.numerator).astype(np.int64)


def simulate_betting(experiment, runs, seed):
    """Toss N coins per run, instantiate copies, settle pays-on-Heads tickets.

    Every copy buys one ticket. Deterministic for a fixed seed; the master
    seed is split into per-run counter-based streams.
    """
    if runs < 1:
        raise JointcertError("need at least one run")
    heads_per_run = np.empty(runs, dtype=np.int64)
    for r in range(runs):
        heads_per_run[r] = int(lab_outcomes(experiment, seed, r).sum())
    total_heads = int(heads_per_run.sum())
    total_tails = experiment.labs * runs - total_heads
    copy_counts = {
        DUPLICATED.name: {HEADS: experiment.factor * total_heads, TAILS: total_tails},
        FIXED.name: {HEADS: total_heads, TAILS: total_tails},
    }
    return SimulationResult(
        experiment=experiment,
        runs=runs,
        seed=seed,
        heads_per_run=heads_per_run,
        copy_counts=copy_counts,
    )


def write_detail_csv(result, path, max_runs=None):
    """Per-(run, role, lab) rows regenerated from the same seeded streams."""
    e = result.experiment
    price = e.price
    nruns = result.runs if max_runs is None else min(max_runs, result.runs)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["run", "role", "lab", "outcome", "copies", "bought", "profit"])
        for r in range(nruns):
            outcomes = lab_outcomes(e, result.seed, r)
            for lab in range(e.labs):
                heads = bool(outcomes[lab])
                payoff = (1 - price) if heads else -price
                for role in (DUPLICATED, FIXED):
                    copies = e.factor if (heads and role.duplicated_on_heads) else 1
                    writer.writerow(
                        [
                            r,
                            role.name,
                            lab + 1,
                            HEADS if heads else TAILS,
                            copies,
                            copies,
                            format_rational(copies * payoff),
                        ]
                    )


def write_summary_csv(result, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["role", "quantity", "exact", "empirical", "stderr"])
        for role in (DUPLICATED, FIXED):
            exact = result.exact_expectations(role)
            emp = result.empirical(role)
            for key in ("tails_fraction", "profit_per_copy"):
                writer.writerow(
                    [
                        role.name,
                        key,
                        format_rational(exact[key]),
                        repr(emp[key]),
                        repr(emp[key + "_se"]),
                    ]
                )


# --- consistency of paired credences ------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    rule_duplicated: str
    rule_fixed: str
    factor: int
    p_tails_duplicated: Fraction
    p_tails_fixed: Fraction

    @property
    def consistent(self):
        return self.p_tails_duplicated == self.p_tails_fixed

    def to_dict(self):
        return {
            "rule_duplicated": self.rule_duplicated,
            "rule_fixed": self.rule_fixed,
            "factor": self.factor,
            "p_tails_duplicated": format_rational(self.p_tails_duplicated),
            "p_tails_fixed": format_rational(self.p_tails_fixed),
            "consistent": self.consistent,
        }


def check_cp_consistency(rule_duplicated, rule_fixed, factor, heads_prob=Fraction(1, 2)):
    """Single-lab (N=1) comparison: both roles observe the same coin there.

    Probabilistic consistency demands equal assignments; counting credences
    for the duplicated role give (1-q)/(Mq + 1-q) against the fixed role's
    1-q, so the count-weighted/count-weighted pair is inconsistent for every
    M >= 2.
    """
    experiment = DuplicationExperiment(labs=1, factor=factor, heads_prob=heads_prob)
    p_dup = credence_outcome(rule_duplicated, experiment, DUPLICATED)[TAILS]
    p_fix = credence_outcome(rule_fixed, experiment, FIXED)[TAILS]
    return ConsistencyReport(
        rule_duplicated=rule_duplicated.name,
        rule_fixed=rule_fixed.name,
        factor=factor,
        p_tails_duplicated=p_dup,
        p_tails_fixed=p_fix,
    )
