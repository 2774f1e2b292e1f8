"""Membership tests for behavior tables, with exact certificates.

Three feasible sets over a scenario's behaviors, each encoded as an exact
rational feasibility LP (all variables nonnegative):

* joint-fine: a single joint distribution over all per-setting outcomes
  (a_1..a_MA, b_1..b_MB) whose (x, y) marginals reproduce the table.
* ld: a convex mixture of deterministic strategies; the mixture weight index
  is the hidden variable. Equivalent to joint-fine on every behavior (that
  equivalence is exercised, not assumed, by the paired tests).
* lf (friend on Alice's wing, optionally on Bob's): unnormalized
  q(a b c |x y) = P(ab|c x y) P(c) with
    (i)  sum_ab q = p_c, the same for every setting pair (no superdeterminism),
    (ii) sum_a q independent of x and sum_b q independent of y (locality),
    (iii) q = 0 on the ask-the-friend setting x=1 unless a = c (and, in the
          four-party variant, unless b = d at y=1),
    (iv) sum over hidden outcomes reproduces the table.
* sw (sequential, R reversals): a per-(x~, y) joint p(a~, b, c_1..c_R | x~, y)
  where x~ = i <= R means "ask after i-1 reversals" (forcing a~ = c_i) and
  x~ = R+1 means "reverse all the way and measure directly". Constraints:
  the (b, c_1..c_j) marginal is equal across x~ in {j..R+1} for each y
  (choices made at steps >= j cannot influence it), and the (a~, c-vector)
  marginal over b is independent of y.

Certificates are wrapped with the LP and row/column bookkeeping so that an
infeasibility functional can be restated as an inequality over behavior
coordinates (`extract_inequality`) and re-verified independently.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .behaviors import (
    DEFAULT_VERTEX_CAP,
    Behavior,
    ScenarioDescriptor,
    enumerate_deterministic_vertices,
    mix_behaviors,
    pr_box,
    strategy_behavior,
    uniform_behavior,
)
from .errors import NoFriend, NotInfeasible, SizeLimit, WrongScenario
from .lp import LinearFeasibilityProblem, lp_feasible, verify_certificate
from .rationals import format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SequentialScenario:
    """Reverse-and-remeasure wrapper: base Alice settings are the x~ values."""

    base: ScenarioDescriptor
    reversals: int

    def __post_init__(self):
        if self.reversals < 1:
            raise WrongScenario("reversal count must be >= 1")
        if self.base.settings_a != self.reversals + 1:
            raise WrongScenario(
                f"base scenario needs settings_a == R+1 == {self.reversals + 1}, "
                f"got {self.base.settings_a}"
            )


@dataclass(frozen=True)
class MembershipCertificate:
    """A feasibility verdict plus the LP it came from.

    Duck-types lp.FeasibilityCertificate (feasible/witness/functional) and
    additionally records, per LP row, which behavior coordinate (x, y, a, b)
    its right-hand side carries (None for homogeneous rows).
    """

    context: str
    feasible: bool
    witness: Optional[tuple]
    functional: Optional[tuple]
    problem: LinearFeasibilityProblem
    behavior_rows: tuple
    column_labels: tuple

    def verify(self):
        return verify_certificate(self.problem, self)

    def column_values(self):
        """f^T A per column; all >= 0 for a valid infeasibility functional."""
        if self.feasible:
            raise NotInfeasible("column values are defined for infeasible certificates")
        vals = []
        for j in range(self.problem.variable_count):
            total = ZERO
            for fi, (coeffs, _) in zip(self.functional, self.problem.equalities):
                total += fi * coeffs[j]
            vals.append(total)
        return tuple(vals)

    def to_dict(self):
        doc = {
            "context": self.context,
            "verdict": "feasible" if self.feasible else "infeasible",
            "column_labels": list(self.column_labels),
        }
        if self.feasible:
            doc["witness"] = [format_rational(v) for v in self.witness]
        else:
            doc["functional"] = [format_rational(v) for v in self.functional]
        return doc


def _wrap(context, problem, behavior_rows, column_labels):
    cert = lp_feasible(problem)
    return MembershipCertificate(
        context=context,
        feasible=cert.feasible,
        witness=cert.witness,
        functional=cert.functional,
        problem=problem,
        behavior_rows=tuple(behavior_rows),
        column_labels=tuple(column_labels),
    )


def check_joint_fine(behavior, cap=DEFAULT_VERTEX_CAP):
    """Feasible iff one joint distribution over all settings' outcomes matches."""
    sc = behavior.scenario
    n = sc.outcomes_a**sc.settings_a * sc.outcomes_b**sc.settings_b
    if n > cap:
        raise SizeLimit(f"joint assignment count {n} exceeds cap {cap}")
    assignments = list(
        itertools.product(
            itertools.product(range(sc.outcomes_a), repeat=sc.settings_a),
            itertools.product(range(sc.outcomes_b), repeat=sc.settings_b),
        )
    )
    labels = tuple(f"a={''.join(map(str, aa))};b={''.join(map(str, bb))}" for aa, bb in assignments)
    rows = []
    coords = []
    for (x, y) in sc.setting_pairs:
        for a in range(sc.outcomes_a):
            for b in range(sc.outcomes_b):
                row = [
                    ONE if (aa[x - 1] == a and bb[y - 1] == b) else ZERO
                    for aa, bb in assignments
                ]
                rows.append((row, behavior.entry(x, y, a, b)))
                coords.append((x, y, a, b))
    problem = LinearFeasibilityProblem(n, tuple(rows))
    return _wrap("joint-fine", problem, coords, labels)


def check_ld(behavior, cap=DEFAULT_VERTEX_CAP):
    """Feasible iff the table is a convex mixture of deterministic strategies."""
    sc = behavior.scenario
    vertices = enumerate_deterministic_vertices(sc, cap)
    labels = tuple(
        f"a={''.join(map(str, v.alice_assignment))};b={''.join(map(str, v.bob_assignment))}"
        for v in vertices
    )
    rows = []
    coords = []
    for (x, y) in sc.setting_pairs:
        for a in range(sc.outcomes_a):
            for b in range(sc.outcomes_b):
                row = [
                    ONE if (v.alice(x) == a and v.bob(y) == b) else ZERO for v in vertices
                ]
                rows.append((row, behavior.entry(x, y, a, b)))
                coords.append((x, y, a, b))
    problem = LinearFeasibilityProblem(len(vertices), tuple(rows))
    return _wrap("ld", problem, coords, labels)


def check_lf(behavior, cap=DEFAULT_VERTEX_CAP):
    """Feasibility of the friend-wing decomposition (i)-(iv) above.

    Variables are the allowed q(a, b, hidden | x, y) entries (the ask-setting
    zeros are omitted rather than constrained) plus one p_hidden per hidden
    outcome; the witness is q together with p.
    """
    sc = behavior.scenario
    if not sc.friend_on_a:
        raise NoFriend("check_lf needs a friend on Alice's wing (friend_on_a)")
    hidden_space = (
        list(itertools.product(range(sc.outcomes_a), range(sc.outcomes_b)))
        if sc.friend_on_b
        else [(c,) for c in range(sc.outcomes_a)]
    )

    def allowed(x, y, a, b, hid):
        if x == 1 and a != hid[0]:
            return False
        if sc.friend_on_b and y == 1 and b != hid[1]:
            return False
        return True

    index = {}
    labels = []
    for (x, y) in sc.setting_pairs:
        for a in range(sc.outcomes_a):
            for b in range(sc.outcomes_b):
                for hid in hidden_space:
                    if allowed(x, y, a, b, hid):
                        index[(x, y, a, b, hid)] = len(labels)
                        labels.append(f"q({a}{b}{''.join(map(str, hid))}|{x}{y})")
    p_index = {}
    for hid in hidden_space:
        p_index[hid] = len(labels)
        labels.append(f"p({''.join(map(str, hid))})")
    n = len(labels)
    if n > cap:
        raise SizeLimit(f"LF variable count {n} exceeds cap {cap}")

    rows = []
    coords = []

    def var_row():
        return [ZERO] * n

    # (i) no superdeterminism: the hidden marginal is setting-independent.
    for (x, y) in sc.setting_pairs:
        for hid in hidden_space:
            row = var_row()
            for a in range(sc.outcomes_a):
                for b in range(sc.outcomes_b):
                    k = index.get((x, y, a, b, hid))
                    if k is not None:
                        row[k] = ONE
            row[p_index[hid]] = -ONE
            rows.append((row, ZERO))
            coords.append(None)

    # (ii) locality: Bob-side totals independent of x; Alice-side of y.
    for y in range(1, sc.settings_b + 1):
        for b in range(sc.outcomes_b):
            for hid in hidden_space:
                for x in range(1, sc.settings_a):
                    row = var_row()
                    for a in range(sc.outcomes_a):
                        k = index.get((x, y, a, b, hid))
                        if k is not None:
                            row[k] += ONE
                        k = index.get((x + 1, y, a, b, hid))
                        if k is not None:
                            row[k] -= ONE
                    rows.append((row, ZERO))
                    coords.append(None)
    for x in range(1, sc.settings_a + 1):
        for a in range(sc.outcomes_a):
            for hid in hidden_space:
                for y in range(1, sc.settings_b):
                    row = var_row()
                    for b in range(sc.outcomes_b):
                        k = index.get((x, y, a, b, hid))
                        if k is not None:
                            row[k] += ONE
                        k = index.get((x, y + 1, a, b, hid))
                        if k is not None:
                            row[k] -= ONE
                    rows.append((row, ZERO))
                    coords.append(None)

    # (iv) reproduce the observed table.
    for (x, y) in sc.setting_pairs:
        for a in range(sc.outcomes_a):
            for b in range(sc.outcomes_b):
                row = var_row()
                for hid in hidden_space:
                    k = index.get((x, y, a, b, hid))
                    if k is not None:
                        row[k] = ONE
                rows.append((row, behavior.entry(x, y, a, b)))
                coords.append((x, y, a, b))

    problem = LinearFeasibilityProblem(n, tuple(rows))
    return _wrap("lf", problem, coords, labels)


def check_sw_sequential(behavior, seq, cap=DEFAULT_VERTEX_CAP):
    """Feasibility of the sequential reverse-and-ask decomposition."""
    sc = behavior.scenario
    if seq.base.settings_a != sc.settings_a or seq.base.settings_b != sc.settings_b:
        raise WrongScenario("behavior does not live on the sequential scenario's settings")
    R = seq.reversals
    oa, ob = sc.outcomes_a, sc.outcomes_b
    cvecs = list(itertools.product(range(oa), repeat=R))

    def allowed(xt, at, cvec):
        return xt > R or at == cvec[xt - 1]

    index = {}
    labels = []
    for (xt, y) in sc.setting_pairs:
        for at in range(oa):
            for b in range(ob):
                for cvec in cvecs:
                    if allowed(xt, at, cvec):
                        index[(xt, y, at, b, cvec)] = len(labels)
                        labels.append(f"p({at}{b},{''.join(map(str, cvec))}|{xt}{y})")
    n = len(labels)
    if n > cap:
        raise SizeLimit(f"sequential variable count {n} exceeds cap {cap}")

    rows = []
    coords = []

    def var_row():
        return [ZERO] * n

    # (b, c_1..c_j) marginal equal across x~ in {j..R+1}, for each y.
    for j in range(1, R + 1):
        for y in range(1, sc.settings_b + 1):
            for b in range(ob):
                for cprefix in itertools.product(range(oa), repeat=j):
                    for xt in range(j, R + 1):
                        row = var_row()
                        for at in range(oa):
                            for cvec in cvecs:
                                if cvec[:j] != cprefix:
                                    continue
                                k = index.get((xt, y, at, b, cvec))
                                if k is not None:
                                    row[k] += ONE
                                k = index.get((xt + 1, y, at, b, cvec))
                                if k is not None:
                                    row[k] -= ONE
                        rows.append((row, ZERO))
                        coords.append(None)

    # (a~, c-vector) marginal over b independent of y.
    for (xt, at, cvec) in itertools.product(range(1, R + 2), range(oa), cvecs):
        if not allowed(xt, at, cvec):
            continue
        for y in range(1, sc.settings_b):
            row = var_row()
            for b in range(ob):
                row[index[(xt, y, at, b, cvec)]] += ONE
                row[index[(xt, y + 1, at, b, cvec)]] -= ONE
            rows.append((row, ZERO))
            coords.append(None)

    # reproduce the observed table.
    for (xt, y) in sc.setting_pairs:
        for at in range(oa):
            for b in range(ob):
                row = var_row()
                for cvec in cvecs:
                    k = index.get((xt, y, at, b, cvec))
                    if k is not None:
                        row[k] = ONE
                rows.append((row, behavior.entry(xt, y, at, b)))
                coords.append((xt, y, at, b))

    problem = LinearFeasibilityProblem(n, tuple(rows))
    return _wrap("sw", problem, coords, labels)


# --- inequality extraction ---------------------------------------------------


@dataclass(frozen=True)
class InequalityReport:
    """A violated linear functional over behavior coordinates.

    Members of the tested set satisfy value <= bound; the rejected input
    strictly exceeds it. For vertex-enumerable contexts the functional is
    affinely calibrated so the deterministic maximum reads 2 and the input
    reads 4 (the CHSH convention); for the lf context the raw orientation is
    kept (bound 0).
    """

    context: str
    coefficients: dict  # (x, y, a, b) -> Fraction
    bound: Fraction
    value: Fraction
    calibrated: bool

    def evaluate(self, behavior):
        total = ZERO
        for (x, y, a, b), coeff in self.coefficients.items():
            total += coeff * behavior.entry(x, y, a, b)
        return total

    def to_dict(self):
        return {
            "context": self.context,
            "coefficients": {
                f"{x},{y},{a},{b}": format_rational(c)
                for (x, y, a, b), c in sorted(self.coefficients.items())
            },
            "bound": format_rational(self.bound),
            "value": format_rational(self.value),
            "calibrated": self.calibrated,
        }


def extract_inequality(cert, behavior, cap=DEFAULT_VERTEX_CAP):
    """Restate an infeasibility functional as a violated behavior inequality."""
    if cert.feasible:
        raise NotInfeasible("cannot extract an inequality from a feasible certificate")
    raw = {}
    for f, coord in zip(cert.functional, cert.behavior_rows):
        if coord is not None:
            # members satisfy sum f*wp >= 0; flip so the input exceeds a bound
            raw[coord] = raw.get(coord, ZERO) - f
    value = ZERO
    for coord, coeff in raw.items():
        value += coeff * behavior.entry(*coord)
    if value <= 0:
        raise NotInfeasible("functional does not separate the input behavior")

    if cert.context in ("ld", "joint-fine", "sw"):
        sc = behavior.scenario
        vertex_values = []
        for v in enumerate_deterministic_vertices(sc, cap):
            vb = strategy_behavior(v, sc)
            total = ZERO
            for coord, coeff in raw.items():
                total += coeff * vb.entry(*coord)
            vertex_values.append(total)
        vmax = max(vertex_values)
        alpha = Fraction(2) / (value - vmax)
        kappa = 2 - alpha * vmax
        shift = kappa / len(sc.setting_pairs)
        coefficients = {}
        for (x, y) in sc.setting_pairs:
            for a in range(sc.outcomes_a):
                for b in range(sc.outcomes_b):
                    coord = (x, y, a, b)
                    coefficients[coord] = alpha * raw.get(coord, ZERO) + shift
        return InequalityReport(
            context=cert.context,
            coefficients=coefficients,
            bound=Fraction(2),
            value=Fraction(4),
            calibrated=True,
        )
    return InequalityReport(
        context=cert.context,
        coefficients=raw,
        bound=ZERO,
        value=value,
        calibrated=False,
    )


# --- paired-equivalence machinery -------------------------------------------


def sample_rational_behaviors(scenario, count, seed, cap=DEFAULT_VERTEX_CAP):
    """Seeded random behaviors: vertex mixtures pulled toward the uniform point
    and (on the binary 2x2 scenario) toward the PR box, with weight denominator 64.
    """
    rng = random.Random(seed)
    vertices = enumerate_deterministic_vertices(scenario, cap)
    vertex_tables = [strategy_behavior(v, scenario) for v in vertices]
    specials = [uniform_behavior(scenario)]
    if scenario.is_binary_2x2():
        specials.append(pr_box(scenario.friend_on_a))
    out = []
    for _ in range(count):
        picked = [rng.choice(vertex_tables) for _ in range(rng.randint(1, 4))]
        if rng.random() < 0.5:
            picked.append(specials[0])
        if len(specials) > 1 and rng.random() < 0.5:
            picked.append(specials[1])
        cuts = sorted(rng.sample(range(1, 64), len(picked) - 1)) if len(picked) > 1 else []
        bounds = [0] + cuts + [64]
        weights = [Fraction(bounds[i + 1] - bounds[i], 64) for i in range(len(picked))]
        out.append(mix_behaviors(list(zip(weights, picked))))
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    settings_a: int
    settings_b: int
    vertices_checked: int
    samples_checked: int
    disagreements: tuple  # of (kind, index, ld_feasible, sw_feasible)
    seed: int

    @property
    def agreement(self):
        return not self.disagreements

    def to_dict(self):
        return {
            "settings_a": self.settings_a,
            "settings_b": self.settings_b,
            "vertices_checked": self.vertices_checked,
            "samples_checked": self.samples_checked,
            "disagreements": [list(d) for d in self.disagreements],
            "seed": self.seed,
        }


def ld_sw_equivalence_test(settings_a=2, settings_b=None, sample_count=200, seed=7):
    """Paired LD-vs-sequential verdicts on all vertices plus seeded samples.

    Expected disagreements: zero (the two sets coincide when R = settings_a - 1).
    """
    if settings_a not in (2, 3):
        raise WrongScenario("paired test is wired for binary scenarios with 2 or 3 settings")
    if settings_b is None:
        settings_b = settings_a
    scenario = ScenarioDescriptor(settings_a, settings_b)
    seq = SequentialScenario(scenario, settings_a - 1)
    disagreements = []

    vertices = enumerate_deterministic_vertices(scenario)
    for i, v in enumerate(vertices):
        vb = strategy_behavior(v, scenario)
        ld = check_ld(vb).feasible
        sw = check_sw_sequential(vb, seq).feasible
        if ld != sw:
            disagreements.append(("vertex", i, ld, sw))

    samples = sample_rational_behaviors(scenario, sample_count, seed)
    for i, b in enumerate(samples):
        ld = check_ld(b).feasible
        sw = check_sw_sequential(b, seq).feasible
        if ld != sw:
            disagreements.append(("sample", i, ld, sw))

    return EquivalenceReport(
        settings_a=settings_a,
        settings_b=settings_b,
        vertices_checked=len(vertices),
        samples_checked=len(samples),
        disagreements=tuple(disagreements),
        seed=seed,
    )
