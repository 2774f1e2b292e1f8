"""jointcert: exact certificates for joint probabilistic descriptions.

Decides, over exact rationals, whether an observed-event probability table
admits a joint distribution over all settings (check_joint_fine), a
deterministic-mixture model (check_ld), a friend-wing decomposition
(check_lf), or a sequential reverse-and-ask decomposition
(check_sw_sequential) — every verdict carries an independently verifiable
witness or separating functional. Also ships a Born-rule protocol simulator
that hunts for decomposition-violating tables, an exact credence calculus
for agent-duplication experiments with a betting Monte Carlo, and a toy
lower-bound estimator of monotone algorithmic probability.
"""

from fractions import Fraction as Rational

from .behaviors import (
    Behavior,
    DeterministicStrategy,
    ScenarioDescriptor,
    ValidationReport,
    chsh_value,
    enumerate_deterministic_vertices,
    mix_behaviors,
    pr_box,
    read_behavior,
    strategy_behavior,
    uniform_behavior,
    validate_behavior,
    write_behavior,
)
from .duplication import (
    DUPLICATED,
    ELGA_NUI,
    FIXED,
    REFLECTION,
    AgentRole,
    CustomWeights,
    DuplicationExperiment,
    check_cp_consistency,
    credence_outcome,
    credence_via_binomial,
    heads_count_distribution,
    self_locate,
    simulate_betting,
)
from .induction import AlgProbEstimate, ToyMachineConfig, bb_credence, conditional_M, estimate_M
from .lp import FeasibilityCertificate, LinearFeasibilityProblem, lp_feasible, verify_certificate
from .membership import (
    EquivalenceReport,
    InequalityReport,
    MembershipCertificate,
    SequentialScenario,
    check_joint_fine,
    check_ld,
    check_lf,
    check_sw_sequential,
    extract_inequality,
    ld_sw_equivalence_test,
    sample_rational_behaviors,
)
from .quantum import (
    BornBehavior,
    EwfsProtocol,
    born_behavior,
    chsh_float,
    chsh_optimize,
    default_protocol,
    lf_violation_search,
    reverse_check,
)

__version__ = "0.1.0"
