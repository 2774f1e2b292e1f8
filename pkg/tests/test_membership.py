"""Membership tests: oracles, pairwise equivalences, nesting, invariances."""

import random
from fractions import Fraction

import pytest

from jointcert.behaviors import (
    Behavior,
    ScenarioDescriptor,
    chsh_value,
    enumerate_deterministic_vertices,
    mix_behaviors,
    pr_box,
    strategy_behavior,
    uniform_behavior,
    validate_behavior,
)
from jointcert.errors import NoFriend, NotInfeasible, WrongScenario
from jointcert.membership import (
    SequentialScenario,
    check_joint_fine,
    check_ld,
    check_lf,
    check_sw_sequential,
    extract_inequality,
    ld_sw_equivalence_test,
    sample_rational_behaviors,
)

BIN22 = ScenarioDescriptor(2, 2)
FRIEND22 = ScenarioDescriptor(2, 2, friend_on_a=True)


def product_behavior(pa, pb, scenario=BIN22):
    """p(ab|xy) = pa[x][a] * pb[y][b]."""
    table = {}
    for (x, y) in scenario.setting_pairs:
        table[(x, y)] = tuple(
            tuple(pa[x - 1][a] * pb[y - 1][b] for b in range(scenario.outcomes_b))
            for a in range(scenario.outcomes_a)
        )
    return Behavior(scenario, table)


def test_product_behavior_joint_feasible():
    pa = [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 2), Fraction(1, 2)]]
    pb = [[Fraction(1, 5), Fraction(4, 5)], [Fraction(3, 7), Fraction(4, 7)]]
    b = product_behavior(pa, pb)
    cert = check_joint_fine(b)
    assert cert.feasible and cert.verify()


def test_pr_box_support_oracle():
    # every deterministic vertex puts mass outside the PR-box support, so no
    # convex mixture can reproduce it: checked exhaustively, without any LP
    pr = pr_box()
    for v in enumerate_deterministic_vertices(BIN22):
        vb = strategy_behavior(v, BIN22)
        inside = all(
            pr.entry(x, y, a, b) > 0
            for (x, y) in BIN22.setting_pairs
            for a in range(2)
            for b in range(2)
            if vb.entry(x, y, a, b) > 0
        )
        assert not inside
    # the LPs agree with the oracle
    assert not check_joint_fine(pr).feasible
    assert not check_ld(pr).feasible


def test_pr_box_certificates_verify():
    for cert in (check_joint_fine(pr_box()), check_ld(pr_box())):
        assert not cert.feasible
        assert cert.verify()


def test_single_vertex_one_hot_witness():
    vertices = enumerate_deterministic_vertices(BIN22)
    vb = strategy_behavior(vertices[5], BIN22)
    cert = check_ld(vb)
    assert cert.feasible and cert.verify()
    assert sum(1 for w in cert.witness if w != 0) == 1
    assert any(w == 1 for w in cert.witness)


def test_fine_equivalence_on_vertices_and_samples():
    for v in enumerate_deterministic_vertices(BIN22):
        vb = strategy_behavior(v, BIN22)
        assert check_joint_fine(vb).feasible and check_ld(vb).feasible
    for b in sample_rational_behaviors(BIN22, 40, seed=13):
        assert check_joint_fine(b).feasible == check_ld(b).feasible


def test_born_chsh_violation_is_joint_infeasible():
    from jointcert.quantum import EwfsProtocol, born_behavior, entangled_state
    import math

    protocol = EwfsProtocol(
        state=entangled_state(math.pi / 4),
        alice_thetas=(0.0, math.pi / 2),
        bob_thetas=(-3 * math.pi / 4, 3 * math.pi / 4),
        state_phi=math.pi / 4,
    )
    born = born_behavior(protocol, den_cap=10**4)
    sub = Behavior(
        BIN22,
        {
            (1, 1): born.behavior.cell(2, 1),
            (1, 2): born.behavior.cell(2, 2),
            (2, 1): born.behavior.cell(3, 1),
            (2, 2): born.behavior.cell(3, 2),
        },
    )
    assert chsh_value(sub) > 2
    cert = check_joint_fine(sub)
    assert not cert.feasible and cert.verify()


# --- lf -----------------------------------------------------------------------


def test_lf_requires_friend():
    with pytest.raises(NoFriend):
        check_lf(uniform_behavior(BIN22))


def test_lf_feasible_on_consistent_vertex():
    vs = enumerate_deterministic_vertices(FRIEND22)
    cert = check_lf(strategy_behavior(vs[3], FRIEND22))
    assert cert.feasible and cert.verify()


def test_ld_implies_lf_and_no_signalling_nesting():
    for b in sample_rational_behaviors(FRIEND22, 25, seed=2):
        ld = check_ld(b)
        lf = check_lf(b)
        assert ld.verify() and lf.verify()
        if ld.feasible:
            assert lf.feasible
        if lf.feasible:
            assert validate_behavior(b).no_signalling_ok


def test_lf_four_party_variant():
    scenario = ScenarioDescriptor(2, 2, friend_on_a=True, friend_on_b=True)
    vs = enumerate_deterministic_vertices(scenario)
    cert = check_lf(strategy_behavior(vs[7], scenario))
    assert cert.feasible and cert.verify()
    pr = pr_box()
    pr4 = Behavior(scenario, dict(pr.table))
    cert_pr = check_lf(pr4)
    assert not cert_pr.feasible and cert_pr.verify()


# --- sw -----------------------------------------------------------------------


def test_sequential_scenario_validation():
    with pytest.raises(WrongScenario):
        SequentialScenario(BIN22, 2)  # needs settings_a == 3


def test_sw_feasible_on_deterministic_vertices():
    seq = SequentialScenario(BIN22, 1)
    for v in enumerate_deterministic_vertices(BIN22)[:6]:
        cert = check_sw_sequential(strategy_behavior(v, BIN22), seq)
        assert cert.feasible and cert.verify()


def test_sw_pr_box_infeasible():
    cert = check_sw_sequential(pr_box(), SequentialScenario(BIN22, 1))
    assert not cert.feasible and cert.verify()


def test_ld_sw_equivalence_2x2_quick():
    report = ld_sw_equivalence_test(settings_a=2, sample_count=30, seed=7)
    assert report.agreement
    assert report.vertices_checked == 16 and report.samples_checked == 30


def test_ld_sw_equivalence_vertices_only():
    report = ld_sw_equivalence_test(settings_a=2, sample_count=0, seed=0)
    assert report.agreement and report.samples_checked == 0


@pytest.mark.slow
def test_ld_sw_equivalence_3x3_sampled():
    scenario = ScenarioDescriptor(3, 3)
    seq = SequentialScenario(scenario, 2)
    rng = random.Random(21)
    vertices = enumerate_deterministic_vertices(scenario)
    picked = rng.sample(vertices, 8)
    for v in picked:
        vb = strategy_behavior(v, scenario)
        assert check_ld(vb).feasible == check_sw_sequential(vb, seq).feasible
    for b in sample_rational_behaviors(scenario, 6, seed=4):
        assert check_ld(b).feasible == check_sw_sequential(b, seq).feasible


# --- inequality extraction ------------------------------------------------------


def test_extracted_inequality_pr_vs_ld():
    pr = pr_box()
    cert = check_ld(pr)
    report = extract_inequality(cert, pr)
    assert report.bound == 2 and report.value == 4
    values = [
        report.evaluate(strategy_behavior(v, BIN22))
        for v in enumerate_deterministic_vertices(BIN22)
    ]
    assert max(values) == 2 and all(v <= 2 for v in values)
    assert report.evaluate(pr) == 4


def test_extract_on_feasible_raises():
    cert = check_ld(uniform_behavior(BIN22))
    with pytest.raises(NotInfeasible):
        extract_inequality(cert, uniform_behavior(BIN22))


def test_lf_inequality_respects_cone_columns():
    pr = pr_box(friend_on_a=True)
    cert = check_lf(pr)
    assert not cert.feasible
    report = extract_inequality(cert, pr)
    assert report.bound == 0 and report.value > 0
    # the functional is nonnegative on every generator column of the LP cone
    assert all(v >= 0 for v in cert.column_values())


# --- invariances ----------------------------------------------------------------


def relabel_outcomes_a(behavior):
    sc = behavior.scenario
    table = {}
    for (x, y) in sc.setting_pairs:
        cell = behavior.cell(x, y)
        table[(x, y)] = tuple(cell[sc.outcomes_a - 1 - a] for a in range(sc.outcomes_a))
    return Behavior(sc, table)


def swap_non_friend_settings(behavior, x1, x2):
    sc = behavior.scenario
    table = {}
    for (x, y) in sc.setting_pairs:
        src = {x1: x2, x2: x1}.get(x, x)
        table[(x, y)] = behavior.cell(src, y)
    return Behavior(sc, table)


def test_verdicts_invariant_under_relabelings():
    scenario = ScenarioDescriptor(3, 2, friend_on_a=True)
    for b in sample_rational_behaviors(scenario, 8, seed=31):
        base_ld = check_ld(b).feasible
        base_lf = check_lf(b).feasible
        flipped = relabel_outcomes_a(b)
        assert check_ld(flipped).feasible == base_ld
        assert check_lf(flipped).feasible == base_lf
        swapped = swap_non_friend_settings(b, 2, 3)  # x = 1 stays distinguished
        assert check_ld(swapped).feasible == base_ld
        assert check_lf(swapped).feasible == base_lf
