"""Command-line interface.

Exit codes: 0 = feasible / consistent / pass; 3 = infeasible or inconsistency
found (a successful detection, distinguished for scripting); 2 = invalid
input or usage; 1 = internal error or exhausted search budget.

All randomness flows from explicit --seed values; identical argument vectors
produce byte-identical --format json output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .behaviors import (
    ScenarioDescriptor,
    chsh_value,
    enumerate_deterministic_vertices,
    read_behavior,
    write_behavior,
)
from .behaviors import validate_behavior as _validate
from .duplication import (
    DUPLICATED,
    ELGA_NUI,
    FIXED,
    REFLECTION,
    CustomWeights,
    DuplicationExperiment,
    check_cp_consistency,
    credence_outcome,
    credence_via_binomial,
    heads_count_distribution,
    simulate_betting,
    write_detail_csv,
    write_summary_csv,
)
from .errors import JointcertError, SearchNotFound
from .induction import ToyMachineConfig, bb_credence, conditional_M, estimate_M, random_bits
from .membership import (
    SequentialScenario,
    check_joint_fine,
    check_ld,
    check_lf,
    check_sw_sequential,
    extract_inequality,
    ld_sw_equivalence_test,
)
from .quantum import (
    EwfsProtocol,
    born_behavior,
    chsh_float,
    chsh_optimize,
    entangled_state,
    lf_violation_search,
    protocol_to_dict,
)
from .rationals import format_rational, parse_rational

EXIT_PASS = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_FOUND = 3


def _emit(args, doc, lines):
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in sorted(_flatten(doc).items()):
            writer.writerow([key, value])
        text = buf.getvalue()
    else:
        text = "".join(line + "\n" for line in lines)
    sys.stdout.write(text)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _flatten(doc, prefix=""):
    flat = {}
    if isinstance(doc, dict):
        for k, v in doc.items():
            flat.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(doc, (list, tuple)):
        for i, v in enumerate(doc):
            flat.update(_flatten(v, f"{prefix}{i}."))
    else:
        flat[prefix[:-1]] = doc
    return flat


def _fr(text):
    return parse_rational(text)


def _rule(name, custom=None):
    if name == "elga":
        return ELGA_NUI
    if name == "reflection":
        return REFLECTION
    if name == "custom":
        if not custom:
            raise JointcertError("--rule custom needs --custom-weights 'wH,wT'")
        wh, wt = (parse_rational(part) for part in custom.split(","))
        return CustomWeights({"heads": wh, "tails": wt})
    raise JointcertError(f"unknown rule {name!r}")


def _verified(cert):
    if not cert.verify():
        raise RuntimeError("certificate failed independent re-verification")
    return cert


def _certificate_report(args, cert):
    doc = cert.to_dict()
    lines = [f"{cert.context}: {'feasible' if cert.feasible else 'INFEASIBLE'}"]
    if cert.feasible:
        nonzero = [
            f"  {label} = {format_rational(v)}"
            for label, v in zip(cert.column_labels, cert.witness)
            if v != 0
        ]
        lines.append(f"witness ({len(nonzero)} nonzero of {len(cert.witness)}):")
        lines.extend(nonzero)
    else:
        lines.append("separating functional (nonzero rows):")
        lines.extend(
            f"  row {i}: {format_rational(v)}" for i, v in enumerate(cert.functional) if v != 0
        )
    _emit(args, doc, lines)
    return EXIT_PASS if cert.feasible else EXIT_FOUND


# --- handlers -----------------------------------------------------------------


def _cmd_validate(args):
    behavior = read_behavior(args.behavior, args.den_cap, args.rationalize)
    report = _validate(behavior)
    doc = {
        "normalization_ok": report.normalization_ok,
        "nonnegativity_ok": report.nonnegativity_ok,
        "no_signalling_ok": report.no_signalling_ok,
        "failures": [list(f) for f in report.failures],
        "passed": report.passed,
    }
    lines = [
        f"normalization: {'ok' if report.normalization_ok else 'FAILED'}",
        f"nonnegativity: {'ok' if report.nonnegativity_ok else 'FAILED'}",
        f"no-signalling: {'ok' if report.no_signalling_ok else 'FAILED'}",
    ]
    lines += [f"  {f}" for f in report.failures]
    _emit(args, doc, lines)
    return EXIT_PASS if report.passed else EXIT_FOUND


def _scenario_from_args(args):
    if args.behavior:
        return read_behavior(args.behavior).scenario
    return ScenarioDescriptor(
        settings_a=args.settings_a,
        settings_b=args.settings_b,
        outcomes_a=args.outcomes_a,
        outcomes_b=args.outcomes_b,
        friend_on_a=args.friend_on_a,
        friend_on_b=args.friend_on_b,
    )


def _cmd_vertices(args):
    scenario = _scenario_from_args(args)
    vertices = enumerate_deterministic_vertices(scenario, args.vertex_cap)
    doc = {
        "count": len(vertices),
        "vertices": [
            {
                "alice": list(v.alice_assignment),
                "bob": list(v.bob_assignment),
                "friend_c": v.friend_outcome_c,
                "friend_d": v.friend_outcome_d,
            }
            for v in vertices
        ],
    }
    lines = [f"{len(vertices)} deterministic vertices"] + [
        f"  a={v.alice_assignment} b={v.bob_assignment}" for v in vertices
    ]
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_chsh(args):
    behavior = read_behavior(args.behavior, args.den_cap, args.rationalize)
    value = chsh_value(behavior)
    _emit(args, {"chsh": format_rational(value)}, [f"CHSH = {format_rational(value)}"])
    return EXIT_PASS


def _membership(args, checker):
    behavior = read_behavior(args.behavior, args.den_cap, args.rationalize)
    cert = _verified(checker(behavior))
    return _certificate_report(args, cert)


def _cmd_check_joint(args):
    return _membership(args, lambda b: check_joint_fine(b, args.vertex_cap))


def _cmd_check_ld(args):
    return _membership(args, lambda b: check_ld(b, args.vertex_cap))


def _cmd_check_lf(args):
    return _membership(args, lambda b: check_lf(b, args.vertex_cap))


def _cmd_check_sw(args):
    behavior = read_behavior(args.behavior, args.den_cap, args.rationalize)
    reversals = args.reversals or (behavior.scenario.settings_a - 1)
    seq = SequentialScenario(behavior.scenario, reversals)
    cert = _verified(check_sw_sequential(behavior, seq, args.vertex_cap))
    return _certificate_report(args, cert)


def _cmd_ld_sw_test(args):
    report = ld_sw_equivalence_test(
        settings_a=args.settings_a,
        settings_b=args.settings_b,
        sample_count=args.samples,
        seed=args.seed,
    )
    doc = report.to_dict()
    lines = [
        f"checked {report.vertices_checked} vertices + {report.samples_checked} samples: "
        f"{len(report.disagreements)} disagreements"
    ]
    _emit(args, doc, lines)
    return EXIT_PASS if report.agreement else EXIT_FOUND


_CHECKERS = {
    "joint": check_joint_fine,
    "ld": check_ld,
    "lf": check_lf,
}


def _cmd_extract_ineq(args):
    behavior = read_behavior(args.behavior, args.den_cap, args.rationalize)
    if args.context == "sw":
        reversals = args.reversals or (behavior.scenario.settings_a - 1)
        cert = check_sw_sequential(behavior, SequentialScenario(behavior.scenario, reversals))
    else:
        cert = _CHECKERS[args.context](behavior, args.vertex_cap)
    _verified(cert)
    report = extract_inequality(cert, behavior, args.vertex_cap)
    doc = report.to_dict()
    lines = [
        f"context {report.context}: members satisfy value <= {format_rational(report.bound)}; "
        f"input value = {format_rational(report.value)}",
        "coefficients:",
    ] + [
        f"  ({x},{y},{a},{b}) {format_rational(c)}"
        for (x, y, a, b), c in sorted(report.coefficients.items())
        if c != 0
    ]
    _emit(args, doc, lines)
    return EXIT_FOUND


def _angles(text):
    return tuple(float(v) for v in text.split(",")) if text else ()


def _cmd_quantum_behavior(args):
    protocol = EwfsProtocol(
        state=entangled_state(args.state_angle),
        alice_thetas=_angles(args.alice_angles),
        bob_thetas=_angles(args.bob_angles),
        state_phi=args.state_angle,
    )
    born = born_behavior(protocol, args.den_cap)
    if args.behavior_out:
        write_behavior(born.behavior, args.behavior_out, protocol_to_dict(protocol))
    doc = {
        "scenario": {
            "settings_a": born.behavior.scenario.settings_a,
            "settings_b": born.behavior.scenario.settings_b,
        },
        "table": {
            f"{x},{y}": [[format_rational(v) for v in row] for row in born.behavior.cell(x, y)]
        for (x, y) in born.behavior.scenario.setting_pairs},
        "den_cap": args.den_cap,
    }
    lines = [f"behavior on {doc['scenario']['settings_a']}x{doc['scenario']['settings_b']} friend scenario"]
    for (x, y) in born.behavior.scenario.setting_pairs:
        cell = born.behavior.cell(x, y)
        lines.append(
            f"  x={x} y={y}: " + "  ".join(format_rational(v) for row in cell for v in row)
        )
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_quantum_optimize(args):
    result = chsh_optimize(seed=args.seed, iterations=args.iterations, product_only=args.product_only)
    doc = {
        "value": repr(result.value),
        "phi": repr(result.phi),
        "alice_thetas": [repr(t) for t in result.alice_thetas],
        "bob_thetas": [repr(t) for t in result.bob_thetas],
        "product_only": result.product_only,
        "seed": result.seed,
        "iterations": result.iterations,
    }
    lines = [f"max CHSH = {result.value!r} (product_only={result.product_only})"]
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_quantum_lf_search(args):
    try:
        result = lf_violation_search(
            settings_a=args.settings_a,
            settings_b=args.settings_b,
            seed=args.seed,
            budget=args.budget,
            den_cap=args.den_cap,
        )
    except SearchNotFound as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _verified(result.certificate)
    if args.behavior_out:
        write_behavior(
            result.born.behavior, args.behavior_out, protocol_to_dict(result.protocol)
        )
    doc = {
        "candidates_tried": result.candidates_tried,
        "seed": result.seed,
        "certificate": result.certificate.to_dict(),
        "protocol": protocol_to_dict(result.protocol),
        "trace": [list(t) for t in result.trace],
    }
    lines = [
        f"infeasible lf certificate after {result.candidates_tried} candidate(s); "
        f"functional has {sum(1 for v in result.certificate.functional if v != 0)} nonzero rows"
    ]
    _emit(args, doc, lines)
    return EXIT_FOUND


def _cmd_dup_credence(args):
    experiment = DuplicationExperiment(labs=1, factor=args.M, heads_prob=_fr(args.q))
    rule = _rule(args.rule, args.custom_weights)
    role = DUPLICATED if args.role == "duplicated" else FIXED
    credence = credence_outcome(rule, experiment, role)
    doc = {k: format_rational(v) for k, v in credence.items()}
    lines = [
        f"P(heads) = {format_rational(credence['heads'])}",
        f"P(tails) = {format_rational(credence['tails'])}",
    ]
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_dup_binomial(args):
    result = credence_via_binomial(args.N, args.M, _fr(args.q))
    dist = heads_count_distribution(args.N, args.M, _fr(args.q))
    doc = {
        "p_heads": format_rational(result.p_heads),
        "p_tails": format_rational(result.p_tails),
        "constant": format_rational(result.constant),
        "heads_count_distribution": {str(k): format_rational(v) for k, v in dist.items()},
    }
    lines = [
        f"P(T) = {format_rational(result.p_tails)}",
        f"P(H) = {format_rational(result.p_heads)}",
        f"normalization constant c = {format_rational(result.constant)}",
    ]
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_dup_simulate(args):
    experiment = DuplicationExperiment(
        labs=args.N,
        factor=args.M,
        heads_prob=_fr(args.q),
        epsilon=_fr(args.eps),
        price=_fr(args.price) if args.price else None,
    )
    result = simulate_betting(experiment, args.runs, args.seed)
    doc = {"runs": args.runs, "seed": args.seed, "roles": {}}
    lines = []
    for role in (DUPLICATED, FIXED):
        exact = result.exact_expectations(role)
        emp = result.empirical(role)
        doc["roles"][role.name] = {
            "copies": result.copies_total(role),
            "exact_tails_fraction": format_rational(exact["tails_fraction"]),
            "empirical_tails_fraction": repr(emp["tails_fraction"]),
            "tails_fraction_se": repr(emp["tails_fraction_se"]),
            "exact_profit_per_copy": format_rational(exact["profit_per_copy"]),
            "empirical_profit_per_copy": repr(emp["profit_per_copy"]),
            "profit_per_copy_se": repr(emp["profit_per_copy_se"]),
        }
        lines.append(
            f"{role.name}: tails fraction {emp['tails_fraction']:.6f} "
            f"(exact {format_rational(exact['tails_fraction'])}), "
            f"profit/copy {emp['profit_per_copy']:.6f} "
            f"(exact {format_rational(exact['profit_per_copy'])})"
        )
    if args.summary_out:
        write_summary_csv(result, args.summary_out)
    if args.detail_out:
        write_detail_csv(result, args.detail_out)
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_dup_cp_check(args):
    report = check_cp_consistency(
        _rule(args.rule_f, None), _rule(args.rule_w, None), args.M, _fr(args.q)
    )
    doc = report.to_dict()
    pd = format_rational(report.p_tails_duplicated)
    pf = format_rational(report.p_tails_fixed)
    if report.consistent:
        lines = [f"consistent: {pd} vs {pf}"]
    else:
        lines = [f"inconsistent: {pd} vs {pf}"]
    _emit(args, doc, lines)
    return EXIT_PASS if report.consistent else EXIT_FOUND


def _machine_config(args):
    return ToyMachineConfig(max_len=args.max_len, steps=args.steps)


def _cmd_induct_m(args):
    cfg = _machine_config(args)
    est = estimate_M(args.x, cfg)
    doc = {
        "string": args.x,
        "max_len": cfg.max_len,
        "steps": cfg.steps,
        "mass": format_rational(est.mass),
        "mass_numerator": str(est.mass.numerator),
        "mass_denominator": str(est.mass.denominator),
        "programs_counted": est.programs_counted,
        "truncated": est.truncated,
    }
    lines = [
        f"M({args.x}) >= {format_rational(est.mass)} "
        f"({est.programs_counted} minimal programs, truncated={est.truncated})"
    ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["string", "L", "T", "mass_numerator", "mass_denominator", "programs_counted", "truncated"]
        )
        writer.writerow(
            [args.x, cfg.max_len, cfg.steps, est.mass.numerator, est.mass.denominator,
             est.programs_counted, est.truncated]
        )
        sys.stdout.write(buf.getvalue())
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(buf.getvalue())
        return EXIT_PASS
    _emit(args, doc, lines)
    return EXIT_PASS


def _cmd_induct_cond(args):
    cfg = _machine_config(args)
    value = conditional_M(args.x, args.y, cfg)
    doc = {"x": args.x, "y": args.y, "conditional": format_rational(value)}
    _emit(args, doc, [f"M({args.y}|{args.x}) ~= {format_rational(value)}"])
    return EXIT_PASS


def _cmd_induct_bb(args):
    cfg = _machine_config(args)
    if args.y_bb:
        thermal = args.y_bb
    else:
        thermal = "".join(map(str, random_bits(args.y_bb_len, args.y_bb_seed)))
    credence = bb_credence(
        args.x, args.y_oo, thermal, args.n_oo, args.n_bb, args.rule, cfg
    )
    doc = {
        "rule": args.rule,
        "y_thermal": thermal,
        "p_ordinary": format_rational(credence["ordinary"]),
        "p_thermal": format_rational(credence["thermal"]),
    }
    lines = [
        f"P(ordinary) = {format_rational(credence['ordinary'])}",
        f"P(thermal)  = {format_rational(credence['thermal'])}",
    ]
    _emit(args, doc, lines)
    return EXIT_PASS


# --- parser -------------------------------------------------------------------


def _add_common(p, seed_required=False):
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p.add_argument("--out", help="also write the rendered report to this path")
    if seed_required:
        p.add_argument("--seed", type=int, required=True, help="64-bit unsigned master seed")


def _add_behavior_input(p):
    p.add_argument("behavior", help="behavior file (JSON, exact rational entries)")
    p.add_argument("--den-cap", type=int, default=None, help="denominator cap for decimal entries")
    p.add_argument(
        "--rationalize",
        action="store_true",
        help="round over-cap decimals to the nearest rational under --den-cap",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jointcert",
        description="Exact certificates for joint probabilistic descriptions; "
        "duplication credence calculus; toy algorithmic-probability induction.",
    )
    parser.add_argument("--version", action="version", version=f"jointcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="normalization/nonnegativity/no-signalling checks")
    _add_behavior_input(p)
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("vertices", help="enumerate deterministic strategies")
    p.add_argument("behavior", nargs="?", help="behavior file to take the scenario from")
    p.add_argument("--settings-a", type=int, default=2)
    p.add_argument("--settings-b", type=int, default=2)
    p.add_argument("--outcomes-a", type=int, default=2)
    p.add_argument("--outcomes-b", type=int, default=2)
    p.add_argument("--friend-on-a", action="store_true")
    p.add_argument("--friend-on-b", action="store_true")
    p.add_argument("--vertex-cap", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(func=_cmd_vertices)

    p = sub.add_parser("chsh", help="exact CHSH value of a binary 2x2 behavior")
    _add_behavior_input(p)
    _add_common(p)
    p.set_defaults(func=_cmd_chsh)

    for name, func, description in (
        ("check-joint", _cmd_check_joint, "joint-distribution membership"),
        ("check-ld", _cmd_check_ld, "deterministic-mixture membership"),
        ("check-lf", _cmd_check_lf, "friend-wing decomposition membership"),
    ):
        p = sub.add_parser(name, help=description)
        _add_behavior_input(p)
        p.add_argument("--vertex-cap", type=int, default=10**6)
        _add_common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("check-sw", help="sequential reverse-and-ask membership")
    _add_behavior_input(p)
    p.add_argument("--reversals", type=int, default=None, help="default: settings_a - 1")
    p.add_argument("--vertex-cap", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(func=_cmd_check_sw)

    p = sub.add_parser("ld-sw-test", help="paired ld-vs-sequential equivalence test")
    p.add_argument("--settings-a", type=int, default=2, choices=(2, 3))
    p.add_argument("--settings-b", type=int, default=None)
    p.add_argument("--samples", type=int, default=200)
    _add_common(p, seed_required=True)
    p.set_defaults(func=_cmd_ld_sw_test)

    p = sub.add_parser("extract-ineq", help="restate an infeasibility as a violated inequality")
    _add_behavior_input(p)
    p.add_argument("--context", choices=("joint", "ld", "lf", "sw"), default="ld")
    p.add_argument("--reversals", type=int, default=None)
    p.add_argument("--vertex-cap", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(func=_cmd_extract_ineq)

    q = sub.add_parser("quantum", help="statevector protocol tools").add_subparsers(
        dest="subcommand", required=True
    )
    p = q.add_parser("behavior", help="Born behavior of a friend protocol")
    p.add_argument("--state-angle", type=float, default=0.7853981633974483)
    p.add_argument("--alice-angles", default="1.5707963267948966,0.7853981633974483")
    p.add_argument("--bob-angles", default="-2.356194490192345,2.356194490192345")
    p.add_argument("--den-cap", type=int, default=10**4)
    p.add_argument("--behavior-out", help="write the behavior file (with protocol object)")
    _add_common(p)
    p.set_defaults(func=_cmd_quantum_behavior)

    p = q.add_parser("optimize", help="maximize CHSH over state and angles")
    p.add_argument("--iterations", type=int, default=10**4)
    p.add_argument("--product-only", action="store_true")
    _add_common(p, seed_required=True)
    p.set_defaults(func=_cmd_quantum_optimize)

    p = q.add_parser("lf-search", help="search for an lf-infeasible Born behavior")
    p.add_argument("--settings-a", type=int, default=3)
    p.add_argument("--settings-b", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**3)
    p.add_argument("--den-cap", type=int, default=10**4)
    p.add_argument("--behavior-out", help="write the found behavior (with protocol object)")
    _add_common(p, seed_required=True)
    p.set_defaults(func=_cmd_quantum_lf_search)

    d = sub.add_parser("dup", help="duplication credence calculus").add_subparsers(
        dest="subcommand", required=True
    )
    p = d.add_parser("credence", help="single-lab outcome credence under a rule")
    p.add_argument("--rule", choices=("elga", "reflection", "custom"), default="elga")
    p.add_argument("--custom-weights", help="wH,wT as rationals, for --rule custom")
    p.add_argument("--role", choices=("duplicated", "fixed"), default="duplicated")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--q", default="1/2")
    _add_common(p)
    p.set_defaults(func=_cmd_dup_credence)

    p = d.add_parser("binomial", help="credence summed over the Heads-count distribution")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--q", default="1/2")
    _add_common(p)
    p.set_defaults(func=_cmd_dup_binomial)

    p = d.add_parser("simulate", help="Monte Carlo betting simulation")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--q", default="1/2")
    p.add_argument("--eps", default="1/100")
    p.add_argument("--price", default=None, help="default 2/3 - eps")
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--summary-out", help="summary CSV path")
    p.add_argument("--detail-out", help="per-(run,role,lab) CSV path (large)")
    _add_common(p, seed_required=True)
    p.set_defaults(func=_cmd_dup_simulate)

    p = d.add_parser("cp-check", help="paired-credence consistency at N=1")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--q", default="1/2")
    p.add_argument("--rule-f", choices=("elga", "reflection"), default="elga")
    p.add_argument("--rule-w", choices=("elga", "reflection"), default="elga")
    _add_common(p)
    p.set_defaults(func=_cmd_dup_cp_check)

    ind = sub.add_parser("induct", help="toy algorithmic-probability estimates").add_subparsers(
        dest="subcommand", required=True
    )
    p = ind.add_parser("m", help="lower-bound mass of a bit string")
    p.add_argument("--x", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--steps", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=_cmd_induct_m)

    p = ind.add_parser("cond", help="conditional mass M(y|x)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--steps", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=_cmd_induct_cond)

    p = ind.add_parser("bb", help="ordinary-vs-thermal continuation credence")
    p.add_argument("--x", required=True)
    p.add_argument("--y-oo", required=True)
    p.add_argument("--y-bb", default=None, help="explicit thermal continuation bits")
    p.add_argument("--y-bb-seed", type=int, default=0)
    p.add_argument("--y-bb-len", type=int, default=8)
    p.add_argument("--n-oo", type=int, default=1)
    p.add_argument("--n-bb", type=int, default=1000)
    p.add_argument("--rule", choices=("indifference", "induction"), default="induction")
    p.add_argument("--max-len", type=int, default=14)
    p.add_argument("--steps", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=_cmd_induct_bb)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchNotFound as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except JointcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
