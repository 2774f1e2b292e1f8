"""Scenarios, behavior tables, deterministic strategies, and their file format.

Conventions
-----------
* Settings are 1-indexed: x in {1..settings_a}, y in {1..settings_b}. When a
  friend sits on a wing, setting 1 of that wing is the "ask the friend"
  setting and is treated as distinguished by the membership tests.
* Outcomes are 0-indexed. For correlators, outcome index 0 maps to +1 and
  index 1 to -1.
* A Behavior stores, for every setting pair (x, y), an outcomes_a x outcomes_b
  matrix of exact rationals p(a, b | x, y) (rows = a, columns = b).

File format: a single JSON object with fields settings_a, settings_b,
outcomes_a, outcomes_b, friend_on_a, friend_on_b and `table`, whose keys are
"x,y" and whose values are row-major matrices of entry strings ("p/q" or a
terminating decimal). An optional `protocol` object (see jointcert.quantum)
may ride along. Unknown fields are rejected. Writers always emit "p/q" in
lowest terms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import MissingCell, ParseError, SizeLimit, WrongScenario
from .rationals import format_rational, parse_rational

DEFAULT_VERTEX_CAP = 10**6


@dataclass(frozen=True)
class ScenarioDescriptor:
    settings_a: int
    settings_b: int
    outcomes_a: int = 2
    outcomes_b: int = 2
    friend_on_a: bool = False
    friend_on_b: bool = False

    def __post_init__(self):
        if self.settings_a < 1 or self.settings_b < 1:
            raise WrongScenario("setting cardinalities must be >= 1")
        if self.outcomes_a < 2 or self.outcomes_b < 2:
            raise WrongScenario("outcome cardinalities must be >= 2")

    @property
    def setting_pairs(self):
        return [
            (x, y)
            for x in range(1, self.settings_a + 1)
            for y in range(1, self.settings_b + 1)
        ]

    def is_binary_2x2(self):
        return (self.settings_a, self.settings_b, self.outcomes_a, self.outcomes_b) == (2, 2, 2, 2)


@dataclass(frozen=True)
class Behavior:
    scenario: ScenarioDescriptor
    table: Mapping[tuple, tuple] = field(compare=True)

    def __post_init__(self):
        norm = {}
        oa, ob = self.scenario.outcomes_a, self.scenario.outcomes_b
        for key, matrix in dict(self.table).items():
            x, y = int(key[0]), int(key[1])
            if not (1 <= x <= self.scenario.settings_a and 1 <= y <= self.scenario.settings_b):
                raise WrongScenario(f"table key {key} outside scenario settings")
            if len(matrix) != oa or any(len(row) != ob for row in matrix):
                raise WrongScenario(f"table entry for {key} is not a {oa}x{ob} matrix")
            norm[(x, y)] = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        object.__setattr__(self, "table", norm)

    def entry(self, x, y, a, b):
        try:
            cell = self.table[(x, y)]
        except KeyError:
            raise MissingCell(f"no table entry for setting pair ({x},{y})") from None
        return cell[a][b]

    def cell(self, x, y):
        try:
            return self.table[(x, y)]
        except KeyError:
            raise MissingCell(f"no table entry for setting pair ({x},{y})") from None

    def alice_marginal(self, x, y, a):
        return sum(self.cell(x, y)[a], Fraction(0))

    def bob_marginal(self, x, y, b):
        cell = self.cell(x, y)
        return sum((cell[a][b] for a in range(self.scenario.outcomes_a)), Fraction(0))


@dataclass(frozen=True)
class DeterministicStrategy:
    """Outcome assignments per setting; the friend outcome is tied to setting 1."""

    alice_assignment: tuple
    bob_assignment: tuple
    friend_outcome_c: Optional[int] = None
    friend_outcome_d: Optional[int] = None

    def alice(self, x):
        return self.alice_assignment[x - 1]

    def bob(self, y):
        return self.bob_assignment[y - 1]


@dataclass(frozen=True)
class ValidationReport:
    normalization_ok: bool
    nonnegativity_ok: bool
    no_signalling_ok: bool
    failures: tuple

    @property
    def passed(self):
        return self.normalization_ok and self.nonnegativity_ok and self.no_signalling_ok


def validate_behavior(behavior):
    """Exact normalization, nonnegativity and per-side no-signalling checks.

    No-signalling means Alice's outcome marginal does not depend on y and
    Bob's does not depend on x; both are checked as exact rational equalities.
    Raises MissingCell if any setting pair lacks a table entry.
    """
    sc = behavior.scenario
    failures = []
    norm_ok = nonneg_ok = nosig_ok = True
    for (x, y) in sc.setting_pairs:
        cell = behavior.cell(x, y)
        total = Fraction(0)
        for a in range(sc.outcomes_a):
            for b in range(sc.outcomes_b):
                v = cell[a][b]
                total += v
                if v < 0:
                    nonneg_ok = False
                    failures.append(("nonnegativity", x, y, a, b))
        if total != 1:
            norm_ok = False
            failures.append(("normalization", x, y, None, None))
    for x in range(1, sc.settings_a + 1):
        for a in range(sc.outcomes_a):
            ref = behavior.alice_marginal(x, 1, a)
            for y in range(2, sc.settings_b + 1):
                if behavior.alice_marginal(x, y, a) != ref:
                    nosig_ok = False
                    failures.append(("no_signalling_alice", x, y, a, None))
    for y in range(1, sc.settings_b + 1):
        for b in range(sc.outcomes_b):
            ref = behavior.bob_marginal(1, y, b)
            for x in range(2, sc.settings_a + 1):
                if behavior.bob_marginal(x, y, b) != ref:
                    nosig_ok = False
                    failures.append(("no_signalling_bob", x, y, None, b))
    return ValidationReport(norm_ok, nonneg_ok, nosig_ok, tuple(failures))


def enumerate_deterministic_vertices(scenario, cap=DEFAULT_VERTEX_CAP):
    """All deterministic strategies consistent with the friend constraints.

    With a friend on a wing, that wing's setting-1 outcome *is* the friend's
    outcome, so the count is |A|^settings_a * |B|^settings_b regardless.
    """
    count = scenario.outcomes_a**scenario.settings_a * scenario.outcomes_b**scenario.settings_b
    if count > cap:
        raise SizeLimit(f"vertex count {count} exceeds cap {cap}")
    out = []
    for alice in itertools.product(range(scenario.outcomes_a), repeat=scenario.settings_a):
        for bob in itertools.product(range(scenario.outcomes_b), repeat=scenario.settings_b):
            out.append(
                DeterministicStrategy(
                    alice_assignment=alice,
                    bob_assignment=bob,
                    friend_outcome_c=alice[0] if scenario.friend_on_a else None,
                    friend_outcome_d=bob[0] if scenario.friend_on_b else None,
                )
            )
    return out


def strategy_behavior(strategy, scenario):
    """The deterministic 0/1 behavior table a strategy induces."""
    table = {}
    for (x, y) in scenario.setting_pairs:
        matrix = [[Fraction(0)] * scenario.outcomes_b for _ in range(scenario.outcomes_a)]
        matrix[strategy.alice(x)][strategy.bob(y)] = Fraction(1)
        table[(x, y)] = tuple(tuple(row) for row in matrix)
    return Behavior(scenario, table)


def mix_behaviors(weighted):
    """Exact convex mixture of behaviors over a shared scenario."""
    items = list(weighted)
    scenario = items[0][1].scenario
    table = {}
    for (x, y) in scenario.setting_pairs:
        matrix = [
            [
                sum((Fraction(w) * b.entry(x, y, a, bb) for w, b in items), Fraction(0))
                for bb in range(scenario.outcomes_b)
            ]
            for a in range(scenario.outcomes_a)
        ]
        table[(x, y)] = tuple(tuple(row) for row in matrix)
    return Behavior(scenario, table)


def uniform_behavior(scenario):
    p = Fraction(1, scenario.outcomes_a * scenario.outcomes_b)
    table = {
        key: tuple(tuple(p for _ in range(scenario.outcomes_b)) for _ in range(scenario.outcomes_a))
        for key in scenario.setting_pairs
    }
    return Behavior(scenario, table)


def pr_box(friend_on_a=False):
    """The maximal no-signalling violator of the CHSH functional.

    p(ab|xy) = 1/2 when a XOR b = (x-1)(y-1), else 0, on the binary 2x2
    scenario. Its CHSH value is 4.
    """
    scenario = ScenarioDescriptor(2, 2, 2, 2, friend_on_a=friend_on_a)
    half = Fraction(1, 2)
    table = {}
    for (x, y) in scenario.setting_pairs:
        matrix = [[Fraction(0)] * 2 for _ in range(2)]
        for a in range(2):
            for b in range(2):
                if (a ^ b) == (x - 1) * (y - 1):
                    matrix[a][b] = half
        table[(x, y)] = tuple(tuple(row) for row in matrix)
    return Behavior(scenario, table)


def correlator(behavior, x, y):
    """E(x,y) = sum_ab (-1)^a (-1)^b p(ab|xy), exact."""
    cell = behavior.cell(x, y)
    total = Fraction(0)
    for a in range(2):
        for b in range(2):
            sign = 1 if (a + b) % 2 == 0 else -1
            total += sign * cell[a][b]
    return total


def chsh_value(behavior):
    """E(1,1) + E(1,2) + E(2,1) - E(2,2) on a binary 2x2 scenario."""
    if not behavior.scenario.is_binary_2x2():
        raise WrongScenario("CHSH functional is defined for binary 2x2 scenarios only")
    return (
        correlator(behavior, 1, 1)
        + correlator(behavior, 1, 2)
        + correlator(behavior, 2, 1)
        - correlator(behavior, 2, 2)
    )


# --- serialization ---------------------------------------------------------

_SCENARIO_FIELDS = ("settings_a", "settings_b", "outcomes_a", "outcomes_b", "friend_on_a", "friend_on_b")
_KNOWN_FIELDS = set(_SCENARIO_FIELDS) | {"table", "protocol"}


def behavior_to_dict(behavior, protocol=None):
    sc = behavior.scenario
    doc = {name: getattr(sc, name) for name in _SCENARIO_FIELDS}
    doc["table"] = {
        f"{x},{y}": [[format_rational(v) for v in row] for row in behavior.cell(x, y)]
        for (x, y) in sc.setting_pairs
    }
    if protocol is not None:
        doc["protocol"] = protocol
    return doc


def behavior_from_dict(doc, max_denominator=None, rationalize=False):
    if not isinstance(doc, dict):
        raise ParseError("behavior file must contain a single JSON object")
    unknown = set(doc) - _KNOWN_FIELDS
    if unknown:
        raise ParseError(f"unknown fields rejected: {sorted(unknown)}")
    missing = [name for name in _SCENARIO_FIELDS + ("table",) if name not in doc]
    if missing:
        raise ParseError(f"missing fields: {missing}")
    try:
        scenario = ScenarioDescriptor(
            settings_a=int(doc["settings_a"]),
            settings_b=int(doc["settings_b"]),
            outcomes_a=int(doc["outcomes_a"]),
            outcomes_b=int(doc["outcomes_b"]),
            friend_on_a=bool(doc["friend_on_a"]),
            friend_on_b=bool(doc["friend_on_b"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad scenario field: {exc}") from None
    if not isinstance(doc["table"], dict):
        raise ParseError("field 'table' must be an object keyed by 'x,y'")
    table = {}
    for key, matrix in doc["table"].items():
        try:
            xs, ys = key.split(",")
            x, y = int(xs), int(ys)
        except (ValueError, AttributeError):
            raise ParseError(f"table key {key!r} is not of the form 'x,y'") from None
        if not isinstance(matrix, list):
            raise ParseError(f"table[{key!r}] must be a matrix (list of rows)")
        rows = []
        for i, row in enumerate(matrix):
            if not isinstance(row, list):
                raise ParseError(f"table[{key!r}] row {i} must be a list")
            try:
                rows.append(
                    tuple(parse_rational(v, max_denominator, rationalize) for v in row)
                )
            except ParseError as exc:
                raise ParseError(f"table[{key!r}] row {i}: {exc}") from None
        table[(x, y)] = tuple(rows)
    return Behavior(scenario, table)


def write_behavior(behavior, path, protocol=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(behavior_to_dict(behavior, protocol), fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_behavior(path, max_denominator=None, rationalize=False):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    return behavior_from_dict(doc, max_denominator, rationalize)
