"""Statevector generation of friend-protocol behaviors, and violation searches.

The register is three qubits: Bob's qubit (most significant), the system
qubit, and the friend's one-qubit memory (least significant), dimension 8.
The friend's measurement is the reversible basis-copy U = CNOT(system ->
memory) with the memory prepared in the ready state |0>. Alice's setting 1
reads the memory in the computational basis (so her outcome equals the
friend's record); settings x >= 2 undo the copy with U-dagger and measure the
system qubit at angle theta_x in the ZX plane. Bob measures at angle theta_y.

Outcome convention: projector onto the +1 eigenvector of
cos(theta) Z + sin(theta) X is outcome index 0.

Entangled family used throughout: |psi(phi)> = cos(phi)|0>_B|1>_S
- sin(phi)|1>_B|0>_S (times |0>_mem), which has correlators
E = -(cos t_S cos t_B + sin(2 phi) sin t_S sin t_B); phi = pi/4 is the
singlet, phi = 0 a product state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .behaviors import Behavior, ScenarioDescriptor
from .errors import NonUnitary, ParseError, SearchNotFound, UnnormalizedState
from .membership import check_lf
from .rationals import rationalize_distribution

import numpy as np

ATOL_UNITARY = 1e-12
ATOL_NORM = 1e-12
DEFAULT_DEN_CAP = 10**4

# canonical maximal-CHSH geometry with the ask-the-friend column in the
# theta = 0 role: thetas (pi/2) for Alice's direct setting, -+3pi/4 for Bob
CANONICAL_ALICE = (math.pi / 2, math.pi / 4)
CANONICAL_BOB = (-3 * math.pi / 4, 3 * math.pi / 4, 0.0)


def _kron3(bob, system, memory):
    return np.kron(bob, np.kron(system, memory))


_I2 = np.eye(2, dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def qubit_projectors(theta):
    """Rank-1 projectors of cos(theta) Z + sin(theta) X; index 0 <-> +1."""
    obs = math.cos(theta) * _Z + math.sin(theta) * _X
    plus = (_I2 + obs) / 2
    minus = (_I2 - obs) / 2
    return plus, minus


@dataclass(frozen=True)
class MeasurementSetting:
    theta: float
    party: str  # "alice-direct" | "bob" | "charlie"

    def projectors(self):
        return qubit_projectors(self.theta)


def copy_unitary():
    """CNOT with the system qubit as control and the memory as target."""
    u = np.zeros((8, 8), dtype=complex)
    for bob in range(2):
        for sys_ in range(2):
            for mem in range(2):
                src = 4 * bob + 2 * sys_ + mem
                dst = 4 * bob + 2 * sys_ + (mem ^ sys_)
                u[dst, src] = 1.0
    return u


def entangled_state(phi):
    """cos(phi)|0_B 1_S> - sin(phi)|1_B 0_S>, memory ready in |0>."""
    psi = np.zeros(8, dtype=complex)
    psi[0b010] = math.cos(phi)
    psi[0b100] = -math.sin(phi)
    return psi


@dataclass(frozen=True, eq=False)
class EwfsProtocol:
    state: np.ndarray
    alice_thetas: tuple  # angles for settings x = 2, 3, ...
    bob_thetas: tuple  # angles for settings y = 1, 2, ...
    unitary: np.ndarray = field(default_factory=copy_unitary)
    state_phi: Optional[float] = None  # set when built from the entangled family

    @property
    def scenario(self):
        return ScenarioDescriptor(
            settings_a=1 + len(self.alice_thetas),
            settings_b=len(self.bob_thetas),
            friend_on_a=True,
        )

    def validate(self):
        if abs(np.linalg.norm(self.state) - 1.0) > ATOL_NORM:
            raise UnnormalizedState(f"|psi| = {np.linalg.norm(self.state)!r}")
        dev = np.abs(self.unitary.conj().T @ self.unitary - np.eye(8)).max()
        if dev > ATOL_UNITARY:
            raise NonUnitary(f"max |U+U - I| = {dev!r}")


def default_protocol(phi=math.pi / 4, alice_thetas=CANONICAL_ALICE, bob_thetas=CANONICAL_BOB[:2]):
    return EwfsProtocol(
        state=entangled_state(phi),
        alice_thetas=tuple(alice_thetas),
        bob_thetas=tuple(bob_thetas),
        state_phi=phi,
    )


def reverse_check(protocol, atol=ATOL_UNITARY):
    """U is an exact reversal: U+U = I entrywise and U+U returns the state."""
    u = protocol.unitary
    if np.abs(u.conj().T @ u - np.eye(8)).max() > atol:
        return False
    roundtrip = u.conj().T @ (u @ protocol.state)
    return bool(np.abs(roundtrip - protocol.state).max() <= atol)


@dataclass(frozen=True, eq=False)
class BornBehavior:
    floats: dict  # (x, y) -> 2x2 tuple of floats
    behavior: Behavior  # rationalized for the feasibility engine
    protocol: EwfsProtocol
    denominator_cap: int


def _joint_probs(state, proj_pairs):
    """Probabilities for a list of (qubit_index, projector pair) measurements."""
    out = {}
    for outcomes in ((0, 0), (0, 1), (1, 0), (1, 1)):
        vec = state
        for (qubit, pair), o in zip(proj_pairs, outcomes):
            ops = [_I2, _I2, _I2]
            ops[qubit] = pair[o]
            vec = _kron3(*ops) @ vec
        out[outcomes] = float(np.vdot(vec, vec).real)
    return out


def born_behavior(protocol, den_cap=DEFAULT_DEN_CAP):
    """The behavior this protocol generates under the Born rule.

    Floats are exact to machine precision; the rational table rounds each cell
    under the denominator cap and rebalances the last entry so every setting
    pair sums to exactly 1.
    """
    protocol.validate()
    sc = protocol.scenario
    z_pair = qubit_projectors(0.0)
    floats = {}
    table = {}
    after_u = protocol.unitary @ protocol.state
    for x in range(1, sc.settings_a + 1):
        if x == 1:
            state = after_u
            alice_pair = (2, z_pair)  # read the memory record
        else:
            state = protocol.unitary.conj().T @ after_u
            alice_pair = (1, qubit_projectors(protocol.alice_thetas[x - 2]))
        for y in range(1, sc.settings_b + 1):
            bob_pair = (0, qubit_projectors(protocol.bob_thetas[y - 1]))
            probs = _joint_probs(state, (alice_pair, bob_pair))
            flat = [probs[(a, b)] for a in range(2) for b in range(2)]
            floats[(x, y)] = ((probs[(0, 0)], probs[(0, 1)]), (probs[(1, 0)], probs[(1, 1)]))
            rational = rationalize_distribution(flat, den_cap)
            table[(x, y)] = (
                (rational[0], rational[1]),
                (rational[2], rational[3]),
            )
    behavior = Behavior(sc, table)
    return BornBehavior(floats=floats, behavior=behavior, protocol=protocol, denominator_cap=den_cap)


def float_correlator(cell):
    return cell[0][0] - cell[0][1] - cell[1][0] + cell[1][1]


def chsh_float(floats, xs=(1, 2), ys=(1, 2)):
    """CHSH on a float table over the chosen setting pairs."""
    x1, x2 = xs
    y1, y2 = ys
    return (
        float_correlator(floats[(x1, y1)])
        + float_correlator(floats[(x1, y2)])
        + float_correlator(floats[(x2, y1)])
        - float_correlator(floats[(x2, y2)])
    )


def _analytic_correlator(phi, theta_s, theta_b):
    return -(
        math.cos(theta_s) * math.cos(theta_b)
        + math.sin(2 * phi) * math.sin(theta_s) * math.sin(theta_b)
    )


def _analytic_chsh(phi, t_a1, t_a2, t_b1, t_b2):
    return (
        _analytic_correlator(phi, t_a1, t_b1)
        + _analytic_correlator(phi, t_a1, t_b2)
        + _analytic_correlator(phi, t_a2, t_b1)
        - _analytic_correlator(phi, t_a2, t_b2)
    )


@dataclass(frozen=True)
class ChshOptimum:
    phi: float
    alice_thetas: tuple
    bob_thetas: tuple
    value: float
    iterations: int
    seed: int
    product_only: bool


def chsh_optimize(seed=0, iterations=10_000, product_only=False):
    """Seeded multistart coordinate ascent on (phi, two Alice and two Bob angles).

    Deterministic for a fixed seed. With product_only the state is pinned to
    phi = 0, whose analytic maximum is 2.
    """
    rng = random.Random(seed)
    starts = max(1, iterations // 2000)
    sweeps = max(8, iterations // (starts * 5))
    best = None
    for s in range(starts):
        if s == 0:
            params = [math.pi / 4, 0.0, math.pi / 2, -3 * math.pi / 4, 3 * math.pi / 4]
        else:
            params = [rng.uniform(0, math.pi / 2)] + [
                rng.uniform(-math.pi, math.pi) for _ in range(4)
            ]
        if product_only:
            params[0] = 0.0

        def value(p):
            return _analytic_chsh(*p)

        cur = value(params)
        step = 0.5
        for _ in range(sweeps):
            improved = False
            lo = 1 if product_only else 0
            for i in range(lo, 5):
                for delta in (step, -step):
                    trial = list(params)
                    trial[i] += delta
                    tv = value(trial)
                    if tv > cur + 1e-15:
                        params, cur = trial, tv
                        improved = True
            if not improved:
                step *= 0.5
                if step < 1e-9:
                    break
        if best is None or cur > best[0]:
            best = (cur, list(params))
    value_, params = best
    return ChshOptimum(
        phi=params[0],
        alice_thetas=(params[1], params[2]),
        bob_thetas=(params[3], params[4]),
        value=value_,
        iterations=iterations,
        seed=seed,
        product_only=product_only,
    )


@dataclass(frozen=True)
class LfSearchResult:
    protocol: EwfsProtocol
    born: BornBehavior
    certificate: object
    trace: tuple
    candidates_tried: int
    seed: int


def _friend_chsh_prescreen(floats, settings_a, settings_b):
    """Largest CHSH-style combination pairing the ask column with a direct one.

    The feasible decomposition forces every such combination to at most 2, so
    a float value comfortably above 2 flags a candidate worth the exact LP.
    """
    best = 0.0
    for x in range(2, settings_a + 1):
        for y1 in range(1, settings_b + 1):
            for y2 in range(y1 + 1, settings_b + 1):
                e = (
                    float_correlator(floats[(1, y1)]),
                    float_correlator(floats[(1, y2)]),
                    float_correlator(floats[(x, y1)]),
                    float_correlator(floats[(x, y2)]),
                )
                for signs in ((1, 1, 1, -1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1)):
                    s = abs(sum(si * ei for si, ei in zip(signs, e)))
                    best = max(best, s)
    return best


def lf_violation_search(settings_a=3, settings_b=3, seed=0, budget=1000, den_cap=DEFAULT_DEN_CAP):
    """Search protocol space for a behavior whose lf certificate is infeasible.

    Candidate 0 is the analytically optimal geometry; the rest are seeded
    random draws. Candidates are prescreened on the float table (a necessary
    CHSH-type condition) before paying for the exact LP; the returned
    certificate is always the exact LP verdict on the rationalized table.

    Raises SearchNotFound if the budget is exhausted; that outcome is a
    report about the search, not a refutation.
    """
    if settings_a < 2 or settings_b < 2:
        raise ParseError("need at least the ask setting plus one direct setting")
    rng = random.Random(seed)
    trace = []
    for k in range(budget):
        if k == 0:
            phi = math.pi / 4
            alice = tuple(CANONICAL_ALICE[: settings_a - 1])
            bob = tuple(CANONICAL_BOB[:settings_b])
        else:
            phi = rng.uniform(0, math.pi / 2)
            alice = tuple(rng.uniform(-math.pi, math.pi) for _ in range(settings_a - 1))
            bob = tuple(rng.uniform(-math.pi, math.pi) for _ in range(settings_b))
        protocol = EwfsProtocol(
            state=entangled_state(phi),
            alice_thetas=alice,
            bob_thetas=bob,
            state_phi=phi,
        )
        born = born_behavior(protocol, den_cap)
        screen = _friend_chsh_prescreen(born.floats, settings_a, settings_b)
        if screen <= 2.0 + 1e-3:
            trace.append((k, round(screen, 6), "skipped"))
            continue
        cert = check_lf(born.behavior)
        trace.append((k, round(screen, 6), "feasible" if cert.feasible else "infeasible"))
        if not cert.feasible:
            return LfSearchResult(
                protocol=protocol,
                born=born,
                certificate=cert,
                trace=tuple(trace),
                candidates_tried=k + 1,
                seed=seed,
            )
    raise SearchNotFound(f"no lf violation found within budget {budget} (seed {seed})")


# --- protocol serialization ---------------------------------------------------


def protocol_to_dict(protocol):
    return {
        "state_phi": repr(protocol.state_phi) if protocol.state_phi is not None else None,
        "alice_thetas": [repr(t) for t in protocol.alice_thetas],
        "bob_thetas": [repr(t) for t in protocol.bob_thetas],
        "unitary": "copy",
    }


def protocol_from_dict(doc):
    try:
        if doc.get("unitary", "copy") != "copy":
            raise ParseError("only the basis-copy unitary is serializable")
        phi = float(doc["state_phi"])
        return EwfsProtocol(
            state=entangled_state(phi),
            alice_thetas=tuple(float(t) for t in doc["alice_thetas"]),
            bob_thetas=tuple(float(t) for t in doc["bob_thetas"]),
            state_phi=phi,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad protocol object: {exc}") from None
