"""Desk-scale lower bounds on monotone algorithmic probability, and the
counting-versus-compression contrast for thermal-observer credences.

M(x) is approximated from below by enumerating all programs up to a length
cap on the fixed toy machine (jointcert.machine) and summing 2^-|p| over
minimal programs whose output stream begins with x. Conditionals are the
ratio M(xy)/M(x). All masses are dyadic rationals; raising either cap never
decreases a mass, and no limit claims are made when runs were truncated by
the step budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import machine
from .errors import CapExceeded, JointcertError, ZeroBase

MAX_LEN_CAP = 24
STEP_CAP = 10**6
QUERY_BITS_CAP = 4096


@dataclass(frozen=True)
class ToyMachineConfig:
    max_len: int = 12  # program length cap L, in bits
    steps: int = 256  # step budget T per program
    machine_id: str = "pm-1"

    def __post_init__(self):
        if not (1 <= self.max_len <= MAX_LEN_CAP):
            raise CapExceeded(f"max_len must be in 1..{MAX_LEN_CAP}")
        if not (1 <= self.steps <= STEP_CAP):
            raise CapExceeded(f"steps must be in 1..{STEP_CAP}")


@dataclass(frozen=True)
class AlgProbEstimate:
    mass: Fraction  # lower bound on M(x)
    programs_counted: int
    truncated: bool
    config: ToyMachineConfig


def parse_bits(text):
    if isinstance(text, (tuple, list)):
        bits = tuple(int(b) for b in text)
    else:
        bits = tuple(int(ch) for ch in str(text).strip())
    if any(b not in (0, 1) for b in bits):
        raise JointcertError(f"bit string must be over 0/1, got {text!r}")
    return bits


def estimate_M(x, cfg=ToyMachineConfig()):
    """Prefix-free lower bound on the monotone algorithmic probability of x."""
    bits = parse_bits(x)
    if len(bits) > QUERY_BITS_CAP:
        raise CapExceeded(f"query length {len(bits)} exceeds cap {QUERY_BITS_CAP}")
    scaled, programs, truncated = machine.enumerate_mass(
        bits, cfg.max_len, cfg.steps, cfg.machine_id
    )
    return AlgProbEstimate(
        mass=Fraction(scaled, 1 << cfg.max_len),
        programs_counted=programs,
        truncated=truncated,
        config=cfg,
    )


def conditional_M(x, y, cfg=ToyMachineConfig()):
    """Estimate of M(y | x) = M(xy) / M(x) at this machine scale."""
    xb = parse_bits(x)
    yb = parse_bits(y)
    base = estimate_M(xb, cfg).mass
    if base == 0:
        raise ZeroBase(f"M({''.join(map(str, xb))}) = 0 at max_len={cfg.max_len}")
    return estimate_M(xb + yb, cfg).mass / base


INDIFFERENCE = "indifference"
INDUCTION = "induction"


def random_bits(length, seed):
    rng = random.Random(seed)
    return tuple(rng.randrange(2) for _ in range(length))


def bb_credence(history, y_ordinary, y_thermal, n_ordinary, n_thermal, rule, cfg=ToyMachineConfig()):
    """Credence over {ordinary, thermal} continuations given copy counts.

    Indifference weighs alternatives by copy counts alone, giving the
    "about M/N" answer. Induction weighs each continuation's conditional
    mass M(y|history) times its copy count, then renormalizes, so an
    incompressible thermal continuation is suppressed no matter how many
    copies would see it.
    """
    if n_ordinary < 0 or n_thermal < 0 or n_ordinary + n_thermal == 0:
        raise JointcertError("copy counts must be nonnegative and not both zero")
    if rule == INDIFFERENCE:
        total = Fraction(n_ordinary + n_thermal)
        return {
            "ordinary": Fraction(n_ordinary) / total,
            "thermal": Fraction(n_thermal) / total,
        }
    if rule != INDUCTION:
        raise JointcertError(f"unknown rule {rule!r}; use 'indifference' or 'induction'")
    hist = parse_bits(history)
    base = estimate_M(hist, cfg).mass
    if base == 0:
        raise ZeroBase(f"M(history) = 0 at max_len={cfg.max_len}")
    w_ordinary = estimate_M(hist + parse_bits(y_ordinary), cfg).mass / base * n_ordinary
    w_thermal = estimate_M(hist + parse_bits(y_thermal), cfg).mass / base * n_thermal
    total = w_ordinary + w_thermal
    if total == 0:
        raise ZeroBase("both continuations have zero conditional mass at this scale")
    return {"ordinary": w_ordinary / total, "thermal": w_thermal / total}
