"""The fixed toy monotone machine ("pm-1") and its kernel selection.

pm-1 is a minimal pattern machine with a read-once binary program tape and a
write-only output stream (no erasure), chosen so that all induction-side
numbers in this package are relative to one small, versioned machine rather
than to an unspecified universal one.

Instruction encoding (bits consumed left to right):

    1 b   append bit b to the pattern buffer and emit it          [1 step]
    0 0   replay the buffer cyclically forever (halt if empty)    [1 step,
          then 1 step per replayed bit]
    0 1   halt
    (running off the end of the tape also halts)

So a string with period p costs about 2p + 2 program bits and then streams
forever, while an incompressible string costs 2 bits per output bit. The
machine is deliberately not universal.

Program mass: every program of length L is weighted 2^-L; enumeration counts
a program only if none of its proper prefixes already produced the target
(the counted set is prefix-free, so masses are dyadic and bounded by 1).

Two kernels implement the same enumeration: a Cython extension and a pure
Python twin. The compiled one is preferred at import; set JOINTCERT_PURE=1
to force the fallback. Both must agree exactly (tested).
"""

from __future__ import annotations

import os

from . import _machine_py

if os.environ.get("JOINTCERT_PURE"):
    _kernel = _machine_py
    BACKEND = "python"
else:
    try:
        from . import _machine_cy as _kernel

        BACKEND = "cython"
    except ImportError:
        _kernel = _machine_py
        BACKEND = "python"

MACHINE_IDS = ("pm-1",)


def enumerate_mass(x_bits, max_len, steps, machine_id="pm-1"):
    """Raw kernel call: (scaled_mass, programs_counted, truncated)."""
    if machine_id not in MACHINE_IDS:
        raise ValueError(f"unknown machine id {machine_id!r}; known: {MACHINE_IDS}")
    return _kernel.enumerate_mass(tuple(x_bits), max_len, steps)
