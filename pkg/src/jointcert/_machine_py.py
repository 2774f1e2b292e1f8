"""Pure-Python kernel for the "pm-1" pattern machine (fallback twin).

Semantics (shared verbatim with the compiled kernel; see jointcert.machine
for the instruction encoding):

* The program tape is read once, left to right; requesting a bit past the end
  halts the machine.
* `1 b`  appends bit b to the pattern buffer and emits it        (1 step).
* `0 0`  replays the buffer cyclically forever; halts if empty   (1 step,
         then 1 step per emitted bit).
* `0 1`  halts.

Enumeration walks the tree of consumed-bit prefixes depth-first; a node
branches exactly when the machine requests the next tape bit. A program
qualifies for target x when its emitted stream first covers x; the consumed
prefix at that moment is the minimal program, contributing 2^-len. Subtrees
under a qualifying or dead prefix are pruned, which reproduces exactly the
flat enumerate-all-programs-and-keep-prefix-minimal sum.
"""

# parser micro-states: what kind of tape bit the machine is waiting for
_WANT_OP = 0
_WANT_LIT = 1
_WANT_CTL = 2


def enumerate_mass(x_bits, max_len, steps):
    """Sum of 2^(max_len - |p|) over minimal programs covering x_bits.

    Returns (scaled_mass, programs_counted, truncated); the true mass is
    scaled_mass / 2^max_len. `truncated` reports whether any still-consistent
    program hit the step budget.
    """
    n = len(x_bits)
    if n == 0:
        return (1 << max_len), 1, False

    total = 0
    programs = 0
    truncated = False

    # node: (depth, want, matched, buf, buflen, used)
    stack = [(0, _WANT_OP, 0, 0, 0, 0)]
    while stack:
        depth, want, matched, buf, buflen, used = stack.pop()
        if depth == max_len:
            continue  # the lone program here halts on the next request, unqualified
        for bit in (1, 0):
            d = depth + 1
            if want == _WANT_OP:
                stack.append((d, _WANT_LIT if bit else _WANT_CTL, matched, buf, buflen, used))
                continue
            if want == _WANT_LIT:
                if used >= steps:
                    truncated = True
                    continue
                if bit != x_bits[matched]:
                    continue  # mismatch: whole subtree dead
                m = matched + 1
                if m == n:
                    total += 1 << (max_len - d)
                    programs += 1
                    continue
                stack.append((d, _WANT_OP, m, buf | (bit << buflen), buflen + 1, used + 1))
                continue
            # _WANT_CTL
            if bit == 1:
                continue  # explicit halt
            if buflen == 0:
                continue  # looping an empty buffer halts
            if used >= steps:
                truncated = True
                continue
            u = used + 1
            m = matched
            cursor = 0
            hit = False
            while u < steps:
                if ((buf >> cursor) & 1) != x_bits[m]:
                    break  # mismatch inside the loop
                m += 1
                u += 1
                if m == n:
                    total += 1 << (max_len - d)
                    programs += 1
                    hit = True
                    break
                cursor += 1
                if cursor == buflen:
                    cursor = 0
            else:
                truncated = True  # budget ran out while still consistent
            if hit:
                continue
    return total, programs, truncated
