# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the "pm-1" pattern machine.

Same node-for-node prefix DFS as jointcert._machine_py (the import-time
fallback); see that module and jointcert.machine for the semantics. The two
kernels are required to agree bit-for-bit and the test suite enforces it.
"""

from libc.stdlib cimport free, malloc


def enumerate_mass(x_bits, int max_len, long long steps):
    """(scaled_mass, programs_counted, truncated); mass = scaled / 2^max_len."""
    cdef int n = len(x_bits)
    if n == 0:
        return (1 << max_len), 1, False
    if max_len <= 0:
        return 0, 0, False

    cdef int *x = <int *> malloc(n * sizeof(int))
    if x == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        x[i] = x_bits[i]

    cdef int cap = 2 * max_len + 4
    cdef int *s_depth = <int *> malloc(cap * sizeof(int))
    cdef int *s_want = <int *> malloc(cap * sizeof(int))
    cdef int *s_matched = <int *> malloc(cap * sizeof(int))
    cdef unsigned int *s_buf = <unsigned int *> malloc(cap * sizeof(unsigned int))
    cdef int *s_buflen = <int *> malloc(cap * sizeof(int))
    cdef long long *s_used = <long long *> malloc(cap * sizeof(long long))
    if (s_depth == NULL or s_want == NULL or s_matched == NULL or s_buf == NULL
            or s_buflen == NULL or s_used == NULL):
        free(x); free(s_depth); free(s_want); free(s_matched)
        free(s_buf); free(s_buflen); free(s_used)
        raise MemoryError()

    cdef unsigned long long total = 0
    cdef long long programs = 0
    cdef bint truncated = False

    cdef int top = 0
    s_depth[0] = 0; s_want[0] = 0; s_matched[0] = 0
    s_buf[0] = 0; s_buflen[0] = 0; s_used[0] = 0
    top = 1

    cdef int depth, want, matched, buflen, d, m, cursor, bit
    cdef unsigned int buf
    cdef long long used, u
    cdef bint hit

    while top > 0:
        top -= 1
        depth = s_depth[top]; want = s_want[top]; matched = s_matched[top]
        buf = s_buf[top]; buflen = s_buflen[top]; used = s_used[top]
        if depth == max_len:
            continue
        for bit in range(2):
            d = depth + 1
            if want == 0:  # awaiting an opcode bit
                s_depth[top] = d
                s_want[top] = 1 if bit == 1 else 2
                s_matched[top] = matched
                s_buf[top] = buf; s_buflen[top] = buflen; s_used[top] = used
                top += 1
                continue
            if want == 1:  # awaiting a literal operand
                if used >= steps:
                    truncated = True
                    continue
                if bit != x[matched]:
                    continue
                m = matched + 1
                if m == n:
                    total += (<unsigned long long> 1) << (max_len - d)
                    programs += 1
                    continue
                s_depth[top] = d; s_want[top] = 0; s_matched[top] = m
                s_buf[top] = buf | ((<unsigned int> bit) << buflen)
                s_buflen[top] = buflen + 1
                s_used[top] = used + 1
                top += 1
                continue
            # awaiting a control bit
            if bit == 1:
                continue  # halt
            if buflen == 0:
                continue  # empty loop halts
            if used >= steps:
                truncated = True
                continue
            u = used + 1
            m = matched
            cursor = 0
            hit = False
            while u < steps:
                if ((buf >> cursor) & 1) != <unsigned int> x[m]:
                    break
                m += 1
                u += 1
                if m == n:
                    total += (<unsigned long long> 1) << (max_len - d)
                    programs += 1
                    hit = True
                    break
                cursor += 1
                if cursor == buflen:
                    cursor = 0
            else:
                if not hit:
                    truncated = True

    free(x); free(s_depth); free(s_want); free(s_matched)
    free(s_buf); free(s_buflen); free(s_used)
    return int(total), int(programs), bool(truncated)
