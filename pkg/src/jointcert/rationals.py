"""Exact rational plumbing: parsing, formatting, and float rationalization.

All probabilities in this package are `fractions.Fraction` values, stored in
lowest terms with positive denominator. Entry strings are either "p/q" or a
plain decimal such as "0.125"; decimals are exact by construction (p/10^k).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, RationalizeError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?\d+\.\d+$")


def parse_rational(text, max_denominator=None, rationalize=False):
    """Parse an entry string into a Fraction.

    Accepts "p/q", an integer string, or a terminating decimal. If
    `max_denominator` is set and the exact value needs a larger denominator,
    the entry is rejected with RationalizeError, unless `rationalize` is true,
    in which case the nearest rational under the cap (continued-fraction
    rounding, i.e. Fraction.limit_denominator) is substituted.
    """
    if not isinstance(text, str):
        raise ParseError(f"entry must be a string, got {type(text).__name__}: {text!r}")
    s = text.strip()
    if _RATIONAL_RE.match(s):
        try:
            value = Fraction(s)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in entry {text!r}") from None
    elif _DECIMAL_RE.match(s):
        value = Fraction(s)
    else:
        raise ParseError(f"cannot parse entry {text!r} as 'p/q' or decimal")
    if max_denominator is not None and value.denominator > max_denominator:
        if rationalize:
            return value.limit_denominator(max_denominator)
        raise RationalizeError(
            f"entry {text!r} needs denominator {value.denominator} > cap {max_denominator}"
        )
    return value


def format_rational(value):
    """Render a Fraction as 'p/q' in lowest terms (always with the slash)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def rationalize_float(x, max_denominator):
    """Nearest Fraction to a float under a denominator cap."""
    if max_denominator < 1:
        raise RationalizeError(f"denominator cap must be >= 1, got {max_denominator}")
    return Fraction(x).limit_denominator(max_denominator)


def rationalize_distribution(values, max_denominator):
    """Rationalize a probability vector exactly onto the simplex.

    Each entry is rounded under the cap; the last entry is then replaced by
    1 - sum(others) so the vector sums to exactly 1. The replacement must stay
    nonnegative, otherwise the cap is too coarse for this vector.
    """
    if not values:
        return []
    out = [rationalize_float(v, max_denominator) for v in values[:-1]]
    last = 1 - sum(out)
    if last < 0:
        raise RationalizeError(
            f"denominator cap {max_denominator} too coarse: residual entry {last} < 0"
        )
    out.append(last)
    return out
