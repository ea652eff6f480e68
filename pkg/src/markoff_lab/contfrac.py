"""Exact continued fractions of quadratic irrationals.

Expansion runs the classical integer surd iteration x = (P + sqrt(N))/Q with
Q | N - P^2, detecting the period as the first repeated (P, Q) state; no
floating point is involved, so digits and periods are exact.  Convergents,
tail enclosures and the digit-shift matrices live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence

from .exactnum import Mat2, QuadIrr, RatInterval
from .words import phi


@dataclass(frozen=True)
class CFExpansion:
    """Eventually periodic expansion [a0; preperiod, (period) repeating]."""

    a0: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digits(self, n: int) -> tuple[int, ...]:
        """First n partial quotients after a0."""
        if n <= len(self.preperiod):
            return self.preperiod[:n]
        need = n - len(self.preperiod)
        reps = -(-need // len(self.period))
        return self.preperiod + (self.period * reps)[:need]

    def stream(self, n: int) -> tuple[int, ...]:
        """a0 followed by the first n-1 tail digits."""
        return (self.a0,) + self.digits(n - 1)


def _floor_surd(p: int, n: int, q: int, sqrt_n: int) -> int:
    """floor((p + sqrt(n))/q) for non-square n, by pure integer arithmetic."""
    if q > 0:
        return (p + sqrt_n) // q
    return (p + sqrt_n + 1) // q


def quad_cf_expand(x: QuadIrr) -> CFExpansion:
    """Exact expansion of a quadratic irrational with period detection.

    The detected period is primitive; callers comparing against a known
    periodic block should compare digit streams, since the block may be a
    power of the primitive period.
    """
    # normalize to (P + sqrt(N))/Q with positive coefficient on the root
    if x.q > 0:
        big_p, big_q, n = x.p, x.r, x.q * x.q * x.d
    else:
        big_p, big_q, n = -x.p, -x.r, x.q * x.q * x.d
    if (n - big_p * big_p) % big_q != 0:
        scale = abs(big_q)
        big_p *= scale
        n *= scale * scale
        big_q *= scale
    f = isqrt(n)

    a0 = _floor_surd(big_p, n, big_q, f)
    # shift to the tail 1/(x - a0) and iterate
    digits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    p = a0 * big_q - big_p
    q = (n - p * p) // big_q
    while (p, q) not in seen:
        seen[(p, q)] = len(digits)
        a = _floor_surd(p, n, q, f)
        digits.append(a)
        p = a * q - p
        q = (n - p * p) // q
    start = seen[(p, q)]
    return CFExpansion(a0, tuple(digits[:start]), tuple(digits[start:]))


def evaluate_cf(exp: CFExpansion) -> QuadIrr:
    """Reconstruct the exact value of an eventually periodic expansion."""
    if not exp.period:
        raise ValueError("need a nonempty period")
    g = phi(exp.period)
    # tail value y > 1 satisfies y = (a y + b)/(c y + d)
    y = QuadIrr.quadratic_root(g.c, g.d - g.a, -g.b, 1)
    v = y
    for a in reversed(exp.preperiod):
        v = a + v.reciprocal()
    return exp.a0 + v.reciprocal()


def is_reduced_quad(x: QuadIrr) -> bool:
    """0 < x < 1 with conjugate below -1 (purely periodic expansions)."""
    return 0 < x < 1 and x.conjugate() < -1


def convergents(digits: Sequence[int], a0: int = 0) -> list[Fraction]:
    """Convergents p_k/q_k of [a0; digits...], starting at a0/1."""
    if any(d < 1 for d in digits):
        raise ValueError("partial quotients past a0 must be >= 1")
    out = [Fraction(a0)]
    p_prev, q_prev, p, q = 1, 0, a0, 1
    for d in digits:
        p_prev, q_prev, p, q = p, q, d * p + p_prev, d * q + q_prev
        out.append(Fraction(p, q))
    return out


def _pq_pairs(digits: Sequence[int], a0: int) -> tuple[int, int, int, int]:
    p_prev, q_prev, p, q = 1, 0, a0, 1
    for d in digits:
        p_prev, q_prev, p, q = p, q, d * p + p_prev, d * q + q_prev
    return p_prev, q_prev, p, q


def prefix_interval(digits: Sequence[int], a0: int = 0) -> RatInterval:
    """Closed interval containing every real beginning [a0; digits, ...].

    Whatever the (>= 1) continuation, the value sits between the last
    convergent p/q and the mediant (p + p_prev)/(q + q_prev); the closed
    hull of those two endpoints is returned.
    """
    if not digits:
        raise ValueError("need at least one digit beyond a0")
    if any(d < 1 for d in digits):
        raise ValueError("partial quotients past a0 must be >= 1")
    p_prev, q_prev, p, q = _pq_pairs(digits, a0)
    end1 = Fraction(p, q)
    end2 = Fraction(p + p_prev, q + q_prev)
    return RatInterval(min(end1, end2), max(end1, end2))


def serret_tail(
    digits: Sequence[int], a0: int, shift: int
) -> tuple[tuple[int, tuple[int, ...]], Mat2]:
    """Drop `shift` leading partial quotients, returning the tail and the
    unimodular matrix g with g . (tail value) = original value.

    shift 0 keeps the value itself (identity matrix); for s >= 1 the tail is
    [0; d_{s+1}, ...] and g chains one flip-and-shift matrix per digit.
    """
    digits = tuple(digits)
    if shift < 0 or shift > len(digits):
        raise ValueError("shift out of range")
    if shift == 0:
        return (a0, digits), Mat2.identity()
    g = Mat2(1, a0, 0, 1)
    for d in digits[:shift]:
        g = g * Mat2(0, 1, 1, d)
    return (0, digits[shift:]), g


def cf_str(exp: CFExpansion) -> str:
    """Serialization "[a0; p1, p2 | c1, c2]" with the period after the bar."""
    pre = ", ".join(str(d) for d in exp.preperiod)
    per = ", ".join(str(d) for d in exp.period)
    if pre:
        return f"[{exp.a0}; {pre} | {per}]"
    return f"[{exp.a0}; | {per}]"
