"""Minima of indefinite integer forms, the sup-of-two-tails functional on
doubly infinite words, and Lagrange constants.

mu_exact walks the classical reduction cycle of an indefinite form, whose
leading coefficients exhaust every small represented value; a dumb box
oracle (mu_bruteforce) stays available so the two routes can be played
against each other.  Word functionals come in two strengths: exact values on
purely periodic words, certified intervals on finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .contfrac import prefix_interval, quad_cf_expand
from .exactnum import BinQuadForm, QuadIrr, RatInterval, ZeroFormError
from .words import phi


class DegenerateFormError(ValueError):
    """Square discriminant: the form represents zero and mu vanishes."""


class OutOfWindowError(IndexError):
    pass


# ---------------------------------------------------------------------------
# minima of integer forms


def _is_reduced(a: int, b: int, c: int, d: int, sq: int) -> bool:
    # 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b, by squaring
    if b <= 0 or b * b >= d:
        return False
    ta = 2 * abs(a)
    if ta + b <= 0 or (ta + b) ** 2 <= d:  # sqrt(d) - b < 2|a|
        return False
    if ta - b >= 0 and (ta - b) ** 2 >= d:  # 2|a| < sqrt(d) + b
        return False
    return True


def _rho(a: int, b: int, c: int, d: int, sq: int) -> tuple[int, int, int]:
    """One reduction step (a,b,c) -> (c, b', (b'^2-d)/(4c))."""
    ac = abs(c)
    if ac > sq:
        v = (-b) % (2 * ac)
        if v > ac:
            v -= 2 * ac
        bp = v
    else:
        bp = sq - ((sq + b) % (2 * ac))
    cp = (bp * bp - d) // (4 * c)
    return c, bp, cp


def mu_exact(form: BinQuadForm) -> int:
    """Exact minimum of |F| over nonzero integer points.

    Equals content times the least |leading coefficient| over the reduction
    cycle of the primitive part; a brute-force box cannot certify an
    infimum, the cycle can.
    """
    if not form.is_integral():
        raise TypeError("mu_exact needs an integer form")
    content = form.content()  # raises ZeroFormError on the zero form
    prim = form.primitive()
    d = prim.disc
    if d <= 0:
        raise ValueError("form must be indefinite")
    sq = isqrt(d)
    if sq * sq == d:
        raise DegenerateFormError("square discriminant: minimum 0 is attained")
    a, b, c = prim.a, prim.b, prim.c
    if a == 0 or c == 0:
        raise DegenerateFormError("form visibly represents zero")
    # walk into the cycle
    guard = 0
    while not _is_reduced(a, b, c, d, sq):
        a, b, c = _rho(a, b, c, d, sq)
        guard += 1
        if guard > 10_000:
            raise AssertionError("reduction failed to terminate")
    first = (a, b, c)
    best = abs(a)
    while True:
        a, b, c = _rho(a, b, c, d, sq)
        best = min(best, abs(a))
        if (a, b, c) == first:
            return content * best


def mu_bruteforce(form: BinQuadForm, box: int) -> int:
    """min |F(x, y)| over 0 < max(|x|, |y|) <= box, the dumb way."""
    fa, fb, fc = form.a, form.b, form.c
    best = None
    for x in range(0, box + 1):
        for y in range(-box, box + 1):
            if x == 0 and y <= 0:
                continue  # (x,y) and (-x,-y) give the same value
            v = abs(fa * x * x + fb * x * y + fc * y * y)
            if v and (best is None or v < best):
                best = v
    return 0 if best is None else best


# ---------------------------------------------------------------------------
# the two-tail functional


@dataclass(frozen=True)
class WindowedBiWord:
    """Finite window of a doubly infinite word around a base junction.

    left holds a_{-1}, a_{-2}, ... reading outward; right holds
    a_0, a_1, ...; both tails beyond the window are unknown.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    @staticmethod
    def from_word(word: Sequence[int], junction: int) -> "WindowedBiWord":
        return WindowedBiWord(
            tuple(reversed(word[:junction])), tuple(word[junction:])
        )

    def rays(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(left ray, right ray) at the junction shifted i places right."""
        if i >= 0:
            left = tuple(reversed(self.right[:i])) + self.left
            right = self.right[i:]
        else:
            left = self.left[-i:]
            right = tuple(reversed(self.left[:-i])) + self.right
        if not left or not right:
            raise OutOfWindowError(f"position {i} has an empty side")
        return left, right


def lambda_at(w: WindowedBiWord, i: int, max_ray: int = 64) -> RatInterval:
    """Certified interval for [0; right tail] + [left tail] at position i.

    Rays are truncated to max_ray digits; the prefix enclosures already
    allow arbitrary continuations, so truncation never loses certification.
    """
    left, right = w.rays(i)
    left, right = left[:max_ray], right[:max_ray]
    right_part = prefix_interval(right, 0)
    if len(left) > 1:
        left_part = prefix_interval(left[1:], left[0])
    else:
        # [d; anything >= 1] lies between d and d+1
        left_part = RatInterval(Fraction(left[0]), Fraction(left[0] + 1))
    return right_part + left_part


def _fixed_point_gt1(word: Sequence[int]) -> QuadIrr:
    """The value y > 1 with purely periodic expansion [word; word; ...]."""
    g = phi(word)
    return QuadIrr.quadratic_root(g.c, g.d - g.a, -g.b, 1)


def L_periodic(period: Sequence[int]) -> tuple[QuadIrr, RatInterval]:
    """Exact sup of the two-tail sum over the |period| junctions of the
    periodization, plus a rational enclosure."""
    period = tuple(period)
    if not period:
        raise ValueError("period must be nonempty")
    best = None
    k = len(period)
    for j in range(k):
        rot = period[j:] + period[:j]
        right = _fixed_point_gt1(rot).reciprocal()
        left = _fixed_point_gt1(tuple(reversed(rot)))
        lam = right + left
        if best is None or lam > best:
            best = lam
    return best, best.enclosure(Fraction(1, 2**48))


def L_window_sup(
    w: WindowedBiWord, margin: int = 16, max_ray: int = 64
) -> tuple[Fraction, list[tuple[int, RatInterval]]]:
    """Certified lower bound for L of the underlying word plus per-position
    intervals, evaluated at every junction with margin digits on each side.

    A finite window can never certify L from above; the per-interval upper
    endpoints bound the individual junction values only.
    """
    lo_positions = -len(w.left) + margin
    hi_positions = len(w.right) - margin
    if hi_positions <= lo_positions:
        raise OutOfWindowError("window too small for the requested margin")
    rows = []
    best = None
    for i in range(lo_positions, hi_positions + 1):
        iv = lambda_at(w, i, max_ray)
        rows.append((i, iv))
        if best is None or iv.lo > best:
            best = iv.lo
    return best, rows


# ---------------------------------------------------------------------------
# Lagrange constants


def nu_quadratic(x: QuadIrr) -> QuadIrr:
    """Exact Lagrange constant of a quadratic irrational: the reciprocal of
    the periodic two-tail sup of its expansion."""
    exp = quad_cf_expand(x)
    top, _ = L_periodic(exp.period)
    return top.reciprocal()


def nu_sequence(
    digits: Sequence[int], tail: int = 40
) -> list[tuple[int, RatInterval]]:
    """Certified intervals for q_k * ||q_k xi|| along xi = [0; digits...].

    Uses q_k||q_k xi|| = 1 / (t_{k+1} + q_{k-1}/q_k): the left summand is the
    exact mirror ratio, the complete quotient t_{k+1} is enclosed from the
    next `tail` digits.
    """
    digits = tuple(digits)
    if len(digits) < 3:
        raise ValueError("need at least three digits")
    rows: list[tuple[int, RatInterval]] = []
    q_prev, q = 1, digits[0]
    for k in range(1, len(digits) - 1):
        mirror = Fraction(q_prev, q)
        t_digits = digits[k + 1 : k + 1 + tail]
        t_iv = prefix_interval(t_digits, digits[k])
        rows.append((k, (t_iv + mirror).reciprocal()))
        q_prev, q = q, digits[k] * q + q_prev
    return rows


def running_min_upper(rows: Sequence[tuple[int, RatInterval]]) -> list[Fraction]:
    out: list[Fraction] = []
    cur = None
    for _, iv in rows:
        cur = iv.hi if cur is None else min(cur, iv.hi)
        out.append(cur)
    return out
