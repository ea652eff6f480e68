"""Exact arithmetic kernel shared by every other module.

Four value families live here: 2x2 arbitrary-precision integer matrices,
real quadratic irrationals (p + q*sqrt(d))/r kept in a canonical form,
closed intervals with exact rational endpoints, and binary quadratic forms.
Everything is immutable and pure, so values can be shared freely between
threads.  No floating point is used anywhere a result is asserted exact;
floats exist only behind __float__ for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

Rational = Union[int, Fraction]


class RationalValueError(ValueError):
    """The requested quadratic irrational is actually rational."""


class SignChangeError(ArithmeticError):
    """A Moebius denominator vanishes inside the interval argument."""


def _frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _sieve(1000)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d, pulling out every square factor whose
    prime is below 1000 plus a full perfect-square remainder check.

    Complete squarefree extraction would need an integer factorization,
    which is hopeless for the discriminants of deep tree nodes; this
    bounded split is deterministic, so values produced by field arithmetic
    from a common discriminant always canonicalize identically.
    """
    if n <= 0:
        raise ValueError("need a positive integer")
    s, d = 1, n
    for p in _SMALL_PRIMES:
        if p * p > d:
            break
        while d % (p * p) == 0:
            d //= p * p
            s *= p
    t = isqrt(d)
    if t * t == d:
        s *= t
        d = 1
    return s, d


# ---------------------------------------------------------------------------
# 2x2 integer matrices


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix with arbitrary-precision integer entries."""

    a: int
    b: int
    c: int
    d: int

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def norm(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def is_symmetric(self) -> bool:
        return self.b == self.c

    def inverse(self) -> "Mat2":
        det = self.det
        if det == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return Mat2(-self.d, self.b, self.c, -self.a)
        raise ValueError("only unimodular matrices invert exactly over Z")

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def apply(self, x):
        return moebius_apply(self, x)

    def __repr__(self) -> str:
        return f"Mat2({self.a}, {self.b}; {self.c}, {self.d})"


def mat2_mul(x: Mat2, y: Mat2) -> Mat2:
    return x * y


# ---------------------------------------------------------------------------
# quadratic irrationals


def _sign(n) -> int:
    return (n > 0) - (n < 0)


def _sign_a_plus_b_sqrt(a: int, b: int, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for a non-square d, by integer squaring."""
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        raise RationalValueError("sqrt(%d) rational against %d/%d" % (d, a, b))
    if a > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


@dataclass(frozen=True, eq=False)
class QuadIrr:
    """Canonical real quadratic irrational (p + q*sqrt(d))/r.

    Invariants: r > 0, q != 0, d > 1 with square factors extracted (see
    squarefree_split), gcd(p, q, r) = 1.  Values over a common discriminant
    canonicalize to identical field tuples; equality additionally recognizes
    residual square-factor mismatches in d (factors beyond the trial bound)
    through the invariant (p/r, sign q, q^2 d / r^2), which is exact.
    """

    p: int
    q: int
    d: int
    r: int

    def __eq__(self, other):
        if isinstance(other, QuadIrr):
            return (
                self.p * other.r == other.p * self.r
                and (self.q > 0) == (other.q > 0)
                and self.q**2 * self.d * other.r**2
                == other.q**2 * other.d * self.r**2
            )
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((Fraction(self.p, self.r), self.q > 0,
                     Fraction(self.q * self.q * self.d, self.r * self.r)))

    @classmethod
    def make(cls, p: int, q: int, d: int, r: int) -> "QuadIrr":
        if r == 0:
            raise ValueError("zero denominator")
        if d <= 0:
            raise RationalValueError("discriminant must be positive")
        if q == 0:
            raise RationalValueError("q = 0 gives a rational value")
        s, d0 = squarefree_split(d)
        q *= s
        if d0 == 1:
            raise RationalValueError("sqrt(%d) is an integer" % d)
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(abs(p), abs(q)), r)
        return cls(p // g, q // g, d0, r // g)

    @classmethod
    def quadratic_root(cls, a: int, b: int, c: int, branch: int = 1) -> "QuadIrr":
        """Root (-b + branch*sqrt(b^2-4ac)) / (2a) of a*x^2 + b*x + c."""
        if a == 0:
            raise ValueError("not a quadratic")
        disc = b * b - 4 * a * c
        if disc <= 0:
            raise RationalValueError("no real irrational root")
        return cls.make(-b, branch, disc, 2 * a)

    @classmethod
    def from_rationals(cls, p: Rational, q: Rational, d: int) -> "QuadIrr":
        p, q = _frac(p), _frac(q)
        den = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
        return cls.make(
            p.numerator * (den // p.denominator),
            q.numerator * (den // q.denominator),
            d,
            den,
        )

    # -- structure ---------------------------------------------------------

    def conjugate(self) -> "QuadIrr":
        return QuadIrr(self.p, -self.q, self.d, self.r)

    @property
    def trace_rational(self) -> Fraction:
        return Fraction(2 * self.p, self.r)

    @property
    def norm_rational(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Primitive (A, B, C) with A > 0 and A*x^2 + B*x + C = 0 at x = self."""
        A = self.r * self.r
        B = -2 * self.p * self.r
        C = self.p * self.p - self.q * self.q * self.d
        g = gcd(gcd(A, abs(B)), abs(C))
        return A // g, B // g, C // g

    def height(self) -> int:
        return max(abs(k) for k in self.minimal_polynomial())

    # -- order and floor ----------------------------------------------------

    def __floor__(self) -> int:
        n = self.q * self.q * self.d
        f = isqrt(n)
        num = self.p + (f if self.q > 0 else -f - 1)
        return num // self.r

    def floor(self) -> int:
        return self.__floor__()

    def _cmp_rational(self, t: Rational) -> int:
        t = _frac(t)
        return _sign_a_plus_b_sqrt(
            self.p * t.denominator - t.numerator * self.r,
            self.q * t.denominator,
            self.d,
        )

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return self._cmp_rational(other)
        if not isinstance(other, QuadIrr):
            return NotImplemented
        if self == other:
            return 0
        a, b = self, other
        if a.d != b.d:
            rewritten = _common_field(a, b)
            if rewritten is None:
                return _cmp_by_refinement(a, b)
            a, b = rewritten
            if a == b:
                return 0
        return _sign_a_plus_b_sqrt(
            a.p * b.r - b.p * a.r, a.q * b.r - b.q * a.r, a.d
        )

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    # -- field arithmetic ----------------------------------------------------

    def _aligned(self, other):
        """Rewrite self/other over one discriminant; other as rational parts."""
        if isinstance(other, (int, Fraction)):
            return self, _frac(other), Fraction(0)
        if isinstance(other, QuadIrr):
            a, b = self, other
            if a.d != b.d:
                pair = _common_field(a, b)
                if pair is None:
                    raise ValueError("values live in different quadratic fields")
                a, b = pair
            return a, Fraction(b.p, b.r), Fraction(b.q, b.r)
        return None

    @staticmethod
    def _build(p: Fraction, q: Fraction, d: int):
        if q == 0:
            return p
        return QuadIrr.from_rationals(p, q, d)

    def _parts(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.p, self.r), Fraction(self.q, self.r)

    def __neg__(self):
        return QuadIrr(-self.p, -self.q, self.d, self.r)

    def __add__(self, other):
        al = self._aligned(other)
        if al is None:
            return NotImplemented
        x, op, oq = al
        p, q = x._parts()
        return self._build(p + op, q + oq, x.d)

    __radd__ = __add__

    def __sub__(self, other):
        al = self._aligned(other)
        if al is None:
            return NotImplemented
        x, op, oq = al
        p, q = x._parts()
        return self._build(p - op, q - oq, x.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        al = self._aligned(other)
        if al is None:
            return NotImplemented
        x, op, oq = al
        p, q = x._parts()
        return self._build(p * op + q * oq * x.d, p * oq + q * op, x.d)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadIrr":
        n = self.norm_rational
        p, q = self._parts()
        return QuadIrr.from_rationals(p / n, -q / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            p, q = self._parts()
            return self._build(p / other, q / other, self.d)
        if isinstance(other, QuadIrr):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- enclosure -----------------------------------------------------------

    def enclosure(self, max_width: Rational = Fraction(1, 2**48)) -> "RatInterval":
        """Closed rational interval of width <= max_width containing the value."""
        max_width = _frac(max_width)
        if max_width <= 0:
            raise ValueError("width must be positive")
        need = Fraction(abs(self.q), self.r) / max_width
        k = max(1, (need.numerator // need.denominator).bit_length() + 1)
        s = isqrt(self.d << (2 * k))
        scale = 1 << k
        lo_root, hi_root = Fraction(s, scale), Fraction(s + 1, scale)
        if self.q > 0:
            lo = (self.p + self.q * lo_root) / self.r
            hi = (self.p + self.q * hi_root) / self.r
        else:
            lo = (self.p + self.q * hi_root) / self.r
            hi = (self.p + self.q * lo_root) / self.r
        return RatInterval(lo, hi)

    def __float__(self) -> float:
        mid = self.enclosure(Fraction(1, 2**60)).midpoint
        return float(mid)

    def __repr__(self) -> str:
        return f"QuadIrr(({self.p} + {self.q}*sqrt({self.d}))/{self.r})"


def _common_field(a: QuadIrr, b: QuadIrr):
    """Rewrite a, b over one discriminant when their fields coincide.

    After canonicalization the fields agree exactly when d_a/gcd and
    d_b/gcd are both perfect squares (residual square factors carry only
    primes beyond the trial bound).
    """
    if a.d == b.d:
        return a, b
    g = gcd(a.d, b.d)
    e1, e2 = a.d // g, b.d // g
    s1, s2 = isqrt(e1), isqrt(e2)
    if s1 * s1 == e1 and s2 * s2 == e2:
        return (
            QuadIrr.make(a.p, a.q * s1, g, a.r),
            QuadIrr.make(b.p, b.q * s2, g, b.r),
        )
    return None


def _cmp_by_refinement(a: QuadIrr, b: QuadIrr, max_bits: int = 4096) -> int:
    width = Fraction(1, 2**16)
    while width >= Fraction(1, 2**max_bits):
        ia, ib = a.enclosure(width), b.enclosure(width)
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        width = width * width
    raise ArithmeticError("could not separate values across fields")


def quadirr_make(p: int, q: int, d: int, r: int) -> QuadIrr:
    return QuadIrr.make(p, q, d, r)


def quadirr_floor(x: QuadIrr) -> int:
    return x.floor()


def quadirr_height(x: QuadIrr) -> int:
    return x.height()


# ---------------------------------------------------------------------------
# rational intervals


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Operations return intervals containing the image of every point of the
    inputs; since all endpoint arithmetic is exact there is no rounding,
    only honest widening where a result is not a single point.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @staticmethod
    def point(x: Rational) -> "RatInterval":
        return RatInterval(_frac(x), _frac(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "RatInterval"):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return RatInterval(lo, hi) if lo <= hi else None

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __add__(self, other):
        if isinstance(other, RatInterval):
            return RatInterval(self.lo + other.lo, self.hi + other.hi)
        return RatInterval(self.lo + _frac(other), self.hi + _frac(other))

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, RatInterval):
            return RatInterval(self.lo - other.hi, self.hi - other.lo)
        return RatInterval(self.lo - _frac(other), self.hi - _frac(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, RatInterval):
            prods = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return RatInterval(min(prods), max(prods))
        other = _frac(other)
        if other >= 0:
            return RatInterval(self.lo * other, self.hi * other)
        return RatInterval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __abs__(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"RatInterval[{self.lo}, {self.hi}]"


# ---------------------------------------------------------------------------
# Moebius action


def moebius_apply(g: Mat2, x):
    """Image of x under T -> (a T + b)/(c T + d).

    QuadIrr arguments come back exact, rationals come back as Fractions and
    intervals come back as certified enclosures.  The denominator must keep
    one sign on an interval argument, otherwise SignChangeError.
    """
    if g.det == 0:
        raise ValueError("singular matrix")
    if isinstance(x, (int, Fraction)):
        den = g.c * _frac(x) + g.d
        if den == 0:
            raise ZeroDivisionError("pole of the transformation")
        return (g.a * _frac(x) + g.b) / den
    if isinstance(x, QuadIrr):
        num = x * g.a + g.b if g.a else Fraction(g.b)
        den = x * g.c + g.d if g.c else Fraction(g.d)
        if isinstance(den, Fraction):
            return num / den
        if isinstance(num, Fraction):
            return num * den.reciprocal()
        return num / den
    if isinstance(x, RatInterval):
        dlo = g.c * x.lo + g.d
        dhi = g.c * x.hi + g.d
        if dlo == 0 or dhi == 0 or (dlo > 0) != (dhi > 0):
            raise SignChangeError("denominator changes sign on the interval")
        ilo = (g.a * x.lo + g.b) / dlo
        ihi = (g.a * x.hi + g.b) / dhi
        return RatInterval(min(ilo, ihi), max(ilo, ihi))
    raise TypeError(f"cannot apply Moebius map to {type(x).__name__}")


# ---------------------------------------------------------------------------
# binary quadratic forms


class ZeroFormError(ValueError):
    pass


@dataclass(frozen=True)
class BinQuadForm:
    """Form a*T^2 + b*T*U + c*U^2 with exact (integer or rational) coefficients."""

    a: Rational
    b: Rational
    c: Rational

    @property
    def disc(self) -> Rational:
        return self.b * self.b - 4 * self.a * self.c

    def is_indefinite(self) -> bool:
        return self.disc > 0

    def is_integral(self) -> bool:
        return all(isinstance(k, int) for k in (self.a, self.b, self.c))

    def content(self) -> int:
        if not self.is_integral():
            raise TypeError("content is defined for integer forms")
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise ZeroFormError("zero form")
        return gcd(gcd(abs(self.a), abs(self.b)), abs(self.c))

    def primitive(self) -> "BinQuadForm":
        g = self.content()
        return BinQuadForm(self.a // g, self.b // g, self.c // g)

    def evaluate(self, t: Rational, u: Rational) -> Rational:
        return self.a * t * t + self.b * t * u + self.c * u * u

    def roots(self) -> tuple[QuadIrr, QuadIrr]:
        """Roots of a*T^2 + b*T + c, the (+ branch, - branch) pair."""
        return (
            QuadIrr.quadratic_root(self.a, self.b, self.c, 1),
            QuadIrr.quadratic_root(self.a, self.b, self.c, -1),
        )

    def __repr__(self) -> str:
        return f"BinQuadForm({self.a}*T^2 + {self.b}*T*U + {self.c}*U^2)"


# ---------------------------------------------------------------------------
# certified elementary functions (used by the diagnostics layer)


def sqrt_interval(x: Rational, prec_bits: int = 48) -> RatInterval:
    """Enclosure of sqrt(x) for rational x >= 0."""
    x = _frac(x)
    if x < 0:
        raise ValueError("negative radicand")
    scale = 1 << prec_bits
    n = x.numerator * x.denominator * scale * scale
    s = isqrt(n)
    den = x.denominator * scale
    return RatInterval(Fraction(s, den), Fraction(s + 1, den))


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def log2_interval(x, prec_bits: int = 48) -> RatInterval:
    """Enclosure of log2(x) for a positive rational or interval."""
    if isinstance(x, RatInterval):
        return RatInterval(
            log2_interval(x.lo, prec_bits).lo, log2_interval(x.hi, prec_bits).hi
        )
    x = _frac(x)
    if x <= 0:
        raise ValueError("log of a non-positive value")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** e
    if m >= 2:
        m /= 2
        e += 1
    elif m < 1:
        m *= 2
        e -= 1
    work = prec_bits + 8
    lo = hi = m
    f = Fraction(0)
    for j in range(1, prec_bits + 1):
        lo = _round_down(lo * lo, work)
        hi = _round_up(hi * hi, work)
        if hi < 2:
            continue
        if lo >= 2:
            f += Fraction(1, 1 << j)
            lo /= 2
            hi /= 2
            continue
        # the true mantissa straddles 2: stop with the coarse remainder bound
        return RatInterval(e + f, e + f + Fraction(2, 1 << j))
    return RatInterval(e + f, e + f + Fraction(2, 1 << prec_bits))


@lru_cache(maxsize=8)
def _pow2_roots(prec_bits: int) -> list[RatInterval]:
    roots = [RatInterval(Fraction(2), Fraction(2))]
    for _ in range(prec_bits):
        prev = roots[-1]
        lo = sqrt_interval(prev.lo, prec_bits + 16).lo
        hi = sqrt_interval(prev.hi, prec_bits + 16).hi
        roots.append(RatInterval(lo, hi))
    return roots


def pow2_interval(e, prec_bits: int = 32) -> RatInterval:
    """Enclosure of 2**e for a rational or interval exponent."""
    if isinstance(e, RatInterval):
        roots = _pow2_roots(prec_bits)
        return RatInterval(
            _pow2_point(e.lo, roots, prec_bits, lower=True).lo,
            _pow2_point(e.hi, roots, prec_bits, lower=False).hi,
        )
    roots = _pow2_roots(prec_bits)
    lo = _pow2_point(_frac(e), roots, prec_bits, lower=True).lo
    hi = _pow2_point(_frac(e), roots, prec_bits, lower=False).hi
    return RatInterval(lo, hi)


def _pow2_point(
    e: Fraction, roots: list[RatInterval], prec_bits: int, lower: bool
) -> RatInterval:
    n = e.numerator // e.denominator
    frac = e - n
    k = (frac.numerator << prec_bits) // frac.denominator
    if not lower:
        k += 1  # frac <= (k)/2^prec after the bump
    acc = RatInterval(Fraction(1), Fraction(1))
    for i in range(prec_bits):
        if (k >> i) & 1:
            acc = acc * roots[prec_bits - i]
    base = Fraction(2) ** n
    return acc * base


def pow_interval(base, exponent, prec_bits: int = 48) -> RatInterval:
    """Enclosure of base**exponent for positive base, arbitrary exponent."""
    if not isinstance(base, RatInterval):
        base = RatInterval.point(_frac(base))
    if not isinstance(exponent, RatInterval):
        exponent = RatInterval.point(_frac(exponent))
    if base.lo <= 0:
        raise ValueError("base must be positive")
    return pow2_interval(log2_interval(base, prec_bits) * exponent, prec_bits)


def golden_ratio_interval(prec_bits: int = 64) -> RatInterval:
    """Enclosure of (1 + sqrt(5))/2."""
    r = sqrt_interval(5, prec_bits)
    return RatInterval((1 + r.lo) / 2, (1 + r.hi) / 2)
