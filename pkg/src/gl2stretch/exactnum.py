"""Exact and certified-precision numerics.

Three value types live here:

* :class:`QuadSurd` -- an exact number ``(p + q*sqrt(D)) / r``.
* :class:`IntPoly` -- a univariate polynomial with integer coefficients.
* :class:`RealInterval` -- a closed interval with exact rational endpoints
  (dyadic after every rounding step) that always encloses the quantity it
  stands for.

Comparisons that cannot be settled exactly fall back to interval refinement,
doubling the working precision from ``DEFAULT_BITS`` up to ``MAX_BITS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    IncomparableFields,
    NegativeRadicand,
    NoSignChange,
    PrecisionExhausted,
)

DEFAULT_BITS = 128
MAX_BITS = 4096

_TRIAL_LIMIT = 10**6

Rational = Union[int, Fraction]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# squarefree extraction
# ---------------------------------------------------------------------------


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree."""
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n == 0:
        return 0, 0
    k, m, rest = 1, 1, n
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        if p * p > rest:
            m *= rest
        else:
            # Cofactor survived trial division; hand it to a real factorizer.
            from sympy import factorint

            for prime, e in factorint(rest).items():
                k *= prime ** (e // 2)
                if e % 2:
                    m *= prime
    return k, m


# ---------------------------------------------------------------------------
# quadratic surds
# ---------------------------------------------------------------------------


def _sign_surd(p: int, q: int, D: int) -> int:
    """Exact sign of ``p + q*sqrt(D)`` for integers."""
    sq = _sign(q) if D else 0
    sp = _sign(p)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp * _sign(p * p - q * q * D)


@dataclass(frozen=True, eq=False)
class QuadSurd:
    """The exact real number ``(p + q*sqrt(D)) / r``.

    Build instances with :func:`surd_normalize` (or the helpers below); the
    raw constructor does not normalize.
    """

    p: int
    q: int
    D: int
    r: int

    # -- construction -----------------------------------------------------

    @staticmethod
    def rational(x: Rational) -> "QuadSurd":
        x = Fraction(x)
        return surd_normalize(x.numerator, 0, 0, x.denominator)

    @staticmethod
    def sqrt(n: int) -> "QuadSurd":
        return surd_normalize(0, 1, n, 1)

    # -- queries ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def same_field(self, other: "QuadSurd") -> bool:
        return self.D == other.D or self.q == 0 or other.q == 0

    def _field(self, other: "QuadSurd") -> int:
        if not self.same_field(other):
            raise IncomparableFields(f"sqrt({self.D}) vs sqrt({other.D})")
        return self.D or other.D

    def sign(self) -> int:
        return _sign_surd(self.p, self.q, self.D)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadSurd.rational(other)
        if not isinstance(other, QuadSurd):
            return NotImplemented
        return (self.p, self.q, self.D, self.r) == (other.p, other.q, other.D, other.r)

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.D, self.r))

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.q, self.D, self.r)

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x)``."""
        return Fraction(self.p * self.p - self.q * self.q * self.D, self.r * self.r)

    def floor(self) -> int:
        """Exact floor."""
        # floor((p + q sqrt D)/r) with r > 0: bracket q*sqrt(D) by isqrt.
        if self.q == 0:
            return self.p // self.r
        s = math.isqrt(self.q * self.q * self.D)
        exact = s * s == self.q * self.q * self.D
        if self.q > 0:
            # p + s <= value*r < p + s + 1
            return (self.p + s) // self.r
        # q < 0: q sqrt D lies in (-s-1, -s], with -s attained only when exact
        return (self.p - s if exact else self.p - s - 1) // self.r

    def interval(self, bits: int = DEFAULT_BITS) -> "RealInterval":
        """Enclosure of width about ``2**-bits`` relative to magnitude."""
        if self.q == 0:
            return RealInterval.point(Fraction(self.p, self.r))
        extra = max(0, abs(self.q).bit_length() - self.r.bit_length()) + 2
        root = interval_sqrt(RealInterval.point(self.D), bits + extra)
        return (RealInterval.point(self.p) + root * self.q) * RealInterval.point(
            Fraction(1, self.r)
        )

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.D)) / self.r

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.p, -self.q, self.D, self.r)

    def __add__(self, other) -> "QuadSurd":
        other = _coerce(other)
        D = self._field(other)
        return surd_normalize(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            D,
            self.r * other.r,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "QuadSurd":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QuadSurd":
        return _coerce(other) - self

    def __mul__(self, other) -> "QuadSurd":
        other = _coerce(other)
        D = self._field(other)
        return surd_normalize(
            self.p * other.p + self.q * other.q * D,
            self.p * other.q + self.q * other.p,
            D,
            self.r * other.r,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadSurd":
        n = self.p * self.p - self.q * self.q * self.D
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return surd_normalize(self.r * self.p, -self.r * self.q, self.D, n)

    def __truediv__(self, other) -> "QuadSurd":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadSurd":
        return _coerce(other) * self.inverse()

    # -- ordering ---------------------------------------------------------

    def __lt__(self, other) -> bool:
        return surd_compare(self, _coerce(other)) < 0

    def __le__(self, other) -> bool:
        return surd_compare(self, _coerce(other)) <= 0

    def __gt__(self, other) -> bool:
        return surd_compare(self, _coerce(other)) > 0

    def __ge__(self, other) -> bool:
        return surd_compare(self, _coerce(other)) >= 0

    def __str__(self) -> str:
        if self.q == 0:
            body = str(self.p)
        else:
            rad = f"sqrt({self.D})" if abs(self.q) == 1 else f"{abs(self.q)}*sqrt({self.D})"
            op = "+" if self.q > 0 else "-"
            body = f"{op}{rad}" if self.p == 0 and self.q < 0 else (
                rad if self.p == 0 else f"{self.p} {op} {rad}"
            )
        if self.r == 1:
            return body
        return f"({body})/{self.r}"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "D": self.D, "r": self.r}


def _coerce(x) -> QuadSurd:
    if isinstance(x, QuadSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadSurd.rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as a QuadSurd")


def surd_normalize(p: int, q: int, D: int, r: int) -> QuadSurd:
    """Canonical form: square factors of D pulled into q, gcd reduced, r > 0."""
    if r == 0:
        raise ZeroDivisionError("zero denominator")
    if D < 0:
        raise ValueError("radicand must be nonnegative")
    k, m = squarefree_split(D)
    q *= k
    if m == 1:
        p, q, m = p + q, 0, 0
    if q == 0 or m == 0:
        q, m = 0, 0
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(p, q), r)
    return QuadSurd(p // g, q // g, m, r // g)


def surd_compare(a: QuadSurd, b: QuadSurd) -> int:
    """Exact three-way comparison within one quadratic field.

    Returns -1, 0 or 1.  Raises :class:`IncomparableFields` for two
    irrational surds with different radicands.
    """
    D = a._field(b)
    # (a.p + a.q sqrt D)/a.r - (b.p + b.q sqrt D)/b.r, denominators positive
    return _sign_surd(a.p * b.r - b.p * a.r, a.q * b.r - b.q * a.r, D)


def compare_reals(a, b, bits: int = DEFAULT_BITS) -> int:
    """Compare two reals given as surds, rationals or interval providers.

    Surds in a common field are compared exactly; otherwise enclosures are
    refined, doubling precision until they separate.  ``0`` is returned only
    for exact equality.
    """
    if isinstance(a, (int, Fraction)):
        a = QuadSurd.rational(a)
    if isinstance(b, (int, Fraction)):
        b = QuadSurd.rational(b)
    if isinstance(a, QuadSurd) and isinstance(b, QuadSurd) and a.same_field(b):
        return surd_compare(a, b)
    while bits <= MAX_BITS:
        ia, ib = _enclose(a, bits), _enclose(b, bits)
        if ia.hi < ib.lo:
            return -1
        if ia.lo > ib.hi:
            return 1
        bits *= 2
    raise PrecisionExhausted(f"could not separate {a} and {b}")


def _enclose(x, bits: int) -> "RealInterval":
    if isinstance(x, QuadSurd):
        return x.interval(bits)
    if isinstance(x, RealInterval):
        return x
    return x(bits)


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------


class IntPoly:
    """Integer polynomial, coefficients stored constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        out = IntPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Rational) -> int:
        return _sign(self(Fraction(x)))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sg, body in terms[1:]:
            s += f" {sg} {body}"
        return s


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as an IntPoly")


def poly_from_roots_factors(factors: Sequence[Sequence[int]]) -> IntPoly:
    """Multiply out a list of factors, each given as a coefficient list."""
    out = IntPoly.const(1)
    for f in factors:
        out = out * IntPoly(f)
    return out


# ---------------------------------------------------------------------------
# dyadic intervals
# ---------------------------------------------------------------------------


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class RealInterval:
    """Closed interval ``[lo, hi]`` enclosing a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: Rational) -> "RealInterval":
        x = Fraction(x)
        return RealInterval(x, x)

    @staticmethod
    def of(lo: Rational, hi: Rational) -> "RealInterval":
        return RealInterval(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RealInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def intersects(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def rounded(self, bits: int) -> "RealInterval":
        """Outward rounding to a ``2**-bits`` grid."""
        return RealInterval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def __add__(self, other) -> "RealInterval":
        other = _as_interval(other)
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RealInterval":
        return self + (-_as_interval(other))

    def __rsub__(self, other) -> "RealInterval":
        return _as_interval(other) - self

    def __mul__(self, other) -> "RealInterval":
        other = _as_interval(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RealInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def div(self, other, bits: int = DEFAULT_BITS) -> "RealInterval":
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        inv = RealInterval(1 / other.hi, 1 / other.lo)
        return (self * inv).rounded(bits + 2)

    def __truediv__(self, other) -> "RealInterval":
        return self.div(other)

    def __rtruediv__(self, other) -> "RealInterval":
        return _as_interval(other).div(self)

    def sqrt(self, bits: int = DEFAULT_BITS) -> "RealInterval":
        return interval_sqrt(self, bits)

    def __str__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"

    def to_json(self) -> list[str]:
        """Endpoints as exact strings (``num/den`` or integers)."""
        return [str(self.lo), str(self.hi)]


def _as_interval(x) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    if isinstance(x, (int, Fraction)):
        return RealInterval.point(x)
    if isinstance(x, QuadSurd):
        return x.interval()
    raise TypeError(f"cannot use {type(x).__name__} as a RealInterval")


def interval_sqrt(x: RealInterval, precision_bits: int = DEFAULT_BITS) -> RealInterval:
    """Enclosure of ``sqrt(x)``.

    For a point argument the width is at most ``2**-precision_bits``.
    """
    if x.hi < 0:
        raise NegativeRadicand(f"sqrt of {x}")
    lo = max(x.lo, Fraction(0))
    k = precision_bits + 1
    scale = 1 << (2 * k)
    n_lo = math.floor(lo * scale)
    s_lo = math.isqrt(n_lo)
    n_hi = math.ceil(x.hi * scale)
    s_hi = math.isqrt(n_hi)
    if s_hi * s_hi < n_hi:
        s_hi += 1
    return RealInterval(Fraction(s_lo, 1 << k), Fraction(s_hi, 1 << k))


def poly_root_isolate(
    p: IntPoly, region: RealInterval, precision_bits: int = DEFAULT_BITS
) -> RealInterval:
    """Bisect ``region`` down to width ``2**-precision_bits`` around a root.

    The caller guarantees exactly one root in ``region``; the sign change at
    the endpoints is checked here.
    """
    lo, hi = region.lo, region.hi
    s_lo, s_hi = p.sign_at(lo), p.sign_at(hi)
    if s_lo == 0:
        return RealInterval(lo, lo)
    if s_hi == 0:
        return RealInterval(hi, hi)
    if s_lo == s_hi:
        raise NoSignChange(f"{p} has sign {s_lo} at both ends of {region}")
    target = Fraction(1, 1 << precision_bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return RealInterval(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RealInterval(lo, hi)
