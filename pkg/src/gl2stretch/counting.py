"""Counting conjugacy classes by stretch factor.

A hyperbolic class has ``mu <= e^R`` iff ``|tr| <= e^R + e^-R``, and a glide
class iff ``|tr| <= e^R - e^-R``.  Classes are enumerated through their
standard forms: positive exponent words are generated depth-first, pruning a
branch once the smallest trace any completion can reach exceeds the limit.
Appending ``A1``/``B1`` powers never decreases an entry of a positive word,
which makes the pruning complete.

``brute_force_class_census`` is an independent check that knows nothing about
standard forms: it lists all small matrices and glues them into classes with
the breadth-first conjugacy oracle.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath.libmp import to_rational

from .errors import PrecisionExhausted, RadiusTooSmall
from .exactnum import DEFAULT_BITS, MAX_BITS, QuadSurd, RealInterval, surd_normalize
from .gl2core import A1, B1, Mat2, antitr2, det2, is_fully_irreducible, tr2, word_matrix
from .standardform import (
    CanonicalKey,
    Kind,
    Mode,
    StandardForm,
    canonical_key,
    conjugacy_ball,
    conjugators,
)

# ---------------------------------------------------------------------------
# radii
# ---------------------------------------------------------------------------

_LOG_TERM = re.compile(r"^log:(-?\d+),(-?\d+),(\d+),(-?\d+)$")


def _iv_to_interval(x) -> RealInterval:
    lo, hi = x._mpi_
    (p1, q1), (p2, q2) = to_rational(lo), to_rational(hi)
    return RealInterval(Fraction(int(p1), int(q1)), Fraction(int(p2), int(q2)))


def _iv_from_fraction(ctx, x: Fraction):
    return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)


@dataclass(frozen=True)
class Radius:
    """``R = log(base) + value - shift * log(10)``.

    ``base`` is an exact surd (or ``None`` for 1) and ``value`` a rational.
    When ``value`` is zero, ``e^R`` is the exact surd ``base / 10^shift``.
    """

    base: QuadSurd | None = None
    value: Fraction = Fraction(0)
    shift: int = 0
    text: str = ""

    @classmethod
    def parse(cls, text: str) -> "Radius":
        """Terms joined by ``+``: a decimal, ``log:p,q,D,r`` for
        ``log((p + q sqrt D)/r)``, or ``log10``; trailing ``-log10`` terms
        subtract ``log 10``."""
        base: QuadSurd | None = None
        value = Fraction(0)
        shift = 0
        s = text.replace(" ", "")
        while s.endswith("-log10"):
            shift += 1
            s = s[: -len("-log10")]
        for term in filter(None, s.split("+")):
            if term == "log10":
                shift -= 1
            elif m := _LOG_TERM.match(term):
                if base is not None:
                    raise ValueError("at most one log: term is supported")
                base = surd_normalize(*(int(g) for g in m.groups()))
                if base.sign() <= 0:
                    raise ValueError(f"log of a nonpositive number in {text!r}")
            else:
                try:
                    value += Fraction(term)
                except ValueError:
                    raise ValueError(f"bad radius term {term!r}") from None
        return cls(base, value, shift, text)

    @classmethod
    def of(cls, x) -> "Radius":
        if isinstance(x, Radius):
            return x
        if isinstance(x, QuadSurd):
            return cls(base=x, text=f"log({x})")
        if isinstance(x, str):
            return cls.parse(x)
        return cls(value=Fraction(x), text=str(x))

    def minus_log10(self) -> "Radius":
        return Radius(self.base, self.value, self.shift + 1, f"{self.text}-log10")

    @property
    def exact(self) -> QuadSurd | None:
        """``e^R`` as a surd when it is one."""
        if self.value:
            return None
        b = self.base if self.base is not None else QuadSurd.rational(1)
        return b / (10**self.shift) if self.shift >= 0 else b * (10 ** (-self.shift))

    def _with_ctx(self, bits: int, fn):
        ctx = mpmath.iv
        old = ctx.prec
        ctx.prec = bits + 16
        try:
            return fn(ctx)
        finally:
            ctx.prec = old

    def exp_interval(self, bits: int = DEFAULT_BITS) -> RealInterval:
        ex = self.exact
        if ex is not None:
            return ex.interval(bits)

        def go(ctx):
            x = ctx.exp(_iv_from_fraction(ctx, self.value))
            if self.base is not None:
                x = x * self._iv_base(ctx, bits)
            return x / ctx.mpf(10) ** self.shift

        return _iv_to_interval(self._with_ctx(bits, go))

    def _iv_base(self, ctx, bits: int):
        iv = self.base.interval(bits + 16)
        return ctx.mpf([_iv_from_fraction(ctx, iv.lo).a, _iv_from_fraction(ctx, iv.hi).b])

    def interval(self, bits: int = DEFAULT_BITS) -> RealInterval:
        """Enclosure of ``R`` itself."""

        def go(ctx):
            x = _iv_from_fraction(ctx, self.value)
            if self.base is not None:
                x = x + ctx.log(self._iv_base(ctx, bits))
            return x - self.shift * ctx.log(ctx.mpf(10))

        return _iv_to_interval(self._with_ctx(bits, go))

    def __float__(self) -> float:
        return float(self.interval(64).mid)

    def to_json(self) -> dict:
        ex = self.exact
        return {
            "text": self.text,
            "approx": float(self),
            "exp_exact": ex.to_json() if ex is not None else None,
            "exp_interval": self.exp_interval().to_json(),
        }


def _floor_of(value_at, bits: int = DEFAULT_BITS) -> int:
    """Floor of a real known through enclosures ``value_at(bits)``."""
    while bits <= MAX_BITS:
        x = value_at(bits)
        lo, hi = math.floor(x.lo), math.floor(x.hi)
        if lo == hi:
            return lo
        bits *= 2
    raise PrecisionExhausted("could not decide the floor of a trace bound")


def exceeds_one(radius: Radius, bits: int = DEFAULT_BITS) -> bool:
    """Whether ``e^R > 1``, i.e. ``R > 0``."""
    ex = radius.exact
    if ex is not None:
        return ex > 1
    while bits <= MAX_BITS:
        x = radius.exp_interval(bits)
        if x.lo > 1:
            return True
        if x.hi <= 1:
            return False
        bits *= 2
    raise PrecisionExhausted("could not compare the radius with 0")


def trace_limits(radius: Radius, bits: int = DEFAULT_BITS) -> tuple[int, int]:
    """Largest |trace| of a hyperbolic and of a glide class with ``mu <= e^R``.

    Returns ``(0, 0)`` when ``R <= 0``.
    """
    if not exceeds_one(radius, bits):
        return 0, 0
    ex = radius.exact
    if ex is not None:
        return (ex + ex.inverse()).floor(), (ex - ex.inverse()).floor()

    def hyp(b):
        e = radius.exp_interval(b)
        return e + RealInterval(1 / e.hi, 1 / e.lo)

    def gl(b):
        e = radius.exp_interval(b)
        return e - RealInterval(1 / e.hi, 1 / e.lo)

    return _floor_of(hyp, bits), _floor_of(gl, bits)


# ---------------------------------------------------------------------------
# enumeration of positive words
# ---------------------------------------------------------------------------


def _power(i: int, e: int) -> Mat2:
    return Mat2(1, e, 0, 1) if i % 2 == 0 else Mat2(1, 0, e, 1)


def positive_words(limit: int, glide: bool) -> Iterator[tuple[tuple[int, ...], Mat2]]:
    """All exponent words whose hyperbolic trace (or glide anti-trace) is <= limit.

    Hyperbolic words have even length, glide words odd length.
    """

    def value(m: Mat2) -> int:
        return antitr2(m) if glide else tr2(m)

    def bound(prefix_len: int, m: Mat2) -> int:
        # smallest value reachable by completing a prefix of this length
        done = (prefix_len % 2 == 1) if glide else (prefix_len % 2 == 0 and prefix_len > 0)
        if done or prefix_len == 0:
            return value(m)
        nxt = A1 if prefix_len % 2 == 0 else B1
        return value(m @ nxt)

    out: list[tuple[tuple[int, ...], Mat2]] = []

    def dfs(prefix: list[int], m: Mat2) -> None:
        n = len(prefix)
        if n and (n % 2 == 1) == glide and value(m) <= limit:
            out.append((tuple(prefix), m))
        e = 1
        while True:
            child = m @ _power(n, e)
            if bound(n + 1, child) > limit:
                break
            prefix.append(e)
            dfs(prefix, child)
            prefix.pop()
            e += 1

    if limit >= 1:
        dfs([], Mat2(1, 0, 0, 1))
    return iter(out)


def classes_by_trace(
    mode: Mode | str, hyp_limit: int, glide_limit: int = 0
) -> list[tuple[CanonicalKey, int]]:
    """Canonical keys with their signed traces, sorted by key.

    SL2 mode counts hyperbolic classes only; GL2 mode adds glides.
    """
    mode = Mode(mode)
    found: dict[CanonicalKey, int] = {}
    for exps, m in positive_words(hyp_limit, glide=False):
        t = tr2(m)
        for sign in (1, -1):
            found.setdefault(canonical_key(StandardForm(sign, exps, Kind.HYPERBOLIC), mode), sign * t)
    if mode is Mode.GL2:
        for exps, m in positive_words(glide_limit, glide=True):
            t = antitr2(m)
            for sign in (1, -1):
                found.setdefault(canonical_key(StandardForm(sign, exps, Kind.GLIDE), mode), sign * t)
    return sorted(found.items())


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class CountReport:
    mode: str
    radius: Radius | None
    class_count: int
    classes: list[CanonicalKey] | None = None
    per_trace: dict[tuple[int, int], int] = field(default_factory=dict)
    formula_value: RealInterval | None = None
    trace_limits: tuple[int, int] | None = None

    def __post_init__(self):
        if self.classes is not None and len(self.classes) != self.class_count:
            raise ValueError("class_count disagrees with the class list")

    def to_json(self, list_classes: bool = False) -> dict:
        out = {
            "mode": self.mode,
            "radius": self.radius.to_json() if self.radius is not None else None,
            "class_count": self.class_count,
            "per_trace": [
                {"det": det, "trace": t, "count": n} for (det, t), n in sorted(self.per_trace.items())
            ],
        }
        if self.trace_limits is not None:
            out["trace_limits"] = {"hyperbolic": self.trace_limits[0], "glide": self.trace_limits[1]}
        if self.formula_value is not None:
            out["formula_value"] = self.formula_value.to_json()
            out["formula_approx"] = float(self.formula_value.mid)
        if list_classes and self.classes is not None:
            out["classes"] = [k.to_json() for k in self.classes]
        return out


def enumerate_classes(mode: Mode | str, radius, bits: int = DEFAULT_BITS) -> CountReport:
    mode = Mode(mode)
    radius = Radius.of(radius)
    hyp, glide = trace_limits(radius, bits)
    found = classes_by_trace(mode, hyp, glide if mode is Mode.GL2 else 0)
    per_trace: Counter = Counter()
    for key, t in found:
        per_trace[(-1 if key.kind is Kind.GLIDE else 1, t)] += 1
    return CountReport(
        mode=mode.value,
        radius=radius,
        class_count=len(found),
        classes=[k for k, _ in found],
        per_trace=dict(per_trace),
        trace_limits=(hyp, glide if mode is Mode.GL2 else 0),
    )


def n11(radius, bits: int = DEFAULT_BITS) -> CountReport:
    """Pseudo-Anosov classes of the once-punctured torus: hyperbolic SL2 classes."""
    return enumerate_classes(Mode.SL2, radius, bits)


def n2(radius, bits: int = DEFAULT_BITS) -> CountReport:
    """Fully irreducible classes of Out(F2): all GL2 classes."""
    return enumerate_classes(Mode.GL2, radius, bits)


def h2_formula(radius, epsilon, bits: int = DEFAULT_BITS) -> RealInterval:
    """Enclosure of ``(1 - eps) e^(2R) / (400 R)``."""
    radius = Radius.of(radius)
    eps = Fraction(epsilon)
    if not 0 <= eps < 1:
        raise ValueError("epsilon must lie in [0, 1)")
    r = radius.interval(bits)
    if r.lo <= 0:
        raise RadiusTooSmall("the formula needs R > 0")
    e = radius.exp_interval(bits)
    return ((1 - eps) * e * e).div(400 * r, bits)


@dataclass
class H2LowerReport:
    constructive: CountReport
    n11: CountReport
    formula: RealInterval | None

    def to_json(self, list_classes: bool = False) -> dict:
        return {
            "constructive": self.constructive.to_json(list_classes),
            "n11_shifted": self.n11.to_json(list_classes),
            "formula": self.formula.to_json() if self.formula is not None else None,
            "formula_approx": float(self.formula.mid) if self.formula is not None else None,
        }


def h2_lower(radius, epsilon=None, bits: int = DEFAULT_BITS) -> H2LowerReport:
    """Constructive lower bound ``floor(N11(R - log 10) / 2)``, plus the formula."""
    radius = Radius.of(radius)
    shifted = radius.minus_log10()
    if not exceeds_one(shifted, bits):
        raise RadiusTooSmall(f"R = {radius.text} does not exceed log 10")
    inner = n11(shifted, bits)
    constructive = CountReport(
        mode="h2-lower",
        radius=radius,
        class_count=inner.class_count // 2,
    )
    formula = h2_formula(radius, epsilon, bits) if epsilon is not None else None
    return H2LowerReport(constructive, inner, formula)


# ---------------------------------------------------------------------------
# brute-force census
# ---------------------------------------------------------------------------


def _divisors_in_range(n: int, bound: int) -> Iterator[int]:
    """Signed divisors ``b`` of ``n != 0`` with ``|b| <= bound`` and ``|n/b| <= bound``."""
    n_abs = abs(n)
    for b in range(1, min(bound, n_abs) + 1):
        if n_abs % b == 0 and n_abs // b <= bound:
            yield b
            yield -b


def box_matrices(entry_bound: int, trace_bound: int, dets=(1, -1)) -> list[Mat2]:
    """Fully irreducible matrices with all |entries| <= entry_bound and |trace| <= trace_bound."""
    out = []
    rng = range(-entry_bound, entry_bound + 1)
    for a in rng:
        for d in rng:
            t = a + d
            if abs(t) > trace_bound:
                continue
            for det in dets:
                bc = a * d - det
                if bc == 0:
                    continue  # never fully irreducible
                for b in _divisors_in_range(bc, entry_bound):
                    m = Mat2(a, b, bc // b, d)
                    if is_fully_irreducible(m):
                        out.append(m)
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry, key=_mat_order)] = min(rx, ry, key=_mat_order)
        return True


def _mat_order(m: Mat2):
    return (m.entry_sum(), m.a, m.b, m.c, m.d)


@dataclass
class CensusReport:
    mode: str
    entry_bound: int
    trace_bound: int
    conj_bound: int
    matrices: int
    per_bucket: dict[tuple[int, int], int]
    representatives: dict[tuple[int, int], list[Mat2]]
    oracle_merges: int = 0

    @property
    def class_count(self) -> int:
        return sum(self.per_bucket.values())

    def to_json(self, list_classes: bool = False) -> dict:
        out = {
            "mode": self.mode,
            "entry_bound": self.entry_bound,
            "trace_bound": self.trace_bound,
            "conj_bound": self.conj_bound,
            "matrices": self.matrices,
            "class_count": self.class_count,
            "oracle_merges": self.oracle_merges,
            "per_trace": [
                {"det": det, "trace": t, "count": n} for (det, t), n in sorted(self.per_bucket.items())
            ],
        }
        if list_classes:
            out["representatives"] = [
                {"det": det, "trace": t, "matrices": [str(m) for m in ms]}
                for (det, t), ms in sorted(self.representatives.items())
            ]
        return out


def brute_force_class_census(
    entry_bound: int,
    trace_bound: int,
    conj_word_bound: int,
    mode: Mode | str = Mode.SL2,
) -> CensusReport:
    """Count conjugacy classes among small matrices without using standard forms.

    Matrices one generator-conjugation apart inside the box are glued first;
    the remaining components of each ``(det, trace)`` bucket are merged with
    :func:`brute_conjugacy_oracle`.  SL2 mode restricts to determinant 1 and
    SL2 conjugators.
    """
    mode = Mode(mode)
    dets = (1,) if mode is Mode.SL2 else (1, -1)
    mats = box_matrices(entry_bound, trace_bound, dets)
    present = set(mats)
    uf = _UnionFind(mats)
    gens = conjugators(mode)
    for m in mats:
        for g in gens:
            y = m.conj(g)
            if y in present:
                uf.union(m, y)
    buckets: dict[tuple[int, int], set[Mat2]] = defaultdict(set)
    for m in mats:
        buckets[(det2(m), tr2(m))].add(uf.find(m))
    per_bucket: dict[tuple[int, int], int] = {}
    reps: dict[tuple[int, int], list[Mat2]] = {}
    merges = 0
    near, far = conj_word_bound // 2, (conj_word_bound + 1) // 2
    for key in sorted(buckets):
        classes: list[tuple[Mat2, set[Mat2]]] = []
        for comp in sorted(buckets[key], key=_mat_order):
            ball = conjugacy_ball(comp, far, mode)
            for rep, rep_ball in classes:
                if not ball.isdisjoint(rep_ball):
                    merges += 1
                    break
            else:
                classes.append((comp, conjugacy_ball(comp, near, mode)))
        per_bucket[key] = len(classes)
        reps[key] = [c for c, _ in classes]
    return CensusReport(
        mode.value, entry_bound, trace_bound, conj_word_bound, len(mats), per_bucket, reps, merges
    )

