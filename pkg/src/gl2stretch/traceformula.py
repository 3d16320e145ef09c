"""Trace polynomials of words in ``A_x = (1 x; 0 1)`` and ``B_x = (1 0; x 1)``.

For ``W_x(m) = A_x^m1 B_x^m2 ... B_x^m2d`` the trace is
``2 + sum_i c_d(2i) x^(2i)`` where ``c_d(k)`` sums ``m_j1 ... m_jk`` over the
index set ``J^k_d`` of increasing tuples with odd consecutive gaps.  This
module computes both sides independently, the block coefficients behind the
identity, and the entry-order and trace/anti-trace comparison checks for
positive words.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactnum import IntPoly
from .gl2core import Mat2, antitr2, tr2, word_matrix

X = IntPoly.x()
ONE = IntPoly.const(1)
ZERO = IntPoly()


@dataclass(frozen=True)
class PolyMat2:
    """2x2 matrix over Z[x]."""

    a: IntPoly
    b: IntPoly
    c: IntPoly
    d: IntPoly

    @classmethod
    def identity(cls) -> "PolyMat2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def a_power(cls, m: int) -> "PolyMat2":
        return cls(ONE, IntPoly.monomial(m, 1), ZERO, ONE)

    @classmethod
    def b_power(cls, m: int) -> "PolyMat2":
        return cls(ONE, ZERO, IntPoly.monomial(m, 1), ONE)

    def __matmul__(self, o: "PolyMat2") -> "PolyMat2":
        return PolyMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def trace(self) -> IntPoly:
        return self.a + self.d

    def antitrace(self) -> IntPoly:
        return self.b + self.c

    def det(self) -> IntPoly:
        return self.a * self.d - self.b * self.c

    def at(self, x: int) -> Mat2:
        return Mat2(self.a(x), self.b(x), self.c(x), self.d(x))

    def to_json(self) -> list[list[list[int]]]:
        return [[list(self.a.coeffs), list(self.b.coeffs)], [list(self.c.coeffs), list(self.d.coeffs)]]


def index_set(d: int, k: int) -> list[tuple[int, ...]]:
    """``J^k_d``: increasing ``k``-tuples in ``[1, 2d]`` with odd gaps, lexicographic."""
    if d < 1 or k < 1 or k > 2 * d:
        return []
    return [
        js
        for js in itertools.combinations(range(1, 2 * d + 1), k)
        if all((j2 - j1) % 2 for j1, j2 in zip(js, js[1:]))
    ]


def c_coeff(d: int, k: int, m: Sequence[int]) -> int:
    if len(m) != 2 * d:
        raise ValueError(f"expected {2 * d} exponents, got {len(m)}")
    return sum(math.prod(m[j - 1] for j in js) for js in index_set(d, k))


def trace_poly(m: Sequence[int]) -> IntPoly:
    """Closed-form trace ``2 + sum_i c_d(2i) x^(2i)``."""
    if len(m) % 2:
        raise ValueError("trace_poly needs an even number of exponents")
    d = len(m) // 2
    coeffs = [0] * (2 * d + 1)
    coeffs[0] = 2
    for i in range(1, d + 1):
        coeffs[2 * i] = c_coeff(d, 2 * i, m)
    return IntPoly(coeffs)


def word_matrix_poly(m: Sequence[int]) -> PolyMat2:
    """Direct product ``A_x^m1 B_x^m2 ...``; odd length ends on an A-power."""
    out = PolyMat2.identity()
    for i, e in enumerate(m):
        out = out @ (PolyMat2.a_power(e) if i % 2 == 0 else PolyMat2.b_power(e))
    return out


# ---------------------------------------------------------------------------
# block coefficients c_{d,o}, c_{d,e}
# ---------------------------------------------------------------------------


def block_coefficients(m: Sequence[int]) -> tuple[dict[int, int], dict[int, int]]:
    """Coefficients ``c_{d,o}(k)``, ``c_{d,e}(k)`` by the pairwise recurrences.

    ``c_{d,o}`` sums over tuples starting at an odd index, ``c_{d,e}`` over
    tuples starting at an even index.  Missing keys are zero; index ``0`` is
    the empty tuple and is never stored.
    """
    if len(m) % 2:
        raise ValueError("block coefficients need an even number of exponents")
    co: dict[int, int] = {}
    ce: dict[int, int] = {}
    for d in range(len(m) // 2):
        p, q = m[2 * d], m[2 * d + 1]

        def get(c, k, d=d):
            if k == 0:
                return 1
            return c.get(k, 0) if 1 <= k <= 2 * d else 0

        nco: dict[int, int] = {}
        nce: dict[int, int] = {}
        for i in range(1, d + 2):
            nco[2 * i] = get(co, 2 * i) + get(co, 2 * i - 1) * q + get(co, 2 * i - 2) * p * q
            nco[2 * i - 1] = get(co, 2 * i - 1) + get(co, 2 * i - 2) * p
            nce[2 * i] = get(ce, 2 * i) + get(ce, 2 * i - 1) * p
            nce[2 * i - 1] = (
                get(ce, 2 * i - 1) + get(ce, 2 * i - 2) * q + get(ce, 2 * i - 3) * p * q
            )
        co = {k: v for k, v in nco.items() if v}
        ce = {k: v for k, v in nce.items() if v}
    return co, ce


def block_matrix(m: Sequence[int]) -> PolyMat2:
    """``W_x`` rebuilt from the block coefficients."""
    co, ce = block_coefficients(m)
    n = len(m)

    def poly(c: dict[int, int], parity: int, const: int) -> IntPoly:
        coeffs = [0] * (n + 2)
        coeffs[0] = const
        for k, v in c.items():
            if k % 2 == parity:
                coeffs[k] = v
        return IntPoly(coeffs)

    return PolyMat2(poly(co, 0, 1), poly(co, 1, 0), poly(ce, 1, 0), poly(ce, 0, 1))


@dataclass
class FormulaCheck:
    m: tuple[int, ...]
    ok: bool
    expected: list[int]
    got: list[int]

    def to_json(self) -> dict:
        return {"m": list(self.m), "expected": self.expected, "got": self.got}


def check_trace_formula(m: Sequence[int]) -> FormulaCheck:
    """Compare the closed form with the direct product and the block form."""
    m = tuple(m)
    direct = word_matrix_poly(m)
    expected = trace_poly(m)
    ok = direct.trace() == expected
    ok = ok and block_matrix(m) == direct
    ok = ok and direct.det() == ONE
    co, ce = block_coefficients(m)
    d = len(m) // 2
    ok = ok and all(co.get(k, 0) + ce.get(k, 0) == c_coeff(d, k, m) for k in range(1, 2 * d + 1))
    return FormulaCheck(m, ok, list(expected.coeffs), list(direct.trace().coeffs))


# ---------------------------------------------------------------------------
# entry order and trace ratios (positive words)
# ---------------------------------------------------------------------------


def check_entry_order(m: Sequence[int]) -> bool:
    w = word_matrix(m)
    return w.a > w.b >= w.d > 0 and w.a > w.c >= w.d > 0


def is_documented_odd_boundary(m: Sequence[int]) -> bool:
    """Odd words ``(1, k, 1)``: here tr equals tr* exactly.

    For ``W = A B^k A = (k+1, k+2; k, k+1)`` one has ``tr = tr* = 2k + 2``;
    the comparison argument for odd words only yields ``>=`` at this length.
    """
    return len(m) == 3 and m[0] == 1 and m[2] == 1


@dataclass(frozen=True)
class TraceRatioCheck:
    m: tuple[int, ...]
    trace: int
    antitrace: int
    even_ok: bool | None
    odd_ok: bool | None
    odd_boundary: bool = False

    @property
    def ok(self) -> bool:
        return self.even_ok is not False and self.odd_ok is not False

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "trace": self.trace,
            "antitrace": self.antitrace,
            "even_ok": self.even_ok,
            "odd_ok": self.odd_ok,
            "odd_boundary": self.odd_boundary,
        }


def check_trace_ratios(m: Sequence[int]) -> TraceRatioCheck:
    """Even length: tr* < tr.  Odd length >= 3: tr < tr*, with the documented
    equality family accepted and flagged.  Length 1 is outside the claim and
    reports ``odd_ok = None``."""
    m = tuple(m)
    if not m or min(m) < 1:
        raise ValueError("trace-ratio checks need positive exponents")
    w = word_matrix(m)
    t, s = tr2(w), antitr2(w)
    if len(m) % 2 == 0:
        return TraceRatioCheck(m, t, s, even_ok=s < t, odd_ok=None)
    if len(m) == 1:
        return TraceRatioCheck(m, t, s, even_ok=None, odd_ok=None)
    boundary = t == s and is_documented_odd_boundary(m)
    return TraceRatioCheck(m, t, s, even_ok=None, odd_ok=t < s or boundary, odd_boundary=boundary)


def exponent_vectors(length: int, lo: int, hi: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(lo, hi + 1), repeat=length)
