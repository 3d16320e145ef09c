"""Penner words for the genus-two handlebody and their 5x5 representation.

Twists along the curves delta_1..delta_5 act on measure coordinates by
``rho(delta_k) = I + (row k of the intersection matrix)``.  Products of the
pairs ``delta_1 delta_3`` and ``delta_2 delta_4`` give the block matrices
``MAT_A``/``MAT_B``; ``delta_5`` gives ``MAT_C``.  A fully irreducible
``M`` in GL2(Z) is lifted through its standard form; the stretch factor of
the lift is the largest eigenvalue of ``C W`` (hyperbolic) or ``C W E``
(glide), available in closed form.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BlockShapeViolation,
    InternalConsistencyError,
    NotPrimitive,
    PrecisionExhausted,
)
from .exactnum import (
    DEFAULT_BITS,
    IntPoly,
    QuadSurd,
    RealInterval,
    interval_sqrt,
    poly_root_isolate,
    surd_normalize,
)
from .gl2core import A1, B1, E_SWAP, I2, R_NEG, Mat2, antitr2, tr2, word_matrix
from .standardform import Kind, StandardForm

N = 5


@dataclass(frozen=True)
class Mat5:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError("Mat5 needs 5 rows of 5 entries")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> "Mat5":
        return cls(tuple(tuple(int(i == j) for j in range(N)) for i in range(N)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, o: "Mat5") -> "Mat5":
        cols = list(zip(*o.rows))
        return Mat5(tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in self.rows))

    def __pow__(self, n: int) -> "Mat5":
        if n < 0:
            raise ValueError("only nonnegative powers")
        out, base = Mat5.identity(), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(x * y for x, y in zip(r, v)) for r in self.rows]

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

INTERSECTION = Mat5(
    (
        (0, 1, 0, 0, 2),
        (1, 0, 0, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 1, 0, 2),
        (2, 0, 0, 2, 0),
    )
)

MAT_A = Mat5(((1, 1, 0, 0, 2), (0, 1, 0, 0, 0), (0, 0, 1, 1, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)))
MAT_B = Mat5(((1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 1, 1, 2), (0, 0, 0, 0, 1)))
MAT_C = Mat5(((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (2, 0, 0, 2, 1)))
MAT_E = Mat5(((0, 0, 0, 1, 0), (0, 0, 1, 0, 0), (0, 1, 0, 0, 0), (1, 0, 0, 0, 0), (0, 0, 0, 0, 1)))
I5 = Mat5.identity()


def rho_letter(k: int) -> Mat5:
    """``I + A_k``: the identity plus row ``k`` (1-based) of the intersection matrix."""
    if not 1 <= k <= N:
        raise ValueError(f"letter index {k} outside 1..5")
    rows = [list(r) for r in I5.rows]
    for j in range(N):
        rows[k - 1][j] += INTERSECTION[k - 1, j]
    return Mat5(tuple(map(tuple, rows)))


def check_constants() -> None:
    """Raise if the intersection data does not reproduce the printed matrices."""
    if INTERSECTION.rows != tuple(zip(*INTERSECTION.rows)):
        raise InternalConsistencyError("intersection matrix is not symmetric")
    checks = {
        "A = rho(d1) rho(d3)": rho_letter(1) @ rho_letter(3) == MAT_A,
        "B = rho(d2) rho(d4)": rho_letter(2) @ rho_letter(4) == MAT_B,
        "C = rho(d5)": rho_letter(5) == MAT_C,
        "E^2 = I": MAT_E @ MAT_E == I5,
        "EAE = B": MAT_E @ MAT_A @ MAT_E == MAT_B,
        "EBE = A": MAT_E @ MAT_B @ MAT_E == MAT_A,
        "ECE = C": MAT_E @ MAT_C @ MAT_E == MAT_C,
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise InternalConsistencyError(f"constant identities fail: {bad}")


check_constants()


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


class Suffix(str, enum.Enum):
    NONE = ""
    E = "E"
    R = "R"
    ER = "ER"


@dataclass(frozen=True)
class PennerWord:
    letters: tuple[int, ...]
    suffix: Suffix = Suffix.NONE

    def __str__(self) -> str:
        body = " ".join(f"d{k}" for k in self.letters)
        return body + (f" [{'][' .join(self.suffix.value)}]" if self.suffix.value else "")

    def uses_every_letter(self) -> bool:
        return set(self.letters) == set(range(1, N + 1))


_SUFFIX = {
    (Kind.HYPERBOLIC, 1): Suffix.NONE,
    (Kind.HYPERBOLIC, -1): Suffix.R,
    (Kind.GLIDE, 1): Suffix.E,
    (Kind.GLIDE, -1): Suffix.ER,
}


def build_word(sf: StandardForm) -> PennerWord:
    """``d5`` followed by ``(d1 d3)^a1 (d2 d4)^a2 ...`` plus the case suffix."""
    letters = [5]
    for i, a in enumerate(sf.exponents):
        letters.extend((1, 3) * a if i % 2 == 0 else (2, 4) * a)
    return PennerWord(tuple(letters), _SUFFIX[(sf.kind, sf.sign)])


def rho_word(w: PennerWord) -> Mat5:
    out = I5
    for k in w.letters:
        out = out @ rho_letter(k)
    if w.suffix in (Suffix.E, Suffix.ER):
        out = out @ MAT_E
    return out


def abelianize(w: PennerWord) -> Mat2:
    """Image in GL2(Z): ``d5 -> I``, ``d1 d3 -> A1``, ``d2 d4 -> B1``,
    ``[E] -> E_SWAP``, ``[R] -> -I``."""
    images = {(1, 3): A1, (2, 4): B1}
    out = I2
    letters = list(w.letters)
    i = 0
    while i < len(letters):
        if letters[i] == 5:
            i += 1
            continue
        pair = tuple(letters[i : i + 2])
        if pair not in images:
            raise ValueError(f"letters {pair} at position {i} do not form a block")
        out = out @ images[pair]
        i += 2
    if w.suffix in (Suffix.E, Suffix.ER):
        out = out @ E_SWAP
    if w.suffix in (Suffix.R, Suffix.ER):
        out = out @ R_NEG
    return out


def block_compose(m: Mat2) -> Mat5:
    """The 5x5 block template attached to ``(a b; c d)``."""
    a, b, c, d = m.a, m.b, m.c, m.d
    return Mat5(
        (
            (a, b, 0, 0, 2 * b),
            (c, d, 0, 0, 2 * d - 2),
            (0, 0, a, b, 2 * a - 2),
            (0, 0, c, d, 2 * c),
            (0, 0, 0, 0, 1),
        )
    )


def block_decompose(w5: Mat5) -> Mat2:
    """Recover ``(a b; c d)`` from a product of A- and B-powers, checking every entry."""
    m = Mat2(w5[0, 0], w5[0, 1], w5[1, 0], w5[1, 1])
    want = block_compose(m)
    for i, j in itertools.product(range(N), repeat=2):
        if w5[i, j] != want[i, j]:
            raise BlockShapeViolation(
                f"entry ({i + 1},{j + 1}) is {w5[i, j]}, template expects {want[i, j]}"
            )
    return m


def w5_of(exponents: Sequence[int]) -> Mat5:
    """``A^m1 B^m2 ...`` at the 5x5 level."""
    out = I5
    for i, e in enumerate(exponents):
        out = out @ ((MAT_A if i % 2 == 0 else MAT_B) ** e)
    return out


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------


def charpoly_cw(t: int, s: int) -> IntPoly:
    """``(x - 1)(x^2 - t x + 1)(x^2 - (t + 4s) x + 1)``."""
    return IntPoly((-1, 1)) * IntPoly((1, -t, 1)) * IntPoly((1, -(t + 4 * s), 1))


def quartic_cwe(t: int, s: int) -> IntPoly:
    """``x^4 - 4s x^3 - (s^2 + 4ts + 2) x^2 - 4s x + 1``."""
    return IntPoly((1, -4 * s, -(s * s + 4 * t * s + 2), -4 * s, 1))


def charpoly_cwe(t: int, s: int) -> IntPoly:
    return IntPoly((-1, 1)) * quartic_cwe(t, s)


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_PERMS = [(p, _perm_sign(p)) for p in itertools.permutations(range(N))]


def charpoly_direct(m: Mat5) -> IntPoly:
    """``det(x I - m)`` expanded over all 120 permutations (independent oracle)."""
    entries = [
        [IntPoly((-m[i, j], 1)) if i == j else IntPoly.const(-m[i, j]) for j in range(N)]
        for i in range(N)
    ]
    total = IntPoly()
    for p, sign in _PERMS:
        term = IntPoly.const(sign)
        for i in range(N):
            term = term * entries[i][p[i]]
            if term.is_zero():
                break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# stretch factors
# ---------------------------------------------------------------------------


def lambda_hyperbolic(t: int, s: int) -> QuadSurd:
    """``(u + sqrt(u^2 - 4)) / 2`` with ``u = t + 4s``."""
    u = t + 4 * s
    return surd_normalize(u, 1, u * u - 4, 2)


def hyperbolic_eigenvalues(t: int, s: int) -> list[QuadSurd]:
    """The five eigenvalues of ``C W`` in the order of the strict chain
    ``lam1 > mu > 1 > 1/mu > 1/lam1``."""
    u = t + 4 * s
    return [
        surd_normalize(u, 1, u * u - 4, 2),
        surd_normalize(t, 1, t * t - 4, 2),
        QuadSurd.rational(1),
        surd_normalize(t, -1, t * t - 4, 2),
        surd_normalize(u, -1, u * u - 4, 2),
    ]


@dataclass(frozen=True)
class GlideRadicals:
    """Enclosures of ``r1 = sqrt(5s^2+4ts+4)`` and ``r_pm = sqrt(9s^2+4ts +- 4s r1)``."""

    inner: RealInterval
    outer_plus: RealInterval
    outer_minus: RealInterval

    def chain_holds(self) -> bool:
        """``r_plus > r1 > r_minus > 0`` with disjoint enclosures."""
        return (
            self.outer_plus.lo > self.inner.hi
            and self.inner.lo > self.outer_minus.hi
            and self.outer_minus.lo > 0
        )


def glide_radicals(t: int, s: int, precision_bits: int = DEFAULT_BITS) -> GlideRadicals:
    work = precision_bits + 8
    r1 = interval_sqrt(RealInterval.point(5 * s * s + 4 * t * s + 4), work)
    base = 9 * s * s + 4 * t * s
    rp = interval_sqrt(base + (4 * s) * r1, work)
    rm = interval_sqrt(base - (4 * s) * r1, work)
    return GlideRadicals(r1, rp, rm)


def lambda_glide(t: int, s: int, precision_bits: int = DEFAULT_BITS) -> RealInterval:
    """Certified enclosure of ``s + r1/2 + r_plus/2``.

    The nested-radical enclosure is refined against the quartic factor of the
    characteristic polynomial: a sign change across the returned interval
    certifies that it contains a root.
    """
    rad = glide_radicals(t, s, precision_bits + 4)
    val = (s + rad.inner * Fraction(1, 2) + rad.outer_plus * Fraction(1, 2)).rounded(
        precision_bits + 4
    )
    quartic = quartic_cwe(t, s)
    pad = Fraction(1, 1 << (precision_bits + 4))
    region = RealInterval(val.lo - pad, val.hi + pad)
    root = poly_root_isolate(quartic, region, precision_bits + 2)
    if not (root.intersects(val) or region.contains(root)):
        raise InternalConsistencyError(f"quartic root {root} outside radical enclosure {val}")
    return root


def is_primitive(w5: Mat5, squarings: int = 5) -> bool:
    """True when some power ``w5^(2^k)``, ``k <= squarings``, is entrywise positive.

    For 5x5 matrices the primitivity exponent is at most 17 < 32, so five
    squarings decide the question.
    """
    if not w5.is_nonnegative():
        return False
    p = w5
    # keep only the zero pattern: entries capped at 1
    p = Mat5(tuple(tuple(min(x, 1) for x in r) for r in p.rows))
    for _ in range(squarings + 1):
        if p.is_positive():
            return True
        p = p @ p
        p = Mat5(tuple(tuple(min(x, 1) for x in r) for r in p.rows))
    return False


def _collatz_wielandt(w5: Mat5, v: Sequence[int]) -> tuple[Fraction, Fraction]:
    wv = w5.apply(v)
    ratios = [Fraction(x, y) for x, y in zip(wv, v)]
    return min(ratios), max(ratios)


def perron_power_iteration(
    w5: Mat5, precision_bits: int = DEFAULT_BITS, max_squarings: int = 64
) -> RealInterval:
    """Enclosure of the spectral radius of a primitive nonnegative matrix.

    For any positive vector ``v`` the spectral radius lies between the
    smallest and largest ratios ``(W v)_i / v_i``.  Vectors ``W^(2^k) 1`` are
    produced by repeated squaring; the power is truncated to a fixed number of
    leading bits, which keeps it positive, so the bounds remain rigorous.
    """
    if not is_primitive(w5):
        raise NotPrimitive("no power of the matrix is entrywise positive")
    target = Fraction(1, 1 << precision_bits)
    keep = 2 * precision_bits + 64
    p = w5
    ones = [1] * N
    for _ in range(max_squarings):
        v = p.apply(ones)
        lo, hi = _collatz_wielandt(w5, v)
        if hi - lo <= target:
            return RealInterval(lo, hi).rounded(precision_bits + 2)
        p = p @ p
        top = max(x for r in p.rows for x in r).bit_length()
        shift = max(0, top - keep)
        if shift:
            p = Mat5(tuple(tuple(max(1, x >> shift) for x in r) for r in p.rows))
    raise PrecisionExhausted("power iteration did not reach the target width")


@dataclass(frozen=True)
class HandlebodyStretch:
    sform: StandardForm
    word: PennerWord
    matrix: Mat5
    t: int
    s: int
    lambda_exact: QuadSurd | None
    lambda_interval: RealInterval

    def to_json(self) -> dict:
        return {
            "lambda_exact": self.lambda_exact.to_json() if self.lambda_exact is not None else None,
            "lambda_interval": self.lambda_interval.to_json(),
            "lambda_approx": float(self.lambda_interval.mid),
            "t": self.t,
            "s": self.s,
            "matrix": self.matrix.to_json(),
            "word": " ".join(f"d{k}" for k in self.word.letters),
            "suffix": self.word.suffix.value,
        }


def handlebody_stretch(sf: StandardForm, precision_bits: int = DEFAULT_BITS) -> HandlebodyStretch:
    """Stretch factor of the Penner lift of ``sf`` (all four sign/kind cases)."""
    word = build_word(sf)
    w2 = word_matrix(sf.exponents)
    t, s = tr2(w2), antitr2(w2)
    matrix = rho_word(word)
    if sf.kind is Kind.HYPERBOLIC:
        lam = lambda_hyperbolic(t, s)
        return HandlebodyStretch(sf, word, matrix, t, s, lam, lam.interval(precision_bits))
    return HandlebodyStretch(sf, word, matrix, t, s, None, lambda_glide(t, s, precision_bits))
