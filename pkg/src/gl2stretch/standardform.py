"""Standard forms of fully irreducible elements of GL2(Z).

A hyperbolic ``M`` with positive trace is conjugate in SL2(Z) to a positive
word ``A1^a1 B1^a2 ... B1^ad`` (d even).  A glide reflection is conjugate to
``A1^a1 B1^a2 ... A1^ad E_SWAP`` (d odd), read off from the half period of the
standard form of its square.  Negative trace flips the sign.

The reduction is combinatorial: Gauss-style conjugation until the
off-diagonal entries share a sign (the axis of ``M`` then crosses the
positive quadrant), then exact left division by ``A1``/``B1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InternalConsistencyError, NotFullyIrreducible
from .gl2core import (
    A1,
    B1,
    E_SWAP,
    I2,
    IsometryType,
    Mat2,
    classify,
    det2,
    tr2,
    word_matrix,
)

S_ROT = Mat2(0, -1, 1, 0)


class Kind(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    GLIDE = "glide"


class Mode(str, enum.Enum):
    SL2 = "sl2"
    GL2 = "gl2"


@dataclass(frozen=True)
class StandardForm:
    sign: int
    exponents: tuple[int, ...]
    kind: Kind

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.exponents or min(self.exponents) < 1:
            raise ValueError("exponents must be a nonempty sequence of positive integers")
        parity = len(self.exponents) % 2
        if self.kind is Kind.HYPERBOLIC and parity:
            raise ValueError("hyperbolic standard forms have an even number of exponents")
        if self.kind is Kind.GLIDE and not parity:
            raise ValueError("glide standard forms have an odd number of exponents")

    @property
    def syllable_length(self) -> int:
        return len(self.exponents)

    def to_json(self) -> dict:
        return {"sign": self.sign, "kind": self.kind.value, "exponents": list(self.exponents)}

    @classmethod
    def from_json(cls, data: dict) -> "StandardForm":
        return cls(int(data["sign"]), tuple(data["exponents"]), Kind(data["kind"]))

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"({s},{list(self.exponents)},{self.kind.value})"


@dataclass(frozen=True, order=True)
class CanonicalKey:
    mode: Mode
    sign: int
    kind: Kind
    exponents: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "sign": self.sign,
            "kind": self.kind.value,
            "exponents": list(self.exponents),
        }


def assemble(sf: StandardForm) -> Mat2:
    m = word_matrix(sf.exponents)
    if sf.kind is Kind.GLIDE:
        m = m @ E_SWAP
    return m if sf.sign > 0 else -m


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


def _nearest(num: int, den: int) -> int:
    return round(Fraction(num, den))


def positive_conjugate(m: Mat2) -> tuple[Mat2, Mat2]:
    """Return ``(n, p)`` with ``p = n m n^-1`` entrywise positive, ``n`` in SL2(Z).

    ``m`` must be hyperbolic with positive trace.
    """
    if det2(m) != 1 or tr2(m) <= 2:
        raise ValueError(f"{m} is not hyperbolic with positive trace")
    n, x = I2, m
    while x.b * x.c <= 0:
        # shift the axis so that |a - d| <= |c|
        k = _nearest(x.d - x.a, 2 * x.c)
        if k:
            step = A1**k
            x, n = x.conj(step), step @ n
        if x.b * x.c > 0:
            break
        # now 4|b||c| < c^2, so rotating strictly shrinks |c|
        x, n = x.conj(S_ROT), S_ROT @ n
    if x.b < 0:
        x, n = x.conj(S_ROT), S_ROT @ n
    if min(x.a, x.b, x.c, x.d) <= 0:
        raise InternalConsistencyError(f"reduction of {m} ended at {x}")
    return n, x


def positive_word(p: Mat2) -> list[str]:
    """Factor an entrywise nonnegative SL2(Z) matrix into letters ``'A'``/``'B'``."""
    letters = []
    x = p
    while x != I2:
        if x.a >= x.c and x.b >= x.d:
            letters.append("A")
            x = Mat2(x.a - x.c, x.b - x.d, x.c, x.d)
        elif x.c >= x.a and x.d >= x.b:
            letters.append("B")
            x = Mat2(x.a, x.b, x.c - x.a, x.d - x.b)
        else:
            raise InternalConsistencyError(f"{p} is not a positive word")
        if min(x.a, x.b, x.c, x.d) < 0:
            raise InternalConsistencyError(f"{p} is not a positive word")
    return letters


def cyclic_syllables(letters: Sequence[str]) -> tuple[int, ...]:
    """Run lengths of a cyclic A/B word, rotated to start on an A-run."""
    n = len(letters)
    if "A" not in letters or "B" not in letters:
        raise InternalConsistencyError("cyclic word must contain both letters")
    start = next(i for i in range(n) if letters[i] == "A" and letters[i - 1] == "B")
    word = list(letters[start:]) + list(letters[:start])
    runs = []
    for ch in word:
        if runs and runs[-1][0] == ch:
            runs[-1][1] += 1
        else:
            runs.append([ch, 1])
    return tuple(r[1] for r in runs)


def standard_form(m: Mat2) -> StandardForm:
    """Standard form of a fully irreducible ``m``.

    The rotation returned is the least one that is still SL2-conjugate to
    ``m``, so the result only depends on the SL2 class.
    """
    kind = classify(m)
    t = tr2(m)
    sign = 1 if t > 0 else -1
    if kind is IsometryType.HYPERBOLIC:
        _, p = positive_conjugate(m if t > 0 else -m)
        sf = StandardForm(sign, cyclic_syllables(positive_word(p)), Kind.HYPERBOLIC)
        return canonical_form(sf, Mode.SL2)
    if kind is IsometryType.GLIDE_REFLECTION:
        sq = standard_form(m @ m)
        e = sq.exponents
        half = len(e) // 2
        if len(e) % 2 or e[:half] != e[half:] or half % 2 == 0:
            raise InternalConsistencyError(
                f"square of glide {m} has exponents {list(e)} without odd half period"
            )
        return canonical_form(StandardForm(sign, e[:half], Kind.GLIDE), Mode.SL2)
    raise NotFullyIrreducible(f"{m} is {kind.value}")


# ---------------------------------------------------------------------------
# canonical keys
# ---------------------------------------------------------------------------


def _rotations(seq: tuple[int, ...], step: int) -> Iterator[tuple[int, ...]]:
    for i in range(0, len(seq), step):
        yield seq[i:] + seq[:i]


def canonical_key(sf: StandardForm, mode: Mode | str = Mode.GL2) -> CanonicalKey:
    """Conjugacy-class key.

    Hyperbolic forms rotate by whole A/B syllable pairs in SL2 mode and by
    single syllables (letter swap by ``E_SWAP``) in GL2 mode.  For glide forms
    every rotation is already realised by an SL2 conjugation.
    """
    mode = Mode(mode)
    e = sf.exponents
    step = 2 if (sf.kind is Kind.HYPERBOLIC and mode is Mode.SL2) else 1
    return CanonicalKey(mode, sf.sign, sf.kind, min(_rotations(e, step)))


def canonical_form(sf: StandardForm, mode: Mode | str = Mode.GL2) -> StandardForm:
    """The standard form whose exponents are the canonical rotation."""
    return StandardForm(sf.sign, canonical_key(sf, mode).exponents, sf.kind)


def class_key(m: Mat2, mode: Mode | str = Mode.GL2) -> CanonicalKey:
    return canonical_key(standard_form(m), mode)


# ---------------------------------------------------------------------------
# brute-force conjugacy oracle
# ---------------------------------------------------------------------------

_SL2_GENS = (A1, A1.inverse(), B1, B1.inverse())
_GL2_GENS = _SL2_GENS + (E_SWAP,)


def conjugators(mode: Mode | str = Mode.GL2) -> tuple[Mat2, ...]:
    return _GL2_GENS if Mode(mode) is Mode.GL2 else _SL2_GENS


def conjugacy_ball(m: Mat2, depth: int, mode: Mode | str = Mode.GL2) -> set[Mat2]:
    """All ``P m P^-1`` with ``P`` a word of length <= depth in the generators."""
    gens = conjugators(mode)
    seen = {m}
    frontier = [m]
    for _ in range(depth):
        nxt = []
        for x in frontier:
            for g in gens:
                y = x.conj(g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def brute_conjugacy_oracle(
    m: Mat2, n: Mat2, conj_word_bound: int, mode: Mode | str = Mode.GL2
) -> bool:
    """Search for a conjugator of word length <= ``conj_word_bound``.

    Meet-in-the-middle breadth-first search from both ends.  ``False`` only
    means that no conjugator was found within the bound.  The default GL2
    generators are ``A1^+-1, B1^+-1, E_SWAP``; SL2 mode drops ``E_SWAP``.
    """
    if m == n:
        return True
    if det2(m) != det2(n) or tr2(m) != tr2(n):
        return False
    left = conjugacy_ball(m, (conj_word_bound + 1) // 2, mode)
    right = conjugacy_ball(n, conj_word_bound // 2, mode)
    return not left.isdisjoint(right)
