"""Integer 2x2 matrices, i.e. elements of GL2(Z) = Out(F2).

Conventions: ``A1 = (1 1; 0 1)``, ``B1 = (1 0; 1 1)``, the swap
``E_SWAP = (0 1; 1 0)`` and ``R_NEG = -I``.  A word matrix
``word_matrix([m1, m2, ...])`` is ``A1^m1 B1^m2 A1^m3 ...``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidMatrix, NotFullyIrreducible
from .exactnum import QuadSurd, surd_normalize

MATRIX_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


@dataclass(frozen=True)
class Mat2:
    """Row-major integer matrix ``(a b; c d)``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def parse(cls, text: str) -> "Mat2":
        """Parse the ``"a,b;c,d"`` text format."""
        m = MATRIX_RE.match(text)
        if m is None:
            raise ValueError(f"bad matrix literal {text!r}; expected 'a,b;c,d'")
        return cls(*(int(g) for g in m.groups()))

    def __str__(self) -> str:
        return f"{self.a},{self.b};{self.c},{self.d}"

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        det = det2(self)
        if det not in (1, -1):
            raise InvalidMatrix(f"{self} is not invertible over Z")
        return Mat2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = I2
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def conj(self, n: "Mat2") -> "Mat2":
        """``n @ self @ n^-1``."""
        return n @ self @ n.inverse()

    def entry_sum(self) -> int:
        return abs(self.a) + abs(self.b) + abs(self.c) + abs(self.d)

    def max_entry(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))


I2 = Mat2(1, 0, 0, 1)
A1 = Mat2(1, 1, 0, 1)
B1 = Mat2(1, 0, 1, 1)
E_SWAP = Mat2(0, 1, 1, 0)
R_NEG = Mat2(-1, 0, 0, -1)


def det2(m: Mat2) -> int:
    return m.a * m.d - m.b * m.c


def tr2(m: Mat2) -> int:
    return m.a + m.d


def antitr2(m: Mat2) -> int:
    """Anti-trace: sum of the anti-diagonal entries."""
    return m.b + m.c


def word_matrix(exponents: Sequence[int]) -> Mat2:
    """``A1^m1 B1^m2 A1^m3 ...``; odd length ends on an A-power."""
    out = I2
    for i, m in enumerate(exponents):
        out = out @ (Mat2(1, m, 0, 1) if i % 2 == 0 else Mat2(1, 0, m, 1))
    return out


class IsometryType(str, enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    REFLECTION = "reflection"
    GLIDE_REFLECTION = "glide_reflection"


def _check_det(m: Mat2) -> int:
    det = det2(m)
    if det not in (1, -1):
        raise InvalidMatrix(f"determinant of {m} is {det}, expected +-1")
    return det


def classify(m: Mat2) -> IsometryType:
    """Isometry type of ``m`` acting on the hyperbolic plane.

    +-I and every finite-order element count as elliptic.
    """
    det = _check_det(m)
    t = abs(tr2(m))
    if det == -1:
        return IsometryType.REFLECTION if t == 0 else IsometryType.GLIDE_REFLECTION
    if t > 2:
        return IsometryType.HYPERBOLIC
    if t == 2 and m not in (I2, R_NEG):
        return IsometryType.PARABOLIC
    return IsometryType.ELLIPTIC


def is_fully_irreducible(m: Mat2) -> bool:
    return classify(m) in (IsometryType.HYPERBOLIC, IsometryType.GLIDE_REFLECTION)


def mu_stretch(m: Mat2) -> QuadSurd:
    """Stretch factor: the largest absolute eigenvalue of ``m``."""
    kind = classify(m)
    t = abs(tr2(m))
    if kind is IsometryType.HYPERBOLIC:
        return surd_normalize(t, 1, t * t - 4, 2)
    if kind is IsometryType.GLIDE_REFLECTION:
        return surd_normalize(t, 1, t * t + 4, 2)
    raise NotFullyIrreducible(f"{m} is {kind.value}")
