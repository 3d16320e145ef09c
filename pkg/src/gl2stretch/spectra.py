"""Per-matrix certificates ``mu <= lambda`` and ``lambda / mu < 10``, and sweeps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .exactnum import DEFAULT_BITS, QuadSurd, RealInterval
from .gl2core import IsometryType, Mat2, classify, mu_stretch
from .penner import HandlebodyStretch, handlebody_stretch
from .standardform import Kind, Mode, StandardForm, assemble, canonical_form, standard_form

# certificates are only issued when the ratio clears the threshold by this much
SEPARATION = Fraction(1, 1 << 32)


@dataclass(frozen=True)
class SpectraReport:
    input: Mat2
    isometry: IsometryType
    sform: StandardForm
    mu: QuadSurd
    stretch: HandlebodyStretch
    ratio: RealInterval
    cert_lower: bool
    cert_ten: bool

    @property
    def lam(self) -> RealInterval:
        return self.stretch.lambda_interval

    @property
    def separation(self) -> Fraction:
        """Distance from the ratio enclosure to the nearer of 1 and 10."""
        return min(self.ratio.lo - 1, 10 - self.ratio.hi)

    def to_json(self) -> dict:
        return {
            "input": str(self.input),
            "isometry": self.isometry.value,
            "sform": self.sform.to_json(),
            "mu": self.mu.to_json(),
            "mu_approx": float(self.mu),
            "lambda": self.stretch.to_json(),
            "ratio": self.ratio.to_json(),
            "ratio_approx": float(self.ratio.mid),
            "cert_lower": self.cert_lower,
            "cert_ten": self.cert_ten,
        }


def _report(m: Mat2, sf: StandardForm, precision_bits: int) -> SpectraReport:
    mu = mu_stretch(m)
    hs = handlebody_stretch(sf, precision_bits)
    ratio = hs.lambda_interval.div(mu.interval(precision_bits + 4), precision_bits)
    return SpectraReport(
        input=m,
        isometry=classify(m),
        sform=sf,
        mu=mu,
        stretch=hs,
        ratio=ratio,
        cert_lower=ratio.lo - 1 >= SEPARATION,
        cert_ten=10 - ratio.hi >= SEPARATION,
    )


def report(m: Mat2, precision_bits: int = DEFAULT_BITS) -> SpectraReport:
    """Certificate for ``m``.

    The Penner word depends on which cyclic rotation of the standard form it
    is built from; the lift here uses the GL2-canonical rotation, so the
    result is a conjugacy invariant.
    """
    return _report(m, lift_form(m), precision_bits)


def lift_form(m: Mat2) -> StandardForm:
    """Standard form used to build the Penner lift of ``m``."""
    return canonical_form(standard_form(m), Mode.GL2)


def report_form(sf: StandardForm, precision_bits: int = DEFAULT_BITS) -> SpectraReport:
    return _report(assemble(sf), sf, precision_bits)


def standard_forms(max_syllables: int, max_exponent: int) -> Iterator[StandardForm]:
    """Every standard form with at most ``max_syllables`` exponents in
    ``[1, max_exponent]``, glides at odd lengths, hyperbolic at even, both signs."""
    for length in range(1, max_syllables + 1):
        kind = Kind.GLIDE if length % 2 else Kind.HYPERBOLIC
        for exps in itertools.product(range(1, max_exponent + 1), repeat=length):
            for sign in (1, -1):
                yield StandardForm(sign, exps, kind)


@dataclass
class SweepSummary:
    max_syllables: int
    max_exponent: int
    count: int = 0
    forms: int = 0
    failures: list[dict] = field(default_factory=list)
    max_ratio: RealInterval | None = None
    argmax_form: StandardForm | None = None
    min_ratio: RealInterval | None = None
    argmin_form: StandardForm | None = None
    min_separation: Fraction | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "forms": self.forms,
            "failures": self.failures,
            "max_ratio": self.max_ratio.to_json() if self.max_ratio else None,
            "max_ratio_approx": float(self.max_ratio.mid) if self.max_ratio else None,
            "argmax_form": self.argmax_form.to_json() if self.argmax_form else None,
            "min_ratio": self.min_ratio.to_json() if self.min_ratio else None,
            "min_ratio_approx": float(self.min_ratio.mid) if self.min_ratio else None,
            "argmin_form": self.argmin_form.to_json() if self.argmin_form else None,
            "min_separation_log2": (
                self.min_separation.numerator.bit_length()
                - self.min_separation.denominator.bit_length()
                if self.min_separation and self.min_separation > 0
                else None
            ),
        }


def sweep(
    max_syllables: int, max_exponent: int, precision_bits: int = DEFAULT_BITS
) -> SweepSummary:
    """Certify ``1 < lambda/mu < 10`` on every standard form in range.

    ``count`` counts signed forms; ``forms`` counts exponent sequences (each
    appears once per sign).
    """
    out = SweepSummary(max_syllables, max_exponent)
    for sf in standard_forms(max_syllables, max_exponent):
        out.count += 1
        if sf.sign > 0:
            out.forms += 1
        rep = report_form(sf, precision_bits)
        if not (rep.cert_lower and rep.cert_ten):
            out.failures.append({"form": sf.to_json(), "ratio": rep.ratio.to_json()})
        if out.max_ratio is None or rep.ratio.mid > out.max_ratio.mid:
            out.max_ratio, out.argmax_form = rep.ratio, sf
        if out.min_ratio is None or rep.ratio.mid < out.min_ratio.mid:
            out.min_ratio, out.argmin_form = rep.ratio, sf
        sep = rep.separation
        if out.min_separation is None or sep < out.min_separation:
            out.min_separation = sep
    return out
