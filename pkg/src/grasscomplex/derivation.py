"""Absolute derivations D: F -> F given on generators, with Dlog.

A derivation is determined by its images D(t_i); it extends to all of F by
linearity and the Leibniz/quotient rules and vanishes on constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import Field, RationalFunction, normalize_rf


@dataclass(frozen=True)
class Derivation:
    field: Field
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.field.k:
            raise ValueError("derivation arity does not match field")

    @staticmethod
    def from_strings(field: Field, image_texts: Sequence[str]) -> "Derivation":
        return Derivation(field, tuple(field.parse(s) for s in image_texts))

    @staticmethod
    def partial(field: Field, i: int = 0) -> "Derivation":
        """The plain partial derivative d/dt_i."""
        imgs = [field.zero] * field.k
        imgs[i] = field.one
        return Derivation(field, tuple(imgs))

    @staticmethod
    def special_two_variable(field: Field, i: int = 0, j: int = 1) -> "Derivation":
        """D = t_i(1 - t_i) d/dt_i + t_j(1 - t_j) d/dt_j.

        The derivation that kills the fifth cross-ratio of the standard
        five-point configuration, turning the five-term element into the
        four-term one.
        """
        imgs = [field.zero] * field.k
        ti, tj = field.gen(i), field.gen(j)
        imgs[i] = ti * (field.one - ti)
        imgs[j] = tj * (field.one - tj)
        return Derivation(field, tuple(imgs))

    def __call__(self, f: RationalFunction) -> RationalFunction:
        return self.derive(f)

    def derive(self, f: RationalFunction) -> RationalFunction:
        """D(f) = sum_i (df/dt_i) D(t_i), via the quotient rule in one pass."""
        ring = self.field.ring
        # D(num/den) = (D(num) den - num D(den)) / den^2 with
        # D(p) = sum_i p.diff(t_i) * images[i].
        num_d = self.field.zero
        den_d = self.field.zero
        for i, g in enumerate(self.field._gens):
            img = self.images[i]
            if img.is_zero():
                continue
            pn = f.num.diff(g)
            if pn:
                num_d = num_d + RationalFunction(self.field, pn, ring.one) * img
            pd = f.den.diff(g)
            if pd:
                den_d = den_d + RationalFunction(self.field, pd, ring.one) * img
        den_rf = RationalFunction(self.field, f.den, ring.one)
        num_rf = RationalFunction(self.field, f.num, ring.one)
        return (num_d * den_rf - num_rf * den_d) / (den_rf * den_rf)

    def dlog(self, f: RationalFunction) -> RationalFunction:
        if f.is_zero():
            raise ZeroDivisionError("dlog of zero")
        return self.derive(f) / f

    def mu(self, a: RationalFunction) -> RationalFunction:
        """D(a)/(a(1-a)), the scale relating [a]-type and <a>-type generators."""
        one = self.field.one
        return self.derive(a) / (a * (one - a))
