"""Numeric realizations: Bloch-Wigner dilogarithm, entropy, log fingerprints.

Exact identities in the symbolic layer are double-checked by specializing the
variables to random complex (or real) numbers and evaluating a functional
that is known to kill the relevant relations: the Bloch-Wigner function D2
for five-term combinations, the Shannon-style entropy for four-term ones,
and plain antisymmetrized products of log-moduli for tensor shapes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .field import Field, RationalFunction
from .tensors import TensorElement, W2


def bloch_wigner(z, precision: int = 50):
    """D2(z) = Im Li2(z) + arg(1 - z) log|z|, extended by 0 on the reals."""
    with mpmath.workdps(precision):
        z = mpmath.mpmathify(z)
        if z == 0 or z == 1:
            return mpmath.mpf(0)
        if mpmath.im(z) == 0:
            return mpmath.mpf(0)
        val = mpmath.im(mpmath.polylog(2, z)) + mpmath.arg(1 - z) * mpmath.log(abs(z))
        return val


def entropy(x, precision: int = 50):
    """H(x) = -x log|x| - (1-x) log|1-x| for real x outside {0, 1}."""
    with mpmath.workdps(precision):
        x = mpmath.mpf(x)
        return -x * mpmath.log(abs(x)) - (1 - x) * mpmath.log(abs(1 - x))


@dataclass(frozen=True)
class Specialization:
    """A numeric point for the field generators, at a working precision."""

    values: tuple
    precision: int = 50

    def __call__(self, f: RationalFunction):
        with mpmath.workdps(self.precision):
            return f.eval_numeric(self.values)


@dataclass
class NumericVerdict:
    passed: bool
    max_residual: float
    samples: int
    tolerance: float
    note: str = ""


def sample_specialization(
    field: Field,
    rng,
    avoid_degenerate: Sequence[RationalFunction] = (),
    precision: int = 50,
    real: bool = False,
    box: float = 2.0,
    disc: float = 0.05,
    max_tries: int = 100,
) -> Specialization:
    """Random point with every listed function finite and off the discs
    around 0 and 1.  Real points are drawn when the target functional (say
    entropy) only makes sense on the reals."""
    with mpmath.workdps(precision):
        for _ in range(max_tries):
            vals = []
            for _ in range(field.k):
                re = mpmath.mpf(rng.uniform(-box, box))
                if real:
                    vals.append(re)
                else:
                    vals.append(mpmath.mpc(re, mpmath.mpf(rng.uniform(-box, box))))
            spec = Specialization(tuple(vals), precision)
            ok = True
            for f in avoid_degenerate:
                try:
                    v = spec(f)
                except ZeroDivisionError:
                    ok = False
                    break
                if abs(v) < disc or abs(v - 1) < disc:
                    ok = False
                    break
            if ok:
                return spec
    raise RuntimeError(f"no valid specialization found in {max_tries} tries")


def realize_B2(element, spec: Specialization):
    """sum_i c_i D2(x_i(s)) for a B2 element with rational coefficients."""
    with mpmath.workdps(spec.precision):
        total = mpmath.mpf(0)
        for x, c in element.terms.items():
            total += mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) * bloch_wigner(
                spec(x), spec.precision
            )
        return total


def realize_betaD_D2(element, spec: Specialization):
    """sum_i c_i(s) D2(x_i(s)); complex when the coefficients are."""
    with mpmath.workdps(spec.precision):
        total = mpmath.mpc(0)
        for x, c in element.terms.items():
            total += spec(c) * bloch_wigner(spec(x), spec.precision)
        return total


def realize_entropy(element, spec: Specialization):
    """Entropy realization of a weight-2 element: sum c(s) mu(x)(s) H(x(s)).

    Requires a real specialization; the mu factor converts square-bracket
    generators back to angle-bracket scale, where entropy satisfies the
    four-term equation.
    """
    D = element.ctx.derivation
    with mpmath.workdps(spec.precision):
        total = mpmath.mpf(0)
        for x, c in element.terms.items():
            total += spec(c) * spec(D.mu(x)) * entropy(spec(x), spec.precision)
        return total


def realize_beta2_entropy(element, spec: Specialization):
    """Entropy realization of an angle-bracket element: sum c(s) H(x(s))."""
    with mpmath.workdps(spec.precision):
        total = mpmath.mpf(0)
        for x, c in element.terms.items():
            total += spec(c) * entropy(spec(x), spec.precision)
        return total


def log_fingerprint(el: TensorElement, specs: Sequence[Specialization]):
    """Numeric linear functional on a tensor element from its raw terms.

    Coefficients evaluate at specs[0] (field-coefficient shapes only); each
    multiplicative leg contributes log|leg| evaluated at one of the remaining
    points, antisymmetrized over leg order for wedge shapes.  Kills torsion,
    respects exponent linearity, and vanishes on wedge squares, so it is an
    independent probe of canonical-form equality.
    """
    legs = el.shape.legs
    want = legs + (1 if el.shape.left == "F" else 0)
    if len(specs) != want:
        raise ValueError(f"need {want} specializations, got {len(specs)}")
    precision = specs[0].precision
    if el.shape.left == "F":
        s0, leg_specs = specs[0], specs[1:]
    else:
        s0, leg_specs = None, specs
    with mpmath.workdps(precision):
        total = mpmath.mpc(0)
        for coeff, leg_tuple in el.raw:
            if s0 is not None:
                c = s0(coeff)
            else:
                c = mpmath.mpf(coeff.numerator) / mpmath.mpf(coeff.denominator)
            if el.shape.wedge or el.shape == W2:
                acc = mpmath.mpc(0)
                for perm in itertools.permutations(range(legs)):
                    sign = _perm_sign(perm)
                    prod = mpmath.mpc(1)
                    for j, p in enumerate(perm):
                        prod *= mpmath.log(abs(leg_specs[p](leg_tuple[j])))
                    acc += sign * prod
                total += c * acc
            else:
                prod = mpmath.mpc(1)
                for j in range(legs):
                    prod *= mpmath.log(abs(leg_specs[j](leg_tuple[j])))
                total += c * prod
        return total


def _perm_sign(p) -> int:
    inv = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return -1 if inv % 2 else 1
