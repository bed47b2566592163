"""Polylogarithmic groups in weights two and three, with their boundaries.

Three flavors of generator coexist here and the bracket shapes keep them
apart: [x] spans the classical scissors-congruence style group with rational
coefficients, <x> spans its infinitesimal version with coefficients in F,
and [[x]] is the image of [x] under the derivation-twisted map
[x] |-> (D(x)/(x(1-x))) <x>, which is where most of the torsion-free
computations happen.  A [[x]] generator is zero exactly when D kills x, and
the constructors apply that rule so that linear algebra downstream never
sees phantom generators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

import mpmath

from .derivation import Derivation
from .field import CoprimeBase, Field, RationalFunction
from .tensors import FXFX, DlogCoeff, F_W, TensorElement, W2
from . import realizations


@dataclass(frozen=True, eq=False)
class Context:
    """The ambient data every computation threads through: the field, one
    absolute derivation on it, and the shared multiplicative atom base."""

    field: Field
    derivation: Derivation
    base: CoprimeBase


def make_context(names: Tuple[str, ...] = ("t1", "t2"), derivation: Optional[Derivation] = None) -> Context:
    field = Field(names)
    if derivation is None:
        if field.k >= 2:
            derivation = Derivation.special_two_variable(field)
        else:
            g = field.gen(0)
            derivation = Derivation(field, (g * (field.one - g),))
    return Context(field, derivation, CoprimeBase(field))


def _as_rf(ctx: Context, v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    return ctx.field.from_fraction(v)


def _degenerate(x: RationalFunction) -> bool:
    return x.is_zero() or x.is_one()


def _dlog_times(ctx: Context, c, arg):
    """c * Dlog(arg), kept formal whenever c is a rational constant (the
    common case throughout), expanded otherwise."""
    if not isinstance(arg, RationalFunction):
        arg = arg.as_rf()
    rf = ctx.derivation.dlog(arg)
    c = _as_rf(ctx, c)
    if c.is_constant():
        out = DlogCoeff(ctx.field)
        out.add_dlog(c.constant_value(), arg, rf)
        return out
    return c * rf


# ---------------------------------------------------------------------------
# Group elements
# ---------------------------------------------------------------------------


class B2Element:
    """Rational combinations of [x]; the arguments 0 and 1 give the zero
    generator and are silently dropped."""

    def __init__(self, ctx: Context, terms: Iterable = ()):
        self.ctx = ctx
        self.terms: dict[RationalFunction, Fraction] = {}
        for c, x in terms:
            self._add(Fraction(c), x)

    def _add(self, c: Fraction, x: RationalFunction):
        if not c or _degenerate(x):
            return
        new = self.terms.get(x, Fraction(0)) + c
        if new:
            self.terms[x] = new
        else:
            self.terms.pop(x, None)

    def __add__(self, other: "B2Element") -> "B2Element":
        out = B2Element(self.ctx)
        for x, c in self.terms.items():
            out._add(c, x)
        for x, c in other.terms.items():
            out._add(c, x)
        return out

    def __neg__(self) -> "B2Element":
        out = B2Element(self.ctx)
        out.terms = {x: -c for x, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "B2Element":
        q = Fraction(q)
        out = B2Element(self.ctx)
        if q:
            out.terms = {x: c * q for x, c in self.terms.items()}
        return out

    def is_raw_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"B2<{len(self.terms)} terms>"


class Beta2Element:
    """F-linear combinations of <x>; degenerate arguments are rejected."""

    def __init__(self, ctx: Context, terms: Iterable = ()):
        self.ctx = ctx
        self.terms: dict[RationalFunction, RationalFunction] = {}
        for c, x in terms:
            self._add(_as_rf(ctx, c), x)

    def _add(self, c: RationalFunction, x: RationalFunction):
        if _degenerate(x):
            raise ValueError("degenerate generator: argument in {0, 1}")
        if c.is_zero():
            return
        new = self.terms.get(x, self.ctx.field.zero) + c
        if new.is_zero():
            self.terms.pop(x, None)
        else:
            self.terms[x] = new

    def __add__(self, other: "Beta2Element") -> "Beta2Element":
        out = Beta2Element(self.ctx)
        for x, c in self.terms.items():
            out._add(c, x)
        for x, c in other.terms.items():
            out._add(c, x)
        return out

    def __neg__(self) -> "Beta2Element":
        out = Beta2Element(self.ctx)
        out.terms = {x: -c for x, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"Beta2<{len(self.terms)} terms>"


class BetaDElement:
    """F-linear combinations of [[x]] in weight 2 or 3.

    Arguments 0 and 1 are rejected; an argument annihilated by D spans the
    zero subgroup (its angle-bracket scale factor vanishes identically) and
    is dropped on construction.
    """

    def __init__(self, ctx: Context, weight: int, terms: Iterable = ()):
        if weight not in (2, 3):
            raise ValueError("weight must be 2 or 3")
        self.ctx = ctx
        self.weight = weight
        self.terms: dict[RationalFunction, RationalFunction] = {}
        for c, x in terms:
            self._add(_as_rf(ctx, c), x)

    def _add(self, c: RationalFunction, x: RationalFunction):
        if _degenerate(x):
            raise ValueError("degenerate generator: argument in {0, 1}")
        if c.is_zero():
            return
        if self.ctx.derivation(x).is_zero():
            return
        new = self.terms.get(x, self.ctx.field.zero) + c
        if new.is_zero():
            self.terms.pop(x, None)
        else:
            self.terms[x] = new

    def _same(self, other: "BetaDElement"):
        if self.weight != other.weight or self.ctx is not other.ctx:
            raise ValueError("weight or context mismatch")

    def __add__(self, other: "BetaDElement") -> "BetaDElement":
        self._same(other)
        out = BetaDElement(self.ctx, self.weight)
        for x, c in self.terms.items():
            out._add(c, x)
        for x, c in other.terms.items():
            out._add(c, x)
        return out

    def __neg__(self) -> "BetaDElement":
        out = BetaDElement(self.ctx, self.weight)
        out.terms = {x: -c for x, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "BetaDElement":
        s = _as_rf(self.ctx, s)
        out = BetaDElement(self.ctx, self.weight)
        if not s.is_zero():
            out.terms = {x: c * s for x, c in self.terms.items()}
        return out

    def is_raw_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"BetaD{self.weight}<{len(self.terms)} terms>"


class MidElement:
    """Element of (beta2D (x) F^x) (+) (F (x) B2): the middle of weight 3.

    left keys are ([[a]]-argument, leg) with the leg sign-normalized (legs
    live mod torsion); right keys are B2 arguments with their accumulated
    F-coefficients.  Both sides apply their group's degeneracy rules.
    """

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.left: dict[tuple, RationalFunction] = {}
        self.right: dict[RationalFunction, DlogCoeff] = {}

    @staticmethod
    def _positive(leg: RationalFunction) -> RationalFunction:
        return -leg if leg.num.LC < 0 else leg

    def add_left(self, coeff: RationalFunction, a: RationalFunction, leg: RationalFunction):
        coeff = _as_rf(self.ctx, coeff)
        if coeff.is_zero():
            return
        if _degenerate(a):
            raise ValueError("degenerate generator: argument in {0, 1}")
        if self.ctx.derivation(a).is_zero():
            return
        if leg.is_zero():
            raise ValueError("zero in F^x")
        leg = self._positive(leg)
        if leg.is_one():
            return
        key = (a, leg)
        new = self.left.get(key, self.ctx.field.zero) + coeff
        if new.is_zero():
            self.left.pop(key, None)
        else:
            self.left[key] = new

    def add_right(self, coeff, y: RationalFunction):
        if _degenerate(y):
            return
        if not isinstance(coeff, DlogCoeff):
            coeff = _as_rf(self.ctx, coeff)
            if coeff.is_zero():
                return
            coeff = DlogCoeff(self.ctx.field, plain=coeff)
        elif coeff.is_formal_zero():
            return
        cur = self.right.get(y)
        new = coeff if cur is None else cur + coeff
        if new.is_formal_zero():
            self.right.pop(y, None)
        else:
            self.right[y] = new

    def __add__(self, other: "MidElement") -> "MidElement":
        out = MidElement(self.ctx)
        for (a, b), c in self.terms_left():
            out.add_left(c, a, b)
        for (a, b), c in other.terms_left():
            out.add_left(c, a, b)
        for y, x in self.terms_right():
            out.add_right(x, y)
        for y, x in other.terms_right():
            out.add_right(x, y)
        return out

    def __neg__(self) -> "MidElement":
        out = MidElement(self.ctx)
        out.left = {k: -c for k, c in self.left.items()}
        out.right = {y: -x for y, x in self.right.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "MidElement":
        s = _as_rf(self.ctx, s)
        out = MidElement(self.ctx)
        if not s.is_zero():
            out.left = {k: c * s for k, c in self.left.items()}
            for y, x in self.right.items():
                sx = x.scale(s)
                if isinstance(sx, RationalFunction):
                    sx = DlogCoeff(self.ctx.field, plain=sx)
                out.right[y] = sx
        return out

    def terms_left(self):
        return list(self.left.items())

    def terms_right(self):
        return list(self.right.items())

    def __repr__(self):
        return f"Mid<{len(self.left)} left, {len(self.right)} right>"


# ---------------------------------------------------------------------------
# Boundary maps
# ---------------------------------------------------------------------------


def delta2(e: B2Element) -> TensorElement:
    """[x] |-> (1-x) wedge x, extended over Q."""
    out = TensorElement(W2, e.ctx.base)
    one = e.ctx.field.one
    for x, c in e.terms.items():
        out.add_term(c, (one - x, x))
    return out


def cath2(e: Beta2Element) -> TensorElement:
    """<a> |-> a (x) a + (1-a) (x) (1-a), F-linearly, into F (x) F^x."""
    out = TensorElement(F_W(1), e.ctx.base)
    one = e.ctx.field.one
    for a, c in e.terms.items():
        out.add_term(c * a, (a,))
        out.add_term(c * (one - a), (one - a,))
    return out


def partialD2(e: BetaDElement) -> TensorElement:
    """[[a]] |-> -Dlog(1-a) (x) a + Dlog(a) (x) (1-a) on weight 2."""
    if e.weight != 2:
        raise ValueError("partialD2 acts on weight 2")
    one = e.ctx.field.one
    out = TensorElement(F_W(1), e.ctx.base)
    for a, c in e.terms.items():
        out.add_term(_dlog_times(e.ctx, -c, one - a), (a,))
        out.add_term(_dlog_times(e.ctx, c, a), (one - a,))
    return out


def partialD3(e: BetaDElement) -> MidElement:
    """[[a]] |-> [[a]]_2 (x) a + Dlog(a) (x) [a]_2 on weight 3."""
    if e.weight != 3:
        raise ValueError("partialD3 acts on weight 3")
    out = MidElement(e.ctx)
    for a, c in e.terms.items():
        out.add_left(c, a, a)
        out.add_right(_dlog_times(e.ctx, c, a), a)
    return out


def partialD_mid(e: MidElement) -> TensorElement:
    """[[a]]_2 (x) b |-> Dlog(1-a) (x) a^b - Dlog(a) (x) (1-a)^b and
    x (x) [y]_2 |-> x (x) (1-y)^y, into F (x) Wedge^2(F^x)."""
    one = e.ctx.field.one
    out = TensorElement(F_W(2), e.ctx.base)
    for (a, b), c in e.left.items():
        out.add_term(_dlog_times(e.ctx, c, one - a), (a, b))
        out.add_term(_dlog_times(e.ctx, -c, a), (one - a, b))
    for y, x in e.right.items():
        out.add_term(x, (one - y, y))
    return out


def tau2D(e: B2Element, ctx: Context) -> BetaDElement:
    """[x]_2 |-> [[x]]_2: the derivation-twisted projection from B2."""
    out = BetaDElement(ctx, 2)
    for x, c in e.terms.items():
        out._add(ctx.field.from_fraction(c), x)
    return out


# ---------------------------------------------------------------------------
# Relators
# ---------------------------------------------------------------------------


def transport(ctx: Context, pairs: Iterable, weight: int) -> BetaDElement:
    """Carry an angle-bracket relation sum c_i <x_i> into [[.]] generators.

    <x> = (x(1-x)/D(x)) [[x]], so each pair (c, x) contributes the
    coefficient c x (1-x)/D(x).  A pair whose argument is killed by D has no
    angle-to-double-bracket conversion; that is reported, not guessed around.
    """
    out = BetaDElement(ctx, weight)
    one = ctx.field.one
    for c, x in pairs:
        c = _as_rf(ctx, c)
        if c.is_zero():
            continue
        if _degenerate(x):
            raise ValueError(f"degenerate relator argument: {x}")
        dx = ctx.derivation(x)
        if dx.is_zero():
            raise ValueError("transport undefined: derivation annihilates an argument")
        out._add(c * x * (one - x) / dx, x)
    return out


def _five_term_args(a: RationalFunction, b: RationalFunction):
    one = a.field.one
    return (
        a,
        b,
        b / a,
        (one - b) / (one - a),
        (one - one / b) / (one - one / a),
    )


def relator(ctx: Context, kind: str, **params):
    """Named relator combinations; invalid parameters raise with the
    violated constraint spelled out."""
    f = _RELATORS.get(kind)
    if f is None:
        raise ValueError(f"unknown relator kind: {kind!r} (have {sorted(_RELATORS)})")
    return f(ctx, **params)


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(f"degenerate relator parameters: {msg}")


def _rel_five_term_B2(ctx, a, b):
    _need(not _degenerate(a) and not _degenerate(b), "a, b must avoid {0, 1}")
    _need(a != b, "a != b required")
    args = _five_term_args(a, b)
    return B2Element(ctx, zip((1, -1, 1, -1, 1), args))


def _rel_five_term_betaD(ctx, a, b):
    _need(not _degenerate(a) and not _degenerate(b), "a, b must avoid {0, 1}")
    _need(a != b, "a != b required")
    args = _five_term_args(a, b)
    return BetaDElement(ctx, 2, zip((1, -1, 1, -1, 1), args))


def _rel_four_term_beta2(ctx, a, b):
    _need(not _degenerate(a) and not _degenerate(b), "a, b must avoid {0, 1}")
    _need(a != b, "a != b required")
    one = ctx.field.one
    return Beta2Element(
        ctx,
        [
            (one, a),
            (-one, b),
            (a, b / a),
            (one - a, (one - b) / (one - a)),
        ],
    )


def _rel_two_term(ctx, a):
    _need(not _degenerate(a), "a must avoid {0, 1}")
    one = ctx.field.one
    return BetaDElement(ctx, 2, [(1, a), (1, one - a)])


def _rel_inversion(ctx, a):
    _need(not _degenerate(a), "a must avoid {0, 1}")
    one = ctx.field.one
    return BetaDElement(ctx, 2, [(1, a), (1, one / a)])


def _rel_distribution2(ctx, a):
    _need(not _degenerate(a), "a must avoid {0, 1}")
    _need(not (-a).is_one(), "a != -1 required")
    return BetaDElement(ctx, 2, [(1, a * a), (-2, a), (-2, -a)])


def _rel_three_term_beta3(ctx, a):
    _need(not _degenerate(a), "a must avoid {0, 1}")
    one = ctx.field.one
    return transport(ctx, [(one, one - a), (-one, a), (a, one - one / a)], 3)


def _rel_twenty_two_term(ctx, a, b, c):
    for name, v in (("a", a), ("b", b), ("c", c)):
        _need(not _degenerate(v), f"{name} must avoid {{0, 1}}")
    _need(a != b, "a != b required")
    one = ctx.field.one
    pairs = [
        (c, a),
        (-c, b),
        (a - b + one, c),
        (one - c, one - a),
        (-(one - c), one - b),
        (b - a, one - c),
        (-a, c / a),
        (b, c / b),
        (c * a, b / a),
        (-(one - a), (one - c) / (one - a)),
        (one - b, (one - c) / (one - b)),
        (c * (one - a), (one - b) / (one - a)),
        (c * (one - a), a * (one - c) / (c * (one - a))),
        (-(c * (one - b)), b * (one - c) / (c * (one - b))),
        (-b, c * a / b),
        ((one - c) * a, (a - b) / a),
        ((one - c) * (one - a), (b - a) / (one - a)),
        (-(a - b), (one - c) * a / (a - b)),
        (-(one - b), c * (one - a) / (one - b)),
        (-(b - a), (one - c) * (one - a) / (b - a)),
        (c * (a - b), (one - c) * b / (c * (a - b))),
        (c * (b - a), (one - c) * (one - b) / (c * (b - a))),
    ]
    for _, x in pairs:
        _need(not _degenerate(x), f"argument {x} lands in {{0, 1}}")
    return transport(ctx, pairs, 3)


_RELATORS = {
    "five_term_B2": _rel_five_term_B2,
    "five_term_betaD": _rel_five_term_betaD,
    "four_term_beta2": _rel_four_term_beta2,
    "two_term": _rel_two_term,
    "inversion": _rel_inversion,
    "distribution2": _rel_distribution2,
    "three_term_beta3": _rel_three_term_beta3,
    "twenty_two_term": _rel_twenty_two_term,
}


# ---------------------------------------------------------------------------
# Equality in the middle group
# ---------------------------------------------------------------------------


@dataclass
class VerdictWithEvidence:
    passed: bool
    tier1_exact: bool
    tier2_exact: bool
    numeric_max: float
    samples: int
    notes: Tuple[str, ...] = ()


def mid_left_tier1(e: MidElement) -> TensorElement:
    """partialD2 (x) id on the left summand, landing in F (x) F^x (x) F^x.

    The left factor embeds under its boundary, so exact equality here decides
    equality of left summands; no wedge is taken, slots stay ordered.
    """
    one = e.ctx.field.one
    out = TensorElement(FXFX, e.ctx.base)
    for (a, b), c in e.left.items():
        out.add_term(_dlog_times(e.ctx, -c, one - a), (a, b))
        out.add_term(_dlog_times(e.ctx, c, a), (one - a, b))
    return out


def mid_right_delta2(e: MidElement) -> TensorElement:
    """id (x) delta2 on the right summand, landing in F (x) Wedge^2(F^x)."""
    one = e.ctx.field.one
    out = TensorElement(F_W(2), e.ctx.base)
    for y, x in e.right.items():
        out.add_term(x, (one - y, y))
    return out


def verify_mid_equal(
    e1: MidElement,
    e2: MidElement,
    trials: int = 5,
    rng=None,
    tol: float = 1e-10,
    precision: int = 50,
) -> VerdictWithEvidence:
    """Decide e1 = e2 in (beta2D (x) F^x) (+) (F (x) B2).

    Tier 1 settles the left summand exactly.  The right summand sits in a
    group with relations, so its difference is checked two ways: the wedge
    image must vanish exactly, and the Bloch-Wigner realization must vanish
    numerically at `trials` random specializations (the wedge kernel is
    spanned by five-term combinations, on which D2 vanishes identically).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rng or random.Random(0)
    diff = e1 - e2
    notes = []
    t1 = mid_left_tier1(diff).is_zero()
    if not t1:
        notes.append("left summands differ under partialD2 (x) id")
    t2 = mid_right_delta2(diff).is_zero()
    if not t2:
        notes.append("right summands differ under id (x) delta2")

    field = e1.ctx.field
    worst = 0.0
    used = 0
    # D2 is bounded and continuous on the whole sphere, so the sample point
    # only has to clear actual poles; a tight disc keeps hundreds of guards
    # satisfiable.  Dedupe because the same argument recurs across terms.
    guards: dict = {}
    for y, x in diff.right.items():
        if not y.is_constant():
            guards.setdefault(y)
        for rf in x.guard_rfs():
            if not rf.is_constant():
                guards.setdefault(rf)
    for _ in range(trials):
        spec = realizations.sample_specialization(
            field, rng,
            avoid_degenerate=list(guards),
            precision=precision,
            disc=1e-6,
        )
        with mpmath.workdps(precision):
            total = mpmath.mpc(0)
            for y, x in diff.right.items():
                total += spec(x) * realizations.bloch_wigner(spec(y), precision)
            resid = float(abs(total))
        worst = max(worst, resid)
        used += 1
    numeric_ok = worst < tol
    if not numeric_ok:
        notes.append(f"dilogarithm realization residual {worst:.3e} exceeds {tol:.1e}")
    return VerdictWithEvidence(
        passed=t1 and t2 and numeric_ok,
        tier1_exact=t1,
        tier2_exact=t2,
        numeric_max=worst,
        samples=used,
        notes=tuple(notes),
    )
