"""Tensor spaces built from F and the multiplicative group F^x.

Supported shapes: F (x) Wedge^m(F^x) for m = 1..4, the non-wedge
F (x) F^x (x) F^x, and the coefficient-free Wedge^2(F^x).  Elements keep
their raw terms; canonical forms over a shared coprime base are computed
lazily and invalidated whenever the base refines (version stamps).  All
multiplicative legs live modulo torsion, so signs and the constants +-1
vanish and exponents linearize into the coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .field import CoprimeBase, RationalFunction, normalize_rf


@dataclass(frozen=True)
class Shape:
    left: str  # "F" (field coefficients) or "Q" (rational coefficients)
    legs: int
    wedge: bool

    def __str__(self):
        if self.left == "Q":
            return f"Wedge^{self.legs}(Fx)"
        if self.legs == 1:
            return "F(x)Fx"
        op = "Wedge" if self.wedge else "(x)"
        if self.wedge:
            return f"F(x)Wedge^{self.legs}(Fx)"
        return "F(x)Fx(x)Fx"


def F_W(m: int) -> Shape:
    """F (x) Wedge^m(F^x); m = 1 is plain F (x) F^x."""
    if not 1 <= m <= 4:
        raise ValueError("wedge arity out of range")
    return Shape("F", m, True)


FXFX = Shape("F", 2, False)
W2 = Shape("Q", 2, True)


class DlogCoeff:
    """F-coefficient kept as a formal combination sum q_i dlog(g_i) with
    rational q_i, plus an optional free rational-function part.

    dlog is additive along any multiplicative factorization, whatever the
    derivation, so these coefficients canonicalize to exact rational vectors
    over the atom base with no polynomial arithmetic at all.  The expanded
    rational function is only built on demand (display, or as the exact
    fallback when a vector refuses to cancel).
    """

    __slots__ = ("field", "terms", "plain")

    def __init__(self, field, terms=None, plain=None):
        self.field = field
        # g -> (q, dlog g); the rational function is fixed by g and the
        # derivation in play, so merging keeps the first copy
        self.terms: dict = {} if terms is None else terms
        self.plain = field.zero if plain is None else plain

    def add_dlog(self, q, g, rf) -> None:
        """Builder: add q * dlog(g), where rf is dlog(g) under the ambient
        derivation.  Arguments the derivation kills contribute nothing."""
        q = Fraction(q)
        if not q or rf.is_zero():
            return
        old = self.terms.get(g)
        if old is None:
            self.terms[g] = (q, rf)
        else:
            nq = old[0] + q
            if nq:
                self.terms[g] = (nq, old[1])
            else:
                del self.terms[g]

    def __add__(self, other: "DlogCoeff") -> "DlogCoeff":
        out = DlogCoeff(self.field, dict(self.terms), self.plain)
        for g, (q, rf) in other.terms.items():
            out.add_dlog(q, g, rf)
        if not other.plain.is_zero():
            out.plain = out.plain + other.plain
        return out

    def __neg__(self) -> "DlogCoeff":
        terms = {g: (-q, rf) for g, (q, rf) in self.terms.items()}
        return DlogCoeff(self.field, terms, -self.plain)

    def scale(self, s):
        """Scale by a rational constant, staying formal; scaling by a real
        function collapses to a plain coefficient."""
        if isinstance(s, RationalFunction):
            if not s.is_constant():
                return self.as_rf() * s
            s = s.constant_value()
        s = Fraction(s)
        if not s:
            return DlogCoeff(self.field)
        terms = {g: (q * s, rf) for g, (q, rf) in self.terms.items()}
        plain = self.plain if self.plain.is_zero() else self.plain * self.field.from_fraction(s)
        return DlogCoeff(self.field, terms, plain)

    def is_formal_zero(self) -> bool:
        return not self.terms and self.plain.is_zero()

    def as_rf(self) -> RationalFunction:
        total = self.plain
        for g, (q, rf) in self.terms.items():
            total = total + rf * self.field.from_fraction(q)
        return total

    def eval_numeric(self, values):
        total = self.plain.eval_numeric(values) if not self.plain.is_zero() else 0
        for g, (q, rf) in self.terms.items():
            total = total + q.numerator * rf.eval_numeric(values) / q.denominator
        return total

    def guard_rfs(self):
        """Rational functions whose poles a specialization must dodge."""
        out = [rf for _, rf in self.terms.values()]
        if not self.plain.is_zero():
            out.append(self.plain)
        return out

    def __repr__(self):
        n = len(self.terms)
        return f"DlogCoeff<{n} dlog terms{'' if self.plain.is_zero() else ' + plain'}>"


class TensorElement:
    """Lazily canonicalized element of one of the shapes above.

    Raw terms are (coefficient, leg tuple) pairs; addition just concatenates.
    The canonical form is a dict keyed by atom index tuples, recomputed when
    the shared base has refined since it was last built.
    """

    __slots__ = ("shape", "base", "raw", "_canon", "_stamp")

    def __init__(self, shape: Shape, base: CoprimeBase, raw=()):
        self.shape = shape
        self.base = base
        self.raw = list(raw)
        self._canon = None
        self._stamp = -1

    # -- construction and linear structure -----------------------------------

    def _check_coeff(self, coeff):
        if self.shape.left == "F":
            if not isinstance(coeff, (RationalFunction, DlogCoeff)):
                coeff = self.base.field.from_fraction(coeff)
            return coeff
        return Fraction(coeff)

    def add_term(self, coeff, legs) -> None:
        legs = tuple(legs)
        if len(legs) != self.shape.legs:
            raise ValueError(f"expected {self.shape.legs} legs, got {len(legs)}")
        for leg in legs:
            if not isinstance(leg, RationalFunction):
                raise TypeError("legs must be field elements")
            if leg.is_zero():
                raise ValueError("zero in F^x")
        coeff = self._check_coeff(coeff)
        if _coeff_is_zero(coeff):
            return
        self.raw.append((coeff, legs))
        self._canon = None

    def _compatible(self, other: "TensorElement"):
        if self.shape != other.shape or self.base is not other.base:
            raise ValueError("shape or base mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._compatible(other)
        return TensorElement(self.shape, self.base, self.raw + other.raw)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.shape, self.base, [(-c, legs) for c, legs in self.raw])

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, s) -> "TensorElement":
        s = self._check_coeff(s)
        if _coeff_is_zero(s):
            return TensorElement(self.shape, self.base)
        scaled = []
        for c, legs in self.raw:
            if isinstance(c, DlogCoeff):
                scaled.append((c.scale(s), legs))
            else:
                scaled.append((s * c, legs))
        return TensorElement(self.shape, self.base, scaled)

    # -- canonicalization -----------------------------------------------------

    def canon(self) -> dict:
        """Key -> coefficient accumulator over registered atoms.

        For F-coefficient shapes the values are _Slot objects.  Formal dlog
        coefficients reduce to rational vectors over the atoms (dlog is
        additive along the factorization), plain rational-function parts keep
        a shared-denominator representation; gcd work only ever happens
        registering the legs and denominators themselves.
        """
        if self._canon is not None and self._stamp == self.base.version:
            return self._canon
        # Register legs and coefficient denominators first; afterwards
        # factoring cannot refine the base, so atom indices stay valid.
        for coeff, legs in self.raw:
            self.base.register(legs)
            if isinstance(coeff, RationalFunction):
                self.base.register([coeff.denominator().as_rf()])
            elif isinstance(coeff, DlogCoeff):
                regs = []
                for g, (_, rf) in coeff.terms.items():
                    regs.append(g)
                    regs.append(rf.denominator().as_rf())
                if not coeff.plain.is_zero():
                    regs.append(coeff.plain.denominator().as_rf())
                if regs:
                    self.base.register(regs)
        acc: dict = {}
        for coeff, legs in self.raw:
            factored = [self.base.factor(leg).items() for leg in legs]
            den_exps = None
            vec_unit = None
            dlog_list = None
            plain_pair = None
            if isinstance(coeff, RationalFunction):
                den_exps = self.base.factor(coeff.denominator().as_rf())
            elif isinstance(coeff, DlogCoeff):
                vec_unit = {}
                dlog_list = []
                for g, (q, rf) in coeff.terms.items():
                    for a, e in self.base.factor(g).items():
                        if a < 0:
                            continue  # dlog of a constant vanishes
                        nv = vec_unit.get(a, _F0) + q * e
                        if nv:
                            vec_unit[a] = nv
                        else:
                            vec_unit.pop(a, None)
                    dlog_list.append((q, rf))
                if not coeff.plain.is_zero():
                    plain_pair = (
                        coeff.plain.num,
                        self.base.factor(coeff.plain.denominator().as_rf()),
                    )
            for combo in itertools.product(*factored):
                atoms = tuple(a for a, _ in combo)
                weight = 1
                for _, e in combo:
                    weight *= e
                if self.shape.wedge:
                    if len(set(atoms)) < len(atoms):
                        continue
                    weight *= _wedge_sign(atoms)
                    key = tuple(sorted(atoms))
                else:
                    key = atoms
                if self.shape.left == "Q":
                    new = acc.get(key, Fraction(0)) + coeff * weight
                    if new:
                        acc[key] = new
                    else:
                        acc.pop(key, None)
                    continue
                slot = acc.get(key)
                if slot is None:
                    slot = acc[key] = _Slot(self.base)
                if den_exps is not None:
                    slot.add_plain(coeff.num * weight, den_exps)
                else:
                    slot.add_dlog(vec_unit, dlog_list, weight)
                    if plain_pair is not None:
                        slot.add_plain(plain_pair[0] * weight, plain_pair[1])
        if self.shape.left == "F":
            acc = {k: v for k, v in acc.items() if not v.is_zero()}
        self._canon = acc
        self._stamp = self.base.version
        return acc

    def is_zero(self) -> bool:
        return not self.canon()

    def equals(self, other: "TensorElement") -> bool:
        return (self - other).is_zero()

    def canonical_items(self):
        """Sorted (coefficient, atom string tuple) pairs, stable per run."""
        out = []
        for key, coeff in self.canon().items():
            if isinstance(coeff, _Slot):
                coeff = coeff.value()
            out.append((tuple(self.base.atom_str(a) for a in key), coeff))
        out.sort(key=lambda t: t[0])
        return [(c, names) for names, c in out]

    def serialize(self) -> str:
        lines = [str(self.shape)]
        for coeff, names in self.canonical_items():
            lines.append(f"({coeff}) [{', '.join(names)}]")
        return "\n".join(lines)

    def __repr__(self):
        n = len(self.raw)
        return f"TensorElement<{self.shape}, {n} raw terms>"


_F0 = Fraction(0)


class _Slot:
    """Per-key coefficient accumulator inside a canonical form.

    Formal dlog parts live in `vec`, an exact rational vector over poly
    atoms; anything else goes through the shared-denominator path.  An empty
    vector with no plain items is a certified zero for every derivation.  A
    nonzero vector can still collapse for the derivation at hand (it may
    kill some atom outright), so the verdict then falls back to expanding
    the stored dlog values exactly.
    """

    __slots__ = ("base", "vec", "dlogs", "plain")

    def __init__(self, base: CoprimeBase):
        self.base = base
        self.vec: dict = {}
        self.dlogs: list = []
        self.plain: list = []

    def add_dlog(self, vec_unit: dict, dlog_list: list, weight: int) -> None:
        for a, q in vec_unit.items():
            nv = self.vec.get(a, _F0) + q * weight
            if nv:
                self.vec[a] = nv
            else:
                self.vec.pop(a, None)
        for q, rf in dlog_list:
            self.dlogs.append((q * weight, rf))

    def add_plain(self, num, den_exps: dict) -> None:
        self.plain.append((num, den_exps))

    def _expand(self) -> "_CoeffAcc":
        acc = _CoeffAcc(self.base)
        for num, den in self.plain:
            acc.add(num, den)
        field = self.base.field
        for q, rf in self.dlogs:
            val = rf * field.from_fraction(q)
            if val.is_zero():
                continue
            acc.add(val.num, self.base.factor(val.denominator().as_rf()))
        return acc

    def is_zero(self) -> bool:
        if not self.vec and not self.plain:
            return True
        return self._expand().is_zero()

    def value(self) -> RationalFunction:
        return self._expand().value()

    def __repr__(self):
        return f"Slot<{len(self.vec)} vec, {len(self.dlogs)} dlog, {len(self.plain)} plain>"


class _CoeffAcc:
    """Field-coefficient sum held over a common denominator.

    The denominator is tracked as an exponent vector over base atoms (every
    registered denominator is exactly the product of its atoms, since both
    sides are primitive with positive leading coefficient), so adding a term
    costs at worst a few polynomial multiplications and never a gcd.  Zero
    testing reads the numerator directly.
    """

    __slots__ = ("base", "items", "exps", "_num")

    def __init__(self, base: CoprimeBase):
        self.base = base
        self.items: list = []
        self.exps: dict = {}
        self._num = None

    def _atom_power(self, idx: int, e: int):
        if idx >= 0:
            return self.base.poly_atoms[idx] ** e
        return self.base.prime_atoms[-idx - 1] ** e

    def add(self, num, den_exps: dict):
        self._num = None
        self.items.append((num, den_exps))
        for a, e in den_exps.items():
            if e > self.exps.get(a, 0):
                self.exps[a] = e

    def _total(self):
        """Lift every stored numerator to the common denominator in one pass.
        Scale polynomials are shared across items with equal denominator
        vectors, and atom powers across everything."""
        if self._num is None:
            ring = self.base.field.ring
            powers: dict = {}
            scales: dict = {}
            total = ring.zero
            for num, den in self.items:
                key = tuple(sorted(den.items()))
                scale = scales.get(key)
                if scale is None:
                    scale = ring.one
                    for a, e in self.exps.items():
                        lift = e - den.get(a, 0)
                        if lift:
                            p = powers.get((a, lift))
                            if p is None:
                                p = powers[a, lift] = self._atom_power(a, lift)
                            scale = scale * p
                    scales[key] = scale
                total = total + (num if scale == ring.one else num * scale)
            self._num = total
        return self._num

    def is_zero(self) -> bool:
        return not self._total()

    def value(self) -> RationalFunction:
        field = self.base.field
        den = field.ring.one
        for a, e in self.exps.items():
            den = den * self._atom_power(a, e)
        return normalize_rf(field, self._total(), den)

    def __eq__(self, other):
        if isinstance(other, _CoeffAcc):
            return self.value() == other.value()
        return NotImplemented

    def __repr__(self):
        return f"CoeffAcc({self.value()})"


def _coeff_is_zero(c) -> bool:
    if isinstance(c, RationalFunction):
        return c.is_zero()
    if isinstance(c, DlogCoeff):
        return c.is_formal_zero()
    return c == 0


def _wedge_sign(atoms) -> int:
    """Sign of sorting a tuple of distinct keys (inversion parity)."""
    inv = 0
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            if atoms[i] > atoms[j]:
                inv += 1
    return -1 if inv % 2 else 1


def make_tensor(shape: Shape, base: CoprimeBase, terms=()) -> TensorElement:
    el = TensorElement(shape, base)
    for coeff, *legs in terms:
        if len(legs) == 1 and isinstance(legs[0], (tuple, list)):
            legs = list(legs[0])
        el.add_term(coeff, legs)
    return el


def dlog_realize(el: TensorElement):
    """Per-variable logarithmic realization of an F (x) F^x element.

    Sends sum c_s (x) f_s to the tuple (sum_s c_s d_i(f_s)/f_s)_i of rational
    functions, one per field generator.  This kills exactly the kernel of the
    canonical form in weight one, so it is a cheap independent cross-check.
    """
    if el.shape != F_W(1):
        raise ValueError("dlog realization is defined on F(x)Fx only")
    field = el.base.field
    out = [field.zero for _ in range(field.k)]
    for coeff, (leg,) in el.raw:
        if isinstance(coeff, DlogCoeff):
            coeff = coeff.as_rf()
        for i in range(field.k):
            dnum = leg.num.diff(field._gens[i])
            dden = leg.den.diff(field._gens[i])
            if not dnum and not dden:
                continue
            dleg = normalize_rf(
                field, dnum * leg.den - leg.num * dden, leg.den * leg.num
            )
            out[i] = out[i] + coeff * dleg
    return tuple(out)
