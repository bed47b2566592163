"""Exact arithmetic in F = Q(t1, ..., tk).

Sparse multivariate polynomials and reduced rational functions with a
deterministic canonical form, formal partial derivatives, exact and numeric
evaluation, and gcd-free (coprime) multiplicative bases for F^x legs.

The polynomial representation is backed by sympy's sparse polynomial rings
(QQ coefficients, graded-lex term order); everything the rest of the package
relies on (canonical fraction form, hashing, serialization grammar, the
coprime base) is defined here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as gcd_int
from typing import Iterable, Sequence

import mpmath as mp
from sympy import Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _sympy_ring
from sympy.ntheory import factorint, nextprime

_PARSE_TRANSFORMS = standard_transformations + (convert_xor,)


def _qq_to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class Field:
    """The rational function field Q(t1,...,tk) with a fixed generator list."""

    def __init__(self, names: Sequence[str] = ("t1", "t2")):
        if not names:
            raise ValueError("field needs at least one variable")
        self.names = tuple(str(n) for n in names)
        self.k = len(self.names)
        created = _sympy_ring(",".join(self.names), QQ, "grlex")
        self.ring = created[0]
        self._gens = list(created[1:])
        self._symbols = {n: Symbol(n) for n in self.names}
        self.zero = RationalFunction(self, self.ring.zero, self.ring.one)
        self.one = RationalFunction(self, self.ring.one, self.ring.one)

    def gen(self, i: int) -> "RationalFunction":
        return RationalFunction(self, self._gens[i], self.ring.one)

    def gens(self) -> list["RationalFunction"]:
        return [self.gen(i) for i in range(self.k)]

    def from_fraction(self, q) -> "RationalFunction":
        q = Fraction(q)
        num = self.ring.from_dict({(0,) * self.k: QQ(q.numerator, q.denominator)})
        return RationalFunction(self, num, self.ring.one)

    def parse(self, text: str) -> "RationalFunction":
        """Parse the `(t1^2 - 1)/(t1 - 1)` grammar into a canonical element."""
        expr = parse_expr(
            text, local_dict=dict(self._symbols), transformations=_PARSE_TRANSFORMS
        )
        num_e, den_e = expr.as_numer_denom()
        try:
            num = self.ring.from_expr(num_e)
            den = self.ring.from_expr(den_e)
        except ValueError as exc:
            raise ValueError(f"not a rational function over {self.names}: {text}") from exc
        return normalize_rf(self, num, den)

    def poly(self, text: str) -> "Polynomial":
        rf = self.parse(text)
        if rf.den != self.ring.one:
            raise ValueError(f"not polynomial: {text}")
        return Polynomial(self, rf.num)

    def __repr__(self):
        return f"Field({', '.join(self.names)})"


class Polynomial:
    """Thin exact-polynomial wrapper; the terms map is the backend's."""

    __slots__ = ("field", "p")

    def __init__(self, field: Field, p):
        self.field = field
        self.p = p

    def terms(self):
        return self.p.terms()

    def is_zero(self) -> bool:
        return not self.p

    def __add__(self, other):
        return Polynomial(self.field, self.p + other.p)

    def __sub__(self, other):
        return Polynomial(self.field, self.p - other.p)

    def __mul__(self, other):
        return Polynomial(self.field, self.p * other.p)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return poly_str(self.p)

    def as_rf(self) -> "RationalFunction":
        return RationalFunction(self.field, self.p, self.field.ring.one)


def poly_str(p) -> str:
    if not p:
        return "0"
    return str(p.as_expr()).replace("**", "^")


def _primitive_positive(p):
    """(content, primitive part with positive leading coefficient)."""
    cont, prim = p.primitive()
    if prim.LC < 0:
        cont, prim = -cont, -prim
    return cont, prim


def normalize_rf(field: Field, num, den) -> "RationalFunction":
    """Reduced, sign-normalized fraction from raw backend polynomials.

    Canonical form: gcd(num, den) = 1; the denominator is a primitive
    integer polynomial with positive leading coefficient (rational scale is
    carried by the numerator); 0 is 0/1.
    """
    if not den:
        raise ZeroDivisionError("division by zero in F")
    if not num:
        return RationalFunction(field, field.ring.zero, field.ring.one)
    g = num.gcd(den)
    if g != field.ring.one:
        num, rn = num.div(g)
        den, rd = den.div(g)
        assert not rn and not rd
    cont, prim = _primitive_positive(den)
    num = num.quo_ground(cont)
    return RationalFunction(field, num, prim)


def normalize(num: Polynomial, den: Polynomial) -> "RationalFunction":
    return normalize_rf(num.field, num.p, den.p)


class RationalFunction:
    """Canonical element of F; immutable, hashable, exact."""

    __slots__ = ("field", "num", "den", "_h")

    def __init__(self, field: Field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._h = None

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.field.ring.one and self.den == self.field.ring.one

    def numerator(self) -> Polynomial:
        return Polynomial(self.field, self.num)

    def denominator(self) -> Polynomial:
        return Polynomial(self.field, self.den)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_fraction(other)
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __repr__(self):
        if self.den == self.field.ring.one:
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not constant")
        if self.is_zero():
            return Fraction(0)
        return _qq_to_fraction(self.num.LC) / _qq_to_fraction(self.den.LC)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return self.field.from_fraction(other)

    def __add__(self, other):
        o = self._coerce(other)
        return normalize_rf(
            self.field, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return normalize_rf(
            self.field, self.num * o.den - o.num * self.den, self.den * o.den
        )

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        return normalize_rf(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in F")
        return normalize_rf(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __pow__(self, e: int):
        if e == 0:
            return self.field.one
        if e < 0:
            return (self.field.one / self) ** (-e)
        return normalize_rf(self.field, self.num**e, self.den**e)

    # -- calculus ----------------------------------------------------------

    def partial_derivative(self, i: int) -> "RationalFunction":
        """d/dt_i by the quotient rule, normalized."""
        g = self.field._gens[i]
        dn = self.num.diff(g)
        dd = self.den.diff(g)
        return normalize_rf(
            self.field, dn * self.den - self.num * dd, self.den * self.den
        )

    # -- evaluation --------------------------------------------------------

    def evaluate(self, values: Sequence) -> Fraction:
        """Exact value at a rational point; raises on poles."""
        subs = [
            (g, QQ(Fraction(v).numerator, Fraction(v).denominator))
            for g, v in zip(self.field._gens, values)
        ]
        dv = self.den.evaluate(subs)
        if dv == 0:
            raise ZeroDivisionError("specialization hits pole")
        nv = self.num.evaluate(subs) if self.num else QQ(0)
        return _qq_to_fraction(nv) / _qq_to_fraction(dv)

    def eval_numeric(self, values: Sequence):
        """Value at an mpmath (real or complex) point, at working precision."""
        nv = _eval_poly_numeric(self.num, values)
        dv = _eval_poly_numeric(self.den, values)
        if dv == 0:
            raise ZeroDivisionError("specialization hits pole")
        return nv / dv


def _eval_poly_numeric(p, values):
    total = mp.mpf(0)
    for monom, coeff in p.terms():
        term = mp.mpf(int(coeff.numerator)) / mp.mpf(int(coeff.denominator))
        for v, e in zip(values, monom):
            if e:
                term = term * (v**e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Coprime (gcd-free) multiplicative bases
# ---------------------------------------------------------------------------

# Evaluation points for the univariate shadows: gen j is kept symbolic while
# the others take these values.  Two independent points so that the integer
# divisibility fingerprint rarely stays inconclusive.
_SHADOW_POINTS = ((3, 5, 17, 29, 41, 53), (7, 11, 19, 31, 43, 59))


def _shadow_point(which: int, k: int):
    pts = _SHADOW_POINTS[which]
    if k <= len(pts):
        return pts[:k]
    out = list(pts)
    v = pts[-1]
    while len(out) < k:
        v = nextprime(v + which)
        out.append(int(v))
    return tuple(out)


class _Shadow:
    """Cheap exact data about an integer polynomial: per-variable degrees,
    dense univariate images (others pinned at fixed integers), and integer
    values at two fixed points."""

    __slots__ = ("degs", "images", "vals")

    def __init__(self, p, k: int):
        degs = [0] * k
        for monom, _ in p.terms():
            for j, e in enumerate(monom):
                if e > degs[j]:
                    degs[j] = e
        self.degs = tuple(degs)
        images = []
        pt = _shadow_point(0, k)
        for v in range(k):
            if degs[v] == 0:
                images.append(None)
                continue
            dense = [0] * (degs[v] + 1)
            for monom, coeff in p.terms():
                c = int(coeff.numerator)
                for j, e in enumerate(monom):
                    if j != v and e:
                        c *= pt[j] ** e
                dense[monom[v]] += c
            if dense[degs[v]] == 0:
                # the leading coefficient vanished at the point, so divisor
                # degrees are not preserved and the image proves nothing
                images.append(None)
            else:
                images.append(dense)
        self.images = tuple(images)
        vals = []
        for which in range(2):
            pt = _shadow_point(which, k)
            total = 0
            for monom, coeff in p.terms():
                c = int(coeff.numerator)
                for j, e in enumerate(monom):
                    if e:
                        c *= pt[j] ** e
                total += c
            vals.append(total)
        self.vals = tuple(vals)


def _dense_content(f) -> int:
    g = 0
    for c in f:
        g = gcd_int(g, c)
        if g == 1:
            break
    return g or 1


def _dense_coprime(f, g) -> bool:
    """True when two dense integer univariate polynomials (low-to-high) have
    constant gcd over Q.  Primitive pseudo-remainder sequence."""
    a = [c for c in f]
    b = [c for c in g]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        # pseudo-remainder of a by b
        r = [c for c in a]
        lb = b[-1]
        while len(r) >= len(b):
            lr = r[-1]
            shift = len(r) - len(b)
            r = [c * lb for c in r]
            for i, c in enumerate(b):
                r[shift + i] -= lr * c
            while r and r[-1] == 0:
                r.pop()
        cont = _dense_content(r)
        if cont > 1:
            r = [c // cont for c in r]
        a, b = b, r
    if not b:
        return len(a) <= 1
    return True


class CoprimeBase:
    """Pairwise-coprime atoms spanning registered F^x legs multiplicatively.

    Atoms are primitive integer polynomials with positive leading coefficient
    (degree >= 1) plus prime integers for the constant part.  The base grows
    lazily: registering a new leg refines existing atoms by gcd splitting, so
    factorizations are only meaningful within one run.  Signs are dropped,
    matching the everywhere-used mod-2-torsion convention.
    """

    def __init__(self, field: Field):
        self.field = field
        self.poly_atoms = []  # backend polynomials, primitive, LC > 0, deg >= 1
        self.prime_atoms = []  # python ints
        self._version = 0
        self._seen = set()
        self._atom_set = set()
        self._shadows = {}

    # Atom indices: nonneg -> poly_atoms[i]; negative -> prime_atoms[-i-1].

    @property
    def version(self) -> int:
        return self._version

    def atom(self, idx: int):
        if idx >= 0:
            return Polynomial(self.field, self.poly_atoms[idx])
        return self.prime_atoms[-idx - 1]

    def atom_str(self, idx: int) -> str:
        if idx >= 0:
            return poly_str(self.poly_atoms[idx])
        return str(self.prime_atoms[-idx - 1])

    def _add_prime(self, p: int) -> int:
        if p not in self.prime_atoms:
            self.prime_atoms.append(p)
            self._version += 1
        return -(self.prime_atoms.index(p) + 1)

    def _shadow(self, p) -> _Shadow:
        s = self._shadows.get(p)
        if s is None:
            s = _Shadow(p, self.field.k)
            self._shadows[p] = s
        return s

    def _proven_coprime(self, f, g) -> bool:
        """Exact one-sided test: True means gcd(f, g) is constant.  A common
        divisor has positive degree in some variable; in that direction both
        univariate images keep full degree (their leading terms factor through
        the divisor's), so the image gcd would be nonconstant."""
        sf, sg = self._shadow(f), self._shadow(g)
        for v in range(self.field.k):
            if sf.degs[v] and sg.degs[v]:
                a, b = sf.images[v], sg.images[v]
                if a is None or b is None:
                    return False
                if not _dense_coprime(a, b):
                    return False
        return True

    def _register_poly(self, q):
        """Insert a primitive positive polynomial, splitting atoms as needed.

        Worklist refinement: each pending polynomial is scanned against the
        atoms; a nontrivial gcd removes the atom and pushes the three parts
        back on the list.  Pairwise coprimality of untouched atoms survives
        every step, and the summed total degree strictly drops on each split,
        so this terminates with the invariant restored."""
        items = self.poly_atoms
        work = [q]
        while work:
            w = work.pop()
            if w in self._atom_set:
                continue
            i = 0
            placed = False
            while i < len(items):
                a = items[i]
                if self._proven_coprime(a, w):
                    i += 1
                    continue
                g = a.gcd(w)
                if g.is_ground:
                    i += 1
                    continue
                # gcd over QQ need not come back primitive
                g = _primitive_positive(g)[1]
                if g == a:
                    # the atom divides w: strip full copies, then look again,
                    # since a partial factor of a composite atom may remain
                    while True:
                        quo, rem = w.div(a)
                        if rem:
                            break
                        w = quo
                    if w.is_ground or w in self._atom_set:
                        placed = True
                        break
                    continue
                # proper overlap: the atom splits; push the pieces and the
                # reduced remainder through the worklist again
                del items[i]
                self._atom_set.discard(a)
                self._version += 1
                quo, rem = a.div(g)
                assert not rem
                work.append(_primitive_positive(quo)[1])
                work.append(g)
                while True:
                    quo, rem = w.div(g)
                    if rem:
                        break
                    w = quo
                if not w.is_ground:
                    work.append(_primitive_positive(w)[1])
                placed = True
                break
            if not placed and not w.is_ground:
                items.append(w)
                self._atom_set.add(w)
                self._version += 1

    def register(self, legs: Iterable) -> None:
        for leg in legs:
            if isinstance(leg, Polynomial):
                leg = leg.as_rf()
            if not isinstance(leg, RationalFunction):
                raise TypeError(f"cannot register {type(leg).__name__}")
            if leg.is_zero():
                raise ValueError("zero in F^x")
            if leg in self._seen:
                continue
            self._seen.add(leg)
            for part in (leg.num, leg.den):
                cont, prim = _primitive_positive(part)
                frac = _qq_to_fraction(cont)
                for n in (abs(frac.numerator), frac.denominator):
                    if n > 1:
                        for p in factorint(n):
                            self._add_prime(int(p))
                if not prim.is_ground:
                    self._register_poly(prim)

    def factor(self, leg) -> dict:
        """Exponent map {atom index: exponent} of a leg, sign dropped.

        Registers the leg first, so the base always suffices.  Raises if the
        polynomial part fails to divide out over the atoms (cannot happen once
        registration succeeded; kept as an internal consistency check).
        """
        self.register([leg])
        if isinstance(leg, Polynomial):
            leg = leg.as_rf()
        exps: dict[int, int] = {}
        for part, s in ((leg.num, 1), (leg.den, -1)):
            cont, prim = _primitive_positive(part)
            frac = _qq_to_fraction(cont)
            for n, flip in ((abs(frac.numerator), 1), (frac.denominator, -1)):
                if n > 1:
                    for p, e in factorint(n).items():
                        idx = self._add_prime(int(p))
                        exps[idx] = exps.get(idx, 0) + s * flip * e
            rest = prim
            for i, a in enumerate(self.poly_atoms):
                if rest.is_ground:
                    break
                # necessary conditions first: a divisor cannot exceed the
                # remainder's degree in any variable, and its integer values
                # at the shadow points must divide the remainder's
                a_sh = self._shadow(a)
                r_sh = self._shadow(rest)
                if any(da > dr for da, dr in zip(a_sh.degs, r_sh.degs)):
                    continue
                if any(av and rv % av for av, rv in zip(a_sh.vals, r_sh.vals)):
                    continue
                e = 0
                while not rest.is_ground:
                    quo, rem = rest.div(a)
                    if rem:
                        break
                    rest = quo
                    e += 1
                if e:
                    exps[i] = exps.get(i, 0) + s * e
            # primitive by primitive divisions leave exactly the unit behind
            if rest != self.field.ring.one:
                raise AssertionError(f"leg does not factor over base: {poly_str(prim)}")
        return {i: e for i, e in exps.items() if e}


def coprime_base(legs: list) -> CoprimeBase:
    """Build a fresh base from polynomial/rational-function legs."""
    if not legs:
        raise ValueError("no legs")
    field = legs[0].field
    base = CoprimeBase(field)
    base.register(legs)
    return base
