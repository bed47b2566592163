"""Named, seeded, reproducible checks over the whole identity catalog.

Each check binds one verifiable statement to a runner that draws its own
random data from a dedicated generator, so the catalog can run in any order
(or singly) and still produce byte-identical reports for a fixed seed.  Exact
tiers assert canonical-form identities with zero tolerance; numeric tiers
assert realization residuals against a tolerance.  Wall-clock timing goes to
standard output only, never into the JSON report, which must be reproducible
bit for bit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from . import realizations
from .configurations import (
    NonGenericError,
    boundary_d,
    boundary_dprime,
    cross_ratio,
    factor_triple_ratio,
    parse_configuration,
    projected_cross_ratio,
    random_configuration,
    triple_ratio_term,
)
from .derivation import Derivation
from .field import CoprimeBase, Field
from .groups import (
    B2Element,
    BetaDElement,
    Context,
    MidElement,
    cath2,
    delta2,
    partialD2,
    partialD3,
    partialD_mid,
    relator,
    verify_mid_equal,
)
from .morphisms import (
    tau0_2,
    tau0_2_after_d,
    tau0_2_after_dprime,
    tau0_3,
    tau0_3_after_d,
    tau0_3_after_dprime,
    tau0_n_after_dprime,
    tau1_2,
    tau1_2_after_d,
    tau1_2_after_dprime,
    tau1_3,
    tau1_3_after_d,
    tau1_3_alt,
    tau2_3,
)


class CheckError(RuntimeError):
    """A check could not run to completion (as opposed to failing)."""


@dataclass(frozen=True)
class CheckDescriptor:
    id: str
    statement: str
    tier: str  # "exact" | "numeric" | "both"
    default_trials: int
    bound: str  # what is asserted, and with which tolerance semantics
    runner: Callable


@dataclass
class Settings:
    """Effective options for a run; per-check overrides win over globals."""

    seed: int = 1
    trials: Optional[int] = None
    precision: int = 50
    tol: float = 1e-10
    vars: int = 2
    coeff_bound: int = 20
    derivation: Optional[tuple] = None  # generator image texts
    overrides: dict = dataclass_field(default_factory=dict)

    def _get(self, check_id: str, key: str, fallback):
        per = self.overrides.get(check_id, {})
        if key in per:
            return per[key]
        return fallback

    def for_check(self, desc: CheckDescriptor) -> "Resolved":
        trials = self.trials
        if trials is None:
            trials = int(self._get(desc.id, "trials", desc.default_trials))
        return Resolved(
            trials=trials,
            precision=int(self._get(desc.id, "precision", self.precision)),
            tol=float(self._get(desc.id, "tol", self.tol)),
            vars=int(self._get(desc.id, "vars", self.vars)),
            coeff_bound=int(self._get(desc.id, "coeff_bound", self.coeff_bound)),
            derivation=self._get(desc.id, "derivation", self.derivation),
        )


@dataclass
class Resolved:
    trials: int
    precision: int
    tol: float
    vars: int
    coeff_bound: int
    derivation: Optional[tuple]


@dataclass
class CheckResult:
    id: str
    statement: str
    tier: str
    status: str  # PASS | FAIL | ERROR
    trials: int
    max_residual: Optional[float] = None
    scalar_slack: Optional[str] = None
    notes: tuple = ()

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "tier": self.tier,
            "status": self.status,
            "trials": self.trials,
            "max_residual": (
                None if self.max_residual is None else f"{self.max_residual:.3e}"
            ),
            "scalar_slack": self.scalar_slack,
            "notes": list(self.notes),
        }


_FIELDS: dict = {}


def _field(names: tuple) -> Field:
    f = _FIELDS.get(names)
    if f is None:
        f = _FIELDS[names] = Field(names)
    return f


def _default_names(k: int) -> tuple:
    return tuple(f"t{i}" for i in range(1, k + 1))


class Run:
    """Book-keeping handed to a runner: rng, options, verdict accumulation."""

    def __init__(self, desc: CheckDescriptor, settings: Settings):
        self.desc = desc
        self.opts = settings.for_check(desc)
        self.rng = random.Random(f"{settings.seed}|{desc.id}")
        self.trial = 0
        self.failures = 0
        self.notes: list = []
        self.max_residual: Optional[float] = None
        self.scalar_slack: Optional[str] = None

    # -- context construction --------------------------------------------------

    def field(self, names: Optional[tuple] = None) -> Field:
        return _field(names or _default_names(self.opts.vars))

    def ctx(self, names: Optional[tuple] = None, derivation: Optional[Derivation] = None) -> Context:
        f = self.field(names)
        if derivation is None:
            if self.opts.derivation is not None:
                derivation = Derivation.from_strings(f, self.opts.derivation)
            elif f.k >= 2:
                derivation = Derivation.special_two_variable(f)
            else:
                g = f.gen(0)
                derivation = Derivation(f, (g * (f.one - g),))
        return Context(f, derivation, CoprimeBase(f))

    def config(self, ctx: Context, m: int, n: int, variable_entries: int = 2):
        return random_configuration(
            ctx.field, m, n, self.rng,
            coeff_bound=self.opts.coeff_bound,
            variable_entries=variable_entries,
        )

    def random_poly(self, f: Field):
        """A small random polynomial, nonzero, for derivation images."""
        monos = [f.one]
        for i in range(f.k):
            g = f.gen(i)
            monos.extend([g, g * g])
            for j in range(i + 1, f.k):
                monos.append(g * f.gen(j))
        total = f.zero
        for m in monos:
            q = self.rng.randint(-4, 4)
            if q:
                total = total + m * q
        return total if not total.is_zero() else f.one

    # -- verdict plumbing ------------------------------------------------------

    def check(self, cond: bool, msg: str):
        if not cond:
            self.failures += 1
            self.notes.append(f"trial {self.trial}: {msg}")

    def residual(self, value) -> float:
        v = float(abs(value))
        if self.max_residual is None or v > self.max_residual:
            self.max_residual = v
        return v

    def retry(self, body, tries: int = 25):
        """Re-draw through degenerate samples; exhaustion is an ERROR."""
        for _ in range(tries):
            try:
                return body()
            except NonGenericError:
                continue
        raise CheckError(
            f"{self.desc.id}: persistent genericity sampling failure after {tries} draws"
        )

    def spec(self, f: Field, guards, real: bool = False):
        """A specialization clearing the guards; a configuration whose guard
        functions cannot be cleared counts as a degenerate draw."""
        try:
            return realizations.sample_specialization(
                f, self.rng, avoid_degenerate=guards,
                precision=self.opts.precision, real=real,
            )
        except RuntimeError as exc:
            raise NonGenericError(str(exc))

    def mid_verdict(self, lhs: MidElement, rhs: MidElement, samples: int):
        v = verify_mid_equal(
            lhs, rhs, trials=samples, rng=self.rng,
            tol=self.opts.tol, precision=self.opts.precision,
        )
        self.residual(v.numeric_max)
        for note in v.notes:
            self.check(False, note)
        return v


# ---------------------------------------------------------------------------
# Catalog registration
# ---------------------------------------------------------------------------


CATALOG: dict = {}


def _register(id: str, statement: str, tier: str, trials: int, bound: str):
    def deco(fn):
        if id in CATALOG:
            raise ValueError(f"duplicate check id {id}")
        CATALOG[id] = CheckDescriptor(id, statement, tier, trials, bound, fn)
        return fn
    return deco


def _mid_realize(e: MidElement, spec, precision: int):
    with mpmath.workdps(precision):
        total = mpmath.mpc(0)
        for y, x in e.right.items():
            total += spec(x) * realizations.bloch_wigner(spec(y), precision)
        return total


def _mid_guards(*elements: MidElement) -> list:
    guards: dict = {}
    for e in elements:
        for y, x in e.right.items():
            if not y.is_constant():
                guards.setdefault(y)
            for rf in x.guard_rfs():
                if not rf.is_constant():
                    guards.setdefault(rf)
    return list(guards)


def _scalar_slack(run: Run, lhs: MidElement, rhs: MidElement) -> Optional[str]:
    """Best-fit constant rational ratio between two middle-group elements.

    Evaluated through the dilogarithm realization at two points; a stable,
    real, small-denominator ratio is reported, anything else is None.
    """
    field = lhs.ctx.field
    guards = _mid_guards(lhs, rhs)
    ratios = []
    for _ in range(2):
        spec = realizations.sample_specialization(
            field, run.rng, avoid_degenerate=guards,
            precision=run.opts.precision, disc=1e-6,
        )
        a = _mid_realize(lhs, spec, run.opts.precision)
        b = _mid_realize(rhs, spec, run.opts.precision)
        if abs(b) < 1e-20:
            return None
        ratios.append(complex(a / b))
    r0, r1 = ratios
    if abs(r0 - r1) > 1e-6 or abs(r0.imag) > 1e-6:
        return None
    snapped = Fraction(r0.real).limit_denominator(1000)
    if abs(float(snapped) - r0.real) > 1e-6:
        return None
    return str(snapped)


# ---------------------------------------------------------------------------
# Complex-level checks
# ---------------------------------------------------------------------------


@_register(
    "dd_zero",
    "The omission boundary d squares to zero on random configurations.",
    "exact", 100,
    "d(d(c)) is the empty configuration sum",
)
def _run_dd_zero(run: Run):
    ctx = run.ctx()
    for run.trial in range(run.opts.trials):
        m, n = run.rng.choice([(5, 2), (6, 2), (5, 3), (6, 3)])
        c = run.config(ctx, m, n)
        run.check(boundary_d(c).map_expand(boundary_d).is_zero(),
                  "d after d left a nonzero sum")
        if run.failures:
            break


@_register(
    "dprime_dprime_zero",
    "The projection boundary d' squares to zero, apexes carried along.",
    "exact", 100,
    "d'(d'(c)) is the empty configuration sum",
)
def _run_dprime_dprime(run: Run):
    ctx = run.ctx()
    for run.trial in range(run.opts.trials):
        m, n = run.rng.choice([(5, 3), (6, 3), (5, 4), (6, 4)])
        c = run.config(ctx, m, n)
        run.check(boundary_dprime(c).map_expand(boundary_dprime).is_zero(),
                  "d' after d' left a nonzero sum")
        if run.failures:
            break


@_register(
    "cross_ratio_identity_2did",
    "The two-row determinant exchange identity holds, and with it the "
    "complement formula 1 - r = (D01 D23)/(D02 D13) for the cross-ratio.",
    "exact", 100,
    "both sides agree as rational functions, exactly",
)
def _run_cross_ratio_identity(run: Run):
    ctx = run.ctx()
    one = ctx.field.one
    for run.trial in range(run.opts.trials):
        def body():
            c = run.config(ctx, 4, 2)
            d = c.determinant
            lhs = d((0, 1)) * d((2, 3))
            rhs = d((0, 2)) * d((1, 3)) - d((0, 3)) * d((1, 2))
            run.check(lhs == rhs, "determinant exchange identity broke")
            r = cross_ratio(c)
            run.check(one - r == lhs / (d((0, 2)) * d((1, 3))),
                      "cross-ratio complement formula broke")
        run.retry(body)
        if run.failures:
            break


# ---------------------------------------------------------------------------
# Weight-2 morphisms
# ---------------------------------------------------------------------------


@_register(
    "tau0_2_volume_invariance",
    "tau0_2 is unchanged when the volume form is rescaled by any nonzero "
    "function.",
    "exact", 100,
    "canonical forms of the two outputs are identical",
)
def _run_tau0_2_volume(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 3, 2)
            lam = run.random_poly(ctx.field)
            run.check(
                (tau0_2(ctx, c) - tau0_2(ctx, c.scale_volume(lam))).is_zero(),
                "volume rescale changed the output",
            )
        run.retry(body)
        if run.failures:
            break


@_register(
    "tau0_2_length_invariance",
    "tau0_2 composed with the omission boundary is unchanged when the "
    "individual points are rescaled by nonzero functions.",
    "exact", 100,
    "canonical forms of the two composite outputs are identical",
)
def _run_tau0_2_length(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 4, 2)
            scaled = c
            for i in range(4):
                scaled = scaled.scale_point(i, run.random_poly(ctx.field))
            run.check(
                (tau0_2_after_d(ctx, c) - tau0_2_after_d(ctx, scaled)).is_zero(),
                "point rescale changed the composite output",
            )
        run.retry(body)
        if run.failures:
            break


@_register(
    "claim1",
    "partialD2 after tau1_2 equals tau0_2 after the omission boundary on "
    "planar quadruples, for randomly drawn polynomial derivations.",
    "exact", 100,
    "canonical forms of both sides are identical",
)
def _run_claim1(run: Run):
    f = run.field()
    pinned = run.opts.derivation
    for run.trial in range(run.opts.trials):
        if pinned is not None:
            D = Derivation.from_strings(f, pinned)
        else:
            D = Derivation(f, tuple(run.random_poly(f) for _ in range(f.k)))
        ctx = Context(f, D, CoprimeBase(f))

        def body():
            c = run.config(ctx, 4, 2)
            lhs = partialD2(tau1_2(ctx, c))
            rhs = tau0_2_after_d(ctx, c)
            run.check((lhs - rhs).is_zero(), "the weight-2 square did not commute")
        run.retry(body)
        if run.failures:
            break


@_register(
    "tau12d_kernel",
    "tau1_2 after the omission boundary of planar quintuples lands in the "
    "kernel of partialD2.",
    "exact", 100,
    "partialD2 image has empty canonical form",
)
def _run_tau12d_kernel(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 5, 2)
            run.check(partialD2(tau1_2_after_d(ctx, c)).is_zero(),
                      "boundary image escaped the kernel")
        run.retry(body)
        if run.failures:
            break


@_register(
    "gon5term",
    "The alternating sum of projected cross-ratios of five points in space "
    "is killed by delta2, and its dilogarithm realization vanishes.",
    "both", 50,
    "delta2 image exactly zero; realization residual < tol at 10 points",
)
def _run_gon5term(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 5, 3, variable_entries=5)
            terms = []
            for i in range(5):
                rest = tuple(j for j in range(5) if j != i)
                terms.append((Fraction((-1) ** i), projected_cross_ratio(c, i, rest)))
            e = B2Element(ctx, terms)
            run.check(delta2(e).is_zero(), "delta2 image nonzero")
            guards = [g for x in e.terms for g in (x, ctx.field.one - x)]
            for _ in range(10):
                spec = run.spec(ctx.field, guards)
                v = run.residual(realizations.realize_B2(e, spec))
                run.check(v < run.opts.tol, f"dilogarithm residual {v:.3e}")
        run.retry(body)
        if run.failures:
            break


@_register(
    "lemma_4pt",
    "The alternating double-bracket sum over projected cross-ratios of five "
    "points in space is killed by partialD2, with vanishing dilogarithm "
    "realization.",
    "both", 50,
    "partialD2 image exactly zero; realization residual < tol at 10 points",
)
def _run_lemma_4pt(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 5, 3, variable_entries=5)
            terms = []
            for i in range(5):
                rest = tuple(j for j in range(5) if j != i)
                terms.append((Fraction((-1) ** i), projected_cross_ratio(c, i, rest)))
            e = BetaDElement(ctx, 2, terms)
            run.check(partialD2(e).is_zero(), "partialD2 image nonzero")
            guards = [g for x in e.terms for g in (x, ctx.field.one - x)]
            for _ in range(10):
                spec = run.spec(ctx.field, guards)
                v = run.residual(realizations.realize_betaD_D2(e, spec))
                run.check(v < run.opts.tol, f"dilogarithm residual {v:.3e}")
        run.retry(body)
        if run.failures:
            break


@_register(
    "example_four_term",
    "With D = a(1-a) d/da + b(1-b) d/db the five-point configuration "
    "((0,1),(1,0),(1,1),(a,1),(b,1)) collapses to a four-term element: the "
    "fifth cross-ratio is killed by D, the partialD2 image is exactly zero, "
    "and the entropy realization vanishes at random real points.",
    "both", 1,
    "derivation kills the fifth term; partialD2 image exactly zero; entropy "
    "residual < tol at 20 real points",
)
def _run_example_four_term(run: Run):
    f = _field(("a", "b"))
    ctx = Context(f, Derivation.special_two_variable(f), CoprimeBase(f))
    c = parse_configuration(f, "[[0,1],[1,0],[1,1],[a,1],[b,1]]")
    a, b = f.gen(0), f.gen(1)
    x5 = (f.one - f.one / b) / (f.one - f.one / a)
    run.check(ctx.derivation(x5).is_zero(), "derivation kept the fifth cross-ratio alive")
    e = tau1_2_after_d(ctx, c)
    run.check(x5 not in e.terms, "fifth term survived in the element")
    run.check(len(e.terms) == 4, f"expected 4 surviving terms, found {len(e.terms)}")
    run.check(partialD2(e).is_zero(), "partialD2 image nonzero")
    guards = [g for x in e.terms for g in (x, f.one - x)]
    for _ in range(20):
        spec = run.spec(f, guards, real=True)
        v = run.residual(realizations.realize_entropy(e, spec))
        run.check(v < run.opts.tol, f"entropy residual {v:.3e}")


# ---------------------------------------------------------------------------
# Weight-3 morphisms
# ---------------------------------------------------------------------------


@_register(
    "tau0_3_volume",
    "tau0_3 is unchanged when the volume form is rescaled by any nonzero "
    "function.",
    "exact", 100,
    "canonical forms of the two outputs are identical",
)
def _run_tau0_3_volume(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 4, 3)
            lam = run.random_poly(ctx.field)
            run.check(
                (tau0_3(ctx, c) - tau0_3(ctx, c.scale_volume(lam))).is_zero(),
                "volume rescale changed the output",
            )
        run.retry(body)
        if run.failures:
            break


@_register(
    "tau1_3_volume",
    "tau1_3 outputs for rescaled volume forms agree in the middle group; the "
    "discrepancy dies by the projected five-term relation.",
    "both", 10,
    "left tier and wedge tier exactly equal; realization residual < tol",
)
def _run_tau1_3_volume(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 5, 3)
            lam = run.random_poly(ctx.field)
            run.mid_verdict(tau1_3(ctx, c), tau1_3(ctx, c.scale_volume(lam)), samples=3)
        run.retry(body)
        if run.failures:
            break


@_register(
    "tau1_3_length",
    "tau1_3 composed with the omission boundary is unchanged when the "
    "individual points are rescaled, as an equality in the middle group.",
    "both", 5,
    "left tier and wedge tier exactly equal; realization residual < tol",
)
def _run_tau1_3_length(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 6, 3)
            scaled = c
            for i in range(6):
                lam = ctx.field.from_fraction(run.rng.randint(1, 7))
                if run.rng.random() < 0.5:
                    lam = lam + ctx.field.gen(run.rng.randrange(ctx.field.k))
                scaled = scaled.scale_point(i, lam)
            run.mid_verdict(tau1_3_after_d(ctx, c), tau1_3_after_d(ctx, scaled), samples=3)
        run.retry(body)
        if run.failures:
            break


@_register(
    "claim3a",
    "tau0_3 after the omission boundary equals partialD_mid after tau1_3 on "
    "spatial quintuples.",
    "exact", 25,
    "canonical forms of both sides in the wedge target are identical",
)
def _run_claim3a(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 5, 3)
            lhs = partialD_mid(tau1_3(ctx, c))
            rhs = tau0_3_after_d(ctx, c)
            run.check((lhs - rhs).is_zero(), "the weight-3 bottom square did not commute")
        run.retry(body)
        if run.failures:
            break


@_register(
    "tau1_3_alt_form",
    "tau1_3 agrees with its alternation form (signed sum over relabelings of "
    "the first-point data, divided by 12) in the middle group.",
    "both", 10,
    "left tier and wedge tier exactly equal; realization residual < tol",
)
def _run_tau1_3_alt(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 5, 3)
            run.mid_verdict(tau1_3(ctx, c), tau1_3_alt(ctx, c), samples=3)
        run.retry(body)
        if run.failures:
            break


@_register(
    "triple_ratio_factorization",
    "The triple ratio splits as a quotient of two projected cross-ratios for "
    "each of the three admissible projection pairs.",
    "exact", 100,
    "ratio of the two projected cross-ratios equals the triple ratio, exactly",
)
def _run_triple_ratio_factorization(run: Run):
    ctx = run.ctx()
    for run.trial in range(run.opts.trials):
        def body():
            c = run.config(ctx, 6, 3)
            r3 = triple_ratio_term(c)
            for pair in ((0, 1), (0, 2), (1, 2)):
                r1, r2 = factor_triple_ratio(c, pair)
                run.check(r1 / r2 == r3, f"factorization through pair {pair} broke")
        run.retry(body)
        if run.failures:
            break


@_register(
    "triple_ratio_symmetry",
    "The triple ratio is fixed by the simultaneous 3-cycles of its two index "
    "triples, and by their square.",
    "exact", 100,
    "permuted triple ratios equal the original, exactly",
)
def _run_triple_ratio_symmetry(run: Run):
    ctx = run.ctx()
    sigma = (1, 2, 0, 4, 5, 3)
    sigma2 = tuple(sigma[sigma[i]] for i in range(6))
    for run.trial in range(run.opts.trials):
        def body():
            c = run.config(ctx, 6, 3)
            r3 = triple_ratio_term(c)
            run.check(triple_ratio_term(c, sigma) == r3, "3-cycle moved the triple ratio")
            run.check(triple_ratio_term(c, sigma2) == r3, "squared 3-cycle moved the triple ratio")
        run.retry(body)
        if run.failures:
            break


@_register(
    "claim3b",
    "partialD3 after tau2_3 equals tau1_3 after the omission boundary on "
    "spatial sextuples, as middle-group elements; the best-fit constant "
    "ratio between the sides is 1.",
    "both", 5,
    "left tier and wedge tier exactly equal; realization residual < tol at "
    ">= 5 points; scalar-slack ratio 1",
)
def _run_claim3b(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()

        def body():
            c = run.config(ctx, 6, 3)
            lhs = partialD3(tau2_3(ctx, c))
            rhs = tau1_3_after_d(ctx, c)
            run.mid_verdict(lhs, rhs, samples=5)
            if run.scalar_slack is None:
                run.scalar_slack = _scalar_slack(run, lhs, rhs)
        run.retry(body)
        if run.failures:
            break
    run.check(run.scalar_slack == "1",
              f"scalar slack diagnostic reported {run.scalar_slack!r}, wanted '1'")


def _random_argument(run: Run, f: Field):
    """A random non-degenerate rational function for bracket arguments."""
    num = run.random_poly(f)
    den = run.random_poly(f)
    if den.is_zero():
        raise NonGenericError("zero denominator draw")
    x = num / den
    if x.is_zero() or x.is_one() or x.is_constant():
        raise NonGenericError("degenerate argument draw")
    return x


@_register(
    "partial_sq_zero",
    "partialD_mid after partialD3 is zero on random weight-3 double-bracket "
    "elements.",
    "exact", 100,
    "composite image has empty canonical form",
)
def _run_partial_sq_zero(run: Run):
    f = run.field()
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            terms = []
            for _ in range(run.rng.randint(1, 3)):
                x = _random_argument(run, f)
                terms.append((Fraction(run.rng.randint(-3, 3) or 1), x))
            e = BetaDElement(ctx, 3, terms)
            run.check(partialD_mid(partialD3(e)).is_zero(),
                      "boundary square left a nonzero tensor")
        run.retry(body)
        if run.failures:
            break


# ---------------------------------------------------------------------------
# Relators
# ---------------------------------------------------------------------------


@_register(
    "relators_beta2D",
    "The two-term, inversion, five-term, and squaring-distribution "
    "combinations all map to zero under partialD2.",
    "exact", 25,
    "partialD2 image of each relator has empty canonical form",
)
def _run_relators_beta2D(run: Run):
    f = run.field()
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            a = _random_argument(run, f)
            b = _random_argument(run, f)
            try:
                combos = [
                    ("two_term", dict(a=a)),
                    ("inversion", dict(a=a)),
                    ("five_term_betaD", dict(a=a, b=b)),
                    ("distribution2", dict(a=a)),
                ]
                for kind, params in combos:
                    e = relator(ctx, kind, **params)
                    run.check(partialD2(e).is_zero(), f"{kind} escaped the kernel")
            except ValueError as exc:
                raise NonGenericError(str(exc))
        run.retry(body)
        if run.failures:
            break


@_register(
    "relator_four_term_beta2",
    "The four-term angle-bracket combination maps to zero under the "
    "infinitesimal weight-2 boundary.",
    "exact", 50,
    "boundary image has empty canonical form",
)
def _run_relator_four_term(run: Run):
    f = run.field()
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            a = _random_argument(run, f)
            b = _random_argument(run, f)
            try:
                e = relator(ctx, "four_term_beta2", a=a, b=b)
            except ValueError as exc:
                raise NonGenericError(str(exc))
            run.check(cath2(e).is_zero(), "four-term combination escaped the kernel")
        run.retry(body)
        if run.failures:
            break


@_register(
    "relator_22term",
    "The twenty-two-term weight-3 combination, transported to double "
    "brackets, maps to zero in the middle group under partialD3.",
    "both", 5,
    "verify_mid_equal against zero: exact tiers plus realization residual < tol",
)
def _run_relator_22term(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        f = ctx.field
        a, b = f.gen(0), f.gen(1 % f.k)

        def body():
            q0 = run.rng.randint(1, 5)
            q1 = run.rng.randint(1, 5)
            q2 = run.rng.randint(1, 5)
            c = f.from_fraction(q0) + a * q1 + b * q2
            try:
                e = relator(ctx, "twenty_two_term", a=a, b=b, c=c)
            except ValueError as exc:
                raise NonGenericError(str(exc))
            run.mid_verdict(partialD3(e), MidElement(ctx), samples=3)
        run.retry(body)
        if run.failures:
            break


# ---------------------------------------------------------------------------
# Projection-boundary compositions
# ---------------------------------------------------------------------------


@_register(
    "remark_alld_1",
    "tau0_2 after the projection boundary of four points in space is zero.",
    "exact", 50,
    "composite image has empty canonical form",
)
def _run_remark_alld_1(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 4, 3)
            run.check(tau0_2_after_dprime(ctx, c).is_zero(),
                      "composite through the projection boundary is nonzero")
        run.retry(body)
        if run.failures:
            break


@_register(
    "remark_alld_2",
    "tau1_2 after the projection boundary of five points in space is killed "
    "by partialD2.",
    "exact", 50,
    "partialD2 image has empty canonical form",
)
def _run_remark_alld_2(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 5, 3)
            run.check(partialD2(tau1_2_after_dprime(ctx, c)).is_zero(),
                      "composite escaped the kernel")
        run.retry(body)
        if run.failures:
            break


@_register(
    "remark_alld_3",
    "tau0_3 after the projection boundary of five points in four dimensions "
    "is zero.",
    "exact", 50,
    "composite image has empty canonical form",
)
def _run_remark_alld_3(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            c = run.config(ctx, 5, 4)
            run.check(tau0_3_after_dprime(ctx, c).is_zero(),
                      "composite through the projection boundary is nonzero")
        run.retry(body)
        if run.failures:
            break


@_register(
    "remark_alld_n",
    "tau0_n after the projection boundary is zero, for n = 2 and n = 3.",
    "exact", 50,
    "composite image has empty canonical form for each n",
)
def _run_remark_alld_n(run: Run):
    for run.trial in range(run.opts.trials):
        ctx = run.ctx()
        def body():
            for n in (2, 3):
                c = run.config(ctx, n + 2, n + 1)
                run.check(tau0_n_after_dprime(ctx, c, n).is_zero(),
                          f"composite for n={n} is nonzero")
        run.retry(body)
        if run.failures:
            break


# ---------------------------------------------------------------------------
# Harness
# ---------------------------------------------------------------------------


def run_check(desc: CheckDescriptor, settings: Settings) -> CheckResult:
    run = Run(desc, settings)
    try:
        desc.runner(run)
    except (CheckError, RuntimeError) as exc:
        return CheckResult(
            id=desc.id, statement=desc.statement, tier=desc.tier,
            status="ERROR", trials=run.trial + 1,
            max_residual=run.max_residual, scalar_slack=run.scalar_slack,
            notes=tuple(run.notes) + (str(exc),),
        )
    status = "PASS" if run.failures == 0 else "FAIL"
    return CheckResult(
        id=desc.id, statement=desc.statement, tier=desc.tier,
        status=status, trials=run.trial + 1,
        max_residual=run.max_residual, scalar_slack=run.scalar_slack,
        notes=tuple(run.notes),
    )


def audit_catalog() -> list:
    """Checks whose statement or bound is missing; must come back empty."""
    missing = []
    for desc in CATALOG.values():
        if not desc.statement.strip() or not desc.bound.strip():
            missing.append(desc.id)
    return missing


def run_suite(settings: Settings, ids=None, log=None) -> dict:
    """Run the named checks (default: whole catalog) and build the report."""
    import time as _time

    selected = list(CATALOG) if ids is None else list(ids)
    unknown = [i for i in selected if i not in CATALOG]
    if unknown:
        raise KeyError(f"unknown check ids {unknown}; available: {sorted(CATALOG)}")
    results = []
    for check_id in selected:
        desc = CATALOG[check_id]
        t0 = _time.perf_counter()
        res = run_check(desc, settings)
        dt = _time.perf_counter() - t0
        if log is not None:
            extra = ""
            if res.max_residual is not None:
                extra += f"  max_residual={res.max_residual:.3e}"
            if res.scalar_slack is not None:
                extra += f"  slack={res.scalar_slack}"
            log(f"{res.status:5s}  {check_id:28s} trials={res.trials:<4d}"
                f" {dt:7.2f}s{extra}")
            for note in res.notes:
                log(f"       - {note}")
        results.append(res)
    report = {
        "suite": "grasscomplex verify",
        "seed": settings.seed,
        "precision": settings.precision,
        "tolerance": f"{settings.tol:.3e}",
        "vars": settings.vars,
        "coeff_bound": settings.coeff_bound,
        "unbound_statements": audit_catalog(),
        "checks": [r.as_json() for r in results],
        "all_pass": all(r.status == "PASS" for r in results),
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
