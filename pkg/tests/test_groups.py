"""Group layers: relator kernels, boundary maps, middle-group equality."""

import random
from fractions import Fraction

import pytest

from grasscomplex.derivation import Derivation
from grasscomplex.groups import (
    B2Element,
    Beta2Element,
    BetaDElement,
    MidElement,
    cath2,
    delta2,
    make_context,
    partialD2,
    partialD3,
    partialD_mid,
    relator,
    tau2D,
    transport,
    verify_mid_equal,
)

from conftest import make_ctx


def args_ab(ctx):
    f = ctx.field
    return f.gen(0) + 2, (f.gen(1) + 3) / (f.gen(0) + 5)


def test_b2_terms_merge_and_cancel(ctx):
    x = ctx.field.gen(0) + 1
    e = B2Element(ctx, [(Fraction(1), x), (Fraction(-1), x)])
    assert e.is_raw_zero()
    e2 = B2Element(ctx, [(Fraction(1), x)]).scale(Fraction(3, 2))
    assert e2.terms[x] == Fraction(3, 2)


def test_delta2_five_term_is_zero(ctx):
    a, b = args_ab(ctx)
    e = relator(ctx, "five_term_B2", a=a, b=b)
    assert delta2(e).is_zero()
    single = B2Element(ctx, [(Fraction(1), a)])
    assert not delta2(single).is_zero()


def test_partialD2_kernel_relators(ctx):
    a, b = args_ab(ctx)
    for e in (
        relator(ctx, "two_term", a=a),
        relator(ctx, "inversion", a=a),
        relator(ctx, "five_term_betaD", a=a, b=b),
        relator(ctx, "distribution2", a=a),
    ):
        assert partialD2(e).is_zero()


def test_partialD2_single_term_nonzero(ctx):
    a, _ = args_ab(ctx)
    e = BetaDElement(ctx, 2, [(1, a)])
    assert not partialD2(e).is_zero()


def test_cath2_four_term_is_zero(ctx):
    a, b = args_ab(ctx)
    e = relator(ctx, "four_term_beta2", a=a, b=b)
    assert cath2(e).is_zero()
    assert not cath2(Beta2Element(ctx, [(ctx.field.one, a)])).is_zero()


def test_tau2D_carries_five_term_into_betaD_kernel(ctx):
    a, b = args_ab(ctx)
    e = tau2D(relator(ctx, "five_term_B2", a=a, b=b), ctx)
    assert partialD2(e).is_zero()


def test_three_term_beta3_dies_in_mid(ctx, rng):
    a = ctx.field.gen(0) + 2
    e = relator(ctx, "three_term_beta3", a=a)
    v = verify_mid_equal(partialD3(e), MidElement(ctx), trials=3, rng=rng)
    assert v.passed and v.tier1_exact and v.tier2_exact


def test_twenty_two_term_dies_in_mid(ctx, rng):
    f = ctx.field
    a, b = f.gen(0) + 2, f.gen(1) + 3
    c = f.from_fraction(2) + f.gen(0) + f.gen(1)
    e = relator(ctx, "twenty_two_term", a=a, b=b, c=c)
    v = verify_mid_equal(partialD3(e), MidElement(ctx), trials=3, rng=rng)
    assert v.passed and v.tier1_exact and v.tier2_exact
    assert v.numeric_max < 1e-10


def test_partial_squared_vanishes(ctx):
    f = ctx.field
    e = BetaDElement(
        ctx, 3,
        [(f.gen(0), f.gen(0) + 2), (f.one + f.gen(1), (f.gen(1) + 5) / (f.gen(0) + 1))],
    )
    assert partialD_mid(partialD3(e)).is_zero()


def test_verify_mid_equal_detects_scaling(ctx, rng):
    a = ctx.field.gen(0) + 3
    e = partialD3(BetaDElement(ctx, 3, [(ctx.field.one, a)]))
    v = verify_mid_equal(e, e.scale(ctx.field.from_fraction(2)), trials=2, rng=rng)
    assert not v.passed
    assert v.notes


def test_verify_mid_equal_trials_validated(ctx):
    with pytest.raises(ValueError):
        verify_mid_equal(MidElement(ctx), MidElement(ctx), trials=0)


def test_transport_rejects_killed_argument(field):
    # d/dt1 annihilates t2, so the angle bracket <t2> has no image
    ctx = make_ctx(field, Derivation.partial(field, 0))
    t2 = field.gen(1)
    with pytest.raises(ValueError):
        transport(ctx, [(field.one, t2)], 2)


def test_relator_rejects_unknown_kind(ctx):
    with pytest.raises(ValueError):
        relator(ctx, "six_term")


def test_relator_rejects_degenerate_parameters(ctx):
    one = ctx.field.one
    with pytest.raises(ValueError):
        relator(ctx, "two_term", a=one)
    a = ctx.field.gen(0) + 2
    with pytest.raises(ValueError):
        relator(ctx, "five_term_B2", a=a, b=a)
    with pytest.raises(ValueError):
        relator(ctx, "distribution2", a=-one)


def test_mid_element_linear_structure(ctx):
    f = ctx.field
    a = f.gen(0) + 2
    e = MidElement(ctx)
    e.add_left(f.one, a, a)
    e.add_right(f.gen(1), a)
    d = e - e
    assert not d.left and not d.right
    assert "left" in repr(e) and "right" in repr(e)


def test_mid_right_legs_recorded_mod_inversion(ctx):
    # [y]_2 and [1/y]_2 realize to opposite values; add_right folds the
    #   inversion relation so the right summand stays small
    f = ctx.field
    y = f.gen(0) + 2
    e1 = MidElement(ctx)
    e1.add_right(f.one, y)
    e2 = MidElement(ctx)
    e2.add_right(-f.one, f.one / y)
    v = verify_mid_equal(e1, e2, trials=2, rng=random.Random(3))
    assert v.passed


def test_delta2_respects_five_term_under_random_arguments(ctx, rng):
    f = ctx.field
    for _ in range(10):
        c0 = f.from_fraction(rng.randint(2, 9))
        a = c0 + f.gen(0)
        b = f.from_fraction(rng.randint(2, 9)) + f.gen(1)
        if a == b:
            continue
        e = relator(ctx, "five_term_B2", a=a, b=b)
        assert delta2(e).is_zero()
