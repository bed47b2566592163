"""Maps from configuration spaces into the polylogarithmic groups.

Weight 2: tau0_2 on triples in the plane, tau1_2 on quadruples (the
cross-ratio generator).  Weight 3: tau0_3 on quadruples in space, tau1_3 on
quintuples (projected cross-ratios against complementary determinant
products), tau2_3 on sextuples (the alternated triple-ratio generator).
tau0_n generalizes the bottom row to n up to 5.

All maps evaluate determinants through the configuration's own cache using
label tuples, so alternations over S5 or S6 reuse the same handful of
determinants instead of rebuilding permuted configurations.
"""

from __future__ import annotations

from fractions import Fraction

from .configurations import (
    ConfigSum,
    Configuration,
    NonGenericError,
    boundary_d,
    boundary_dprime,
    cross_ratio,
    projected_cross_ratio,
    symmetric_group,
    triple_ratio_term,
)
from .groups import BetaDElement, Context, MidElement, _dlog_times
from .tensors import F_W, TensorElement

_SYM_CACHE: dict = {}


def _sym(n: int):
    if n not in _SYM_CACHE:
        _SYM_CACHE[n] = symmetric_group(n)
    return _SYM_CACHE[n]


def _expect(c: Configuration, m: int, dim: int, who: str):
    if c.m != m or c.dim != dim:
        raise ValueError(f"{who} wants {m} points in dimension {dim}, got {c.m} in {c.dim}")


def _det_or_raise(c: Configuration, idx):
    v = c.determinant(tuple(idx))
    if v.is_zero():
        raise NonGenericError("non-generic configuration")
    return v


def apply_linear(f, csum: ConfigSum):
    """Extend a map on configurations linearly over a formal sum."""
    total = None
    for cfg, coeff in csum:
        piece = f(cfg).scale(coeff)
        total = piece if total is None else total + piece
    if total is None:
        raise ValueError("empty configuration sum")
    return total


# ---------------------------------------------------------------------------
# Weight 2
# ---------------------------------------------------------------------------


def tau0_2(ctx: Context, c: Configuration) -> TensorElement:
    """Triples in the plane to F (x) F^x, cyclically and without signs."""
    _expect(c, 3, 2, "tau0_2")
    out = TensorElement(F_W(1), ctx.base)
    for i in range(3):
        coeff = _dlog_times(ctx, 1, _det_or_raise(c, (i, (i + 2) % 3)))
        leg = _det_or_raise(c, (i, (i + 1) % 3)) / _det_or_raise(
            c, ((i - 1) % 3, (i + 1) % 3)
        )
        out.add_term(coeff, (leg,))
    return out


def tau1_2(ctx: Context, c: Configuration) -> BetaDElement:
    """Quadruples in the plane to the weight-2 double-bracket group."""
    _expect(c, 4, 2, "tau1_2")
    return BetaDElement(ctx, 2, [(1, cross_ratio(c))])


# ---------------------------------------------------------------------------
# Weight 3, bottom row
# ---------------------------------------------------------------------------


def tau0_3(ctx: Context, c: Configuration) -> TensorElement:
    """Quadruples in space to F (x) Wedge^2(F^x), with alternating signs."""
    _expect(c, 4, 3, "tau0_3")

    def omdet(j):
        keep = tuple(k for k in range(4) if k != j % 4)
        return _det_or_raise(c, keep)

    out = TensorElement(F_W(2), ctx.base)
    for i in range(4):
        coeff = _dlog_times(ctx, -1 if i % 2 else 1, omdet(i))
        leg1 = omdet(i + 1) / omdet(i + 2)
        leg2 = omdet(i + 3) / omdet(i + 2)
        out.add_term(coeff, (leg1, leg2))
    return out


def tau0_n(ctx: Context, c: Configuration, n: int) -> TensorElement:
    """The general bottom map on n+1 points in dimension n, n in 2..5.

    Sign (-1)^(i n) on the i-th omission; legs are the chain of consecutive
    omitted-determinant ratios.  For even n the signs all collapse to +1,
    matching tau0_2; for n = 3 this is the negative of tau0_3 because the
    chain pairs the wedge legs around a shared middle determinant.
    """
    if not 2 <= n <= 5:
        raise ValueError("n out of the supported range 2..5")
    _expect(c, n + 1, n, "tau0_n")
    mod = n + 1

    def omdet(j):
        keep = tuple(k for k in range(mod) if k != j % mod)
        return _det_or_raise(c, keep)

    out = TensorElement(F_W(n - 1), ctx.base)
    for i in range(mod):
        coeff = _dlog_times(ctx, -1 if (i * n) % 2 else 1, omdet(i))
        legs = tuple(omdet(i + k) / omdet(i + k + 1) for k in range(1, n))
        out.add_term(coeff, legs)
    return out


# ---------------------------------------------------------------------------
# Weight 3, middle row
# ---------------------------------------------------------------------------


def _complement_product(c: Configuration, i: int):
    """Product over j != i of the determinant on the three points left after
    dropping both i and j."""
    total = None
    for j in range(5):
        if j == i:
            continue
        keep = tuple(k for k in range(5) if k not in (i, j))
        v = _det_or_raise(c, keep)
        total = v if total is None else total * v
    return total


def tau1_3(ctx: Context, c: Configuration) -> MidElement:
    """Quintuples in space to the weight-3 middle group.

    -(1/3) sum_i (-1)^i ( [[r(l_i | rest)]] (x) P_i
                          + Dlog(P_i) (x) [r(l_i | rest)]_2 )
    with P_i the product of complementary determinants.
    """
    _expect(c, 5, 3, "tau1_3")
    out = MidElement(ctx)
    for i in range(5):
        rest = tuple(j for j in range(5) if j != i)
        r = projected_cross_ratio(c, i, rest)
        p = _complement_product(c, i)
        coeff = Fraction((-1) ** (i + 1), 3)
        out.add_left(coeff, r, p)
        out.add_right(_dlog_times(ctx, coeff, p), r)
    return out


def tau1_3_alt(ctx: Context, c: Configuration) -> MidElement:
    """Alternation form of tau1_3: (1/12) of the signed S5 relabeling sum of
    [[r(0|1234)]] (x) (012) + Dlog(012) (x) [r(0|1234)]_2."""
    _expect(c, 5, 3, "tau1_3_alt")
    out = MidElement(ctx)
    for sigma, sign in _sym(5):
        r = projected_cross_ratio(c, sigma[0], (sigma[1], sigma[2], sigma[3], sigma[4]))
        tri = _det_or_raise(c, (sigma[0], sigma[1], sigma[2]))
        coeff = Fraction(sign, 12)
        out.add_left(coeff, r, tri)
        out.add_right(_dlog_times(ctx, coeff, tri), r)
    return out


def tau2_3(ctx: Context, c: Configuration) -> BetaDElement:
    """Sextuples in space to weight 3: -(1/90) of the signed S6 relabeling
    sum of the triple-ratio double-bracket generator."""
    _expect(c, 6, 3, "tau2_3")
    out = BetaDElement(ctx, 3)
    for sigma, sign in _sym(6):
        try:
            r = triple_ratio_term(c, sigma)
        except NonGenericError as exc:
            raise NonGenericError(
                f"triple ratio degenerate under relabeling {sigma}"
            ) from exc
        out._add(ctx.field.from_fraction(Fraction(-sign, 90)), r)
    return out


# ---------------------------------------------------------------------------
# Compositions used by the checks
# ---------------------------------------------------------------------------


def tau0_2_after_d(ctx: Context, c: Configuration) -> TensorElement:
    _expect(c, 4, 2, "tau0_2 after d")
    return apply_linear(lambda k: tau0_2(ctx, k), boundary_d(c))


def tau1_2_after_d(ctx: Context, c: Configuration) -> BetaDElement:
    _expect(c, 5, 2, "tau1_2 after d")
    return apply_linear(lambda k: tau1_2(ctx, k), boundary_d(c))


def tau0_3_after_d(ctx: Context, c: Configuration) -> TensorElement:
    _expect(c, 5, 3, "tau0_3 after d")
    return apply_linear(lambda k: tau0_3(ctx, k), boundary_d(c))


def tau1_3_after_d(ctx: Context, c: Configuration) -> MidElement:
    _expect(c, 6, 3, "tau1_3 after d")
    return apply_linear(lambda k: tau1_3(ctx, k), boundary_d(c))


def tau0_n_after_dprime(ctx: Context, c: Configuration, n: int) -> TensorElement:
    _expect(c, n + 2, n + 1, "tau0_n after d'")
    return apply_linear(lambda k: tau0_n(ctx, k, n), boundary_dprime(c))


def tau0_2_after_dprime(ctx: Context, c: Configuration) -> TensorElement:
    _expect(c, 4, 3, "tau0_2 after d'")
    return apply_linear(lambda k: tau0_2(ctx, k), boundary_dprime(c))


def tau1_2_after_dprime(ctx: Context, c: Configuration) -> BetaDElement:
    _expect(c, 5, 3, "tau1_2 after d'")
    return apply_linear(lambda k: tau1_2(ctx, k), boundary_dprime(c))


def tau0_3_after_dprime(ctx: Context, c: Configuration) -> TensorElement:
    _expect(c, 5, 4, "tau0_3 after d'")
    return apply_linear(lambda k: tau0_3(ctx, k), boundary_dprime(c))
