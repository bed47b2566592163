"""Configurations of vectors, their determinants, boundaries and ratios.

A configuration is an ordered tuple of vectors over F.  Projection (the
second boundary d') is represented by carrying apex vectors instead of
computing quotient coordinates: every determinant prepends the apex rows, so
a projected determinant of k points is the full (apex + points) determinant.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Optional, Sequence

from .field import Field, RationalFunction


class NonGenericError(ValueError):
    pass


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def symmetric_group(n: int):
    """All permutations of range(n) with their signs, in lexicographic order."""
    return [(p, _perm_sign(p)) for p in itertools.permutations(range(n))]


class Configuration:
    """Immutable ordered tuple of F-vectors with optional apex history."""

    __slots__ = ("field", "points", "apex", "volume", "_det_cache", "_h")

    def __init__(self, field: Field, points, apex=(), volume=None):
        self.field = field
        self.points = tuple(tuple(v) for v in points)
        # Apex order is normalized: determinants only flip sign under apex
        # reordering, and every consumer is sign-blind (coefficients go
        # through Dlog, legs live mod torsion, ratios use an even det count),
        # while sorting makes projecting from i then j and from j then i
        # yield the same configuration, so double projections cancel.
        self.apex = tuple(
            sorted(
                (tuple(v) for v in apex),
                key=lambda vec: tuple(str(x) for x in vec),
            )
        )
        self.volume = volume if volume is not None else field.one
        if not self.points:
            raise ValueError("empty configuration")
        width = len(self.points[0])
        for v in self.points + self.apex:
            if len(v) != width:
                raise ValueError("ragged configuration")
            if all(x.is_zero() for x in v):
                raise ValueError("zero vector in configuration")
        self._det_cache = {}
        self._h = None

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def ambient(self) -> int:
        return len(self.points[0])

    @property
    def dim(self) -> int:
        """Effective dimension: ambient minus projection history."""
        return self.ambient - len(self.apex)

    def __eq__(self, other):
        return (
            isinstance(other, Configuration)
            and self.points == other.points
            and self.apex == other.apex
            and self.volume == other.volume
        )

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.points, self.apex, self.volume))
        return self._h

    def __repr__(self):
        pts = ",".join("(" + ",".join(map(str, v)) + ")" for v in self.points)
        tag = f" apex={len(self.apex)}" if self.apex else ""
        return f"C[{pts}{tag}]"

    # -- determinants --------------------------------------------------------

    def determinant(self, indices: Sequence[int]) -> RationalFunction:
        """Det of apex rows followed by the selected point rows, times the
        volume scale."""
        key = tuple(indices)
        hit = self._det_cache.get(key)
        if hit is not None:
            return hit
        rows = list(self.apex) + [self.points[i] for i in key]
        if len(rows) != self.ambient:
            raise ValueError(
                f"determinant needs {self.ambient} rows, got {len(rows)}"
            )
        val = _det(self.field, rows) * self.volume
        self._det_cache[key] = val
        return val

    def is_generic(self) -> bool:
        for sub in itertools.combinations(range(self.m), self.dim):
            if self.determinant(sub).is_zero():
                return False
        return True

    # -- derived configurations ----------------------------------------------

    def omit(self, i: int) -> "Configuration":
        pts = self.points[:i] + self.points[i + 1 :]
        return Configuration(self.field, pts, self.apex, self.volume)

    def project(self, i: int) -> "Configuration":
        pts = self.points[:i] + self.points[i + 1 :]
        return Configuration(self.field, pts, self.apex + (self.points[i],), self.volume)

    def permute(self, sigma: Sequence[int]) -> "Configuration":
        pts = tuple(self.points[sigma[j]] for j in range(len(sigma)))
        return Configuration(self.field, pts, self.apex, self.volume)

    def scale_point(self, i: int, lam: RationalFunction) -> "Configuration":
        pts = list(self.points)
        pts[i] = tuple(lam * x for x in pts[i])
        return Configuration(self.field, pts, self.apex, self.volume)

    def scale_volume(self, lam: RationalFunction) -> "Configuration":
        return Configuration(self.field, self.points, self.apex, self.volume * lam)


def _det(field: Field, rows) -> RationalFunction:
    """Cofactor expansion with minor memoization over column subsets."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    cols = tuple(range(n))
    memo = {}

    def minor(r: int, cs: tuple) -> RationalFunction:
        if len(cs) == 1:
            return rows[r][cs[0]]
        key = (r, cs)
        got = memo.get(key)
        if got is not None:
            return got
        acc = field.zero
        for k, c in enumerate(cs):
            e = rows[r][c]
            if e.is_zero():
                continue
            sub = minor(r + 1, cs[:k] + cs[k + 1 :])
            term = e * sub
            acc = acc + term if k % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return minor(0, cols)


# ---------------------------------------------------------------------------
# Formal sums of configurations and the two boundary maps
# ---------------------------------------------------------------------------


class ConfigSum:
    """Finite Z-linear combination of configurations, like terms merged."""

    def __init__(self, terms: Optional[Iterable] = None):
        self.terms: dict[Configuration, int] = {}
        if terms:
            for coeff, cfg in terms:
                self._add(coeff, cfg)

    def _add(self, coeff: int, cfg: Configuration):
        new = self.terms.get(cfg, 0) + coeff
        if new:
            self.terms[cfg] = new
        else:
            self.terms.pop(cfg, None)

    def __add__(self, other: "ConfigSum") -> "ConfigSum":
        out = ConfigSum()
        for cfg, c in self.terms.items():
            out._add(c, cfg)
        for cfg, c in other.terms.items():
            out._add(c, cfg)
        return out

    def __neg__(self) -> "ConfigSum":
        out = ConfigSum()
        for cfg, c in self.terms.items():
            out.terms[cfg] = -c
        return out

    def __sub__(self, other: "ConfigSum") -> "ConfigSum":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(self.terms.items())

    def map_expand(self, f: Callable[[Configuration], "ConfigSum"]) -> "ConfigSum":
        out = ConfigSum()
        for cfg, c in self.terms.items():
            for cfg2, c2 in f(cfg):
                out._add(c * c2, cfg2)
        return out


def boundary_d(c: Configuration) -> ConfigSum:
    """d: alternating sum of point omissions."""
    return ConfigSum(((-1) ** i, c.omit(i)) for i in range(c.m))


def boundary_dprime(c: Configuration) -> ConfigSum:
    """d': alternating sum of projections from each point."""
    if c.dim < 2 or c.m < 2:
        raise ValueError("d' needs dim >= 2 and at least two points")
    return ConfigSum(((-1) ** i, c.project(i)) for i in range(c.m))


# ---------------------------------------------------------------------------
# Ratio invariants
# ---------------------------------------------------------------------------


def cross_ratio(c: Configuration) -> RationalFunction:
    """r = D(l0 l3) D(l1 l2) / (D(l0 l2) D(l1 l3)) on four coplanar points."""
    if c.m != 4 or c.dim != 2:
        raise ValueError("cross_ratio needs four points in dimension 2")
    d = c.determinant
    denom = d((0, 2)) * d((1, 3))
    if denom.is_zero():
        raise NonGenericError("non-generic configuration")
    r = d((0, 3)) * d((1, 2)) / denom
    if r.is_zero() or r.is_one():
        raise NonGenericError("non-generic configuration")
    return r


def projected_cross_ratio(c: Configuration, apex: int, four: Sequence[int]) -> RationalFunction:
    """r(l_apex | q1 q2 q3 q4) via 3x3 (or lifted) determinants."""
    q1, q2, q3, q4 = four
    d = c.determinant
    denom = d((apex, q1, q3)) * d((apex, q2, q4))
    if denom.is_zero():
        raise NonGenericError("non-generic configuration")
    r = d((apex, q1, q4)) * d((apex, q2, q3)) / denom
    if r.is_zero() or r.is_one():
        raise NonGenericError("non-generic configuration")
    return r


def triple_ratio_term(c: Configuration, labels: Sequence[int] = (0, 1, 2, 3, 4, 5)) -> RationalFunction:
    """The generic triple-ratio term (013)(124)(205) / ((014)(125)(203))."""
    p = labels
    d = c.determinant
    num = d((p[0], p[1], p[3])) * d((p[1], p[2], p[4])) * d((p[2], p[0], p[5]))
    den = d((p[0], p[1], p[4])) * d((p[1], p[2], p[5])) * d((p[2], p[0], p[3]))
    if den.is_zero() or num.is_zero():
        raise NonGenericError("non-generic configuration")
    r = num / den
    if r.is_one():
        raise NonGenericError("non-generic configuration")
    return r


# For each admissible apex pair, the two projected cross-ratios whose ratio
# is the triple-ratio term.  Keys are sorted apex pairs from {0, 1, 2}.
_FACTOR_TABLE = {
    (1, 2): ((2, (1, 0, 5, 3)), (1, (0, 2, 3, 4))),
    (0, 1): ((1, (0, 2, 4, 5)), (0, (2, 1, 5, 3))),
    (0, 2): ((0, (2, 1, 3, 4)), (2, (1, 0, 4, 5))),
}


def factor_triple_ratio(c: Configuration, pair: Sequence[int]):
    """Split the triple ratio into two projected cross-ratios r1/r2."""
    key = tuple(sorted(pair))
    if key not in _FACTOR_TABLE:
        raise ValueError(f"projection pair must be two of {{0,1,2}}, got {pair}")
    (a1, f1), (a2, f2) = _FACTOR_TABLE[key]
    return projected_cross_ratio(c, a1, f1), projected_cross_ratio(c, a2, f2)


def alternate(perms, f, c: Configuration):
    """Unnormalized signed sum of f over relabelings of c.

    perms is an iterable of (permutation tuple, sign); scalar prefactors are
    the caller's business.
    """
    total = None
    for sigma, sign in perms:
        val = f(c.permute(sigma))
        if sign < 0:
            val = -val
        total = val if total is None else total + val
    return total


# ---------------------------------------------------------------------------
# Sampling and parsing
# ---------------------------------------------------------------------------


def random_configuration(
    field: Field,
    m: int,
    n: int,
    rng,
    coeff_bound: int = 20,
    variable_entries: int = 2,
    max_tries: int = 100,
) -> Configuration:
    """Random generic m points in dimension n: integer coordinates with a few
    variable-linear entries sprinkled in so that derivations act nontrivially."""
    B = coeff_bound
    for _ in range(max_tries):
        coords = [[field.from_fraction(rng.randint(-B, B)) for _ in range(n)] for _ in range(m)]
        slots = [(i, j) for i in range(m) for j in range(n)]
        for i, j in rng.sample(slots, min(variable_entries, len(slots))):
            g = field.gen(rng.randrange(field.k))
            c0 = rng.randint(-B, B)
            c1 = rng.choice([-3, -2, -1, 1, 2, 3])
            coords[i][j] = field.from_fraction(c0) + g * c1
        try:
            cfg = Configuration(field, coords)
            if cfg.is_generic():
                return cfg
        except ValueError:
            continue
    raise NonGenericError(f"no generic configuration found in {max_tries} tries")


def parse_configuration(field: Field, text: str) -> Configuration:
    """Parse `[[1,0,0],[0,1,0],[t1,1,2]]` with rational-function entries."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError("expected a bracketed list of vectors")
    rows = _split_top(s[1:-1])
    points = []
    for row in rows:
        row = row.strip()
        if not (row.startswith("[") and row.endswith("]")):
            raise ValueError(f"expected a bracketed vector: {row}")
        points.append([field.parse(e) for e in _split_top(row[1:-1])])
    return Configuration(field, points)


def _split_top(s: str) -> list:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    tail = s[start:].strip()
    if tail:
        parts.append(tail)
    return parts
