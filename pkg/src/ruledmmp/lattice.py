"""Exact Néron–Severi lattice of an iterated blow-up of a ruled surface.

Classes are integer vectors in the basis (C0, F, E1, ..., Ek) where C0 is the
minimal section of the starting P^1-bundle (C0^2 = -e), F the fiber class and
E_i the total transforms of the exceptional curves.  Python integers are
unbounded, so every computation here is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class LatticeError(ValueError):
    """Raised for classes that do not belong to the lattice they are used in."""


@dataclass(frozen=True)
class LatticeContext:
    genus: int
    e_invariant: int
    num_exceptionals: int

    def __post_init__(self):
        if self.genus < 0:
            raise LatticeError(f"base genus must be >= 0, got {self.genus}")
        if self.num_exceptionals < 0:
            raise LatticeError(f"number of blow-ups must be >= 0, got {self.num_exceptionals}")

    @property
    def rank(self) -> int:
        return self.num_exceptionals + 2

    def gram_matrix(self) -> list[list[int]]:
        k = self.num_exceptionals
        g = [[0] * (k + 2) for _ in range(k + 2)]
        g[0][0] = -self.e_invariant
        g[0][1] = g[1][0] = 1
        for i in range(k):
            g[i + 2][i + 2] = -1
        return g

    def with_exceptionals(self, k: int) -> "LatticeContext":
        return LatticeContext(self.genus, self.e_invariant, k)


@dataclass(frozen=True)
class DivisorClass:
    """Numerical class c0*C0 + f*F + sum e[i]*E_{i+1}."""

    c0: int
    f: int
    e: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.e, tuple):
            object.__setattr__(self, "e", tuple(self.e))

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "DivisorClass":
        if len(coeffs) < 2:
            raise LatticeError(f"class needs at least two coefficients, got {list(coeffs)}")
        return cls(int(coeffs[0]), int(coeffs[1]), tuple(int(c) for c in coeffs[2:]))

    @classmethod
    def zero(cls, ctx: LatticeContext) -> "DivisorClass":
        return cls(0, 0, (0,) * ctx.num_exceptionals)

    def to_list(self) -> list[int]:
        return [self.c0, self.f, *self.e]

    def _same_shape(self, other: "DivisorClass"):
        if len(self.e) != len(other.e):
            raise LatticeError(
                f"dimension mismatch: {self.to_list()} vs {other.to_list()}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_shape(other)
        return DivisorClass(
            self.c0 + other.c0, self.f + other.f, tuple(a + b for a, b in zip(self.e, other.e))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.c0, -self.f, tuple(-a for a in self.e))

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.c0, n * self.f, tuple(n * a for a in self.e))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.f == 0 and not any(self.e)

    def extended(self, k: int) -> "DivisorClass":
        """The same class viewed in a lattice with ``k`` exceptional classes."""
        if k < len(self.e):
            raise LatticeError(f"cannot shrink {self.to_list()} to {k} exceptionals")
        return DivisorClass(self.c0, self.f, self.e + (0,) * (k - len(self.e)))

    def __str__(self) -> str:
        return str(self.to_list())


def _check(x: DivisorClass, ctx: LatticeContext):
    if len(x.e) != ctx.num_exceptionals:
        raise LatticeError(
            f"class {x.to_list()} has {len(x.e)} exceptional coefficients, "
            f"context expects {ctx.num_exceptionals}"
        )


def intersect(a: DivisorClass, b: DivisorClass, ctx: LatticeContext) -> int:
    _check(a, ctx)
    _check(b, ctx)
    return (
        -ctx.e_invariant * a.c0 * b.c0
        + a.c0 * b.f
        + a.f * b.c0
        - sum(x * y for x, y in zip(a.e, b.e))
    )


def section_class(ctx: LatticeContext) -> DivisorClass:
    return DivisorClass(1, 0, (0,) * ctx.num_exceptionals)


def fiber_class(ctx: LatticeContext) -> DivisorClass:
    return DivisorClass(0, 1, (0,) * ctx.num_exceptionals)


def exceptional_class(ctx: LatticeContext, i: int) -> DivisorClass:
    """E_i, 1-based."""
    if not 1 <= i <= ctx.num_exceptionals:
        raise LatticeError(f"no exceptional class E{i} in a lattice with k={ctx.num_exceptionals}")
    e = [0] * ctx.num_exceptionals
    e[i - 1] = 1
    return DivisorClass(0, 0, tuple(e))


def canonical_class(ctx: LatticeContext) -> DivisorClass:
    """K = -2C0 + (2g-2-e)F + sum E_i."""
    return DivisorClass(
        -2, 2 * ctx.genus - 2 - ctx.e_invariant, (1,) * ctx.num_exceptionals
    )


def project_contract(x: DivisorClass, c: DivisorClass, ctx: LatticeContext) -> DivisorClass:
    """Total transform of the pushforward of ``x`` under contracting the (-1)-class ``c``.

    This is the orthogonal projection x + (x.c) c onto the complement of c.
    """
    cc = intersect(c, c, ctx)
    if cc != -1:
        raise LatticeError(f"contracted class {c.to_list()} has square {cc}, expected -1")
    return x + intersect(x, c, ctx) * c


def adjunction_genus(x: DivisorClass, ctx: LatticeContext) -> int:
    """Arithmetic genus x.(x+K)/2 + 1."""
    twice = intersect(x, x + canonical_class(ctx), ctx)
    if twice % 2:
        raise LatticeError(f"x.(x+K) = {twice} is odd; {x.to_list()} is not a curve class")
    return twice // 2 + 1


def _solve_rational(columns: list[list[int]], target: list[int]):
    """Row-reduce [columns | target] over Q.

    Returns (pivot_cols, rows) where rows is the reduced augmented matrix, or
    None if the system is inconsistent.
    """
    n = len(columns)
    m = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    return pivots, rows[:r]


def decompose_effective(
    x: DivisorClass,
    basis: Sequence[DivisorClass],
    ctx: LatticeContext,
    slack: int = 0,
) -> Optional[list[int]]:
    """Non-negative integers n_i with x = sum n_i * basis[i], or None.

    The linear system is row-reduced exactly over Q; free variables (only
    present when the basis is linearly dependent) are searched over
    0..bound with bound = max |coefficient of x| + slack.  Callers pass the
    total fiber multiplicity as ``slack``.  The search is exhaustive within
    that bound, and the first solution in lexicographic order of the free
    variables is returned.
    """
    _check(x, ctx)
    for b in basis:
        _check(b, ctx)
    if len(set(basis)) != len(basis):
        raise LatticeError("basis classes must be pairwise distinct")
    n = len(basis)
    if n == 0:
        return [] if x.is_zero() else None
    solved = _solve_rational([b.to_list() for b in basis], x.to_list())
    if solved is None:
        return None
    pivots, rows = solved
    free = [j for j in range(n) if j not in pivots]
    bound = max((abs(c) for c in x.to_list()), default=0) + slack

    for values in itertools.product(range(bound + 1), repeat=len(free)):
        coeffs: list[Fraction] = [Fraction(0)] * n
        for j, v in zip(free, values):
            coeffs[j] = Fraction(v)
        for row, pc in zip(rows, pivots):
            coeffs[pc] = row[n] - sum(row[j] * coeffs[j] for j in free)
        if all(c.denominator == 1 and c >= 0 for c in coeffs):
            return [int(c) for c in coeffs]
    return None


def combine(terms: Iterable[tuple[int, DivisorClass]], ctx: LatticeContext) -> DivisorClass:
    total = DivisorClass.zero(ctx)
    for n, cls in terms:
        total = total + n * cls
    return total
