"""The quadratic Veronese coordinate map and its inversion.

A point of PG(n, q) is sent to the vector of all degree-2 monomials of
its coordinates.  Monomials are indexed by ordered pairs (i, j) with
i <= j in lexicographic order: (0,0), (0,1), ..., (0,n), (1,1), ...,
(n,n).  Quadratic-form coefficient vectors use the same index order, so
a form evaluates at a point as the plain dot product of the two vectors.
"""

from __future__ import annotations

import functools
import math

from .errors import DimensionMismatch
from .projective import ProjectiveSpace


def delta(t: int) -> int:
    """Number of degree-2 monomials in t+1 variables: C(t+2, 2)."""
    if t < 0:
        raise DimensionMismatch(f"delta requires t >= 0, got {t}")
    return math.comb(t + 2, 2)


@functools.lru_cache(maxsize=None)
def monomial_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


class VeroneseMap:
    """Coordinate form of the degree-2 embedding of PG(n, q) into PG(n', q)."""

    def __init__(self, source: ProjectiveSpace):
        self.source = source
        self.target = ProjectiveSpace(source.field, delta(source.n) - 1)
        self.pairs = monomial_pairs(source.n)
        self.flat_index = {pair: idx for idx, pair in enumerate(self.pairs)}

    def apply(self, point) -> tuple[int, ...]:
        x = self.source.normalize(point)
        mul = self.source.field.mul
        return self.target.normalize(tuple(mul(x[i], x[j]) for i, j in self.pairs))

    def image(self) -> list[tuple[int, ...]]:
        return [self.apply(p) for p in self.source.points()]

    def preimage(self, point) -> tuple[int, ...] | None:
        """The unique source point mapping to `point`, or None.

        A vector of the image form has some nonzero diagonal entry
        y_ii = x_i^2; row i of the symmetric pattern then recovers x up
        to scale, and the remaining entries must satisfy
        y_ab * y_ii == y_ai * y_bi.
        """
        y = self.target.normalize(point)
        n = self.source.n
        idx = self.flat_index
        i = next((i for i in range(n + 1) if y[idx[(i, i)]]), None)
        if i is None:
            return None
        entry = lambda a, b: y[idx[(a, b) if a <= b else (b, a)]]
        x = tuple(entry(min(a, i), max(a, i)) for a in range(n + 1))
        mul = self.source.field.mul
        yii = entry(i, i)
        for a in range(n + 1):
            for b in range(a, n + 1):
                if mul(entry(a, b), yii) != mul(entry(a, i), entry(b, i)):
                    return None
        return self.source.normalize(x)


def rho(space: ProjectiveSpace, point) -> tuple[int, ...]:
    return veronese_for(space).apply(point)


def rho_preimage(space: ProjectiveSpace, point) -> tuple[int, ...] | None:
    return veronese_for(space).preimage(point)


@functools.lru_cache(maxsize=None)
def veronese_for(space: ProjectiveSpace) -> VeroneseMap:
    return VeroneseMap(space)
