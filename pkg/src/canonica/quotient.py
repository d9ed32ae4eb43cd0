"""Quotient rings S/I of a polynomial ring by a homogeneous ideal."""
from __future__ import annotations

import hashlib
from typing import Sequence

from .groebner import FreeModule, Reducer, buchberger
from .polynomial import Polynomial, PolyRing


class QuotientRing:
    """R = S/I with a cached reduced Groebner basis of I.

    Elements of R are represented by polynomials of S in normal form.
    """

    def __init__(self, ambient: PolyRing, relations: Sequence[Polynomial] = (), name: str | None = None):
        self.ambient = ambient
        self.field = ambient.field
        self.relations = [f for f in relations if f]
        for f in self.relations:
            if f.ring != ambient:
                raise ValueError("relation lives in a different ring")
        self.name = name
        self.F1 = FreeModule.ring_level(ambient)
        if self.relations:
            res = buchberger(self.F1, [dict(f.terms) for f in self.relations])
            self.gb = res.elements
        else:
            self.gb = []
        self.reducer = Reducer(self.F1, self.gb)
        self._cache: dict = {}

    # -- basic data ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def names(self):
        return self.ambient.names

    def gb_polys(self) -> list[Polynomial]:
        return [Polynomial(self.ambient, dict(g)) for g in self.gb]

    def is_polynomial_ring(self) -> bool:
        return not self.gb

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.relations)

    def fingerprint(self) -> str:
        text = repr((self.field.describe(), self.ambient.names, self.ambient.weights,
                     [str(g) for g in self.gb_polys()]))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.gb_polys()) or "0"
        return f"QuotientRing({list(self.names)} / ({rel}))"

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.ambient == other.ambient and self.gb == other.gb

    def __hash__(self):
        return hash((self.ambient, len(self.gb)))

    # -- elements -------------------------------------------------------------
    def nf(self, f: Polynomial) -> Polynomial:
        if not self.gb or not f.terms:
            return f
        return Polynomial(self.ambient, self.reducer.reduce(f.terms))

    def __call__(self, value) -> Polynomial:
        return self.nf(self.ambient(value))

    def zero(self) -> Polynomial:
        return self.ambient.zero()

    def one(self) -> Polynomial:
        return self.ambient.one()

    def var(self, i) -> Polynomial:
        return self.nf(self.ambient.var(i))

    @property
    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def mul(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return self.nf(f * g)

    def is_zero(self, f: Polynomial) -> bool:
        return not self.nf(f).terms

    def cached(self, key, build):
        """Single-assignment cache for expensive ring-level data."""
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # -- invariants (implemented in homalg, reached through here for convenience)
    def hilbert_series(self):
        from .hilbert import hilbert_series_ring
        return self.cached("hilbert", lambda: hilbert_series_ring(self))

    @property
    def dim(self) -> int:
        from .hilbert import krull_dim_ring
        return self.cached("dim", lambda: krull_dim_ring(self))


def as_quotient(ring) -> QuotientRing:
    if isinstance(ring, QuotientRing):
        return ring
    if isinstance(ring, PolyRing):
        return QuotientRing(ring, [])
    raise TypeError(f"not a ring: {ring!r}")
