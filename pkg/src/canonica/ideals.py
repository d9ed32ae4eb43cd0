"""Ideals of polynomial rings and their quotients, with the usual operations.

An ideal of R = S/I is stored through generators in S; every Groebner basis
computed for it is a basis of the preimage J + I in S.
"""
from __future__ import annotations

from typing import Sequence

from .groebner import FreeModule, Reducer, buchberger, check_buchberger
from .polynomial import MonomialOrder, Polynomial, PolyRing, elimination_order
from .quotient import QuotientRing, as_quotient


class Ideal:
    """Ideal of a QuotientRing (a PolyRing is accepted as the zero quotient)."""

    def __init__(self, ring, gens: Sequence[Polynomial] = ()):
        self.ring: QuotientRing = as_quotient(ring)
        S = self.ring.ambient
        out = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = S(g)
            elif g.ring != S:
                raise ValueError("generator lives in a different ring")
            g = self.ring.nf(g)
            if g:
                out.append(g)
        self.gens: list[Polynomial] = out
        self._gb: GBInfo | None = None
        self._mingens = None

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    # -- Groebner data -------------------------------------------------------
    @property
    def gbinfo(self) -> "GBInfo":
        if self._gb is None:
            self._gb = GBInfo(self)
        return self._gb

    def groebner_basis(self) -> list[Polynomial]:
        """Reduced GB of the ideal modulo the ring's relations (the ring's own GB omitted)."""
        return self.gbinfo.polys()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gbinfo.normal_form(f)

    def contains(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring.ambient(f)
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gbinfo.key() == other.gbinfo.key()

    def __hash__(self):
        return hash(self.gbinfo.key())

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.contains(1)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # -- minimal generators ---------------------------------------------------
    def minimal_generators(self) -> list[Polynomial]:
        """A minimal homogeneous generating set (graded Nakayama)."""
        if self._mingens is None:
            if not self.is_homogeneous():
                raise ValueError("minimal generators need a homogeneous ideal")
            R = self.ring
            F = R.F1
            res = buchberger(F, [dict(g.terms) for g in self.gens], R.gb, minimal=True)
            self._mingens = [self.gens[i] for i in res.minimal]
        return list(self._mingens)

    def beta0(self) -> int:
        return len(self.minimal_generators())


class GBInfo:
    def __init__(self, ideal: Ideal):
        R = ideal.ring
        self.ring = R
        res = buchberger(R.F1, [dict(g.terms) for g in ideal.gens], R.gb)
        self.elements = res.elements
        self.copy_flags = res.copy_flags
        self.reducer = Reducer(R.F1, self.elements)

    def polys(self) -> list[Polynomial]:
        S = self.ring.ambient
        return [Polynomial(S, dict(e)) for e, c in zip(self.elements, self.copy_flags) if not c]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return Polynomial(self.ring.ambient, self.reducer.reduce(f.terms))

    def key(self):
        return tuple(tuple(sorted(e.items())) for e in self.elements)


# ---------------------------------------------------------------------------
# operations


def groebner_basis(ideal: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis, sorted by leading monomial descending.

    With an explicit order the computation runs in a copy of the ambient ring
    carrying that order; the result lives in that copy.
    """
    if order is None or order == ideal.ring.ambient.order:
        return ideal.groebner_basis()
    S = ideal.ring.ambient
    S2 = S.with_order(order)
    ident = list(range(S.nvars))
    R2 = QuotientRing(S2, [g.map_to(S2, ident) for g in ideal.ring.relations])
    return Ideal(R2, [g.map_to(S2, ident) for g in ideal.gens]).groebner_basis()


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of f on division by a (monic or not) Groebner basis."""
    if not basis:
        return f
    S = f.ring
    F = FreeModule.ring_level(S)
    red = Reducer(F, [dict(g.monic().terms) for g in basis])
    return Polynomial(S, red.reduce(f.terms))


def is_groebner_basis(basis: Sequence[Polynomial]) -> bool:
    if not basis:
        return True
    F = FreeModule.ring_level(basis[0].ring)
    return check_buchberger(F, [dict(g.monic().terms) for g in basis])


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    R = I.ring
    return Ideal(R, [R.nf(f * g) for f in I.gens for g in J.gens])


def ideal_power(I: Ideal, e: int) -> Ideal:
    if e < 0:
        raise ValueError("negative power")
    out = Ideal(I.ring, [I.ring.one()])
    for _ in range(e):
        out = ideal_product(out, I)
        out = Ideal(out.ring, out.minimal_generators()) if out.is_homogeneous() else out
    return out


def _with_new_first_vars(S: PolyRing, names: Sequence[str], order: MonomialOrder) -> PolyRing:
    taken = set(S.names)
    fresh = []
    for base in names:
        v = base
        while v in taken:
            v = "_" + v
        taken.add(v)
        fresh.append(v)
    return PolyRing(S.field, fresh + list(S.names), order, [1] * len(fresh) + list(S.weights))


def eliminate(I: Ideal, k: int) -> Ideal:
    """Generators of I intersected with the subring on variables k+1, ..., n.

    The result lives in the same ring; its generators do not involve the first
    k variables.
    """
    S = I.ring.ambient
    if k == 0:
        return Ideal(I.ring, I.gens)
    S2 = S.with_order(elimination_order(k))
    ident = list(range(S.nvars))
    gens = [g.map_to(S2, ident) for g in I.gens + I.ring.relations]
    F = FreeModule.ring_level(S2)
    res = buchberger(F, [dict(g.terms) for g in gens])
    keep = []
    for e in res.elements:
        f = Polynomial(S2, dict(e))
        if all(i >= k for i in f.variables()):
            keep.append(f.map_to(S, ident))
    return Ideal(I.ring, keep)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by eliminating t from t*I + (1 - t)*J."""
    _same_ring(I, J)
    R = I.ring
    S = R.ambient
    if not I.gens or not J.gens:
        return Ideal(R, [])
    T = _with_new_first_vars(S, ["t"], elimination_order(1))
    shift = [i + 1 for i in range(S.nvars)]
    t = T.var(0)
    gens = [t * g.map_to(T, shift) for g in I.gens]
    gens += [(1 - t) * g.map_to(T, shift) for g in J.gens]
    gens += [g.map_to(T, shift) for g in R.relations]
    F = FreeModule.ring_level(T)
    res = buchberger(F, [dict(g.terms) for g in gens])
    back = [None] + list(range(S.nvars))
    out = []
    for e in res.elements:
        f = Polynomial(T, dict(e))
        if 0 not in f.variables():
            out.append(f.map_to(S, back))
    return Ideal(R, out)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g in the polynomial ring; raises if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    S = f.ring
    gm = g.monic()
    lc_inv = g.ring.field.inv(g.lead_coeff)
    quotient: dict = {}
    rem = dict(f.terms)
    field = S.field
    lead_g = gm.lead_code
    while rem:
        k = max(rem)
        if not S.divides(lead_g, k):
            raise ValueError("polynomial division is not exact")
        q = k - lead_g
        c = rem[k]
        quotient[q] = c
        rem = _sub_scaled(rem, gm.terms, q, c, field)
    return Polynomial(S, quotient).scale(lc_inv)


def _sub_scaled(a: dict, b: dict, shift: int, c, field) -> dict:
    out = dict(a)
    p = field.p
    for k, v in b.items():
        nk = k + shift
        w = out.get(nk, 0) - c * v
        if p:
            w %= p
        if w:
            out[nk] = w
        else:
            out.pop(nk, None)
    return out


def colon_by_element_intersection(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) computed as ((I + rel) cap (g)) / g in the ambient polynomial ring."""
    R = I.ring
    S = R.ambient
    Sq = QuotientRing(S, [])
    lifted = Ideal(Sq, I.gens + R.relations)
    inter = ideal_intersection(lifted, Ideal(Sq, [g]))
    return Ideal(R, [divide_exact(h, g) for h in inter.gens])


def colon_ideal(I: Ideal, J: Ideal, method: str = "syzygy") -> Ideal:
    """(I : J) = {f : f J in I}.

    method "intersection" intersects the colons by single generators, each
    computed by intersection and division; method "syzygy" reads the colon off
    a kernel computation (the default, much faster on quotient rings).
    """
    _same_ring(I, J)
    if not J.gens:
        raise ValueError("colon by the zero ideal")
    R = I.ring
    if method == "intersection":
        out = None
        for g in J.gens:
            c = colon_by_element_intersection(I, g)
            out = c if out is None else ideal_intersection(out, c)
        return out
    if method != "syzygy":
        raise ValueError(f"unknown colon method {method!r}")
    from .kernels import modulo
    # f with f*g_i in I for every i: kernel of the column (g_1..g_s) modulo I^s
    rows = len(J.gens)
    col = list(J.gens)
    relations = []
    for i in range(rows):
        for h in I.gens:
            v = [R.zero()] * rows
            v[i] = h
            relations.append(v)
    homog = I.is_homogeneous() and J.is_homogeneous() and R.is_homogeneous()
    row_deg = [-g.degree() for g in J.gens] if homog else None
    ker = modulo(R, [col], relations, row_degrees=row_deg, col_degrees=[0] if homog else None)
    return Ideal(R, [v[0] for v in ker])


def saturation_free_check(R: QuotientRing, f: Polynomial) -> bool:
    """True iff f is a nonzerodivisor on R, i.e. (0 : f) = 0."""
    return colon_ideal(Ideal(R, []), Ideal(R, [f])).is_zero() if f else False


def syzygy_module(vectors: Sequence[Sequence[Polynomial]], over=None) -> list[list[Polynomial]]:
    """Generators of the syzygies of the given vectors (columns) over S or S/I."""
    from .kernels import modulo
    if not vectors:
        raise ValueError("syzygies of an empty family")
    R = as_quotient(over if over is not None else vectors[0][0].ring)
    homog = all(f.is_homogeneous() for v in vectors for f in v) and R.is_homogeneous()
    row_deg = col_deg = None
    if homog:
        row_deg, col_deg = _infer_degrees(vectors)
        if row_deg is None:
            homog = False
    return modulo(R, [list(v) for v in vectors], [], row_degrees=row_deg if homog else None,
                  col_degrees=col_deg if homog else None)


def _infer_degrees(vectors):
    """Row shifts making every column homogeneous, or (None, None)."""
    n = len(vectors[0])
    row = [None] * n
    col = [None] * len(vectors)
    # a column's degree is fixed by any nonzero entry once its row shift is known
    row[0] = 0 if any(v[0] for v in vectors) else None
    changed = True
    for i in range(n):
        if row[i] is None and not any(v[i] for v in vectors):
            row[i] = 0
    if row[0] is None:
        for i in range(n):
            if any(v[i] for v in vectors):
                row[i] = 0
                break
    while changed:
        changed = False
        for j, v in enumerate(vectors):
            for i in range(n):
                if v[i] and row[i] is not None and col[j] is None:
                    col[j] = v[i].degree() + row[i]
                    changed = True
                if v[i] and col[j] is not None and row[i] is None:
                    row[i] = col[j] - v[i].degree()
                    changed = True
        if not changed and any(r is None for r in row):
            i = row.index(None)
            row[i] = 0
            changed = True
    for j, v in enumerate(vectors):
        if col[j] is None:
            col[j] = 0
        for i in range(n):
            if v[i] and v[i].degree() + row[i] != col[j]:
                return None, None
    return row, col
