"""Fractional ideals, divisorial hulls and divisor classes.

A fractional ideal N/d is a numerator ideal N of a graded domain R together
with a nonzero homogeneous denominator d.  Colons inside the fraction field
are reduced to colons in R by clearing denominators: for any nonzero b in
the ideal B, (A :_Q B) = (bA :_R B) / b.
"""
from __future__ import annotations

from typing import Sequence

from .ideals import Ideal, colon_ideal, ideal_product
from .modules import FPModule, ModuleError, hom_module, minimal_presentation, module_from_ideal
from .polynomial import Polynomial
from .quotient import QuotientRing


class DivisorError(ValueError):
    pass


class NotFoundWithinBound(DivisorError):
    """No class label within the scan window matched (NOT_FOUND_WITHIN_BOUND)."""


def _pick(I: Ideal) -> Polynomial:
    """A nonzero generator of least degree, deterministic."""
    gens = I.minimal_generators() if I.is_homogeneous() else I.gens
    if not gens:
        raise DivisorError("zero ideal")
    return min(gens, key=lambda g: (g.degree(), -g.lead_code))


class FractionalIdeal:
    def __init__(self, numerator: Ideal, denominator: Polynomial | None = None, canonical: bool = False):
        R = numerator.ring
        if numerator.is_zero():
            raise DivisorError("fractional ideals are nonzero")
        if denominator is None:
            denominator = R.one()
        denominator = R.nf(denominator)
        if not denominator:
            raise DivisorError("zero denominator")
        self.ring: QuotientRing = R
        self.numerator = numerator
        self.denominator = denominator
        self.canonical = canonical

    @classmethod
    def of(cls, I: Ideal) -> "FractionalIdeal":
        return cls(I)

    def is_integral(self) -> bool:
        return self.denominator.is_constant()

    def simplify(self) -> "FractionalIdeal":
        """Cancel the denominator when it divides the whole numerator."""
        d = self.denominator
        if d.is_constant():
            return self
        D = Ideal(self.ring, [d])
        if D.contains_ideal(self.numerator):
            return FractionalIdeal(colon_ideal(self.numerator, D), None, self.canonical)
        return self

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        R = self.ring
        a = Ideal(R, [R.nf(g * other.denominator) for g in self.numerator.gens])
        b = Ideal(R, [R.nf(g * self.denominator) for g in other.numerator.gens])
        return a == b

    def __hash__(self):
        return hash(self.ring)

    def __repr__(self):
        num = ", ".join(str(g) for g in self.numerator.gens)
        if self.denominator.is_constant():
            return f"({num})"
        return f"({num}) / ({self.denominator})"

    def beta0(self) -> int:
        return self.numerator.beta0()

    def as_module(self) -> FPModule:
        return module_from_ideal(self.numerator)


def _integral(a) -> FractionalIdeal:
    if isinstance(a, Ideal):
        return FractionalIdeal(a)
    if isinstance(a, FractionalIdeal):
        return a
    raise TypeError(f"not an ideal: {a!r}")


def _same_ring(a: FractionalIdeal, b: FractionalIdeal):
    if a.ring != b.ring:
        raise DivisorError("fractional ideals over different rings")


def divisorial_hull_integral(I: Ideal) -> Ideal:
    """R :_Q (R :_Q I) for an integral ideal I, computed as (aR : (aR : I)) with a in I."""
    a = _pick(I)
    A = Ideal(I.ring, [a])
    return colon_ideal(A, colon_ideal(A, I))


def divisorial_hull(a) -> FractionalIdeal:
    """The reflexive hull; the hull of N/d is hull(N)/d."""
    a = _integral(a)
    return FractionalIdeal(divisorial_hull_integral(a.numerator), a.denominator, True).simplify()


def frac_mul(a, b) -> FractionalIdeal:
    """Hull of the product."""
    a, b = _integral(a), _integral(b)
    _same_ring(a, b)
    R = a.ring
    N = ideal_product(a.numerator, b.numerator)
    if N.is_homogeneous():
        N = Ideal(R, N.minimal_generators())
    return divisorial_hull(FractionalIdeal(N, R.nf(a.denominator * b.denominator)))


def frac_colon(a, b) -> FractionalIdeal:
    """a :_Q b = {x : x b in a}."""
    a, b = _integral(a), _integral(b)
    _same_ring(a, b)
    R = a.ring
    beta = _pick(b.numerator)
    shifted = Ideal(R, [R.nf(beta * g) for g in a.numerator.gens])
    C = colon_ideal(shifted, b.numerator)
    num = Ideal(R, [R.nf(b.denominator * g) for g in C.gens])
    den = R.nf(a.denominator * beta)
    return divisorial_hull(FractionalIdeal(num, den))


def is_principal(a):
    """(True, (g, d)) when the hull of a equals (g)/d, else (False, None)."""
    h = divisorial_hull(a) if not (isinstance(a, FractionalIdeal) and a.canonical) else a
    gens = h.numerator.minimal_generators()
    if len(gens) != 1:
        return False, None
    g = gens[0]
    if Ideal(h.ring, [g]) != h.numerator:
        return False, None
    return True, (g, h.denominator)


def ideals_isomorphic(a, b) -> bool:
    """a and b are isomorphic as modules iff a = x b for some x in Q."""
    a, b = _integral(a), _integral(b)
    ha = a if a.canonical else divisorial_hull(a)
    hb = b if b.canonical else divisorial_hull(b)
    # cheap invariant: reflexive rank-1 ideals in the same class have equal beta0
    if ha.numerator.beta0() != hb.numerator.beta0():
        return False
    ok, gen = is_principal(frac_colon(ha, hb))
    if not ok:
        return False
    g, d = gen
    R = a.ring
    moved = FractionalIdeal(Ideal(R, [R.nf(g * x) for x in hb.numerator.gens]), R.nf(d * hb.denominator))
    return divisorial_hull(moved) == ha


def embed_as_ideal(M: FPModule, tries: int | None = None) -> tuple[Ideal, int]:
    """An ideal isomorphic to the torsion-free rank-1 module M, and the degree shift.

    Uses a minimal generator phi of Hom(M, R); phi is injective, so M is
    isomorphic to the ideal of images phi(m_j).  Returns (ideal, s) with
    deg(m_j) = deg(phi(m_j)) + s.
    """
    from .homalg import rank
    R = M.ring
    if rank(M) != 1:
        raise ModuleError("embedding needs a rank-1 module")
    Mm = minimal_presentation(M)
    if Mm.embedding is not None:
        return Ideal(R, Mm.embedding), _shift(Mm, Mm.embedding)
    H = hom_module(Mm, module_from_ideal(Ideal(R, [R.one()])))
    if H.ngens == 0:
        raise ModuleError("Hom(M, R) vanishes; M is not torsion-free of rank 1")
    for l in range(H.ngens if tries is None else min(tries, H.ngens)):
        images = [R.nf(v[0]) if v else R.zero() for v in H.hom.maps[l]]
        if any(f.terms for f in images):
            return Ideal(R, images), _shift(Mm, images)
    raise ModuleError("no nonzero map to R found")


def _shift(M: FPModule, images: Sequence[Polynomial]) -> int:
    for d, g in zip(M.gen_degrees, images):
        if g.terms:
            return d - g.degree()
    return 0


def class_of(a, power, scan_bound: int) -> int:
    """The label c with |c| <= scan_bound and a isomorphic to power(c).

    Labels are tried in the order 0, 1, -1, 2, -2, ...; distinct labels give
    non-isomorphic ideals, so the first match is the only one.
    """
    a = _integral(a)
    ha = a if a.canonical else divisorial_hull(a)
    for c in _scan_order(scan_bound):
        if ideals_isomorphic(ha, power(c)):
            return c
    raise NotFoundWithinBound(f"NOT_FOUND_WITHIN_BOUND: no class with |c| <= {scan_bound}")


def _scan_order(bound: int):
    yield 0
    for c in range(1, bound + 1):
        yield c
        yield -c
