"""Numerical invariants of graded modules: rank, depth, Bass numbers, Tor_1.

Also the ring-change helpers used by base change: moving a presentation to a
quotient ring or to a ring with more variables.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .hilbert import HilbertSeries, hilbert_series_module, multiplicity
from .kernels import Submodule, minimal_generators, modulo
from .modules import (FPModule, ModuleError, ResolutionCapExceeded, _block_diag, ext,
                      free_resolution, minimal_presentation, residue_resolution)
from .polynomial import Polynomial
from .quotient import QuotientRing

__all__ = ["rank", "rank_by_minors", "depth_graded", "bass_numbers", "tor1", "hilbert_series",
           "multiplicity", "change_ring", "lift_polynomial", "is_free_cyclic",
           "cyclic_relation_ideal", "submodule_contains"]


def hilbert_series(M: FPModule) -> HilbertSeries:
    return M.cached("hilbert", lambda: hilbert_series_module(M))


def _require_domain(R: QuotientRing):
    if getattr(R, "is_domain", None) is False:
        raise ModuleError("rank is only supported over a domain")


def rank(M: FPModule) -> int:
    """Rank over the fraction field of a graded domain.

    For a graded domain R of dimension d, the degree-d multiplicity of M is
    rank(M) * e(R); modules of rank 0 have lower-dimensional support.
    """
    R = M.ring
    _require_domain(R)
    H = hilbert_series(M)
    HR = R.hilbert_series()
    if H.is_zero() or H.pole_order < HR.pole_order:
        return 0
    e, eR = H.multiplicity, HR.multiplicity
    if e % eR:
        raise ModuleError("multiplicity is not a multiple of e(R); is the ring a domain?")
    return e // eR


def _minor(R: QuotientRing, A, rows, cols):
    """Determinant of the submatrix by Laplace expansion along the first row (A given by columns)."""
    if len(rows) == 1:
        return A[cols[0]][rows[0]]
    out = R.ambient.zero()
    r0, rest = rows[0], rows[1:]
    for k, c in enumerate(cols):
        a = A[c][r0]
        if not a.terms:
            continue
        sub = _minor(R, A, rest, cols[:k] + cols[k + 1:])
        if sub.terms:
            t = a * sub
            out = out + t if k % 2 == 0 else out - t
    return R.nf(out)


def rank_by_minors(M: FPModule, max_size: int = 6) -> int:
    """rank = beta0 - (largest t with a nonzero t x t minor of the relation matrix).

    Exponential in the matrix size; intended for small presentations.
    """
    R = M.ring
    _require_domain(R)
    Mm = minimal_presentation(M)
    A = Mm.relations
    m0, m1 = Mm.ngens, len(A)
    best = 0
    for t in range(1, min(m0, m1) + 1):
        if t > max_size:
            raise ModuleError("presentation too large for the minor route")
        found = False
        for rows in combinations(range(m0), t):
            for cols in combinations(range(m1), t):
                if _minor(R, A, list(rows), list(cols)).terms:
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = t
    return m0 - best


def depth_graded(M: FPModule, bound: int | None = None):
    """Least i with Ext^i(k, M) != 0, searched up to `bound` (default dim R + 1).

    Returns None when nothing is found within the bound.
    """
    R = M.ring
    if minimal_presentation(M).ngens == 0:
        raise ModuleError("depth of the zero module")
    if bound is None:
        bound = R.dim + 1
    F = residue_resolution(R, 0)
    k = F.module
    for i in range(bound + 1):
        try:
            if not ext(i, k, M, F).is_zero():
                return i
        except ResolutionCapExceeded:
            return None
    return None


def bass_numbers(M: FPModule, i_max: int) -> list[int]:
    """mu^i = dim_k Ext^i(k, M) for 0 <= i <= i_max."""
    R = M.ring
    F = residue_resolution(R, 0)
    k = F.module
    # Ext^i(k, M) is killed by the maximal ideal, so beta0 is its k-dimension
    return [ext(i, k, M, F).beta0 for i in range(i_max + 1)]


def tor1(M: FPModule, N: FPModule) -> int:
    """Minimal number of generators of Tor_1(M, N)."""
    R = M.ring
    S = R.ambient
    zero = S.zero()
    F = free_resolution(M, 2)
    Nm = minimal_presentation(N)
    n0 = Nm.ngens
    if F.length == 0 or n0 == 0:
        return 0
    b0, b1 = F.rank(0), F.rank(1)
    a0, a1 = F.degrees[0], F.degrees[1]
    bN = Nm.gen_degrees
    d1 = F.map(1)
    # d1 (x) N : N^{b1} -> N^{b0}; coordinates (c, r) for F-basis c, N-generator r
    cols = []
    for c in range(b1):
        for r in range(n0):
            v = [zero] * (b0 * n0)
            for j in range(b0):
                f = d1[c][j]
                if f.terms:
                    v[j * n0 + r] = f
            cols.append(v)
    rowdeg1 = [a1[c] + bN[r] for c in range(b1) for r in range(n0)]
    rowdeg0 = [a0[j] + bN[r] for j in range(b0) for r in range(n0)]
    Z = modulo(R, cols, _block_diag(Nm.relations, b0, n0, zero), row_degrees=rowdeg0, col_degrees=rowdeg1)
    if not Z:
        return 0
    B = _block_diag(Nm.relations, b1, n0, zero)
    if F.length >= 2:
        d2 = F.map(2)
        for c in range(F.rank(2)):
            for r in range(n0):
                v = [zero] * (b1 * n0)
                for j in range(b1):
                    f = d2[c][j]
                    if f.terms:
                        v[j * n0 + r] = f
                B.append(v)
    return len(minimal_generators(R, Z, rowdeg1, background=B))


# ---------------------------------------------------------------------------
# ring change


def lift_polynomial(f: Polynomial, R: QuotientRing) -> Polynomial:
    """The same polynomial in R's ambient ring, matching variables by name; reduced in R."""
    S = R.ambient
    if f.ring == S:
        return R.nf(f)
    var_map = [S.index(name) for name in f.ring.names]
    return R.nf(f.map_to(S, var_map))


def change_ring(M: FPModule, R: QuotientRing, name: str | None = None, keep_embedding: bool = False) -> FPModule:
    """The presentation of M read over R: M (x) R for R a quotient or polynomial extension.

    An ideal embedding survives only a flat extension such as adjoining
    variables; callers assert that with keep_embedding.
    """
    rels = [[lift_polynomial(f, R) for f in col] for col in M.relations]
    emb = None
    if keep_embedding and M.embedding is not None:
        emb = [lift_polynomial(g, R) for g in M.embedding]
        if not all(g.terms for g in emb):
            emb = None
    return FPModule(R, M.gen_degrees, rels, embedding=emb, name=name or M.name)


# ---------------------------------------------------------------------------
# isomorphism shapes


def is_free_cyclic(M: FPModule) -> bool:
    """M isomorphic to R up to a shift: one generator and no relations."""
    Mm = minimal_presentation(M)
    return Mm.ngens == 1 and not Mm.relations


def cyclic_relation_ideal(M: FPModule):
    """For cyclic M = R/a, the ideal a; None when M is not cyclic."""
    from .ideals import Ideal
    Mm = minimal_presentation(M)
    if Mm.ngens != 1:
        return None
    return Ideal(M.ring, [col[0] for col in Mm.relations])


def submodule_contains(R: QuotientRing, gens: Sequence, vec, row_degrees, rank_: int) -> bool:
    if not gens:
        return not any(f.terms for f in vec)
    return Submodule(R, gens, row_degrees, rank=rank_).contains(vec)

