"""Ext vanishing through reduction to an Artinian ring.

Let l_1..l_s be linear forms forming a regular sequence on R, M and N, and
put R' = R/(l), N' = N/(l)N.  If F is a free resolution of M over R then
F (x) R' resolves M/(l)M, so Ext^i_{R'}(M', N') is the cohomology of the
complex Hom_R(F, N').  When R' is Artinian that complex is a graded complex
of finite-dimensional vector spaces and its cohomology is plain linear
algebra, one internal degree at a time.

Ext^i_{R'}(M', N') = 0 implies Ext^i_R(M, N) = 0: reducing by one form l at
a time, the long exact sequence of 0 -> N -l-> N -> N/lN -> 0 shows that l
acts surjectively on the graded module Ext^i_R(M, N), which is then zero by
graded Nakayama.
"""
from __future__ import annotations

import random
from typing import Sequence

from .fields import PrimeField
from .hilbert import HilbertSeries
from .homalg import change_ring, hilbert_series
from .kernels import Submodule
from .modules import FPModule, FreeResolution, minimal_presentation
from .polynomial import Polynomial
from .quotient import QuotientRing

SEED = 20240611


def _times_one_minus_t(H: HilbertSeries) -> HilbertSeries | None:
    if H.pole_order == 0:
        return None
    return HilbertSeries(H.coeffs, H.shift, H.pole_order - 1)


def regular_linear_forms(R: QuotientRing, modules: Sequence[FPModule], count: int | None = None,
                         attempts: int = 8, seed: int = SEED):
    """Linear forms l_1..l_s regular on R and on each module, with the reduced ring R/(l).

    Each form is certified by the identity H(X/lX) = (1 - t) H(X), which holds
    exactly when l is a nonzerodivisor on X.  Forms are pseudo-random with a
    fixed seed, so the result is deterministic.  Stops early when no candidate
    passes (then the sequence is shorter than requested).
    """
    S = R.ambient
    rng = random.Random(seed)
    if count is None:
        count = R.dim
    forms: list[Polynomial] = []
    cur = R
    cur_H = [cur.hilbert_series()] + [hilbert_series(change_ring(X, cur)) for X in modules]
    while len(forms) < count:
        accepted = False
        for _ in range(attempts):
            l = S.zero()
            for v in range(S.nvars):
                l = l + S.var(v).scale(S.field(rng.randint(1, 97)))
            nxt = QuotientRing(S, list(R.relations) + forms + [l])
            new_H = [nxt.hilbert_series()] + [hilbert_series(change_ring(X, nxt)) for X in modules]
            if all(_times_one_minus_t(a) == b for a, b in zip(cur_H, new_H)):
                forms.append(l)
                cur, cur_H = nxt, new_H
                accepted = True
                break
        if not accepted:
            break
    return forms, cur


class GradedVectorModule:
    """A graded module of finite length over an Artinian ring, as vector spaces.

    basis[d] lists the standard monomials (component, exponents) of degree d;
    action(f, d) is the matrix of multiplication by f from degree d, as
    {source index: {target index: coefficient}}.
    """

    def __init__(self, M: FPModule):
        R = M.ring
        if R.hilbert_series().pole_order != 0:
            raise ValueError("the ring is not Artinian")
        Mm = minimal_presentation(M)
        self.ring = R
        self.field = R.field
        self.ngens = Mm.ngens
        S = R.ambient
        self.S = S
        rels = [[R.nf(f) for f in col] for col in Mm.relations]
        self.sub = Submodule(R, rels, Mm.gen_degrees, rank=Mm.ngens) if rels else None
        self.gen_degrees = list(Mm.gen_degrees)
        self.basis: dict[int, list] = {}
        self.index: dict[int, dict] = {}
        self._build_basis()
        self._cache: dict = {}

    def _reduce(self, vec):
        return self.sub.reduce(vec) if self.sub is not None else [self.ring.nf(f) for f in vec]

    def _build_basis(self):
        S = self.S
        zero = S.zero()
        # standard monomials form an order ideal, so breadth-first search by degree finds them all
        frontier: dict[int, set] = {}
        for r, g in enumerate(self.gen_degrees):
            frontier.setdefault(g, set()).add((r, (0,) * S.nvars))
        while frontier:
            d = min(frontier)
            found = []
            for r, a in sorted(frontier.pop(d)):
                vec = [zero] * self.ngens
                vec[r] = S.monomial(a)
                red = self._reduce(vec)
                if red[r] == vec[r] and not any(red[j].terms for j in range(self.ngens) if j != r):
                    found.append((r, a))
            if not found:
                continue
            self.basis[d] = found
            self.index[d] = {b: k for k, b in enumerate(found)}
            nxt = frontier.setdefault(d + 1, set())
            for r, a in found:
                for v in range(S.nvars):
                    b = list(a)
                    b[v] += 1
                    nxt.add((r, tuple(b)))

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def coordinates(self, vec, d: int) -> dict:
        """Coordinates of a reduced homogeneous vector of degree d."""
        out = {}
        idx = self.index.get(d, {})
        for r, f in enumerate(vec):
            for a, c in f.items():
                k = idx.get((r, a))
                if k is None:
                    raise ArithmeticError("vector is not in normal form")
                out[k] = c
        return out

    def action(self, f: Polynomial, d: int) -> dict:
        """Multiplication by the homogeneous polynomial f from degree d."""
        key = (tuple(sorted(f.terms.items())), d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        S = self.S
        zero = S.zero()
        e = f.degree()
        out = {}
        if self.dim(d) and self.dim(d + e):
            for k, (r, a) in enumerate(self.basis[d]):
                vec = [zero] * self.ngens
                vec[r] = S.monomial(a) * f
                col = self.coordinates(self._reduce(vec), d + e)
                if col:
                    out[k] = col
        self._cache[key] = out
        return out


def sparse_rank(columns: Sequence[dict], field) -> int:
    """Rank of a matrix given by sparse columns ({row: coefficient})."""
    p = field.p if isinstance(field, PrimeField) else None
    pivots: dict = {}
    rank = 0
    for col in sorted(columns, key=len):
        v = {k: c for k, c in col.items() if c}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = field.inv(v[lead])
                if p is not None:
                    pivots[lead] = {k: c * inv % p for k, c in v.items()}
                else:
                    pivots[lead] = {k: c * inv for k, c in v.items()}
                rank += 1
                break
            c = v[lead]
            for k, a in piv.items():
                x = v.get(k, 0) - c * a
                if p is not None:
                    x %= p
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
    return rank


def _hom_degree_blocks(F: FreeResolution, i: int, N: GradedVectorModule, j: int):
    """Offsets of the blocks of Hom(F_i, N)_j, one block per basis element of F_i."""
    offs, total = [], 0
    for a in F.degrees[i]:
        offs.append(total)
        total += N.dim(a + j)
    return offs, total


def _delta_columns(F: FreeResolution, i: int, N: GradedVectorModule, j: int) -> tuple[list[dict], int]:
    """Columns of Hom(F_i, N)_j -> Hom(F_{i+1}, N)_j, phi -> phi o d_{i+1}."""
    src_offs, src_dim = _hom_degree_blocks(F, i, N, j)
    if i + 1 > F.length:
        return [], src_dim
    tgt_offs, _ = _hom_degree_blocks(F, i + 1, N, j)
    cols: list[dict] = [{} for _ in range(src_dim)]
    d = F.map(i + 1)
    a_src = F.degrees[i]
    p = N.field.p if isinstance(N.field, PrimeField) else None
    for c, column in enumerate(d):
        for q, f in enumerate(column):
            if not f.terms:
                continue
            act = N.action(f, a_src[q] + j)
            base_s, base_t = src_offs[q], tgt_offs[c]
            for k, image in act.items():
                dst = cols[base_s + k]
                for t, coeff in image.items():
                    x = dst.get(base_t + t, 0) + coeff
                    if p is not None:
                        x %= p
                    if x:
                        dst[base_t + t] = x
                    else:
                        dst.pop(base_t + t, None)
    return cols, src_dim


def ext_dimension(F: FreeResolution, i: int, N: GradedVectorModule) -> int:
    """dim_k H^i(Hom(F, N)); F must reach F_{i+1} or be complete."""
    if i >= len(F.degrees):
        return 0
    total = 0
    internal = set()
    for a in F.degrees[i]:
        for e in N.degrees:
            internal.add(e - a)
    for j in sorted(internal):
        cols, dim_here = _delta_columns(F, i, N, j)
        if dim_here == 0:
            continue
        rank_out = sparse_rank(cols, N.field) if cols else 0
        rank_in = 0
        if i >= 1:
            cols_in, _ = _delta_columns(F, i - 1, N, j)
            rank_in = sparse_rank(cols_in, N.field) if cols_in else 0
        total += dim_here - rank_out - rank_in
    return total
