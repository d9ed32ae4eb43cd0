"""Kernels, submodule membership and minimal generators for column vectors over S/I.

Vectors are lists of polynomials (one per row).  Gradings are given by row
degrees (the degrees of the target basis) and column degrees; a column is
homogeneous when each nonzero entry has degree col_degree - row_degree.
"""
from __future__ import annotations

from typing import Sequence

from .groebner import FreeModule, Reducer, buchberger
from .polynomial import Polynomial
from .quotient import QuotientRing

Vector = list  # list[Polynomial]


def _encode(F: FreeModule, vec: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for i, f in enumerate(vec):
        if f.terms:
            cc = F.comp_code[i + offset]
            for k, c in f.terms.items():
                out[k + cc] = c
    return out


def _decode(F: FreeModule, vec: dict, lo: int, hi: int) -> Vector:
    S = F.ring
    parts: list[dict] = [{} for _ in range(hi - lo)]
    for k, c in vec.items():
        j = F.comp(k)
        parts[j - lo][k - F.comp_code[j]] = c
    return [Polynomial(S, d) for d in parts]


def column_degree(vec: Sequence[Polynomial], row_degrees: Sequence[int]):
    """Degree of a homogeneous column, or None for the zero column."""
    for f, d in zip(vec, row_degrees):
        if f.terms:
            return f.degree() + d
    return None


def _default_shifts(cols, nrows):
    return [0] * nrows, [max((f.degree() for f in c if f.terms), default=0) for c in cols]


def modulo(R: QuotientRing, A: Sequence[Vector], B: Sequence[Vector] = (), *,
           row_degrees: Sequence[int] | None = None, col_degrees: Sequence[int] | None = None,
           minimize: bool = True) -> list[Vector]:
    """Generators of {x in R^s : A x in image(B)}, where A has s columns.

    Computed from one Groebner basis of the augmented vectors (a_j, e_j) and
    (b_l, 0) in a block order with the row block on top; pairs between elements
    whose leads lie in the lower block are never formed (Schreyer), and the
    lower-block elements generate the kernel.  With gradings given, the result
    is a minimal homogeneous generating set.
    """
    s = len(A)
    if s == 0:
        return []
    n = len(A[0]) if A else len(B[0])
    S = R.ambient
    graded = row_degrees is not None and col_degrees is not None
    if not graded:
        row_degrees, col_degrees = _default_shifts(A, n)
    if n == 0:
        one = S.one()
        return [[one if i == j else S.zero() for i in range(s)] for j in range(s)]
    F = FreeModule(S, list(row_degrees) + list(col_degrees), [1] * n + [0] * s)
    inputs = []
    for j, a in enumerate(A):
        v = _encode(F, a)
        v[F.comp_code[n + j]] = S.field(1)
        inputs.append(v)
    for b in B:
        v = _encode(F, b)
        if v:
            inputs.append(v)
    res = buchberger(F, inputs, R.gb, skip_block=0)
    ker = []
    for vec, cp in zip(res.elements, res.copy_flags):
        if cp:
            continue
        if F.block(max(vec)) == 0:
            ker.append(_decode(F, vec, n, n + s))
    ker.reverse()  # ascending leading terms, so low degrees come first
    if graded and minimize and ker:
        idx = minimal_generators(R, ker, col_degrees)
        ker = [ker[i] for i in idx]
    return ker


def minimal_generators(R: QuotientRing, vectors: Sequence[Vector], row_degrees: Sequence[int],
                       background: Sequence[Vector] = ()) -> list[int]:
    """Indices of a minimal generating subset of the vectors modulo `background`.

    Everything must be homogeneous for the given row degrees.  The count of
    returned indices is the minimal number of generators of the submodule
    (vectors + background) / background.
    """
    if not vectors:
        return []
    F = FreeModule(R.ambient, row_degrees)
    gens = [_encode(F, v) for v in vectors]
    back = [_encode(F, v) for v in background]
    res = buchberger(F, gens, R.gb, minimal=True, background=back)
    return res.minimal


class Submodule:
    """A submodule of R^n given by generators, with a cached Groebner basis."""

    def __init__(self, R: QuotientRing, vectors: Sequence[Vector], row_degrees: Sequence[int] | None = None,
                 rank: int | None = None):
        self.R = R
        self.vectors = [list(v) for v in vectors]
        if rank is None:
            if not vectors:
                raise ValueError("rank needed for an empty generating set")
            rank = len(vectors[0])
        self.rank = rank
        if row_degrees is None:
            row_degrees = [0] * rank
        self.row_degrees = list(row_degrees)
        self.F = FreeModule(R.ambient, self.row_degrees)
        res = buchberger(self.F, [_encode(self.F, v) for v in self.vectors], R.gb)
        self.elements = res.elements
        self.copy_flags = res.copy_flags
        self.reducer = Reducer(self.F, self.elements)

    def reduce(self, vec: Sequence[Polynomial]) -> Vector:
        return _decode(self.F, self.reducer.reduce(_encode(self.F, vec)), 0, self.rank)

    def contains(self, vec: Sequence[Polynomial]) -> bool:
        return not self.reducer.reduce(_encode(self.F, vec))

    def basis(self) -> list[Vector]:
        return [_decode(self.F, e, 0, self.rank) for e, c in zip(self.elements, self.copy_flags) if not c]

    def lead_terms(self):
        """(component, exponent tuple) of every basis element, copies included."""
        S = self.R.ambient
        out = []
        for e in self.elements:
            k = max(e)
            j = self.F.comp(k)
            out.append((j, S.exponents(k - self.F.comp_code[j])))
        return out


# ---------------------------------------------------------------------------
# matrix helpers (matrices are lists of columns)


def mat_vec(R: QuotientRing, M: Sequence[Vector], x: Sequence[Polynomial], nrows: int) -> Vector:
    """M x for a matrix given by columns."""
    S = R.ambient
    out = [S.zero() for _ in range(nrows)]
    for col, c in zip(M, x):
        if not c.terms:
            continue
        for i, f in enumerate(col):
            if f.terms:
                out[i] = out[i] + f * c
    return [R.nf(f) for f in out]


def mat_mul(R: QuotientRing, A: Sequence[Vector], B: Sequence[Vector], nrows: int) -> list[Vector]:
    return [mat_vec(R, A, b, nrows) for b in B]


def transpose(M: Sequence[Vector], nrows: int) -> list[Vector]:
    return [[M[j][i] for j in range(len(M))] for i in range(nrows)]


def is_zero_matrix(M: Sequence[Vector]) -> bool:
    return all(not f.terms for col in M for f in col)
