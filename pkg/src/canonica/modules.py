"""Finitely presented graded modules over quotient rings.

A module is the cokernel of a relation matrix R^{m1} -> R^{m0}, stored as a
list of m1 columns of length m0, together with the degrees of the m0
generators.  Modules isomorphic to an ideal may carry `embedding`, the images
of the generators in R; several computations take a shortcut through it.
"""
from __future__ import annotations

import hashlib
from typing import Sequence

from .ideals import Ideal
from .kernels import column_degree, mat_vec, minimal_generators, modulo
from .polynomial import Polynomial
from .quotient import QuotientRing


class ModuleError(ValueError):
    pass


class FPModule:
    def __init__(self, ring: QuotientRing, gen_degrees: Sequence[int], relations: Sequence[Sequence[Polynomial]] = (),
                 *, embedding: Sequence[Polynomial] | None = None, name: str | None = None, check: bool = True):
        self.ring = ring
        self.gen_degrees = [int(d) for d in gen_degrees]
        m0 = len(self.gen_degrees)
        rels = []
        for col in relations:
            col = [ring.nf(f) for f in col]
            if len(col) != m0:
                raise ModuleError("relation column has the wrong length")
            if any(f.terms for f in col):
                rels.append(col)
        self.relations = rels
        self.embedding = list(embedding) if embedding is not None else None
        self.name = name
        if check:
            for col in rels:
                self._relation_degree(col)
        self._minimal: FPModule | None = None
        self._resolution = None
        self._cache: dict = {}

    # -- basic data -----------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    def _relation_degree(self, col) -> int:
        d = None
        for f, g in zip(col, self.gen_degrees):
            if not f.terms:
                continue
            if not f.is_homogeneous():
                raise ModuleError("relation entry is not homogeneous")
            e = f.degree() + g
            if d is None:
                d = e
            elif d != e:
                raise ModuleError("relation column is not homogeneous")
        return d

    def relation_degrees(self) -> list[int]:
        return [self._relation_degree(c) for c in self.relations]

    def fingerprint(self) -> str:
        text = repr((self.ring.fingerprint(), self.gen_degrees,
                     [[str(f) for f in c] for c in self.relations]))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FPModule{label}: {self.ngens} generators, {len(self.relations)} relations>"

    def is_zero(self) -> bool:
        return minimal_presentation(self).ngens == 0

    def is_free(self) -> bool:
        m = minimal_presentation(self)
        return not m.relations

    def cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]


# ---------------------------------------------------------------------------
# constructors


def free_module(R: QuotientRing, degrees: Sequence[int]) -> FPModule:
    return FPModule(R, degrees, [], name="free")


def module_from_ideal(I: Ideal, name: str | None = None) -> FPModule:
    """The ideal I as an abstract module: minimal generators and their syzygies."""
    R = I.ring
    gens = I.minimal_generators()
    if not gens:
        return FPModule(R, [], [], embedding=[], name=name)
    degs = [g.degree() for g in gens]
    syz = modulo(R, [[g] for g in gens], [], row_degrees=[0], col_degrees=degs)
    return FPModule(R, degs, syz, embedding=gens, name=name)


def quotient_module(I: Ideal, name: str | None = None) -> FPModule:
    """R/I as a cyclic module."""
    R = I.ring
    rels = [[g] for g in (I.minimal_generators() if I.is_homogeneous() else I.gens)]
    return FPModule(R, [0], rels, name=name)


def residue_field(R: QuotientRing) -> FPModule:
    return quotient_module(Ideal(R, R.ambient.gens), name="k")


def embedding_shift(M: FPModule) -> int:
    """sigma with deg(gen_i) = deg(embedding_i) + sigma, for modules carrying an embedding."""
    emb = M.embedding
    if emb is None:
        raise ModuleError("module carries no ideal embedding")
    shifts = {d - g.degree() for d, g in zip(M.gen_degrees, emb) if g.terms}
    if len(shifts) != 1:
        raise ModuleError("embedding is not homogeneous of a single shift")
    return shifts.pop()


# ---------------------------------------------------------------------------
# minimal presentations


def _const(f: Polynomial):
    if len(f.terms) == 1 and 0 in f.terms:
        return f.terms[0]
    return None


def minimal_presentation(M: FPModule) -> FPModule:
    """An isomorphic module without constant relation entries and with minimal relations.

    The result records, in `origin`, the kept generator indices of M and for
    every generator of M its expression in the new generators.
    """
    if M._minimal is not None:
        return M._minimal
    R = M.ring
    S = R.ambient
    field = S.field
    m0 = M.ngens
    rows = list(range(m0))  # original indices of the current generators
    cols = [list(c) for c in M.relations]
    # expr[g][r]: coefficient of current generator r in original generator g
    expr = [{g: S.one()} for g in range(m0)]
    while True:
        pivot = None
        for ci, col in enumerate(cols):
            for ri, f in enumerate(col):
                if f.terms and _const(f) is not None:
                    pivot = (ci, ri)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ci, ri = pivot
        pc = cols[ci]
        u_inv = field.inv(_const(pc[ri]))
        new_cols = []
        for cj, col in enumerate(cols):
            if cj == ci:
                continue
            a = col[ri]
            if a.terms:
                fac = a.scale(u_inv)
                col = [R.nf(col[k] - fac * pc[k]) if pc[k].terms else col[k] for k in range(len(col))]
            del col[ri]
            if any(f.terms for f in col):
                new_cols.append(col)
        # generator ri equals -u^{-1} * sum_{k != ri} pc[k] * gen_k
        subst = {k: (-pc[k]).scale(u_inv) for k in range(len(pc)) if k != ri and pc[k].terms}
        for e in expr:
            c = e.pop(ri, None)
            if c is not None:
                for k, v in subst.items():
                    t = R.nf(c * v)
                    if t.terms:
                        old = e.get(k)
                        nv = t if old is None else R.nf(old + t)
                        if nv.terms:
                            e[k] = nv
                        else:
                            e.pop(k, None)
            # renumber indices above ri
            for k in sorted(k for k in e if k > ri):
                e[k - 1] = e.pop(k)
        del rows[ri]
        cols = new_cols
    degs = [M.gen_degrees[g] for g in rows]
    if cols:
        idx = minimal_generators(R, cols, degs)
        cols = [cols[i] for i in idx]
    emb = [M.embedding[g] for g in rows] if M.embedding is not None else None
    out = FPModule(R, degs, cols, embedding=emb, name=M.name, check=False)
    out.origin = (M, rows, [[e.get(k, S.zero()) for k in range(len(rows))] for e in expr])
    out._minimal = out
    M._minimal = out
    return out


def beta0(M: FPModule) -> int:
    return minimal_presentation(M).ngens


# ---------------------------------------------------------------------------
# resolutions


# when not None, every FreeResolution built is appended here (used by audits)
RESOLUTION_LOG: list | None = None


class FreeResolution:
    """Minimal graded free resolution F_L -> ... -> F_0 of a module.

    maps[i] is the matrix of d_{i+1}: F_{i+1} -> F_i (columns), degrees[i] the
    generator degrees of F_i.
    """

    def __init__(self, M: FPModule):
        Mm = minimal_presentation(M)
        self.module = Mm
        self.ring = Mm.ring
        self.degrees: list[list[int]] = [list(Mm.gen_degrees)]
        self.maps: list[list[list[Polynomial]]] = []
        self.complete = False
        if RESOLUTION_LOG is not None:
            RESOLUTION_LOG.append(self)
        if Mm.relations:
            self.maps.append([list(c) for c in Mm.relations])
            self.degrees.append(Mm.relation_degrees())
        else:
            self.complete = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti(self) -> list[int]:
        return [len(d) for d in self.degrees]

    def extend(self, L: int) -> "FreeResolution":
        """Compute maps up to F_L (or until the resolution stops)."""
        R = self.ring
        while not self.complete and self.length < L:
            d = self.maps[-1]
            src = self.degrees[-1]
            tgt = self.degrees[-2]
            ker = modulo(R, d, [], row_degrees=tgt, col_degrees=src)
            if not ker:
                self.complete = True
                break
            self.maps.append(ker)
            self.degrees.append([column_degree(v, src) for v in ker])
        return self

    def rank(self, i: int) -> int:
        return len(self.degrees[i]) if i < len(self.degrees) else 0

    def map(self, i: int):
        """d_i : F_i -> F_{i-1} as columns, for 1 <= i <= length."""
        return self.maps[i - 1]

    def check_complex(self) -> bool:
        """All consecutive composites vanish."""
        from .kernels import mat_mul
        for i in range(1, self.length):
            prod = mat_mul(self.ring, self.maps[i - 1], self.maps[i], len(self.degrees[i - 1]))
            if any(f.terms for col in prod for f in col):
                return False
        return True

    def check_minimal(self) -> bool:
        """No nonzero constant entries in any map."""
        return all(not (f.terms and f.is_constant()) for m in self.maps for col in m for f in col)


class ResolutionCapExceeded(ModuleError):
    pass


def resolution_cap(R: QuotientRing) -> int:
    """Longest resolution built on demand: dim R + 6."""
    return R.dim + 6


def free_resolution(M: FPModule, length: int) -> FreeResolution:
    if length < 0:
        raise ValueError("resolution length must be nonnegative")
    res = M._resolution
    if res is None:
        res = FreeResolution(M)
        M._resolution = res
    return res.extend(length)


def residue_resolution(R: QuotientRing, length: int) -> FreeResolution:
    k = R.cached("residue_field", lambda: residue_field(R))
    return free_resolution(k, length)


# ---------------------------------------------------------------------------
# tensor products


def tensor_module(M: FPModule, N: FPModule) -> FPModule:
    if M.ring != N.ring:
        raise ModuleError("modules over different rings")
    R = M.ring
    S = R.ambient
    Mm, Nm = minimal_presentation(M), minimal_presentation(N)
    m0, n0 = Mm.ngens, Nm.ngens
    degs = [a + b for a in Mm.gen_degrees for b in Nm.gen_degrees]
    zero = S.zero()
    rels = []
    for col in Mm.relations:
        for j in range(n0):
            v = [zero] * (m0 * n0)
            for i in range(m0):
                v[i * n0 + j] = col[i]
            rels.append(v)
    for col in Nm.relations:
        for i in range(m0):
            v = [zero] * (m0 * n0)
            for j in range(n0):
                v[i * n0 + j] = col[j]
            rels.append(v)
    T = FPModule(R, degs, rels)
    T.tensor_factors = (Mm, Nm)
    return T


# ---------------------------------------------------------------------------
# Hom


def _kron_transpose(R, P, m_rows, n0, zero):
    """Columns of P^T (x) I_n0: for basis (j, i) of R^{m_rows n0}, the image in R^{m1 n0}."""
    m1 = len(P)
    cols = []
    for j in range(m_rows):
        for i in range(n0):
            v = [zero] * (m1 * n0)
            for c in range(m1):
                f = P[c][j]
                if f.terms:
                    v[c * n0 + i] = f
            cols.append(v)
    return cols


def _block_diag(P, copies, n0, zero):
    """Columns of P^{(+) copies}: each relation column placed in each block."""
    out = []
    for b in range(copies):
        for col in P:
            v = [zero] * (copies * n0)
            for i in range(n0):
                v[b * n0 + i] = col[i]
            out.append(v)
    return out


class HomData:
    """Generators of Hom(M, N) as explicit maps.

    maps[l][j] is the image of generator j of M, written in the generators of N.
    """

    def __init__(self, M, N, maps):
        self.M, self.N, self.maps = M, N, maps


def hom_module(M: FPModule, N: FPModule) -> FPModule:
    """Hom_R(M, N) as a minimally presented module; `.hom` holds the explicit maps."""
    if M.ring != N.ring:
        raise ModuleError("modules over different rings")
    R = M.ring
    S = R.ambient
    zero = S.zero()
    Mm, Nm = minimal_presentation(M), minimal_presentation(N)
    m0, n0 = Mm.ngens, Nm.ngens
    a = Mm.gen_degrees
    b = Nm.gen_degrees
    if m0 == 0 or n0 == 0:
        H = FPModule(R, [], [])
        H.hom = HomData(Mm, Nm, [])
        return minimal_presentation(H)
    if Nm.embedding is not None:
        return _hom_into_ideal(Mm, Nm)
    rowdeg = [b[i] - a[j] for j in range(m0) for i in range(n0)]
    delta = Mm.relation_degrees()
    m1 = len(Mm.relations)
    if m1:
        Phi = _kron_transpose(R, Mm.relations, m0, n0, zero)
        Pn = _block_diag(Nm.relations, m1, n0, zero)
        K = modulo(R, Phi, Pn, row_degrees=[b[i] - delta[c] for c in range(m1) for i in range(n0)],
                   col_degrees=rowdeg)
    else:
        K = [[S.one() if r == q else zero for r in range(m0 * n0)] for q in range(m0 * n0)]
    K = _drop_multiples(R, K, _block_diag(Nm.relations, m0, n0, zero), rowdeg)
    Kdeg = [column_degree(v, rowdeg) for v in K]
    rels = modulo(R, K, _block_diag(Nm.relations, m0, n0, zero), row_degrees=rowdeg, col_degrees=Kdeg)
    H = FPModule(R, Kdeg, rels, check=False)
    H.hom = HomData(Mm, Nm, [[v[j * n0:(j + 1) * n0] for j in range(m0)] for v in K])
    return _minimal_hom(H)


def _drop_multiples(R, vecs, background, rowdeg):
    """Keep a minimal subset of vecs modulo the background submodule."""
    if not vecs:
        return vecs
    idx = minimal_generators(R, vecs, rowdeg, background=background)
    return [vecs[i] for i in idx]


def _minimal_hom(H: FPModule) -> FPModule:
    Hm = minimal_presentation(H)
    if Hm is H:
        return H
    _, kept, _ = Hm.origin
    Hm.hom = HomData(H.hom.M, H.hom.N, [H.hom.maps[g] for g in kept])
    if getattr(H, "hom_vectors", None) is not None:
        Hm.hom_vectors = [H.hom_vectors[g] for g in kept]
    return Hm


def _hom_into_ideal(Mm: FPModule, Nm: FPModule) -> FPModule:
    """Hom(M, J) for J an ideal: the maps are vectors y in J^{m0} with P_M^T y = 0."""
    R = Mm.ring
    S = R.ambient
    zero = S.zero()
    g = Nm.embedding
    sigma = embedding_shift(Nm)
    m0, n0 = Mm.ngens, Nm.ngens
    a = Mm.gen_degrees
    b = Nm.gen_degrees
    # z in R^{m0 n0}, y_j = sum_k g_k z_{jk}
    zdeg = [b[k] - a[j] for j in range(m0) for k in range(n0)]
    A_cols = [(j, k) for j in range(m0) for k in range(n0)]
    m1 = len(Mm.relations)
    if m1:
        delta = Mm.relation_degrees()
        cols = []
        for j, k in A_cols:
            v = [zero] * m1
            for c in range(m1):
                f = Mm.relations[c][j]
                if f.terms:
                    v[c] = R.nf(f * g[k])
            cols.append(v)
        Z = modulo(R, cols, [], row_degrees=[sigma - delta[c] for c in range(m1)],
                   col_degrees=zdeg)
    else:
        Z = [[S.one() if r == q else zero for r in range(m0 * n0)] for q in range(m0 * n0)]
    ydeg_rows = [sigma - a[j] for j in range(m0)]
    Y = []
    for z in Z:
        y = []
        for j in range(m0):
            acc = zero
            for k in range(n0):
                if z[j * n0 + k].terms:
                    acc = acc + z[j * n0 + k] * g[k]
            y.append(R.nf(acc))
        Y.append(y)
    # present the submodule of R^{m0} spanned by the y's
    keep = [i for i, y in enumerate(Y) if any(f.terms for f in y)]
    Y = [Y[i] for i in keep]
    Z = [Z[i] for i in keep]
    if not Y:
        H = FPModule(R, [], [])
        H.hom = HomData(Mm, Nm, [])
        return H
    idx = minimal_generators(R, Y, ydeg_rows)
    Y = [Y[i] for i in idx]
    Z = [Z[i] for i in idx]
    degs = [column_degree(y, ydeg_rows) for y in Y]
    rels = modulo(R, Y, [], row_degrees=ydeg_rows, col_degrees=degs)
    H = FPModule(R, degs, rels, check=False)
    H.hom = HomData(Mm, Nm, [[z[j * n0:(j + 1) * n0] for j in range(m0)] for z in Z])
    H.hom_vectors = Y
    return _minimal_hom(H)


# ---------------------------------------------------------------------------
# Ext


class ExtResult:
    """Ext^i(M, N) through cocycle generators Z and boundary generators B.

    `module` is a presentation (built lazily), `beta0` the minimal number of
    generators; zero iff beta0 == 0.
    """

    def __init__(self, R, Z, B, rowdeg, i):
        self.R, self.Z, self.B, self.rowdeg, self.i = R, Z, B, rowdeg, i
        self._idx = None
        self._module = None

    @property
    def minimal_cocycles(self) -> list:
        if self._idx is None:
            self._idx = minimal_generators(self.R, self.Z, self.rowdeg, background=self.B) if self.Z else []
        return [self.Z[j] for j in self._idx]

    @property
    def beta0(self) -> int:
        return len(self.minimal_cocycles)

    def is_zero(self) -> bool:
        return self.beta0 == 0

    @property
    def module(self) -> FPModule:
        if self._module is None:
            Zm = self.minimal_cocycles
            degs = [column_degree(z, self.rowdeg) for z in Zm]
            rels = modulo(self.R, Zm, self.B, row_degrees=self.rowdeg, col_degrees=degs) if Zm else []
            self._module = minimal_presentation(FPModule(self.R, degs, rels, check=False))
        return self._module


def ext(i: int, M: FPModule, N: FPModule, resolution: FreeResolution | None = None) -> ExtResult:
    """Ext^i_R(M, N) from a minimal resolution of M."""
    if i < 0:
        raise ValueError("negative Ext index")
    if M.ring != N.ring:
        raise ModuleError("modules over different rings")
    R = M.ring
    cap = resolution_cap(R)
    if i + 1 > cap:
        raise ResolutionCapExceeded(f"Ext^{i} needs a resolution past the cap {cap}")
    F = resolution if resolution is not None else free_resolution(M, i + 1)
    F.extend(i + 1)
    Nm = minimal_presentation(N)
    if Nm.embedding is not None and Nm.ngens:
        return _ext_into_ideal(i, F, Nm)
    return _ext_general(i, F, Nm)


def _ext_general(i, F: FreeResolution, Nm: FPModule) -> ExtResult:
    R = F.ring
    S = R.ambient
    zero = S.zero()
    n0 = Nm.ngens
    b = Nm.gen_degrees
    bi = F.rank(i)
    if bi == 0 or n0 == 0:
        return ExtResult(R, [], [], [], i)
    ai = F.degrees[i]
    rowdeg = [b[r] - ai[j] for j in range(bi) for r in range(n0)]
    PN = Nm.relations
    # cocycles
    if i + 1 <= F.length:
        d_next = F.map(i + 1)
        b_next = F.rank(i + 1)
        a_next = F.degrees[i + 1]
        Phi = _kron_transpose(R, d_next, bi, n0, zero)
        Pn = _block_diag(PN, b_next, n0, zero)
        Z = modulo(R, Phi, Pn, row_degrees=[b[r] - a_next[c] for c in range(b_next) for r in range(n0)],
                   col_degrees=rowdeg)
    else:
        Z = [[S.one() if r == q else zero for r in range(bi * n0)] for q in range(bi * n0)]
    # coboundaries plus the relations of N in every block
    B = _block_diag(PN, bi, n0, zero)
    if i >= 1:
        d = F.map(i)
        B += _kron_transpose(R, d, F.rank(i - 1), n0, zero)
    return ExtResult(R, Z, B, rowdeg, i)


def _ext_into_ideal(i, F: FreeResolution, Nm: FPModule, method: str = "kernel") -> ExtResult:
    """Ext^i(M, J) for J an ideal: Hom(F_i, J) is J^{b_i} inside R^{b_i}.

    Cocycles are {y in J^{b_i} : d_{i+1}^T y = 0}.  method "kernel" computes
    K = ker d_{i+1}^T first and then K meet J^{b_i}; "augmented" solves one
    syzygy problem over all products of generators (kept as a cross-check).
    """
    R = F.ring
    S = R.ambient
    zero = S.zero()
    g = Nm.embedding
    sigma = embedding_shift(Nm)
    n0 = len(g)
    bi = F.rank(i)
    if bi == 0:
        return ExtResult(R, [], [], [], i)
    ai = F.degrees[i]
    rowdeg = [sigma - ai[j] for j in range(bi)]
    if i + 1 <= F.length and method == "kernel":
        Z = _ideal_cocycles_kernel(R, F, i, g, sigma, rowdeg)
    elif i + 1 <= F.length:
        Z = _ideal_cocycles_augmented(R, F, i, Nm, g, sigma)
    else:
        Z = []
        for j in range(bi):
            for k in range(n0):
                y = [zero] * bi
                y[j] = g[k]
                Z.append(y)
    B = []
    if i >= 1:
        d = F.map(i)
        for j in range(F.rank(i - 1)):
            for k in range(n0):
                v = [R.nf(d[c][j] * g[k]) if d[c][j].terms else zero for c in range(bi)]
                if any(f.terms for f in v):
                    B.append(v)
    return ExtResult(R, Z, B, rowdeg, i)


def _ideal_cocycles_kernel(R, F: FreeResolution, i: int, g, sigma: int, rowdeg):
    S = R.ambient
    zero = S.zero()
    bi = F.rank(i)
    d_next = F.map(i + 1)
    b_next = F.rank(i + 1)
    a_next = F.degrees[i + 1]
    # columns of d^T: one per basis element of F_i
    cols = [[d_next[c][j] for c in range(b_next)] for j in range(bi)]
    K = modulo(R, cols, [], row_degrees=[sigma - x for x in a_next], col_degrees=rowdeg)
    if not K:
        return []
    kdeg = [column_degree(v, rowdeg) for v in K]
    J = [[g[k] if r == j else zero for r in range(bi)] for j in range(bi) for k in range(len(g))]
    X = modulo(R, [list(v) for v in K], J, row_degrees=rowdeg, col_degrees=kdeg, minimize=False)
    Z = []
    for x in X:
        y = mat_vec(R, K, x, bi)
        if any(f.terms for f in y):
            Z.append(y)
    return Z


def _ideal_cocycles_augmented(R, F: FreeResolution, i: int, Nm: FPModule, g, sigma):
    S = R.ambient
    zero = S.zero()
    n0 = len(g)
    bi = F.rank(i)
    ai = F.degrees[i]
    d_next = F.map(i + 1)
    b_next = F.rank(i + 1)
    a_next = F.degrees[i + 1]
    cols = []
    for j in range(bi):
        for k in range(n0):
            v = [zero] * b_next
            for c in range(b_next):
                f = d_next[c][j]
                if f.terms:
                    v[c] = R.nf(f * g[k])
            cols.append(v)
    # y = A z lives in degree (column degree of z); rows of d^T A sit at sigma - a_next
    zdeg = [Nm.gen_degrees[k] - ai[j] for j in range(bi) for k in range(n0)]
    Zz = modulo(R, cols, [], row_degrees=[sigma - x for x in a_next], col_degrees=zdeg, minimize=False)
    Z = []
    for z in Zz:
        y = []
        for j in range(bi):
            acc = zero
            for k in range(n0):
                c = z[j * n0 + k]
                if c.terms:
                    acc = acc + c * g[k]
            y.append(R.nf(acc))
        if any(f.terms for f in y):
            Z.append(y)
    return Z


def ext_module(i: int, M: FPModule, N: FPModule) -> FPModule:
    return ext(i, M, N).module
