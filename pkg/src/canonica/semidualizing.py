"""Semidualizing and dualizing checks, total reflexivity, the order on classes,
and the base-change operations along ring maps."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .homalg import (bass_numbers, change_ring, depth_graded, hilbert_series, lift_polynomial, tor1)
from .ideals import Ideal
from .kernels import Submodule
from .modules import (FPModule, ModuleError, ext, free_resolution, hom_module, minimal_presentation,
                      module_from_ideal, quotient_module, resolution_cap)
from .reduction import GradedVectorModule, ext_dimension, regular_linear_forms
from .polynomial import Polynomial
from .quotient import QuotientRing

ISO = "ISO"
NOT_CYCLIC = "NOT_CYCLIC"
IDENTITY_NOT_GENERATOR = "IDENTITY_NOT_GENERATOR"
SEMIDUALIZING_UP_TO_BOUND = "SEMIDUALIZING_UP_TO_BOUND"
NOT_SEMIDUALIZING = "NOT_SEMIDUALIZING"
HOMOTHETY_FAILS = "HOMOTHETY_FAILS"
DUALIZING_UP_TO_BOUND = "DUALIZING_UP_TO_BOUND"
NOT_DUALIZING = "NOT_DUALIZING"
TRUE, FALSE, UNDETERMINED = "TRUE", "FALSE", "UNDETERMINED"


def ring_module(R: QuotientRing) -> FPModule:
    """R as a module over itself, carrying the embedding R = (1)."""
    return R.cached("ring_module", lambda: module_from_ideal(Ideal(R, [R.one()]), name="R"))


def default_bound(R: QuotientRing) -> int:
    return R.dim + 1


# ---------------------------------------------------------------------------
# homothety


def _scalar_multiple(a: Polynomial, b: Polynomial):
    """c with a = c*b (c possibly 0), or None."""
    if not b.terms:
        return 0 if not a.terms else None
    if not a.terms:
        return 0
    k = b.lead_code
    if k not in a.terms:
        return None
    fld = a.ring.field
    c = fld.div(a.terms[k], b.terms[k])
    return c if (a - b.scale(c)).is_zero() else None


def _is_scalar_identity(H: FPModule) -> bool:
    """The single generator of H = Hom(C, C) is a nonzero scalar multiple of id_C."""
    Cm = H.hom.N
    z = H.hom.maps[0]
    R = H.ring
    S = R.ambient
    n0 = Cm.ngens
    if Cm.embedding is not None:
        g = Cm.embedding
        cs = set()
        for j in range(n0):
            img = R.nf(sum((z[j][k] * g[k] for k in range(n0) if z[j][k].terms), S.zero()))
            c = _scalar_multiple(img, g[j])
            if c is None:
                return False
            cs.add(c)
    else:
        sub = Submodule(R, Cm.relations, Cm.gen_degrees, rank=n0) if Cm.relations else None
        cs = set()
        for j in range(n0):
            e = [S.one() if k == j else S.zero() for k in range(n0)]
            a = sub.reduce(z[j]) if sub else [R.nf(f) for f in z[j]]
            b = sub.reduce(e) if sub else e
            c = None
            for fa, fb in zip(a, b):
                if fb.terms:
                    c = _scalar_multiple(fa, fb)
                    break
            if c is None:
                return False
            if any(not (fa - fb.scale(c)).is_zero() for fa, fb in zip(a, b)):
                return False
            cs.add(c)
    return len(cs) == 1 and 0 not in cs


def homothety_is_iso(C: FPModule):
    """Status of R -> Hom(C, C), with the Hom module.

    ISO when Hom(C, C) is free of rank one on a generator of degree 0 that is a
    nonzero multiple of the identity (so id is a minimal generator).
    """
    H = hom_module(C, C)
    if H.ngens != 1 or H.relations:
        return NOT_CYCLIC, H
    if H.gen_degrees[0] != 0 or not _is_scalar_identity(H):
        return IDENTITY_NOT_GENERATOR, H
    return ISO, H


# ---------------------------------------------------------------------------
# semidualizing


# Hom coordinates (rank of F_{i+1} times beta0) above which the Artinian reduction is tried first
DIRECT_EXT_LIMIT = 1500


def _artinian_reduction(C: FPModule):
    """C modulo a maximal regular sequence of linear forms, as vector spaces; None if C is not MCM."""
    R = C.ring
    forms, Rbar = regular_linear_forms(R, [C])
    if len(forms) < R.dim:
        return None
    return GradedVectorModule(change_ring(C, Rbar))


def ext_self_vanishing(C: FPModule, bound: int, reduced: list | None = None):
    """(first i in 1..bound with Ext^i(C, C) != 0 or None, last index actually checked).

    Large indices are first tried over the Artinian reduction, whose vanishing
    implies vanishing over R; a nonzero reduced answer falls back to the direct
    computation, so reported witnesses always come from Ext over R.  Indices
    settled by the reduction are appended to `reduced`.
    """
    if bound < 1:
        raise ValueError("Ext bound must be at least 1")
    cap = resolution_cap(C.ring) - 1
    n0 = minimal_presentation(C).ngens
    art = False  # not yet built
    checked = 0
    for i in range(1, bound + 1):
        if i > cap:
            break
        F = free_resolution(C, i + 1)
        if F.rank(i + 1) * n0 > DIRECT_EXT_LIMIT:
            if art is False:
                art = _artinian_reduction(C)
            if art is not None and ext_dimension(F, i, art) == 0:
                if reduced is not None:
                    reduced.append(i)
                checked = i
                continue
        if not ext(i, C, C, F).is_zero():
            return i, i
        checked = i
    return None, checked


@dataclass
class SemidualizingReport:
    module_fingerprint: str
    homothety: str
    ext_bound: int
    ext_checked_to: int
    first_nonvanishing_ext: int | None
    verdict: str
    label: object = None
    reduced_indices: list = dc_field(default_factory=list)

    @property
    def undetermined(self) -> bool:
        return self.verdict == SEMIDUALIZING_UP_TO_BOUND and self.ext_checked_to < self.ext_bound

    @property
    def witness(self):
        if self.verdict == HOMOTHETY_FAILS:
            return {"homothety": self.homothety}
        if self.verdict == NOT_SEMIDUALIZING:
            return {"ext_index": self.first_nonvanishing_ext}
        return None

    def to_dict(self) -> dict:
        out = {"module_fingerprint": self.module_fingerprint, "homothety": self.homothety,
               "ext_bound": self.ext_bound, "ext_checked_to": self.ext_checked_to,
               "first_nonvanishing_ext": self.first_nonvanishing_ext, "verdict": self.verdict,
               "ext_reduced_indices": list(self.reduced_indices)}
        if self.label is not None:
            out["label"] = self.label
        return out


def is_semidualizing(C: FPModule, bound: int | None = None) -> SemidualizingReport:
    R = C.ring
    if bound is None:
        bound = default_bound(R)
    bound = max(bound, 1)
    fp = C.fingerprint()
    if minimal_presentation(C).ngens == 0:
        return SemidualizingReport(fp, NOT_CYCLIC, bound, 0, None, HOMOTHETY_FAILS)
    status, _ = homothety_is_iso(C)
    if status != ISO:
        return SemidualizingReport(fp, status, bound, 0, None, HOMOTHETY_FAILS)
    reduced: list = []
    first, checked = ext_self_vanishing(C, bound, reduced)
    if first is not None:
        return SemidualizingReport(fp, status, bound, checked, first, NOT_SEMIDUALIZING, reduced_indices=reduced)
    return SemidualizingReport(fp, status, bound, checked, None, SEMIDUALIZING_UP_TO_BOUND, reduced_indices=reduced)


@dataclass
class DualizingReport:
    bass: list
    depth: int | None
    verdict: str

    def to_dict(self) -> dict:
        return {"bass": list(self.bass), "depth": self.depth, "verdict": self.verdict}


def ring_depth(R: QuotientRing):
    return R.cached("depth", lambda: depth_graded(ring_module(R)))


def is_dualizing(C: FPModule, bound: int | None = None) -> DualizingReport:
    """Bass numbers up to the bound vanish except a single 1 at index depth R."""
    R = C.ring
    if bound is None:
        bound = default_bound(R)
    bound = min(bound, resolution_cap(R) - 1)
    depth = ring_depth(R)
    mu = bass_numbers(C, bound)
    ok = depth is not None and all(m == (1 if i == depth else 0) for i, m in enumerate(mu))
    return DualizingReport(mu, depth, DUALIZING_UP_TO_BOUND if ok else NOT_DUALIZING)


# ---------------------------------------------------------------------------
# total reflexivity and the order


@dataclass
class ReflexivityReport:
    holds: bool
    reason: str
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "reason": self.reason, **self.details}


def _hom_vectors(HH: FPModule):
    """Generators of Hom(H, C) as vectors, with background relations and row degrees.

    Maps are recorded through the images of H's generators: coordinates in C's
    generators modulo C's relations, or elements of R when C is an ideal.
    """
    H, Cm = HH.hom.M, HH.hom.N
    R = HH.ring
    S = R.ambient
    zero = S.zero()
    h = H.gen_degrees
    c0 = Cm.ngens
    if Cm.embedding is not None:
        g = Cm.embedding
        sigma = Cm.gen_degrees[0] - g[0].degree()

        def flat(images):
            return [R.nf(sum((v[k] * g[k] for k in range(c0) if v[k].terms), zero)) for v in images]
        rowdeg = [sigma - ht for ht in h]
        return flat, [], rowdeg
    rowdeg = [Cm.gen_degrees[r] - ht for ht in h for r in range(c0)]
    back = []
    for t in range(len(h)):
        for col in Cm.relations:
            v = [zero] * (len(h) * c0)
            v[t * c0:(t + 1) * c0] = col
            back.append(v)

    def flat(images):
        return [f for v in images for f in v]
    return flat, back, rowdeg


def _biduality_surjective(G: FPModule, H: FPModule, HH: FPModule) -> bool:
    """Every generator of Hom(Hom(G, C), C) lies in the span of the evaluation maps."""
    Gm = H.hom.M
    flat, back, rowdeg = _hom_vectors(HH)
    theta = [flat([H.hom.maps[t][j] for t in range(H.ngens)]) for j in range(Gm.ngens)]
    gens = [v for v in theta if any(f.terms for f in v)] + back
    targets = [flat(HH.hom.maps[l]) for l in range(HH.ngens)]
    if not gens:
        return all(not any(f.terms for f in v) for v in targets)
    sub = Submodule(HH.ring, gens, rowdeg, rank=len(rowdeg))
    return all(sub.contains(v) for v in targets)


def totally_reflexive_wrt(G: FPModule, C: FPModule, bound: int | None = None) -> ReflexivityReport:
    """G is totally C-reflexive, with Ext vanishing checked up to the bound."""
    R = G.ring
    if bound is None:
        bound = default_bound(R)
    bound = min(bound, resolution_cap(R) - 1)
    for i in range(1, bound + 1):
        if not ext(i, G, C).is_zero():
            return ReflexivityReport(False, "EXT_G_C", {"index": i})
    H = hom_module(G, C)
    for i in range(1, bound + 1):
        if not ext(i, H, C).is_zero():
            return ReflexivityReport(False, "EXT_DUAL_C", {"index": i})
    HH = hom_module(H, C)
    Gm = minimal_presentation(G)
    if HH.ngens != Gm.ngens:
        return ReflexivityReport(False, "BETA0", {"beta0": [Gm.ngens, HH.ngens]})
    if H.ngens == 0:
        ok = Gm.ngens == 0
        return ReflexivityReport(ok, "ZERO_DUAL")
    if hilbert_series(Gm) != hilbert_series(HH):
        return ReflexivityReport(False, "HILBERT")
    if not _biduality_surjective(Gm, H, HH):
        return ReflexivityReport(False, "NOT_SURJECTIVE")
    return ReflexivityReport(True, "BIDUALITY_ISO", {"ext_checked_to": bound})


def reflexive_order_le(C: FPModule, C2: FPModule, bound: int | None = None) -> str:
    """[C] <= [C2] (C2 is C-reflexive), decided for maximal Cohen-Macaulay C2."""
    R = C.ring
    depth_r = ring_depth(R)
    depth_c2 = depth_graded(C2)
    if depth_r is None or depth_c2 != depth_r:
        return UNDETERMINED
    return TRUE if totally_reflexive_wrt(C2, C, bound) else FALSE


# ---------------------------------------------------------------------------
# base change


def base_change_tensor(C: FPModule, target: QuotientRing, check_tor: bool = True) -> FPModule:
    """C (x)_R S for S = R/(y) with y a certified R-regular sequence."""
    R = C.ring
    cert = getattr(target, "regular_sequence", None)
    if target != R:
        if cert is None or cert[0] != R:
            raise ModuleError("target is not a certified regular-sequence quotient of the module's ring")
        if check_tor:
            ys = [lift_polynomial(y, R) for y in cert[1]]
            if tor1(C, quotient_module(Ideal(R, ys))) != 0:
                raise ModuleError("Tor_1(C, S) does not vanish")
    return change_ring(C, target)


def hom_twist(C: FPModule, T: QuotientRing) -> FPModule:
    """Hom_B(T, C) as a T-module, for T = B[z_1..z_q]/(z)^2 built from C's ring B.

    A map phi is recorded by (phi(1), phi(z_1), ..., phi(z_q)); z_i sends this
    tuple to (phi(z_i), 0, ..., 0).
    """
    info = getattr(T, "trivial_ext", None)
    if info is None or info["base"] != C.ring:
        raise ModuleError("ring is not a trivial extension of the module's ring")
    S = T.ambient
    zero, one = S.zero(), S.one()
    Cm = minimal_presentation(C)
    n0 = Cm.ngens
    zs = [S.var(z) for z in info["z"]]
    q = len(zs)
    blocks = q + 1
    degs = [a - (1 if t else 0) for t in range(blocks) for a in Cm.gen_degrees]
    rels = []
    lifted = [[lift_polynomial(f, T) for f in col] for col in Cm.relations]
    for t in range(blocks):
        for col in lifted:
            v = [zero] * (blocks * n0)
            v[t * n0:(t + 1) * n0] = col
            rels.append(v)
    for i, z in enumerate(zs, start=1):
        for t in range(blocks):
            for j in range(n0):
                v = [zero] * (blocks * n0)
                v[t * n0 + j] = z
                if t == i:
                    v[j] = -one
                rels.append(v)
    return FPModule(T, degs, rels, name="hom_twist")


def ext_twist_finite(C: FPModule, Q: QuotientRing, q: int | None = None) -> FPModule:
    """Ext^q_A(A/(y)^m, C) as a module over Q = A/(y)^m."""
    info = getattr(Q, "power_quotient", None)
    if info is None or info["base"] != C.ring:
        raise ModuleError("ring is not a power quotient of the module's ring")
    A = info["base"]
    if q is None:
        q = len(info["y"])
    I = Ideal(A, Q.relations[len(A.relations):])
    E = ext(q, quotient_module(I), C).module
    return change_ring(E, Q, name="ext_twist")
