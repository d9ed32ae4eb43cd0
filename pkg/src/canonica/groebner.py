"""Buchberger's algorithm for submodules of graded free modules.

Elements are dicts mapping packed monomial codes to coefficients.  A module
code is a ring monomial code plus the component offset ``comp_code[j]``, which
also carries the component's degree shift and block index.  The resulting
order is degree first, then the ring order, then the component index, with
the block field above everything (so block 1 components dominate block 0).

The same routine serves three jobs:

* reduced Groebner bases of ideals and submodules, optionally over a quotient
  ring S/I (a copy of GB(I) is placed in every component);
* kernels, by skipping all pairs whose leading terms sit in block 0 (Schreyer);
* minimal generating sets of graded submodules, by feeding the input degree by
  degree and keeping exactly the inputs that do not reduce to zero.
"""
from __future__ import annotations

from heapq import heapify, heappop, heappush
from typing import Sequence

from .polynomial import DEG_BITS, EXP_BITS, Polynomial, PolyRing

DEG_OFFSET = 1 << (DEG_BITS - 2)

# Debug switch: recheck the Buchberger criterion after every basis computation.
VERIFY_GB = False


class GroebnerError(RuntimeError):
    pass


class FreeModule:
    """A graded free module S^n with degree shifts and a block per component."""

    def __init__(self, ring: PolyRing, shifts: Sequence[int], blocks: Sequence[int] | None = None,
                 *, _offset: int = DEG_OFFSET):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        self.rank = len(self.shifts)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * self.rank
        self.deg_offset = _offset
        if ring.order.graded:
            deg_part = [(s + _offset) << ring.deg_pos for s in self.shifts]
        else:
            deg_part = [0] * self.rank
        self.comp_code = [(j << ring.comp_pos) + deg_part[j] + (b << ring.block_pos)
                          for j, b in enumerate(self.blocks)]

    @classmethod
    def ring_level(cls, ring: PolyRing) -> "FreeModule":
        """Rank one, with codes equal to the plain ring monomial codes."""
        return cls(ring, [0], _offset=0)

    def comp(self, code: int) -> int:
        r = self.ring
        return (code >> r.comp_pos) & r.comp_mask

    def ring_code(self, code: int) -> int:
        return code - self.comp_code[self.comp(code)]

    def degree(self, code: int) -> int:
        r = self.ring
        if r.order.graded:
            return ((code >> r.deg_pos) & r.deg_mask) - self.deg_offset
        j = self.comp(code)
        return r.mon_degree(code - self.comp_code[j]) + self.shifts[j]

    def block(self, code: int) -> int:
        return code >> self.ring.block_pos

    def encode(self, polys: Sequence[Polynomial]) -> dict:
        if len(polys) != self.rank:
            raise ValueError(f"vector of length {len(polys)} in a free module of rank {self.rank}")
        out = {}
        for j, f in enumerate(polys):
            cc = self.comp_code[j]
            for k, c in f.terms.items():
                out[k + cc] = c
        return out

    def encode_poly(self, f: Polynomial, j: int) -> dict:
        cc = self.comp_code[j]
        return {k + cc: c for k, c in f.terms.items()}

    def decode(self, vec: dict) -> list[Polynomial]:
        parts: list[dict] = [{} for _ in range(self.rank)]
        for k, c in vec.items():
            j = self.comp(k)
            parts[j][k - self.comp_code[j]] = c
        return [Polynomial(self.ring, d) for d in parts]

    def vec_degree(self, vec: dict) -> int:
        return max(self.degree(k) for k in vec)

    def is_homogeneous(self, vec: dict) -> bool:
        return len({self.degree(k) for k in vec}) <= 1


# ---------------------------------------------------------------------------
# dict-level arithmetic helpers


def vec_scale(vec: dict, c, field) -> dict:
    p = field.p
    if p:
        return {k: v * c % p for k, v in vec.items()}
    return {k: v * c for k, v in vec.items()}


def vec_mul_poly(vec: dict, f: Polynomial) -> dict:
    """Multiply a module element by a ring polynomial."""
    p = f.ring.field.p
    out: dict = {}
    get = out.get
    for fk, fc in f.terms.items():
        for k, c in vec.items():
            nk = k + fk
            v = get(nk)
            out[nk] = fc * c if v is None else v + fc * c
    if p:
        return {k: v % p for k, v in out.items() if v % p}
    return {k: v for k, v in out.items() if v}


def vec_add(a: dict, b: dict, field, sign=1) -> dict:
    out = dict(a)
    p = field.p
    for k, c in b.items():
        v = out.get(k)
        v = sign * c if v is None else v + sign * c
        if p:
            v %= p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def monic(vec: dict, field) -> dict:
    lead = max(vec)
    c = vec[lead]
    if c == 1:
        return vec
    return vec_scale(vec, field.inv(c), field)


# ---------------------------------------------------------------------------


class _Elt:
    __slots__ = ("lead", "lexp", "comp", "block", "vec", "tail", "sugar", "copy", "alive")

    def __init__(self, vec: dict, F: FreeModule, sugar: int, copy: bool = False):
        lead = max(vec)
        self.lead = lead
        self.lexp = lead & F.ring.exp_mask
        self.comp = F.comp(lead)
        self.block = F.block(lead)
        self.vec = vec
        self.tail = [(k, c) for k, c in vec.items() if k != lead]
        self.sugar = sugar
        self.copy = copy
        self.alive = True


class Reducer:
    """Division by a fixed family of monic elements with pairwise distinct leads."""

    def __init__(self, F: FreeModule, elements: Sequence[dict] = ()):
        self.F = F
        self.ring = F.ring
        self.field = F.ring.field
        self.by_comp: list[list[_Elt]] = [[] for _ in range(F.rank)]
        for vec in elements:
            self.add(_Elt(vec, F, 0))

    def add(self, e: _Elt):
        self.by_comp[e.comp].append(e)

    def remove(self, e: _Elt):
        self.by_comp[e.comp].remove(e)

    def find(self, k: int):
        G = self.ring.guard
        kg = (k & self.ring.exp_mask) | G
        for e in self.by_comp[self.F.comp(k)]:
            if (kg - e.lexp) & G == G:
                return e
        return None

    def reduce(self, vec: dict, full: bool = True) -> dict:
        """Normal form of `vec` (a fresh dict is returned; the input is untouched).

        With full=False only the leading term is made irreducible.
        """
        f = dict(vec)
        if not f:
            return f
        ring = self.ring
        G = ring.guard
        EM = ring.exp_mask
        cp = ring.comp_pos
        cm = ring.comp_mask
        by_comp = self.by_comp
        p = self.field.p
        heap = [-k for k in f]
        heapify(heap)
        rem = {}
        while heap:
            k = -heappop(heap)
            c = f.get(k)
            if c is None:
                continue
            kg = (k & EM) | G
            for e in by_comp[(k >> cp) & cm]:
                if (kg - e.lexp) & G == G:
                    break
            else:
                if not full:
                    return f
                rem[k] = c
                del f[k]
                continue
            del f[k]
            q = k - e.lead
            if p:
                for tk, tc in e.tail:
                    nk = tk + q
                    v = f.get(nk)
                    if v is None:
                        f[nk] = -c * tc % p
                        heappush(heap, -nk)
                    else:
                        v = (v - c * tc) % p
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
            else:
                for tk, tc in e.tail:
                    nk = tk + q
                    v = f.get(nk)
                    if v is None:
                        f[nk] = -c * tc
                        heappush(heap, -nk)
                    else:
                        v = v - c * tc
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
        return rem


def _lcm_exp(a: int, b: int, G: int) -> int:
    """Fieldwise maximum of two exponent fields (each field below its guard bit)."""
    d = (b | G) - a
    g = d & G
    mask = g - (g >> (EXP_BITS - 1))
    return (b & mask) | (a & ~mask)


class GBResult:
    """Outcome of a Buchberger run.

    elements: reduced basis (monic dicts) sorted by leading term descending,
    including surviving quotient copies; copy_flags marks those copies.
    minimal: indices of inputs kept as minimal generators (minimal mode only).
    """

    def __init__(self, F, elements, copy_flags, minimal):
        self.F = F
        self.elements = elements
        self.copy_flags = copy_flags
        self.minimal = minimal
        self._reducer = None

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            self._reducer = Reducer(self.F, self.elements)
        return self._reducer

    def proper(self) -> list[dict]:
        """Basis elements that are not copies of the quotient ideal."""
        return [e for e, c in zip(self.elements, self.copy_flags) if not c]

    def leads(self) -> list[int]:
        return [max(e) for e in self.elements]


def buchberger(F: FreeModule, gens: Sequence[dict], quotient: Sequence[dict] = (),
               *, minimal: bool = False, skip_block: int | None = None,
               product_criterion: bool | None = None, max_degree: int | None = None,
               interreduce: bool = True, background: Sequence[dict] = ()) -> GBResult:
    """Groebner basis of the submodule generated by `gens` plus quotient copies.

    quotient: monic ring-level GB elements (dicts of ring codes) of the ideal I;
    each is copied into every component and never paired with another copy.
    skip_block: pairs whose leads both lie in this block are not formed.
    minimal: inputs are processed degree by degree after the pairs of lower or
    equal degree; the returned `minimal` lists the inputs that survived.  The
    `background` elements are processed before the inputs of each degree and
    are never reported.  Minimal mode only needs the basis up to the largest
    input degree, so pairs above it are dropped and the returned basis is
    truncated.
    """
    ring = F.ring
    field = ring.field
    p = field.p
    G = ring.guard
    if product_criterion is None:
        product_criterion = F.rank == 1
    red = Reducer(F)
    elts: list[_Elt] = []
    active: list[list[int]] = [[] for _ in range(F.rank)]
    pairs_by_comp: list[list[list]] = [[] for _ in range(F.rank)]
    queue: list = []
    deg = F.degree
    lcm_cache: dict = {}

    def lcm_code(a_exp, b_exp, comp):
        le = _lcm_exp(a_exp, b_exp, G)
        code = lcm_cache.get(le)
        if code is None:
            code = ring.code_from_expfield(le)
            lcm_cache[le] = code
        return le, code + F.comp_code[comp]

    # quotient copies first
    for gq in quotient:
        for j in range(F.rank):
            cc = F.comp_code[j]
            vec = {k + cc: c for k, c in gq.items()}
            e = _Elt(vec, F, deg(max(vec)), copy=True)
            elts.append(e)
            active[j].append(len(elts) - 1)
            red.add(e)

    sources = (None, background, gens)
    top = None
    for kind in (1, 2):
        for idx, g in enumerate(sources[kind]):
            if not g:
                continue
            s = max(deg(k) for k in g)
            top = s if top is None else max(top, s)
            heappush(queue, (s, kind, max(g), idx, -1, None))
    truncated = max_degree is not None or minimal
    if minimal and max_degree is None:
        max_degree = top

    def update(t: int):
        h = elts[t]
        c = h.comp
        if skip_block is not None and h.block == skip_block:
            return
        hexp = h.lexp
        cand = []
        for i in active[c]:
            e = elts[i]
            if skip_block is not None and e.block == skip_block:
                continue
            le, lc = lcm_code(e.lexp, hexp, c)
            coprime = product_criterion and le == e.lexp + hexp
            cand.append((lc, not coprime, le, i))
        cand.sort()
        cand = [(lc, le, i, not nc) for lc, nc, le, i in cand]
        # Gebauer-Moeller: chain criterion among the new pairs
        kept = []
        n = len(cand)
        for a in range(n):
            lc, le, i, cop = cand[a]
            leg = le | G
            drop = False
            if not cop:
                for b in range(n):
                    if b == a:
                        continue
                    le2 = cand[b][1]
                    if (leg - le2) & G == G and (le2 != le or b < a):
                        drop = True
                        break
            if not drop:
                kept.append(cand[a])
        # criterion B on pending pairs of this component
        alive_pairs = []
        for rec in pairs_by_comp[c]:
            if not rec[6]:
                continue
            le = rec[3]
            if ((le | G) - hexp) & G == G:
                ei, ej = elts[rec[4]], elts[rec[5]]
                l1 = _lcm_exp(ei.lexp, hexp, G)
                l2 = _lcm_exp(ej.lexp, hexp, G)
                if l1 != le and l2 != le:
                    rec[6] = False
                    continue
            alive_pairs.append(rec)
        pairs_by_comp[c] = alive_pairs
        for lc, le, i, cop in kept:
            if cop:
                continue
            e = elts[i]
            if e.copy and h.copy:
                continue
            s = max(e.sugar + deg(lc) - deg(e.lead), h.sugar + deg(lc) - deg(h.lead))
            if max_degree is not None and s > max_degree:
                continue
            rec = [s, 0, lc, le, i, t, True]
            pairs_by_comp[c].append(rec)
            heappush(queue, (s, 0, lc, i, t, rec))
        # drop elements whose lead is a multiple of the new lead
        keep = []
        for i in active[c]:
            e = elts[i]
            if ((e.lexp | G) - hexp) & G == G:
                if e.alive:
                    e.alive = False
                    red.remove(e)
            else:
                keep.append(i)
        keep.append(t)
        active[c] = keep

    def insert(vec: dict, sugar: int):
        vec = monic(vec, field)
        e = _Elt(vec, F, sugar)
        elts.append(e)
        t = len(elts) - 1
        if skip_block is not None and e.block == skip_block:
            red.add(e)
            active[e.comp].append(t)
            return
        update(t)
        red.add(e)

    minimal_idx = []
    while queue:
        s, kind, lc, i, j, rec = heappop(queue)
        if kind:
            vec = red.reduce(sources[kind][i])
            if vec:
                if kind == 2:
                    minimal_idx.append(i)
                insert(vec, s)
            continue
        if not rec[6]:
            continue
        rec[6] = False
        ei, ej = elts[i], elts[j]
        qi = lc - ei.lead
        qj = lc - ej.lead
        spoly: dict = {}
        for tk, tc in ei.tail:
            spoly[tk + qi] = tc
        if p:
            for tk, tc in ej.tail:
                nk = tk + qj
                v = spoly.get(nk, 0) - tc
                v %= p
                if v:
                    spoly[nk] = v
                else:
                    spoly.pop(nk, None)
        else:
            for tk, tc in ej.tail:
                nk = tk + qj
                v = spoly.get(nk, 0) - tc
                if v:
                    spoly[nk] = v
                else:
                    spoly.pop(nk, None)
        if not spoly:
            continue
        vec = red.reduce(spoly)
        if vec:
            insert(vec, s)

    final = [e for e in elts if e.alive]
    if interreduce:
        final.sort(key=lambda e: e.lead)
        fred = Reducer(F)
        for e in final:
            fred.add(e)
        out = []
        for e in final:
            tail = {k: c for k, c in e.tail}
            tail = fred.reduce(tail) if tail else tail
            vec = dict(tail)
            vec[e.lead] = field(1)
            out.append((e.lead, vec, e.copy))
    else:
        out = [(e.lead, e.vec, e.copy) for e in final]
    out.sort(key=lambda t: t[0], reverse=True)
    result = GBResult(F, [v for _, v, _ in out], [c for _, _, c in out],
                      sorted(minimal_idx) if minimal else None)
    if VERIFY_GB and not truncated and skip_block is None:
        if not check_buchberger(F, result.elements):
            raise GroebnerError("Buchberger criterion failed on a computed basis")
    return result


def spoly(F: FreeModule, a: dict, b: dict):
    """S-polynomial of two monic elements, or None when their leads sit in different components."""
    la, lb = max(a), max(b)
    if F.comp(la) != F.comp(lb):
        return None
    G = F.ring.guard
    le = _lcm_exp(la & F.ring.exp_mask, lb & F.ring.exp_mask, G)
    lc = F.ring.code_from_expfield(le) + F.comp_code[F.comp(la)]
    qa, qb = lc - la, lc - lb
    out = {k + qa: c for k, c in a.items()}
    return vec_add(out, {k + qb: c for k, c in b.items()}, F.ring.field, sign=-1)


def check_buchberger(F: FreeModule, basis: Sequence[dict]) -> bool:
    """Every S-polynomial of the basis reduces to zero against it."""
    red = Reducer(F, basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spoly(F, basis[i], basis[j])
            if s and red.reduce(s):
                return False
    return True
