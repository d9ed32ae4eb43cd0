"""Hilbert series, Krull dimension and multiplicity of graded modules.

The primary route reads everything off the leading-term module of a Groebner
basis: for each component a monomial ideal, whose Hilbert numerator comes from
the usual variable-pivot recursion.  A second route takes the Euler
characteristic of a finite free resolution over the ambient polynomial ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence


@dataclass(frozen=True)
class HilbertSeries:
    """H(t) = t^shift * (sum coeffs[i] t^i) / (1 - t)^pole_order with Q(1) != 0 (or Q = 0)."""

    coeffs: tuple
    shift: int
    pole_order: int

    @classmethod
    def from_numerator(cls, num: dict, nvars: int) -> "HilbertSeries":
        """Reduce num(t) / (1-t)^nvars, num given as {degree: coefficient}."""
        num = {d: c for d, c in num.items() if c}
        if not num:
            return cls((), 0, 0)
        lo, hi = min(num), max(num)
        q = [num.get(d, 0) for d in range(lo, hi + 1)]
        pole = nvars
        while pole > 0 and sum(q) == 0:
            # divide by (1 - t): prefix sums
            out, acc = [], 0
            for c in q[:-1]:
                acc += c
                out.append(acc)
            q = out
            pole -= 1
        while q and q[-1] == 0:
            q.pop()
        k = 0
        while k < len(q) and q[k] == 0:
            k += 1
        return cls(tuple(q[k:]), lo + k, pole)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def multiplicity(self) -> int:
        return sum(self.coeffs)

    @property
    def dim(self) -> int:
        return self.pole_order if self.coeffs else -1

    def numerator_dict(self) -> dict:
        return {self.shift + i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, d: int) -> int:
        """dim_k of the degree-d piece."""
        total = 0
        e = self.pole_order
        for i, c in enumerate(self.coeffs):
            m = d - self.shift - i
            if m < 0:
                continue
            total += c * (comb(m + e - 1, e - 1) if e > 0 else (1 if m == 0 else 0))
        return total

    def numerator_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            d = self.shift + i
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            a = abs(c)
            body = mono if (a == 1 and mono) else (f"{a}{mono}" if mono else str(a))
            sign = "-" if c < 0 else "+"
            parts.append(("-" if c < 0 else "") + body if not parts else sign + body)
        return "".join(parts)

    def __str__(self):
        num = self.numerator_str()
        if self.pole_order == 0:
            return num
        den = "(1-t)" if self.pole_order == 1 else f"(1-t)^{self.pole_order}"
        if len([c for c in self.coeffs if c]) > 1:
            num = f"({num})"
        return f"{num}/{den}"


# ---------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=100000)
def _numerator_rec(gens: tuple, n: int) -> tuple:
    """Numerator of H(S/L) over (1-t)^n, as a coefficient tuple (degree 0 first)."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return ()
    if len(gens) == 1:
        d = sum(gens[0])
        return tuple([1] + [0] * (d - 1) + [-1])
    linear = [g for g in gens if sum(g) == 1]
    if linear:
        # split off the variables among the generators: factor (1-t)^k
        lin_vars = {g.index(1) for g in linear}
        rest = _minimalize([g for g in gens if not any(g[i] for i in lin_vars)])
        base = _numerator_rec(rest, n)
        k = len(linear)
        factor = [(-1) ** i * comb(k, i) for i in range(k + 1)]
        out = [0] * (len(base) + k)
        for i, c in enumerate(base):
            for j, f in enumerate(factor):
                out[i + j] += c * f
        return tuple(out) if base else ()
    # pivot on the variable occurring in most generators
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    x = max(range(n), key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == x else 0 for i in range(n))
    plus = _minimalize([g for g in gens if not g[x]] + [unit])
    colon = _minimalize([tuple(e - 1 if i == x and e else e for i, e in enumerate(g)) for g in gens])
    a = _numerator_rec(plus, n)
    b = _numerator_rec(colon, n)
    size = max(len(a), len(b) + 1)
    out = [0] * size
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + 1] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def monomial_numerator(gens: Sequence[Sequence[int]], n: int) -> dict:
    """Numerator of the Hilbert series of S/L (standard grading) over (1-t)^n."""
    q = _numerator_rec(_minimalize(tuple(tuple(g) for g in gens)), n)
    return {i: c for i, c in enumerate(q) if c}


def monomial_dim(gens: Sequence[Sequence[int]], n: int) -> int:
    """Krull dimension of S/L: n minus the least number of variables meeting every support."""
    gens = _minimalize(tuple(tuple(g) for g in gens))
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    best = [n]

    def search(chosen: frozenset, k: int):
        if k >= best[0]:
            return
        for s in supports:
            if not (s & chosen):
                for v in sorted(s):
                    search(chosen | {v}, k + 1)
                return
        best[0] = k

    search(frozenset(), 0)
    return n - best[0]


# ---------------------------------------------------------------------------
# rings and modules


def _check_standard(S):
    if any(w != 1 for w in S.weights):
        raise NotImplementedError("Hilbert series are implemented for the standard grading only")


def _lt_ideals(M):
    """Per generator of M, the leading-term monomial ideal of its relations plus the ring's."""
    from .kernels import Submodule
    R = M.ring
    m0 = M.ngens
    lts = [[] for _ in range(m0)]
    if M.relations:
        sub = Submodule(R, M.relations, M.gen_degrees, rank=m0)
        for j, exps in sub.lead_terms():
            lts[j].append(exps)
    else:
        for g in R.gb:
            exps = R.ambient.exponents(max(g))
            for j in range(m0):
                lts[j].append(exps)
    return lts


def hilbert_series_module(M) -> HilbertSeries:
    R = M.ring
    S = R.ambient
    _check_standard(S)
    for col in M.relations:
        if not all(f.is_homogeneous() for f in col):
            raise ValueError("Hilbert series needs a homogeneous presentation")
    n = S.nvars
    num: dict = {}
    for deg, lt in zip(M.gen_degrees, _lt_ideals(M)):
        for d, c in monomial_numerator(lt, n).items():
            num[d + deg] = num.get(d + deg, 0) + c
    return HilbertSeries.from_numerator(num, n)


def krull_dim_module(M) -> int:
    n = M.ring.ambient.nvars
    dims = [monomial_dim(lt, n) for lt in _lt_ideals(M)]
    return max(dims, default=-1)


def hilbert_series_ring(R) -> HilbertSeries:
    S = R.ambient
    _check_standard(S)
    lt = [S.exponents(max(g)) for g in R.gb]
    return HilbertSeries.from_numerator(monomial_numerator(lt, S.nvars), S.nvars)


def krull_dim_ring(R) -> int:
    S = R.ambient
    return monomial_dim([S.exponents(max(g)) for g in R.gb], S.nvars)


def hilbert_series_via_resolution(M) -> HilbertSeries:
    """Euler characteristic of a finite minimal resolution of M over the ambient polynomial ring."""
    from .modules import FPModule, free_resolution
    from .quotient import QuotientRing
    R = M.ring
    S = R.ambient
    _check_standard(S)
    S0 = QuotientRing(S, [])
    m0 = M.ngens
    rels = [list(c) for c in M.relations]
    for g in R.relations:
        for j in range(m0):
            v = [S.zero()] * m0
            v[j] = g
            rels.append(v)
    Mo = FPModule(S0, M.gen_degrees, rels)
    F = free_resolution(Mo, S.nvars + 1)
    if not F.complete:
        raise RuntimeError("resolution over the polynomial ring did not terminate")
    num: dict = {}
    for i, degs in enumerate(F.degrees):
        for d in degs:
            num[d] = num.get(d, 0) + (-1) ** i
    return HilbertSeries.from_numerator(num, S.nvars)


def multiplicity(M) -> int:
    """e(m, M): the numerator at t = 1 of the reduced Hilbert series."""
    H = hilbert_series_module(M)
    if H.is_zero():
        raise ValueError("multiplicity of the zero module")
    return H.multiplicity
