"""Constructors for the ring families: determinantal rings, trivial extensions,
power quotients, regular-sequence quotients and chains of these steps."""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .fields import DEFAULT_PRIME, PrimeField
from .homalg import change_ring, lift_polynomial
from .ideals import Ideal, colon_ideal, ideal_power
from .modules import FPModule, ext, free_module, minimal_presentation, quotient_module
from .parse import parse_polynomial
from .polynomial import Polynomial, PolyRing
from .quotient import QuotientRing

log = logging.getLogger(__name__)


class ParameterError(ValueError):
    """Construction parameters out of range."""


class RegularityFailure(ValueError):
    """An element of a proposed regular sequence is a zerodivisor."""

    def __init__(self, index: int, element):
        super().__init__(f"REGULARITY_FAILURE({index}): {element} is a zerodivisor")
        self.index = index
        self.element = element


# ---------------------------------------------------------------------------
# minors


def _det(M: Sequence[Sequence[Polynomial]], rows, cols, zero):
    if len(rows) == 1:
        return M[rows[0]][cols[0]]
    out = zero
    for k, c in enumerate(cols):
        a = M[rows[0]][c]
        if not a:
            continue
        t = a * _det(M, rows[1:], cols[:k] + cols[k + 1:], zero)
        out = out + t if k % 2 == 0 else out - t
    return out


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], t: int, ring=None) -> Ideal:
    """All t x t minors of a matrix (list of rows), row index tuples outermost."""
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    if t < 0 or t > min(nr, nc):
        raise ParameterError(f"minor size {t} out of range for a {nr}x{nc} matrix")
    if ring is None:
        ring = matrix[0][0].ring
    R = ring if isinstance(ring, QuotientRing) else QuotientRing(ring, [])
    if t == 0:
        return Ideal(R, [R.one()])
    zero = R.ambient.zero()
    gens = [_det(matrix, list(rows), list(cols), zero)
            for rows in combinations(range(nr), t) for cols in combinations(range(nc), t)]
    return Ideal(R, gens)


def _var_names(m: int, n: int, prefix: str = "x") -> list[str]:
    if m <= 9 and n <= 9:
        return [f"{prefix}{i + 1}{j + 1}" for i in range(m) for j in range(n)]
    return [f"{prefix}{i + 1}_{j + 1}" for i in range(m) for j in range(n)]


# ---------------------------------------------------------------------------
# determinantal rings


@dataclass
class DetRingDescriptor:
    """R = k[X]/I_{r+1}(X) for a generic m x n matrix X, stored with m >= n."""

    field: object
    m: int
    n: int
    r: int
    ring: QuotientRing
    ambient: PolyRing
    minors: list
    p_ideal: Ideal
    q_ideal: Ideal
    transposed: bool = False
    degenerate: bool = False

    @property
    def dim(self) -> int:
        return (self.m + self.n - self.r) * self.r

    @property
    def grade_d(self) -> int:
        return self.m * self.n - self.r * (self.m + self.n - self.r)

    @property
    def canonical_exponent(self) -> int:
        return self.m - self.n

    @property
    def gorenstein(self) -> bool:
        return self.r == 0 or self.m == self.n

    def predicted_classes(self) -> list[int]:
        return [0] if self.gorenstein else [0, self.canonical_exponent]

    def describe(self) -> dict:
        return {"kind": "determinantal", "m": self.m, "n": self.n, "r": self.r,
                "transposed": self.transposed, "field": self.field.describe()}


def build_det_ring(field, m: int, n: int, r: int, names: Sequence[str] | None = None) -> DetRingDescriptor:
    """The determinantal ring R_{r+1}(k; m, n), transposed so that m >= n.

    For r = 0 the ring is the base field itself (no variables); the ambient
    polynomial ring and its ideal of entries are still recorded for the
    Ext twist.
    """
    if field is None:
        field = PrimeField(DEFAULT_PRIME)
    if min(m, n) < 1 or r < 0 or r >= min(m, n):
        raise ParameterError(f"need 0 <= r < min(m, n), got m={m} n={n} r={r}")
    transposed = m < n
    if transposed:
        m, n = n, m
    names = list(names) if names is not None else _var_names(m, n)
    S = PolyRing(field, names)
    X = [[S.var(i * n + j) for j in range(n)] for i in range(m)]
    Sq = QuotientRing(S, [])
    minors = minors_ideal(X, r + 1, Sq).gens
    if r == 0:
        log.info("r = 0: the determinantal ring degenerates to the base field")
        k = PolyRing(field, [])
        R = QuotientRing(k, [], name=f"R1(k;{m},{n})")
        R.is_domain = True
        one = Ideal(R, [R.one()])
        return DetRingDescriptor(field, m, n, r, R, S, minors, one, one, transposed, True)
    R = QuotientRing(S, minors, name=f"R{r + 1}(k;{m},{n})")
    R.is_domain = True
    p = minors_ideal([[S.var(i * n + j) for j in range(n)] for i in range(r)], r, R)
    q = minors_ideal([[S.var(i * n + j) for j in range(r)] for i in range(m)], r, R)
    det = DetRingDescriptor(field, m, n, r, R, S, minors, p, q, transposed, False)
    if R.dim != det.dim:
        raise AssertionError(f"Krull dimension {R.dim} differs from (m+n-r)r = {det.dim}")
    if R.hilbert_series().pole_order != det.dim:
        raise AssertionError("Hilbert pole order differs from the Krull dimension")
    return det


def power_ideal(det: DetRingDescriptor, c: int, bound: int | None = None) -> Ideal:
    """p^c for c >= 0 and q^(-c) for c < 0."""
    if bound is not None and abs(c) > bound:
        raise ParameterError(f"|{c}| exceeds the power bound {bound}")
    cache = det.ring.cached("power_ideals", dict)
    if c not in cache:
        cache[c] = ideal_power(det.p_ideal, c) if c >= 0 else ideal_power(det.q_ideal, -c)
    return cache[c]


def canonical_module_det(det: DetRingDescriptor) -> Ideal:
    """The ideal p^(m-n), a canonical module of R."""
    return power_ideal(det, det.canonical_exponent if not det.degenerate else 0)


def ext_twist_dagger(det: DetRingDescriptor) -> FPModule:
    """Ext^d_S(R, S) over the ambient polynomial ring S, as a module over R."""
    S = det.ambient
    S0 = QuotientRing(S, [])
    Rmod = quotient_module(Ideal(S0, det.minors))
    E = ext(det.grade_d, Rmod, free_module(S0, [0])).module
    if det.degenerate:
        # R = k: Ext^{mn}_S(k, S) is one-dimensional, concentrated in a single degree
        Em = minimal_presentation(E)
        if Em.ngens != 1 or len(Em.relations) != S.nvars:
            raise AssertionError("unexpected Ext^{mn}(k, S)")
        return FPModule(det.ring, Em.gen_degrees, [], name="dagger")
    return change_ring(E, det.ring, name="dagger")


# ---------------------------------------------------------------------------
# extensions and quotients


def _fresh(names: Sequence[str], wanted: Sequence[str]) -> list[str]:
    taken = set(names)
    out = []
    for w in wanted:
        v = w
        k = 1
        while v in taken:
            k += 1
            v = f"{w}_{k}"
        taken.add(v)
        out.append(v)
    return out


def adjoin_variables(B: QuotientRing, new_names: Sequence[str]) -> QuotientRing:
    """B[new variables], keeping B's relations."""
    S = B.ambient
    T = PolyRing(S.field, list(S.names) + list(new_names), S.order, list(S.weights) + [1] * len(new_names))
    idx = list(range(S.nvars))
    R = QuotientRing(T, [g.map_to(T, idx) for g in B.relations])
    R.is_domain = getattr(B, "is_domain", None)
    return R


def build_trivial_extension(B: QuotientRing, q: int, names: Sequence[str] | None = None) -> QuotientRing:
    """B[Z_1..Z_q]/(Z)^2, isomorphic to B (x) B^q with square-zero multiplication."""
    if q < 1:
        raise ParameterError("trivial extension needs q >= 1")
    wanted = list(names) if names is not None else [f"z{i + 1}" for i in range(q)]
    zs = _fresh(B.ambient.names, wanted)
    T = adjoin_variables(B, zs)
    S = T.ambient
    Z = [S.var(z) for z in zs]
    rel = [Z[i] * Z[j] for i in range(q) for j in range(i, q)]
    R = QuotientRing(S, T.relations + rel)
    R.is_domain = False
    R.trivial_ext = {"base": B, "z": zs}
    return R


def quotient_by_regular_sequence(R: QuotientRing, ys: Sequence[Polynomial]) -> QuotientRing:
    """R/(y_1..y_s), certifying (0 : y_i) = 0 in R/(y_1..y_{i-1}) at every step."""
    cur = R
    for i, y in enumerate(ys, start=1):
        y = lift_polynomial(y, cur)
        if not y:
            raise RegularityFailure(i, y)
        if not y.is_homogeneous() or y.degree() <= 0:
            raise ParameterError("regular sequence elements must be homogeneous of positive degree")
        if not colon_ideal(Ideal(cur, []), Ideal(cur, [y])).is_zero():
            raise RegularityFailure(i, y)
        cur = QuotientRing(cur.ambient, cur.relations + [y])
    cur.is_domain = None
    cur.regular_sequence = (R, list(ys))
    return cur


def build_power_quotient(A: QuotientRing, ys: Sequence[Polynomial], m: int) -> QuotientRing:
    """A/(y)^m for a certified A-regular sequence y."""
    if m < 1:
        raise ParameterError("exponent must be positive")
    quotient_by_regular_sequence(A, ys)
    I = ideal_power(Ideal(A, [lift_polynomial(y, A) for y in ys]), m)
    R = QuotientRing(A.ambient, A.relations + I.gens)
    R.is_domain = None
    R.power_quotient = {"base": A, "y": list(ys), "m": m}
    return R


# ---------------------------------------------------------------------------
# chains


@dataclass
class ChainStep:
    kind: str  # "det", "triv" or "powq"
    params: dict

    def label(self) -> str:
        if self.kind == "det":
            return f"det {self.params['m']} {self.params['n']} {self.params['r']}"
        if self.kind == "triv":
            return f"triv {self.params['q']}"
        return f"powq ({','.join(self.params['y'])}) {self.params['m']}"


@dataclass
class ChainSpec:
    field: object
    steps: list


@dataclass
class StepRecord:
    step: ChainStep
    before: QuotientRing
    after: QuotientRing
    doubles: bool
    twist: str
    extra: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"step": self.step.label(), "doubles": self.doubles, "twist": self.twist}


@dataclass
class Chain:
    spec: ChainSpec
    ring: QuotientRing
    records: list

    @property
    def s(self) -> int:
        return sum(1 for r in self.records if r.doubles)

    @property
    def predicted_cardinality(self) -> int:
        return 2 ** self.s


def parse_chain_steps(items: Sequence) -> list[ChainStep]:
    """Steps from dicts ({kind, ...}) or shorthand strings such as "triv 2" or "powq (y1,y2) 2"."""
    steps = []
    for it in items:
        if isinstance(it, dict):
            kind = it.get("kind")
            if kind in ("det", "det_block", "determinantal"):
                steps.append(ChainStep("det", {"m": int(it["m"]), "n": int(it["n"]), "r": int(it["r"])}))
            elif kind in ("triv", "trivial_ext"):
                steps.append(ChainStep("triv", {"q": int(it["q"])}))
            elif kind in ("powq", "power_quotient"):
                ys = it["y"] if "y" in it else it["sequence"]
                steps.append(ChainStep("powq", {"y": [str(y) for y in ys], "m": int(it["m"])}))
            else:
                raise ParameterError(f"unknown chain step {kind!r}")
            continue
        text = str(it).strip()
        head, _, rest = text.partition(" ")
        rest = rest.strip()
        if head in ("triv", "trivial_ext"):
            steps.append(ChainStep("triv", {"q": int(rest)}))
        elif head in ("det", "det_block"):
            m, n, r = (int(x) for x in rest.split())
            steps.append(ChainStep("det", {"m": m, "n": n, "r": r}))
        elif head in ("powq", "power_quotient"):
            if not rest.startswith("("):
                raise ParameterError("powq expects a parenthesized sequence")
            close = rest.index(")")
            ys = [y.strip() for y in rest[1:close].split(",") if y.strip()]
            steps.append(ChainStep("powq", {"y": ys, "m": int(rest[close + 1:].strip())}))
        else:
            raise ParameterError(f"unknown chain step {head!r}")
    return steps


def build_chain(spec: ChainSpec) -> Chain:
    """Apply the steps to the base field in order, recording which steps double the count."""
    fld = spec.field if spec.field is not None else PrimeField(DEFAULT_PRIME)
    cur = QuotientRing(PolyRing(fld, []), [])
    cur.is_domain = True
    records = []
    for step in spec.steps:
        before = cur
        if step.kind == "triv":
            q = step.params["q"]
            cur = build_trivial_extension(before, q)
            records.append(StepRecord(step, before, cur, q > 1, "hom"))
        elif step.kind == "powq":
            ys, m = step.params["y"], step.params["m"]
            names = list(before.ambient.names)
            new = []
            for y in ys:
                for tok in _identifiers(y):
                    if tok not in names and tok not in new:
                        new.append(tok)
            A = adjoin_variables(before, new) if new else before
            polys = [parse_polynomial(y, A.ambient) for y in ys]
            cur = build_power_quotient(A, polys, m)
            records.append(StepRecord(step, before, cur, m > 1 and len(ys) > 1, "ext",
                                      {"A": A, "y": polys, "q": len(ys)}))
        elif step.kind == "det":
            m, n, r = step.params["m"], step.params["n"], step.params["r"]
            if r < 0 or r >= min(m, n):
                raise ParameterError(f"need 0 <= r < min(m, n) in step {step.label()}")
            if m < n:
                m, n = n, m
            if r == 0:
                records.append(StepRecord(step, before, cur, False, "none"))
                continue
            xs = _fresh(before.ambient.names, _var_names(m, n, "x"))
            A = adjoin_variables(before, xs)
            S = A.ambient
            X = [[S.var(xs[i * n + j]) for j in range(n)] for i in range(m)]
            minors = minors_ideal(X, r + 1, QuotientRing(S, [])).gens
            cur = QuotientRing(S, A.relations + minors)
            cur.is_domain = getattr(before, "is_domain", None)
            grade = m * n - r * (m + n - r)
            records.append(StepRecord(step, before, cur, m != n, "dagger",
                                      {"A": A, "minors": minors, "grade": grade}))
        else:
            raise ParameterError(f"unknown step kind {step.kind!r}")
    return Chain(spec, cur, records)


def _identifiers(text: str) -> list[str]:
    return re.findall(r"[A-Za-z][A-Za-z0-9_]*", text)
