"""Polynomial rings, monomial orders and sparse polynomials.

A monomial is stored as a single packed integer.  The packing is linear in the
exponent vector, so multiplying monomials is integer addition, and the fields
are laid out so that comparing two packed integers is the monomial order.

Layout, least significant first::

    [ exponents | component | order-matrix rows | degree | block ]

The exponent field keeps one guard bit per variable so divisibility is a
single subtract-and-mask.  The component/degree/block fields are zero for ring
elements; the Groebner engine uses them for free-module elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

EXP_BITS = 10            # exponents < 2**(EXP_BITS - 1)
COMP_BITS = 20
ROW_BITS = 16
DEG_BITS = 20
MAX_EXPONENT = 2 ** (EXP_BITS - 1) - 1


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """kind is 'grevlex', 'lex' or 'elim'; elim eliminates the first `block` variables."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 0:
            raise ValueError("elimination block must be nonnegative")

    @property
    def graded(self) -> bool:
        return self.kind == "grevlex"

    def rows(self, nvars: int) -> list[list[int]]:
        if self.kind == "lex":
            return [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        # grevlex as a matrix order: rows are the partial degree sums x1+..+xk, k = n..1
        grev = [[1] * k + [0] * (nvars - k) for k in range(nvars, 0, -1)]
        if self.kind == "grevlex":
            return grev
        k = min(self.block, nvars)
        return [[1] * k + [0] * (nvars - k)] + grev

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class PolyRing:
    """k[x_1..x_n] with a monomial order and positive integer weights."""

    def __init__(self, field, names: Sequence[str], order: MonomialOrder = GREVLEX,
                 weights: Sequence[int] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        self.field = field
        self.names = names
        self.order = order
        self.weights = weights
        self.nvars = n = len(names)
        self._index = {v: i for i, v in enumerate(names)}

        rows = order.rows(n)
        self.nrows = len(rows)
        self.comp_pos = n * EXP_BITS
        row_base = self.comp_pos + COMP_BITS
        self.deg_pos = row_base + self.nrows * ROW_BITS
        self.block_pos = self.deg_pos + DEG_BITS
        self.exp_mask = (1 << self.comp_pos) - 1
        self.guard = sum(1 << (i * EXP_BITS + EXP_BITS - 1) for i in range(n))
        self.comp_mask = (1 << COMP_BITS) - 1
        self.deg_mask = (1 << DEG_BITS) - 1
        self.var_code = []
        for i in range(n):
            code = 1 << (i * EXP_BITS)
            for r, row in enumerate(rows):
                code += row[i] << (row_base + (self.nrows - 1 - r) * ROW_BITS)
            if order.graded:
                code += weights[i] << self.deg_pos
            self.var_code.append(code)
        self._exps_cache: dict[int, tuple] = {}
        self._code_cache: dict[tuple, int] = {}

    # -- identity ---------------------------------------------------------
    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)}, {self.order})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.order == other.order
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.field, self.names, self.order, self.weights))

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order, self.weights)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    # -- monomial codes -----------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        exps = tuple(exps)
        code = self._code_cache.get(exps)
        if code is None:
            if len(exps) != self.nvars:
                raise ValueError("exponent vector has wrong length")
            if any(e < 0 or e > MAX_EXPONENT for e in exps):
                raise OverflowError(f"exponent out of range in {exps}")
            code = 0
            for e, c in zip(exps, self.var_code):
                if e:
                    code += e * c
            self._code_cache[exps] = code
            self._exps_cache[code] = exps
        return code

    def exponents(self, code: int) -> tuple:
        exps = self._exps_cache.get(code)
        if exps is None:
            e = code & self.exp_mask
            m = (1 << EXP_BITS) - 1
            exps = tuple((e >> (i * EXP_BITS)) & m for i in range(self.nvars))
            self._exps_cache[code] = exps
        return exps

    def code_from_expfield(self, e: int) -> int:
        """Rebuild a full monomial code from its exponent field."""
        m = (1 << EXP_BITS) - 1
        code = 0
        for i, c in enumerate(self.var_code):
            v = (e >> (i * EXP_BITS)) & m
            if v:
                code += v * c
        return code

    def mon_degree(self, code: int) -> int:
        if self.order.graded:
            return (code >> self.deg_pos) & self.deg_mask
        return sum(e * w for e, w in zip(self.exponents(code & self.exp_mask), self.weights))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b & self.exp_mask | g) - (a & self.exp_mask)) & g == g

    # -- element constructors ------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        return Polynomial(self, {self.var_code[i]: self.field(1)})

    @property
    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {self.encode(exps): c} if c else {})

    def from_dict(self, terms: Mapping[tuple, object]) -> "Polynomial":
        out: dict[int, object] = {}
        f = self.field
        for exps, c in terms.items():
            c = f(c)
            if not c:
                continue
            k = self.encode(exps)
            v = out.get(k)
            v = c if v is None else f(v + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Polynomial(self, out)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch("polynomial belongs to a different ring")
            return value
        if isinstance(value, str):
            from .parse import parse_polynomial
            return parse_polynomial(value, self)
        return self.const(value)


def compare_monomials(a: Sequence[int], b: Sequence[int], order: MonomialOrder,
                      weights: Sequence[int] | None = None) -> int:
    """Return -1, 0 or 1 as a <, =, > b in the given order."""
    if len(a) != len(b):
        raise ValueError("exponent vectors have different lengths")
    if order.graded:
        w = weights or (1,) * len(a)
        da = sum(x * y for x, y in zip(a, w))
        db = sum(x * y for x, y in zip(b, w))
        if da != db:
            return -1 if da < db else 1
    for row in order.rows(len(a)):
        va = sum(x * y for x, y in zip(row, a))
        vb = sum(x * y for x, y in zip(row, b))
        if va != vb:
            return -1 if va < vb else 1
    return 0


class Polynomial:
    """Sparse polynomial: a dict from packed monomial codes to nonzero coefficients.

    Treated as immutable once built.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[int, object]]:
        return sorted(self.terms.items(), reverse=True)

    def items(self) -> Iterable[tuple[tuple, object]]:
        ex = self.ring.exponents
        for k, c in self.sorted_terms():
            yield ex(k), c

    @property
    def lead_code(self) -> int:
        return max(self.terms)

    @property
    def lead_coeff(self):
        return self.terms[max(self.terms)]

    @property
    def lead_exponents(self) -> tuple:
        return self.ring.exponents(max(self.terms))

    def degree(self) -> int:
        if not self.terms:
            return -1
        md = self.ring.mon_degree
        return max(md(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        md = self.ring.mon_degree
        return len({md(k) for k in self.terms}) <= 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_coeff(self):
        return self.terms.get(0, self.ring.field(0))

    def variables(self) -> set[int]:
        out = set()
        for k in self.terms:
            out.update(i for i, e in enumerate(self.ring.exponents(k)) if e)
        return out

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch("polynomials belong to different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, 1, self.ring.field))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, -1, self.ring.field))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {k: f.neg(c) for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        return Polynomial(self.ring, _mul(self.terms, other.terms, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.p
        if p:
            return Polynomial(self.ring, {k: v * c % p for k, v in self.terms.items()})
        return Polynomial(self.ring, {k: v * c for k, v in self.terms.items()})

    def mul_monomial(self, code: int, c=1) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        p = f.p
        if p:
            return Polynomial(self.ring, {k + code: v * c % p for k, v in self.terms.items()})
        return Polynomial(self.ring, {k + code: v * c for k, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .parse import format_polynomial
        return format_polynomial(self)

    def map_to(self, ring: PolyRing, var_map: Sequence[int | None]) -> "Polynomial":
        """Rename variables: variable i goes to var_map[i] of `ring` (None forbids it)."""
        out = {}
        f = ring.field
        n = ring.nvars
        for k, c in self.terms.items():
            exps = self.ring.exponents(k)
            new = [0] * n
            for i, e in enumerate(exps):
                if e:
                    j = var_map[i]
                    if j is None:
                        raise ValueError("polynomial involves an unmapped variable")
                    new[j] += e
            code = ring.encode(new)
            v = f(c) if out.get(code) is None else f(out[code] + c)
            if v:
                out[code] = v
            else:
                out.pop(code, None)
        return Polynomial(ring, out)


def _add(a: dict, b: dict, sign: int, field) -> dict:
    out = dict(a)
    p = field.p
    for k, c in b.items():
        v = out.get(k)
        if v is None:
            out[k] = (sign * c) % p if p else sign * c
        else:
            v = (v + sign * c) % p if p else v + sign * c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _mul(a: dict, b: dict, field) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    p = field.p
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            v = get(k)
            out[k] = ca * cb if v is None else v + ca * cb
    if p:
        return {k: v % p for k, v in out.items() if v % p}
    return {k: v for k, v in out.items() if v}
