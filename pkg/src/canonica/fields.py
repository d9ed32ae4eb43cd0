"""Exact coefficient fields: prime fields and the rationals."""
from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    pass


class PrimeField:
    """The field F_p.  Elements are ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or p >= 2**31 or not is_prime(p):
            raise FieldError(f"{p!r} is not a prime below 2^31")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def to_signed(self, a: int) -> int:
        """Balanced representative, used for printing."""
        return a - self.p if a > self.p // 2 else a

    def describe(self) -> dict:
        return {"type": "prime", "p": self.p}


class Rationals:
    """The field Q with Fraction coefficients."""

    kind = "rationals"
    p = None

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    @property
    def characteristic(self) -> int:
        return 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def inv(self, a) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in QQ")
        return 1 / Fraction(a)

    def div(self, a, b) -> Fraction:
        return Fraction(a) / b

    def neg(self, a):
        return -a

    def to_signed(self, a):
        return a

    def describe(self) -> dict:
        return {"type": "rationals"}


QQ = Rationals()


def field_from_spec(spec: dict | None):
    if spec is None:
        return PrimeField(DEFAULT_PRIME)
    kind = spec.get("type")
    if kind == "prime":
        return PrimeField(int(spec.get("p", DEFAULT_PRIME)))
    if kind == "rationals":
        return QQ
    raise FieldError(f"unknown field type {kind!r}")
