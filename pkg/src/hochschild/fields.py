"""Exact scalars: the rationals and prime fields.

Scalars are plain Python numbers.  Over Q a scalar is an ``int`` when it is
integral and a ``Fraction`` otherwise; over F_p it is an ``int`` in [0, p).
Sparse vectors are dicts mapping a hashable key to a nonzero scalar.
"""

from fractions import Fraction

from .errors import UsageError


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The field Q (``modulus == 0``) or F_p."""

    __slots__ = ("modulus",)

    def __init__(self, modulus=0):
        if modulus and not _is_prime(modulus):
            raise UsageError(f"modulus {modulus} is not prime")
        self.modulus = modulus

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @classmethod
    def from_char(cls, char):
        return cls(int(char))

    @property
    def kind(self):
        return "rationals" if self.modulus == 0 else "prime-field"

    @property
    def char(self):
        return self.modulus

    def __eq__(self, other):
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    def __repr__(self):
        return "Field(Q)" if self.modulus == 0 else f"Field(F_{self.modulus})"

    # -- scalar arithmetic -------------------------------------------------

    def reduce(self, x):
        if self.modulus:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            return x % self.modulus
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.modulus:
            if x % self.modulus == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, self.modulus)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if x == 1 or x == -1:
            return x
        return self.reduce(Fraction(1) / x)

    def div(self, a, b):
        if self.modulus:
            return a * self.inv(b) % self.modulus
        if b == 1:
            return a
        if b == -1:
            return -a
        return self.reduce(Fraction(a) / b)

    def clean(self, vec):
        """Canonicalize a sparse vector in place-free fashion, dropping zeros."""
        out = {}
        if self.modulus:
            p = self.modulus
            for k, c in vec.items():
                c %= p
                if c:
                    out[k] = c
        else:
            for k, c in vec.items():
                if c:
                    out[k] = self.reduce(c)
        return out

    def parse(self, text):
        text = str(text).strip()
        if "/" in text:
            num, den = text.split("/")
            return self.reduce(Fraction(int(num), int(den)))
        return self.reduce(int(text))

    def format(self, x):
        x = self.reduce(x)
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def to_json(self):
        if self.modulus:
            return {"kind": {"prime": self.modulus}}
        return {"kind": "rationals"}

    @classmethod
    def from_json(cls, obj):
        kind = obj["kind"]
        if kind == "rationals":
            return cls(0)
        if isinstance(kind, dict) and "prime" in kind:
            return cls(int(kind["prime"]))
        raise UsageError(f"unknown field kind {kind!r}")


QQ = Field(0)
GF2 = Field(2)


def add_into(acc, vec, scale=1):
    """acc += scale * vec, without reduction (call Field.clean afterwards)."""
    if scale == 1:
        for k, c in vec.items():
            acc[k] = acc.get(k, 0) + c
    else:
        for k, c in vec.items():
            acc[k] = acc.get(k, 0) + scale * c
    return acc


def combine(field, *terms):
    """Linear combination of sparse vectors given as (scale, vec) pairs."""
    acc = {}
    for scale, vec in terms:
        add_into(acc, vec, scale)
    return field.clean(acc)
