"""The universal and tropical semifields and the tropicalization map.

Semifield elements share one operator protocol so that seed mutation can be
written once: ``a + b`` is the semifield addition (ordinary ``+`` in the
universal semifield, componentwise exponent minimum in the tropical one),
``*``, ``/`` and integer ``**`` are the group operations. Positive
``fractions.Fraction`` values already satisfy this protocol, which gives the
numeric specialization used by the dilogarithm checks for free.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import LaurentPoly, RationalFunction, monomial_str

__all__ = [
    "TropicalMonomial",
    "SubtractionFreeRational",
    "trop_add",
    "tropicalize",
    "semifield_ops",
    "semifield_one",
]


class TropicalMonomial:
    """Laurent monomial ``prod y_i**a_i`` with coefficient 1, in P_trop(y)."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[int]):
        self.exponents = tuple(int(a) for a in exponents)

    @classmethod
    def one(cls, n: int) -> "TropicalMonomial":
        return cls((0,) * n)

    @classmethod
    def gen(cls, i: int, n: int) -> "TropicalMonomial":
        e = [0] * n
        e[i] = 1
        return cls(e)

    def __len__(self):
        return len(self.exponents)

    def _check(self, other: "TropicalMonomial"):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("tropical monomials of different lengths")

    def __add__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        self._check(other)
        return TropicalMonomial(min(a, b) for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        self._check(other)
        return TropicalMonomial(a + b for a, b in zip(self.exponents, other.exponents))

    def __truediv__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        self._check(other)
        return TropicalMonomial(a - b for a, b in zip(self.exponents, other.exponents))

    def __pow__(self, e: int) -> "TropicalMonomial":
        return TropicalMonomial(a * e for a in self.exponents)

    def inverse(self) -> "TropicalMonomial":
        return self ** -1

    def is_one(self) -> bool:
        return not any(self.exponents)

    def __eq__(self, other):
        if not isinstance(other, TropicalMonomial):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"y{i + 1}" for i in range(len(self.exponents))]
        return monomial_str(self.exponents, names)

    __str__ = to_str

    def __repr__(self):
        return f"TropicalMonomial({self.exponents})"


def trop_add(a: TropicalMonomial, b: TropicalMonomial) -> TropicalMonomial:
    return a + b


class SubtractionFreeRational:
    """Element of the universal semifield, stored as a subtraction-free witness.

    ``num`` and ``den`` are Laurent polynomials with strictly positive
    coefficients. Common factors are cancelled only when the reduced
    numerator and denominator stay positive, so the stored pair is always a
    valid witness. Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        if not num.has_positive_coefficients() or not den.has_positive_coefficients():
            raise ValueError("not a subtraction-free expression")
        if reduce and not den.is_monomial():
            num, den = _positive_reduce(num, den)
        elif den.is_monomial():
            # monomial denominators fold into the numerator
            num, den = num * den.inverse_monomial(), LaurentPoly.one(num.nvars)
        self.num, self.den = num, den

    @classmethod
    def _witness(cls, num: LaurentPoly, den: LaurentPoly) -> "SubtractionFreeRational":
        """Wrap an already positive pair without further reduction."""
        if den.is_monomial():
            num, den = num * den.inverse_monomial(), LaurentPoly.one(num.nvars)
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def one(cls, n: int) -> "SubtractionFreeRational":
        return cls(LaurentPoly.one(n))

    @classmethod
    def gen(cls, i: int, n: int) -> "SubtractionFreeRational":
        return cls(LaurentPoly.gen(i, n))

    @classmethod
    def constant(cls, c, n: int) -> "SubtractionFreeRational":
        return cls(LaurentPoly.constant(c, n))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SubtractionFreeRational.constant(other, self.nvars)
        if self.den == other.den:
            return SubtractionFreeRational(self.num + other.num, self.den)
        # cancel a common factor of the denominators first, then only against it
        g, b1, d1 = _positive_cofactors(self.den, other.den)
        t = self.num * d1 + other.num * b1
        g2, t1, g1 = _positive_cofactors(t, g)
        return SubtractionFreeRational._witness(t1, b1 * d1 * g1)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SubtractionFreeRational.constant(other, self.nvars)
        _, a, d = _positive_cofactors(self.num, other.den)
        _, c, b = _positive_cofactors(other.num, self.den)
        return SubtractionFreeRational._witness(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "SubtractionFreeRational":
        return SubtractionFreeRational._witness(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return SubtractionFreeRational._witness(self.num**e, self.den**e)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SubtractionFreeRational.constant(other, self.nvars)
        if not isinstance(other, SubtractionFreeRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def to_rational(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)

    def evaluate(self, point) -> Fraction:
        return self.num.evaluate(point) / self.den.evaluate(point)

    def to_str(self, names=None) -> str:
        n = self.num.to_str(names)
        if self.den.is_one():
            return n
        return f"({n})/({self.den.to_str(names)})"

    __str__ = to_str

    def __repr__(self):
        return f"SubtractionFreeRational({self.num!r}, {self.den!r})"


def _positive_cofactors(p: LaurentPoly, q: LaurentPoly):
    """``(g, p/g, q/g)`` for the polynomial gcd ``g`` when both cofactors stay
    positive, and ``(1, p, q)`` otherwise. ``g`` is normalized to be positive
    whenever it is used."""
    one = LaurentPoly.one(p.nvars)
    if p.is_monomial() or q.is_monomial():
        return one, p, q
    g = LaurentPoly._raw(p.nvars, p._poly.gcd(q._poly), (0,) * p.nvars, normalize=False)
    if g.is_one() or g.is_monomial():
        return one, p, q
    if not g.has_positive_coefficients():
        g = -g
        if not g.has_positive_coefficients():
            return one, p, q
    p1, q1 = p.exact_div(g), q.exact_div(g)
    if p1.has_positive_coefficients() and q1.has_positive_coefficients():
        return g, p1, q1
    return one, p, q


def _positive_reduce(num: LaurentPoly, den: LaurentPoly):
    r = RationalFunction(num, den)
    if r.den.is_one() and r.num.has_positive_coefficients():
        return r.num, r.den
    if r.num.has_positive_coefficients() and r.den.has_positive_coefficients():
        return r.num, r.den
    # leading-coefficient normalization may have flipped every sign
    if all(c < 0 for c in r.num.terms().values()) and all(c < 0 for c in r.den.terms().values()):
        return -r.num, -r.den
    return num, den


def tropicalize(s) -> TropicalMonomial:
    """Image under P_univ(y) -> P_trop(y): ``y_i -> y_i`` and positive
    constants ``-> 1``."""
    if isinstance(s, SubtractionFreeRational):
        return TropicalMonomial(
            a - b for a, b in zip(s.num.min_exponents(), s.den.min_exponents())
        )
    if isinstance(s, LaurentPoly):
        if not s.has_positive_coefficients():
            raise ValueError("tropicalization needs a subtraction-free expression")
        return TropicalMonomial(s.min_exponents())
    raise TypeError(f"cannot tropicalize {type(s).__name__}")


def semifield_ops(a, b=None, op: str = "add"):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a ** -1
    raise ValueError(f"unknown op {op!r}")


def semifield_one(like):
    """Multiplicative identity of the semifield that ``like`` belongs to."""
    if isinstance(like, TropicalMonomial):
        return TropicalMonomial.one(len(like))
    if isinstance(like, SubtractionFreeRational):
        return SubtractionFreeRational.one(like.nvars)
    return Fraction(1)
