"""Exact arithmetic: multivariate Laurent polynomials, rational functions,
and univariate rational functions in ``q``.

Multivariate GCDs are delegated to FLINT (``python-flint``); everything else
about the representation (monomial content, canonical forms, exponent access)
is handled here.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "QRational",
    "evaluate",
    "rational_normalize",
    "laurent_arith",
]

Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def _ctx(nvars: int) -> flint.fmpq_mpoly_ctx:
    return flint.fmpq_mpoly_ctx.get(("v", nvars), "lex")


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _strip_content(poly, shift: Exponent):
    """Move the monomial content of ``poly`` into ``shift``."""
    if poly.is_zero():
        return poly, (0,) * len(shift)
    monoms = poly.monoms()
    low = tuple(min(m[i] for m in monoms) for i in range(len(shift)))
    if any(low):
        poly = poly / poly.context().from_dict({low: 1})
        shift = tuple(s + l for s, l in zip(shift, low))
    return poly, shift


class LaurentPoly:
    """Laurent polynomial in ``nvars`` variables with rational coefficients.

    Stored as ``x**shift * poly`` where ``poly`` is an ordinary polynomial not
    divisible by any variable. Instances are immutable.
    """

    __slots__ = ("nvars", "_poly", "_shift", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise ValueError("LaurentPoly needs at least one variable")
        terms = {tuple(e): c for e, c in (terms or {}).items() if c != 0}
        for e in terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
        if terms:
            low = tuple(min(e[i] for e in terms) for i in range(nvars))
            data = {
                tuple(a - b for a, b in zip(e, low)): _to_fmpq(c) for e, c in terms.items()
            }
            poly = _ctx(nvars).from_dict(data)
            poly, shift = _strip_content(poly, low)
        else:
            poly, shift = _ctx(nvars).from_dict({}), (0,) * nvars
        self._set(nvars, poly, shift)

    def _set(self, nvars, poly, shift):
        self.nvars = nvars
        self._poly = poly
        self._shift = shift
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, poly, shift: Exponent, normalize: bool = True) -> "LaurentPoly":
        obj = cls.__new__(cls)
        if normalize:
            poly, shift = _strip_content(poly, shift)
        elif poly.is_zero():
            shift = (0,) * nvars
        obj._set(nvars, poly, tuple(shift))
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "LaurentPoly":
        exponents = tuple(int(e) for e in exponents)
        return cls(len(exponents), {exponents: coeff})

    @classmethod
    def gen(cls, i: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # access ---------------------------------------------------------------
    def terms(self) -> dict[Exponent, Fraction]:
        s = self._shift
        return {
            tuple(int(a) + b for a, b in zip(e, s)): _to_fraction(c)
            for e, c in self._poly.to_dict().items()
        }

    def exponents(self) -> list[Exponent]:
        s = self._shift
        return [tuple(int(a) + b for a, b in zip(e, s)) for e in self._poly.monoms()]

    @property
    def shift(self) -> Exponent:
        """The monomial content (componentwise minimum of exponents)."""
        return self._shift

    def __len__(self) -> int:
        return len(self._poly)

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def is_one(self) -> bool:
        return self._poly.is_one() and not any(self._shift)

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_polynomial(self) -> bool:
        return all(s >= 0 for s in self._shift)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        e = tuple(a - b for a, b in zip(exponent, self._shift))
        if any(x < 0 for x in e):
            return Fraction(0)
        return _to_fraction(self._poly.to_dict().get(e, 0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def has_positive_coefficients(self) -> bool:
        return not self.is_zero() and all(c > 0 for c in self._poly.coeffs())

    def min_exponents(self) -> Exponent:
        if self.is_zero():
            raise ValueError("zero polynomial has no exponents")
        return self._shift

    def max_exponents(self) -> Exponent:
        monoms = self._poly.monoms()
        return tuple(max(m[i] for m in monoms) + self._shift[i] for i in range(self.nvars))

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = tuple(min(a, b) for a, b in zip(self._shift, other._shift))
        ctx = self._poly.context()
        p = self._poly
        q = other._poly
        da = tuple(a - b for a, b in zip(self._shift, low))
        db = tuple(a - b for a, b in zip(other._shift, low))
        if any(da):
            p = p * ctx.from_dict({da: 1})
        if any(db):
            q = q * ctx.from_dict({db: 1})
        return LaurentPoly._raw(self.nvars, p + q, low)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, -self._poly, self._shift, normalize=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly._raw(self.nvars, self._poly * _to_fmpq(other), self._shift, normalize=False)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # product of content-free polynomials is content-free
        shift = tuple(a + b for a, b in zip(self._shift, other._shift))
        return LaurentPoly._raw(self.nvars, self._poly * other._poly, shift, normalize=False)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e >= 0:
            return LaurentPoly._raw(
                self.nvars, self._poly**e, tuple(s * e for s in self._shift), normalize=False
            )
        return self.inverse_monomial() ** (-e)

    def inverse_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ValueError("only monomials are invertible in the Laurent ring")
        (c,) = self._poly.coeffs()
        return LaurentPoly._raw(
            self.nvars, self._poly.context().from_dict({(0,) * self.nvars: 1 / c}),
            tuple(-s for s in self._shift), normalize=False,
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError if ``other`` does not divide ``self``."""
        self._check(other)
        try:
            p = self._poly / other._poly
        except Exception as exc:  # flint raises DomainError for inexact division
            raise ValueError("division is not exact") from exc
        shift = tuple(a - b for a, b in zip(self._shift, other._shift))
        return LaurentPoly._raw(self.nvars, p, shift)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self._shift == other._shift
            and self._poly == other._poly
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self._shift, frozenset(self._poly.to_dict().items())))
        return self._hash

    # substitution ---------------------------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [_to_fmpq(p) for p in point]
        val = self._poly(*pt)
        for p, s in zip(pt, self._shift):
            if s:
                if p == 0 and s < 0:
                    raise ZeroDivisionError("negative power of zero")
                val *= p**s
        return _to_fraction(val)

    def substitute_monomials(self, images: Sequence[Sequence[int]], nvars_out: int | None = None) -> "LaurentPoly":
        """Substitute variable ``i`` by the monomial with exponent vector ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = len(images[0]) if nvars_out is None else nvars_out
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms().items():
            f = [0] * m
            for ei, img in zip(e, images):
                if ei:
                    for j, v in enumerate(img):
                        f[j] += ei * v
            f = tuple(f)
            out[f] = out.get(f, 0) + c
        return LaurentPoly(m, out)

    def specialize(self, values: Mapping[int, object]) -> "LaurentPoly":
        """Set the variables in ``values`` to constants; the variable count is kept."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms().items():
            f = list(e)
            for i, v in values.items():
                if e[i]:
                    c = c * Fraction(v) ** e[i]
                f[i] = 0
            f = tuple(f)
            out[f] = out.get(f, 0) + c
        return LaurentPoly(self.nvars, out)

    def embed(self, nvars_out: int, offset: int = 0) -> "LaurentPoly":
        """View as a polynomial in a larger ring, variable ``i`` going to ``offset + i``."""
        images = []
        for i in range(self.nvars):
            e = [0] * nvars_out
            e[offset + i] = 1
            images.append(e)
        return self.substitute_monomials(images, nvars_out)

    def project(self, indices: Sequence[int]) -> "LaurentPoly":
        """Keep only the variables in ``indices``; all others must have exponent zero."""
        out = {}
        keep = set(indices)
        for e, c in self.terms().items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("polynomial depends on a dropped variable")
            out[tuple(e[i] for i in indices)] = c
        return LaurentPoly(len(indices), out)

    # rendering ------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"y{i + 1}" for i in range(self.nvars)]
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), key=lambda t: (sum(t[0]), t[0])):
            mono = monomial_str(e, names)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.terms()!r})"


def monomial_str(exponents: Sequence[int], names: Sequence[str]) -> str:
    """Render ``y1^a1*...*yn^an``, omitting zero exponents; ``"1"`` for the zero vector."""
    parts = []
    for e, name in zip(exponents, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Gcd of the polynomial parts (monomial content removed), monic in the
    sense of ``RationalFunction`` canonical forms up to a constant."""
    n = p.nvars
    if p._poly.is_constant() or q._poly.is_constant():
        return LaurentPoly.one(n)
    return LaurentPoly._raw(n, p._poly.gcd(q._poly), (0,) * n, normalize=False)


class RationalFunction:
    """Quotient ``num/den`` of Laurent polynomials in canonical form.

    Canonical form: ``den`` is a polynomial without monomial content, coprime
    to ``num``, and its lexicographically least term has coefficient 1. Equal
    rational functions therefore have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._canonical(num, den)

    @staticmethod
    def _canonical(num: LaurentPoly, den: LaurentPoly):
        n = num.nvars
        if num.is_zero():
            return num, LaurentPoly.one(n)
        a, b = num._poly, den._poly
        if not b.is_constant():
            g = a.gcd(b)
            if not g.is_one():
                a = a / g
                b = b / g
        return RationalFunction._fix_lead(n, a, b, num._shift, den._shift)

    @staticmethod
    def _fix_lead(n, a, b, num_shift, den_shift):
        shift = tuple(x - y for x, y in zip(num_shift, den_shift))
        lead = b.coeffs()[-1]  # lex order lists the least monomial last
        if lead != 1:
            a = a / lead
            b = b / lead
        return (
            LaurentPoly._raw(n, a, shift, normalize=False),
            LaurentPoly._raw(n, b, (0,) * n, normalize=False),
        )

    @classmethod
    def _coprime(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        """Build from a numerator and denominator already known to be coprime."""
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls._from_canonical(num, LaurentPoly.one(num.nvars))
        return cls._from_canonical(
            *cls._fix_lead(num.nvars, num._poly, den._poly, num._shift, den._shift)
        )

    @classmethod
    def _from_canonical(cls, num, den) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls._from_canonical(p, LaurentPoly.one(p.nvars))

    @classmethod
    def constant(cls, c, nvars: int) -> "RationalFunction":
        return cls.from_poly(LaurentPoly.constant(c, nvars))

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "RationalFunction":
        return cls.from_poly(LaurentPoly.monomial(exponents, coeff))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction.from_poly(self.num + other.num)
        # gcd of the denominators first, then of the sum with that gcd only
        n = self.nvars
        g = _poly_gcd(self.den, other.den)
        b1, d1 = self.den.exact_div(g), other.den.exact_div(g)
        t = self.num * d1 + other.num * b1
        if t.is_zero():
            return RationalFunction.constant(0, n)
        g2 = _poly_gcd(t, g)
        return RationalFunction._coprime(t.exact_div(g2), b1 * d1 * g.exact_div(g2))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._from_canonical(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction.from_poly(self.num * other.num)
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.constant(0, self.nvars)
        # cross cancellation keeps the gcd inputs small
        g1 = _poly_gcd(self.num, other.den)
        g2 = _poly_gcd(other.num, self.den)
        return RationalFunction._coprime(
            self.num.exact_div(g1) * other.num.exact_div(g2),
            self.den.exact_div(g2) * other.den.exact_div(g1),
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction._coprime(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.den.is_one():
            return RationalFunction.from_poly(self.num**e)
        return RationalFunction._coprime(self.num**e, self.den**e)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_laurent(self) -> bool:
        """True when the denominator is a constant."""
        return self.den.is_one()

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def substitute_monomials(self, images, nvars_out=None) -> "RationalFunction":
        return RationalFunction(
            self.num.substitute_monomials(images, nvars_out),
            self.den.substitute_monomials(images, nvars_out),
        )

    def embed(self, nvars_out: int, offset: int = 0) -> "RationalFunction":
        return RationalFunction(self.num.embed(nvars_out, offset), self.den.embed(nvars_out, offset))

    def to_str(self, names=None) -> str:
        if self.den.is_one():
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def rational_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    return RationalFunction(num, den)


def evaluate(r, point: Sequence) -> Fraction:
    """Exact value of a rational function (or Laurent polynomial) at a point of
    positive rationals."""
    point = [Fraction(p) for p in point]
    if any(p <= 0 for p in point):
        raise ValueError("evaluation point must have positive components")
    if isinstance(r, LaurentPoly):
        return r.evaluate(point)
    d = r.den.evaluate(point)
    if d == 0:
        raise ZeroDivisionError("denominator vanishes at the evaluation point")
    return r.num.evaluate(point) / d


class QRational:
    """Element of Q(q): a reduced quotient of univariate polynomials with a
    monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, flint.fmpq_poly) else flint.fmpq_poly([_to_fmpq(num)])
        den = den if isinstance(den, flint.fmpq_poly) else flint.fmpq_poly([_to_fmpq(den)])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, flint.fmpq_poly([1])
            return
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den[den.degree()]
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den) -> "QRational":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def q_power(cls, k: int) -> "QRational":
        """The monomial ``q**k`` (``k`` may be negative)."""
        if k >= 0:
            return cls._raw(flint.fmpq_poly([0] * k + [1]), flint.fmpq_poly([1]))
        return cls._raw(flint.fmpq_poly([1]), flint.fmpq_poly([0] * (-k) + [1]))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, shift: int = 0) -> "QRational":
        """``q**shift * sum(c_i q**i)``."""
        return cls(flint.fmpq_poly([_to_fmpq(c) for c in coeffs])) * cls.q_power(shift)

    def _coerce(self, other):
        if isinstance(other, QRational):
            return other
        if isinstance(other, (int, Fraction)):
            return QRational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.degree() == 0:
                return QRational._raw(self.num + other.num, self.den)
            return QRational(self.num + other.num, self.den)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return QRational()
        if self.den.degree() == 0 and other.den.degree() == 0:
            return QRational._raw(self.num * other.num, self.den)
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QRational":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRational(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        # powers of coprime polynomials stay coprime
        return QRational._raw(self.num**e, self.den**e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def evaluate(self, q) -> Fraction:
        q = _to_fmpq(q)
        d = self.den(q)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this q")
        return _to_fraction(self.num(q) / d)

    def __str__(self):
        n = str(self.num).replace("x", "q")
        if self.den == flint.fmpq_poly([1]):
            return n
        return f"({n})/({str(self.den).replace('x', 'q')})"

    __repr__ = __str__
