"""Exact sparse arithmetic for bivariate integer polynomials and Laurent
rational functions with factored denominators.

A :class:`BivarPoly` is a polynomial in two indeterminates ``x`` and ``y``
with arbitrary-precision integer coefficients, stored as a dictionary
mapping exponent pairs ``(deg_x, deg_y)`` to coefficients.  The zero
polynomial is the empty dictionary; no stored coefficient is ever zero.

A :class:`LaurentPoly` is a polynomial in ``z`` whose exponents may be
negative and whose coefficients are :class:`BivarPoly` values.

A :class:`LaurentRational` is a Laurent polynomial numerator over a
denominator kept as a *factored* multiset of terms ``(z^a - 1)`` with
``a > 0`` (:class:`DenomFactors`).  Denominators are never expanded except
on request, and sums are not reduced to lowest terms: the factored pole
structure is the data every later stage reasons about.

All values are immutable after construction and all operations are pure,
so any number of workers may share them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

Exponent = Tuple[int, int]
Rational = int | Fraction


class ZeroBase(ValueError):
    """Raised when evaluating at ``z = 0``, where negative powers blow up."""


class PoleAtSamplePoint(ZeroDivisionError):
    """Raised when an evaluation point hits a root of some ``z^a - 1``."""


def _q(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class BivarPoly:
    """Sparse exact polynomial in ``x`` and ``y`` over the integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: Dict[Exponent, int] = {}
        if terms:
            for (dx, dy), coeff in terms.items():
                if dx < 0 or dy < 0:
                    raise ValueError(f"negative exponent pair {(dx, dy)}")
                if coeff:
                    clean[(dx, dy)] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def one(cls) -> "BivarPoly":
        return cls.const(1)

    @classmethod
    def monomial(cls, dx: int, dy: int, coeff: int = 1) -> "BivarPoly":
        return cls({(dx, dy): coeff})

    @classmethod
    def sign_count_term(cls, n_plus: int, n_minus: int) -> "BivarPoly":
        """Return ``x^n_plus * (-y)^n_minus``."""
        return cls({(n_plus, n_minus): (-1) ** n_minus})

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        result = BivarPoly.__new__(BivarPoly)
        result._terms = out
        return result

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        if not self._terms or not other._terms:
            return BivarPoly.zero()
        out: Dict[Exponent, int] = {}
        for (ax, ay), ac in self._terms.items():
            for (bx, by), bc in other._terms.items():
                e = (ax + bx, ay + by)
                s = out.get(e, 0) + ac * bc
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        result = BivarPoly.__new__(BivarPoly)
        result._terms = out
        return result

    def scaled(self, c: int) -> "BivarPoly":
        if c == 0:
            return BivarPoly.zero()
        return BivarPoly({e: c * v for e, v in self._terms.items()})

    def evaluate(self, x0: Rational, y0: Rational) -> Fraction:
        x0, y0 = _q(x0), _q(y0)
        total = Fraction(0)
        for (dx, dy), c in self._terms.items():
            total += c * x0**dx * y0**dy
        return total

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_value(self) -> int:
        """The integer value of a constant polynomial."""
        if not self._terms:
            return 0
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[(0, 0)]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        # graded lexicographic order, x before y
        keys = sorted(self._terms, key=lambda e: (e[0] + e[1], e[0]), reverse=True)
        pieces = []
        for i, e in enumerate(keys):
            coeff = self._terms[e]
            mono = _monomial_str(e)
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"BivarPoly({self})"


def _monomial_str(e: Exponent) -> str:
    dx, dy = e
    parts = []
    if dx == 1:
        parts.append("x")
    elif dx > 1:
        parts.append(f"x^{dx}")
    if dy == 1:
        parts.append("y")
    elif dy > 1:
        parts.append(f"y^{dy}")
    return "*".join(parts)


class LaurentPoly:
    """Polynomial in ``z`` with integer (possibly negative) exponents and
    :class:`BivarPoly` coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, BivarPoly] | None = None):
        clean: Dict[int, BivarPoly] = {}
        if terms:
            for k, coeff in terms.items():
                if coeff:
                    clean[k] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def from_const(cls, coeff: BivarPoly, degree: int = 0) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: BivarPoly.one()})

    @property
    def terms(self) -> Mapping[int, BivarPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, BivarPoly.zero()) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms or not other._terms:
            return LaurentPoly.zero()
        out: Dict[int, BivarPoly] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = ka + kb
                s = out.get(k, BivarPoly.zero()) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def scaled(self, coeff: BivarPoly) -> "LaurentPoly":
        if not coeff:
            return LaurentPoly.zero()
        out: Dict[int, BivarPoly] = {}
        for k, c in self._terms.items():
            s = c * coeff
            if s:
                out[k] = s
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def mul_factor(self, a: int) -> "LaurentPoly":
        """Multiply by ``(z^a - 1)`` exactly; ``a`` must be positive."""
        if a <= 0:
            raise ValueError(f"factor exponent must be positive, got {a}")
        out: Dict[int, BivarPoly] = {}
        for k, c in self._terms.items():
            s = out.get(k + a, BivarPoly.zero()) + c
            if s:
                out[k + a] = s
            else:
                out.pop(k + a, None)
            s = out.get(k, BivarPoly.zero()) - c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def lowest_term(self) -> Tuple[int, BivarPoly] | None:
        """The lowest z-degree with a nonzero coefficient, or None if zero."""
        if not self._terms:
            return None
        k = min(self._terms)
        return k, self._terms[k]

    def evaluate(self, z0: Rational, x0: Rational, y0: Rational) -> Fraction:
        z0 = _q(z0)
        if z0 == 0 and any(k < 0 for k in self._terms):
            raise ZeroBase("cannot evaluate negative powers of z at z = 0")
        total = Fraction(0)
        for k, c in self._terms.items():
            total += c.evaluate(x0, y0) * z0**k
        return total

    def specialized(self, x0: int, y0: int) -> "LaurentPoly":
        """Substitute integers for ``x`` and ``y``, keeping ``z`` symbolic."""
        out: Dict[int, BivarPoly] = {}
        for k, c in self._terms.items():
            v = c.evaluate(x0, y0)
            if v:
                out[k] = BivarPoly.const(int(v))
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            if k == 0:
                pieces.append(f"({c})")
            elif k == 1:
                pieces.append(f"({c})*z")
            else:
                pieces.append(f"({c})*z^{k}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


class DenomFactors:
    """Multiset of denominator factors ``(z^a - 1)``, keyed by ``a > 0``."""

    __slots__ = ("_mult",)

    def __init__(self, mult: Mapping[int, int] | None = None):
        clean: Dict[int, int] = {}
        if mult:
            for a, m in mult.items():
                if a <= 0:
                    raise ValueError(f"denominator factor exponent must be positive, got {a}")
                if m < 0:
                    raise ValueError(f"multiplicity must be nonnegative, got {m}")
                if m:
                    clean[a] = m
        self._mult = clean

    @classmethod
    def empty(cls) -> "DenomFactors":
        return cls()

    @classmethod
    def single(cls, a: int, mult: int = 1) -> "DenomFactors":
        return cls({a: mult})

    @property
    def multiplicities(self) -> Mapping[int, int]:
        return dict(self._mult)

    def is_empty(self) -> bool:
        return not self._mult

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenomFactors):
            return NotImplemented
        return self._mult == other._mult

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._mult.items()))

    def __mul__(self, other: "DenomFactors") -> "DenomFactors":
        out = dict(self._mult)
        for a, m in other._mult.items():
            out[a] = out.get(a, 0) + m
        return DenomFactors(out)

    def lcm(self, other: "DenomFactors") -> "DenomFactors":
        """Per-factor maximum multiplicity."""
        out = dict(self._mult)
        for a, m in other._mult.items():
            if m > out.get(a, 0):
                out[a] = m
        return DenomFactors(out)

    def missing_from(self, target: "DenomFactors") -> Iterator[Tuple[int, int]]:
        """Factors (with counts) by which *target* exceeds this multiset."""
        for a, m in sorted(target._mult.items()):
            extra = m - self._mult.get(a, 0)
            if extra > 0:
                yield a, extra

    def degree(self) -> int:
        return sum(a * m for a, m in self._mult.items())

    def expand(self) -> LaurentPoly:
        """The product of all factors as an explicit Laurent polynomial."""
        poly = LaurentPoly.one()
        for a, m in sorted(self._mult.items()):
            for _ in range(m):
                poly = poly.mul_factor(a)
        return poly

    def evaluate(self, z0: Rational) -> Fraction:
        z0 = _q(z0)
        total = Fraction(1)
        for a, m in self._mult.items():
            base = z0**a - 1
            if base == 0:
                raise PoleAtSamplePoint(f"z0 = {z0} is a root of z^{a} - 1")
            total *= base**m
        return total

    def __str__(self) -> str:
        if not self._mult:
            return "1"
        pieces = []
        for a, m in sorted(self._mult.items()):
            base = "(z - 1)" if a == 1 else f"(z^{a} - 1)"
            pieces.append(base if m == 1 else f"{base}^{m}")
        return "*".join(pieces)

    def __repr__(self) -> str:
        return f"DenomFactors({self})"


class LaurentRational:
    """A Laurent polynomial numerator over a factored denominator.

    Sums are formed over the per-factor maximum multiplicity and are *not*
    reduced to lowest terms; the constancy decision downstream never needs
    the reduced form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: DenomFactors | None = None):
        self.num = num
        self.den = den if den is not None else DenomFactors.empty()

    @classmethod
    def from_poly(cls, poly: LaurentPoly) -> "LaurentRational":
        return cls(poly, DenomFactors.empty())

    @classmethod
    def one(cls) -> "LaurentRational":
        return cls(LaurentPoly.one(), DenomFactors.empty())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __neg__(self) -> "LaurentRational":
        return LaurentRational(-self.num, self.den)

    def __add__(self, other: "LaurentRational") -> "LaurentRational":
        den = self.den.lcm(other.den)
        n1 = _scale_to(self.num, self.den, den)
        n2 = _scale_to(other.num, other.den, den)
        return LaurentRational(n1 + n2, den)

    def __sub__(self, other: "LaurentRational") -> "LaurentRational":
        return self + (-other)

    def __mul__(self, other: "LaurentRational") -> "LaurentRational":
        return LaurentRational(self.num * other.num, self.den * other.den)

    def scaled(self, coeff: BivarPoly) -> "LaurentRational":
        return LaurentRational(self.num.scaled(coeff), self.den)

    def scaled_int(self, c: int) -> "LaurentRational":
        return self.scaled(BivarPoly.const(c))

    def evaluate(self, z0: Rational, x0: Rational = 1, y0: Rational = 1) -> Fraction:
        """Exact rational value at ``(z0, x0, y0)``.

        ``z0`` must be nonzero and must not be a root of any denominator
        factor (any ``|z0| >= 2`` is always safe).
        """
        z0 = _q(z0)
        if z0 == 0:
            raise ZeroBase("z0 = 0 is outside the domain")
        return self.num.evaluate(z0, x0, y0) / self.den.evaluate(z0)

    def specialized(self, x0: int, y0: int) -> "LaurentRational":
        return LaurentRational(self.num.specialized(x0, y0), self.den)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"LaurentRational({self})"


def _scale_to(num: LaurentPoly, have: DenomFactors, want: DenomFactors) -> LaurentPoly:
    for a, extra in have.missing_from(want):
        for _ in range(extra):
            num = num.mul_factor(a)
    return num
