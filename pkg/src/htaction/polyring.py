"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` lives in an explicit, ordered variable universe.  Two
polynomials can only be combined when their universes agree; moving a
polynomial into a larger universe is done with :meth:`Polynomial.embed`.

Coefficients are :class:`fractions.Fraction`, which already keeps every value
in lowest terms with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

ExactRational = Fraction
Monomial = tuple  # exponent vector, one entry per variable of the universe

Scalar = Union[int, Fraction]


class PolyError(ValueError):
    pass


class VariableMismatchError(PolyError):
    """Raised when operands live in different variable universes."""


class ArityError(PolyError):
    pass


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def is_scalar(obj) -> bool:
    return isinstance(obj, (int, Fraction)) and not isinstance(obj, bool)


# --------------------------------------------------------------------------
# monomial orders

_ORDER_KINDS = ("lex", "grlex", "grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order on exponent vectors.

    ``precedence`` lists variable indices from most to least significant;
    ``None`` means the universe order (first variable is largest).
    """

    kind: str = "grevlex"
    precedence: tuple | None = None

    def __post_init__(self):
        if self.kind not in _ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.precedence is not None:
            prec = tuple(self.precedence)
            if sorted(prec) != list(range(len(prec))):
                raise ValueError("precedence must be a permutation of variable indices")
            object.__setattr__(self, "precedence", prec)

    def _perm(self, n: int) -> tuple:
        if self.precedence is None:
            return tuple(range(n))
        if len(self.precedence) != n:
            raise ArityError("monomial length does not match order precedence")
        return self.precedence

    def key(self, m: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        perm = self._perm(len(m))
        if self.kind == "lex":
            return tuple(m[i] for i in perm)
        deg = sum(m)
        if self.kind == "grlex":
            return (deg,) + tuple(m[i] for i in perm)
        return (deg,) + tuple(-m[i] for i in reversed(perm))

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        return compare(m1, m2, self)

    def __str__(self):
        return self.kind


LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")
GREVLEX = MonomialOrder("grevlex")


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller, equal or greater than ``m2``."""
    if len(m1) != len(m2):
        raise ArityError("monomials of different lengths")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _print_key(m: Monomial) -> tuple:
    # ascending total degree, then earlier variables first within a degree
    return (sum(m), tuple(-e for e in m))


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise PolyError(f"duplicate variable names in {vs}")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != len(vs):
                raise ArityError(f"monomial {mono} does not fit universe {vs}")
            if any(e < 0 for e in mono):
                raise PolyError(f"negative exponent in {mono}")
            c = as_rational(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._vars = vs
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, c, variables) -> "Polynomial":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def one(cls, variables) -> "Polynomial":
        return cls.constant(1, variables)

    @classmethod
    def var(cls, name: str, variables) -> "Polynomial":
        vs = tuple(variables)
        if name not in vs:
            raise VariableMismatchError(f"{name!r} is not in {vs}")
        mono = tuple(int(v == name) for v in vs)
        return cls(vs, {mono: 1})

    @classmethod
    def gens(cls, variables) -> tuple:
        vs = tuple(variables)
        return tuple(cls.var(v, vs) for v in vs)

    @classmethod
    def _raw(cls, variables, terms) -> "Polynomial":
        # trusted fast path: terms already nonzero, keys well-formed
        p = cls.__new__(cls)
        p._vars = variables
        p._terms = terms
        p._hash = None
        return p

    # -- inspection --------------------------------------------------------

    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._vars.index(name)
        return max((m[i] for m in self._terms), default=-1)

    def used_variables(self) -> tuple:
        """Names of variables that actually occur, in universe order."""
        return tuple(v for i, v in enumerate(self._vars)
                     if any(m[i] for m in self._terms))

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self._terms:
            raise PolyError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    # -- universe handling -------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self._vars != other._vars:
            raise VariableMismatchError(
                f"universe mismatch: {self._vars} vs {other._vars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if is_scalar(other):
            return Polynomial.constant(other, self._vars)
        return NotImplemented

    def embed(self, variables: Sequence[str]) -> "Polynomial":
        """Reinterpret this polynomial inside a universe containing its own."""
        vs = tuple(variables)
        if vs == self._vars:
            return self
        missing = [v for v in self._vars if v not in vs]
        if missing:
            raise VariableMismatchError(f"cannot embed: {missing} not in {vs}")
        idx = [vs.index(v) for v in self._vars]
        terms = {}
        for m, c in self._terms.items():
            new = [0] * len(vs)
            for j, e in zip(idx, m):
                new[j] = e
            terms[tuple(new)] = c
        return Polynomial._raw(vs, terms)

    def restrict(self, variables: Sequence[str]) -> "Polynomial":
        """Drop unused variables, keeping ``variables`` as the new universe."""
        vs = tuple(variables)
        used = self.used_variables()
        if any(v not in vs for v in used):
            raise VariableMismatchError(f"{used} not contained in {vs}")
        idx = [self._vars.index(v) if v in self._vars else None for v in vs]
        terms = {tuple(0 if i is None else m[i] for i in idx): c
                 for m, c in self._terms.items()}
        return Polynomial._raw(vs, terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self._vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if is_scalar(other):
            c0 = as_rational(other)
            if not c0:
                return Polynomial._raw(self._vars, {})
            return Polynomial._raw(self._vars, {m: c * c0 for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(self._vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not is_scalar(other):
            return NotImplemented
        c0 = as_rational(other)
        if not c0:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c0)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("only non-negative integer powers are supported")
        result = Polynomial.one(self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial._raw(self._vars, {})
        return Polynomial._raw(
            self._vars,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self._terms.items()})

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._vars == other._vars and self._terms == other._terms
        if is_scalar(other):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.nvars: as_rational(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # -- substitution ------------------------------------------------------

    def substitute(self, images: Sequence) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` and expand."""
        return substitute(self, images)

    def translate(self, shifts: Sequence) -> "Polynomial":
        return translate(self, shifts)

    def evaluate(self, values) -> Fraction:
        """Evaluate at rational values (sequence, or mapping by name)."""
        if isinstance(values, Mapping):
            vals = [as_rational(values[v]) for v in self._vars]
        else:
            vals = [as_rational(v) for v in values]
            if len(vals) != self.nvars:
                raise ArityError(f"expected {self.nvars} values, got {len(vals)}")
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def specialize(self, values: Mapping) -> "Polynomial":
        """Substitute rational constants for some variables, keeping the universe."""
        images = []
        for v in self._vars:
            if v in values:
                images.append(Polynomial.constant(values[v], self._vars))
            else:
                images.append(Polynomial.var(v, self._vars))
        return substitute(self, images)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: _print_key(t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, m) if e)
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({list(self._vars)}, {str(self)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def _common_universe(images) -> tuple:
    universe = None
    for im in images:
        if isinstance(im, Polynomial):
            if universe is None:
                universe = im.variables
            elif im.variables != universe:
                raise VariableMismatchError("substitution images live in different universes")
        elif not is_scalar(im):
            raise TypeError(f"bad substitution image {im!r}")
    return universe


def substitute(p: Polynomial, images: Sequence):
    """Compose ``p`` with ``images``; scalars are allowed among the images.

    When every image is a scalar the result is a :class:`Fraction`.
    """
    images = list(images)
    if len(images) != p.nvars:
        raise ArityError(f"expected {p.nvars} images, got {len(images)}")
    universe = _common_universe(images)
    if universe is None:
        return p.evaluate(images)
    imgs = [im if isinstance(im, Polynomial) else Polynomial.constant(im, universe)
            for im in images]
    powers = [{0: Polynomial.one(universe)} for _ in imgs]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * imgs[i]
        return cache[e]

    result = Polynomial.zero(universe)
    for m, c in p.items():
        term = Polynomial.constant(c, universe)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def translate(p: Polynomial, shifts: Sequence) -> Polynomial:
    """Return ``p(x1 + c1, ..., xn + cn)`` over the enlarged universe.

    Shifts are rationals or polynomials; fresh variables of polynomial shifts
    are appended after the variables of ``p``.
    """
    shifts = list(shifts)
    if len(shifts) != p.nvars:
        raise ArityError(f"expected {p.nvars} shifts, got {len(shifts)}")
    universe = list(p.variables)
    for s in shifts:
        if isinstance(s, Polynomial):
            for v in s.variables:
                if v not in universe:
                    universe.append(v)
        elif not is_scalar(s):
            raise TypeError(f"bad shift {s!r}")
    universe = tuple(universe)
    images = []
    for v, s in zip(p.variables, shifts):
        x = Polynomial.var(v, universe)
        images.append(x + (s.embed(universe) if isinstance(s, Polynomial) else s))
    images += [Polynomial.var(v, universe) for v in universe[p.nvars:]]
    return substitute(p.embed(universe), images)
