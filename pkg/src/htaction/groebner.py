"""Buchberger's algorithm, normal forms and finite quotient bases.

Only what is needed to turn a presentation ``Q[S1..Sm]/I`` of a local
algebra into structure constants: reduced Groebner bases, remainders of
multivariate division, and the standard monomials of a zero-dimensional
quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyError,
    VariableMismatchError,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_MAX_PAIRS = 10_000


class GroebnerError(ValueError):
    pass


class PairLimitExceeded(GroebnerError):
    pass


class InfiniteDimensional(GroebnerError):
    """The quotient ring is not finite-dimensional."""


class NotLocal(GroebnerError):
    """Some positive-degree basis element of the quotient is not nilpotent."""


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal in ``Q[S1..Sm]`` with no constant terms."""

    variables: tuple
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.variables:
            raise GroebnerError("a presentation needs at least one variable")
        for g in self.generators:
            if g.variables != self.variables:
                raise VariableMismatchError(
                    f"generator {g} is not in Q[{', '.join(self.variables)}]")
            if g.is_zero():
                raise GroebnerError("zero generator")
            if g.constant_term():
                raise GroebnerError(f"generator {g} has a nonzero constant term")

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Q[{','.join(self.variables)}]/({gens})"


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple
    variables: tuple = field(default=())

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class QuotientBasis:
    variables: tuple
    monomials: tuple  # exponent vectors, ascending degree

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def labels(self) -> list:
        return [monomial_label(m, self.variables) for m in self.monomials]


def monomial_label(m, variables) -> str:
    if not any(m):
        return "1"
    return str(Polynomial(variables, {m: 1}))


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    return p / p.leading_coefficient(order)


def reduce(p: Polynomial, divisors, order: MonomialOrder) -> Polynomial:
    """Full multivariate division remainder of ``p`` by ``divisors``."""
    lead = [(g.leading_monomial(order), g) for g in divisors]
    lead = [(m, g / g.coefficient(m)) for m, g in lead]
    rest = dict(p.terms)
    remainder = {}
    while rest:
        m = max(rest, key=order.key)
        c = rest[m]
        for lm, g in lead:
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    s = rest.get(t, 0) - c * gc
                    if s:
                        rest[t] = s
                    else:
                        rest.pop(t, None)
                break
        else:
            remainder[m] = c
            del rest[m]
    return Polynomial(p.variables, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, mg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(mf, mg)
    return (f.mul_monomial(mono_div(lcm, mf), 1 / f.coefficient(mf))
            - g.mul_monomial(mono_div(lcm, mg), 1 / g.coefficient(mg)))


def buchberger(pres, order: MonomialOrder = GREVLEX, *, max_pairs: int = DEFAULT_MAX_PAIRS) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``pres``.

    ``pres`` is an :class:`IdealPresentation` or a plain list of polynomials.
    Uses the product criterion and Buchberger's chain criterion.
    """
    gens = list(pres.generators if isinstance(pres, IdealPresentation) else pres)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise GroebnerError("empty generating set")
    variables = gens[0].variables
    G = []
    for g in gens:
        if g.variables != variables:
            raise VariableMismatchError("generators live in different universes")
        g = reduce(g, G, order) if G else g
        if not g.is_zero():
            G.append(_monic(g, order))
    LM = [g.leading_monomial(order) for g in G]
    pending = {(i, j) for i, j in itertools.combinations(range(len(G)), 2)}
    processed = 0

    def pair_key(pair):
        i, j = pair
        return order.key(mono_lcm(LM[i], LM[j])), pair

    while pending:
        pair = min(pending, key=pair_key)
        pending.discard(pair)
        i, j = pair
        processed += 1
        if processed > max_pairs:
            raise PairLimitExceeded(
                f"gave up after {max_pairs} S-pairs; basis has {len(G)} elements, "
                f"{len(pending)} pairs pending")
        lcm = mono_lcm(LM[i], LM[j])
        if all(a == 0 or b == 0 for a, b in zip(LM[i], LM[j])):
            continue
        if _chain_criterion(i, j, lcm, LM, pending):
            continue
        r = reduce(s_polynomial(G[i], G[j], order), G, order)
        if r.is_zero():
            continue
        G.append(_monic(r, order))
        LM.append(G[-1].leading_monomial(order))
        k = len(G) - 1
        pending.update((a, k) for a in range(k))
    return GroebnerBasis(order, tuple(_reduce_basis(G, order)), variables)


def _chain_criterion(i, j, lcm, LM, pending) -> bool:
    for k in range(len(LM)):
        if k in (i, j) or not mono_divides(LM[k], lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _reduce_basis(G, order) -> list:
    # drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, g in enumerate(G):
        lm = g.leading_monomial(order)
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            lh = h.leading_monomial(order)
            if mono_divides(lh, lm) and (lh != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm = g.leading_monomial(order)
        tail = reduce(g - Polynomial(g.variables, {lm: g.coefficient(lm)}), others, order)
        reduced.append(_monic(Polynomial(g.variables, {lm: g.coefficient(lm)}) + tail, order))
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return reduced


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if gb.variables and p.variables != gb.variables:
        raise VariableMismatchError(
            f"polynomial in {p.variables}, basis in {gb.variables}")
    return reduce(p, gb.elements, gb.order)


def is_groebner(polys, order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    polys = list(polys)
    for f, g in itertools.combinations(polys, 2):
        if not reduce(s_polynomial(f, g, order), polys, order).is_zero():
            return False
    return True


def quotient_basis(gb: GroebnerBasis) -> QuotientBasis:
    """Standard monomials, ascending total degree, larger monomials first within a degree."""
    variables = gb.variables or gb.elements[0].variables
    n = len(variables)
    lms = gb.leading_monomials()
    bounds = []
    for v in range(n):
        pure = [m[v] for m in lms if m[v] and all(e == 0 for k, e in enumerate(m) if k != v)]
        if not pure:
            raise InfiniteDimensional(
                f"no leading monomial is a pure power of {variables[v]}")
        bounds.append(min(pure))
    standard = [m for m in itertools.product(*(range(b) for b in bounds))
                if not any(mono_divides(lm, m) for lm in lms)]
    standard.sort(key=lambda m: (sum(m), tuple(-x for x in gb.order.key(m))))
    return QuotientBasis(tuple(variables), tuple(standard))


def algebra_from_presentation(pres: IdealPresentation, order: MonomialOrder | None = None, *, max_pairs: int = DEFAULT_MAX_PAIRS):
    """Build the :class:`~htaction.localalg.LocalAlgebra` ``Q[S]/I``.

    The basis is ``1`` followed by the positive-degree standard monomials in
    ascending degree.  If that order is not filtration compatible it is
    stably re-sorted by filtration level.
    """
    from .localalg import LocalAlgebra

    if order is None:
        order = GREVLEX
    gb = buchberger(pres, order, max_pairs=max_pairs)
    qb = quotient_basis(gb)
    monos = list(qb.monomials)
    if any(monos[0]):
        raise NotLocal("1 lies in the ideal")
    variables = qb.variables
    index = {m: k for k, m in enumerate(monos)}
    dim = len(monos)

    def coords(p: Polynomial) -> list:
        nf = normal_form(p, gb)
        vec = [Fraction(0)] * dim
        for m, c in nf.items():
            vec[index[m]] = c
        return vec

    basis_polys = [Polynomial(variables, {m: 1}) for m in monos]
    for k in range(1, dim):
        power = basis_polys[k]
        for _ in range(dim):
            power = normal_form(power * basis_polys[k], gb)
            if power.constant_term():
                raise NotLocal(f"{qb.labels()[k]} is not nilpotent")
            if power.is_zero():
                break
        else:
            raise NotLocal(f"{qb.labels()[k]} is not nilpotent")

    n = dim - 1
    table = [[None] * n for _ in range(n)]
    for i in range(1, dim):
        for j in range(i, dim):
            v = coords(basis_polys[i] * basis_polys[j])
            table[i - 1][j - 1] = table[j - 1][i - 1] = v
    labels = ["1"] + [monomial_label(m, variables) for m in monos[1:]]
    algebra = LocalAlgebra(table, labels, check=True)
    if not algebra.filtration_basis_check():
        levels = algebra.levels()
        perm = sorted(range(1, dim), key=lambda k: levels[k - 1])
        algebra = algebra.rebased([0] + perm)
    return algebra


def presentation_dimension_by_rank(pres: IdealPresentation, bound: int) -> int:
    """Dimension of ``Q[S]/I`` by linear algebra, assuming ``m^bound`` lies in ``I``.

    Counts monomials of degree below ``bound`` minus the rank of the truncated
    multiples ``u*g``.  Independent of Groebner bases; used to cross-check
    :func:`quotient_basis`.
    """
    from .linalg import rank

    variables = pres.variables
    n = len(variables)
    monos = [m for d in range(bound) for m in _monomials_of_degree(n, d)]
    col = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in pres.generators:
        for u in monos:
            row = [Fraction(0)] * len(monos)
            nonzero = False
            for gm, c in g.items():
                t = tuple(a + b for a, b in zip(gm, u))
                if t in col:
                    row[col[t]] += c
                    nonzero = True
            if nonzero:
                rows.append(row)
    return len(monos) - rank(rows)


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


__all__ = [
    "IdealPresentation", "GroebnerBasis", "QuotientBasis", "GroebnerError",
    "PairLimitExceeded", "InfiniteDimensional", "NotLocal", "buchberger",
    "normal_form", "quotient_basis", "algebra_from_presentation", "is_groebner",
    "reduce", "s_polynomial", "presentation_dimension_by_rank", "PolyError",
]
