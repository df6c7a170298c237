"""Polynomial automorphisms of affine space and the conjugation identity.

The map ``phi = (f1, ..., fn)`` built from the basic polynomials of a local
algebra conjugates the standard additive action (translations) to the action
by multiplication with ``exp(y1*s1 + ... + yn*sn)``.  In coordinates on the
chart ``z0 = 1`` this is the polynomial identity

    fi(x + y) = M(y)[i][0] + sum_j M(y)[i][j] * fj(x)

in ``Q[x, y]``, checked here symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import action_matrix
from .ht import basic_polynomials, default_names, is_triangular
from .localalg import AlgebraError, LocalAlgebra, log
from .polyring import ArityError, Polynomial, VariableMismatchError, substitute


class NotTriangular(ValueError):
    pass


class PolynomialMap:
    """An endomorphism ``x -> (F1(x), ..., Fn(x))`` of affine n-space."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise ArityError("a polynomial map needs at least one component")
        universe = comps[0].variables
        if any(c.variables != universe for c in comps):
            raise VariableMismatchError("components must share one variable universe")
        if len(universe) != len(comps):
            raise ArityError(f"{len(comps)} components in {len(universe)} variables")
        self.components = comps

    @classmethod
    def identity(cls, variables) -> "PolynomialMap":
        return cls(Polynomial.gens(variables))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def variables(self) -> tuple:
        return self.components[0].variables

    def is_identity(self) -> bool:
        return self.components == Polynomial.gens(self.variables)

    def __call__(self, *args):
        return tuple(substitute(c, args) for c in self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, PolynomialMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"PolynomialMap{self}"


def compose(F: PolynomialMap, G: PolynomialMap) -> PolynomialMap:
    """``(F o G)_i = F_i(G_1, ..., G_n)``."""
    if F.n != G.n:
        raise ArityError(f"cannot compose maps of arity {F.n} and {G.n}")
    if F.variables != G.variables:
        raise VariableMismatchError("maps live in different universes")
    return PolynomialMap(substitute(c, G.components) for c in F.components)


def invert_triangular(F: PolynomialMap) -> PolynomialMap:
    """Inverse of ``F_i = x_i + h_i(x_1..x_{i-1})`` by forward substitution."""
    if not is_triangular(F.components):
        raise NotTriangular(f"{F} is not triangular")
    xs = Polynomial.gens(F.variables)
    G = []
    for i, f in enumerate(F.components):
        h = f - xs[i]
        # h only involves x_1..x_{i-1}; later images are irrelevant
        images = G + list(xs[i:])
        G.append(xs[i] - substitute(h, images))
    return PolynomialMap(G)


def phi_from_algebra(A: LocalAlgebra, variables=None, *, allow_incompatible: bool = False) -> PolynomialMap:
    """The automorphism ``x -> (f1(x), ..., fn(x))`` given by basic polynomials."""
    fs = basic_polynomials(A, variables, allow_incompatible=allow_incompatible)
    return PolynomialMap(fs.polys)


def phi_inverse_via_log(A: LocalAlgebra, variables=None) -> PolynomialMap:
    """Components ``g`` of ``1 + ln(1 + sum xi*si) = 1 + sum gi(x)*si``."""
    names = tuple(variables) if variables is not None else default_names("x", A.n)
    u = A.generic(names) + 1
    return PolynomialMap(log(u).coords[1:])


@dataclass(frozen=True)
class ConjugationReport:
    ok: bool
    diffs: list = field(default_factory=list)
    error: str | None = None

    def __bool__(self):
        return self.ok

    def lines(self) -> list:
        if self.ok:
            return ["conjugation identity: pass"]
        out = ["conjugation identity: FAIL"]
        if self.error:
            out.append(f"  {self.error}")
        out.extend(f"  coordinate {i}: lhs - rhs = {d}" for i, d in self.diffs)
        return out


def verify_conjugation(A: LocalAlgebra) -> ConjugationReport:
    """Check ``phi(y o (1 + x)) = y * phi(1 + x)`` coordinate-wise in ``Q[x, y]``."""
    xs = default_names("x", A.n)
    ys = default_names("y", A.n)
    universe = xs + ys
    try:
        fs = basic_polynomials(A, universe[:A.n], allow_incompatible=True).polys
        M = action_matrix(A, ys)
    except AlgebraError as exc:
        return ConjugationReport(False, [], str(exc))
    fx = [f.embed(universe) for f in fs]
    F = [Polynomial.one(universe)] + fx
    shifted = [Polynomial.var(x, universe) + Polynomial.var(y, universe) for x, y in zip(xs, ys)]
    diffs = []
    for i in range(1, A.dim):
        lhs = substitute(fs[i - 1], shifted)
        rhs = Polynomial.zero(universe)
        for j in range(A.dim):
            entry = M[i][j]
            if not entry.is_zero():
                rhs = rhs + entry.embed(universe) * F[j]
        if lhs != rhs:
            diffs.append((i, lhs - rhs))
    return ConjugationReport(not diffs, diffs)


def shear_automorphism(f: Polynomial, n: int, variables=None) -> PolynomialMap:
    """The map ``(x1 + f(x2), x2, ..., xn)``."""
    if n < 2:
        raise ArityError("shears need n >= 2")
    vs = tuple(variables) if variables is not None else default_names("x", n)
    if len(vs) != n:
        raise ArityError(f"{len(vs)} variable names for n = {n}")
    used = f.used_variables()
    if any(v != vs[1] for v in used):
        raise VariableMismatchError(f"shear polynomial must only involve {vs[1]}, got {used}")
    g = f.restrict(vs)
    xs = Polynomial.gens(vs)
    return PolynomialMap((xs[0] + g,) + xs[1:])
