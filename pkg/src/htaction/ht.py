"""Basic polynomials of a local algebra and the basic-subspace axioms.

For a local algebra with maximal-ideal basis ``s1..sn`` the basic polynomials
``f1..fn`` in ``Q[x1..xn]`` are the coordinates of

    exp(x1*s1 + ... + xn*sn) = 1 + f1(x)*s1 + ... + fn(x)*sn.

Their span together with 1 is invariant under translations of the variables
and generates the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rref
from .localalg import AlgebraError, LocalAlgebra, exp
from .polyring import Polynomial


class BasisNotFiltrationCompatible(AlgebraError):
    pass


def default_names(prefix: str, n: int) -> tuple:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class BasicPolynomials:
    algebra: LocalAlgebra | None
    polys: tuple

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))

    @property
    def variables(self) -> tuple:
        return self.polys[0].variables if self.polys else ()

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def lines(self) -> list:
        return [f"f{i} = {f}" for i, f in enumerate(self.polys, 1)]


def basic_polynomials(A: LocalAlgebra, variables=None, *, allow_incompatible: bool = False) -> BasicPolynomials:
    """Coordinates of ``exp(sum xi*si)``; the basis must be filtration compatible
    unless ``allow_incompatible`` is set."""
    if not allow_incompatible and not A.filtration_basis_check():
        raise BasisNotFiltrationCompatible(
            "the basis of the maximal ideal is not compatible with its filtration")
    names = tuple(variables) if variables is not None else default_names("x", A.n)
    e = exp(A.generic(names))
    return BasicPolynomials(A, e.coords[1:])


def _as_polys(fs) -> tuple:
    return tuple(fs.polys if isinstance(fs, BasicPolynomials) else fs)


def is_triangular(fs) -> bool:
    """True iff ``fi - xi`` only involves ``x1..x_{i-1}``, with ``xi`` the i-th
    variable of the universe."""
    polys = _as_polys(fs)
    for i, f in enumerate(polys):
        if i >= f.nvars:
            return False
        h = f - Polynomial.var(f.variables[i], f.variables)
        if any(any(m[i:]) for m, _ in h.items()):
            return False
    return True


def _split_by_x(g: Polynomial, nx: int) -> dict:
    """Group ``g`` by monomials in its first ``nx`` variables; values are
    polynomials in the remaining variables."""
    rest = g.variables[nx:]
    out = {}
    for m, c in g.items():
        key, tail = m[:nx], m[nx:]
        out.setdefault(key, {})
        out[key][tail] = out[key].get(tail, 0) + c
    return {k: Polynomial(rest, v) for k, v in out.items()}


class _SpanSolver:
    """Express polynomials with parameter coefficients in the span of a fixed
    rational family, by echelon elimination."""

    def __init__(self, family):
        self.family = list(family)
        self.nx = self.family[0].nvars
        monos = sorted({m for f in self.family for m in f.terms}, key=lambda m: (sum(m), m))
        self.monos = monos
        k = len(self.family)
        rows = []
        for idx, f in enumerate(self.family):
            rows.append([f.coefficient(m) for m in monos] + [Fraction(int(t == idx)) for t in range(k)])
        reduced, pivots = rref(rows)
        self.rows = []
        for row, p in zip(reduced, pivots):
            if p < len(monos):
                self.rows.append((monos[p], row[:len(monos)], row[len(monos):]))
        self.rank = len(self.rows)

    def coordinates(self, g: Polynomial):
        """Coefficients ``lam`` with ``g = sum lam[j] * family[j]``, or ``None``."""
        parts = _split_by_x(g, self.nx)
        params = g.variables[self.nx:]
        zero = Polynomial.zero(params)
        residual = dict(parts)
        reduced_coords = []
        for pivot_mono, vec, _ in self.rows:
            lam = parts.get(pivot_mono, zero)
            reduced_coords.append(lam)
            if lam.is_zero():
                continue
            for m, c in zip(self.monos, vec):
                if c:
                    residual[m] = residual.get(m, zero) - lam * c
        if any(not v.is_zero() for v in residual.values()):
            return None
        lam = [zero] * len(self.family)
        for coef, (_, _, transform) in zip(reduced_coords, self.rows):
            if coef.is_zero():
                continue
            for j, t in enumerate(transform):
                if t:
                    lam[j] = lam[j] + coef * t
        return lam


def _shift_names(xvars, n):
    names = default_names("c", n)
    while set(names) & set(xvars):
        names = tuple("_" + v for v in names)
    return names


def translation_matrix(fs, shift_names=None):
    """Matrix ``L(c)`` with ``F_i(x + c) = sum_j L[i][j](c) * F_j(x)`` where
    ``F = (1, f1, ..., fn)``; ``None`` if the span is not translation invariant.

    Entries are polynomials in the shift variables.
    """
    polys = _as_polys(fs)
    xvars = polys[0].variables
    nx = len(xvars)
    cvars = tuple(shift_names) if shift_names is not None else _shift_names(xvars, nx)
    family = [Polynomial.one(xvars)] + list(polys)
    solver = _SpanSolver(family)
    shifts = [Polynomial.var(c, cvars) for c in cvars]
    matrix = []
    for F in family:
        lam = solver.coordinates(F.translate(shifts))
        if lam is None:
            return None
        matrix.append(lam)
    return matrix


@dataclass(frozen=True)
class BasicSubspaceReport:
    dimension: int
    expected_dimension: int
    translation_invariant: bool
    generates: bool
    translation: list | None = None
    problems: list = field(default_factory=list)

    @property
    def independent(self) -> bool:
        return self.dimension == self.expected_dimension

    @property
    def ok(self) -> bool:
        return self.independent and self.translation_invariant and self.generates

    def __bool__(self):
        return self.ok

    def lines(self) -> list:
        v = lambda b: "pass" if b else "FAIL"
        return [
            f"span dimension {self.dimension} (expected {self.expected_dimension}): {v(self.independent)}",
            f"translation invariance: {v(self.translation_invariant)}",
            f"generates the polynomial ring: {v(self.generates)}",
        ] + [f"  {p}" for p in self.problems]


def check_basic_subspace(fs) -> BasicSubspaceReport:
    """Check the three basic-subspace axioms for ``span(1, f1..fn)``."""
    from .cremona import NotTriangular, PolynomialMap, compose, invert_triangular

    polys = _as_polys(fs)
    xvars = polys[0].variables
    problems = []
    family = [Polynomial.one(xvars)] + list(polys)
    dimension = _SpanSolver(family).rank
    translation = translation_matrix(polys)
    if translation is None:
        problems.append("some f_i(x + c) leaves the span")
    generates = False
    if len(polys) != len(xvars):
        problems.append(f"{len(polys)} polynomials in {len(xvars)} variables")
    else:
        try:
            F = PolynomialMap(polys)
            G = invert_triangular(F)
            generates = compose(F, G).is_identity() and compose(G, F).is_identity()
        except NotTriangular:
            problems.append("(f1..fn) is not a triangular map; generation not established")
    return BasicSubspaceReport(dimension, len(polys) + 1, translation is not None,
                               generates, translation, problems)
