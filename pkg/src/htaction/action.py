"""The additive action of ``G_a^n`` on ``P(A)`` by multiplication with
``exp(y1*s1 + ... + yn*sn)``.

Points are column vectors ``(z0, ..., zn)`` with ``z0`` the coefficient of 1;
matrices act on the left.  Column ``j`` of :func:`action_matrix` holds the
coordinates of ``exp(y) * e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .localalg import LocalAlgebra, exp, nilpotency_index
from .polyring import ArityError, Polynomial, as_rational, format_rational, is_scalar, substitute


class ActionError(ValueError):
    pass


def _fmt(c) -> str:
    return str(c) if isinstance(c, Polynomial) else format_rational(c)


def _zero(c) -> bool:
    return c.is_zero() if isinstance(c, Polynomial) else c == 0


class ActionMatrix:
    """Square matrix whose entries are rationals or polynomials in one universe."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ActionError("action matrices are square")
        self.rows = rows

    @classmethod
    def identity(cls, size: int, variables=None) -> "ActionMatrix":
        if variables is None:
            return cls([[Fraction(int(i == j)) for j in range(size)] for i in range(size)])
        return cls([[Polynomial.constant(int(i == j), variables) for j in range(size)]
                    for i in range(size)])

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def variables(self):
        for r in self.rows:
            for c in r:
                if isinstance(c, Polynomial):
                    return c.variables
        return None

    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            i, j = ij
            return self.rows[i][j]
        return self.rows[ij]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def _check(self, other):
        if not isinstance(other, ActionMatrix) or other.size != self.size:
            raise ActionError("matrix size mismatch")

    def __add__(self, other):
        self._check(other)
        return ActionMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return ActionMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other):
        self._check(other)
        size = self.size
        cols = [other.column(j) for j in range(size)]
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = None
                for a, b in zip(r, col):
                    if _zero(a) or _zero(b):
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                if acc is None:
                    acc = r[0] * col[0]  # a zero of the right kind
                row.append(acc)
            out.append(row)
        return ActionMatrix(out)

    def __pow__(self, k: int):
        result = ActionMatrix.identity(self.size, self.variables)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(_zero(c) for r in self.rows for c in r)

    def is_identity(self) -> bool:
        return all(_zero(c - int(i == j)) for i, r in enumerate(self.rows) for j, c in enumerate(r))

    def is_lower_unitriangular(self) -> bool:
        return all(_zero(c - 1) if i == j else _zero(c)
                   for i, r in enumerate(self.rows) for j, c in enumerate(r) if j >= i)

    def substitute(self, images) -> "ActionMatrix":
        return ActionMatrix([[substitute(c, images) if isinstance(c, Polynomial) else c
                              for c in r] for r in self.rows])

    def evaluate(self, values) -> "ActionMatrix":
        return self.substitute([as_rational(v) for v in values])

    def embed(self, variables) -> "ActionMatrix":
        return ActionMatrix([[c.embed(variables) if isinstance(c, Polynomial)
                              else Polynomial.constant(c, variables) for c in r]
                             for r in self.rows])

    def determinant(self):
        return determinant(self)

    def __eq__(self, other):
        if not isinstance(other, ActionMatrix) or other.size != self.size:
            return NotImplemented
        return all(_zero(a - b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def lines(self) -> list:
        return ["; ".join(_fmt(c) for c in r) for r in self.rows]

    def __str__(self):
        return "\n".join(self.lines())

    def to_json(self) -> list:
        return [[_fmt(c) for c in r] for r in self.rows]


def determinant(M: ActionMatrix):
    """Division-free determinant by expansion over column subsets, O(n 2^n)."""
    size = M.size
    one = Polynomial.one(M.variables) if M.variables is not None else Fraction(1)
    partial = {0: one}  # mask of used columns -> signed sum over partial permutations
    for i in range(size):
        nxt = {}
        for mask, acc in partial.items():
            if _zero(acc):
                continue
            for j in range(size):
                if mask >> j & 1 or _zero(M.rows[i][j]):
                    continue
                # sign: number of used columns greater than j
                sign = -1 if bin(mask >> (j + 1)).count("1") % 2 else 1
                term = acc * M.rows[i][j] * sign
                key = mask | 1 << j
                nxt[key] = term if key not in nxt else nxt[key] + term
        partial = nxt
    return partial.get((1 << size) - 1, one * 0)


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates ``[z0 : ... : zn]``, not all zero."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(c if isinstance(c, Polynomial) else as_rational(c) for c in self.coords)
        if all(_zero(c) for c in coords):
            raise ActionError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", coords)

    def normalized(self) -> "ProjectivePoint":
        """Divide by the first nonzero coordinate when it is a constant."""
        lead = next(c for c in self.coords if not _zero(c))
        if isinstance(lead, Polynomial):
            if not lead.is_constant():
                return self
            lead = lead.constant_term()
        if lead == 1:
            return self
        return ProjectivePoint(tuple(c / lead for c in self.coords))

    def same_point(self, other: "ProjectivePoint") -> bool:
        """Projective equality by vanishing of all 2x2 minors."""
        a, b = self.coords, other.coords
        if len(a) != len(b):
            return False
        return all(_zero(a[i] * b[j] - a[j] * b[i])
                   for i in range(len(a)) for j in range(i + 1, len(a)))

    def __str__(self):
        return "[" + " : ".join(_fmt(c) for c in self.coords) + "]"


def _y_coords(n, y):
    if y is None:
        y = [f"y{i}" for i in range(1, n + 1)]
    y = list(y)
    if len(y) != n:
        raise ArityError(f"expected {n} group coordinates, got {len(y)}")
    if all(isinstance(v, str) for v in y):
        return [Polynomial.var(v, y) for v in y]
    if any(isinstance(v, Polynomial) for v in y):
        universe = next(v.variables for v in y if isinstance(v, Polynomial))
        return [v if isinstance(v, Polynomial) else Polynomial.constant(v, universe) for v in y]
    return [as_rational(v) for v in y]


def action_matrix(A: LocalAlgebra, y=None) -> ActionMatrix:
    """Matrix of ``v -> exp(y1*s1 + ... + yn*sn) * v`` in the basis ``(1, s1..sn)``.

    ``y`` may be a list of variable names (default ``y1..yn``), polynomials,
    or rationals.
    """
    coords = _y_coords(A.n, y)
    if coords and isinstance(coords[0], Polynomial):
        vs = coords[0].variables
        g = A.element([Polynomial.zero(vs)] + coords)
        basis = [A.basis_element(j, vs) for j in range(A.dim)]
    else:
        g = A.element([Fraction(0)] + coords)
        basis = [A.basis_element(j) for j in range(A.dim)]
    u = exp(g)
    cols = [(u * b).coords for b in basis]
    return ActionMatrix([[cols[j][i] for j in range(A.dim)] for i in range(A.dim)])


def standard_action_matrix(n: int, y=None) -> ActionMatrix:
    """Identity plus the first column ``(0, y1, ..., yn)``."""
    coords = _y_coords(n, y)
    if coords and isinstance(coords[0], Polynomial):
        vs = coords[0].variables
        one, zero = Polynomial.one(vs), Polynomial.zero(vs)
    else:
        one, zero = Fraction(1), Fraction(0)
    rows = [[one] + [zero] * n]
    for i in range(1, n + 1):
        rows.append([coords[i - 1]] + [one if j == i else zero for j in range(1, n + 1)])
    return ActionMatrix(rows)


def apply(M: ActionMatrix, p) -> ProjectivePoint:
    """``M * p`` followed by normalization."""
    if not isinstance(p, ProjectivePoint):
        p = ProjectivePoint(tuple(p))
    if len(p.coords) != M.size:
        raise ActionError(f"point of length {len(p.coords)} for a {M.size}x{M.size} matrix")
    out = []
    for r in M.rows:
        acc = None
        for a, z in zip(r, p.coords):
            t = a * z
            acc = t if acc is None else acc + t
        out.append(acc)
    return ProjectivePoint(tuple(out)).normalized()


@dataclass(frozen=True)
class GroupLawReport:
    homomorphism: bool
    identity_at_zero: bool
    effective: bool
    unit_determinant: bool
    unipotent: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.homomorphism and self.identity_at_zero and self.effective
                and self.unit_determinant and self.unipotent)

    def __bool__(self):
        return self.ok

    def lines(self) -> list:
        v = lambda b: "pass" if b else "FAIL"
        return [
            f"M(y) M(y') = M(y + y'): {v(self.homomorphism)}",
            f"M(0) = I: {v(self.identity_at_zero)}",
            f"effective: {v(self.effective)}",
            f"det M(y) = 1: {v(self.unit_determinant)}",
            f"(M(y) - I)^d = 0: {v(self.unipotent)}",
        ] + [f"  {p}" for p in self.problems]


def check_group_law(A: LocalAlgebra) -> GroupLawReport:
    from .ht import basic_polynomials, is_triangular

    n = A.n
    ys = tuple(f"y{i}" for i in range(1, n + 1))
    yp = tuple(f"y{i}'" for i in range(1, n + 1))
    both = ys + yp
    problems = []
    M = action_matrix(A, ys)
    Mb = M.embed(both)
    Mp = action_matrix(A, [Polynomial.var(v, both) for v in yp])
    Msum = action_matrix(A, [Polynomial.var(a, both) + Polynomial.var(b, both) for a, b in zip(ys, yp)])
    homomorphism = (Mb @ Mp) == Msum
    if not homomorphism:
        problems.append("M(y) M(y') differs from M(y + y')")
    identity_at_zero = action_matrix(A, [0] * n).is_identity() if n else True
    fs = basic_polynomials(A, ys, allow_incompatible=True)
    col0 = M.column(0)
    effective = (_zero(col0[0] - 1) and list(col0[1:]) == list(fs.polys)
                 and is_triangular(fs))
    if not effective:
        problems.append("column 0 is not (1, f(y)) with triangular f")
    unit_determinant = _zero(determinant(M) - 1)
    d = nilpotency_index(A)
    unipotent = ((M - ActionMatrix.identity(A.dim, ys)) ** d).is_zero()
    return GroupLawReport(homomorphism, identity_at_zero, effective, unit_determinant,
                          unipotent, problems)
