"""Finite-dimensional commutative local algebras given by structure constants.

An algebra of dimension ``n + 1`` has basis ``(1, s1, ..., sn)`` where the
``si`` span the maximal ideal.  Coordinates of elements are indexed the same
way: index 0 is the coefficient of 1.  Coordinates may be rationals or
:class:`~htaction.polyring.Polynomial` objects, the latter giving elements of
``A (x) Q[vars]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

from .linalg import rank, rref
from .polyring import Polynomial, as_rational, format_rational, is_scalar


class AlgebraError(ValueError):
    pass


class InvalidAlgebra(AlgebraError):
    pass


class NotInMaximalIdeal(AlgebraError):
    pass


class NotUnipotentUnit(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Polynomial) else c == 0


@dataclass(frozen=True)
class AxiomReport:
    commutative: bool
    associative: bool
    unital: bool
    nilpotent: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.commutative and self.associative and self.unital and self.nilpotent

    def __bool__(self):
        return self.ok

    def lines(self) -> list:
        out = []
        for name in ("commutative", "associative", "unital", "nilpotent"):
            out.append(f"{name}: {'pass' if getattr(self, name) else 'FAIL'}")
        return out + [f"  {p}" for p in self.problems]


class LocalAlgebra:
    """Structure constants of a commutative local algebra.

    ``table[i][j]`` is the coordinate vector of ``s_{i+1} * s_{j+1}`` in the
    basis ``(1, s1, ..., sn)``; vectors of length ``n`` are read as having a
    zero coefficient of 1.  With ``check=True`` (the default) the axioms are
    verified and :class:`InvalidAlgebra` is raised on failure; ``check=False``
    keeps a broken table around for diagnostics.
    """

    def __init__(self, table, labels=None, *, check: bool = True):
        n = len(table)
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise InvalidAlgebra(f"row {i + 1} of the table has {len(row)} entries, expected {n}")
            out = []
            for v in row:
                v = [as_rational(c) for c in v]
                if len(v) == n:
                    v = [Fraction(0)] + v
                elif len(v) != n + 1:
                    raise InvalidAlgebra(f"product vector of length {len(v)} in dimension {n + 1}")
                out.append(tuple(v))
            rows.append(tuple(out))
        self._table = tuple(rows)
        # nonzero entries per product for fast multiplication
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row) for row in rows)
        if labels is None:
            labels = ["1"] + [f"s{i}" for i in range(1, n + 1)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n + 1:
            raise InvalidAlgebra(f"{len(labels)} labels for dimension {n + 1}")
        self.labels = labels
        if check:
            report = check_axioms(self)
            if not report.ok:
                raise InvalidAlgebra("; ".join(l for l in report.lines() if "FAIL" in l or l.startswith("  ")))

    @classmethod
    def from_products(cls, n: int, products: dict, labels=None, *, check: bool = True) -> "LocalAlgebra":
        """Build from ``{(i, j): {k: c}}`` with 1-based indices, ``k = 0`` meaning 1.

        Missing products are zero; each unordered pair is filled symmetrically.
        """
        table = [[[Fraction(0)] * (n + 1) for _ in range(n)] for _ in range(n)]
        for (i, j), vec in products.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise InvalidAlgebra(f"product index ({i}, {j}) out of range")
            v = [Fraction(0)] * (n + 1)
            for k, c in vec.items():
                if not 0 <= k <= n:
                    raise InvalidAlgebra(f"basis index {k} out of range")
                v[k] = as_rational(c)
            table[i - 1][j - 1] = v
            table[j - 1][i - 1] = list(v)
        return cls(table, labels, check=check)

    # -- basic data ----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._table)

    @property
    def dim(self) -> int:
        return len(self._table) + 1

    def product(self, i: int, j: int) -> tuple:
        """Coordinates of ``e_i * e_j`` for basis indices ``0..n`` (0 is the unit)."""
        if i == 0 or j == 0:
            k = j if i == 0 else i
            return tuple(Fraction(int(t == k)) for t in range(self.dim))
        return self._table[i - 1][j - 1]

    @property
    def table(self) -> tuple:
        return self._table

    def with_product(self, i: int, j: int, vector, *, symmetric: bool = True) -> "LocalAlgebra":
        """Copy with one product replaced; the result is not validated."""
        table = [[list(v) for v in row] for row in self._table]
        v = [as_rational(c) for c in vector]
        if len(v) == self.n:
            v = [Fraction(0)] + v
        table[i - 1][j - 1] = v
        if symmetric:
            table[j - 1][i - 1] = list(v)
        return LocalAlgebra(table, self.labels, check=False)

    def rebased(self, perm) -> "LocalAlgebra":
        """Same algebra with basis vectors reordered; ``perm[new] = old`` and ``perm[0] == 0``."""
        perm = list(perm)
        if perm[0] != 0 or sorted(perm) != list(range(self.dim)):
            raise AlgebraError("perm must fix 0 and permute 0..n")
        inv = {old: new for new, old in enumerate(perm)}
        n = self.n
        table = [[None] * n for _ in range(n)]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                old = self.product(perm[a], perm[b])
                v = [Fraction(0)] * (n + 1)
                for k, c in enumerate(old):
                    v[inv[k]] = c
                table[a - 1][b - 1] = v
        return LocalAlgebra(table, [self.labels[p] for p in perm], check=False)

    def __eq__(self, other):
        return isinstance(other, LocalAlgebra) and self._table == other._table

    def __hash__(self):
        return hash(self._table)

    def __repr__(self):
        return f"LocalAlgebra(dim={self.dim}, labels={list(self.labels)})"

    # -- elements ------------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def one(self, variables=None) -> "AlgebraElement":
        return self.basis_element(0, variables)

    def zero(self, variables=None) -> "AlgebraElement":
        if variables is None:
            return AlgebraElement(self, [Fraction(0)] * self.dim)
        return GenericElement(self, [Polynomial.zero(variables)] * self.dim)

    def basis_element(self, k: int, variables=None) -> "AlgebraElement":
        if variables is None:
            return AlgebraElement(self, [Fraction(int(t == k)) for t in range(self.dim)])
        vs = tuple(variables)
        return GenericElement(self, [Polynomial.constant(int(t == k), vs) for t in range(self.dim)])

    def generic(self, names, variables=None) -> "GenericElement":
        """The element ``names[0]*s1 + ... + names[n-1]*sn`` of ``m (x) Q[variables]``."""
        names = list(names)
        if len(names) != self.n:
            raise AlgebraError(f"need {self.n} variable names, got {len(names)}")
        vs = tuple(variables) if variables is not None else tuple(names)
        coords = [Polynomial.zero(vs)] + [Polynomial.var(v, vs) for v in names]
        return GenericElement(self, coords)

    # -- ideal powers and filtration ------------------------------------------

    @cached_property
    def _ideal_powers(self) -> tuple:
        """rref bases of m, m^2, ..., ending with the first zero power.

        Raises :class:`NotNilpotent` if m^(n+1) is not zero.
        """
        n = self.n
        current = [[Fraction(int(t == k)) for t in range(n + 1)] for k in range(1, n + 1)]
        powers = [current]
        while current:
            if len(powers) > n:
                raise NotNilpotent("the maximal ideal is not nilpotent")
            products = []
            for v in current:
                for i in range(1, n + 1):
                    w = [Fraction(0)] * (n + 1)
                    for k, c in enumerate(v):
                        if c:
                            for t, d in enumerate(self.product(k, i)):
                                if d:
                                    w[t] += c * d
                    products.append(w)
            current = rref(products)[0]
            powers.append(current)
        return tuple(powers)

    def ideal_power_dims(self) -> list:
        """``[dim m, dim m^2, ..., 0]``."""
        return [len(b) for b in self._ideal_powers]

    def nilpotency_index(self) -> int:
        return nilpotency_index(self)

    def levels(self) -> list:
        """Filtration level of each ``si``: the largest ``l`` with ``si`` in ``m^l``."""
        powers = self._ideal_powers
        out = []
        for i in range(1, self.dim):
            v = [Fraction(int(t == i)) for t in range(self.dim)]
            level = 0
            for k, basis in enumerate(powers):
                if basis and rank(basis + [v]) == len(basis):
                    level = k + 1
                else:
                    break
            out.append(level)
        return out

    def filtration_basis_check(self) -> bool:
        return filtration_basis_check(self)

    def hilbert_function(self) -> list:
        return hilbert_function(self)

    def check_axioms(self) -> AxiomReport:
        return check_axioms(self)


class AlgebraElement:
    """Element of a local algebra; coordinates are rationals or polynomials."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: LocalAlgebra, coords):
        coords = tuple(c if isinstance(c, Polynomial) else as_rational(c) for c in coords)
        if len(coords) != algebra.dim:
            raise AlgebraError(f"{len(coords)} coordinates for an algebra of dimension {algebra.dim}")
        self.algebra = algebra
        self.coords = coords

    def _new(self, coords):
        if any(isinstance(c, Polynomial) for c in coords):
            return GenericElement(self.algebra, coords)
        return AlgebraElement(self.algebra, coords)

    def _same(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return self._new([a + b for a, b in zip(self.coords, other.coords)])
        if is_scalar(other) or isinstance(other, Polynomial):
            return self._new([self.coords[0] + other] + list(self.coords[1:]))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coords])

    def __sub__(self, other):
        if isinstance(other, AlgebraElement):
            return self + (-other)
        if is_scalar(other) or isinstance(other, Polynomial):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return elem_mul(self, other)
        if is_scalar(other) or isinstance(other, Polynomial):
            return self._new([c * other for c in self.coords])
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other) or isinstance(other, Polynomial):
            return self._new([other * c for c in self.coords])
        return NotImplemented

    def __truediv__(self, other):
        if not is_scalar(other):
            return NotImplemented
        inv = 1 / as_rational(other)
        return self._new([c * inv for c in self.coords])

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative powers are not supported")
        variables = self.variables
        result = self.algebra.one(variables)
        for _ in range(k):
            result = result * self
        return result

    @property
    def variables(self):
        for c in self.coords:
            if isinstance(c, Polynomial):
                return c.variables
        return None

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coords)

    def in_maximal_ideal(self) -> bool:
        return _is_zero(self.coords[0])

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and all(
            _is_zero(a - b) for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        parts = []
        for c, label in zip(self.coords, self.algebra.labels):
            if _is_zero(c):
                continue
            cs = str(c) if isinstance(c, Polynomial) else format_rational(c)
            if label == "1":
                parts.append(cs if not isinstance(c, Polynomial) or len(c) == 1 else f"({cs})")
            elif cs == "1":
                parts.append(label)
            elif isinstance(c, Polynomial) and len(c) > 1 or cs.startswith("-"):
                parts.append(f"({cs})*{label}")
            else:
                parts.append(f"{cs}*{label}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class GenericElement(AlgebraElement):
    """Element of ``A (x) Q[vars]``: every coordinate is a polynomial in one universe."""

    __slots__ = ()

    def __init__(self, algebra: LocalAlgebra, coords):
        coords = list(coords)
        universe = next((c.variables for c in coords if isinstance(c, Polynomial)), None)
        if universe is None:
            raise AlgebraError("a generic element needs polynomial coordinates")
        coords = [c if isinstance(c, Polynomial) else Polynomial.constant(c, universe) for c in coords]
        if any(c.variables != universe for c in coords):
            raise AlgebraError("coordinates of a generic element must share one variable universe")
        super().__init__(algebra, coords)

    def embed(self, variables) -> "GenericElement":
        return GenericElement(self.algebra, [c.embed(variables) for c in self.coords])

    def substitute(self, images) -> AlgebraElement:
        """Substitute into every coordinate (rationals give an :class:`AlgebraElement`)."""
        return self._new([c.substitute(images) for c in self.coords])


def elem_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear product through the structure constants; index 0 is the unit."""
    a._same(b)
    A = a.algebra
    x, y = a.coords, b.coords
    x0, y0 = x[0], y[0]
    out = [x0 * y0] + [x0 * y[k] + y0 * x[k] for k in range(1, A.dim)]
    sparse = A._sparse
    for i in range(1, A.dim):
        if _is_zero(x[i]):
            continue
        row = sparse[i - 1]
        for j in range(1, A.dim):
            if not row[j - 1] or _is_zero(y[j]):
                continue
            t = x[i] * y[j]
            for k, c in row[j - 1]:
                out[k] = out[k] + c * t
    return a._new(out)


def nilpotency_index(A: LocalAlgebra) -> int:
    """Least ``d`` with ``m^d = 0``."""
    return len(A._ideal_powers)


def hilbert_function(A: LocalAlgebra) -> list:
    """``[dim m^k / m^(k+1) for k = 0..d-1]`` with ``m^0 = A``."""
    dims = [A.dim] + A.ideal_power_dims()
    return [dims[k] - dims[k + 1] for k in range(len(dims) - 1)]


def filtration_basis_check(A: LocalAlgebra) -> bool:
    """True iff ``s1..sn`` are listed by non-decreasing filtration level and
    the elements of level ``>= k`` span ``m^k`` for every ``k``."""
    try:
        levels = A.levels()
        dims = A.ideal_power_dims()
    except NotNilpotent:
        return False
    if any(a > b for a, b in zip(levels, levels[1:])):
        return False
    return all(sum(1 for l in levels if l >= k) == dims[k - 1] for k in range(1, len(dims) + 1))


def check_axioms(A: LocalAlgebra) -> AxiomReport:
    n = A.n
    problems = []
    commutative = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if A.product(i, j) != A.product(j, i):
                commutative = False
                problems.append(f"{A.labels[i]}*{A.labels[j]} != {A.labels[j]}*{A.labels[i]}")
    basis = [A.basis_element(k) for k in range(A.dim)]
    associative = True
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ij = basis[i] * basis[j]
            for k in range(1, n + 1):
                if ij * basis[k] != basis[i] * (basis[j] * basis[k]):
                    associative = False
                    problems.append(
                        f"({A.labels[i]}*{A.labels[j]})*{A.labels[k]} != "
                        f"{A.labels[i]}*({A.labels[j]}*{A.labels[k]})")
    unital = all(basis[0] * b == b and b * basis[0] == b for b in basis)
    try:
        A._ideal_powers
        nilpotent = True
    except NotNilpotent:
        nilpotent = False
        problems.append("the span of s1..sn is not a nilpotent ideal")
    return AxiomReport(commutative, associative, unital, nilpotent, problems)


def _check_order(a: AlgebraElement) -> int:
    try:
        return nilpotency_index(a.algebra)
    except NotNilpotent as exc:
        raise NotNilpotent("exp/log need a nilpotent maximal ideal") from exc


def exp(a: AlgebraElement) -> AlgebraElement:
    """``sum_{k<d} a^k / k!`` for ``a`` in the maximal ideal."""
    if not a.in_maximal_ideal():
        raise NotInMaximalIdeal(f"exp needs an element of the maximal ideal, got {a}")
    d = _check_order(a)
    one = a.algebra.one(a.variables)
    result = one
    term = one
    for k in range(1, d):
        term = term * a
        if term.is_zero():
            break
        result = result + term / factorial(k)
    return result


def log(u: AlgebraElement) -> AlgebraElement:
    """``sum_{k<d} (-1)^(k+1) (u-1)^k / k`` for ``u`` in ``1 + m``."""
    c0 = u.coords[0]
    if not _is_zero(c0 - 1):
        raise NotUnipotentUnit(f"log needs an element of 1 + m, got {u}")
    d = _check_order(u)
    a = u - 1
    result = a.algebra.zero(u.variables)
    term = a.algebra.one(u.variables)
    for k in range(1, d):
        term = term * a
        if term.is_zero():
            break
        result = result + term * Fraction((-1) ** (k + 1), k)
    return result


# --------------------------------------------------------------------------
# structure-constant exchange format


def format_table(A: LocalAlgebra) -> str:
    """Text form: ``dim``, ``basis`` and one ``si*sj = ...`` line per nonzero product (i <= j)."""
    from .polyring import Polynomial as P

    svars = tuple(f"s{k}" for k in range(1, A.dim))
    lines = [f"dim: {A.dim}", "basis: " + ", ".join(A.labels)]
    for i in range(1, A.dim):
        for j in range(i, A.dim):
            v = A.product(i, j)
            if not any(v):
                continue
            rhs = P(svars, {tuple(int(t == k) for t in range(1, A.dim)): c for k, c in enumerate(v) if c})
            lines.append(f"s{i}*s{j} = {rhs}")
    return "\n".join(lines) + "\n"


def parse_table(text: str, *, check: bool = True) -> LocalAlgebra:
    """Inverse of :func:`format_table`.  Lines starting with ``#`` are ignored."""
    import re

    from .parsing import ParseError, parse_polynomial

    dim = None
    labels = None
    products = {}
    entries = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        start = offset
        offset += len(raw)
        if not line:
            continue
        key = line.split(":", 1)[0].strip().lower()
        if key == "dim" and ":" in line:
            try:
                dim = int(line.split(":", 1)[1])
            except ValueError:
                raise ParseError("dim must be an integer", text, start) from None
        elif key == "basis" and ":" in line:
            labels = [x.strip() for x in line.split(":", 1)[1].split(",")]
        else:
            entries.append((line, start))
    if dim is None or dim < 1:
        raise ParseError("missing 'dim:' line", text, 0)
    n = dim - 1
    svars = tuple(f"s{k}" for k in range(1, dim))
    for line, start in entries:
        m = re.fullmatch(r"s(\d+)\s*\*\s*s(\d+)\s*=\s*(.+)", line)
        if not m:
            raise ParseError(f"expected 'si*sj = ...', got {line!r}", text, start)
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"product index out of range in {line!r}", text, start)
        try:
            rhs = parse_polynomial(m.group(3), svars)
        except ParseError as exc:
            raise ParseError(exc.message, text, start + m.start(3) + exc.pos) from None
        if rhs.total_degree() > 1:
            raise ParseError(f"product must be linear in the basis: {line!r}", text, start)
        vec = {0: rhs.constant_term()}
        for k in range(1, dim):
            vec[k] = rhs.coefficient(tuple(int(t == k) for t in range(1, dim)))
        products[(i, j)] = vec
    return LocalAlgebra.from_products(n, products, labels, check=check)
