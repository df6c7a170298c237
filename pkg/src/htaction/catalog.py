"""Built-in local algebras and the known counts of isomorphism classes.

Entries are stored as presentations and built through the Groebner engine
on first access.  The catalog is a sample, not a classification: it is
complete only in dimensions 1 to 3.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

from .groebner import algebra_from_presentation
from .localalg import LocalAlgebra
from .parsing import parse_presentation

# number of isomorphism classes of local algebras of dimension n + 1;
# from dimension 7 on there are infinitely many
COUNT_TABLE = {1: 1, 2: 1, 3: 2, 4: 4, 5: 9, 6: 25}
INFINITE_FROM = 7


def isomorphism_class_count(dim: int) -> float | int:
    if dim < 1:
        raise ValueError("dimension must be positive")
    return COUNT_TABLE.get(dim, math.inf)


class NotFound(KeyError):
    pass


@dataclass
class CatalogEntry:
    name: str
    presentation: str
    dim: int
    note: str
    _algebra: LocalAlgebra | None = field(default=None, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @property
    def algebra(self) -> LocalAlgebra:
        if self._algebra is None:
            with self._lock:
                if self._algebra is None:
                    A = algebra_from_presentation(parse_presentation(self.presentation))
                    if A.dim != self.dim:
                        raise RuntimeError(
                            f"catalog entry {self.name} built dimension {A.dim}, expected {self.dim}")
                    self._algebra = A
        return self._algebra

    def to_json(self) -> dict:
        return {"name": self.name, "dim": self.dim, "presentation": self.presentation,
                "note": self.note}


def _square_zero(n: int) -> str:
    names = [f"S{i}" for i in range(1, n + 1)]
    gens = [f"{a}*{b}" if a != b else f"{a}^2"
            for i, a in enumerate(names) for b in names[i:]]
    return f"Q[{','.join(names)}]/({', '.join(gens)})"


def _build_entries() -> dict:
    entries = []
    for n in range(1, 7):
        entries.append(CatalogEntry(
            f"standard-{n}", _square_zero(n), n + 1,
            "products of maximal-ideal elements vanish; gives the standard action"))
    for n in range(1, 7):
        entries.append(CatalogEntry(
            f"truncated-{n}", f"Q[S1]/(S1^{n + 1})", n + 1,
            "truncated polynomial ring in one variable"))
    entries.append(CatalogEntry(
        "example-3.2", "Q[S1]/(S1^3)", 3, "basis s1, s2 = s1^2"))
    entries.append(CatalogEntry(
        "example-3.3", "Q[S1,S2]/(S1*S2, S1^3 - S2^2)", 5,
        "basis s1, s2, s3 = s1^2, s4 = s1^3 = s2^2"))
    entries.append(CatalogEntry(
        "dim3-square-zero", _square_zero(2), 3,
        "the dimension-3 class with m^2 = 0"))
    return {e.name: e for e in entries}


_ENTRIES = _build_entries()


def list_entries() -> list:
    return list(_ENTRIES.values())


def get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise NotFound(f"no catalog entry named {name!r}") from None


def names() -> list:
    return list(_ENTRIES)
