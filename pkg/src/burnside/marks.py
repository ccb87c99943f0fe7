"""The Burnside ring via the table of marks and the ghost ring of integer functions.

The marks matrix m[H][K] counts fixed points |(G/H)^K|; rows are indexed by
the basis elements [G/H] and columns by the evaluation classes (K), both in
lattice order.  The marks homomorphism phi sends a coefficient vector to its
column of fixed-point counts; solve_ghost inverts it exactly when possible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exact import IntMatrix
from .groups import (
    Perm,
    SubgroupLattice,
    left_cosets,
    perm_inv,
    perm_mul,
)


class BurnsideError(Exception):
    """Base class for Burnside-ring errors."""


class NotInImage(BurnsideError):
    """A ghost vector is not in the image of the marks homomorphism."""

    def __init__(self, class_index: int, label: str, remainder: int):
        self.class_index = class_index
        self.label = label
        self.remainder = remainder
        super().__init__(f"ghost not integral at class {label}: remainder {remainder}")


class UnknownClass(BurnsideError):
    """A subgroup class index or label does not exist in the lattice."""


class InternalInvariantViolation(BurnsideError):
    """A computation contradicted a theorem; indicates a bug, never expected."""


@dataclass(frozen=True)
class MarksTable:
    lattice: SubgroupLattice
    matrix: IntMatrix  # m[H][K] = |(G/H)^K|

    @property
    def size(self) -> int:
        return len(self.lattice.classes)

    def mark(self, h: int, k: int) -> int:
        return self.matrix.entries[h][k]

    def to_json(self) -> str:
        payload = {
            "group": self.lattice.group.name or "unnamed",
            "classes": [cls.label for cls in self.lattice.classes],
            "matrix": self.matrix.to_lists(),
        }
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class BurnsideElement:
    """Integer coefficients on the transitive basis [G/H], in lattice order."""

    coefficients: tuple[int, ...]

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        return BurnsideElement(tuple(a + b for a, b in zip(self.coefficients, other.coefficients, strict=True)))

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return BurnsideElement(tuple(a - b for a, b in zip(self.coefficients, other.coefficients, strict=True)))

    def scale(self, k: int) -> "BurnsideElement":
        return BurnsideElement(tuple(k * a for a in self.coefficients))

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coefficients) if c != 0]

    @classmethod
    def basis(cls, index: int, size: int) -> "BurnsideElement":
        return cls(tuple(1 if i == index else 0 for i in range(size)))

    @classmethod
    def zero(cls, size: int) -> "BurnsideElement":
        return cls((0,) * size)


@dataclass(frozen=True)
class GhostElement:
    """An integer-valued function on subgroup classes, in lattice order."""

    values: tuple[int, ...]

    def __add__(self, other: "GhostElement") -> "GhostElement":
        return GhostElement(tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def __sub__(self, other: "GhostElement") -> "GhostElement":
        return GhostElement(tuple(a - b for a, b in zip(self.values, other.values, strict=True)))

    def scale(self, k: int) -> "GhostElement":
        return GhostElement(tuple(k * a for a in self.values))

    def pointwise(self, other: "GhostElement") -> "GhostElement":
        return GhostElement(tuple(a * b for a, b in zip(self.values, other.values, strict=True)))

    @classmethod
    def zero(cls, size: int) -> "GhostElement":
        return cls((0,) * size)

    @classmethod
    def ones(cls, size: int) -> "GhostElement":
        return cls((1,) * size)


def marks_table(lattice: SubgroupLattice) -> MarksTable:
    """m[H][K] = number of cosets gH with g^-1 K g contained in H."""
    group = lattice.group
    rows = []
    coset_cache = [left_cosets(group, cls.element_set) for cls in lattice.classes]
    for h, hcls in enumerate(lattice.classes):
        hset = hcls.element_set
        row = []
        for k, kcls in enumerate(lattice.classes):
            if not lattice.leq(k, h):
                row.append(0)
                continue
            krep = kcls.representative
            count = 0
            for g in coset_cache[h]:
                gi = perm_inv(g)
                if all(perm_mul(perm_mul(gi, x), g) in hset for x in krep):
                    count += 1
            row.append(count)
        rows.append(row)
    return MarksTable(lattice, IntMatrix.from_rows(rows))


def phi(element: BurnsideElement, table: MarksTable) -> GhostElement:
    """Marks homomorphism: value at (K) is sum_H x_H * m[H][K]."""
    values = table.matrix.transpose().mul_vector(list(element.coefficients))
    return GhostElement(tuple(values))


def solve_ghost(ghost: GhostElement, table: MarksTable) -> BurnsideElement:
    """The unique x with phi(x) = ghost, solved by descending back-substitution.

    Raises NotInImage at the first class (descending from the maximal one)
    where the required quotient is not an integer.
    """
    n = table.size
    if len(ghost.values) != n:
        raise ValueError("ghost length does not match lattice")
    x = [0] * n
    for k in range(n - 1, -1, -1):
        acc = ghost.values[k] - sum(x[h] * table.mark(h, k) for h in range(k + 1, n))
        pivot = table.mark(k, k)
        if acc % pivot != 0:
            raise NotInImage(k, table.lattice.classes[k].label, acc % pivot)
        x[k] = acc // pivot
    return BurnsideElement(tuple(x))


def multiply(a: BurnsideElement, b: BurnsideElement, table: MarksTable) -> BurnsideElement:
    """Ring product, computed through the pointwise ghost product."""
    product = phi(a, table).pointwise(phi(b, table))
    try:
        return solve_ghost(product, table)
    except NotInImage as exc:  # pragma: no cover - contradicts ring closure
        raise InternalInvariantViolation(f"product left the ring: {exc}") from exc


def unit(table: MarksTable) -> BurnsideElement:
    """[G/G], the multiplicative unit."""
    return BurnsideElement.basis(table.size - 1, table.size)


def indicator(class_index: int, table: MarksTable) -> GhostElement:
    """The ghost function that is 1 at the given class and 0 elsewhere."""
    if not 0 <= class_index < table.size:
        raise UnknownClass(f"no subgroup class with index {class_index}")
    return GhostElement(tuple(1 if i == class_index else 0 for i in range(table.size)))


def fixed_points_of_element(table: MarksTable, h: int, g: Perm) -> int:
    """|(G/H)^g| for a single group element g."""
    group = table.lattice.group
    hset = table.lattice.classes[h].element_set
    gi_cache = {}
    count = 0
    for rep in left_cosets(group, hset):
        ri = gi_cache.get(rep)
        if ri is None:
            ri = perm_inv(rep)
            gi_cache[rep] = ri
        if perm_mul(perm_mul(ri, g), rep) in hset:
            count += 1
    return count


def in_ideal_jn(element: BurnsideElement, n: int | float, table: MarksTable) -> bool:
    """True iff phi(element) vanishes on every abelian class on <= n generators."""
    ghost = phi(element, table)
    for idx, cls in enumerate(table.lattice.classes):
        if n == 0:
            selected = cls.order == 1
        else:
            selected = cls.is_abelian and cls.min_generators <= n
        if selected and ghost.values[idx] != 0:
            return False
    return True
