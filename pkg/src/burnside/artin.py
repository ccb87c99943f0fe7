"""Artin induction certificates: abelian class families, orders, and the
element whose ghost is the order on every family class.

The certificate exhibits |G|_n times the unit as induced from abelian
subgroups on at most n generators, verified pointwise on group elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import SubgroupLattice, conjugacy_classes, perm_to_cycles
from .marks import (
    BurnsideElement,
    InternalInvariantViolation,
    MarksTable,
    NotInImage,
    fixed_points_of_element,
    in_ideal_jn,
    indicator,
    phi,
    solve_ghost,
    unit,
)


class ArtinError(Exception):
    pass


class EmptyFamily(ArtinError):
    """An order was requested over an empty class family."""


@dataclass(frozen=True)
class AbelianClassFamily:
    """Conjugacy classes of abelian subgroups on at most n generators."""

    n: int | float
    class_indices: tuple[int, ...]


@dataclass(frozen=True)
class ArtinCertificate:
    n: int | float
    order_n: int
    alpha: BurnsideElement
    coefficients: dict[int, int]  # class index -> c_A, support only
    element_checks: tuple[tuple[str, int, int], ...]  # (element class label, lhs, rhs)
    ghost_checks: tuple[tuple[str, int, int], ...]  # (subgroup class label, value, expected)
    in_ideal: bool  # order_n * [pt] - alpha lies in J_n

    @property
    def verified(self) -> bool:
        return (
            all(lhs == rhs for _, lhs, rhs in self.element_checks)
            and all(lhs == rhs for _, lhs, rhs in self.ghost_checks)
            and self.in_ideal
        )


def abelian_family(lattice: SubgroupLattice, n: int | float) -> AbelianClassFamily:
    """n = 0 selects the trivial class; otherwise abelian classes on <= n generators."""
    if n == 0:
        indices = tuple(i for i, cls in enumerate(lattice.classes) if cls.order == 1)
    else:
        indices = tuple(
            i for i, cls in enumerate(lattice.classes)
            if cls.is_abelian and cls.min_generators <= n
        )
    return AbelianClassFamily(n, indices)


def order_n(family: AbelianClassFamily, lattice: SubgroupLattice) -> int:
    """Least common multiple of the Weyl-group orders over the family."""
    if not family.class_indices:
        raise EmptyFamily(f"no classes for n = {family.n}")
    return math.lcm(*[lattice.classes[i].weyl_order for i in family.class_indices])


def idempotent_multiple(k: int, family: AbelianClassFamily, table: MarksTable) -> BurnsideElement:
    """The element with ghost |G|_n * e_K, supported on family classes below (K)."""
    lattice = table.lattice
    if k not in family.class_indices:
        raise ArtinError(f"class {lattice.label_of(k)} is not in the family")
    target = indicator(k, table).scale(order_n(family, lattice))
    try:
        element = solve_ghost(target, table)
    except NotInImage as exc:  # pragma: no cover - contradicts the decomposition theorem
        raise InternalInvariantViolation(str(exc)) from exc
    for idx in element.support():
        if idx not in family.class_indices or not lattice.leq(idx, k):
            raise InternalInvariantViolation(
                f"support class {lattice.label_of(idx)} outside the family below {lattice.label_of(k)}"
            )
    return element


def artin_certificate(table: MarksTable, n: int | float) -> ArtinCertificate:
    """Sum the idempotent multiples over the family and verify the identities.

    For n >= 1 the per-element check asserts sum_A c_A |(G/A)^g| = |G|_n for
    every element conjugacy class of G.  For n = 0 only the ghost-level
    statement holds, so the element checks are omitted.
    """
    lattice = table.lattice
    family = abelian_family(lattice, n)
    order = order_n(family, lattice)
    size = table.size
    alpha = BurnsideElement.zero(size)
    for k in family.class_indices:
        alpha = alpha + idempotent_multiple(k, family, table)

    ghost = phi(alpha, table)
    ghost_checks = []
    for idx, cls in enumerate(lattice.classes):
        expected = order if idx in family.class_indices else 0
        ghost_checks.append((cls.label, ghost.values[idx], expected))

    element_checks = []
    if n != 0:
        classes = conjugacy_classes(lattice.group)
        for rep in classes.representatives:
            lhs = sum(
                alpha.coefficients[h] * fixed_points_of_element(table, h, rep)
                for h in alpha.support()
            )
            element_checks.append((perm_to_cycles(rep), lhs, order))

    leftover = unit(table).scale(order) - alpha
    certificate = ArtinCertificate(
        n=n,
        order_n=order,
        alpha=alpha,
        coefficients={i: alpha.coefficients[i] for i in alpha.support()},
        element_checks=tuple(element_checks),
        ghost_checks=tuple(ghost_checks),
        in_ideal=in_ideal_jn(leftover, n, table),
    )
    return certificate


def certificate_payload(cert: ArtinCertificate, table: MarksTable) -> dict:
    """JSON-ready dictionary for a certificate."""
    lattice = table.lattice
    return {
        "group": lattice.group.name or "unnamed",
        "n": "inf" if cert.n == math.inf else cert.n,
        "order_n": cert.order_n,
        "coefficients": [
            {"class": lattice.label_of(i), "c": c} for i, c in sorted(cert.coefficients.items())
        ],
        "checks": [
            {"element_class": label, "lhs": lhs, "rhs": rhs}
            for label, lhs, rhs in cert.element_checks
        ],
        "ghost_checks": [
            {"class": label, "value": value, "expected": expected}
            for label, value, expected in cert.ghost_checks
        ],
        "in_ideal": cert.in_ideal,
        "verified": cert.verified,
    }
