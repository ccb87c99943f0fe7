"""Equalizer lattices in representation-ring coordinates and the exact
verification of the induction-restriction isomorphism pairs.

The equalizer is the integer kernel of the difference of the two
restriction-conjugation maps out of the product of representation rings of a
family of subgroup classes; restriction from the top group lands in it.  The
Artin verification checks that restriction and the induced section compose to
the group order in both directions; the Brauer verification checks that
restriction is a lattice isomorphism via Smith elementary divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .artin import ArtinCertificate, abelian_family, artin_certificate, order_n
from .brauer import brauer_certificate, _prime_divisors
from .exact import IntMatrix, integer_kernel_basis, smith_normal_form, _solve_rational_system
from .characters import (
    CharacterTable,
    ClassFunction,
    character_table,
    conjugate_function,
    induce,
    load_character_table,
    restrict,
)
from .groups import (
    Group,
    SubgroupLattice,
    double_cosets,
    exponent,
    is_n_hyper,
    subgroup_as_group,
)
from .marks import MarksTable


class RestrictionError(Exception):
    pass


class MissingTable(RestrictionError):
    """No character table is available for a required subgroup."""


class EmptyFamily(RestrictionError):
    pass


class CompositeMismatch(RestrictionError):
    """A composite failed to be the expected multiple of the identity."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"composite mismatch at {witness}")


class NotIsomorphism(RestrictionError):
    def __init__(self, divisors):
        self.divisors = divisors
        super().__init__(f"restriction has elementary divisors {divisors}")


class TableProvider:
    """Character tables for explicit subgroups of one ambient group.

    Tables are held per subgroup class and transported to explicit conjugates,
    so conjugate subgroups always receive consistent tables.
    """

    def __init__(self, group: Group, lattice: SubgroupLattice):
        self.group = group
        self.lattice = lattice
        self.conductor = exponent(group)
        self._class_tables: dict[int, CharacterTable] = {}
        self._conjugate_tables: dict[frozenset, CharacterTable] = {}

    def class_table(self, class_index: int) -> CharacterTable:
        if class_index not in self._class_tables:
            self._class_tables[class_index] = self._build(class_index)
        return self._class_tables[class_index]

    def _build(self, class_index: int) -> CharacterTable:
        rep = self.lattice.classes[class_index].element_set
        sub = subgroup_as_group(self.group, rep, name=self.lattice.label_of(class_index))
        return character_table(sub, conductor=self.conductor)

    def table_for(self, subgroup: frozenset) -> CharacterTable:
        if subgroup in self._conjugate_tables:
            return self._conjugate_tables[subgroup]
        class_index, g = self.lattice.class_of_subgroup(subgroup)
        base = self.class_table(class_index)
        if frozenset(base.group.elements) == subgroup:
            table = base
        else:
            rows = tuple(conjugate_function(row, g, self.group) for row in base.rows)
            table = CharacterTable(rows[0].group, rows[0].classes, rows)
        self._conjugate_tables[subgroup] = table
        return table


class DirectoryTables(TableProvider):
    """Tables loaded from <dir>/<group name>/<class label>.tbl files."""

    def __init__(self, group: Group, lattice: SubgroupLattice, directory: str | Path):
        super().__init__(group, lattice)
        self.directory = Path(directory)

    def _build(self, class_index: int) -> CharacterTable:
        label = self.lattice.label_of(class_index)
        path = self.directory / (self.group.name or "unnamed") / f"{label}.tbl"
        if not path.exists():
            raise MissingTable(f"no table file for class {label}: {path}")
        rep = self.lattice.classes[class_index].element_set
        sub = subgroup_as_group(self.group, rep, name=label)
        table = load_character_table(str(path), sub)
        return table


@dataclass(frozen=True)
class EqualizerLattice:
    family: tuple[int, ...]  # subgroup class indices
    block_sizes: tuple[int, ...]  # irreducible counts per family member
    basis: IntMatrix  # columns form a basis of the integer equalizer

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def total_dim(self) -> int:
        return self.basis.rows


def equalizer_lattice(family: list[int], provider: TableProvider,
                      lattice: SubgroupLattice) -> EqualizerLattice:
    """Integral basis of the equalizer of the two restriction-conjugation maps."""
    if not family:
        raise EmptyFamily("equalizer over an empty family")
    group = lattice.group
    subgroups = [lattice.classes[i].element_set for i in family]
    tables = [provider.class_table(i) for i in family]
    block_sizes = [t.size for t in tables]
    offsets = [0]
    for size in block_sizes:
        offsets.append(offsets[-1] + size)
    total = offsets[-1]

    rows: list[list[int]] = []
    for a, k_set in enumerate(subgroups):
        for b, l_set in enumerate(subgroups):
            decomposition = double_cosets(group, k_set, l_set)
            for coset in decomposition.cosets:
                inter = coset.intersection
                inter_table = provider.table_for(inter)
                inter_group = inter_table.group
                res_k = [
                    inter_table.coordinates(restrict(chi, inter_group))
                    for chi in tables[a].rows
                ]
                res_l = [
                    inter_table.coordinates(
                        restrict(conjugate_function(chi, coset.representative, group), inter_group)
                    )
                    for chi in tables[b].rows
                ]
                for r in range(inter_table.size):
                    row = [0] * total
                    for s in range(block_sizes[a]):
                        row[offsets[a] + s] += res_k[s][r]
                    for t in range(block_sizes[b]):
                        row[offsets[b] + t] -= res_l[t][r]
                    rows.append(row)
    matrix = IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, total)
    kernel = integer_kernel_basis(matrix) if rows else [
        [1 if i == j else 0 for i in range(total)] for j in range(total)
    ]
    basis = IntMatrix.from_rows([[col[i] for col in kernel] for i in range(total)]) \
        if kernel else IntMatrix.zeros(total, 0)
    return EqualizerLattice(tuple(family), tuple(block_sizes), basis)


def _equalizer_coordinates(eq: EqualizerLattice, stacked: list[int]) -> list[int]:
    """Coordinates of an equalizer point in the basis; exact, must be integral."""
    matrix = [[Fraction(eq.basis.entries[i][j]) for j in range(eq.basis.cols)]
              for i in range(eq.basis.rows)]
    rhs = [Fraction(v) for v in stacked]
    solution = _solve_rational_system(matrix, rhs)
    if solution is None:
        raise RestrictionError("vector is not in the equalizer lattice")
    out = []
    for v in solution:
        if v.denominator != 1:
            raise RestrictionError(f"non-integral equalizer coordinate {v}")
        out.append(int(v))
    return out


def _restriction_matrix(group: Group, top_table: CharacterTable, eq: EqualizerLattice,
                        provider: TableProvider, lattice: SubgroupLattice) -> IntMatrix:
    """Matrix of res: R(G) -> equalizer, in basis coordinates (rank x #irr)."""
    columns = []
    for chi in top_table.rows:
        stacked: list[int] = []
        for idx in eq.family:
            table = provider.class_table(idx)
            stacked.extend(table.coordinates(restrict(chi, table.group)))
        columns.append(_equalizer_coordinates(eq, stacked))
    return IntMatrix.from_rows([[columns[j][i] for j in range(len(columns))]
                                for i in range(eq.rank)])


@dataclass(frozen=True)
class ArtinRestrictionReport:
    order: int
    rank: int
    psi_res_ok: bool
    res_psi_ok: bool

    @property
    def verified(self) -> bool:
        return self.psi_res_ok and self.res_psi_ok


def verify_artin_restriction(table: MarksTable, n: int | float,
                             provider: TableProvider | None = None,
                             certificate: ArtinCertificate | None = None) -> ArtinRestrictionReport:
    """Check that restriction and the induced section form an order-isomorphism pair.

    psi sends a compatible family (m_A) to sum_A c_A ind_A^G(m_A), with the
    c_A taken from the Artin certificate.
    """
    lattice = table.lattice
    group = lattice.group
    provider = provider or TableProvider(group, lattice)
    certificate = certificate or artin_certificate(table, n)
    family = list(abelian_family(lattice, n).class_indices)
    eq = equalizer_lattice(family, provider, lattice)
    top_table = provider.class_table(lattice.full_index)
    order = certificate.order_n
    nirr = top_table.size

    res_matrix = _restriction_matrix(group, top_table, eq, provider, lattice)

    g_classes = top_table.classes
    psi_columns = []
    for j in range(eq.rank):
        stacked = [eq.basis.entries[i][j] for i in range(eq.basis.rows)]
        image: ClassFunction | None = None
        offset = 0
        for pos, idx in enumerate(eq.family):
            sub_table = provider.class_table(idx)
            coords = stacked[offset:offset + eq.block_sizes[pos]]
            offset += eq.block_sizes[pos]
            c = certificate.coefficients.get(idx, 0)
            if c == 0 or all(v == 0 for v in coords):
                continue
            part = induce(sub_table.from_coordinates(coords), group, g_classes).scale(c)
            image = part if image is None else image + part
        if image is None:
            psi_columns.append([0] * nirr)
        else:
            psi_columns.append(top_table.coordinates(image))
    psi_matrix = IntMatrix.from_rows([[psi_columns[j][i] for j in range(eq.rank)]
                                      for i in range(nirr)])

    left = psi_matrix @ res_matrix  # on R(G)
    right = res_matrix @ psi_matrix  # on the equalizer
    left_expected = IntMatrix.identity(nirr).scale(order)
    right_expected = IntMatrix.identity(eq.rank).scale(order)
    report = ArtinRestrictionReport(
        order=order,
        rank=eq.rank,
        psi_res_ok=left == left_expected,
        res_psi_ok=right == right_expected,
    )
    if not report.verified:
        witness = "psi.res" if not report.psi_res_ok else "res.psi"
        raise CompositeMismatch(witness)
    return report


@dataclass(frozen=True)
class BrauerRestrictionReport:
    rank: int
    irreducibles: int
    elementary_divisors: tuple[int, ...]

    @property
    def verified(self) -> bool:
        return (
            self.rank == self.irreducibles
            and len(self.elementary_divisors) == self.rank
            and all(d == 1 for d in self.elementary_divisors)
        )


def hyper_family(table: MarksTable, n: int | float) -> list[int]:
    """Classes that are n-hyper for at least one prime dividing the order."""
    lattice = table.lattice
    order = order_n(abelian_family(lattice, n), lattice)
    primes = _prime_divisors(order) or [2]
    degree = lattice.group.degree
    return [
        i for i, cls in enumerate(lattice.classes)
        if any(is_n_hyper(cls.element_set, n, p, degree) for p in primes)
    ]


def verify_brauer_restriction(table: MarksTable, n: int | float = 1,
                              provider: TableProvider | None = None) -> BrauerRestrictionReport:
    """Check that restriction onto the n-hyper equalizer is a lattice isomorphism."""
    lattice = table.lattice
    group = lattice.group
    provider = provider or TableProvider(group, lattice)
    certificate = brauer_certificate(table, n)
    if not certificate.verified:  # pragma: no cover - certificate is a theorem
        raise RestrictionError("Brauer certificate failed; restriction check not applicable")
    family = hyper_family(table, n)
    eq = equalizer_lattice(family, provider, lattice)
    top_table = provider.class_table(lattice.full_index)
    res_matrix = _restriction_matrix(group, top_table, eq, provider, lattice)
    _, d, _ = smith_normal_form(res_matrix)
    divisors = tuple(
        d.entries[i][i] for i in range(min(d.rows, d.cols)) if d.entries[i][i] != 0
    )
    report = BrauerRestrictionReport(
        rank=eq.rank,
        irreducibles=top_table.size,
        elementary_divisors=divisors,
    )
    if not report.verified:
        raise NotIsomorphism(divisors)
    return report
