"""Exact class functions and representation-ring data for finite groups.

Class functions take cyclotomic values on element conjugacy classes.
Character tables for the small groups handled here are either loaded from
validated fixture files or computed exactly: abelian groups by enumerating
homomorphisms into roots of unity, the rest by reducing characters induced
from linear characters of abelian subgroups (all groups in scope are
monomial, and the construction is validated by both orthogonality relations
before a table is returned).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Cyclotomic
from .groups import (
    Group,
    Perm,
    conjugacy_classes,
    ConjugacyClasses,
    exponent,
    is_abelian_subgroup,
    left_cosets,
    perm_inv,
    perm_mul,
    perm_order,
    perm_to_cycles,
    parse_cycles,
    subgroup_as_group,
    subgroup_lattice,
)


class CharacterError(Exception):
    pass


class MalformedEntry(CharacterError):
    """A table file entry is not a valid cyclotomic expression."""


class OrthogonalityFailure(CharacterError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"rows {i} and {j} violate orthogonality")


class DegreeSumMismatch(CharacterError):
    pass


class TableComputationError(CharacterError):
    """The character hunt failed to close; outside the supported group range."""


@dataclass(frozen=True)
class ClassFunction:
    """A cyclotomic-valued function on the element conjugacy classes of a group."""

    group: Group
    classes: ConjugacyClasses
    values: tuple[Cyclotomic, ...]

    def __post_init__(self):
        assert len(self.values) == len(self.classes.classes)

    def value_at(self, element: Perm) -> Cyclotomic:
        return self.values[self.classes.index_of(element)]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.classes, tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.classes, tuple(a - b for a, b in zip(self.values, other.values, strict=True)))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.classes, tuple(a * b for a, b in zip(self.values, other.values, strict=True)))

    def scale(self, k) -> "ClassFunction":
        return ClassFunction(self.group, self.classes, tuple(v * k for v in self.values))

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and all(a == b for a, b in zip(self.values, other.values)) \
            and len(self.values) == len(other.values)

    __hash__ = None

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)


def constant_function(group: Group, classes: ConjugacyClasses, value, conductor: int = 1) -> ClassFunction:
    c = Cyclotomic.from_rational(Fraction(value), conductor) if not isinstance(value, Cyclotomic) else value
    return ClassFunction(group, classes, tuple(c for _ in classes.classes))


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_g a(g) * conj(b(g)), exactly."""
    total = Cyclotomic.zero()
    for size, va, vb in zip(a.classes.sizes, a.values, b.values):
        total = total + va * vb.conjugate() * size
    return total * Fraction(1, a.group.order)


def inner_product_int(a: ClassFunction, b: ClassFunction) -> int:
    value = inner_product(a, b).as_rational()
    if value.denominator != 1:
        raise CharacterError(f"inner product {value} is not an integer")
    return int(value)


# ---------------------------------------------------------------------------
# permutation characters, induction, restriction, conjugation


def perm_character(group: Group, subgroup: frozenset, classes: ConjugacyClasses | None = None,
                   conductor: int = 1) -> ClassFunction:
    """Character of the action on G/H: g -> |(G/H)^g|."""
    classes = classes or conjugacy_classes(group)
    cosets = left_cosets(group, subgroup)
    values = []
    for rep in classes.representatives:
        count = 0
        for c in cosets:
            if perm_mul(perm_mul(perm_inv(c), rep), c) in subgroup:
                count += 1
        values.append(Cyclotomic.from_rational(count, conductor))
    return ClassFunction(group, classes, tuple(values))


def induce(xi: ClassFunction, group: Group, classes: ConjugacyClasses | None = None) -> ClassFunction:
    """ind_H^G xi at g: sum of xi(k^-1 g k) over the cosets kH fixed by g."""
    classes = classes or conjugacy_classes(group)
    subgroup = xi.group._element_set()
    cosets = left_cosets(group, subgroup)
    conductor = xi.values[0].conductor if xi.values else 1
    values = []
    for rep in classes.representatives:
        total = Cyclotomic.zero(conductor)
        for c in cosets:
            moved = perm_mul(perm_mul(perm_inv(c), rep), c)
            if moved in subgroup:
                total = total + xi.value_at(moved)
        values.append(total)
    return ClassFunction(group, classes, tuple(values))


def restrict(chi: ClassFunction, subgroup: Group) -> ClassFunction:
    """Pull values back along the inclusion of an explicit subgroup."""
    sub_classes = conjugacy_classes(subgroup)
    values = tuple(chi.value_at(rep) for rep in sub_classes.representatives)
    return ClassFunction(subgroup, sub_classes, values)


def conjugate_function(xi: ClassFunction, g: Perm, parent: Group) -> ClassFunction:
    """Transport xi on H to g H g^-1 by x -> xi(g^-1 x g)."""
    gi = perm_inv(g)
    moved = frozenset(perm_mul(perm_mul(g, h), gi) for h in xi.group.elements)
    target = subgroup_as_group(parent, moved)
    target_classes = conjugacy_classes(target)
    values = tuple(xi.value_at(perm_mul(perm_mul(gi, rep), g)) for rep in target_classes.representatives)
    return ClassFunction(target, target_classes, values)


def frobenius_check(e: ClassFunction, m: ClassFunction, group: Group) -> bool:
    """ind(e) * m == ind(e * res m), exactly."""
    classes = conjugacy_classes(group)
    sub = subgroup_as_group(group, e.group._element_set())
    left = induce(e, group, classes) * m
    right = induce(e * restrict(m, sub), group, classes)
    return left == right


def mackey_check(k_sub: frozenset, xi: ClassFunction, group: Group) -> bool:
    """res_K ind_H xi == sum over K\\G/H of ind res of the conjugated xi."""
    from .groups import double_cosets

    k_group = subgroup_as_group(group, k_sub)
    left = restrict(induce(xi, group), k_group)
    h_sub = xi.group._element_set()
    decomposition = double_cosets(group, k_sub, h_sub)
    k_classes = conjugacy_classes(k_group)
    conductor = xi.values[0].conductor if xi.values else 1
    total = constant_function(k_group, k_classes, Cyclotomic.zero(conductor))
    for coset in decomposition.cosets:
        conj = conjugate_function(xi, coset.representative, group)
        inter = subgroup_as_group(group, coset.intersection)
        piece = induce(restrict(conj, inter), k_group, k_classes)
        total = total + piece
    return left == total


# ---------------------------------------------------------------------------
# character tables


@dataclass(frozen=True)
class CharacterTable:
    group: Group
    classes: ConjugacyClasses
    rows: tuple[ClassFunction, ...]

    def __post_init__(self):
        validate_table(self)

    @property
    def size(self) -> int:
        return len(self.rows)

    def degrees(self) -> list[int]:
        return [int(row.degree.as_rational()) for row in self.rows]

    def coordinates(self, chi: ClassFunction) -> list[int]:
        """Integer coordinates of a virtual character in the irreducible basis."""
        return [inner_product_int(chi, row) for row in self.rows]

    def from_coordinates(self, coords: Sequence[int]) -> ClassFunction:
        total = constant_function(self.group, self.classes, Cyclotomic.zero())
        for c, row in zip(coords, self.rows):
            if c:
                total = total + row.scale(c)
        return total


def validate_table(table: CharacterTable) -> None:
    group = table.group
    rows = table.rows
    n_classes = len(table.classes.classes)
    if len(rows) != n_classes:
        raise DegreeSumMismatch(f"{len(rows)} rows for {n_classes} classes")
    degrees = []
    for row in rows:
        deg = row.degree.as_rational()
        if deg.denominator != 1 or deg <= 0:
            raise DegreeSumMismatch(f"bad degree {deg}")
        degrees.append(int(deg))
    if sum(d * d for d in degrees) != group.order:
        raise DegreeSumMismatch(f"degree squares sum to {sum(d * d for d in degrees)}, not {group.order}")
    if any(not v == 1 for v in rows[0].values):
        raise CharacterError("first row must be the trivial character")
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            expected = group.order if i == j else 0
            total = Cyclotomic.zero()
            for size, vi, vj in zip(table.classes.sizes, rows[i].values, rows[j].values):
                total = total + vi * vj.conjugate() * size
            if not total == expected:
                raise OrthogonalityFailure(i, j)
    # column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = delta * |C_G(g_c)|
    for a in range(n_classes):
        for b in range(a, n_classes):
            expected = group.order // table.classes.sizes[a] if a == b else 0
            total = Cyclotomic.zero()
            for row in rows:
                total = total + row.values[a] * row.values[b].conjugate()
            if not total == expected:
                raise OrthogonalityFailure(a, b)


def linear_characters(group: Group, conductor: int) -> list[ClassFunction]:
    """All homomorphisms G -> roots of unity, as class functions."""
    classes = conjugacy_classes(group)
    gens = _small_generating_set(group)
    if not gens:
        return [constant_function(group, classes, Cyclotomic.one(conductor), conductor)]
    choices: list[list[int]] = []
    for g in gens:
        d = perm_order(g)
        step = conductor // d
        choices.append([step * t for t in range(d)])
    out = []
    for assignment in _cartesian(choices):
        table = _extend_homomorphism(group, gens, assignment, conductor)
        if table is not None:
            values = tuple(Cyclotomic.zeta(conductor, table[rep]) for rep in classes.representatives)
            out.append(ClassFunction(group, classes, values))
    # one homomorphism per element of the abelianization
    seen = []
    unique = []
    for chi in out:
        key = tuple(v.coeffs for v in chi.values)
        if key not in seen:
            seen.append(key)
            unique.append(chi)
    return unique


def _small_generating_set(group: Group) -> list[Perm]:
    gens: list[Perm] = []
    from .groups import close_under_product

    current = frozenset([group.identity])
    for g in group.elements:
        if g not in current:
            gens.append(g)
            current = close_under_product(group.degree, gens, cap=group.order)
            if len(current) == group.order:
                break
    return gens


def _cartesian(choices: list[list[int]]):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _cartesian(choices[1:]):
            yield (head,) + tail


def _extend_homomorphism(group: Group, gens: list[Perm], powers: Sequence[int],
                         conductor: int) -> dict[Perm, int] | None:
    """Exponent table g -> k with chi(g) = zeta^k, or None when inconsistent."""
    table = {group.identity: 0}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, k in zip(gens, powers):
                y = perm_mul(x, g)
                val = (table[x] + k) % conductor
                if y in table:
                    if table[y] != val:
                        return None
                else:
                    table[y] = val
                    nxt.append(y)
        frontier = nxt
    # verify multiplicativity on all pairs (cheap at these orders)
    for a in group.elements:
        for g, k in zip(gens, powers):
            if (table[a] + k) % conductor != table[perm_mul(a, g)]:
                return None
    return table


def character_table(group: Group, conductor: int | None = None) -> CharacterTable:
    """Exact character table; conductor defaults to the group exponent."""
    conductor = conductor or exponent(group)
    classes = conjugacy_classes(group)
    if is_abelian_subgroup(group.elements):
        rows = linear_characters(group, conductor)
        if len(rows) != group.order:
            raise TableComputationError("abelian dual has wrong size")
        ordered = _order_rows(rows)
        return CharacterTable(group, classes, tuple(ordered))
    rows = _hunt_irreducibles(group, classes, conductor)
    return CharacterTable(group, classes, tuple(_order_rows(rows)))


def _hunt_irreducibles(group: Group, classes: ConjugacyClasses, conductor: int) -> list[ClassFunction]:
    candidates: list[ClassFunction] = []
    candidates.extend(linear_characters(group, conductor))
    lattice = subgroup_lattice(group)
    for cls in lattice.classes:
        if not cls.is_abelian or cls.order == group.order:
            continue
        sub = subgroup_as_group(group, cls.element_set)
        for lam in linear_characters(sub, conductor):
            candidates.append(induce(lam, group, classes))

    found: list[ClassFunction] = []
    target = group.order

    def settled() -> bool:
        return sum(int(chi.degree.as_rational()) ** 2 for chi in found) == target

    def try_candidate(theta: ClassFunction) -> bool:
        remainder = theta
        for chi in found:
            coeff = inner_product_int(remainder, chi)
            if coeff:
                remainder = remainder - chi.scale(coeff)
        if remainder.is_zero():
            return False
        norm = inner_product(remainder, remainder).as_rational()
        if norm == 1:
            found.append(remainder)
            return True
        root = _integer_sqrt(norm)
        if root is not None and root > 1:
            scaled = remainder.scale(Fraction(1, root))
            if all(v.is_integral() for v in scaled.values):
                found.append(scaled)
                return True
        return False

    rounds = 0
    pool = list(candidates)
    while not settled() and rounds < 4:
        progress = False
        for theta in pool:
            if settled():
                break
            if try_candidate(theta):
                progress = True
        if settled():
            break
        if not progress:
            # widen the pool with products of what we already have
            extra = [a * b for a in found for b in found]
            extra += [a * b for a in found for b in candidates]
            pool = extra
        rounds += 1
    if not settled():
        raise TableComputationError(f"could not complete the table of {group!r}")
    return found


def _integer_sqrt(value: Fraction) -> int | None:
    if value.denominator != 1 or value < 0:
        return None
    n = int(value)
    r = math.isqrt(n)
    return r if r * r == n else None


def _order_rows(rows: list[ClassFunction]) -> list[ClassFunction]:
    def key(chi: ClassFunction):
        return (
            chi.degree.as_rational(),
            [tuple(v.coeffs) for v in chi.values],
        )

    ordered = sorted(rows, key=key)
    # the trivial character sorts first among degree-1 rows with all-one values;
    # make that explicit so validation's first-row check is meaningful
    for idx, chi in enumerate(ordered):
        if all(v == 1 for v in chi.values):
            ordered.insert(0, ordered.pop(idx))
            break
    return ordered


# ---------------------------------------------------------------------------
# character table files


_TERM_RE = re.compile(r"^(?:([+-]?\d+)|([+-]))?(?:(?:\*)?z(?:\^(\d+))?)?$")


def _parse_cyclotomic_entry(text: str, conductor: int) -> Cyclotomic:
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise MalformedEntry("empty entry")
    terms = re.findall(r"[+-]?[^+-]+", cleaned)
    if "".join(terms) != cleaned:
        raise MalformedEntry(f"cannot split {text!r} into terms")
    total = Cyclotomic.zero(conductor)
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or not term:
            raise MalformedEntry(f"bad term {term!r} in {text!r}")
        digits, bare_sign, power = m.group(1), m.group(2), m.group(3)
        has_z = "z" in term
        if digits is None and bare_sign is None and not has_z:
            raise MalformedEntry(f"bad term {term!r} in {text!r}")
        if bare_sign is not None and not has_z:
            raise MalformedEntry(f"bad term {term!r} in {text!r}")
        coeff = int(digits) if digits is not None else (-1 if bare_sign == "-" else 1)
        if has_z:
            k = int(power) if power is not None else 1
            total = total + Cyclotomic.zeta(conductor, k) * coeff
        else:
            total = total + Cyclotomic.from_rational(coeff, conductor)
    return total


def load_character_table(path: str, group: Group) -> CharacterTable:
    """Load and validate a character table file for an explicit group.

    Format: `group:` and `conductor:` headers, one `class: <cycles> <size>`
    line per conjugacy class (representative in cycle notation), then one
    `row:` line per irreducible with entries like `2`, `-1`, `z^2`, `1+z`.
    """
    with open(path, "r", encoding="utf-8") as handle:
        lines = [ln.strip() for ln in handle if ln.strip() and not ln.strip().startswith("#")]
    conductor = None
    class_reps: list[Perm] = []
    class_sizes: list[int] = []
    raw_rows: list[list[str]] = []
    for line in lines:
        if line.lower().startswith("group:"):
            continue
        if line.lower().startswith("conductor:"):
            conductor = int(line.split(":", 1)[1].strip())
            continue
        if line.lower().startswith("class:"):
            body = line.split(":", 1)[1].strip()
            rep_text, size_text = body.rsplit(None, 1)
            class_reps.append(parse_cycles(rep_text.strip(), degree=group.degree))
            class_sizes.append(int(size_text))
            continue
        if line.lower().startswith("row:"):
            raw_rows.append(line.split(":", 1)[1].split())
            continue
        raise MalformedEntry(f"unrecognized line {line!r}")
    if conductor is None:
        raise MalformedEntry("missing conductor header")
    classes = conjugacy_classes(group)
    if len(class_reps) != len(classes.classes):
        raise MalformedEntry(
            f"file has {len(class_reps)} classes, group has {len(classes.classes)}"
        )
    # map file columns onto the group's class order via the representatives
    column_of: list[int] = []
    for rep, size in zip(class_reps, class_sizes):
        if rep not in group._element_set():
            raise MalformedEntry(f"representative {perm_to_cycles(rep)} not in group")
        idx = classes.index_of(rep)
        if classes.sizes[idx] != size:
            raise MalformedEntry(f"class {perm_to_cycles(rep)} has size {classes.sizes[idx]}, file says {size}")
        column_of.append(idx)
    if sorted(column_of) != list(range(len(classes.classes))):
        raise MalformedEntry("file classes do not cover the group's classes")
    rows = []
    for raw in raw_rows:
        if len(raw) != len(class_reps):
            raise MalformedEntry(f"row has {len(raw)} entries for {len(class_reps)} classes")
        values: list[Cyclotomic | None] = [None] * len(class_reps)
        for text, col in zip(raw, column_of):
            values[col] = _parse_cyclotomic_entry(text, conductor)
        rows.append(ClassFunction(group, classes, tuple(values)))
    trivial_first = sorted(rows, key=lambda r: not all(v == 1 for v in r.values))
    return CharacterTable(group, classes, tuple(trivial_first))


def table_to_text(table: CharacterTable) -> str:
    """Serialize a table in the load_character_table file format."""
    lines = [f"group: {table.group.name or 'unnamed'}"]
    conductor = 1
    for row in table.rows:
        for v in row.values:
            conductor = math.lcm(conductor, v.conductor)
    lines.append(f"conductor: {conductor}")
    for rep, size in zip(table.classes.representatives, table.classes.sizes):
        lines.append(f"class: {perm_to_cycles(rep)} {size}")
    for row in table.rows:
        entries = []
        for v in row.values:
            vv = v.to_conductor(conductor)
            entries.append(_format_cyclotomic(vv))
        lines.append("row: " + " ".join(entries))
    return "\n".join(lines) + "\n"


def _format_cyclotomic(value: Cyclotomic) -> str:
    parts = []
    for k, c in enumerate(value.coeffs):
        if c == 0:
            continue
        assert c.denominator == 1, "character values are algebraic integers"
        n = int(c)
        if k == 0:
            parts.append(f"{n:+d}")
        elif n == 1:
            parts.append(f"+z^{k}")
        elif n == -1:
            parts.append(f"-z^{k}")
        else:
            parts.append(f"{n:+d}*z^{k}")
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text
