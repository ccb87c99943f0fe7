"""Class functions, induction/restriction, reciprocity, and character tables."""

import random
from fractions import Fraction

import pytest

from burnside.exact import Cyclotomic
from burnside.characters import (
    CharacterTable,
    ClassFunction,
    DegreeSumMismatch,
    MalformedEntry,
    OrthogonalityFailure,
    character_table,
    conjugate_function,
    constant_function,
    frobenius_check,
    induce,
    inner_product,
    linear_characters,
    load_character_table,
    mackey_check,
    perm_character,
    restrict,
    table_to_text,
    _parse_cyclotomic_entry,
)
from burnside.groups import (
    builtin_group,
    close_under_product,
    conjugacy_classes,
    exponent,
    parse_cycles,
    subgroup_as_group,
    subgroup_lattice,
)

FIXTURES = ["C2", "C3", "C4", "C6", "C2xC2", "S3", "D4", "Q8", "A4", "S4"]


@pytest.fixture(scope="module")
def s3():
    return builtin_group("S3")


def explicit_subgroup(group, *cycle_strings):
    gens = [parse_cycles(s, group.degree) for s in cycle_strings]
    return close_under_product(group.degree, gens)


def random_class_function(group, classes, rng, conductor):
    values = []
    for _ in classes.classes:
        coeffs = [Fraction(rng.randint(-2, 2)) for _ in range(2)]
        values.append(Cyclotomic(conductor, coeffs))
    return ClassFunction(group, classes, tuple(values))


class TestPermCharacter:
    def test_c2_in_s3(self, s3):
        c2 = explicit_subgroup(s3, "(0 1)")
        chi = perm_character(s3, c2)
        assert [v.as_rational() for v in chi.values] == [3, 1, 0]

    def test_full_group(self, s3):
        chi = perm_character(s3, s3._element_set())
        assert all(v == 1 for v in chi.values)

    def test_trivial_subgroup(self, s3):
        chi = perm_character(s3, frozenset([s3.identity]))
        assert [v.as_rational() for v in chi.values] == [6, 0, 0]


class TestInduce:
    def test_trivial_character_of_c3(self, s3):
        c3 = explicit_subgroup(s3, "(0 1 2)")
        sub = subgroup_as_group(s3, c3)
        one = constant_function(sub, conjugacy_classes(sub), 1)
        induced = induce(one, s3)
        assert [v.as_rational() for v in induced.values] == [2, 0, 2]
        assert induced == perm_character(s3, c3)

    def test_induce_from_full_group_is_identity(self, s3):
        sub = subgroup_as_group(s3, s3._element_set())
        table = character_table(sub)
        for row in table.rows:
            assert induce(row, s3) == ClassFunction(s3, conjugacy_classes(s3), row.values)

    def test_nontrivial_character_of_c3(self, s3):
        c3 = explicit_subgroup(s3, "(0 1 2)")
        sub = subgroup_as_group(s3, c3)
        classes = conjugacy_classes(sub)
        z = Cyclotomic.zeta(3)
        # classes of C3 ordered e, g, g^2 with g the sorted-first 3-cycle
        lam = ClassFunction(sub, classes, (Cyclotomic.one(3), z, z * z))
        induced = induce(lam, s3)
        values = induced.values
        assert values[0] == 2
        assert values[1] == 0
        assert values[2] == -1


class TestRestrict:
    def test_perm_character_restriction(self, s3):
        c2 = explicit_subgroup(s3, "(0 1)")
        sub = subgroup_as_group(s3, c2)
        chi = perm_character(s3, c2)
        res = restrict(chi, sub)
        assert [v.as_rational() for v in res.values] == [3, 1]

    def test_constant_restricts_to_constant(self, s3):
        one = constant_function(s3, conjugacy_classes(s3), 1)
        c3 = subgroup_as_group(s3, explicit_subgroup(s3, "(0 1 2)"))
        assert all(v == 1 for v in restrict(one, c3).values)

    def test_restrict_to_trivial_gives_degree(self, s3):
        chi = perm_character(s3, explicit_subgroup(s3, "(0 1)"))
        triv = subgroup_as_group(s3, frozenset([s3.identity]))
        res = restrict(chi, triv)
        assert [v.as_rational() for v in res.values] == [3]


class TestFrobenius:
    def test_worked_example(self, s3):
        c2 = subgroup_as_group(s3, explicit_subgroup(s3, "(0 1)"))
        e = constant_function(c2, conjugacy_classes(c2), 1)
        m = perm_character(s3, explicit_subgroup(s3, "(0 1 2)"))
        assert frobenius_check(e, m, s3)

    def test_zero(self, s3):
        c2 = subgroup_as_group(s3, explicit_subgroup(s3, "(0 1)"))
        zero = constant_function(c2, conjugacy_classes(c2), 0)
        m = perm_character(s3, explicit_subgroup(s3, "(0 1 2)"))
        assert frobenius_check(zero, m, s3)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_random_class_functions(self, name):
        group = builtin_group(name)
        lattice = subgroup_lattice(group)
        cond = exponent(group)
        g_classes = conjugacy_classes(group)
        rng = random.Random(hash(name) % 100000)
        for _ in range(10):
            cls = lattice.classes[rng.randrange(len(lattice.classes))]
            sub = subgroup_as_group(group, cls.element_set)
            e = random_class_function(sub, conjugacy_classes(sub), rng, cond)
            m = random_class_function(group, g_classes, rng, cond)
            assert frobenius_check(e, m, group)


class TestMackey:
    def test_worked_example(self, s3):
        c2 = explicit_subgroup(s3, "(0 1)")
        sub = subgroup_as_group(s3, c2)
        xi = constant_function(sub, conjugacy_classes(sub), 1)
        assert mackey_check(c2, xi, s3)
        # by hand: left side res(ind 1) = (3, 1); right side (1,1) + (2,0)
        left = restrict(induce(xi, s3), sub)
        assert [v.as_rational() for v in left.values] == [3, 1]

    def test_k_is_full_group(self, s3):
        c3 = subgroup_as_group(s3, explicit_subgroup(s3, "(0 1 2)"))
        xi = constant_function(c3, conjugacy_classes(c3), 1)
        assert mackey_check(s3._element_set(), xi, s3)

    def test_h_is_full_group(self, s3):
        sub = subgroup_as_group(s3, s3._element_set())
        xi = perm_character(s3, explicit_subgroup(s3, "(0 1)"))
        xi = ClassFunction(sub, conjugacy_classes(sub), xi.values)
        c2 = explicit_subgroup(s3, "(0 1)")
        assert mackey_check(c2, xi, s3)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_random_class_functions(self, name):
        group = builtin_group(name)
        lattice = subgroup_lattice(group)
        cond = exponent(group)
        rng = random.Random(hash(name) % 99991)
        for _ in range(6):
            hcls = lattice.classes[rng.randrange(len(lattice.classes))]
            kcls = lattice.classes[rng.randrange(len(lattice.classes))]
            sub = subgroup_as_group(group, hcls.element_set)
            xi = random_class_function(sub, conjugacy_classes(sub), rng, cond)
            assert mackey_check(kcls.element_set, xi, group)


class TestReciprocity:
    @pytest.mark.parametrize("name", ["S3", "D4", "A4", "Q8"])
    def test_inner_product_form(self, name):
        group = builtin_group(name)
        lattice = subgroup_lattice(group)
        cond = exponent(group)
        top = character_table(subgroup_as_group(group, group._element_set(), name), cond)
        for cls in lattice.classes:
            sub = subgroup_as_group(group, cls.element_set)
            for xi in character_table(sub, cond).rows:
                up = induce(xi, group)
                for chi in top.rows:
                    chi_on_group = ClassFunction(group, conjugacy_classes(group), chi.values)
                    lhs = inner_product(up, chi_on_group)
                    rhs = inner_product(xi, restrict(chi_on_group, sub))
                    assert lhs == rhs


class TestCharacterTables:
    @pytest.mark.parametrize("name", FIXTURES + ["trivial"])
    def test_computed_tables_validate(self, name):
        group = builtin_group(name)
        table = character_table(group)
        assert sum(d * d for d in table.degrees()) == group.order

    def test_s3_degrees(self):
        assert character_table(builtin_group("S3")).degrees() == [1, 1, 2]

    def test_s4_degrees(self):
        assert character_table(builtin_group("S4")).degrees() == [1, 1, 2, 3, 3]

    def test_q8_degrees(self):
        assert character_table(builtin_group("Q8")).degrees() == [1, 1, 1, 1, 2]

    def test_linear_characters_count(self):
        # |G/[G,G]|: S3 -> 2, A4 -> 3, D4 -> 4, Q8 -> 4, S4 -> 2
        for name, count in [("S3", 2), ("A4", 3), ("D4", 4), ("Q8", 4), ("S4", 2)]:
            group = builtin_group(name)
            assert len(linear_characters(group, exponent(group))) == count

    def test_conjugate_transport_preserves_tables(self):
        group = builtin_group("S4")
        lattice = subgroup_lattice(group)
        cond = exponent(group)
        cls = next(c for c in lattice.classes if c.order == 3)
        base = character_table(subgroup_as_group(group, cls.element_set), cond)
        g = group.elements[5]
        rows = tuple(conjugate_function(row, g, group) for row in base.rows)
        CharacterTable(rows[0].group, rows[0].classes, rows)  # validates

    def test_coordinates_round_trip(self):
        group = builtin_group("A4")
        table = character_table(group)
        rng = random.Random(5)
        coords = [rng.randint(-3, 3) for _ in range(table.size)]
        chi = table.from_coordinates(coords)
        assert table.coordinates(chi) == coords


class TestTableFiles:
    def test_parse_entries(self):
        assert _parse_cyclotomic_entry("2", 6) == 2
        assert _parse_cyclotomic_entry("-1", 6) == -1
        assert _parse_cyclotomic_entry("z^2", 6) == Cyclotomic.zeta(6, 2)
        assert _parse_cyclotomic_entry("-z", 6) == -Cyclotomic.zeta(6)
        assert _parse_cyclotomic_entry("1+z", 6) == Cyclotomic.zeta(6) + 1
        assert _parse_cyclotomic_entry("-1+2*z^1", 6) == Cyclotomic.zeta(6) * 2 - 1
        with pytest.raises(MalformedEntry):
            _parse_cyclotomic_entry("x", 6)
        with pytest.raises(MalformedEntry):
            _parse_cyclotomic_entry("1**z", 6)

    def test_s3_file_round_trip(self, tmp_path, s3):
        table = character_table(s3)
        path = tmp_path / "s3.tbl"
        path.write_text(table_to_text(table))
        loaded = load_character_table(str(path), s3)
        assert loaded.degrees() == table.degrees()

    def test_s3_handwritten(self, tmp_path, s3):
        text = (
            "group: S3\n"
            "conductor: 6\n"
            "class: () 1\n"
            "class: (1 2) 3\n"
            "class: (0 1 2) 2\n"
            "row: 1 1 1\n"
            "row: 1 -1 1\n"
            "row: 2 0 -1\n"
        )
        path = tmp_path / "s3.tbl"
        path.write_text(text)
        table = load_character_table(str(path), s3)
        assert table.degrees() == [1, 1, 2]

    def test_a4_with_cyclotomic_entries(self, tmp_path):
        group = builtin_group("A4")
        # conductor 3 entries: the two nontrivial linear characters take values
        # z and z^2 on the 3-cycle classes
        classes = conjugacy_classes(group)
        reps = classes.representatives
        from burnside.groups import perm_to_cycles

        lines = ["group: A4", "conductor: 3"]
        for rep, size in zip(reps, classes.sizes):
            lines.append(f"class: {perm_to_cycles(rep)} {size}")
        # rows in the group's own class order: identity, double transpositions,
        # then the two 3-cycle classes
        lines.append("row: 1 1 1 1")
        lines.append("row: 1 1 z z^2")
        lines.append("row: 1 1 z^2 z")
        lines.append("row: 3 -1 0 0")
        path = tmp_path / "a4.tbl"
        path.write_text("\n".join(lines) + "\n")
        table = load_character_table(str(path), group)
        assert table.degrees() == [1, 1, 1, 3]

    def test_duplicated_row_fails_orthogonality(self, tmp_path, s3):
        text = (
            "group: S3\nconductor: 6\n"
            "class: () 1\nclass: (1 2) 3\nclass: (0 1 2) 2\n"
            "row: 1 1 1\nrow: 1 1 1\nrow: 2 0 -1\n"
        )
        path = tmp_path / "bad.tbl"
        path.write_text(text)
        with pytest.raises(OrthogonalityFailure):
            load_character_table(str(path), s3)

    def test_degree_sum_mismatch(self, tmp_path, s3):
        text = (
            "group: S3\nconductor: 6\n"
            "class: () 1\nclass: (1 2) 3\nclass: (0 1 2) 2\n"
            "row: 1 1 1\nrow: 1 -1 1\nrow: 1 1 1\n"
        )
        path = tmp_path / "bad.tbl"
        path.write_text(text)
        with pytest.raises((DegreeSumMismatch, OrthogonalityFailure)):
            load_character_table(str(path), s3)

    def test_malformed_entry(self, tmp_path, s3):
        text = (
            "group: S3\nconductor: 6\n"
            "class: () 1\nclass: (1 2) 3\nclass: (0 1 2) 2\n"
            "row: 1 1 oops\nrow: 1 -1 1\nrow: 2 0 -1\n"
        )
        path = tmp_path / "bad.tbl"
        path.write_text(text)
        with pytest.raises(MalformedEntry):
            load_character_table(str(path), s3)

    def test_wrong_class_size(self, tmp_path, s3):
        text = (
            "group: S3\nconductor: 6\n"
            "class: () 1\nclass: (1 2) 2\nclass: (0 1 2) 3\n"
            "row: 1 1 1\nrow: 1 -1 1\nrow: 2 0 -1\n"
        )
        path = tmp_path / "bad.tbl"
        path.write_text(text)
        with pytest.raises(MalformedEntry):
            load_character_table(str(path), s3)

    @pytest.mark.parametrize("name", FIXTURES + ["trivial"])
    def test_shipped_tables_match_computed(self, name):
        from pathlib import Path
        from burnside.restriction import DirectoryTables, TableProvider

        directory = Path(__file__).parent.parent / "src" / "burnside" / "data" / "tables"
        group = builtin_group(name)
        lattice = subgroup_lattice(group)
        shipped = DirectoryTables(group, lattice, directory)
        computed = TableProvider(group, lattice)
        for idx in range(len(lattice.classes)):
            a = shipped.class_table(idx)
            b = computed.class_table(idx)
            keys_a = sorted(tuple(tuple(v.to_conductor(12).coeffs for v in row.values)) for row in a.rows)
            keys_b = sorted(tuple(tuple(v.to_conductor(12).coeffs for v in row.values)) for row in b.rows)
            assert keys_a == keys_b
