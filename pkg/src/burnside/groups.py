"""Finite permutation groups, subgroup lattices, and subgroup classifications.

Permutations are tuples mapping point i to perm[i]; composition is
(p * q)(i) = p(q(i)).  Subgroups are frozensets of permutations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]
Subgroup = frozenset

DEFAULT_ORDER_CAP = 5000


class GroupError(Exception):
    """Base class for group-construction and classification errors."""


class MalformedCycle(GroupError):
    """A generator string is not valid disjoint-cycle notation."""


class OrderCapExceeded(GroupError):
    """Enumeration exceeded the configured element cap."""


class NotAbelian(GroupError):
    """An abelian-only operation was applied to a nonabelian subgroup."""


# ---------------------------------------------------------------------------
# permutations


def perm_identity(degree: int) -> Perm:
    return tuple(range(degree))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Composition p after q: i -> p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_conj(g: Perm, x: Perm) -> Perm:
    """Conjugate g * x * g^-1."""
    return perm_mul(perm_mul(g, x), perm_inv(g))


def perm_order(p: Perm) -> int:
    e = perm_identity(len(p))
    q, n = p, 1
    while q != e:
        q = perm_mul(q, p)
        n += 1
    return n


def perm_to_cycles(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        parts.append("(" + " ".join(str(v) for v in cycle) + ")")
    return "".join(parts) if parts else "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse disjoint-cycle notation like "(0 1 2)(3 4)" into a permutation."""
    stripped = text.strip()
    if stripped in ("()", "e", ""):
        return perm_identity(degree or 1)
    consumed = _CYCLE_RE.sub("", stripped).strip()
    if consumed:
        raise MalformedCycle(f"unexpected text {consumed!r} in {text!r}")
    if stripped.count("(") != stripped.count(")") or not stripped.startswith("("):
        raise MalformedCycle(f"unbalanced parentheses in {text!r}")
    cycles: list[list[int]] = []
    maxpoint = -1
    for body in _CYCLE_RE.findall(stripped):
        points = []
        for token in re.split(r"[,\s]+", body.strip()):
            if not token:
                continue
            if not token.isdigit():
                raise MalformedCycle(f"bad point {token!r} in {text!r}")
            points.append(int(token))
        if len(points) != len(set(points)):
            raise MalformedCycle(f"repeated point in cycle {body!r}")
        if points:
            cycles.append(points)
            maxpoint = max(maxpoint, max(points))
    d = degree if degree is not None else maxpoint + 1
    if maxpoint >= d:
        raise MalformedCycle(f"point {maxpoint} out of range for degree {d}")
    out = list(range(max(d, 1)))
    for cycle in cycles:
        for i, pt in enumerate(cycle):
            out[pt] = cycle[(i + 1) % len(cycle)]
    return tuple(out)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class Group:
    """A finite permutation group with fully enumerated elements."""

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    name: str = ""

    def __post_init__(self):
        assert self.elements, "a group has at least the identity"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return perm_identity(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in self._element_set()

    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __repr__(self):
        label = self.name or f"degree-{self.degree} group"
        return f"Group({label}, order {self.order})"


def close_under_product(degree: int, generators: Iterable[Perm], cap: int = DEFAULT_ORDER_CAP) -> frozenset:
    """Closure of the generators under composition (and hence inverses)."""
    identity = perm_identity(degree)
    gens = [g for g in generators if g != identity]
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise OrderCapExceeded(f"order exceeds cap {cap}")
        frontier = nxt
    return frozenset(elements)


def group_from_generators(generators: Sequence[Perm], name: str = "", degree: int | None = None,
                          cap: int = DEFAULT_ORDER_CAP) -> Group:
    d = degree if degree is not None else max((len(g) for g in generators), default=1)
    gens = tuple(_pad(g, d) for g in generators)
    elements = close_under_product(d, gens, cap)
    return Group(d, gens, tuple(sorted(elements)), name)


def _pad(p: Perm, degree: int) -> Perm:
    if len(p) == degree:
        return p
    if len(p) > degree:
        raise ValueError("permutation exceeds degree")
    return p + tuple(range(len(p), degree))


def _cyclic(n: int) -> list[str]:
    return ["(" + " ".join(str(i) for i in range(n)) + ")"]


BUILTIN_GROUPS: dict[str, list[str]] = {
    "trivial": [],
    "C1": [],
    "C2": _cyclic(2),
    "C3": _cyclic(3),
    "C4": _cyclic(4),
    "C6": _cyclic(6),
    "C2xC2": ["(0 1)", "(2 3)"],
    "S3": ["(0 1)", "(0 1 2)"],
    "D4": ["(0 1 2 3)", "(1 3)"],
    "A4": ["(0 1 2)", "(0 1)(2 3)"],
    "S4": ["(0 1)", "(0 1 2 3)"],
}

# Q8 on itself by left multiplication; points ordered 1,-1,i,-i,j,-j,k,-k.
_Q8_GENERATORS = [
    (2, 3, 1, 0, 6, 7, 5, 4),  # left multiplication by i
    (4, 5, 7, 6, 1, 0, 2, 3),  # left multiplication by j
]


def builtin_group(name: str, cap: int = DEFAULT_ORDER_CAP) -> Group:
    if name in ("trivial", "C1"):
        return Group(1, (), (perm_identity(1),), name)
    if name == "Q8":
        return group_from_generators(_Q8_GENERATORS, name="Q8", cap=cap)
    if name not in BUILTIN_GROUPS:
        raise GroupError(f"unknown builtin group {name!r}")
    gens = [parse_cycles(s) for s in BUILTIN_GROUPS[name]]
    return group_from_generators(gens, name=name, cap=cap)


def parse_group(spec: str, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Build a Group from a definition text or a builtin fixture name.

    A definition text has one generator per line in disjoint-cycle notation
    and an optional "name:" header line.
    """
    stripped = spec.strip()
    if "\n" not in stripped and not stripped.startswith("(") and stripped not in ("()", "e", ""):
        return builtin_group(stripped, cap=cap)
    name = ""
    gen_strings = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("name:"):
            name = line.split(":", 1)[1].strip()
            continue
        gen_strings.append(line)
    gens = [parse_cycles(s) for s in gen_strings]
    if not gens:
        return Group(1, (), (perm_identity(1),), name or "trivial")
    degree = max(len(g) for g in gens)
    gens = [_pad(g, degree) for g in gens]
    return group_from_generators(gens, name=name, cap=cap)


# ---------------------------------------------------------------------------
# element conjugacy classes


@dataclass(frozen=True)
class ConjugacyClasses:
    """Element conjugacy classes with a deterministic order (identity first)."""

    group: Group
    classes: tuple[tuple[Perm, ...], ...]

    @property
    def representatives(self) -> list[Perm]:
        return [cls[0] for cls in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(cls) for cls in self.classes]

    def index_of(self, element: Perm) -> int:
        return self._lookup()[element]

    def _lookup(self) -> dict:
        if not hasattr(self, "_cached_lookup"):
            table = {}
            for idx, cls in enumerate(self.classes):
                for g in cls:
                    table[g] = idx
            object.__setattr__(self, "_cached_lookup", table)
        return self._cached_lookup


def conjugacy_classes(group: Group) -> ConjugacyClasses:
    seen = set()
    classes = []
    for x in group.elements:
        if x in seen:
            continue
        orbit = {perm_conj(g, x) for g in group.elements}
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda cls: (perm_order(cls[0]), len(cls), cls[0]))
    return ConjugacyClasses(group, tuple(classes))


def exponent(group: Group) -> int:
    return math.lcm(*[perm_order(g) for g in group.elements])


def is_abelian_subgroup(elements: Iterable[Perm]) -> bool:
    elems = list(elements)
    return all(perm_mul(a, b) == perm_mul(b, a) for i, a in enumerate(elems) for b in elems[i + 1:])


# ---------------------------------------------------------------------------
# subgroup lattice


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups, with its classification data."""

    representative: tuple[Perm, ...]
    class_index: int
    order: int
    weyl_order: int
    is_abelian: bool
    min_generators: int
    label: str

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.representative)


@dataclass(frozen=True)
class SubgroupLattice:
    """Conjugacy classes of subgroups ordered compatibly with subconjugacy."""

    group: Group
    classes: tuple[SubgroupClass, ...]
    subconjugacy: tuple[tuple[bool, ...], ...]  # [k][h] true iff (K) <= (H)

    def __len__(self):
        return len(self.classes)

    def leq(self, k: int, h: int) -> bool:
        return self.subconjugacy[k][h]

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def full_index(self) -> int:
        return len(self.classes) - 1

    def class_of_subgroup(self, subgroup: frozenset) -> tuple[int, Perm]:
        """Index of the class containing subgroup, and g with g^-1*S*g = rep."""
        order = len(subgroup)
        for idx, cls in enumerate(self.classes):
            if cls.order != order:
                continue
            rep = cls.element_set
            for g in self.group.elements:
                gi = perm_inv(g)
                if all(perm_mul(perm_mul(gi, s), g) in rep for s in subgroup):
                    return idx, g
        raise GroupError("subgroup not found in lattice")

    def label_of(self, idx: int) -> str:
        return self.classes[idx].label


def all_subgroups(group: Group) -> list[frozenset]:
    """Every subgroup, found by extending known subgroups one generator at a time.

    Each subgroup keeps a small generating set so closures stay cheap.
    """
    identity = group.identity
    trivial = frozenset([identity])
    generators: dict[frozenset, tuple[Perm, ...]] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub in frontier:
            gens = generators[sub]
            for g in group.elements:
                if g in sub:
                    continue
                new_gens = gens + (g,)
                extended = close_under_product(group.degree, new_gens, cap=group.order)
                if extended not in generators:
                    generators[extended] = new_gens
                    nxt.append(extended)
        frontier = nxt
    return sorted(generators, key=lambda s: (len(s), tuple(sorted(s))))


def min_generator_count(elements: frozenset, degree: int) -> int:
    """Smallest k so that some k elements generate the subgroup (0 for trivial)."""
    order = len(elements)
    if order == 1:
        return 0
    elems = sorted(elements)
    for k in (1, 2, 3):
        if _has_generating_tuple(elems, order, degree, k):
            return k
    # fall back to incremental greedy growth; correct upper bound
    chosen: list[Perm] = []
    current = frozenset([perm_identity(degree)])
    for g in elems:
        if g not in current:
            chosen.append(g)
            current = close_under_product(degree, chosen, cap=order)
            if len(current) == order:
                return len(chosen)
    raise GroupError("generation search failed")


def _has_generating_tuple(elems: list, order: int, degree: int, k: int) -> bool:
    from itertools import combinations

    for combo in combinations(elems, k):
        if len(close_under_product(degree, combo, cap=order)) == order:
            return True
    return False


def abelian_min_generators(elements: frozenset, degree: int) -> int:
    """max over primes p of the rank of H/H^p, for abelian H."""
    if not is_abelian_subgroup(elements):
        raise NotAbelian("subgroup is not abelian")
    order = len(elements)
    if order == 1:
        return 0
    best = 0
    for p in _prime_factors(order):
        image = {_perm_pow(h, p) for h in elements}
        quotient = order // len(image)
        rank = 0
        while p ** (rank + 1) <= quotient:
            rank += 1
        assert p ** rank == quotient
        best = max(best, rank)
    return best


def _perm_pow(p: Perm, n: int) -> Perm:
    result = perm_identity(len(p))
    base = p
    while n:
        if n & 1:
            result = perm_mul(result, base)
        base = perm_mul(base, base)
        n >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def subgroup_lattice(group: Group) -> SubgroupLattice:
    """Conjugacy classes of all subgroups with subconjugacy and Weyl orders."""
    subgroups = all_subgroups(group)
    remaining = set(subgroups)
    class_reps: list[frozenset] = []
    membership: dict[frozenset, int] = {}
    for sub in subgroups:
        if sub not in remaining:
            continue
        orbit = set()
        for g in group.elements:
            gi = perm_inv(g)
            conj = frozenset(perm_mul(perm_mul(g, s), gi) for s in sub)
            orbit.add(conj)
        rep = min(orbit, key=lambda s: tuple(sorted(s)))
        idx = len(class_reps)
        class_reps.append(rep)
        for s in orbit:
            membership[s] = idx
            remaining.discard(s)
    # deterministic order: ascending subgroup order refines subconjugacy
    ordering = sorted(range(len(class_reps)), key=lambda i: (len(class_reps[i]), tuple(sorted(class_reps[i]))))
    class_reps = [class_reps[i] for i in ordering]

    classes = []
    order_counts: dict[int, int] = {}
    for idx, rep in enumerate(class_reps):
        order = len(rep)
        normalizer = sum(
            1 for g in group.elements
            if frozenset(perm_mul(perm_mul(g, s), perm_inv(g)) for s in rep) == rep
        )
        weyl = normalizer // order
        abelian = is_abelian_subgroup(rep)
        mingen = abelian_min_generators(rep, group.degree) if abelian else min_generator_count(rep, group.degree)
        seq = order_counts.get(order, 0)
        order_counts[order] = seq + 1
        label = f"{order}{chr(ord('a') + seq)}"
        classes.append(SubgroupClass(
            representative=tuple(sorted(rep)),
            class_index=idx,
            order=order,
            weyl_order=weyl,
            is_abelian=abelian,
            min_generators=mingen,
            label=label,
        ))

    n = len(classes)
    leq = [[False] * n for _ in range(n)]
    for k in range(n):
        ksub = classes[k].element_set
        for h in range(n):
            hset = classes[h].element_set
            if classes[k].order > classes[h].order:
                continue
            leq[k][h] = any(
                all(perm_mul(perm_mul(perm_inv(g), s), g) in hset for s in ksub)
                for g in group.elements
            )
    return SubgroupLattice(group, tuple(classes), tuple(tuple(row) for row in leq))


# ---------------------------------------------------------------------------
# subgroup classifications


def p_perfect_core(subgroup: frozenset, p: int, degree: int) -> frozenset:
    """O^p(H): the subgroup generated by all elements of order prime to p."""
    gens = [h for h in subgroup if perm_order(h) % p != 0]
    return close_under_product(degree, gens, cap=len(subgroup))


def is_n_hyper(subgroup: frozenset, n: int | float, p: int, degree: int) -> bool:
    """Extension of an abelian p'-group on <= n generators by a p-group.

    Tested via A = O^p(H): any witness A contains O^p(H), and subgroups of
    abelian groups on <= n generators again need <= n generators, so the
    core is a witness whenever one exists.
    """
    core = p_perfect_core(subgroup, p, degree)
    if not is_abelian_subgroup(core):
        return False
    if len(core) % p == 0:
        return False
    return abelian_min_generators(core, degree) <= n


# ---------------------------------------------------------------------------
# cosets and double cosets


def left_cosets(group: Group, subgroup: frozenset) -> list[Perm]:
    """Deterministic representatives of the left cosets g*H."""
    reps = []
    seen = set()
    for g in group.elements:
        if g in seen:
            continue
        reps.append(g)
        for h in subgroup:
            seen.add(perm_mul(g, h))
    return reps


@dataclass(frozen=True)
class DoubleCoset:
    representative: Perm
    intersection: frozenset  # K cap g H g^-1
    size: int


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    group: Group
    left: frozenset  # K
    right: frozenset  # H
    cosets: tuple[DoubleCoset, ...]


def double_cosets(group: Group, k_sub: frozenset, h_sub: frozenset) -> DoubleCosetDecomposition:
    """Partition of G into K*g*H orbits with intersection subgroups."""
    seen = set()
    cosets = []
    for g in group.elements:
        if g in seen:
            continue
        orbit = {perm_mul(perm_mul(k, g), h) for k in k_sub for h in h_sub}
        seen |= orbit
        rep = min(orbit)
        gi = perm_inv(rep)
        conj_h = frozenset(perm_mul(perm_mul(rep, h), gi) for h in h_sub)
        cosets.append(DoubleCoset(rep, k_sub & conj_h, len(orbit)))
    return DoubleCosetDecomposition(group, k_sub, h_sub, tuple(cosets))


def subgroup_as_group(parent: Group, elements: frozenset, name: str = "") -> Group:
    """Wrap an explicit subgroup as a standalone Group value."""
    elems = tuple(sorted(elements))
    gens = []
    current = frozenset([parent.identity])
    for g in elems:
        if g not in current:
            gens.append(g)
            current = close_under_product(parent.degree, gens, cap=len(elements))
            if len(current) == len(elements):
                break
    return Group(parent.degree, tuple(gens), elems, name)
