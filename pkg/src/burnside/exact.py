"""Exact arithmetic substrate: rationals, cyclotomic numbers, integer matrices.

Everything here is exact; no floating point is used anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

# Fraction already maintains gcd(|num|, den) = 1 and den >= 1.
Rational = Fraction


class ExactError(Exception):
    """Base class for errors raised by the exact-arithmetic layer."""


class NotIntegral(ExactError):
    """A triangular solve required a non-integral quotient at some pivot."""

    def __init__(self, pivot: int, remainder: int):
        self.pivot = pivot
        self.remainder = remainder
        super().__init__(f"non-integral pivot {pivot}: remainder {remainder}")


class GcdNotOne(ExactError):
    """The inputs to a Bezout combination are not coprime."""


class DivisionByZero(ExactError):
    """Inversion of zero in an exact field."""


class NotInSubfield(ExactError):
    """A cyclotomic value does not lie in the requested smaller field."""


# ---------------------------------------------------------------------------
# integer helpers


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def extended_euclid_set(values: Sequence[int]) -> list[int]:
    """Integers z with sum(z_i * values_i) = 1, or GcdNotOne if impossible."""
    if not values:
        raise GcdNotOne("empty input")
    if any(v <= 0 for v in values):
        raise ValueError("values must be positive")
    coeffs = [1]
    g = values[0]
    for v in values[1:]:
        g, a, b = xgcd(g, v)
        coeffs = [c * a for c in coeffs] + [b]
    if g != 1:
        raise GcdNotOne(f"gcd is {g}, not 1")
    return coeffs


def divisors(n: int) -> list[int]:
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return ds


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            count += 1
    return count


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n == 1:
        return 1
    m, result = n, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


# ---------------------------------------------------------------------------
# dense polynomials over Q, little-endian coefficient lists


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(a)
    _poly_trim(rem)
    den = list(b)
    _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
    inv_lead = 1 / den[-1]
    while len(rem) >= len(den):
        shift = len(rem) - len(den)
        factor = rem[-1] * inv_lead
        quot[shift] = factor
        for i, d in enumerate(den):
            rem[shift + i] -= factor * d
        _poly_trim(rem)
    return _poly_trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, little-endian.

    Computed by Mobius inversion of x^n - 1 = prod_{d|n} Phi_d(x).
    """
    num = [Fraction(1)]
    den = [Fraction(1)]
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 0:
            continue
        factor = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]  # x^d - 1
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    quot, rem = _poly_divmod(num, den)
    assert not rem, "cyclotomic polynomial division must be exact"
    assert all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


# ---------------------------------------------------------------------------
# cyclotomic field elements


class Cyclotomic:
    """Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).

    Values are reduced modulo the N-th cyclotomic polynomial; arithmetic is
    exact.  Mixed-conductor operands are aligned by embedding into the lcm
    conductor.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Fraction | int]):
        degree = euler_phi(conductor)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > degree:
            cs = _reduce_mod_cyclotomic(cs, conductor)
        cs += [Fraction(0)] * (degree - len(cs))
        self.conductor = conductor
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def from_rational(cls, value: Fraction | int, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [Fraction(value)])

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "Cyclotomic":
        k = power % conductor
        coeffs = [Fraction(0)] * k + [Fraction(1)]
        return cls(conductor, coeffs)

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [])

    @classmethod
    def one(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [Fraction(1)])

    # -- structure

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotInSubfield(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """True when all power-basis coordinates are rational integers."""
        return all(c.denominator == 1 for c in self.coeffs)

    def to_conductor(self, target: int) -> "Cyclotomic":
        """Embed into Q(zeta_target); target must be a multiple of the conductor."""
        if target == self.conductor:
            return self
        if target % self.conductor != 0:
            raise ValueError(f"cannot embed conductor {self.conductor} into {target}")
        step = target // self.conductor
        expanded: list[Fraction] = []
        for k, c in enumerate(self.coeffs):
            idx = k * step
            if len(expanded) <= idx:
                expanded += [Fraction(0)] * (idx + 1 - len(expanded))
            expanded[idx] += c
        return Cyclotomic(target, expanded)

    def try_to_conductor(self, target: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_target) when the value lies in that subfield.

        target must divide the current conductor; raises NotInSubfield otherwise.
        """
        if target == self.conductor:
            return self
        if self.conductor % target != 0:
            raise ValueError(f"{target} does not divide conductor {self.conductor}")
        small_deg = euler_phi(target)
        big_deg = euler_phi(self.conductor)
        # columns: embeddings of the small power basis
        cols = [Cyclotomic.zeta(target, k).to_conductor(self.conductor).coeffs for k in range(small_deg)]
        matrix = [[cols[j][i] for j in range(small_deg)] for i in range(big_deg)]
        rhs = list(self.coeffs)
        solution = _solve_rational_system(matrix, rhs)
        if solution is None:
            raise NotInSubfield(f"value not in Q(zeta_{target})")
        return Cyclotomic(target, solution)

    def galois(self, a: int) -> "Cyclotomic":
        """Apply the field automorphism zeta -> zeta^a; a must be prime to N."""
        n = self.conductor
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a} is not prime to conductor {n}")
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            out[(a * k) % n] += c
        return Cyclotomic(n, out)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    # -- arithmetic

    @staticmethod
    def _aligned(a: "Cyclotomic", b: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if a.conductor == b.conductor:
            return a, b
        n = math.lcm(a.conductor, b.conductor)
        return a.to_conductor(n), b.to_conductor(n)

    @staticmethod
    def _coerce(value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.from_rational(value)
        return NotImplemented

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._aligned(self, other)
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._aligned(self, other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return Cyclotomic(a.conductor, _reduce_mod_cyclotomic(prod, a.conductor))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("cannot invert zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        # extended Euclid in Q[x]: r_i = s_i*self + t_i*Phi_N, gcd is a constant
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        assert len(r1) == 1, "cyclotomic polynomial is irreducible over Q"
        scale = 1 / r1[0]
        inv = [c * scale for c in s1]
        return Cyclotomic(self.conductor, _reduce_mod_cyclotomic(inv, self.conductor))

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclotomic._aligned(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # cross-conductor equality makes a consistent hash impractical

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _reduce_mod_cyclotomic(coeffs: list[Fraction], conductor: int) -> list[Fraction]:
    phi = [Fraction(c) for c in cyclotomic_polynomial(conductor)]
    _, rem = _poly_divmod(coeffs, phi)
    return rem


def _solve_rational_system(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve matrix*x = rhs by Gaussian elimination; None if inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(rows)]
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        scale = 1 / aug[r][c]
        aug[r] = [v * scale for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [v - factor * w for v, w in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    solution = [Fraction(0)] * cols
    for i, c in enumerate(pivot_cols):
        solution[c] = aug[i][cols]
    return solution


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(r, c, tuple(tuple(0 for _ in range(c)) for _ in range(r)))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        return self.entries[idx[0]][idx[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            for k, a in enumerate(row):
                if a:
                    orow = other.entries[k]
                    for j in range(other.cols):
                        out[i][j] += a * orow[j]
        return IntMatrix.from_rows(out)

    def mul_vector(self, vec: Sequence[int]) -> list[int]:
        if self.cols != len(vec):
            raise ValueError("dimension mismatch")
        return [sum(a * v for a, v in zip(row, vec)) for row in self.entries]

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix.from_rows([[k * v for v in row] for row in self.entries])

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.determinant()) == 1


def _snf_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    """Smallest-absolute-value nonzero pivot; ties by lowest row then column."""
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return (best[1], best[2]) if best else None


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (U, D, V) with U*M*V = D, D diagonal, d_i | d_(i+1), d_i >= 0."""
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    t = 0
    while t < min(nr, nc):
        pos = _snf_pivot(a, t)
        if pos is None:
            break
        while True:
            pos = _snf_pivot(a, t)
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // pivot
                    add_row(t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // pivot
                    add_col(t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot now divides and has cleared its row and column;
            # enforce divisibility into the remaining block
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v)


def solve_triangular_integer(m: IntMatrix, b: Sequence[int]) -> list[int]:
    """Solve M*x = b exactly over the integers for triangular square M.

    Raises NotIntegral(pivot, remainder) at the first pivot (in substitution
    order) whose division fails; remainder is reported in [0, |pivot|).
    """
    n = m.rows
    if m.cols != n or len(b) != n:
        raise ValueError("need square M and matching b")
    lower = all(m.entries[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    upper = all(m.entries[i][j] == 0 for i in range(n) for j in range(i))
    if not (lower or upper):
        raise ValueError("matrix is not triangular")
    if any(m.entries[i][i] == 0 for i in range(n)):
        raise ValueError("zero diagonal entry")
    order = range(n) if lower else range(n - 1, -1, -1)
    x = [0] * n
    for i in order:
        acc = b[i] - sum(m.entries[i][j] * x[j] for j in range(n) if j != i)
        pivot = m.entries[i][i]
        if acc % pivot != 0:
            raise NotIntegral(i, acc % abs(pivot))
        x[i] = acc // pivot
    return x


def integer_kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Basis of the integer kernel {x : M*x = 0}, as a list of column vectors."""
    u, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(d.rows, d.cols)) if d.entries[i][i] != 0)
    return [[v.entries[i][j] for i in range(v.rows)] for j in range(rank, v.cols)]
