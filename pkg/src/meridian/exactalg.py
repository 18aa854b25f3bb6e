"""Exact arithmetic: rational polynomials, cyclotomic fields, ranks, resultants.

Everything here is built on ``fractions.Fraction``; no floating point enters
any computation.  Cyclotomic numbers live in Q[x]/Phi_N(x) and polynomials are
dense coefficient lists with trailing zeros stripped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class UniPoly:
    """Dense univariate polynomial over Q.

    Coefficients are stored low degree first; the zero polynomial has an
    empty coefficient list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading()
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lc
            if c:
                q[i - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= c * b
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def evaluate(self, x):
        y = Fraction(0)
        for c in reversed(self.coeffs):
            y = y * x + c
        return y

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.leading()
        return UniPoly([c / lc for c in self.coeffs])

    def primitive_int(self) -> "UniPoly":
        """Integer-coefficient multiple with content 1 and positive leading."""
        if self.is_zero():
            return self
        denom = 1
        for c in self.coeffs:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [int(c * denom) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return UniPoly(ints)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(c)
            else:
                x = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    term = x
                elif c == -1:
                    term = f"-{x}"
                else:
                    term = f"{c}*{x}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    __repr__ = __str__


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over Q."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading()
    inv = UniPoly([Fraction(1) / lc])
    return r0.monic(), s0 * inv, t0 * inv


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> UniPoly:
    """The N-th cyclotomic polynomial, computed by exact division.

    x^N - 1 factors as the product of Phi_d over divisors d of N, so Phi_N is
    x^N - 1 divided by the proper-divisor cyclotomics.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = UniPoly.monomial(n) - UniPoly([1])
    for d in range(1, n):
        if n % d == 0:
            q, r = num.divmod(cyclotomic_polynomial(d))
            assert r.is_zero()
            num = q
    return num


def euler_phi(n: int) -> int:
    return cyclotomic_polynomial(n).degree


class CycloNumber:
    """Element of Q(zeta_N), stored as its residue mod Phi_N."""

    __slots__ = ("modulus", "rep")

    def __init__(self, modulus: int, rep: UniPoly):
        self.modulus = modulus
        self.rep = rep % cyclotomic_polynomial(modulus)

    @classmethod
    def zeta(cls, modulus: int, exponent: int = 1) -> "CycloNumber":
        return cls(modulus, UniPoly.monomial(exponent % modulus))

    @classmethod
    def rational(cls, modulus: int, value) -> "CycloNumber":
        return cls(modulus, UniPoly.constant(value))

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("cyclotomic moduli differ")

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        return (isinstance(other, CycloNumber)
                and self.modulus == other.modulus and self.rep == other.rep)

    def __hash__(self):
        return hash((self.modulus, self.rep))

    def __add__(self, other):
        self._check(other)
        return CycloNumber(self.modulus, self.rep + other.rep)

    def __sub__(self, other):
        self._check(other)
        return CycloNumber(self.modulus, self.rep - other.rep)

    def __neg__(self):
        return CycloNumber(self.modulus, -self.rep)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.modulus, self.rep * other)
        self._check(other)
        return CycloNumber(self.modulus, self.rep * other.rep)

    __rmul__ = __mul__

    def __str__(self):
        return str(self.rep).replace("x", "z")

    __repr__ = __str__


def cyclo_invert(a: CycloNumber) -> CycloNumber:
    """Inverse in Q(zeta_N) via extended Euclid against Phi_N."""
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse in Q(zeta_N)")
    phi = cyclotomic_polynomial(a.modulus)
    g, s, _ = poly_xgcd(a.rep, phi)
    if g.degree != 0:
        # Phi_N is irreducible over Q, so the gcd of a nonzero residue with
        # it is always 1.
        raise ArithmeticError("residue not invertible; corrupted element")
    return CycloNumber(a.modulus, s * UniPoly([Fraction(1) / g.coeffs[0]]))


@dataclass
class FieldMatrix:
    """Rectangular matrix over a single Q(zeta_N)."""

    modulus: int
    entries: list[list[CycloNumber]]

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for e in row:
                if e.modulus != self.modulus:
                    raise ValueError("mixed cyclotomic moduli in matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def matrix_rank(m: FieldMatrix) -> int:
    """Exact rank over Q(zeta_N) by division-free elimination.

    Pivots are the first nonzero entry in column order; elimination uses
    cross-multiplication only, which keeps every entry inside the ring.
    """
    a = [row[:] for row in m.entries]
    rank = 0
    row = 0
    for col in range(m.cols):
        pivot = next((i for i in range(row, m.rows) if not a[i][col].is_zero()),
                     None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        p = a[row][col]
        for i in range(row + 1, m.rows):
            if not a[i][col].is_zero():
                c = a[i][col]
                a[i] = [p * x - c * y for x, y in zip(a[i], a[row])]
        rank += 1
        row += 1
        if row == m.rows:
            break
    return rank


# --- bivariate polynomials and resultants ------------------------------------


class BiPoly:
    """Polynomial in y whose coefficients are UniPoly in x."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, UniPoly) else UniPoly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree_y(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def derivative_y(self) -> "BiPoly":
        return BiPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate_y(self, y) -> UniPoly:
        yp = y if isinstance(y, UniPoly) else UniPoly.constant(y)
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * yp + c
        return out


def _poly_det_bareiss(m: list[list[UniPoly]]) -> UniPoly:
    """Determinant of a matrix over Q[x] by fraction-free Bareiss elimination.

    Every division performed is exact in Q[x], so no rational functions ever
    appear.
    """
    n = len(m)
    if n == 0:
        return UniPoly([1])
    a = [row[:] for row in m]
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not a[i][k].is_zero()),
                         None)
            if pivot is None:
                return UniPoly()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = num.divmod(prev)
                assert r.is_zero()
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: BiPoly, g: BiPoly) -> list[list[UniPoly]]:
    n, m = f.degree_y, g.degree_y
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([UniPoly()] * i + fc + [UniPoly()] * (size - i - len(fc)))
    for i in range(n):
        rows.append([UniPoly()] * i + gc + [UniPoly()] * (size - i - len(gc)))
    return rows


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Resultant of f and g with respect to y, as a polynomial in x."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if f.degree_y == 0:
        return f.coeffs[0] ** g.degree_y
    if g.degree_y == 0:
        return g.coeffs[0] ** f.degree_y
    return _poly_det_bareiss(sylvester_matrix(f, g))


def discriminant_y(f: BiPoly) -> UniPoly:
    """Res_y(f, df/dy); the classical discriminant up to a constant factor."""
    return resultant_y(f, f.derivative_y())


def cyclotomic_factors(p: UniPoly, bound: int = 200):
    """Split p into cyclotomic factors Phi_N (N <= bound) and a residual.

    Returns (factors, residual) where factors maps N to its multiplicity.
    Trial division in increasing N keeps the outcome deterministic.
    """
    factors: dict[int, int] = {}
    rem = p.monic()
    for n in range(1, bound + 1):
        phi = cyclotomic_polynomial(n)
        if phi.degree > rem.degree:
            continue
        while True:
            q, r = rem.divmod(phi)
            if r.is_zero():
                factors[n] = factors.get(n, 0) + 1
                rem = q
            else:
                break
    return factors, rem
