"""Integer matrix Smith normal form and abelian invariants of presentations.

Matrices are plain lists of lists of Python ints, so all arithmetic is
arbitrary precision.  The Smith form carries the unimodular transforms, which
is what lets us express generators in the canonical coordinates of the
abelianization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .fpgroups import Presentation, Word

IntMatrix = list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += x * bk[j]
    return out


@dataclass
class SmithForm:
    """U * M * V = diag(d1, ..., dr) with d1 | d2 | ... and U, V unimodular."""

    diagonal: list[int]
    u: IntMatrix
    v: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form by repeated pivoting on the smallest nonzero entry."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [row[:] for row in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while True:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None
                                or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # Absorb any entry not divisible by the pivot, to force the chain.
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    add_row(i, t, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    diag = [a[i][i] for i in range(min(rows, cols)) if a[i][i]]
    return SmithForm(diag, u, v)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank plus cyclic factors Z/d1 x ... with d1 | d2 | ... (all di >= 2).

    ``gen_images`` gives each presentation generator in the canonical
    coordinates, torsion coordinates first (reduced mod their order) and then
    the free coordinates.
    """

    rank: int
    torsion: tuple[int, ...]
    gen_images: tuple[tuple[int, ...], ...] = ()

    @property
    def coordinate_orders(self) -> tuple[int, ...]:
        """Order of each canonical coordinate; 0 marks a free coordinate."""
        return self.torsion + (0,) * self.rank

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def exponent(self) -> int | None:
        if self.rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def image_of_word(self, w: Word) -> tuple[int, ...]:
        coords = [0] * len(self.coordinate_orders)
        for x in w:
            img = self.gen_images[abs(x) - 1]
            s = 1 if x > 0 else -1
            for i, c in enumerate(img):
                coords[i] += s * c
        return self._normalize(coords)

    def _normalize(self, coords) -> tuple[int, ...]:
        return tuple(c % d if d else c
                     for c, d in zip(coords, self.coordinate_orders))

    def is_trivial_image(self, w: Word) -> bool:
        return not any(self.image_of_word(w))

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "1"


def exponent_matrix(pres: Presentation) -> IntMatrix:
    """Relator-by-generator matrix of exponent sums."""
    rows = []
    for rel in pres.relators:
        row = [0] * pres.rank
        for x in rel:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelianization(pres: Presentation) -> AbelianGroup:
    """Abelian invariants of Z^n modulo the relator exponent lattice."""
    n = pres.rank
    m = exponent_matrix(pres)
    if not m:
        basis = tuple(tuple(1 if i == j else 0 for j in range(n))
                      for i in range(n))
        return AbelianGroup(n, (), basis)
    snf = smith_normal_form(m)
    orders = snf.diagonal + [0] * (n - len(snf.diagonal))
    keep = [j for j, d in enumerate(orders) if d != 1]
    torsion = tuple(orders[j] for j in keep if orders[j] >= 2)
    rank = sum(1 for j in keep if orders[j] == 0)
    # Column j of V expresses canonical coordinate j; generator i has
    # coordinates given by row i of V, restricted to the kept columns with
    # torsion coordinates first.
    torsion_cols = [j for j in keep if orders[j] >= 2]
    free_cols = [j for j in keep if orders[j] == 0]
    images = []
    for i in range(n):
        row = snf.v[i]
        coords = [row[j] % orders[j] for j in torsion_cols]
        coords += [row[j] for j in free_cols]
        images.append(tuple(coords))
    return AbelianGroup(rank, torsion, tuple(images))


def surjects_onto(source: AbelianGroup, target: AbelianGroup) -> bool:
    """Whether some epimorphism of abelian groups source -> target exists.

    A free summand surjects onto anything cyclic, so only the torsion chains
    need comparing: sorting invariant factors in descending order, the k-th
    factor of the target must divide the k-th factor of the source (free
    coordinates count as 0, divisible by everything).
    """
    src = sorted(source.torsion, reverse=True)
    src = [0] * source.rank + src
    tgt = sorted(target.torsion, reverse=True)
    tgt = [0] * target.rank + tgt
    if len(tgt) > len(src):
        return False
    for s, t in zip(src, tgt):
        if t == 0:
            if s != 0:
                return False
        elif s % t:
            return False
    return True


@dataclass(frozen=True)
class Character:
    """Homomorphism to C* taking each canonical coordinate to zeta_N^e.

    ``modulus`` is N; ``exponents`` has one entry per canonical coordinate of
    the underlying abelian group (torsion coordinates first, then free ones).
    """

    modulus: int
    exponents: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not any(e % self.modulus for e in self.exponents)

    def value_exponent(self, coords) -> int:
        """Exponent k with xi(element) = zeta_N^k, for coordinate vector coords."""
        return sum(c * e for c, e in zip(coords, self.exponents)) % self.modulus

    def order(self) -> int:
        n = self.modulus
        return n // gcd(n, *(self.exponents or (0,)))


def characters_of_order_dividing(group: AbelianGroup, n: int) -> list[Character]:
    """All characters of the group with values in the N-th roots of unity.

    A coordinate of order d contributes gcd(d, N) characters, a free
    coordinate N.  Output is sorted lexicographically by exponent vector, so
    the trivial character comes first.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    choice_lists = []
    for d in group.coordinate_orders:
        if d == 0:
            choice_lists.append(list(range(n)))
        else:
            g = gcd(d, n)
            step = n // g
            choice_lists.append(sorted(step * k for k in range(g)))
    out = []

    def build(prefix, rest):
        if not rest:
            out.append(Character(n, tuple(prefix)))
            return
        for e in rest[0]:
            build(prefix + [e], rest[1:])

    build([], choice_lists)
    return out
