"""Fox calculus and characteristic varieties of presentation complexes.

The presentation 2-complex of <g_1..g_n | r_1..r_m> has one 0-cell, a 1-cell
per generator and a 2-cell per relator.  Its chain complex twisted by a
character xi has differentials

    d1 = column (xi(g_i) - 1),      d2[i][j] = dxi(r_i)/dg_j,

where d/dg_j is the Fox derivative pushed down to the group ring of the
abelianization and then evaluated at xi.  The k-th characteristic variety is
the locus of characters where dim H_1 of this complex is at least k.

Group-ring elements are dicts mapping canonical-coordinate tuples of the
abelianization to integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup, Character, abelianization, characters_of_order_dividing
from .exactalg import (
    CycloNumber,
    FieldMatrix,
    UniPoly,
    cyclotomic_factors,
    cyclotomic_polynomial,
    matrix_rank,
    poly_gcd,
)
from .fpgroups import Presentation, Word

GroupRingElt = dict[tuple[int, ...], int]


class CharVarError(ValueError):
    """Wrong-mode and inconsistent-character errors."""


def _monomial_mul(a: tuple[int, ...], b: tuple[int, ...],
                  orders: tuple[int, ...]) -> tuple[int, ...]:
    return tuple((x + y) % d if d else x + y
                 for x, y, d in zip(a, b, orders))


def _monomial_inv(a: tuple[int, ...], orders: tuple[int, ...]) -> tuple[int, ...]:
    return tuple((-x) % d if d else -x for x, d in zip(a, orders))


def _add_term(elt: GroupRingElt, mono: tuple[int, ...], coeff: int):
    c = elt.get(mono, 0) + coeff
    if c:
        elt[mono] = c
    else:
        elt.pop(mono, None)


def fox_derivative(w: Word, k: int, group: AbelianGroup) -> GroupRingElt:
    """Abelianized Fox derivative d(w)/dg_k as a group-ring element.

    Satisfies the product rule d(uv) = du + u*dv and d(g^-1) = -g^-1 (bars
    meaning images in the abelianization).
    """
    orders = group.coordinate_orders
    prefix = tuple(0 for _ in orders)
    out: GroupRingElt = {}
    for x in w:
        img = group.gen_images[abs(x) - 1]
        if x == k:
            _add_term(out, prefix, 1)
            prefix = _monomial_mul(prefix, img, orders)
        elif x == -k:
            prefix = _monomial_mul(prefix, _monomial_inv(img, orders), orders)
            _add_term(out, prefix, -1)
        else:
            step = img if x > 0 else _monomial_inv(img, orders)
            prefix = _monomial_mul(prefix, step, orders)
    return out


def word_image(w: Word, group: AbelianGroup) -> GroupRingElt:
    """The group-ring monomial of the abelianized word, as an element."""
    return {group.image_of_word(w): 1}


def fox_matrix(pres: Presentation, group: AbelianGroup | None = None
               ) -> list[list[GroupRingElt]]:
    """Relator-by-generator matrix of abelianized Fox derivatives."""
    if group is None:
        group = abelianization(pres)
    return [[fox_derivative(rel, j, group) for j in range(1, pres.rank + 1)]
            for rel in pres.relators]


def evaluate_elt(elt: GroupRingElt, xi: Character) -> CycloNumber:
    """Evaluate a group-ring element at a torsion character, in Q(zeta_N)."""
    n = xi.modulus
    out = CycloNumber.rational(n, 0)
    for mono, coeff in elt.items():
        out = out + CycloNumber.zeta(n, xi.value_exponent(mono)) * coeff
    return out


def _check_character(group: AbelianGroup, xi: Character):
    if len(xi.exponents) != len(group.coordinate_orders):
        raise CharVarError("character has the wrong number of coordinates")
    for d, e in zip(group.coordinate_orders, xi.exponents):
        if d and (d * e) % xi.modulus:
            raise CharVarError(
                f"coordinate of order {d} cannot map to zeta^{e} mod {xi.modulus}")


@dataclass
class TwistedComplex:
    """The twisted chain complex C_2 -> C_1 -> C_0 at a fixed character."""

    character: Character
    d1: list[CycloNumber]
    d2: FieldMatrix

    def h1_dim(self) -> int:
        rank_d1 = 0 if all(e.is_zero() for e in self.d1) else 1
        return len(self.d1) - rank_d1 - matrix_rank(self.d2)


def twisted_complex(pres: Presentation, xi: Character,
                    group: AbelianGroup | None = None) -> TwistedComplex:
    if group is None:
        group = abelianization(pres)
    _check_character(group, xi)
    n = xi.modulus
    one = CycloNumber.rational(n, 1)
    d1 = [evaluate_elt(word_image((i,), group), xi) - one
          for i in range(1, pres.rank + 1)]
    rows = [[evaluate_elt(e, xi) for e in row] for row in fox_matrix(pres, group)]
    return TwistedComplex(xi, d1, FieldMatrix(n, rows))


def twisted_h1_dim(pres: Presentation, xi: Character) -> int:
    """dim H_1 of the presentation complex with coefficients twisted by xi.

    At the trivial character this is the first Betti number of the complex,
    i.e. the free rank of the abelianization.
    """
    return twisted_complex(pres, xi).h1_dim()


# --- finite character torus ---------------------------------------------------


@dataclass
class FiniteTorusVariety:
    """Depth of every character of a finite character torus."""

    group: AbelianGroup
    modulus: int
    depths: list[tuple[Character, int]]

    def depth(self, xi: Character) -> int:
        for chi, d in self.depths:
            if chi == xi:
                return d
        raise KeyError("character not in torus")

    def stratum(self, k: int) -> list[Character]:
        return [chi for chi, d in self.depths if d >= k]

    def max_depth(self) -> int:
        return max((d for _, d in self.depths), default=0)

    def describe(self, k: int) -> str:
        return describe_character_set(self.stratum(k), self.modulus)


def describe_character_set(chars: list[Character], modulus: int) -> str:
    """Readable summary of a character set: '{1} u mu10-primitive' style.

    Orders whose primitive characters all appear are reported as
    'mu<d>-primitive'; anything else is listed as explicit exponent tuples.
    """
    if not chars:
        return "{}"
    by_order: dict[int, list[Character]] = {}
    for chi in chars:
        by_order.setdefault(chi.order(), []).append(chi)
    parts = []
    leftovers = []
    for d in sorted(by_order):
        if d == 1:
            parts.append("{1}")
        elif modulus % d == 0 and len(by_order[d]) == _primitive_count(modulus, d):
            parts.append(f"mu{d}-primitive")
        else:
            leftovers.extend(by_order[d])
    if leftovers:
        parts.append("{" + ", ".join(str(c.exponents) for c in leftovers) + "}")
    return " u ".join(parts)


def _primitive_count(modulus: int, order: int) -> int:
    from .exactalg import euler_phi

    return euler_phi(order)   # characters of exact order d in a cyclic torus


def charvar_finite_torus(pres: Presentation) -> FiniteTorusVariety:
    """Depths of all characters when the abelianization is finite."""
    group = abelianization(pres)
    if group.rank:
        raise CharVarError(
            "abelianization is infinite; use the rank-one mode")
    n = group.exponent()
    chars = characters_of_order_dividing(group, n)
    depths = [(xi, twisted_h1_dim(pres, xi)) for xi in chars]
    return FiniteTorusVariety(group, n, depths)


# --- rank-one torus (abelianization Z) ----------------------------------------


def _laurent_to_poly(elt: GroupRingElt) -> UniPoly:
    """One-variable group-ring element as a polynomial, unit factor dropped.

    Monomials are powers of t; multiplying by t^k is harmless because t is a
    unit on the character torus.
    """
    if not elt:
        return UniPoly()
    low = min(m[0] for m in elt)
    coeffs = [0] * (max(m[0] for m in elt) - low + 1)
    for m, c in elt.items():
        coeffs[m[0] - low] = c
    return UniPoly(coeffs)


def _poly_minors(matrix: list[list[UniPoly]], size: int) -> list[UniPoly]:
    from itertools import combinations

    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    out = []
    for ris in combinations(range(rows), size):
        for cjs in combinations(range(cols), size):
            out.append(_poly_det([[matrix[i][j] for j in cjs] for i in ris]))
    return out


def _poly_det(m: list[list[UniPoly]]) -> UniPoly:
    if not m:
        return UniPoly([1])
    if len(m) == 1:
        return m[0][0]
    out = UniPoly()
    for j, head in enumerate(m[0]):
        if head.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = head * _poly_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


@dataclass
class RankOneStratum:
    """V_k of a rank-one torus, described by the gcd of (g-k)-minors."""

    k: int
    full: bool                      # every nontrivial character qualifies
    cyclotomic: dict[int, int]      # Phi_N -> multiplicity in the gcd
    residual: UniPoly               # non-cyclotomic leftover, primitive
    includes_one: bool

    def is_empty(self) -> bool:
        return (not self.full and not self.cyclotomic
                and self.residual.degree < 1 and not self.includes_one)

    def contains_primitive(self, order: int) -> bool:
        """Whether the primitive order-th roots of unity lie in the stratum."""
        if order == 1:
            return self.includes_one
        if self.full:
            return True
        if self.cyclotomic.get(order):
            return True
        if self.residual.degree >= 1:
            rem = self.residual % cyclotomic_polynomial(order)
            return rem.is_zero()
        return False

    def describe(self) -> str:
        if self.full:
            return "all of C* - {1}" + (" u {1}" if self.includes_one else "")
        parts = []
        if self.includes_one:
            parts.append("{1}")
        for n in sorted(self.cyclotomic):
            if n == 1:
                continue   # membership of 1 is decided by the Betti rule
            parts.append(f"mu{n}-primitive")
        if self.residual.degree >= 1:
            parts.append(f"roots of {self.residual}")
        return " u ".join(parts) if parts else "{}"


@dataclass
class RankOneVariety:
    betti: int
    strata: list[RankOneStratum]

    def stratum(self, k: int) -> RankOneStratum:
        for s in self.strata:
            if s.k == k:
                return s
        # beyond the last computed stratum everything is empty
        return RankOneStratum(k, False, {}, UniPoly([1]), self.betti >= k)


def charvar_rank_one(pres: Presentation, cyclotomic_bound: int = 200,
                     max_depth: int | None = None) -> RankOneVariety:
    """Characteristic varieties when the abelianization is Z.

    V_k away from 1 is cut out by the (g-k)-minors of the Fox matrix in the
    single variable t; their gcd is factored into cyclotomic polynomials plus
    a residual.  Membership of the trivial character follows the Betti rule:
    1 lies in V_k exactly when the first Betti number is at least k.
    """
    group = abelianization(pres)
    if group.rank != 1 or group.torsion:
        raise CharVarError("rank-one mode needs abelianization Z"
                           " (use per-character tests otherwise)")
    g = pres.rank
    matrix = [[_laurent_to_poly(e) for e in row] for row in fox_matrix(pres, group)]
    betti = 1
    strata = []
    top = max_depth if max_depth is not None else g
    for k in range(1, top + 1):
        size = g - k
        includes_one = betti >= k
        if size <= 0:
            strata.append(RankOneStratum(k, False, {}, UniPoly([1]), includes_one))
            break
        minors = _poly_minors(matrix, size) if matrix and size <= len(matrix) else []
        if not minors:
            # too few relators to constrain the rank: every character qualifies
            strata.append(RankOneStratum(k, True, {}, UniPoly(), includes_one))
            continue
        acc = UniPoly()
        for mnr in minors:
            acc = poly_gcd(acc, mnr)
        if acc.is_zero():
            strata.append(RankOneStratum(k, True, {}, UniPoly(), includes_one))
            continue
        factors, residual = cyclotomic_factors(acc, cyclotomic_bound)
        factors.pop(1, None)    # t - 1: the Betti rule governs 1
        stratum = RankOneStratum(k, False, factors, residual.primitive_int(),
                                 includes_one)
        strata.append(stratum)
        if stratum.is_empty():
            break
    return RankOneVariety(betti, strata)
