"""Coset enumeration and what it yields: orders, centers, subgroup presentations.

The enumerator is the HLT strategy: scan every relator at every live coset,
defining new cosets as needed, with a full lookahead pass (scanning without
defining) when the coset limit is hit.  Tables keep both directions of every
edge, so generator and inverse actions stay mutually inverse throughout.
Everything is deterministic for a fixed presentation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import fpgroups
from .abelian import AbelianGroup
from .fpgroups import Presentation, Word, invert, multiply, reduce_word


class CosetOverflow(RuntimeError):
    """The enumeration exceeded max_cosets; the index might still be finite."""

    def __init__(self, limit):
        super().__init__(f"coset enumeration exceeded {limit} cosets")
        self.limit = limit


class InvalidSubgroup(ValueError):
    """Kernel-mode subgroup data that does not contain all relators."""


@dataclass(frozen=True)
class KernelSpec:
    """Kernel of the map onto the finite abelian group prod_i Z/moduli[i].

    ``images`` lists, per presentation generator, its image coordinates.
    Membership of a word is the vanishing of its image, so the infinite
    generating set of the kernel never needs to be written down.
    """

    moduli: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]

    def image_of(self, w: Word) -> tuple[int, ...]:
        out = [0] * len(self.moduli)
        for x in w:
            img = self.images[abs(x) - 1]
            s = 1 if x > 0 else -1
            for i, c in enumerate(img):
                out[i] = (out[i] + s * c) % self.moduli[i]
        return tuple(out)


@dataclass(frozen=True)
class SubgroupSpec:
    """Either explicit generator words or kernel-of-abelian-map data."""

    words: tuple[Word, ...] = ()
    kernel: KernelSpec | None = None

    @classmethod
    def trivial(cls) -> "SubgroupSpec":
        return cls()

    @classmethod
    def from_words(cls, words) -> "SubgroupSpec":
        return cls(words=tuple(reduce_word(w) for w in words))

    @classmethod
    def kernel_of(cls, moduli, images) -> "SubgroupSpec":
        return cls(kernel=KernelSpec(tuple(moduli),
                                     tuple(tuple(i) for i in images)))

    def is_trivial_subgroup(self) -> bool:
        return self.kernel is None and all(not w for w in self.words)


@dataclass
class CosetTable:
    """Permutation action of the generators on the cosets of a subgroup.

    Coset 0 is the subgroup itself.  ``action[g-1][c]`` is the image of coset
    c under generator g; ``inverse[g-1]`` is the inverse permutation.
    """

    n_gens: int
    action: list[list[int]]
    inverse: list[list[int]]
    subgroup: SubgroupSpec

    @property
    def index(self) -> int:
        return len(self.action[0]) if self.action else 1

    def trace(self, start: int, w: Word) -> int:
        c = start
        for x in w:
            c = self.action[x - 1][c] if x > 0 else self.inverse[-x - 1][c]
        return c


UNDEF = -1


class _TableFull(Exception):
    pass


class _Enumerator:
    """HLT coset enumeration with coincidence handling via union-find."""

    def __init__(self, n_gens: int, relators, subgroup_words, max_cosets: int):
        self.n = n_gens
        self.ncols = 2 * n_gens
        self.relators = [tuple(r) for r in relators]
        self.subgroup_words = [tuple(w) for w in subgroup_words if w]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [self._new_row()]
        self.p = [0]
        self.queue: deque[int] = deque()

    def _new_row(self):
        return [UNDEF] * self.ncols

    @staticmethod
    def _col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def rep(self, c: int) -> int:
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def _merge(self, a: int, b: int):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.p[b] = a
            self.queue.append(b)

    def _coincidence(self, a: int, b: int):
        self._merge(a, b)
        while self.queue:
            dead = self.queue.popleft()
            row = self.table[dead]
            for g in range(1, self.n + 1):
                for signed in (g, -g):
                    col = self._col(signed)
                    delta = row[col]
                    if delta == UNDEF:
                        continue
                    row[col] = UNDEF
                    back = self._col(-signed)
                    if self.table[delta][back] == dead:
                        self.table[delta][back] = UNDEF
                    mu, nu = self.rep(dead), self.rep(delta)
                    existing = self.table[mu][col]
                    if existing != UNDEF:
                        self._merge(existing, nu)
                        continue
                    existing_back = self.table[nu][back]
                    if existing_back != UNDEF:
                        self._merge(existing_back, mu)
                    else:
                        self.table[mu][col] = nu
                        self.table[nu][back] = mu

    def _set_edge(self, c: int, signed: int, d: int):
        self.table[c][self._col(signed)] = d
        self.table[d][self._col(-signed)] = c

    def _define(self, c: int, signed: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise _TableFull
        self.table.append(self._new_row())
        self.p.append(len(self.table) - 1)
        d = len(self.table) - 1
        self._set_edge(c, signed, d)
        return d

    def _scan(self, c: int, word, fill: bool):
        """Trace ``word`` from coset c both ways, filling or deducing."""
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j:
                nxt = self.table[f][self._col(word[i])]
                if nxt == UNDEF:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i:
                nxt = self.table[b][self._col(-word[j])]
                if nxt == UNDEF:
                    break
                b = nxt
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                self._set_edge(f, word[i], b)
                return
            if not fill:
                return
            self._define(f, word[i])

    def run(self):
        while True:
            try:
                self._main_pass()
                break
            except _TableFull:
                self._lookahead_and_compact()
        return self._finish()

    def _main_pass(self):
        for w in self.subgroup_words:
            self._scan(0, w, fill=True)
        alpha = 0
        while alpha < len(self.table):
            if self.rep(alpha) != alpha:
                alpha += 1
                continue
            for rel in self.relators:
                self._scan(alpha, rel, fill=True)
                if self.rep(alpha) != alpha:
                    break
            if self.rep(alpha) == alpha:
                for g in range(1, self.n + 1):
                    for signed in (g, -g):
                        if self.table[alpha][self._col(signed)] == UNDEF:
                            self._define(alpha, signed)
            alpha += 1

    def _lookahead_and_compact(self):
        before = sum(1 for c in range(len(self.table)) if self.rep(c) == c)
        for c in range(len(self.table)):
            if self.rep(c) != c:
                continue
            for rel in self.relators:
                self._scan(c, rel, fill=False)
                if self.rep(c) != c:
                    break
        live = [c for c in range(len(self.table)) if self.rep(c) == c]
        # no-progress guard: thrashing at the cap means the index is out of reach
        if len(live) >= self.max_cosets or len(live) == before:
            raise CosetOverflow(self.max_cosets)
        remap = {c: i for i, c in enumerate(live)}
        new_table = []
        for c in live:
            row = []
            for col in range(self.ncols):
                d = self.table[c][col]
                row.append(UNDEF if d == UNDEF else remap[self.rep(d)])
            new_table.append(row)
        self.table = new_table
        self.p = list(range(len(live)))
        self.queue.clear()

    def _finish(self):
        live = [c for c in range(len(self.table)) if self.rep(c) == c]
        remap = {c: i for i, c in enumerate(live)}
        action = [[0] * len(live) for _ in range(self.n)]
        for c in live:
            for g in range(1, self.n + 1):
                d = self.table[c][self._col(g)]
                action[g - 1][remap[c]] = remap[self.rep(d)]
        inverse = [_invert_perm(perm) for perm in action]
        return action, inverse


def _invert_perm(perm):
    inv = [0] * len(perm)
    for c, d in enumerate(perm):
        inv[d] = c
    return inv


def _standardize(action, inverse):
    """Renumber cosets in BFS order from 0, exploring generators in order."""
    n = len(action)
    size = len(action[0]) if action else 0
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        for g in range(n):
            for nxt in (action[g][c], inverse[g][c]):
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
    remap = {c: i for i, c in enumerate(order)}
    new_action = []
    for g in range(n):
        perm = [0] * size
        for c in range(size):
            perm[remap[c]] = remap[action[g][c]]
        new_action.append(perm)
    return new_action, [_invert_perm(p) for p in new_action]


def _kernel_table(pres: Presentation, spec: SubgroupSpec) -> CosetTable:
    kern = spec.kernel
    for rel in pres.relators:
        if any(kern.image_of(rel)):
            raise InvalidSubgroup(
                f"relator {pres.spell(rel)} maps outside the kernel")
    # Cosets are the elements of the subgroup of the target generated by the
    # generator images; BFS keeps the numbering deterministic.
    elements = [tuple(0 for _ in kern.moduli)]
    index_of = {elements[0]: 0}
    qi = 0
    while qi < len(elements):
        base = elements[qi]
        qi += 1
        for img in kern.images:
            nxt = tuple((b + i) % m for b, i, m in zip(base, img, kern.moduli))
            if nxt not in index_of:
                index_of[nxt] = len(elements)
                elements.append(nxt)
    size = len(elements)
    action = []
    for g in range(pres.rank):
        img = kern.images[g]
        perm = [0] * size
        for c, base in enumerate(elements):
            nxt = tuple((b + i) % m for b, i, m in zip(base, img, kern.moduli))
            perm[c] = index_of[nxt]
        action.append(perm)
    inverse = [_invert_perm(p) for p in action]
    action, inverse = _standardize(action, inverse)
    return CosetTable(pres.rank, action, inverse, spec)


def todd_coxeter(pres: Presentation, subgroup: SubgroupSpec | None = None,
                 max_cosets: int = 10 ** 6) -> CosetTable:
    """Enumerate the cosets of a subgroup; raises CosetOverflow at the cap.

    The returned table is complete, collapsed and standardized, so its index
    equals [G : H] whenever the enumeration finishes.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    if subgroup is None:
        subgroup = SubgroupSpec.trivial()
    if subgroup.kernel is not None:
        return _kernel_table(pres, subgroup)
    enum = _Enumerator(pres.rank, pres.relators, subgroup.words, max_cosets)
    action, inverse = enum.run()
    action, inverse = _standardize(action, inverse)
    return CosetTable(pres.rank, action, inverse, subgroup)


def check_table(pres: Presentation, table: CosetTable) -> bool:
    """Relators fix every coset and subgroup generators fix coset 0."""
    for rel in pres.relators:
        for c in range(table.index):
            if table.trace(c, rel) != c:
                return False
    return all(table.trace(0, w) == 0 for w in table.subgroup.words)


# --- finite quotient structure ------------------------------------------------


@dataclass
class MultTable:
    """Multiplication table of a finite group on indices 0..size-1."""

    size: int
    table: list[list[int]]
    identity: int
    generator_elements: tuple[int, ...]

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        row = self.table[a]
        for b in range(self.size):
            if row[b] == self.identity:
                return b
        raise ValueError("element has no inverse; not a group table")

    def element_order(self, a: int) -> int:
        k, acc = 1, a
        while acc != self.identity:
            acc = self.table[acc][a]
            k += 1
        return k

    def evaluate(self, w: Word, images) -> int:
        acc = self.identity
        for x in w:
            e = images[abs(x) - 1]
            if x < 0:
                e = self.inverse(e)
            acc = self.table[acc][e]
        return acc

    def closure(self, seed) -> set[int]:
        """Subgroup generated by the seed (in a finite group products suffice)."""
        seed = sorted(set(seed))
        seen = set(seed) | {self.identity}
        frontier = sorted(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for s in seed:
                    b = self.table[a][s]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def validate(self, sample: int = 20000) -> bool:
        e = self.identity
        if any(self.table[e][a] != a or self.table[a][e] != a
               for a in range(self.size)):
            return False
        for a in range(self.size):
            self.inverse(a)
        if self.size ** 3 <= sample:
            triples = ((a, b, c) for a in range(self.size)
                       for b in range(self.size) for c in range(self.size))
        else:
            import random

            rng = random.Random(0)
            triples = ((rng.randrange(self.size), rng.randrange(self.size),
                        rng.randrange(self.size)) for _ in range(sample))
        return all(self.table[self.table[a][b]][c]
                   == self.table[a][self.table[b][c]] for a, b, c in triples)


def coset_representatives(table: CosetTable) -> list[Word]:
    """Schreier transversal: minimal representative words, by BFS from 0."""
    reps: list[Word | None] = [None] * table.index
    reps[0] = ()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(1, table.n_gens + 1):
            for signed, nxt in ((g, table.action[g - 1][c]),
                                (-g, table.inverse[g - 1][c])):
                if reps[nxt] is None:
                    reps[nxt] = multiply(reps[c], (signed,))
                    queue.append(nxt)
    return reps


def regular_rep(table: CosetTable) -> MultTable:
    """Multiplication table of the quotient, from a trivial-subgroup table."""
    if not table.subgroup.is_trivial_subgroup():
        raise ValueError("regular representation needs the trivial subgroup")
    reps = coset_representatives(table)
    size = table.index
    mult = [[table.trace(i, reps[j]) for j in range(size)] for i in range(size)]
    gens = tuple(table.action[g][0] for g in range(table.n_gens))
    return MultTable(size, mult, 0, gens)


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants_of_subset(mt: MultTable, elements) -> AbelianGroup:
    """Invariant factors of a finite abelian subgroup given by its elements.

    For each prime p, counting solutions of z^(p^k) = 1 recovers the
    partition of p-exponents; aligning the partitions across primes gives the
    invariant factor chain.
    """
    orders = [mt.element_order(z) for z in elements]
    partitions: dict[int, list[int]] = {}
    for p in sorted({p for o in orders for p in _prime_factors(o)}):
        maxpow = max(_p_part(o, p) for o in orders)
        at_least = []      # at_least[k-1] = #{i : lambda_i >= k}
        prev = 0
        pk = p
        while pk <= maxpow:
            cnt = sum(1 for o in orders if pk % o == 0)
            e = 0
            while cnt > 1:
                cnt //= p
                e += 1
            at_least.append(e - prev)
            prev = e
            pk *= p
        width = at_least[0] if at_least else 0
        partitions[p] = [sum(1 for c in at_least if c >= i)
                         for i in range(1, width + 1)]
    nfactors = max((len(v) for v in partitions.values()), default=0)
    descending = []
    for i in range(nfactors):
        d = 1
        for p, part in partitions.items():
            if i < len(part):
                d *= p ** part[i]
        descending.append(d)
    return AbelianGroup(0, tuple(sorted(d for d in descending if d >= 2)))


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def center_of(mt: MultTable) -> list[int]:
    gens = mt.generator_elements or tuple(range(mt.size))
    return [z for z in range(mt.size)
            if all(mt.table[z][g] == mt.table[g][z] for g in gens)]


def regular_rep_and_center(table: CosetTable):
    """Multiplication table plus the center and its abelian invariants."""
    mt = regular_rep(table)
    center = center_of(mt)
    return mt, center, abelian_invariants_of_subset(mt, center)


# --- Reidemeister-Schreier ------------------------------------------------------


def schreier_rewrite(pres: Presentation, table: CosetTable):
    """Raw subgroup presentation on Schreier generators, without simplification.

    Returns (presentation, ambient) where ambient[i] is the word, in the big
    group, of the (i+1)-st Schreier generator rep(c) g rep(c^g)^-1.
    """
    reps = coset_representatives(table)
    n = table.n_gens
    edge_index: dict[tuple[int, int], int] = {}
    ambient: list[Word] = []
    for c in range(table.index):
        for g in range(1, n + 1):
            d = table.action[g - 1][c]
            if multiply(reps[c], (g,)) == reps[d]:
                continue      # tree edge: trivial Schreier generator
            edge_index[(c, g)] = len(ambient) + 1
            ambient.append(multiply(reps[c], (g,), invert(reps[d])))

    def rewrite(c: int, w: Word) -> Word:
        out: list[int] = []
        d = c
        for x in w:
            if x > 0:
                idx = edge_index.get((d, x))
                d = table.action[x - 1][d]
                if idx:
                    out.append(idx)
            else:
                d = table.inverse[-x - 1][d]
                idx = edge_index.get((d, -x))
                if idx:
                    out.append(-idx)
        return reduce_word(out)

    relators = [rewrite(c, rel)
                for c in range(table.index) for rel in pres.relators]
    names = tuple(f"t{i}" for i in range(1, len(ambient) + 1))
    return Presentation(names, tuple(relators)), tuple(ambient)


def reidemeister_schreier(pres: Presentation, table: CosetTable,
                          tietze_budget: int = 20000) -> Presentation:
    """Presentation of the subgroup a complete coset table enumerates.

    The rewrite of every conjugate rep(c) r rep(c)^-1 is taken as a relator;
    the result is then Tietze-simplified within the budget.
    """
    raw, _ = schreier_rewrite(pres, table)
    return fpgroups.tietze_simplify(raw, budget=tietze_budget).presentation


# --- epimorphism search -----------------------------------------------------------


def find_epimorphisms(pres: Presentation, mt: MultTable,
                      cap: int = 10 ** 7) -> list[tuple[int, ...]]:
    """All generator assignments defining surjections onto the finite group.

    Exhaustive over size^rank assignments (capped); an assignment survives if
    every relator evaluates to the identity and the images generate.  Output
    order is the lexicographic order of assignments, so it does not depend on
    the relator order.
    """
    total = mt.size ** pres.rank
    if total > cap:
        raise ValueError(f"search space {total} exceeds cap {cap}")
    from itertools import product

    out = []
    for assign in product(range(mt.size), repeat=pres.rank):
        if all(mt.evaluate(rel, assign) == mt.identity for rel in pres.relators):
            if len(mt.closure(assign)) == mt.size:
                out.append(assign)
    return out


def cyclic_table(n: int) -> MultTable:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return MultTable(n, table, 0, (1 % n,))


def dihedral_table(order: int) -> MultTable:
    """Dihedral group of the given even order; elements are r^i s^j."""
    if order % 2 or order < 2:
        raise ValueError("dihedral groups here have even order >= 2")
    n = order // 2

    def idx(i, j):
        return i + n * j

    table = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2)
    return MultTable(order, table, 0, (idx(1 % n, 0), idx(0, 1)))
