"""Braid words, their action on free groups, and van Kampen presentations.

A braid on n strands is a freely reduced word in the standard generators
s_1 ... s_(n-1), stored like free-group words as signed indices.  The action
on the free group F(g_1 ... g_n) is

    g_i ^ s_j = g_(i+1)             if i == j,
    g_i ^ s_j = g_i * g_(i-1) * g_i^-1   if i == j + 1,
    g_i ^ s_j = g_i                 otherwise,

extended letter by letter: the action of a product is the composite of the
actions, read left to right.  The action is faithful, which makes it the
equality test of choice for braids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fpgroups import (
    ParseError,
    Presentation,
    Word,
    conjugate,
    invert,
    multiply,
    power,
    reduce_word,
)


class BraidError(ValueError):
    """Strand-count mismatches and out-of-range braid letters."""


@dataclass(frozen=True)
class BraidWord:
    """Freely reduced word in the Artin generators of the braid group B_n."""

    strands: int
    letters: Word

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        reduced = reduce_word(self.letters)
        for x in reduced:
            if not 1 <= abs(x) < self.strands:
                raise BraidError(
                    f"letter s_{abs(x)} needs at least {abs(x)+1} strands")
        object.__setattr__(self, "letters", reduced)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, multiply(self.letters, other.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, invert(self.letters))

    def conjugated_by(self, other: "BraidWord") -> "BraidWord":
        """other * self * other^-1."""
        if self.strands != other.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands,
                         conjugate(other.letters, self.letters))

    def __pow__(self, n: int) -> "BraidWord":
        return BraidWord(self.strands, power(self.letters, n))

    def spell(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        run_gen, run_len = None, 0
        for x in list(self.letters) + [0]:
            if x == run_gen:
                run_len += 1
            else:
                if run_gen is not None:
                    g = abs(run_gen)
                    e = run_len if run_gen > 0 else -run_len
                    parts.append(f"s{g}" if e == 1 else f"s{g}^{e}")
                run_gen, run_len = x, 1
        return "*".join(parts)

    def __str__(self):
        return self.spell()


def sigma(strands: int, j: int, exponent: int = 1) -> BraidWord:
    """The generator s_j of B_strands, or a power of it."""
    return BraidWord(strands, power((j,), exponent))


def artin_action(braid: BraidWord, w: Word) -> Word:
    """Image of a free-group word under the braid automorphism."""
    n = braid.strands
    for x in w:
        if abs(x) > n:
            raise BraidError(f"word letter g_{abs(x)} exceeds {n} strands")
    for s in braid.letters:
        j = abs(s)
        if s > 0:
            # g_j -> g_{j+1},  g_{j+1} -> g_{j+1} g_j g_{j+1}^-1
            table = {j: (j + 1,), j + 1: (j + 1, j, -(j + 1)),
                     -j: (-(j + 1),), -(j + 1): (j + 1, -j, -(j + 1))}
        else:
            # inverse action: g_j -> g_j^-1 g_{j+1} g_j,  g_{j+1} -> g_j
            table = {j: (-j, j + 1, j), j + 1: (j,),
                     -j: (-j, -(j + 1), j), -(j + 1): (-j,)}
        out: list[int] = []
        for x in w:
            for y in table.get(x, (x,)):
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        w = tuple(out)
    return w


def braid_equal(b1: BraidWord, b2: BraidWord) -> bool:
    """Equality in the braid group, via the faithful action on F_n."""
    if b1.strands != b2.strands:
        raise BraidError("strand counts differ")
    probe = b2.inverse() * b1
    return all(artin_action(probe, (i,)) == (i,)
               for i in range(1, b1.strands + 1))


def braid_permutation(b: BraidWord) -> tuple[int, ...]:
    """Underlying permutation, as the image tuple of strands 1..n."""
    perm = list(range(b.strands + 1))
    for s in b.letters:
        j = abs(s)
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
    return tuple(perm[1:])


@dataclass(frozen=True)
class PathTable:
    """Named elementary braids shared by all monodromy paths."""

    strands: int
    entries: tuple[tuple[str, BraidWord], ...]

    def __post_init__(self):
        for _, b in self.entries:
            if b.strands != self.strands:
                raise BraidError("path table mixes strand counts")

    def braid(self, name: str) -> BraidWord:
        for key, b in self.entries:
            if key == name:
                return b
        raise KeyError(f"unknown path name {name!r}")


def compose_path_monodromy(table: PathTable, path) -> BraidWord:
    """Braid of a composite path, multiplying entries in traversal order.

    ``path`` is a sequence of (name, sign) pairs; sign -1 traverses the named
    path backwards.  Multiplication left to right in traversal order is the
    convention that reproduces the reference monodromies; see the regression
    tests.
    """
    out = BraidWord(table.strands, ())
    for name, sign in path:
        b = table.braid(name)
        out = out * (b if sign > 0 else b.inverse())
    return out


@dataclass(frozen=True)
class MonodromyData:
    """Braids indexed by the geometric generators of the base, plus options.

    ``infinity_meridian`` (a word over g_1..g_n) is extra input data: when
    present, it joins the relators to present the projective completion.
    """

    strands: int
    braids: tuple[tuple[str, BraidWord], ...]
    infinity_meridian: Word | None = None

    def __post_init__(self):
        for _, b in self.braids:
            if b.strands != self.strands:
                raise BraidError("monodromy mixes strand counts")


def _peel_conjugator(letters: Word) -> tuple[Word, Word]:
    """Split a braid word as c * tau * c^-1 by peeling matched outer letters."""
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[:i], letters[i:j]


def _strand_blocks(strands: int, letters: Word) -> list[tuple[int, int]]:
    """Maximal runs of strands linked by the letters of a braid word."""
    linked = [False] * (strands + 1)   # linked[j]: strands j, j+1 interact
    for x in letters:
        linked[abs(x)] = True
    blocks = []
    start = 1
    for j in range(1, strands + 1):
        if j == strands or not linked[j]:
            blocks.append((start, j))
            start = j + 1
    return blocks


def _block_dropped_indices(n: int, conj: Word, tau_letters: Word) -> set[int]:
    """Indices whose monodromy relation is provably redundant for c tau c^-1.

    For a block B of tau, the word X_B = (g_hi ... g_lo) ^ (c^-1) is fixed by
    the whole braid, because tau fixes the block product.  If X_B contains a
    generator g_t of B exactly once and no generator dropped for another
    block, the relation at t follows from the kept ones and may be dropped.
    For an unconjugated braid this recovers the usual rule: the top strand of
    every block is dropped, and singleton blocks contribute nothing.
    """
    c_inv = BraidWord(n, invert(conj))
    fixed_words = {}
    candidates = {}
    for lo, hi in _strand_blocks(n, tau_letters):
        prod = tuple(range(hi, lo - 1, -1))            # g_hi ... g_lo
        x = artin_action(c_inv, prod)
        fixed_words[(lo, hi)] = x
        counts: dict[int, int] = {}
        for letter in x:
            counts[abs(letter)] = counts.get(abs(letter), 0) + 1
        for t in range(hi, lo - 1, -1):
            if counts.get(t, 0) == 1:
                candidates[(lo, hi)] = t
                break
    dropped = set(candidates.values())
    # a drop is only safe if no other dropped generator occurs in its witness
    for block, t in sorted(candidates.items()):
        others = dropped - {t}
        if any(abs(letter) in others for letter in fixed_words[block]):
            dropped.discard(t)
    return dropped


def zvk_presentation(data: MonodromyData, reduction: str = "none") -> Presentation:
    """Meridian presentation of the complement from its braid monodromy.

    With ``reduction="none"`` every pair (generator, braid) contributes the
    relator (g_i ^ braid) * g_i^-1.  With ``reduction="block"`` each braid is
    peeled into c * tau * c^-1 and the relation at one index per block of tau
    is dropped whenever the redundancy witness of _block_dropped_indices
    certifies it; the kept relators are the plain (g_i ^ braid) * g_i^-1, so
    both reductions present the same group and "block" merely starts smaller.
    """
    if reduction not in ("none", "block"):
        raise ValueError("reduction must be 'none' or 'block'")
    n = data.strands
    names = tuple(f"g{i}" for i in range(1, n + 1))
    relators: list[Word] = []
    for _, braid in data.braids:
        dropped: set[int] = set()
        if reduction == "block":
            conj, tau_letters = _peel_conjugator(braid.letters)
            dropped = _block_dropped_indices(n, conj, tau_letters)
        for i in range(1, n + 1):
            if i in dropped:
                continue
            rel = multiply(artin_action(braid, (i,)), invert((i,)))
            if rel:
                relators.append(rel)
    if data.infinity_meridian is not None:
        relators.append(reduce_word(data.infinity_meridian))
    return Presentation(names, tuple(relators))


# --- monodromy text format ----------------------------------------------------
#
#   strands 3;
#   path alpha_plus: 1;
#   path beta_plus: s2^2;
#   compose mu_plus: alpha_plus * beta_plus * alpha_plus^-1;
#   braid mu_0: (s2^-1*s1)*s2^5;          # a*b is plain product; use conj()
#   infinity: (g3*(g2*g1)^2)^-1;
#
# Braid words use s<k>, '*', '^n', parentheses and '1'; 'conj(a, b)' denotes
# a b a^-1.  Words over g1..gn follow the same grammar with g<k> atoms.


@dataclass
class MonodromyFile:
    strands: int
    table: PathTable
    monodromy: MonodromyData
    compositions: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = ()


class _BraidParser:
    def __init__(self, text: str, strands: int | None = None):
        self.text = text
        self.strands = strands

    def _tokens(self, chunk: str, line: int):
        i, col = 0, 1
        out = []
        while i < len(chunk):
            c = chunk[i]
            if c.isspace():
                i += 1
                col += 1
            elif c in "()*^,":
                out.append((c, line, col))
                i += 1
                col += 1
            elif c == "-" or c.isdigit():
                j = i + 1
                while j < len(chunk) and chunk[j].isdigit():
                    j += 1
                out.append((chunk[i:j], line, col))
                col += j - i
                i = j
            elif c.isalpha() or c == "_":
                j = i + 1
                while j < len(chunk) and (chunk[j].isalnum() or chunk[j] == "_"):
                    j += 1
                out.append((chunk[i:j], line, col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {c!r}", line, col)
        out.append((None, line, col))
        return out

    def parse_word(self, chunk: str, line: int, atom: str) -> Word:
        """Parse a product expression over ``atom``-prefixed generators."""
        tokens = self._tokens(chunk, line)
        pos = 0

        def peek():
            return tokens[pos][0]

        def advance():
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            return tok

        def expect(want):
            tok, ln, cl = advance()
            if tok != want:
                raise ParseError(f"expected {want!r}, found {tok!r}", ln, cl)

        def parse_product() -> Word:
            w = parse_factor()
            while peek() == "*":
                advance()
                w = multiply(w, parse_factor())
            return w

        def parse_factor() -> Word:
            w = parse_atom()
            if peek() == "^":
                advance()
                tok, ln, cl = advance()
                try:
                    e = int(tok)
                except (TypeError, ValueError):
                    raise ParseError(f"expected integer, found {tok!r}",
                                     ln, cl) from None
                w = power(w, e)
            return w

        def parse_atom() -> Word:
            tok, ln, cl = advance()
            if tok == "(":
                w = parse_product()
                expect(")")
                return w
            if tok == "conj":
                expect("(")
                a = parse_product()
                expect(",")
                b = parse_product()
                expect(")")
                return conjugate(a, b)
            if tok == "1":
                return ()
            if tok and tok.startswith(atom) and tok[len(atom):].isdigit():
                return (int(tok[len(atom):]),)
            raise ParseError(f"expected {atom}<k>, found {tok!r}", ln, cl)

        w = parse_product()
        tok, ln, cl = tokens[pos]
        if tok is not None:
            raise ParseError(f"trailing input {tok!r}", ln, cl)
        return w

    def braid_word(self, chunk: str, line: int) -> BraidWord:
        if self.strands is None:
            raise ParseError("braid word before 'strands' declaration", line, 1)
        return BraidWord(self.strands, self.parse_word(chunk, line, "s"))


def parse_monodromy(text: str) -> MonodromyFile:
    """Parse the monodromy text format described above."""
    strands: int | None = None
    paths: list[tuple[str, BraidWord]] = []
    braids: list[tuple[str, BraidWord]] = []
    compositions: list[tuple[str, tuple[tuple[str, int], ...]]] = []
    infinity: Word | None = None
    parser = _BraidParser(text)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise ParseError("statement must end with ';'", line_no, len(raw))
        line = line[:-1].strip()
        if line.startswith("strands"):
            strands = int(line.split()[1])
            parser.strands = strands
        elif line.startswith("path ") or line.startswith("braid "):
            kind, rest = line.split(" ", 1)
            name, expr = rest.split(":", 1)
            entry = (name.strip(), parser.braid_word(expr, line_no))
            (paths if kind == "path" else braids).append(entry)
        elif line.startswith("compose "):
            name, expr = line[len("compose "):].split(":", 1)
            steps = []
            for item in expr.replace("*", " ").split():
                if item.endswith("^-1"):
                    steps.append((item[:-3], -1))
                else:
                    steps.append((item, 1))
            compositions.append((name.strip(), tuple(steps)))
        elif line.startswith("infinity"):
            _, expr = line.split(":", 1)
            if strands is None:
                raise ParseError("'infinity' before 'strands'", line_no, 1)
            infinity = parser.parse_word(expr, line_no, "g")
        else:
            raise ParseError(f"unknown statement {line.split()[0]!r}", line_no, 1)

    if strands is None:
        raise ParseError("missing 'strands' declaration", 1, 1)
    table = PathTable(strands, tuple(paths))
    for name, steps in compositions:
        braids.append((name, compose_path_monodromy(table, steps)))
    data = MonodromyData(strands, tuple(braids), infinity)
    return MonodromyFile(strands, table, data, tuple(compositions))
