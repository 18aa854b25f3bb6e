"""Free-group words, finitely presented groups, and Tietze simplification.

A word in a free group is a flat tuple of nonzero signed integers: ``k``
stands for the k-th generator (1-based), ``-k`` for its inverse.  Every word
handled by this module is freely reduced; the empty tuple is the identity.
Relators of a presentation are additionally cyclically reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Word = tuple[int, ...]


class WordError(ValueError):
    """Raised for malformed words (zero letters, out-of-range indices)."""


class ParseError(ValueError):
    """Syntax or scope error in presentation text, with line/column info."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


def reduce_word(letters) -> Word:
    """Freely reduce a sequence of signed generator indices.

    Idempotent and never length-increasing; adjacent inverse pairs cancel.

    >>> reduce_word([1, 2, -2, 1])
    (1, 1)
    """
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise WordError("word letters must be nonzero signed indices")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Word) -> Word:
    """Product of already-reduced words, reduced."""
    prod: list[int] = []
    for w in words:
        for x in w:
            if prod and prod[-1] == -x:
                prod.pop()
            else:
                prod.append(x)
    return tuple(prod)


def conjugate(a: Word, b: Word) -> Word:
    """Return a * b * a^-1, reduced."""
    return multiply(a, b, invert(a))


def commutator(a: Word, b: Word) -> Word:
    """Return a * b * a^-1 * b^-1, reduced."""
    return multiply(a, b, invert(a), invert(b))


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    return multiply(*([w] * n)) if n else ()


def cyclic_reduce(w: Word) -> Word:
    """Strip matching conjugating letters from both ends."""
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def generator_span(words) -> int:
    """Largest generator index appearing in any of the words."""
    return max((abs(x) for w in words for x in w), default=0)


def _cyclic_rotations(w: Word):
    for i in range(len(w)):
        yield w[i:] + w[:i]


def _relator_key(w: Word) -> Word:
    """Canonical representative of a relator up to rotation and inversion.

    Two relators with the same key have the same normal closure, so one of
    them is redundant.
    """
    if not w:
        return ()
    candidates = list(_cyclic_rotations(w)) + list(_cyclic_rotations(invert(w)))
    return min(candidates)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator names plus relator words.

    Relators are stored freely and cyclically reduced; empty and duplicate
    relators are dropped at construction (``dropped`` counts them).
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be distinct")
        n = len(self.generators)
        cleaned = []
        seen = set()
        dropped = 0
        for rel in self.relators:
            rel = cyclic_reduce(reduce_word(rel))
            if generator_span([rel]) > n:
                raise WordError(
                    f"relator uses generator index beyond the {n} declared")
            key = _relator_key(rel)
            if not rel or key in seen:
                dropped += 1
                continue
            seen.add(key)
            cleaned.append(rel)
        object.__setattr__(self, "relators", tuple(cleaned))
        object.__setattr__(self, "dropped", self.dropped + dropped)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def total_relator_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def with_relators(self, extra) -> "Presentation":
        """New presentation with additional relators appended."""
        return Presentation(self.generators, self.relators + tuple(extra))

    def spell(self, w: Word) -> str:
        """Render a word over this presentation's generator names."""
        if not w:
            return "1"
        parts = []
        for g, e in _syllables(w):
            name = self.generators[g - 1]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        return print_presentation(self)


def _syllables(w: Word):
    """Group a word into (generator, exponent) runs."""
    out = []
    for x in w:
        g, e = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
            out[-1][1] += e
        else:
            out.append([g, e])
    return [(g, e) for g, e in out]


# --- text grammar -----------------------------------------------------------
#
#   file      := stmt* ;  stmt := "gens" ident+ ";" | "rel" relation ";"
#   relation  := word | word "=" word         (w1 = w2 stored as w1 * w2^-1)
#   word      := factor ("*" factor)*
#   factor    := atom ("^" integer)?
#   atom      := ident | "(" word ")" | "[" word "," word "]"
#   comments  := "#" to end of line

_PUNCT = set("();*^=[],")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            col += 1
            i += 1
        elif c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c in _PUNCT:
            tokens.append((c, line, col))
            col += 1
            i += 1
        elif c == "-" or c.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if text[i:j] == "-":
                raise ParseError("stray '-'", line, col)
            tokens.append((text[i:j], line, col))
            col += j - i
            i = j
        elif c.isalpha() or c == "_":
            j = i + 1
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((text[i:j], line, col))
            col += j - i
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append((None, line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, want):
        tok, line, col = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok!r}", line, col)

    def fail(self, message):
        _, line, col = self.tokens[self.pos]
        raise ParseError(message, line, col)

    def parse_file(self):
        gens: list[str] = []
        index: dict[str, int] = {}
        relators: list[Word] = []
        dropped = 0
        while self.peek() is not None:
            tok, line, col = self.next()
            if tok == "gens":
                while self.peek() != ";":
                    name, line, col = self.next()
                    if name is None or name in _PUNCT or name[0].isdigit():
                        raise ParseError("expected generator name", line, col)
                    if name in index:
                        raise ParseError(f"duplicate generator {name!r}", line, col)
                    index[name] = len(gens) + 1
                    gens.append(name)
                self.expect(";")
            elif tok == "rel":
                lhs = self.parse_word(index)
                if self.peek() == "=":
                    self.next()
                    rhs = self.parse_word(index)
                    lhs = multiply(lhs, invert(rhs))
                self.expect(";")
                if cyclic_reduce(lhs):
                    relators.append(lhs)
                else:
                    dropped += 1
            else:
                raise ParseError(f"expected 'gens' or 'rel', found {tok!r}", line, col)
        return Presentation(tuple(gens), tuple(relators), dropped=dropped)

    def parse_word(self, index) -> Word:
        factors = [self.parse_factor(index)]
        while self.peek() == "*":
            self.next()
            factors.append(self.parse_factor(index))
        return multiply(*factors)

    def parse_factor(self, index) -> Word:
        atom = self.parse_atom(index)
        if self.peek() == "^":
            self.next()
            tok, line, col = self.next()
            try:
                e = int(tok)
            except (TypeError, ValueError):
                raise ParseError(f"expected integer exponent, found {tok!r}",
                                 line, col) from None
            return power(atom, e)
        return atom

    def parse_atom(self, index) -> Word:
        tok, line, col = self.next()
        if tok == "(":
            w = self.parse_word(index)
            self.expect(")")
            return w
        if tok == "[":
            a = self.parse_word(index)
            self.expect(",")
            b = self.parse_word(index)
            self.expect("]")
            return commutator(a, b)
        if tok == "1":
            return ()
        if tok is None or tok in _PUNCT or tok[0].isdigit() or tok == "-":
            raise ParseError(f"expected a generator, found {tok!r}", line, col)
        if tok not in index:
            raise ParseError(f"undeclared generator {tok!r}", line, col)
        return (index[tok],)


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text; see the grammar at the top of this section.

    The commutator bracket expands as [a, b] = a b a^-1 b^-1.
    """
    return _Parser(text).parse_file()


def print_presentation(pres: Presentation) -> str:
    """Canonical text form; parse_presentation inverts this exactly."""
    lines = []
    if pres.generators:
        lines.append("gens " + " ".join(pres.generators) + ";")
    for rel in pres.relators:
        lines.append(f"rel {pres.spell(rel)};")
    return "\n".join(lines) + ("\n" if lines else "")


# --- Tietze simplification --------------------------------------------------


@dataclass(frozen=True)
class TietzeResult:
    presentation: Presentation
    completed: bool
    steps: int


def _substitute(word: Word, gen: int, image: Word) -> Word:
    """Replace generator ``gen`` by ``image`` throughout ``word``."""
    image_inv = invert(image)
    out: list[Word] = []
    for x in word:
        if x == gen:
            out.append(image)
        elif x == -gen:
            out.append(image_inv)
        else:
            out.append((x,))
    return multiply(*out)


def _drop_generator(word: Word, gen: int) -> Word:
    """Renumber letters after the removal of ``gen`` (which must not occur)."""
    return tuple(x - 1 if x > gen else x + 1 if x < -gen else x for x in word)


def _isolated_candidates(relators):
    """(relator index, signed gen) pairs where the generator occurs once.

    Ordered by relator length, then relator index, then descending generator
    index: the shortest defining relator wins, and on a tie the later-named
    generator is the one eliminated (so <a, b | b a^-1> keeps a).
    """
    out = []
    for ri, rel in enumerate(relators):
        counts: dict[int, int] = {}
        for x in rel:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for g in (g for g, c in counts.items() if c == 1):
            sign = next(x for x in rel if abs(x) == g)
            out.append(((len(rel), ri, -g), ri, sign))
    return [(ri, sign) for _, ri, sign in sorted(out)]


def _try_shorten(target: Word, rule: Word) -> Word | None:
    """Shorten ``target`` using the relation ``rule`` = 1, if possible.

    Scans rotations of the rule and of its inverse for a factorization
    u * v^-1 with |u| > |v| and u a substring of the target; replacing u by v
    is multiplication by a conjugate of the rule, hence a Tietze move.
    """
    n = len(rule)
    if n < 2:
        return None
    half = n // 2 + 1
    for base in (rule, invert(rule)):
        for rot in _cyclic_rotations(base):
            u = rot[:half]
            v = invert(rot[half:])
            for i in range(len(target) - len(u) + 1):
                if target[i:i + len(u)] == u:
                    cand = multiply(target[:i], v, target[i + len(u):])
                    if len(cand) < len(target):
                        return cand
    return None


def tietze_simplify(pres: Presentation, budget: int = 10000) -> TietzeResult:
    """Simplify a presentation by Tietze moves, keeping the group unchanged.

    Moves: free/cyclic reduction, dropping trivial and duplicate relators,
    eliminating a generator that some relator defines in terms of the others
    (shortest defining relator first), and substituting relators into one
    another when that shortens them.  Non-growing moves are always preferred;
    only when no move keeps the total relator length from growing is the
    least-growing generator elimination forced, which is what lets rewritten
    subgroup presentations collapse.  Returns best-so-far with
    ``completed=False`` once the budget runs out.
    """
    gens = list(pres.generators)
    relators = list(pres.relators)
    steps = 0

    def normalized(rels):
        seen = set()
        out = []
        for rel in rels:
            rel = cyclic_reduce(reduce_word(rel))
            key = _relator_key(rel)
            if rel and key not in seen:
                seen.add(key)
                out.append(rel)
        return out

    relators = normalized(relators)
    while steps < budget:
        # Generator elimination is attempted first: it is the move that
        # actually shrinks the presentation.  A candidate is accepted only
        # when, after the substituted relators are reduced and deduplicated
        # again, the total relator length has not grown.
        eliminated = False
        current_total = sum(len(r) for r in relators)
        for ri, signed in _isolated_candidates(relators):
            rel = relators[ri]
            g = abs(signed)
            k = rel.index(signed)
            rest = rel[k + 1:] + rel[:k]      # rel ~ signed * rest cyclically
            image = invert(rest) if signed > 0 else rest
            others = relators[:ri] + relators[ri + 1:]
            candidate = normalized(_substitute(r, g, image) for r in others)
            if sum(len(r) for r in candidate) > current_total:
                continue
            relators = [_drop_generator(r, g) for r in candidate]
            del gens[g - 1]
            steps += 1
            eliminated = True
            break
        if eliminated:
            continue

        shortened = False
        order = sorted(range(len(relators)), key=lambda i: len(relators[i]))
        for i in order:
            for j in range(len(relators)):
                if i == j:
                    continue
                cand = _try_shorten(relators[j], relators[i])
                if cand is not None:
                    relators[j] = cand
                    relators = normalized(relators)
                    shortened = True
                    steps += 1
                    break
            if shortened:
                break
        if shortened:
            continue

        # Fully stuck: no non-growing move exists.  Force the elimination
        # that grows the total least; generators only ever disappear, so
        # this still terminates, and it is what lets rewritten subgroup
        # presentations collapse.
        best = None
        for ri, signed in _isolated_candidates(relators):
            rel = relators[ri]
            g = abs(signed)
            k = rel.index(signed)
            rest = rel[k + 1:] + rel[:k]
            image = invert(rest) if signed > 0 else rest
            others = relators[:ri] + relators[ri + 1:]
            candidate = normalized(_substitute(r, g, image) for r in others)
            total = sum(len(r) for r in candidate)
            if best is None or total < best[0]:
                best = (total, g, candidate)
        if best is None:
            return TietzeResult(Presentation(tuple(gens), tuple(relators)),
                                True, steps)
        _, g, candidate = best
        relators = [_drop_generator(r, g) for r in candidate]
        del gens[g - 1]
        steps += 1
    return TietzeResult(Presentation(tuple(gens), tuple(relators)), False, steps)
