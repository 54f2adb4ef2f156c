"""Finitely presented groups: words, the text format, and Tietze simplification.

A word is a tuple of nonzero ints; ``i`` is the i-th generator (1-based) and
``-i`` its inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError

Word = tuple


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def rotations(word: Sequence[int]) -> list[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def canonical_relator(word: Sequence[int]) -> Word:
    """A representative of the cyclic word up to rotation and inversion."""
    w = cyclic_reduce(word)
    return min(rotations(w) + rotations(inverse(w)))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"generators are not distinct: {gens}")
        n = len(gens)
        rels = []
        for r in self.relators:
            r = free_reduce(r)
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError(f"relator {r} uses letters outside 1..{n}")
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def with_relators(self, extra: Iterable[Sequence[int]]) -> GroupPresentation:
        return GroupPresentation(self.generators, self.relators + tuple(tuple(r) for r in extra))

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word, self.generators)

    def __str__(self) -> str:
        return format_presentation(self)


# -- text format -------------------------------------------------------------


def _inverse_token(name: str, gens: Sequence[str]) -> str:
    if len(name) == 1 and name.isalpha() and name.islower() and name.upper() not in gens:
        return name.upper()
    return name + "^-1"


def format_word(word: Sequence[int], gens: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(gens[x - 1] if x > 0 else _inverse_token(gens[-x - 1], gens) for x in word)


def parse_word(text: str, gens: Sequence[str]) -> Word:
    index = {g: i for i, g in enumerate(gens, start=1)}
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        if tok in index:
            out.append(index[tok])
        elif tok.endswith("^-1") and tok[:-3] in index:
            out.append(-index[tok[:-3]])
        elif len(tok) == 1 and tok.lower() in index and tok.isupper():
            out.append(-index[tok.lower()])
        else:
            raise ValueError(f"unknown generator '{tok}'")
    return tuple(out)


def format_presentation(p: GroupPresentation) -> str:
    lines = ["gens: " + ", ".join(p.generators)]
    lines += ["rel: " + format_word(r, p.generators) for r in p.relators]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> GroupPresentation:
    gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(gens|rel)\s*:(.*)", line)
        if not m:
            raise ParseError("expected 'gens:' or 'rel:'", lineno, 1)
        if m.group(1) == "gens":
            if gens is not None:
                raise ParseError("'gens' given twice", lineno, 1)
            body = m.group(2).strip()
            gens = [g.strip() for g in body.split(",")] if body else []
        else:
            if gens is None:
                raise ParseError("'gens' must come before relators", lineno, 1)
            try:
                rels.append(parse_word(m.group(2), gens))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
    if gens is None:
        raise ParseError("missing 'gens' line", 1, 1)
    return GroupPresentation(tuple(gens), tuple(rels))


# -- Tietze transformations --------------------------------------------------


def _substitute(word: Sequence[int], gen: int, image: Sequence[int]) -> Word:
    inv = inverse(image)
    out: list[int] = []
    for x in word:
        if x == gen:
            out.extend(image)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def _renumber(rels: list[Word], gens: list[str], dropped: int) -> tuple[list[Word], list[str]]:
    def shift(x):
        a = abs(x)
        return x if a < dropped else (x - 1 if x > 0 else x + 1)

    return [tuple(shift(x) for x in r) for r in rels], gens[: dropped - 1] + gens[dropped:]


def _tidy(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = canonical_relator(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _eliminate(rels: list[Word], gens: list[str]):
    """Drop one generator that occurs exactly once in some relator."""
    best = None
    for n, r in enumerate(rels):
        counts: dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for gen in sorted(counts):
            if counts[gen] == 1 and (best is None or len(r) < best[0]):
                best = (len(r), n, gen)
    if best is None:
        return None
    _, n, gen = best
    r = rels[n]
    i = next(i for i, x in enumerate(r) if abs(x) == gen)
    rot = r[i:] + r[:i]  # rot = gen^±1 · rest, and rot = 1
    rest = rot[1:]
    image = inverse(rest) if rot[0] > 0 else tuple(rest)
    others = [_substitute(w, gen, image) for m, w in enumerate(rels) if m != n]
    return _renumber(others, gens, gen)


def _shorten(rels: list[Word]):
    """Replace a long piece of one relator by the short rest of another."""
    order = sorted(range(len(rels)), key=lambda n: len(rels[n]))
    for a in order:
        s = rels[a]
        size = len(s)
        keep = size // 2 + 1
        for b in order:
            r = rels[b]
            if b == a or len(r) < keep:
                continue
            for conj in rotations(s) + rotations(inverse(s)):
                piece, rest = conj[:keep], conj[keep:]
                # piece · rest = 1, so piece = rest⁻¹, which is shorter
                doubled = r + r
                for i in range(len(r)):
                    if doubled[i : i + keep] == piece:
                        tail = doubled[i + keep : i + len(r)]
                        new = cyclic_reduce(inverse(rest) + tail)
                        if len(new) < len(r):
                            updated = list(rels)
                            updated[b] = new
                            return updated
    return None


def tietze_simplify(p: GroupPresentation, budget: int = 1000) -> GroupPresentation:
    """Simplify by reduction, generator elimination and relator shortening.

    Every step preserves the isomorphism type; ``budget`` caps the number of
    eliminations plus shortenings, after which the current presentation is
    returned.
    """
    gens = list(p.generators)
    rels = _tidy(list(p.relators))
    steps = 0
    while steps < budget:
        result = _eliminate(rels, gens)
        if result is not None:
            rels, gens = result
            rels = _tidy(rels)
            steps += 1
            continue
        shorter = _shorten(rels)
        if shorter is None:
            break
        rels = _tidy(shorter)
        steps += 1
    return GroupPresentation(tuple(gens), tuple(rels))
