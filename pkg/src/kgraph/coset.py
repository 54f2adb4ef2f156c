"""Todd–Coxeter coset enumeration (HLT strategy, no lookahead)."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .presentation import GroupPresentation, cyclic_reduce

DEFAULT_MAX_COSETS = 100_000
ENV_MAX_COSETS = "KGRAPH_MAX_COSETS"


def default_max_cosets() -> int:
    value = os.environ.get(ENV_MAX_COSETS)
    return int(value) if value else DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class Finite:
    """A complete coset table; ``order`` is the index of the subgroup."""

    order: int
    table: tuple = ()  # table[c][col], col 2i for generator i+1 and 2i+1 for its inverse

    def act(self, coset: int, word: Sequence[int]) -> int:
        for x in word:
            coset = self.table[coset][_col(x)]
        return coset

    def __str__(self) -> str:
        return f"Finite({self.order})"


@dataclass(frozen=True)
class Exceeded:
    max_cosets: int

    def __str__(self) -> str:
        return f"Exceeded({self.max_cosets})"


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def _inv_col(c: int) -> int:
    return c ^ 1


class _Enumerator:
    def __init__(self, ngens: int, max_cosets: int):
        self.width = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.width]
        self.parent = [0]  # union-find over coset numbers; parent[c] == c when live
        self.defined = 1

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def new_coset(self, c: int, col: int) -> int:
        if self.defined >= self.max_cosets:
            raise _Overflow
        d = len(self.table)
        self.table.append([-1] * self.width)
        self.parent.append(d)
        self.defined += 1
        self.table[c][col] = d
        self.table[d][_inv_col(col)] = c
        return d

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        cols = [_col(x) for x in word]
        n = len(cols)
        table = self.table
        while True:
            f, i = c, 0
            while i < n and table[f][cols[i]] >= 0:
                f = table[f][cols[i]]
                i += 1
            if i == n:
                if f != c:
                    self.coincidence(f, c)
                return
            b, j = c, n - 1
            while j >= i and table[b][_inv_col(cols[j])] >= 0:
                b = table[b][_inv_col(cols[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][_inv_col(cols[i])] = f
                return
            self.new_coset(f, cols[i])

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            row = self.table[e]
            for col in range(self.width):
                f = row[col]
                if f < 0:
                    continue
                inv = _inv_col(col)
                if self.table[f][inv] == e:
                    self.table[f][inv] = -1
                e1, f1 = self.find(e), self.find(f)
                if self.table[e1][col] >= 0:
                    self._merge(f1, self.table[e1][col], queue)
                elif self.table[f1][inv] >= 0:
                    self._merge(e1, self.table[f1][inv], queue)
                else:
                    self.table[e1][col] = f1
                    self.table[f1][inv] = e1

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        queue.append(hi)

    def compact(self) -> tuple:
        live = [c for c in range(len(self.table)) if self.live(c)]
        index = {c: n for n, c in enumerate(live)}
        return tuple(tuple(index[self.find(x)] for x in self.table[c]) for c in live)


class _Overflow(Exception):
    pass


def coset_enumerate(
    p: GroupPresentation,
    max_cosets: int | None = None,
    subgroup: Sequence[Sequence[int]] = (),
) -> Finite | Exceeded:
    """Enumerate the cosets of ⟨subgroup⟩ (trivial by default) in the group of ``p``.

    ``max_cosets`` bounds the total number of cosets ever defined, so the
    answer is deterministic; ``Finite(n)`` certifies the index is n.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    rels = [cyclic_reduce(r) for r in p.relators]
    rels = [r for r in rels if r]
    if p.ngens == 0:
        return Finite(1, ((),))
    en = _Enumerator(p.ngens, max_cosets)
    try:
        for w in subgroup:
            if w:
                en.scan_and_fill(0, tuple(w))
        c = 0
        while c < len(en.table):
            if en.live(c):
                for r in rels:
                    if not en.live(c):
                        break
                    en.scan_and_fill(c, r)
                if en.live(c):
                    for col in range(en.width):
                        if en.table[c][col] < 0:
                            en.new_coset(c, col)
            c += 1
    except _Overflow:
        return Exceeded(max_cosets)
    table = en.compact()
    return Finite(len(table), table)


def word_is_trivial(p: GroupPresentation, word: Sequence[int], max_cosets: int | None = None) -> bool | None:
    """True/False when ``p`` enumerates finitely, None when the bound is hit."""
    result = coset_enumerate(p, max_cosets)
    if isinstance(result, Exceeded):
        return None
    return result.act(0, word) == 0
