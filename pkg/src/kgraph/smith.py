"""Exact Smith normal form and abelian invariants of a presentation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import GroupPresentation


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple = field(default=())

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if self.rank < 0 or any(d < 2 for d in t):
            raise ValueError(f"bad invariants rank={self.rank} torsion={t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        return f"rank {self.rank}, torsion [{', '.join(map(str, self.torsion))}]"


def exponent_matrix(p: GroupPresentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * p.ngens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form (Python ints, so exact)."""
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must also divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, nrows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, ncols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianize(p: GroupPresentation) -> AbelianInvariants:
    diag = smith_diagonal(exponent_matrix(p))
    return AbelianInvariants(p.ngens - len(diag), tuple(d for d in diag if d > 1))
