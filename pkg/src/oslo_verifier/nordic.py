"""Problem 6: Nordic squares, uphill paths and the marking construction.

Cells are addressed as 1-based ``(row, column)`` pairs with row 1 at the top.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from math import factorial

MAX_BRUTE_FORCE_N = 3

# the reference 6 x 13 marking, row 1 on top
REFERENCE_6X13 = "\n".join([
    ".#.#.#.#.#.#.",
    ".............",
    ".#.#.#.#.#.#.",
    "..#.#.#.#.#.#",
    "#............",
    "..#.#.#.#.#.#",
])


class MarkingError(RuntimeError):
    """A generated marking failed validation."""


def _neighbors(r: int, c: int, m: int, n: int):
    if r > 1:
        yield r - 1, c
    if r < m:
        yield r + 1, c
    if c > 1:
        yield r, c - 1
    if c < n:
        yield r, c + 1


@dataclass(frozen=True)
class NordicSquare:
    n: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.values) != self.n or any(len(row) != self.n for row in self.values):
            raise ValueError(f"grid must be {self.n}x{self.n}")
        if sorted(v for row in self.values for v in row) != list(range(1, self.n * self.n + 1)):
            raise ValueError(f"grid must contain each of 1..{self.n * self.n} exactly once")

    @classmethod
    def from_rows(cls, rows) -> "NordicSquare":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        return cls(len(rows), rows)

    @classmethod
    def parse(cls, text: str) -> "NordicSquare":
        return cls.from_rows(line.split() for line in text.splitlines() if line.strip())

    def __getitem__(self, cell: tuple[int, int]) -> int:
        r, c = cell
        return self.values[r - 1][c - 1]

    def cells(self):
        return [(r, c) for r in range(1, self.n + 1) for c in range(1, self.n + 1)]

    def neighbors(self, cell):
        return _neighbors(cell[0], cell[1], self.n, self.n)

    def adjacent_pairs(self):
        """Each unordered pair of edge-adjacent cells once."""
        for r, c in self.cells():
            if r < self.n:
                yield (r, c), (r + 1, c)
            if c < self.n:
                yield (r, c), (r, c + 1)

    def render(self) -> str:
        width = len(str(self.n * self.n))
        return "\n".join(" ".join(f"{v:>{width}}" for v in row) for row in self.values)


def valleys(square: NordicSquare) -> set[tuple[int, int]]:
    return {
        cell
        for cell in square.cells()
        if all(square[nb] > square[cell] for nb in square.neighbors(cell))
    }


def path_endings(square: NordicSquare) -> dict[tuple[int, int], int]:
    """Number of uphill paths ending at each cell.

    Cells are processed in increasing value order: f(c) is 1 if c is a
    valley, plus the sum of f over its smaller neighbours.
    """
    f: dict[tuple[int, int], int] = {}
    for cell in sorted(square.cells(), key=square.__getitem__):
        smaller = [nb for nb in square.neighbors(cell) if square[nb] < square[cell]]
        f[cell] = sum(f[nb] for nb in smaller) if smaller else 1
    return f


def count_uphill_paths(square: NordicSquare) -> int:
    return sum(path_endings(square).values())


def formula(n: int) -> int:
    """Smallest possible number of uphill paths in an n x n Nordic square."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * n * n - 2 * n + 1


@dataclass(frozen=True)
class MarkingPattern:
    m: int
    n: int
    marked: frozenset[tuple[int, int]]

    def render(self) -> str:
        return "\n".join(
            "".join("#" if (r, c) in self.marked else "." for c in range(1, self.n + 1))
            for r in range(1, self.m + 1)
        )


def _six_row_marks(n: int) -> set[tuple[int, int]]:
    marks = set()
    for j in range(1, n + 1):
        if j % 2 == 0:
            marks |= {(1, j), (3, j)}
        elif j > 1:
            marks |= {(4, j), (6, j)}
    marks.add((5, 1))
    return marks


def generate_marking(m: int, n: int) -> MarkingPattern:
    """Marks on an m x n board: no two adjacent, unmarked cells form a tree.

    Built from the 6-row pattern, stacked q = ceil(m/6) times, then trimmed:
    with r = 6q - m, drop the first r rows for r in {1, 3, 4} and the first
    r-1 rows plus the last row for r in {2, 5}.  Boards with a single row or
    column are paths already and get no marks.
    """
    if m < 1 or n < 1:
        raise ValueError("board dimensions must be positive")
    if m == 1 or n == 1:
        pattern = MarkingPattern(m, n, frozenset())
    else:
        q = -(-m // 6)
        r = 6 * q - m
        base = _six_row_marks(n)
        rows = list(range(1, 6 * q + 1))
        if r in (1, 3, 4):
            rows = rows[r:]
        elif r in (2, 5):
            rows = rows[r - 1 : -1]
        keep = {old: new for new, old in enumerate(rows, start=1)}
        marked = frozenset(
            (keep[row], c)
            for row in rows
            for c in range(1, n + 1)
            if ((row - 1) % 6 + 1, c) in base
        )
        pattern = MarkingPattern(m, n, marked)
    ok, diagnosis = is_independent_tree(pattern)
    if not ok:
        raise MarkingError(f"marking for {m}x{n} fails validation: {diagnosis}\n{pattern.render()}")
    return pattern


def is_independent_tree(pattern: MarkingPattern) -> tuple[bool, str]:
    """(valid, diagnosis); diagnosis is "ok", "independence", "connectivity" or "cycle"."""
    m, n, marked = pattern.m, pattern.n, pattern.marked
    for r, c in marked:
        if any(nb in marked for nb in _neighbors(r, c, m, n)):
            return False, "independence"
    free = [(r, c) for r in range(1, m + 1) for c in range(1, n + 1) if (r, c) not in marked]
    if not free:
        return False, "connectivity"
    free_set = set(free)
    edges = sum(
        1
        for r, c in free
        for nb in ((r + 1, c), (r, c + 1))
        if nb in free_set
    )
    seen = {free[0]}
    stack = [free[0]]
    while stack:
        cell = stack.pop()
        for nb in _neighbors(*cell, m, n):
            if nb in free_set and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(free):
        return False, "connectivity"
    if edges != len(free) - 1:
        return False, "cycle"
    return True, "ok"


def build_optimal_square(n: int, seed: int | None = None) -> NordicSquare:
    """Square with exactly formula(n) uphill paths.

    1 goes in a random unmarked cell; each next number goes in a random
    unmarked cell adjacent to an already numbered one; the marked cells
    take the remaining numbers in random order.
    """
    rng = random.Random(seed)
    pattern = generate_marking(n, n)
    unmarked = sorted((r, c) for r in range(1, n + 1) for c in range(1, n + 1) if (r, c) not in pattern.marked)
    grid = [[0] * n for _ in range(n)]
    cell = rng.choice(unmarked)
    grid[cell[0] - 1][cell[1] - 1] = 1
    numbered = {cell}
    frontier = {nb for nb in _neighbors(*cell, n, n) if nb not in pattern.marked}
    value = 1
    while frontier:
        value += 1
        cell = rng.choice(sorted(frontier))
        frontier.discard(cell)
        numbered.add(cell)
        grid[cell[0] - 1][cell[1] - 1] = value
        frontier |= {nb for nb in _neighbors(*cell, n, n) if nb not in pattern.marked and nb not in numbered}
    marked = sorted(pattern.marked)
    rng.shuffle(marked)
    for cell in marked:
        value += 1
        grid[cell[0] - 1][cell[1] - 1] = value
    return NordicSquare.from_rows(grid)


def brute_force_minimum(n: int) -> tuple[int, NordicSquare]:
    """Exact minimum path count over all (n^2)! squares and the first minimizer.

    Permutations are visited in lexicographic order with no pruning.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(
            f"n={n} exceeds the (n^2)! enumeration guard n <= {MAX_BRUTE_FORCE_N} "
            f"({factorial(n * n)} squares)"
        )
    size = n * n
    nbrs = [
        [(r2 - 1) * n + (c2 - 1) for r2, c2 in _neighbors(i // n + 1, i % n + 1, n, n)]
        for i in range(size)
    ]
    best, best_perm = None, None
    f = [0] * size
    for perm in permutations(range(1, size + 1)):
        # perm[i] is the value in flat cell i; order[v-1] the cell holding v
        order = [0] * size
        for i, v in enumerate(perm):
            order[v - 1] = i
        total = 0
        for i in order:
            v = perm[i]
            s = 0
            for j in nbrs[i]:
                if perm[j] < v:
                    s += f[j]
            f[i] = s or 1
            total += f[i]
        if best is None or total < best:
            best, best_perm = total, perm
    rows = [best_perm[i * n : (i + 1) * n] for i in range(n)]
    return best, NordicSquare.from_rows(rows)
