"""Problem 1: Marianne's coin-chain operation.

Rows are stored as a bitmask (bit ``i`` set means coin ``i`` is bronze, ``B``)
so that exhaustive enumeration over all C(2n, n) orderings stays cheap.
Positions are 0-based internally and 1-based (``k``) in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb

from oslo_verifier.parallel import parallel_map

MAX_EXHAUSTIVE_N = 7


class MalformedRowError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    """The step budget ran out before the trajectory was sorted or cycled."""


class GuardError(ValueError):
    """Instance is above the exhaustive-enumeration guard."""


@dataclass(frozen=True)
class CoinRow:
    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise MalformedRowError(f"n must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> (2 * self.n):
            raise MalformedRowError("row has coins beyond position 2n")
        if self.bits.bit_count() != self.n:
            raise MalformedRowError(f"row must contain exactly {self.n} coins of each type")

    @classmethod
    def from_string(cls, s: str) -> "CoinRow":
        s = s.strip().upper()
        if not s or set(s) - {"A", "B"}:
            raise MalformedRowError(f"row must be a nonempty string over {{A, B}}: {s!r}")
        if len(s) % 2:
            raise MalformedRowError(f"row length must be even, got {len(s)}")
        bits = sum(1 << i for i, c in enumerate(s) if c == "B")
        return cls(bits, len(s) // 2)

    @property
    def length(self) -> int:
        return 2 * self.n

    def __str__(self) -> str:
        return "".join("B" if self.bits >> i & 1 else "A" for i in range(self.length))

    def coin(self, i: int) -> str:
        return "B" if self.bits >> i & 1 else "A"

    def is_sorted(self) -> bool:
        """True when the leftmost n coins are all of one type."""
        low = self.bits & ((1 << self.n) - 1)
        return low == 0 or low == (1 << self.n) - 1


def decompose(row: CoinRow) -> list[tuple[str, int]]:
    """Run-length encode a row into its blocks, e.g. AABBBABA -> A2 B3 A1 B1 A1."""
    runs: list[tuple[str, int]] = []
    for i in range(row.length):
        c = row.coin(i)
        if runs and runs[-1][0] == c:
            runs[-1] = (c, runs[-1][1] + 1)
        else:
            runs.append((c, 1))
    return runs


def expand(runs: list[tuple[str, int]]) -> str:
    return "".join(c * length for c, length in runs)


def block_count(row: CoinRow) -> int:
    # number of positions where the coin differs from its left neighbour, plus one
    changes = (row.bits ^ (row.bits >> 1)) & ((1 << (row.length - 1)) - 1)
    return changes.bit_count() + 1


def _block_bounds(row: CoinRow, pos: int) -> tuple[int, int]:
    bit = row.bits >> pos & 1
    lo = pos
    while lo > 0 and (row.bits >> (lo - 1) & 1) == bit:
        lo -= 1
    hi = pos
    while hi < row.length - 1 and (row.bits >> (hi + 1) & 1) == bit:
        hi += 1
    return lo, hi


def apply_operation(row: CoinRow, k: int) -> CoinRow:
    """Move the block containing the k-th coin (1-based) to the left end."""
    if not 1 <= k <= row.length:
        raise ValueError(f"k must lie in [1, {row.length}], got {k}")
    lo, hi = _block_bounds(row, k - 1)
    width = hi - lo + 1
    block = (1 << width) - 1 if row.bits >> lo & 1 else 0
    prefix = row.bits & ((1 << lo) - 1)
    suffix = row.bits >> (hi + 1) << (hi + 1)
    return CoinRow(block | (prefix << width) | suffix, row.n)


@dataclass(frozen=True)
class ProcessOutcome:
    status: str  # "reached_sorted" | "entered_cycle"
    step: int
    trajectory: tuple[CoinRow, ...]
    cycle_start: int | None = None

    @property
    def sorted(self) -> bool:
        return self.status == "reached_sorted"


def run_process(row: CoinRow, k: int, max_steps: int | None = None) -> ProcessOutcome:
    """Iterate the operation until the row is sorted or a state repeats.

    For ``reached_sorted``, ``step`` is the index of the first sorted state.
    For ``entered_cycle``, ``step`` is the index of the first repeated state
    and ``cycle_start`` the index of its earlier occurrence.
    """
    if not 1 <= k <= row.length:
        raise ValueError(f"k must lie in [1, {row.length}], got {k}")
    if max_steps is None:
        max_steps = comb(row.length, row.n) + 1
    seen = {row.bits: 0}
    trajectory = [row]
    current = row
    for step in range(max_steps + 1):
        if current.is_sorted():
            return ProcessOutcome("reached_sorted", step, tuple(trajectory))
        if step == max_steps:
            break
        current = apply_operation(current, k)
        if current.bits in seen:
            return ProcessOutcome("entered_cycle", step + 1, tuple(trajectory), seen[current.bits])
        seen[current.bits] = step + 1
        trajectory.append(current)
    raise InconclusiveError(f"no sorted state or cycle within {max_steps} steps from {row}, k={k}")


def all_rows(n: int):
    """Every ordering of n A's and n B's, in lexicographic order of the string."""
    full = (1 << 2 * n) - 1
    for a_positions in combinations(range(2 * n), n):
        a_bits = sum(1 << i for i in a_positions)
        yield CoinRow(full ^ a_bits, n)


def _check_guard(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_EXHAUSTIVE_N:
        raise GuardError(
            f"n={n} exceeds the exhaustive guard n <= {MAX_EXHAUSTIVE_N} "
            f"(C(2n,n) orderings); refusing a non-exhaustive claim"
        )


def find_counterexample(n: int, k: int) -> CoinRow | None:
    """Lexicographically first ordering that never gets sorted, or None."""
    _check_guard(n)
    if not 1 <= k <= 2 * n:
        raise ValueError(f"k must lie in [1, {2 * n}], got {k}")
    for row in all_rows(n):
        if not run_process(row, k).sorted:
            return row
    return None


def classify_pair(n: int, k: int) -> bool:
    """True iff every initial ordering eventually has its leftmost n coins alike."""
    return find_counterexample(n, k) is None


def claimed_valid(n: int, k: int) -> bool:
    return n <= k <= ceil(3 * n / 2)


@dataclass(frozen=True)
class PairClassification:
    n: int
    valid_k: frozenset[int]
    claimed_k: frozenset[int]
    witnesses: dict[int, str]

    @property
    def agrees(self) -> bool:
        return self.valid_k == self.claimed_k


def _classify_task(args: tuple[int, int]) -> tuple[int, str | None]:
    n, k = args
    w = find_counterexample(n, k)
    return k, None if w is None else str(w)


def classify_all(n: int, workers: int = 1) -> PairClassification:
    _check_guard(n)
    results = parallel_map(_classify_task, [(n, k) for k in range(1, 2 * n + 1)], workers)
    witnesses = {k: w for k, w in results if w is not None}
    valid = frozenset(k for k, w in results if w is None)
    claimed = frozenset(k for k in range(1, 2 * n + 1) if claimed_valid(n, k))
    return PairClassification(n, valid, claimed, witnesses)


def monotonicity_violations(n: int) -> list[tuple[str, int]]:
    """(row, k) pairs where one operation increases the block count."""
    _check_guard(n)
    bad = []
    for row in all_rows(n):
        before = block_count(row)
        for k in range(1, 2 * n + 1):
            if block_count(apply_operation(row, k)) > before:
                bad.append((str(row), k))
    return bad


def three_step_violations(n: int) -> list[tuple[str, int]]:
    """(row, k) pairs, k in the claimed range and row with >= 3 blocks, where
    three operations fail to reduce the block count."""
    _check_guard(n)
    bad = []
    for row in all_rows(n):
        before = block_count(row)
        if before < 3:
            continue
        for k in range(n, ceil(3 * n / 2) + 1):
            r = row
            for _ in range(3):
                r = apply_operation(r, k)
            if block_count(r) >= before:
                bad.append((str(row), k))
    return bad


def fixed_point_row(n: int) -> CoinRow:
    """A^(n-1) B^n A: unchanged by the operation whenever k < n."""
    return CoinRow.from_string("A" * (n - 1) + "B" * n + "A")


def four_block_row(n: int) -> CoinRow:
    """A^ceil(n/2) B^ceil(n/2) A^floor(n/2) B^floor(n/2): cycles for k > ceil(3n/2)."""
    hi, lo = -(-n // 2), n // 2
    return CoinRow.from_string("A" * hi + "B" * hi + "A" * lo + "B" * lo)


def read_golden(path) -> list[str]:
    with open(path) as fh:
        return [line.strip().upper() for line in fh if line.strip() and not line.startswith("#")]


def write_golden(path, outcome: ProcessOutcome) -> None:
    with open(path, "w") as fh:
        for r in outcome.trajectory:
            fh.write(f"{r}\n")
