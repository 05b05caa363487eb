"""Problem 3: k-friend primes and circular arrangements.

Two distinct odd primes p, q are *k-friends* when pq = x^2 + x + k for some
nonnegative integer x.  The original statement asks for a positive x; pass
``positive=True`` to use that stricter relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from oslo_verifier.arith import exact_sqrt, is_prime, primes_below
from oslo_verifier.parallel import parallel_map

MAX_ARRANGEMENT_SIZE = 12


@dataclass(frozen=True)
class FriendWitness:
    p: int
    q: int
    k: int
    x: int

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("friends must be distinct")
        if self.x * self.x + self.x + self.k != self.p * self.q:
            raise ValueError(f"invalid witness: {self.x}^2+{self.x}+{self.k} != {self.p}*{self.q}")


def _check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def solve_friend(p: int, q: int, k: int, positive: bool = False) -> int | None:
    """Closed-form witness, without argument validation (hot path for sweeps)."""
    # x^2 + x + k = pq  <=>  (2x+1)^2 = 4pq - 4k + 1
    s = exact_sqrt(4 * p * q - 4 * k + 1)
    if s is None:
        return None
    x = (s - 1) // 2
    if positive and x == 0:
        return None
    return x


def friend_witness(p: int, q: int, k: int, positive: bool = False) -> int | None:
    """The nonnegative (or, with ``positive``, positive) x with pq = x^2+x+k, if any."""
    if p == q:
        raise ValueError("p and q must be distinct")
    _check_odd_prime(p)
    _check_odd_prime(q)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    x = solve_friend(p, q, k, positive)
    if x is not None:
        assert x * x + x + k == p * q
    return x


@lru_cache(maxsize=None)
def _odd_primes_below(limit: int) -> tuple[int, ...]:
    return tuple(q for q in primes_below(limit) if q != 2)


def smaller_friends(p: int, k: int, positive: bool = False) -> list[FriendWitness]:
    """All k-friends q < p of the odd prime p, with their witnesses."""
    _check_odd_prime(p)
    out = []
    for q in _odd_primes_below(p):
        x = solve_friend(p, q, k, positive)
        if x is not None:
            out.append(FriendWitness(p, q, k, x))
    return out


@dataclass
class FriendLemmaReport:
    p: int
    k: int
    friends: list[FriendWitness]
    failures: list[str] = field(default_factory=list)

    @property
    def green(self) -> bool:
        return not self.failures


def verify_friend_lemmas(p: int, k: int, positive: bool = False) -> FriendLemmaReport:
    """p has at most two smaller k-friends; if two, they are mutual friends.

    With friends q > r and witnesses x (for q) and y (for r), also checks
    x + y + 1 == p and that the witness for (q, r) is x - q when x >= q and
    q - x - 1 otherwise.
    """
    friends = smaller_friends(p, k, positive)
    report = FriendLemmaReport(p, k, friends)
    if len(friends) > 2:
        report.failures.append(f"p={p} k={k}: {len(friends)} smaller friends {[f.q for f in friends]}")
    elif len(friends) == 2:
        fr, fq = sorted(friends, key=lambda w: w.q)
        q, x, r, y = fq.q, fq.x, fr.q, fr.x
        if x + y + 1 != p:
            report.failures.append(f"p={p} k={k}: x+y+1={x + y + 1} != p")
        predicted = x - q if x >= q else q - x - 1
        actual = solve_friend(q, r, k, positive)
        if actual is None:
            report.failures.append(f"p={p} k={k}: friends {q},{r} are not mutual {k}-friends")
        elif actual != predicted:
            report.failures.append(f"p={p} k={k}: witness for ({q},{r}) is {actual}, derivation gives {predicted}")
    return report


def _sweep_task(args: tuple[int, int, bool]) -> tuple[list[str], int]:
    p, kmax, positive = args
    failures, pairs = [], 0
    for k in range(1, kmax + 1):
        rep = verify_friend_lemmas(p, k, positive)
        failures.extend(rep.failures)
        pairs += len(rep.friends) == 2
    return failures, pairs


@dataclass
class SweepResult:
    pmax: int
    kmax: int
    checked: int
    two_friend_cases: int
    failures: list[str]


def lemma_sweep(pmax: int, kmax: int, positive: bool = False, workers: int = 1) -> SweepResult:
    """verify_friend_lemmas for every odd prime p < pmax and 1 <= k <= kmax."""
    ps = _odd_primes_below(pmax)
    results = parallel_map(_sweep_task, [(p, kmax, positive) for p in ps], workers)
    failures = [f for fs, _ in results for f in fs]
    return SweepResult(pmax, kmax, len(ps) * kmax, sum(n for _, n in results), failures)


def friendship_graph(primes: Iterable[int], k: int, positive: bool = False) -> dict[int, dict[int, int]]:
    """Adjacency map prime -> {neighbour: witness}."""
    ps = sorted(set(primes))
    for p in ps:
        _check_odd_prime(p)
    graph: dict[int, dict[int, int]] = {p: {} for p in ps}
    for i, p in enumerate(ps):
        for q in ps[i + 1 :]:
            x = solve_friend(p, q, k, positive)
            if x is not None:
                graph[p][q] = graph[q][p] = x
    return graph


def canonical_cycle(cycle: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically least sequence among all rotations and reflections."""
    seq = tuple(cycle)
    m = len(seq)
    candidates = []
    for s in (seq, seq[::-1]):
        for i in range(m):
            candidates.append(s[i:] + s[:i])
    return min(candidates)


def valid_arrangements(primes: Iterable[int], k: int, positive: bool = False) -> list[tuple[int, ...]]:
    """All circular arrangements with every neighbouring pair k-friends,
    canonicalized up to rotation and reflection."""
    ps = sorted(set(primes))
    if len(ps) < 3:
        raise ValueError("need at least three primes to form a circle")
    if len(ps) > MAX_ARRANGEMENT_SIZE:
        raise ValueError(
            f"|S|={len(ps)} exceeds the Hamiltonian-cycle guard |S| <= {MAX_ARRANGEMENT_SIZE}"
        )
    graph = friendship_graph(ps, k, positive)
    if any(len(nbrs) < 2 for nbrs in graph.values()):
        return []
    # neighbours tried lowest-degree first
    order = {p: sorted(graph[p], key=lambda q: (len(graph[q]), q)) for p in ps}
    start = ps[0]
    found: set[tuple[int, ...]] = set()
    path = [start]
    used = {start}

    def extend(v: int) -> None:
        if len(path) == len(ps):
            if start in graph[v]:
                found.add(canonical_cycle(path))
            return
        for w in order[v]:
            if w not in used:
                used.add(w)
                path.append(w)
                extend(w)
                path.pop()
                used.discard(w)

    extend(start)
    return sorted(found)


def random_prime_subset(rng: random.Random, max_size: int = 8, prime_limit: int = 500) -> list[int]:
    pool = list(_odd_primes_below(prime_limit))
    return sorted(rng.sample(pool, rng.randint(3, max_size)))


def connected_prime_subset(rng: random.Random, k: int, max_size: int = 8, prime_limit: int = 500) -> list[int]:
    """Grow a set of friends-of-friends inside the k-friendship graph on odd primes
    below ``prime_limit``; such sets admit arrangements far more often than
    uniform subsets do.  Returns [] when the graph has no edges."""
    graph = _full_graph(k, prime_limit)
    vertices = [v for v in graph if graph[v]]
    if not vertices:
        return []
    chosen = {rng.choice(vertices)}
    target = rng.randint(3, max_size)
    while len(chosen) < target:
        frontier = sorted({w for v in chosen for w in graph[v]} - chosen)
        if not frontier:
            break
        # vertices closing a cycle (two or more chosen neighbours) go first
        closing = [w for w in frontier if sum(v in chosen for v in graph[w]) >= 2]
        chosen.add(rng.choice(closing or frontier))
    return sorted(chosen)


@lru_cache(maxsize=64)
def _full_graph(k: int, prime_limit: int) -> dict[int, dict[int, int]]:
    return friendship_graph(_odd_primes_below(prime_limit), k)


def random_instance(rng: random.Random, connected: bool, kmax: int = 50) -> tuple[int, list[int]]:
    """A (k, subset) pair with at least three primes, redrawing k and the subset
    until the connected generator yields one that large."""
    while True:
        k = rng.randint(1, kmax)
        subset = connected_prime_subset(rng, k) if connected else random_prime_subset(rng)
        if len(subset) >= 3:
            return k, subset
