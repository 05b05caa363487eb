"""Problem 5: a^p = b! + p, searched exactly, plus the lemmas behind the proof."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from oslo_verifier.arith import iroot, is_prime

KNOWN_SOLUTIONS = ((2, 2, 2), (3, 4, 3))


@dataclass(frozen=True, order=True)
class Triple:
    a: int
    b: int
    p: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.p)


def is_solution(a: int, b: int, p: int) -> bool:
    Triple(a, b, p)
    return a**p == factorial(b) + p


def search(b_max: int = 20, p_max: int = 19) -> list[Triple]:
    """Every (a, b, p) with b <= b_max and prime p <= p_max.

    a is not enumerated: b! + p is tested for being a perfect p-th power.
    """
    found = []
    for p in (q for q in range(2, p_max + 1) if is_prime(q)):
        fact = 1
        for b in range(1, b_max + 1):
            fact *= b
            a, exact = iroot(fact + p, p)
            if exact:
                found.append(Triple(a, b, p))
    return sorted(found)


@dataclass
class LemmaReport:
    name: str
    checked: list[int]
    failures: list[str] = field(default_factory=list)

    @property
    def green(self) -> bool:
        return not self.failures


def verify_bound_lemma(p_max: int = 50) -> LemmaReport:
    """(2p-1)! < p^(2p-1) and i(2p-i) < p^2 for 1 <= i <= p-1, primes 3 <= p <= p_max."""
    report = LemmaReport("factorial_bound", [])
    for p in range(3, p_max + 1):
        if not is_prime(p):
            continue
        report.checked.append(p)
        if not factorial(2 * p - 1) < p ** (2 * p - 1):
            report.failures.append(f"p={p}: (2p-1)! >= p^(2p-1)")
        for i in range(1, p):
            if not i * (2 * p - i) < p * p:
                report.failures.append(f"p={p} i={i}: i(2p-i) >= p^2")
        if not factorial(2 * p - 1) + p < p ** (2 * p):
            report.failures.append(f"p={p}: (2p-1)! + p >= p^(2p)")
    return report


def congruence_residue(p: int) -> int:
    """p (p-1) (p^(p-3) + p^(p-5) + ... + p^2 + 1) mod (p+1)."""
    m = p + 1
    geometric = sum(pow(p, e, m) for e in range(0, p - 2, 2)) % m
    return p * (p - 1) * geometric % m


def verify_nondivisibility(p_max: int = 200) -> LemmaReport:
    """(p+1)^2 does not divide p^p - p, for primes 5 <= p <= p_max.

    Also checks the factorization p^p - p = p (p^2-1) (p^(p-3) + ... + 1) and
    the residue p (p-1) (p^(p-3) + ... + 1) == p - 1 (mod p+1).
    """
    report = LemmaReport("nondivisibility", [])
    for p in range(5, p_max + 1):
        if not is_prime(p):
            continue
        report.checked.append(p)
        value = p**p - p
        if value % (p + 1) ** 2 == 0:
            report.failures.append(f"p={p}: (p+1)^2 divides p^p - p")
        geometric = sum(p**e for e in range(0, p - 2, 2))
        if p * (p * p - 1) * geometric != value:
            report.failures.append(f"p={p}: factorization of p^p - p fails")
        if congruence_residue(p) != p - 1:
            report.failures.append(f"p={p}: residue {congruence_residue(p)} != p-1 mod p+1")
    return report


@dataclass
class WindowReport:
    inside: list[Triple]
    exceptions: list[Triple]
    failures: list[Triple]

    @property
    def green(self) -> bool:
        return not self.failures


def verify_window_property(solutions: list[Triple]) -> WindowReport:
    """Every solution other than (2,2,2) has p < b < 2p."""
    inside, exceptions, failures = [], [], []
    for t in solutions:
        if t.as_tuple() == (2, 2, 2):
            exceptions.append(t)
        elif t.p < t.b < 2 * t.p:
            inside.append(t)
        else:
            failures.append(t)
    return WindowReport(inside, exceptions, failures)
