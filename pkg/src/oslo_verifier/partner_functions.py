"""Problem 2: exact-rational checks of the unique-partner property.

A *partner* of x for a function f is any y with x f(y) + y f(x) <= 2.  The
property over all positive reals cannot be tested; here every statement is
checked exactly on finite samples of positive rationals.  No floating point
is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

TWO = Fraction(2)


class DomainError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or string such as ``"3/7"`` into a Fraction."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class CandidateFunction:
    """One member of the closed candidate family.

    ``reciprocal``          f(x) = 1/x
    ``scaled_reciprocal``   f(x) = c/x, c > 0
    ``affine_decreasing``   f(x) = a - b*x, b > 0 (positive only for x < a/b)
    """

    kind: str
    params: tuple[Fraction, ...] = ()

    def __post_init__(self):
        arity = {"reciprocal": 0, "scaled_reciprocal": 1, "affine_decreasing": 2}
        if self.kind not in arity:
            raise ValueError(f"unknown candidate kind {self.kind!r}")
        if len(self.params) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} parameter(s)")
        object.__setattr__(self, "params", tuple(as_rational(p) for p in self.params))
        if self.kind == "scaled_reciprocal" and self.params[0] <= 0:
            raise ValueError("scaled_reciprocal needs c > 0")
        if self.kind == "affine_decreasing" and self.params[1] <= 0:
            raise ValueError("affine_decreasing needs slope b > 0")

    @classmethod
    def reciprocal(cls) -> "CandidateFunction":
        return cls("reciprocal")

    @classmethod
    def scaled_reciprocal(cls, c) -> "CandidateFunction":
        return cls("scaled_reciprocal", (c,))

    @classmethod
    def affine_decreasing(cls, a, b) -> "CandidateFunction":
        return cls("affine_decreasing", (a, b))

    @classmethod
    def parse(cls, text: str) -> "CandidateFunction":
        """``reciprocal``, ``scaled:C`` or ``affine:A,B`` with rational parameters."""
        name, _, args = text.partition(":")
        name = {"scaled": "scaled_reciprocal", "affine": "affine_decreasing"}.get(name, name)
        params = tuple(Fraction(a) for a in args.split(",")) if args else ()
        return cls(name, params)

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({', '.join(str(p) for p in self.params)})"

    def __call__(self, x: Fraction) -> Fraction:
        if x <= 0:
            raise DomainError(f"x must be positive, got {x}")
        if self.kind == "reciprocal":
            value = 1 / x
        elif self.kind == "scaled_reciprocal":
            value = self.params[0] / x
        else:
            a, b = self.params
            value = a - b * x
        if value <= 0:
            raise DomainError(f"{self} is not positive at x={x}")
        return value


def pair_value(f: CandidateFunction, x, y) -> Fraction:
    """x f(y) + y f(x), exactly."""
    x, y = as_rational(x), as_rational(y)
    return x * f(y) + y * f(x)


def partner_set(f: CandidateFunction, x, sample: Iterable) -> set[Fraction]:
    """All y in ``sample`` with x f(y) + y f(x) <= 2."""
    x = as_rational(x)
    sample = {as_rational(y) for y in sample}
    if not sample:
        raise ValueError("sample must be nonempty")
    fx = f(x)
    return {y for y in sample if x * f(y) + y * fx <= TWO}


def partner_sets(f: CandidateFunction, sample: Iterable) -> dict[Fraction, set[Fraction]]:
    """partner_set(f, x, sample) for every x in the sample at once.

    f is evaluated once per point and the comparison with 2 is done on
    cross-multiplied integer numerators, which is exact and much faster than
    chained Fraction arithmetic.
    """
    pts = sorted({as_rational(y) for y in sample})
    if not pts:
        raise ValueError("sample must be nonempty")
    rows = [(y.numerator, y.denominator, fy.numerator, fy.denominator) for y in pts for fy in (f(y),)]
    out: dict[Fraction, set[Fraction]] = {}
    for x, (a, b, h, i) in zip(pts, rows):
        partners = set()
        for y, (e, g, c, d) in zip(pts, rows):
            # (a/b)(c/d) + (e/g)(h/i) <= 2, all denominators positive
            if a * c * g * i + e * h * b * d <= 2 * b * d * g * i:
                partners.add(y)
        out[x] = partners
    return out


def default_grid(bound: int = 20) -> list[Fraction]:
    """{p/q : 1 <= p, q <= bound}, deduplicated and sorted."""
    if bound < 1:
        raise ValueError("grid bound must be positive")
    return sorted({Fraction(p, q) for p in range(1, bound + 1) for q in range(1, bound + 1)})


@dataclass(frozen=True)
class ReciprocalIdentity:
    x: Fraction
    y: Fraction
    value: Fraction
    excess: Fraction
    identity_holds: bool
    equality: bool

    def __bool__(self) -> bool:
        # AM-GM: the excess is a nonnegative square ratio, zero exactly when x = y
        return self.identity_holds and (self.equality == (self.x == self.y))


def verify_reciprocal_identity(x, y) -> ReciprocalIdentity:
    """Check x/y + y/x - 2 == (x - y)^2 / (xy) and that equality with 2 means x == y."""
    x, y = as_rational(x), as_rational(y)
    if x <= 0 or y <= 0:
        raise DomainError("x and y must be positive")
    value = x / y + y / x
    excess = value - TWO
    holds = excess == (x - y) ** 2 / (x * y)
    return ReciprocalIdentity(x, y, value, excess, holds, excess == 0)


@dataclass
class MonotonicityReport:
    verdict: str  # "consistent" | "violated" | "inconclusive"
    partners_x1: set[Fraction]
    partners_x2: set[Fraction]
    violations: list[str] = field(default_factory=list)


def monotonicity_witness(f: CandidateFunction, x1, x2, sample: Iterable) -> MonotonicityReport:
    """Sample-scale check of the step that forces f to be strictly decreasing.

    For each partner y2 of x2 in the sample for which x1 is *not* a partner,
    f(x2) < f(x1) must hold.  More than one partner of either point is
    reported as a uniqueness violation.  No partner of x2 in the sample gives
    an inconclusive verdict: the sample is too sparse to say anything.
    """
    x1, x2 = as_rational(x1), as_rational(x2)
    if not x1 < x2:
        raise ValueError("need x1 < x2")
    sample = {as_rational(y) for y in sample}
    p1 = partner_set(f, x1, sample)
    p2 = partner_set(f, x2, sample)
    violations = []
    for x, ps in ((x1, p1), (x2, p2)):
        if len(ps) > 1:
            violations.append(f"uniqueness: x={x} has {len(ps)} partners in the sample")
    if not p2:
        return MonotonicityReport("inconclusive" if not violations else "violated", p1, p2, violations)
    for y2 in sorted(p2):
        if pair_value(f, x1, y2) > TWO and not f(x2) < f(x1):
            violations.append(f"monotonicity: partner y2={y2} of x2 but f(x2)={f(x2)} >= f(x1)={f(x1)}")
    return MonotonicityReport("violated" if violations else "consistent", p1, p2, violations)


def self_partner_check(f: CandidateFunction, x, sample: Iterable) -> bool:
    """Whether x is its own partner, i.e. x f(x) <= 1 (its partner set contains x)."""
    x = as_rational(x)
    return x in partner_set(f, x, set(sample) | {x})
