from math import factorial

import pytest

from oslo_verifier.arith import is_prime
from oslo_verifier.diophantine import (
    Triple,
    congruence_residue,
    is_solution,
    search,
    verify_bound_lemma,
    verify_nondivisibility,
    verify_window_property,
)


def bisect_root(y: int, p: int) -> int | None:
    """Independent of Newton's method: plain bisection for a with a^p == y."""
    lo, hi = 1, 1 << (y.bit_length() // p + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**p
        if v == y:
            return mid
        if v < y:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def bisect_search(b_max, p_max):
    out = []
    for p in range(2, p_max + 1):
        if is_prime(p):
            for b in range(1, b_max + 1):
                a = bisect_root(factorial(b) + p, p)
                if a is not None:
                    out.append((a, b, p))
    return sorted(out)


def enumerate_triples(b_max, p_max):
    """Full (a, b, p) enumeration with a bounded by the largest b! + p."""
    out = []
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        targets = {factorial(b) + p: b for b in range(1, b_max + 1)}
        top = max(targets)
        a = 1
        while a**p <= top:
            if a**p in targets:
                out.append((a, targets[a**p], p))
            a += 1
    return sorted(out)


def test_is_solution():
    assert is_solution(2, 2, 2)
    assert is_solution(3, 4, 3)
    assert not is_solution(2, 3, 2)


def test_triple_validation():
    with pytest.raises(ValueError):
        Triple(2, 2, 4)
    with pytest.raises(ValueError):
        Triple(0, 2, 2)


def test_search_defaults():
    assert [t.as_tuple() for t in search()] == [(2, 2, 2), (3, 4, 3)]


def test_search_small_boxes():
    assert [t.as_tuple() for t in search(2, 2)] == [(2, 2, 2)]
    assert search(1, 2) == []


def test_search_agrees_with_bisection_oracle():
    assert [t.as_tuple() for t in search(20, 19)] == bisect_search(20, 19)


def test_search_agrees_with_full_enumeration():
    # a-enumeration is only feasible in a smaller box (sqrt(12!) ~ 2e4)
    assert [t.as_tuple() for t in search(12, 11)] == enumerate_triples(12, 11)


def test_search_solutions_all_accepted_by_is_solution():
    for t in search(30, 31):
        assert is_solution(*t.as_tuple())


def test_bound_lemma():
    rep = verify_bound_lemma(50)
    assert rep.green
    assert rep.checked == [p for p in range(3, 51) if is_prime(p)]
    assert factorial(9) == 362880 < 5**9 == 1953125
    assert factorial(5) == 120 < 3**5 == 243
    assert max(i * (14 - i) for i in range(1, 7)) == 48 < 49


def test_nondivisibility():
    rep = verify_nondivisibility(200)
    assert rep.green
    assert rep.checked[0] == 5 and rep.checked[-1] == 199
    assert (5**5 - 5) % 36 == 24
    assert (7**7 - 7) % 64 != 0


def test_congruence_step():
    assert 5 * 4 * (25 + 1) == 520 == 86 * 6 + 4
    assert congruence_residue(5) == 4
    for p in range(5, 200):
        if is_prime(p):
            assert congruence_residue(p) == p - 1


def test_window_property():
    rep = verify_window_property(search())
    assert rep.green
    assert [t.as_tuple() for t in rep.exceptions] == [(2, 2, 2)]
    assert [t.as_tuple() for t in rep.inside] == [(3, 4, 3)]
    assert verify_window_property([]).green


def test_window_property_flags_outsider():
    # not a real solution; checks the classification logic only
    assert not verify_window_property([Triple(5, 3, 3)]).green
