import random
import re
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from oslo_verifier.arith import primes_below
from oslo_verifier.prime_circles import (
    FriendWitness,
    canonical_cycle,
    connected_prime_subset,
    friend_witness,
    friendship_graph,
    lemma_sweep,
    random_instance,
    random_prime_subset,
    smaller_friends,
    valid_arrangements,
    verify_friend_lemmas,
)

ODD_PRIMES = [p for p in primes_below(400) if p != 2]


def scan_witness(p, q, k, positive=False):
    """Linear scan over x, independent of the discriminant formula."""
    x = 1 if positive else 0
    while x * x + x + k <= p * q:
        if x * x + x + k == p * q:
            return x
        x += 1
    return None


def brute_arrangements(primes, k, positive=False):
    ps = sorted(primes)
    found = set()
    for rest in permutations(ps[1:]):
        cyc = (ps[0],) + rest
        if all(scan_witness(cyc[i], cyc[(i + 1) % len(cyc)], k, positive) is not None for i in range(len(cyc))):
            found.add(min(min(c[i:] + c[:i] for i in range(len(c))) for c in (cyc, cyc[::-1])))
    return sorted(found)


def test_friend_examples():
    assert friend_witness(3, 7, 1) == 4
    assert friend_witness(7, 19, 1) == 11
    assert friend_witness(3, 19, 1) == 7
    assert friend_witness(3, 5, 1) is None


def test_friend_validation():
    for args in [(3, 3, 1), (3, 4, 1), (2, 3, 1), (3, 5, 0)]:
        with pytest.raises(ValueError):
            friend_witness(*args)
    with pytest.raises(ValueError):
        FriendWitness(3, 7, 1, 5)


def test_positive_mode_excludes_zero_witness():
    # 3 * 5 = 0^2 + 0 + 15
    assert friend_witness(3, 5, 15) == 0
    assert friend_witness(3, 5, 15, positive=True) is None


@settings(max_examples=300)
@given(st.sampled_from(ODD_PRIMES), st.sampled_from(ODD_PRIMES), st.integers(1, 300), st.booleans())
def test_witness_matches_scan(p, q, k, positive):
    if p != q:
        assert friend_witness(p, q, k, positive) == scan_witness(p, q, k, positive)


@given(st.sampled_from(ODD_PRIMES), st.sampled_from(ODD_PRIMES), st.integers(1, 300))
def test_friendship_is_symmetric(p, q, k):
    if p != q:
        assert friend_witness(p, q, k) == friend_witness(q, p, k)


def test_smaller_friends_against_scan():
    for p in ODD_PRIMES[:40]:
        for k in (1, 2, 5, 11, 41):
            expected = [q for q in ODD_PRIMES if q < p and scan_witness(p, q, k) is not None]
            assert sorted(w.q for w in smaller_friends(p, k)) == expected


def test_two_friend_case():
    rep = verify_friend_lemmas(19, 1)
    assert sorted(w.q for w in rep.friends) == [3, 7]
    assert rep.green


def test_small_sweep_and_workers():
    serial = lemma_sweep(300, 40)
    assert serial.failures == [] and serial.two_friend_cases > 0
    assert lemma_sweep(300, 40, workers=2) == serial


def test_positive_mode_breaks_mutuality_only_through_zero_witness():
    # with x >= 1 required, two smaller friends q, r are mutual except when
    # their own witness would be 0, i.e. k == q * r
    failures = lemma_sweep(2000, 200, positive=True).failures
    assert failures
    for line in failures:
        m = re.fullmatch(r"p=\d+ k=(\d+): friends (\d+),(\d+) are not mutual \d+-friends", line)
        assert m, line
        k, q, r = map(int, m.groups())
        assert k == q * r


def test_graph():
    g = friendship_graph([3, 7, 19], 1)
    assert g == {3: {7: 4, 19: 7}, 7: {3: 4, 19: 11}, 19: {3: 7, 7: 11}}


def test_canonical_cycle():
    assert canonical_cycle([19, 7, 3]) == (3, 7, 19)
    assert canonical_cycle([7, 3, 19, 5]) == canonical_cycle([5, 19, 3, 7]) == (3, 7, 5, 19)


def test_arrangement_example():
    assert valid_arrangements([3, 7, 19], 1) == [(3, 7, 19)]


def test_arrangement_guards():
    with pytest.raises(ValueError):
        valid_arrangements([3, 7], 1)
    with pytest.raises(ValueError):
        valid_arrangements(ODD_PRIMES[:13], 1)
    with pytest.raises(ValueError):
        valid_arrangements([3, 9, 7], 1)


def test_arrangements_match_brute_force():
    rng = random.Random(3)
    checked_nonempty = 0
    for i in range(150):
        k = rng.randint(1, 50)
        s = (connected_prime_subset if i % 2 else lambda r, k: random_prime_subset(r, max_size=7))(rng, k)
        if len(s) < 3:
            continue
        s = s[:7]
        got = valid_arrangements(s, k)
        assert got == brute_arrangements(s, k)
        checked_nonempty += bool(got)
    assert checked_nonempty > 0


def test_subset_generators_are_seeded():
    a = [random_prime_subset(random.Random(9)) for _ in range(3)]
    b = [random_prime_subset(random.Random(9)) for _ in range(3)]
    assert a == b
    s = connected_prime_subset(random.Random(1), 1)
    assert 1 <= len(s) <= 8 and all(p % 2 and p < 500 for p in s)


def test_random_instance_sizes():
    rng = random.Random(4)
    for i in range(200):
        k, s = random_instance(rng, connected=i % 2 == 1)
        assert 1 <= k <= 50 and 3 <= len(s) <= 8
