import numpy as np
import pytest

import oracles
from dessins.primes import is_prime, prime_power, primes_upto, segmented_primes


def test_small_values():
    assert not is_prime(0) and not is_prime(1)
    assert is_prime(2) and is_prime(3) and not is_prime(4)
    assert is_prime(8191)
    assert 1 + 90 + 90**2 == 8191


@pytest.mark.slow
def test_agrees_with_sieve_up_to_1e7():
    n = 10**7
    flags = oracles.sieve(n)
    bad = [m for m in range(n + 1) if is_prime(m) != bool(flags[m])]
    assert bad == []


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to long runs of prime bases
    for m in [
        2047,
        3215031751,
        3825123056546413051,
        318665857834031151167461,
        3317044064679887385961981,
        561 * 1105,
    ]:
        assert not is_prime(m), m


def test_large_primes():
    for e in (61, 89, 107, 127):
        assert is_prime(2**e - 1)
    assert not is_prime(2**67 - 1)  # 193707721 * 761838257287
    assert not is_prime(2**128 + 1)
    assert is_prime(2**127 - 1)
    # product of two 64-bit primes, well above the deterministic bound
    assert not is_prime((2**61 - 1) * (2**89 - 1))


def test_primes_upto_matches_oracle():
    flags = oracles.sieve(100000)
    want = [i for i in range(100001) if flags[i]]
    assert primes_upto(100000).tolist() == want
    assert primes_upto(1).tolist() == []


@pytest.mark.parametrize("segment", [2, 16, 1000, 1 << 22])
def test_segmented_is_independent_of_segment_size(segment):
    got = np.concatenate(list(segmented_primes(1, 20000, segment))).tolist()
    assert got == primes_upto(20000).tolist()
    mid = np.concatenate(list(segmented_primes(1000, 5000, segment))).tolist()
    assert mid == [p for p in got if 1000 <= p <= 5000]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None
    assert prime_power(101**3) == (101, 3)
    assert prime_power(101 * 103) is None
    for q in range(2, 3000):
        assert prime_power(q) == oracles.prime_power_trial(q)
