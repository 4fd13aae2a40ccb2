from hypothesis import given, strategies as st

from turingcat import coding

nats = st.integers(min_value=0, max_value=10**6)


def test_first_primes():
    assert [coding.nth_prime(i) for i in range(10)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_exponents_reports_gaps():
    assert coding.prime_exponents(2**3 * 7) == [3, 0, 0, 1]
    assert coding.prime_exponents(1) == []
    assert coding.prime_exponents(0) is None


@given(nats, nats)
def test_pair_round_trip(a, b):
    z = coding.pair(a, b)
    assert z > 0
    assert coding.unpair(z) == (a, b)


def test_cantor_is_a_bijection_on_a_prefix():
    seen = {coding.uncantor(z) for z in range(5000)}
    assert len(seen) == 5000
    assert all(coding.cantor(a, b) < 5000 for a, b in seen)


@given(st.lists(nats, min_size=1, max_size=5))
def test_tuple_round_trip(xs):
    assert coding.untuple(coding.tuple_code(xs), len(xs)) == tuple(xs)


@given(st.lists(nats, max_size=8))
def test_pack_round_trip(xs):
    assert coding.unpack(coding.pack(xs)) == xs


def test_pack_rejects_truncated_codes():
    # "1" + "0 0" is an unfinished gamma code
    assert coding.unpack(0b100) is None
    assert coding.pack([]) == 1


@given(st.binary(max_size=40))
def test_bytes_round_trip(b):
    assert coding.nat_to_bytes(coding.bytes_to_nat(b)) == b


@given(st.integers(min_value=-10**6, max_value=10**6))
def test_zigzag_round_trip(z):
    assert coding.zigzag(coding.unzigzag(z)) == z


def test_zigzag_order():
    assert [coding.zigzag(n) for n in range(7)] == [0, 1, -1, 2, -2, 3, -3]
