import random

import pytest
from hypothesis import given, strategies as st

from turingcat.category import (
    LEFT, MINUS, NAT, PLUS, RIGHT, SIGNS, BoundaryMismatch, ComputableMap, NotInImage, compose, element,
    element_map, identity_map, inverse_map, length, length_map, list_union, lu, map_list,
    pairing, parallel, projection, resolve, union_map,
)
from turingcat.machine import SUCCESSOR, MachineCode, Undefined

KEYS = [
    "nat", "pm", "prod(nat,nat)", "pair(nat,pm)", "sum(nat,nat)", "list(nat)", "pack(nat)",
    "pair(list(nat),sum(nat,pm))", "pack(pair(nat,nat))",
]


@pytest.mark.parametrize("key", KEYS)
def test_round_trip_and_image(key):
    enc = resolve(key)
    r = random.Random(key)
    for _ in range(300):
        v = enc.sample(r)
        n = enc(v)
        assert enc.contains(n)
        assert enc.decode(n) == v


@pytest.mark.parametrize("key", KEYS)
def test_decode_encode_on_image(key):
    enc = resolve(key)
    for n in range(2000):
        if enc.contains(n):
            assert enc(enc.decode(n)) == n
        else:
            with pytest.raises(NotInImage):
                enc.decode(n)


def test_printed_codes():
    assert resolve("prod(nat,nat)")((2, 1)) == 12
    assert resolve("list(nat)")([3, 1]) == 2**4 * 3**2
    assert resolve("list(nat)")([]) == 1
    assert resolve("sum(nat,nat)")((LEFT, 3)) == 16
    assert resolve("sum(nat,nat)")((RIGHT, 0)) == 3
    assert SIGNS(MINUS) == 0 and SIGNS(PLUS) == 1


def test_sum_image_excludes_mixed_codes():
    s = resolve("sum(nat,nat)")
    assert not s.contains(6)
    assert not s.contains(1)
    assert s.decode(4) == (LEFT, 1)


def test_unknown_key():
    with pytest.raises(KeyError):
        resolve("tree(nat)")
    with pytest.raises(KeyError):
        resolve("prod(nat)")


@given(st.lists(st.integers(0, 30), min_size=1, max_size=5), st.lists(st.integers(0, 30), min_size=1, max_size=5))
def test_list_union_reads_both_halves(l1, l2):
    u = list_union(l1, l2)
    assert length(u) == length(l1) + length(l2) + 1
    for i in range(len(u)):
        assert element(u, i) == (l1 + l2)[i]


def test_length_of_empty_list_is_undefined():
    with pytest.raises(Undefined):
        length([])
    with pytest.raises(Undefined):
        element([1], 1)


def test_morphisms():
    # nested prime-power codes explode, so lists sit inside the compact pair scheme
    inc = identity_map(NAT)
    assert inc(5) == 5
    s = compose(inverse_map(NAT), identity_map(NAT))
    assert s(7) == 7
    f = ComputableMap(NAT, NAT, MachineCode.of(SUCCESSOR))
    assert compose(f, f)(3) == 5
    assert pairing(f, inc)(4) == (5, 4)
    assert pairing(f, inc, "pair")(4) == (5, 4)
    assert parallel(f, f)((1, 2)) == (2, 3)
    prod = resolve("prod(nat,nat)")
    assert projection(prod, 0)((6, 9)) == 6
    assert projection(prod, 1)((6, 9)) == 9
    assert map_list(f)([1, 2, 3]) == [2, 3, 4]
    assert map_list(f, "pack")([0]) == [1]
    assert union_map(NAT)(([1], [2, 3])) == [1, 2, 3]
    assert length_map(NAT)([4, 4, 4]) == 2
    assert element_map(NAT, pscheme="pair")(([7, 8], 1)) == 8
    assert lu(SUCCESSOR)([0, 4]) == [1, 5]


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        compose(identity_map(NAT), identity_map(SIGNS))


def test_inverse_is_undefined_off_image():
    with pytest.raises(Undefined):
        inverse_map(resolve("prod(nat,nat)"))(5)
