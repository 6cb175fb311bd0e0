from itertools import permutations, product
from math import perm as falling

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from symwl.generators import path
from symwl.tuples import (TupleError, TupleSpace, atomic_type, atomic_type_rows, check_permutation,
                          compose)


def test_encode_examples():
    s = TupleSpace(3, 2)
    assert s.encode((0, 0)) == 0
    assert s.encode((1, 2)) == 5
    assert s.encode((2, 2)) == 8 == s.size - 1


def test_encode_rejects():
    s = TupleSpace(3, 2)
    with pytest.raises(TupleError):
        s.encode((0, 3))
    with pytest.raises(TupleError):
        s.encode((0,))
    with pytest.raises(TupleError):
        TupleSpace(3, 0)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(1, 5)])
def test_encode_decode_bijection(n, k):
    s = TupleSpace(n, k)
    seen = set()
    for t in product(range(n), repeat=k):
        code = s.encode(t)
        assert s.decode(code) == t
        seen.add(code)
    assert seen == set(range(s.size))
    assert [tuple(r) for r in s.all_tuples().tolist()] == list(product(range(n), repeat=k))


def test_is_distinct_examples():
    s = TupleSpace(3, 2)
    assert s.is_distinct(s.encode((0, 1)))
    assert not s.is_distinct(s.encode((1, 1)))
    assert TupleSpace(4, 3).distinct_size == 24


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(1, 4)])
def test_distinct_count(n, k):
    s = TupleSpace(n, k)
    count = sum(len(set(t)) == k for t in product(range(n), repeat=k))
    assert count == falling(n, k) == s.distinct_size == int(s.distinct_mask().sum())


def test_atomic_type_examples():
    p3 = path(3)
    assert atomic_type(p3, (0, 1)) == atomic_type(p3, (1, 2))
    assert atomic_type(p3, (0, 2)) != atomic_type(p3, (0, 1))
    assert len({atomic_type(p3, (v, v)) for v in range(3)}) == 1


@given(graphs(min_n=1, max_n=5), st.integers(1, 3), st.data())
def test_atomic_type_matches_definition(g, k, data):
    t = tuple(data.draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k)))
    u = tuple(data.draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k)))
    same = all((t[a] == t[b]) == (u[a] == u[b]) and g.adj[t[a], t[b]] == g.adj[u[a], u[b]]
               for a in range(k) for b in range(k))
    assert (atomic_type(g, t) == atomic_type(g, u)) == same
    rows = atomic_type_rows(g, np.array([t, u]))
    assert (rows[0] == rows[1]).all() == same


def test_substitute_examples():
    s = TupleSpace(3, 2)
    assert s.decode(s.substitute(s.encode((1, 2)), 0, 0)) == (0, 2)
    assert s.substitute(5, 1, 0) == 3
    for code in range(s.size):
        for pos in range(2):
            assert s.substitute(code, pos, s.decode(code)[pos]) == code
    with pytest.raises(TupleError):
        s.substitute(0, 2, 0)


def test_sym_action_examples():
    s = TupleSpace(3, 2)
    assert s.sym_action((0, 1), 5) == 5
    assert s.decode(s.sym_action((1, 0), s.encode((1, 2)))) == (2, 1)
    s3 = TupleSpace(3, 3)
    orbit = {s3.sym_action(th, s3.encode((0, 1, 2))) for th in permutations(range(3))}
    assert len(orbit) == 6
    with pytest.raises(TupleError):
        s.sym_action((0, 0), 5)


@given(graphs(min_n=1, max_n=5), st.data())
def test_sym_action_transports_types(g, data):
    k = data.draw(st.integers(1, 3))
    theta = data.draw(st.permutations(list(range(k))))
    t = tuple(data.draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k)))
    s = TupleSpace(g.n, k)
    moved = s.decode(s.sym_action(theta, s.encode(t)))
    for l in range(k):
        assert moved[theta[l]] == t[l]
    assert s.is_distinct(s.encode(t)) == s.is_distinct(s.encode(moved))
    for a in range(k):
        for b in range(k):
            assert (t[a] == t[b]) == (moved[theta[a]] == moved[theta[b]])
            assert g.adj[t[a], t[b]] == g.adj[moved[theta[a]], moved[theta[b]]]


def test_compose_is_action():
    s = TupleSpace(4, 3)
    for theta in permutations(range(3)):
        for tau in permutations(range(3)):
            for code in (s.encode((0, 1, 2)), s.encode((3, 3, 1))):
                assert s.sym_action(compose(theta, tau), code) == s.sym_action(theta, s.sym_action(tau, code))
    with pytest.raises(TupleError):
        check_permutation((0, 2), 2)
