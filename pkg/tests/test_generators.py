import json

import numpy as np
import pytest

from symwl.generators import (cfi_graph, cfi_pair, complete, cycle, least_distinguishing_dimension,
                              named, neighbourhood_signature, path, petersen, rook4x4, shrikhande,
                              srg_parameters, star)
from symwl.graph import GraphError, disjoint_union, from_edge_list, relabel
from symwl.spectra import power_sums
from symwl.wl import distinguishes


def test_named_graphs():
    r = named("rook4x4")
    assert (r.n, r.num_edges, set(r.degrees())) == (16, 48, {6})
    s = named("shrikhande")
    assert (s.n, set(s.degrees())) == (16, {6})
    assert named("k4") == complete(4)
    assert named("cycle(5)") == cycle(5)
    assert named("star(4)") == star(4) and star(4).n == 5
    assert named("Petersen") == petersen()
    with pytest.raises(GraphError):
        named("dodecahedron")


def test_srg_pair():
    assert srg_parameters(shrikhande()) == (16, 6, 2, 2)
    assert srg_parameters(rook4x4()) == (16, 6, 2, 2)
    assert srg_parameters(petersen()) == (10, 3, 0, 1)
    assert srg_parameters(path(4)) is None


def test_srg_pair_not_isomorphic():
    # 6-cycle neighbourhoods against two disjoint triangles
    assert set(neighbourhood_signature(shrikhande())) == {(6, 0)}
    assert set(neighbourhood_signature(rook4x4())) == {(6, 2)}
    assert neighbourhood_signature(cycle(6)) != neighbourhood_signature(disjoint_union(complete(3), complete(3)))


def test_cfi_k4_shape():
    pair = cfi_pair(complete(4))
    assert pair.twist_edge == (0, 1)
    assert pair.plain.n == pair.twisted.n == 28
    gadgets = set(pair.gadget_ids.values())
    for g in (pair.plain, pair.twisted):
        degs = g.degrees()
        assert all(degs[v] == 3 for v in gadgets)
        assert all(degs[v] == 4 for v in pair.wire_ids.values())
        assert g.num_edges == 48
    assert sorted(pair.plain.degrees()) == sorted(pair.twisted.degrees())
    assert pair.plain != pair.twisted


def test_cfi_low_dimension_fooled_and_cospectral_walks():
    pair = cfi_pair(complete(4))
    assert not distinguishes(pair.plain, pair.twisted, 1)
    assert not distinguishes(pair.plain, pair.twisted, 2)
    assert power_sums(pair.plain, 10) == power_sums(pair.twisted, 10)


def test_double_twist_is_plain():
    base = complete(4)
    e = base.edges[2]
    twice = cfi_graph(base, [(e, e[1]), (e, e[1])])
    assert twice == cfi_graph(base)
    # twisting both endpoints of an edge gives an isomorphic graph: swapping the
    # wire pair of that edge is an explicit isomorphism
    both = cfi_graph(base, [(e, e[0]), (e, e[1])])
    pair = cfi_pair(base)
    perm = list(range(both.n))
    a, b = pair.wire_ids[(e, 0)], pair.wire_ids[(e, 1)]
    perm[a], perm[b] = b, a
    assert relabel(both, perm) == pair.plain


def test_cfi_manifest_round_trips_json():
    pair = cfi_pair(cycle(3))
    doc = json.loads(json.dumps(pair.manifest()))
    assert doc["n"] == pair.plain.n == 3 * 2 + 3 * 2
    ids = sorted([g["id"] for g in doc["gadgets"]] + [w["id"] for w in doc["wires"]])
    assert ids == list(range(pair.plain.n))


def test_cfi_rejects_bad_bases():
    with pytest.raises(GraphError):
        cfi_pair(path(4))
    with pytest.raises(GraphError):
        cfi_pair(disjoint_union(cycle(3), cycle(3)))
    with pytest.raises(GraphError):
        cfi_pair(complete(4), (0, 7))


def test_least_dimension_on_easy_pair():
    cert = least_distinguishing_dimension(star(4), disjoint_union(cycle(4), from_edge_list(1, [])), 3)
    assert cert.least_dimension == 1 and cert.status == "distinguished"
    g = cycle(6)
    cert = least_distinguishing_dimension(g, relabel(g, np.arange(6)[::-1]), 2)
    assert cert.least_dimension is None and cert.status == "unresolved" and cert.tried == [1, 2]
