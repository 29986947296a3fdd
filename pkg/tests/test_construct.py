import random
from fractions import Fraction

import pytest

from conftest import graph
from cuttree.construct import (
    GomoryHuTree,
    LaminarCut,
    _insert_cut,
    build_laminar_family,
    build_tree_classical,
    build_tree_paper,
    format_family,
    format_tree,
    join_component_trees,
    minimal_vertex,
    minimal_vertices,
    parse_tree,
    partition_family,
    prec,
    sink_family,
    uncross,
)
from cuttree.counterexample import generate_truncation, hub, prefix
from cuttree.errors import ConsistencyError, InputError, PreconditionError
from cuttree.generators import random_connected_graph
from cuttree.graph import Cut, crosses, is_laminar_pair
from cuttree.mincut import GraphEngine
from cuttree.submodular import OracleEngine, pairs_oracle
from cuttree.verifier import brute_force_optimal_cuts, verify_gh_tree, verify_laminar, verify_separation


def optimal_cuts(g):
    """{(s, t): [every optimal s-t cut]} by enumeration."""
    return {(s, t): brute_force_optimal_cuts(g, s, t)[1]
            for s in range(g.n) for t in range(g.n) if s != t}


# -- uncross -----------------------------------------------------------------

def test_uncross_idempotent(path23):
    e = GraphEngine(path23)
    x = Cut.of(3, [0])
    assert uncross(e, x, (0, 2), x, (0, 2)) == x


def test_literal_case_table_fails():
    # path 0-1 (2), 1-2 (1); X = {0} is the optimal 0-1 cut, Y = {0,1} the optimal 0-2 cut
    g = graph(3, [(0, 1, 2), (1, 2, 1)])
    e = GraphEngine(g)
    x, y = Cut.of(3, [0]), Cut.of(3, [0, 1])
    # u=0 in X, v=2 outside and t=1 in Y: the stated rule gives Y & X = {0}, value 2 > 1
    assert e.value(y & x) > e.lam(0, 2)
    assert uncross(e, x, (0, 1), y, (0, 2)) == y | x


def test_uncross_truncation():
    g = generate_truncation(6)
    e = GraphEngine(g)
    x, y = prefix(6, 0), prefix(6, 1)
    assert e.value(x) == e.lam(0, 2) and e.value(y) == e.lam(1, 3)
    out = uncross(e, x, (0, 2), y, (1, 3))
    assert e.value(out) == e.lam(1, 3) and is_laminar_pair(out, x)


def test_uncross_rejects_non_optimal(path23):
    e = GraphEngine(path23)
    # X = {2} is not optimal for (2, 0), so Y - X = {0,1} stays suboptimal
    with pytest.raises(ConsistencyError):
        uncross(e, Cut.of(3, [2]), (2, 0), Cut.of(3, [0, 1]), (0, 2))


def test_uncross_exhaustive_on_ties(tie_corpus):
    seen_cases = set()
    for g in tie_corpus[:60]:
        if g.n > 6:
            continue
        e = GraphEngine(g)
        opt = optimal_cuts(g)
        for (s, t), xs in opt.items():
            for x in xs:
                for (u, v), ys in opt.items():
                    for y in ys:
                        out = uncross(e, x, (s, t), y, (u, v))
                        assert out.is_cut_for(u, v) and e.value(out) == e.lam(u, v)
                        assert not crosses(out, x)
                        seen_cases.add((u in x, v in x))
    assert len(seen_cases) == 4


# -- order and minimal vertices ----------------------------------------------

def test_prec_on_path():
    # a=0, b=1, c=2 with weights 1, 2: X_{b,c} = {a,b}, X_{c,b} = {c}
    g = graph(3, [(0, 1, 1), (1, 2, 2)])
    e = GraphEngine(g)
    x = Cut.of(3, [1, 2])
    assert prec(e, x, 1, 2) is True
    assert prec(e, x, 2, 1) is False
    # b <_X c, so b is the minimal element
    assert minimal_vertices(e, x) == [1]
    assert minimal_vertex(e, x, t=0) == 1


def test_prec_trivial_on_full_set(triangle):
    e = GraphEngine(triangle)
    full = Cut.full(3)
    assert not any(prec(e, full, u, v) for u in range(3) for v in range(3) if u != v)
    with pytest.raises(InputError):
        prec(e, Cut.of(3, [0]), 0, 1)


def test_prec_partial_order(tie_corpus):
    for g in tie_corpus[:40]:
        e = GraphEngine(g)
        for (s, t), xs in optimal_cuts(g).items():
            for x in xs:
                mem = x.members()
                rel = {(a, b) for a in mem for b in mem if a != b and prec(e, x, a, b)}
                for a, b in rel:
                    assert (b, a) not in rel
                    for c in mem:
                        if (b, c) in rel:
                            assert (a, c) in rel


def test_minimal_vertex_basics(triangle):
    e = GraphEngine(triangle)
    assert minimal_vertex(e, Cut.of(3, [1])) == 1
    assert minimal_vertex(e, Cut.full(3), root=2) == 2
    with pytest.raises(InputError):
        minimal_vertex(e, Cut.empty(3))


def test_minimal_vertex_realises_cut(tie_corpus):
    for g in tie_corpus[:40]:
        e = GraphEngine(g)
        for (s, t), xs in optimal_cuts(g).items():
            for x in xs:
                s2 = minimal_vertex(e, x, t=t)
                assert e.lam(s2, t) == e.value(x)


# -- partition step ----------------------------------------------------------

def test_partition_singleton(star3):
    assert partition_family(GraphEngine(star3), 2, Cut.of(4, [2])) == []


def test_partition_star_center(star3):
    parts = partition_family(GraphEngine(star3), 0, Cut.full(4))
    assert parts == [Cut.of(4, [1]), Cut.of(4, [2]), Cut.of(4, [3])]


def test_partition_precondition():
    g = graph(3, [(0, 1, 1), (1, 2, 2)])
    with pytest.raises(PreconditionError):
        # 2 is not minimal in {1,2}: X_{1,2} = {0,1} leaves the set
        partition_family(GraphEngine(g), 2, Cut.of(3, [1, 2]))
    assert partition_family(GraphEngine(g), 1, Cut.of(3, [1, 2])) == [Cut.of(3, [2])]


def test_sink_family_laminar(acceptance_corpus):
    for g in acceptance_corpus[:50]:
        e = GraphEngine(g)
        for s in range(g.n):
            assert verify_laminar(sink_family(e, s)).ok


# -- tree builders -----------------------------------------------------------

def test_single_edge_tree(single_edge):
    for build in (build_tree_paper, build_tree_classical):
        t = build(single_edge)
        assert t.tree_edges == ((0, 1, Fraction(5)),)


def test_star_tree(star3):
    t = build_tree_paper(star3, root=0)
    assert sorted(t.tree_edges) == [(0, 1, 1), (0, 2, 1), (0, 3, 1)]
    assert verify_gh_tree(star3, t, "all-pairs").ok


def test_triangle_classical(triangle):
    t = build_tree_classical(triangle)
    assert len(t.tree_edges) == 2 and all(w == 2 for _, _, w in t.tree_edges)
    assert verify_gh_tree(triangle, t, "all-pairs").ok


def test_truncation_tree_is_chain():
    N = 5
    g = generate_truncation(N)
    t = build_tree_paper(g, root=hub(N))
    assert verify_gh_tree(g, t, "all-pairs").ok
    # the interior prefixes V_0 < V_1 are unique optimal cuts, so the tree must use them;
    # near v_N the truncation cuts from the other end
    cuts = {t.fundamental_cut(a, b) for a, b, _ in t.tree_edges}
    for n in range(2):
        assert prefix(N, n) in cuts


def test_tree_on_oracle():
    t = build_tree_paper(pairs_oracle(4))
    assert sorted(t.tree_edges) == [(0, 1, 3), (0, 2, 3), (0, 3, 3)]
    assert verify_gh_tree(pairs_oracle(4), t).ok


def test_builders_agree(acceptance_corpus):
    for g in acceptance_corpus[:40]:
        a, b = build_tree_paper(g), build_tree_classical(g)
        assert a.path_min_matrix() == b.path_min_matrix()


def test_every_root(acceptance_corpus):
    g = acceptance_corpus[5]
    for r in range(g.n):
        assert verify_gh_tree(g, build_tree_paper(g, root=r), "edges-only").ok


def test_leaves_and_single_vertex():
    assert build_tree_paper(graph(1, [])).tree_edges == ()
    g = random_connected_graph(random.Random(2), 8)
    t = build_tree_paper(g)
    e = GraphEngine(g)
    leaves = t.leaves()
    assert len(leaves) >= 2
    adj = t.adjacency()
    for leaf in leaves:
        (nb, w), = adj[leaf].items()
        assert e.value(Cut.of(g.n, [leaf])) == e.lam(leaf, nb) == w


def test_tree_validation_and_text_round_trip(star3):
    with pytest.raises(InputError):
        GomoryHuTree.from_edges(3, [(0, 1, 1)])
    with pytest.raises(InputError):
        GomoryHuTree.from_edges(3, [(0, 1, 1), (1, 0, 1)])
    t = build_tree_paper(star3)
    assert parse_tree(format_tree(t), 4) == t
    assert format_tree(t, decimal=1).splitlines()[0] == "0 1 1.0"


def test_join_components():
    parts = [((0, 2), GomoryHuTree.from_edges(2, [(0, 1, 3)])), ((1,), GomoryHuTree(1, (), 0))]
    t = join_component_trees(3, parts)
    assert sorted(t.tree_edges) == [(0, 1, 0), (0, 2, 3)]


# -- laminar family ----------------------------------------------------------

def test_single_pair_family(path23):
    fam = build_laminar_family(path23, pairs=[(0, 2)])
    assert [(m.cut, m.witness) for m in fam] == [(Cut.of(3, [0]), (0, 2))]


def test_truncation_family_contains_chain():
    N = 5
    g = generate_truncation(N)
    fam = build_laminar_family(g, pairs=[(a, b) for a in range(5) for b in range(a + 1, 5)])
    cuts = {m.cut for m in fam}
    # the unique optimal v_n - v_m cuts, n < m <= 4
    for n in range(3):
        assert prefix(N, n) in cuts
    assert verify_laminar(fam).ok


def test_family_is_laminar_and_separating(tie_corpus):
    for g in tie_corpus:
        fam = build_laminar_family(g)
        assert verify_laminar(fam).ok
        assert verify_separation(g, fam).ok
        assert len(fam) <= 2 * g.n


def test_family_on_oracle():
    fam = build_laminar_family(pairs_oracle(5))
    assert verify_laminar(fam).ok and verify_separation(pairs_oracle(5), fam).ok


def test_family_deterministic_and_monotone(acceptance_corpus):
    g = acceptance_corpus[17]
    e = GraphEngine(g)
    assert format_family(build_laminar_family(g)) == format_family(build_laminar_family(g))
    family = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            before = list(family)
            family.append(_insert_cut(e, family, u, v))
            assert family[:len(before)] == before
            assert all(is_laminar_pair(family[-1].cut, m.cut) for m in before)


def test_insertion_into_random_laminar_families(tie_corpus):
    """Seed the family with arbitrary laminar optimal cuts so the repair branches run."""
    rng = random.Random(5)
    for g in tie_corpus[:80]:
        e = GraphEngine(g)
        pool = [(x, w) for w, xs in optimal_cuts(g).items() for x in xs]
        rng.shuffle(pool)
        family: list[LaminarCut] = []
        for x, w in pool:
            if all(is_laminar_pair(x, m.cut) for m in family):
                family.append(LaminarCut(x, w, e.value(x)))
            if len(family) >= 4:
                break
        for u in range(g.n):
            for v in range(u + 1, g.n):
                new = _insert_cut(e, family, u, v)
                assert new.cut.separates(u, v) and new.value == e.lam(u, v)
                assert all(is_laminar_pair(new.cut, m.cut) for m in family)


def test_family_rejects_bad_pairs(triangle):
    with pytest.raises(InputError):
        build_laminar_family(triangle, pairs=[(0, 0)])


def test_oracle_engine_route_matches_graph(acceptance_corpus):
    from cuttree.verifier import brute_engine
    for g in acceptance_corpus[:20]:
        assert isinstance(brute_engine(g), OracleEngine)
        a = build_tree_paper(brute_engine(g))
        assert a.path_min_matrix() == build_tree_paper(g).path_min_matrix()
