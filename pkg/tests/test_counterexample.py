from fractions import Fraction

import pytest

from conftest import naive_optimal_cuts
from cuttree.construct import build_tree_paper
from cuttree.counterexample import (
    FAMILIES,
    MAX_ANALYZE_N,
    analyze_chain,
    edge_weight,
    generate_truncation,
    hub,
    prefix,
)
from cuttree.errors import InputError
from cuttree.graph import Cut, cut_value
from cuttree.verifier import verify_gh_tree


def recurrence(n):
    c = Fraction(2)
    for k in range(1, n + 1):
        c += k + 1
    return c


@pytest.mark.parametrize("n,expected", [(0, 2), (1, 4), (2, 7), (3, 11), (10, 67)])
def test_edge_weight_values(n, expected):
    assert edge_weight(n) == expected == recurrence(n)


def test_edge_weight_closed_form_matches_recurrence():
    for n in range(60):
        assert edge_weight(n) == recurrence(n)
    with pytest.raises(InputError):
        edge_weight(-1)


def test_small_truncations():
    g = generate_truncation(1)
    assert g.n == 3
    assert sorted(w for _, _, w in g.edges) == [1, 1, 2]
    g = generate_truncation(3)
    assert (g.n, len(g.edges)) == (5, 7)
    assert g.label(hub(3)) == "vinf" and g.label(0) == "v0"
    assert FAMILIES["hub-path"] is generate_truncation
    with pytest.raises(InputError):
        generate_truncation(0)


def test_prefix_cut_values():
    N = 9
    g = generate_truncation(N)
    for n in range(N):
        assert cut_value(g, prefix(N, n)) == (n + 1) + edge_weight(n)


def test_pair_rows_n6():
    r = analyze_chain(6)
    rows = {(x.n, x.m): x for x in r.rows}
    assert rows[(1, 3)].minimizers == (Cut.of(8, [0, 1]),)
    assert rows[(0, 1)].minimizers == (Cut.of(8, [0]),)
    assert rows[(0, 1)].lam == 3
    assert len(r.rows) == 21


def test_pair_rows_match_naive_enumeration():
    N = 6
    g = generate_truncation(N)
    for row in analyze_chain(N).rows:
        best, opt = naive_optimal_cuts(g, row.n, row.m)
        assert row.lam == best
        assert {frozenset(c.members()) for c in row.minimizers} == set(opt)


def test_boundary_pair_prefers_hub_side():
    # in the truncation, v_4 | v_5 for N = 8 is cut more cheaply with the hub on v_4's side:
    # V_4 costs 5 + 16 = 21, V_4 + hub costs 16 + 4 = 20
    r = analyze_chain(8)
    row = next(x for x in r.rows if (x.n, x.m) == (4, 5))
    assert row.lam == 20
    assert row.minimizers == (Cut.of(10, [0, 1, 2, 3, 4, hub(8)]),)


@pytest.mark.parametrize("N", range(1, 13))
def test_chain_length_and_interior_bound(N):
    # V_n is the unique optimum exactly when n + 1 < N - n
    r = analyze_chain(N)
    assert len(r.chain()) == N // 2
    assert r.interior_bound() == N // 2
    for row in r.rows:
        if 2 * row.n + 1 < N:
            assert row.unique_prefix(N)


def test_chain_grows():
    lengths = [len(analyze_chain(N).chain()) for N in (4, 8, 12, 16)]
    assert lengths == sorted(lengths) and lengths[-1] > lengths[0]


@pytest.mark.parametrize("N", range(1, 13))
def test_truncation_has_tree(N):
    g = generate_truncation(N)
    t = build_tree_paper(g, root=hub(N))
    assert verify_gh_tree(g, t, "edges-only").ok


def test_report_lines():
    lines = analyze_chain(4).lines()
    assert lines[0].startswith("pairs:")
    assert any("chain of unique optimal prefixes: length 2" in x for x in lines)
    assert "Gomory-Hu tree" in lines[-1]


def test_analyze_cap():
    with pytest.raises(InputError):
        analyze_chain(MAX_ANALYZE_N + 1)
    with pytest.raises(InputError):
        analyze_chain(0)
