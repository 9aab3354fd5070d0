import pytest

from rfg.covers import make_cover, separates
from rfg.errors import BudgetExceeded, IdentityElement, NotInduced
from rfg.oracle import (
    OmegaMode,
    count_covers,
    enumerate_covers,
    exact_divisibility,
    growth_table,
    image_order,
    subgroup_inequality,
    subgroup_inequality_check,
)
from rfg.raag import ball, edgeless_graph, path_graph
from rfg.selftest import FIXTURES

Z = edgeless_graph(1)
Z2 = path_graph(2)
F2 = edgeless_graph(2)


def test_cover_counts():
    assert count_covers(Z, 3) == 1
    assert {c.perms for c in enumerate_covers(Z2, 2)} == {
        ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 0), (1, 0))}
    for g in FIXTURES.values():
        assert count_covers(g, 1) == 1


def test_subgroup_counts_match_known_sequences():
    # index-m subgroups: Z has 1, Z^2 has sigma(m), F2 has 3, 13, 71, 461
    for m in range(1, 7):
        assert count_covers(Z, m) == 1
        assert count_covers(Z2, m) == sum(d for d in range(1, m + 1) if m % d == 0)
    assert [count_covers(F2, m) for m in range(1, 5)] == [1, 3, 13, 71]


def test_enumerated_covers_are_valid_and_distinct():
    g = FIXTURES["P3"]
    covers = list(enumerate_covers(g, 4))
    assert len({c.perms for c in covers}) == len(covers)
    for c in covers:
        make_cover(g, c.degree, {v: c.perm(v) for v in g.vertices})


@pytest.mark.parametrize("graph,word,value", [
    (Z, "a^6", 4),
    (F2, "a b", 2),
    (Z2, "a b", 2),
    (Z, "a^4", 3),
    (Z, "a^12", 5),
    (F2, "a b a", 2),
])
def test_exact_values(graph, word, value):
    res = exact_divisibility(graph, word)
    assert res.value == value
    assert separates(res.witness, word)


def test_identity_rejected():
    with pytest.raises(IdentityElement):
        exact_divisibility(Z2, "a b a^-1 b^-1")


def test_budget():
    with pytest.raises(BudgetExceeded):
        exact_divisibility(Z, "a^12", max_degree=3)


def test_minimality_and_bound_on_small_balls():
    for name in ("Z", "F2", "Z2", "P3"):
        g = FIXTURES[name]
        for form in ball(g, 3):
            res = exact_divisibility(g, form.letters)
            assert res.value <= form.length + 1
            below = res.value - 1
            if below >= 2:
                assert not any(separates(c, form.letters) for c in enumerate_covers(g, below))


def test_normal_mode_dominates_subgroup_mode():
    for name in ("Z", "F2", "Z2"):
        g = FIXTURES[name]
        for form in ball(g, 2):
            sub = exact_divisibility(g, form.letters, "subgroup").value
            nor = exact_divisibility(g, form.letters, OmegaMode.NORMAL)
            assert nor.value >= sub
            assert nor.mode is OmegaMode.NORMAL


def test_normal_mode_values():
    # a b survives in Z/2; the commutator first survives in S_3
    assert exact_divisibility(F2, "a b", "normal").value == 2
    res = exact_divisibility(F2, "a b a^-1 b^-1", "normal")
    assert res.value == 6 and res.exact


def test_image_order():
    c = make_cover(F2, 3, {"a": [1, 2, 0], "b": [1, 0, 2]})
    assert image_order(c) == 6
    assert image_order(c, budget=3) is None


def test_growth_examples():
    assert growth_table(Z, 6).values()[-1] == 4
    # a^2 lies in every index-2 subgroup, so F(2) >= D(a^2) = 3
    t = growth_table(F2, 2)
    assert t.values() == [2, 3]
    assert exact_divisibility(F2, "a^2").value == 3
    assert all(v <= n + 1 for n, v in zip(range(1, 3), t.values()))
    for g in FIXTURES.values():
        assert growth_table(g, 1).values() == [2]
    vals = growth_table(Z2, 4).values()
    assert vals == sorted(vals)


def test_subgroup_inequality_examples():
    p3 = FIXTURES["P3"]
    d_sub, d_amb = subgroup_inequality(p3, ["a", "c"], "a c")
    assert d_sub == 2 and d_sub <= d_amb
    d_sub, d_amb = subgroup_inequality(Z2, ["a"], "a^4")
    assert d_sub == 3 and d_sub <= d_amb
    assert subgroup_inequality(p3, p3, "a b c")[0] == subgroup_inequality(p3, p3, "a b c")[1]
    assert subgroup_inequality_check(p3, ["a", "b"], "a b^-1")
    with pytest.raises(NotInduced):
        subgroup_inequality(p3, ["a", "z"], "a")
