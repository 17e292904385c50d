import numpy as np
import pytest

from hmmfst import fst as F
from hmmfst.fst import BudgetExceeded, FstError
from hmmfst.symbols import EPSILON

from oracles import all_strings, join, language, random_fst, relation, small_table

DEPTH = 5


@pytest.fixture
def table():
    return small_table(3)


def test_union_concat_star_languages(table):
    a, b, c = table.sigma[1:]
    ab = F.string(table, [a, b])
    cc = F.string(table, [c])
    assert language(F.union(ab, cc), 3) == {(a, b), (c,)}
    assert language(F.concat(ab, cc), 3) == {(a, b, c)}
    assert language(F.star(cc), 3) == {(), (c,), (c, c), (c, c, c)}
    assert language(F.power(cc, 2), 3) == {(c, c)}
    assert language(F.power(cc, 0), 3) == {()}


def test_term_complement_excludes_symbol(table):
    a = table.sigma[1]
    assert language(F.term_complement(table, a), 1) == {(s,) for s in table.sigma if s != a}


def test_any_symbol_expands_to_sigma(table):
    assert language(F.any_symbol(table), 2) == {(s,) for s in table.sigma}


def test_arcs_with_any_rejected(table):
    with pytest.raises(FstError):
        F.Fst(table, 1, 0, [0], [(0, 0, 1, 1)])


def test_complement_small_example(table):
    a = table.sigma[1]
    aa = F.string(table, [a, a])
    comp = F.complement(aa)
    assert language(comp, 3) == all_strings(table.sigma, 3) - {(a, a)}


def test_complement_involution_random(table):
    rng = np.random.default_rng(11)
    for _ in range(100):
        a = random_fst(rng, table, acceptor=True)
        comp = F.complement(a)
        assert language(comp, DEPTH) == all_strings(table.sigma, DEPTH) - language(a, DEPTH)
        assert language(F.complement(comp), DEPTH) == language(a, DEPTH)


def test_normalize_preserves_relation_random(table):
    rng = np.random.default_rng(12)
    for i in range(100):
        f = random_fst(rng, table, n_states=5, n_arcs=10, acceptor=i % 2 == 0)
        n = F.normalize(f)
        assert relation(n, DEPTH) == relation(f, DEPTH)
        assert F.is_deterministic(n)
        assert F.equivalent(n, f)


def test_determinize_preserves_language_random(table):
    rng = np.random.default_rng(13)
    for _ in range(100):
        f = random_fst(rng, table, n_states=5, n_arcs=10, eps=0.0, acceptor=True)
        d = F.determinize(f)
        assert F.is_deterministic(d)
        assert language(d, DEPTH) == language(f, DEPTH)


def test_minimize_is_canonical(table):
    a, b = table.sigma[1:3]
    # two spellings of (a|b) a*
    x = F.concat(F.union(F.string(table, [a]), F.string(table, [b])), F.star(F.string(table, [a])))
    y = F.union(F.concat(F.string(table, [a]), F.star(F.string(table, [a]))),
                F.concat(F.string(table, [b]), F.star(F.string(table, [a]))))
    nx, ny = F.normalize(x), F.normalize(y)
    assert nx == ny
    assert nx.num_states == 2


def test_compose_matches_relational_join(table):
    rng = np.random.default_rng(14)
    for _ in range(100):
        r = random_fst(rng, table, n_states=4, n_arcs=8)
        q = random_fst(rng, table, n_states=4, n_arcs=8, lower_nonempty=True)
        got = relation(F.compose(r, q), DEPTH)
        want = {(x, z) for x, z in join(relation(r, DEPTH), relation(q, DEPTH))
                if len(x) <= DEPTH}
        assert got == want


def test_compose_with_epsilons_on_both_sides(table):
    a, b, c = table.sigma[1:]
    r = F.linear(table, [(a, EPSILON), (EPSILON, b)])  # a -> b
    q = F.linear(table, [(b, c), (EPSILON, a)])        # b -> c a
    assert relation(F.compose(r, q), 4) == {((a,), (c, a))}


def test_intersect_and_emptiness(table):
    a, b = table.sigma[1:3]
    star_a = F.star(F.string(table, [a]))
    assert language(F.intersect(star_a, F.string(table, [a, a])), 3) == {(a, a)}
    assert F.is_empty(F.intersect(star_a, F.string(table, [b])))


def test_invert_swaps_sides(table):
    a, b = table.sigma[1:3]
    assert relation(F.invert(F.linear(table, [(a, b)])), 2) == {((b,), (a,))}


def test_deletion_and_rewrite_agree():
    t = small_table(2)
    t = t.copy()
    mk = t.add_marker(t.lookup("s0"), "B", 1)
    t.freeze()
    s0, s1 = t.lookup("s0"), t.lookup("s1")
    f = F.linear(t, [(mk, mk), (s0, s1), (mk, mk)])
    d = F.deletion_transducer(t, [mk])
    via_compose = F.normalize(F.compose(F.invert(d), F.compose(f, d)))
    via_rewrite = F.normalize(F.rewrite_to_epsilon(f, [mk]))
    assert via_compose == via_rewrite
    assert relation(via_rewrite, 2) == {((s0,), (s1,))}
    with pytest.raises(FstError):
        F.rewrite_to_epsilon(f, [s0])


def test_apply_modes(table):
    a, b, c = table.sigma[1:]
    f = F.union(F.linear(table, [(a, c), (a, b)]), F.linear(table, [(a, b), (a, c)]))
    assert F.apply(f, [a, a], "all") == {(c, b), (b, c)}
    assert F.apply(f, [a, a], "count") == 2
    assert F.apply(F.normalize(f), [a, a], "first") == (b, c)
    assert F.apply(f, [b], "first") is None
    assert F.apply(f, [b], "count") == 0


def test_apply_first_is_repeatable(table):
    rng = np.random.default_rng(15)
    f = random_fst(rng, table, n_states=5, n_arcs=14)
    x = [table.sigma[1], table.sigma[2]]
    assert len({F.apply(f, x, "first") for _ in range(5)}) == 1


def test_apply_limit(table):
    a = table.sigma[1]
    many = F.Fst(table, 1, 0, [0], [(0, 0, a, s) for s in table.sigma])
    with pytest.raises(F.ApplyLimitExceeded):
        F.apply(many, [a] * 4, "all", limit=10)


def test_budget_error_carries_counts(table):
    rng = np.random.default_rng(16)
    f = random_fst(rng, table, n_states=6, n_arcs=20, acceptor=True)
    with pytest.raises(BudgetExceeded) as err:
        F.normalize(f, max_states=1)
    assert err.value.count > err.value.limit == 1
    assert "not computable" in str(err.value.at_stage("preliminary"))
    assert "preliminary" in str(err.value)


def test_fstv1_round_trip(table, tmp_path):
    rng = np.random.default_rng(17)
    for _ in range(20):
        f = F.normalize(random_fst(rng, table, n_states=5, n_arcs=12))
        p1, p2 = tmp_path / "a.fst", tmp_path / "b.fst"
        F.save(f, p1)
        g = F.load(p1)
        F.save(g, p2)
        assert p1.read_bytes() == p2.read_bytes()
        assert relation(g, 4) == {(tuple(x), tuple(y)) for x, y in relation(f, 4)}


def test_fstv1_rejects_garbage():
    with pytest.raises(FstError, match="line 1"):
        F.loads("FST\n")
    with pytest.raises(FstError, match="line 2"):
        F.loads("FSTv1\narc 0 1 nope nope\n")
