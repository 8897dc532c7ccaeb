import json
from itertools import product

import numpy as np
import pytest

from conftest import all_graphs, random_graph
from switchsep.boolean import (
    ExtendedBooleanFunction,
    Gf2Polynomial,
    ebf_from_polynomial,
    ebf_is_separable,
    ebf_of_graph,
    graph_to_polynomial,
)
from switchsep.constructions import circulant_gn
from switchsep.graph import Graph, popcount
from switchsep.quasigroup import (
    QuasigroupTable,
    ScaleError,
    direct_product,
    group_sum,
    is_latin,
    is_reducible,
    kappa,
    q_lambda,
    retract,
)

C5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
PATH4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def zero_ebf(arity):
    return ExtendedBooleanFunction(arity, (0,) * (1 << (arity - 1)))


def random_ebf(rng, arity):
    return ExtendedBooleanFunction(arity, tuple(rng.randrange(2) for _ in range(1 << (arity - 1))))


def predicate_holds(f, symbols):
    """Oracle: the defining pair of parity laws over [x_i, y_i] = divmod(e, 2)."""
    xs = [e >> 1 for e in symbols]
    ys = [e & 1 for e in symbols]
    if sum(xs) % 2:
        return False
    point = sum(x << i for i, x in enumerate(xs))
    return sum(ys) % 2 == f(point)


def test_q_lambda_zero_is_klein_group():
    qg = q_lambda(zero_ebf(3))
    assert (qg.order, qg.arity) == (4, 2)
    for a, b in product(range(4), repeat=2):
        assert qg(a, b) == a ^ b


def test_q_lambda_matches_predicate(rng):
    for arity in (3, 4, 5):
        f = random_ebf(rng, arity)
        qg = q_lambda(f)
        n = arity - 1
        for args in product(range(4), repeat=n):
            value = qg(*args)
            assert predicate_holds(f, (value,) + args)
            assert sum(predicate_holds(f, (v,) + args) for v in range(4)) == 1


def test_q_lambda_rejects_small_arity():
    with pytest.raises(ValueError):
        q_lambda(zero_ebf(2))


def test_is_latin_examples(rng):
    z4 = (np.add.outer(np.arange(4), np.arange(4))) % 4
    assert is_latin(z4)
    assert not is_latin(np.zeros((4, 4), dtype=int))
    assert not is_latin(np.full((3, 3), 7))
    with pytest.raises(ValueError):
        is_latin(np.zeros((3, 4), dtype=int))
    with pytest.raises(ValueError):
        is_latin(z4, order=5)
    for arity in (4, 5):
        for _ in range(20):
            assert is_latin(q_lambda(random_ebf(rng, arity)).values)


def test_table_validation_and_json():
    with pytest.raises(ValueError):
        QuasigroupTable(2, 2, [[0, 0], [1, 1]])
    with pytest.raises(ValueError):
        QuasigroupTable(2, 2, [0, 1, 1, 0])
    qg = group_sum(3, 3)
    assert QuasigroupTable.from_json(qg.to_json()) == qg
    assert QuasigroupTable.from_json(json.dumps(qg.to_json())) == qg
    with pytest.raises(ValueError):
        QuasigroupTable.from_json({"order": 3, "arity": 2, "values": [0, 1]})
    with pytest.raises(ValueError):
        QuasigroupTable.from_json({"order": 3})
    with pytest.raises(ScaleError):
        QuasigroupTable.from_json({"order": 4, "arity": 9, "values": [0] * 4 ** 9})
    assert not qg.values.flags.writeable


def test_retract_examples():
    ternary = group_sum(4, 3)
    # predicate positions: 0 value, 1..3 arguments
    assert retract(ternary, {3: 0}) == group_sum(4, 2)
    for c in range(4):
        r = retract(ternary, {0: c})
        # x1 = c - x2 - x3 read off by scanning all triples
        for x2, x3 in product(range(4), repeat=2):
            hits = [x1 for x1 in range(4) if (x1 + x2 + x3) % 4 == c]
            assert r(x2, x3) == hits[0]
    with pytest.raises(ValueError):
        retract(group_sum(4, 2), {0: 1})
    with pytest.raises(ValueError):
        retract(ternary, {4: 0})
    with pytest.raises(ValueError):
        retract(ternary, {1: 4})


def _drop_variable(p, i):
    low = (1 << i) - 1
    return Gf2Polynomial(
        p.arity - 1, frozenset((m & low) | (m >> (i + 1)) << i for m in p.monomials)
    )


def test_retract_of_q_lambda_is_q_lambda_of_subfunction(rng):
    for _ in range(40):
        arity = rng.choice((4, 5))
        p = Gf2Polynomial(
            arity,
            frozenset(m for m in range(1 << arity) if popcount(m) <= 2 and rng.random() < 0.5),
        )
        qg = q_lambda(ebf_from_polynomial(p))
        i = rng.randint(1, arity - 1)
        sub = ebf_from_polynomial(_drop_variable(p.restrict(i, 0), i))
        assert retract(qg, {i: 0}) == q_lambda(sub)


def test_every_retract_is_latin(rng):
    qg = q_lambda(random_ebf(rng, 5))
    for pos in range(5):
        for val in range(4):
            assert is_latin(retract(qg, {pos: val}).values)


def test_is_reducible_examples():
    dec = is_reducible(group_sum(4, 3))
    assert dec.block == (0, 1) and dec.rest == (2,)
    assert np.array_equal(dec.compose(3), group_sum(4, 3).values)
    assert is_reducible(q_lambda(ebf_of_graph(C5))) is None
    assert is_reducible(q_lambda(ebf_of_graph(PATH4))) is not None
    with pytest.raises(ValueError):
        is_reducible(group_sum(4, 2))


def test_decomposition_parts_are_latin(rng):
    for _ in range(30):
        g = random_graph(rng, rng.choice((4, 5)))
        dec = is_reducible(q_lambda(ebf_of_graph(g)))
        if dec is not None:
            assert is_latin(dec.inner.values) and is_latin(dec.outer.values)
            assert dec.outer.arity == len(dec.rest) + 1


def test_reducibility_is_permutation_invariant(rng):
    for _ in range(40):
        g = random_graph(rng, 5)
        qg = q_lambda(ebf_of_graph(g))
        perm = list(range(4))
        rng.shuffle(perm)
        shuffled = qg.permute_arguments(perm)
        for args in product(range(4), repeat=4):
            assert shuffled(*args) == qg(*(args[perm.index(j)] for j in range(4)))
        assert (is_reducible(shuffled) is None) == (is_reducible(qg) is None)


@pytest.mark.parametrize("order", [4, 5])
def test_ebf_and_quasigroup_reducibility_agree(order):
    for g in all_graphs(order):
        f = ebf_of_graph(g)
        assert (ebf_is_separable(f) is None) == (is_reducible(q_lambda(f)) is None)


def test_kappa_examples():
    assert kappa(group_sum(4, 4)) == 2
    assert kappa(q_lambda(ebf_of_graph(C5))) == 2
    assert kappa(group_sum(3, 3)) == 2
    with pytest.raises(ValueError):
        kappa(group_sum(4, 2))


def test_kappa_of_an_irreducible_proper_retract():
    # only proper retracts count, so an irreducible table still has kappa < arity
    qg = q_lambda(ebf_of_graph(circulant_gn(7)))
    assert qg.arity == 6
    assert is_reducible(qg) is None
    assert kappa(qg) <= 5


def test_kappa_rejects_out_of_scale_tables():
    g9 = circulant_gn(9)
    f = ebf_from_polynomial(graph_to_polynomial(g9))
    with pytest.raises(ScaleError):
        kappa(q_lambda(f))


def test_direct_product_examples():
    z2z2 = direct_product(group_sum(2, 2), 2)
    assert z2z2 == q_lambda(zero_ebf(3))
    with pytest.raises(ValueError):
        direct_product(group_sum(2, 2), 1)
    with pytest.raises(ScaleError):
        direct_product(group_sum(4, 4), 8)


def test_direct_product_keeps_reducibility_status():
    reducible = direct_product(q_lambda(ebf_of_graph(PATH4)), 2)
    assert reducible.order == 8 and is_latin(reducible.values)
    assert is_reducible(reducible) is not None
    irreducible = direct_product(q_lambda(ebf_of_graph(C5)), 2)
    assert irreducible.order == 8 and irreducible.arity == 4
    assert is_reducible(irreducible) is None
