import json
import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from clusterwilson.cluster import (
    MutationError,
    MutationSequence,
    Seed,
    cluster_variables_closure,
    exchange_monomials,
    export_quiver_dot,
    is_laurent_in_cluster,
    is_skew_symmetrizable,
    mutate_matrix,
    mutate_seed,
    mutate_sequence,
    rank_check,
    skew_symmetrizer,
    upper_bound_member,
    x_from_a,
)
from clusterwilson.exactalg import LaurentPoly, laurent_exact_div
from clusterwilson.surface import figure_quiver


def test_mutate_matrix_examples():
    assert mutate_matrix([[0, 1], [-1, 0]], 1) == ((0, -1), (1, 0))
    eps = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    out = mutate_matrix(eps, 2)
    assert out[0][2] == 1 and out[2][0] == -1
    assert mutate_matrix(mutate_matrix(eps, 2), 2) == tuple(map(tuple, eps))


def test_rank_one_example():
    seed = Seed.initial([[0, 1]], 1)
    new = mutate_seed(seed, 1)
    A1, A2 = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    assert new.variables[0] == laurent_exact_div(A2 + 1, A1)
    assert mutate_seed(new, 1).variables == seed.variables
    assert mutate_seed(new, 1).path == ()
    with pytest.raises(MutationError):
        mutate_seed(seed, 2)


def test_a2_pattern():
    seed = Seed.initial([[0, 1], [-1, 0]], 2)
    assert len(cluster_variables_closure(seed)) == 5
    out = mutate_sequence(seed, [1, 2, 1, 2, 1])
    assert out.variables == (seed.variables[1], seed.variables[0])


def test_x_from_a_examples():
    seed = Seed.initial([[0, 1, -1], [0, 0, 0], [0, 0, 0]], 2)
    assert x_from_a(seed, 1) == LaurentPoly.monomial((0, 1, -1))
    assert x_from_a(seed, 2) == LaurentPoly.const(3, 1)
    q = figure_quiver("A1-quad-left")
    names = list(q.vertices)
    x = x_from_a(q.seed(), q.index("x11"))
    # exponent +1 on the two side minors, -1 on the frozen pair
    want = {"x10": 1, "x12": 1, "in1": -1, "out1": -1, "x11": 0}
    assert x == LaurentPoly.monomial([want[v] for v in names])


def test_membership_examples():
    seed = Seed.initial([[0, 1]], 1)
    assert is_laurent_in_cluster("(A2 + 1)/A1", seed)
    assert not is_laurent_in_cluster("1/(A1 + 1)", seed)
    new = mutate_seed(seed, 1)
    assert upper_bound_member(new.variables[0], new)
    assert is_laurent_in_cluster(new.variables[0], seed)
    assert not upper_bound_member("A1 + 1/(A1*A2 + 1)", seed)
    a2 = Seed.initial([[0, 1], [-1, 0]], 2)
    assert not upper_bound_member("1/(A1*A2 + 1)", a2)
    with pytest.raises(ZeroDivisionError):
        is_laurent_in_cluster("A1/(A2 - A2)", seed)


def test_rank_check_examples():
    assert rank_check(figure_quiver("A1-quad-left").epsilon, 1)
    assert not rank_check([[0, 0], [0, 0]], 1)
    assert rank_check(figure_quiver("C2-quad").epsilon, 6)
    assert rank_check(figure_quiver("C2-quad-minors").epsilon, 6)


def test_skew_symmetrizer():
    eps = [[0, 1], [-2, 0]]
    assert skew_symmetrizer(eps) == (1, 2)
    assert is_skew_symmetrizable(eps, (1, 2))
    assert not is_skew_symmetrizable(eps, (1, 1))
    assert skew_symmetrizer([[0, 1], [1, 0]]) is None


def test_json_round_trip_is_byte_identical():
    seed = mutate_sequence(figure_quiver("A2-quad-1").seed(), [2, 1, 4])
    text = seed.dumps()
    again = Seed.from_json(json.loads(text))
    assert again.dumps() == text
    assert again == seed
    with pytest.raises(ValueError):
        Seed.from_json({"n": 1})


def test_dot_export():
    dot = export_quiver_dot(Seed.initial([[0, 1]], 1))
    assert dot.count("->") == 1
    assert '"A2" [shape=box]' in dot
    q = figure_quiver("A1-quad-left").seed()
    assert export_quiver_dot(q) == export_quiver_dot(q)
    q2 = figure_quiver("C2-quad").seed()
    assert export_quiver_dot(q2, "c2") == export_quiver_dot(q2, "c2")
    assert 'label="1,2"' in export_quiver_dot(q2) or 'label="2,1"' in export_quiver_dot(q2)


def test_mutation_sequence():
    seq = MutationSequence.parse("1, 3,2")
    assert tuple(seq) == (1, 3, 2) and len(seq) == 3
    assert len(MutationSequence.parse("")) == 0
    with pytest.raises(MutationError):
        seq.validate(2)


# -- random seeds ----------------------------------------------------------

@st.composite
def small_seeds(draw):
    m = draw(st.integers(1, 4))
    frozen = draw(st.integers(0, 2))
    n = m + frozen
    d = [draw(st.sampled_from([1, 2])) for _ in range(m)]
    eps = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a = draw(st.integers(-2, 2))
            # eps_ij = a d_i keeps eps D skew on the mutable block
            eps[i][j] = a * d[i]
            eps[j][i] = -a * d[j]
        for j in range(m, n):
            eps[i][j] = draw(st.integers(-2, 2))
    return Seed.initial(eps, m, symmetrizer=tuple(d))


@given(small_seeds(), st.data())
def test_mutation_involution_and_exchange(seed, data):
    k = data.draw(st.integers(1, seed.m))
    new = mutate_seed(seed, k)
    again = mutate_seed(new, k)
    assert again.epsilon == seed.epsilon and again.variables == seed.variables
    pos, neg = exchange_monomials(seed, k)
    assert seed.variables[k - 1] * new.variables[k - 1] == pos + neg
    assert is_skew_symmetrizable(new.epsilon, seed.symmetrizer, seed.m)


@given(small_seeds(), st.lists(st.integers(1, 4), max_size=6))
def test_exchange_identity_along_paths(seed, path):
    for k in path:
        if k > seed.m:
            continue
        pos, neg = exchange_monomials(seed, k)
        new = mutate_seed(seed, k)
        assert seed.variables[k - 1] * new.variables[k - 1] == pos + neg
        seed = new


@pytest.mark.parametrize("name", ["A1-quad-left", "A2-quad-1", "C2-quad-minors"])
def test_laurent_phenomenon_sampled(name):
    rng = random.Random(hash(name) & 0xFFFF)
    base = figure_quiver(name).seed()
    for _ in range(8):
        seed = base
        for _ in range(rng.randint(1, 8)):
            seed = mutate_seed(seed, rng.randint(1, seed.m))
        for v in seed.variables:
            assert isinstance(v, LaurentPoly)
            assert is_laurent_in_cluster(v, base)


@given(small_seeds())
def test_x_monomials_injective_when_full_rank(seed):
    if not rank_check(seed.epsilon, seed.m):
        return
    seen = {}
    for a in product(range(-1, 2), repeat=seed.m):
        mono = LaurentPoly.const(seed.n, 1)
        for i, ai in enumerate(a, start=1):
            if ai:
                mono = mono * x_from_a(seed, i) ** ai
        key = mono.to_str()
        assert key not in seen
        seen[key] = a
