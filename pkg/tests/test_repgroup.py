from fractions import Fraction

import pytest

from clusterwilson.exactalg import RatMatrix, mat_minor
from clusterwilson.repgroup import (
    HElement,
    dynkin_star,
    gen_x,
    gen_y,
    generalized_minor,
    generalized_minor_slow,
    group_model,
    h_coeval,
    h_eval,
    matrix_to_h,
    rbar,
    s_G,
    star_h,
    transpose_T,
    wbar,
    weyl_act_torus,
)

MODELS = ["SL2", "SL3", "SL4", "SP4"]


def rand_q(rng):
    while True:
        v = Fraction(rng.randint(-7, 7), rng.randint(1, 3))
        if v:
            return v


def random_element(model, rng, length=8):
    g = model.h_matrix(HElement([rand_q(rng) for _ in model.cartan.letters]))
    for _ in range(length):
        s = rng.choice(list(model.cartan.letters))
        g = g @ (model.x(s, rand_q(rng)) if rng.random() < 0.5 else model.y(s, rand_q(rng)))
    return g


def test_generator_examples():
    sl2, sp4 = group_model("SL2"), group_model("SP4")
    assert gen_x(sl2, 1, 5) == RatMatrix([[1, 5], [0, 1]])
    E = lambda i, j: RatMatrix([[int((a, b) == (i, j)) for b in range(4)] for a in range(4)])
    assert gen_x(sp4, 2, 3) == RatMatrix.identity(4) + E(1, 2) * 3
    assert gen_x(sp4, 1, 3) == RatMatrix.identity(4) + (E(0, 1) + E(2, 3)) * 3
    for s in (1, 2):
        for t in (Fraction(2, 3), -4):
            assert sp4.in_group(gen_x(sp4, s, t)) and sp4.in_group(gen_y(sp4, s, t))


def test_rbar_examples():
    assert rbar(group_model("SL2"), 1) == RatMatrix([[0, -1], [1, 0]])
    assert rbar(group_model("SL3"), 2) == RatMatrix([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    assert rbar(group_model("SP4"), 1) == RatMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    for name in MODELS:
        m = group_model(name)
        for s in m.cartan.letters:
            assert m.rbar(s) == m.x(s, -1) @ m.y(s, 1) @ m.x(s, -1)


def test_wbar_and_sG():
    assert wbar(group_model("SL2"), (1,)) == RatMatrix([[0, -1], [1, 0]])
    for name in MODELS:
        m = group_model(name)
        words = m.cartan.weyl.reduced_words_of(m.w0_word)
        assert len({m.wbar(w) for w in words}) == 1
    assert s_G(group_model("SL2")) == RatMatrix.identity(2) * -1
    assert s_G(group_model("SL3")) == RatMatrix.identity(3)
    assert s_G(group_model("SP4")) == RatMatrix.identity(4) * -1
    with pytest.raises(ValueError):
        group_model("SL3").wbar((1, 1))


@pytest.mark.parametrize("name", MODELS)
def test_braid_relations(name):
    m = group_model(name)
    cd = m.cartan
    for s in cd.letters:
        for t in cd.letters:
            if s < t:
                k = cd.coxeter_m(s, t)
                lhs = [s, t] * k
                a = m.identity()
                b = m.identity()
                for i in range(k):
                    a = a @ m.rbar(lhs[i])
                    b = b @ m.rbar(lhs[i + 1])
                assert a == b


def test_transpose_and_star_examples(rng):
    m = group_model("SL2")
    assert transpose_T(m.x(1, 3)) == m.y(1, 3)
    h = m.h_matrix(HElement([5]))
    assert transpose_T(h) == h
    assert dynkin_star(m, h) == h
    for name in MODELS:
        m = group_model(name)
        assert dynkin_star(m, m.identity()) == m.identity()
        for s in m.cartan.letters:
            assert transpose_T(m.x(s, 2)) == m.y(s, 2)
        for _ in range(20):
            g = random_element(m, rng)
            assert dynkin_star(m, dynkin_star(m, g)) == g


def test_minor_examples(rng):
    sl2, sl3 = group_model("SL2"), group_model("SL3")
    g = random_element(sl2, rng)
    assert generalized_minor(sl2, g, 1, (), ()) == g[0, 0]
    assert generalized_minor(sl2, g, 1, (1,), ()) == g[1, 0]
    g = random_element(sl3, rng)
    assert generalized_minor(sl3, g, 2, (), ()) == mat_minor(g, [0, 1], [0, 1])


@pytest.mark.parametrize("name", MODELS)
def test_fast_minor_matches_product(name, rng):
    m = group_model(name)
    W = m.cartan.weyl.elements()
    for _ in range(3):
        g = random_element(m, rng)
        for s in m.cartan.letters:
            for u in W:
                for v in W:
                    assert generalized_minor(m, g, s, u, v) == generalized_minor_slow(m, g, s, u, v)


def test_h_eval_examples():
    a, b = Fraction(3), Fraction(-2, 5)
    assert h_eval(HElement([a]), (1,)) == a
    cd = group_model("SL3").cartan
    h = HElement([a, b])
    assert h_eval(h, cd.simple_root(1)) == a * a / b
    assert h_coeval(h, 2) == b


@pytest.mark.parametrize("name", MODELS)
def test_torus_relations(name, rng):
    m = group_model(name)
    cd = m.cartan
    for _ in range(10):
        h = HElement([rand_q(rng) for _ in cd.letters])
        H = m.h_matrix(h)
        assert matrix_to_h(m, H) == h
        assert transpose_T(H) == H
        t = rand_q(rng)
        for s in cd.letters:
            c = h_eval(h, cd.simple_root(s))
            assert H @ m.x(s, t) @ H.inverse() == m.x(s, c * t)
            assert H @ m.y(s, t) @ H.inverse() == m.y(s, t / c)
            r = m.rbar(s)
            assert r @ H @ r.inverse() == m.h_matrix(weyl_act_torus(cd, (s,), h))
        assert m.w0bar @ H @ m.w0bar_inv == m.h_matrix(weyl_act_torus(cd, m.w0_word, h))
        assert m.h_matrix(star_h(m, h)) == dynkin_star(m, H)


@pytest.mark.parametrize("name", MODELS)
def test_sG_central(name, rng):
    m = group_model(name)
    assert m.sG @ m.sG == m.identity()
    for _ in range(10):
        g = random_element(m, rng)
        assert m.in_group(g)
        assert g @ m.sG == m.sG @ g


def test_unknown_model():
    with pytest.raises(ValueError):
        group_model("G2")
    with pytest.raises(ValueError):
        group_model("SL1")
