"""Decorated-flag configurations, chains, pair minors and Wilson-line matrices.

A quadruple in standard form is parametrized by (h, h', g):

    A^L = g h,   A_L = 1,   A_R = w0bar^{-1} h',   A^R = g w0bar     (all mod U+)

The top chain runs A^R = A^0 -> ... -> A^N = A^L along the barred word, the
bottom chain A_L = A_0 -> ... -> A_N = A_R along the starred unbarred word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactalg import RatMatrix, mat_minor, rat
from .liecore import (
    DoubleWord,
    coweyl_act,
    coroot_sequence,
    positive_part,
    require_w0_word,
    split_double_word,
    star_weight,
    weyl_act,
)
from .repgroup import (
    GroupModel,
    HElement,
    coroot_element,
    dynkin_star,
    generalized_minor,
    h_coeval,
    h_eval,
    top_minor,
    weyl_act_torus,
)


class GenericityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DecoratedFlag:
    """The coset g.[U+]."""

    rep: RatMatrix

    def act(self, k: RatMatrix) -> "DecoratedFlag":
        return DecoratedFlag(k @ self.rep)

    def right(self, model: GroupModel, h: HElement) -> "DecoratedFlag":
        return DecoratedFlag(self.rep @ model.h_matrix(h))

    def same_coset(self, other: "DecoratedFlag") -> bool:
        u = self.rep.inverse() @ other.rep
        n = u.rows
        return all(u[i, j] == (1 if i == j else 0) for i in range(n) for j in range(i + 1))


@dataclass(frozen=True)
class FlagChain:
    word: tuple
    flags: tuple  # flags[k], k = 0..N
    torus: tuple  # h_k
    coeffs: tuple  # c_k, k = 1..N (index k-1)

    def __getitem__(self, k):
        return self.flags[k]

    def __len__(self):
        return len(self.flags)


def chain_torus(model: GroupModel, word: Sequence[int], h_inv: HElement):
    """c_k by the coroot-simplicity rule and h_k = r_{s_k}(h_{k-1}) alpha_{s_k}^vee(c_k)."""
    cartan = model.cartan
    seq = coroot_sequence(cartan, word)
    coeffs = []
    for entry in seq:
        coeffs.append(h_coeval(h_inv, entry.simple) if entry.simple is not None else 1)
    hs = [HElement.one(cartan.rank)]
    for k, s in enumerate(word, start=1):
        prev = weyl_act_torus(cartan, (s,), hs[-1])
        hs.append(prev * coroot_element(cartan.rank, cartan.simple_coroot(s), coeffs[k - 1]))
    return tuple(coeffs), tuple(hs)


def chain_torus_product(model: GroupModel, word: Sequence[int], coeffs: Sequence, k: int) -> HElement:
    """Closed product h_k = prod_{j<=k} r_{s_k}...r_{s_{j+1}}(alpha_{s_j}^vee)(c_j)."""
    cartan = model.cartan
    out = HElement.one(cartan.rank)
    word = tuple(word)
    for j in range(1, k + 1):
        w = word[j:k][::-1]  # r_{s_k} ... r_{s_{j+1}}
        beta = coweyl_act(cartan, w, cartan.simple_coroot(word[j - 1]))
        out = out * coroot_element(cartan.rank, beta, coeffs[j - 1])
    return out


def chain(model: GroupModel, left: DecoratedFlag, right: DecoratedFlag, word: Sequence[int], h_inv: HElement) -> FlagChain:
    """Chain left = A_0 <- A_1 <- ... <- A_N = right with w(A_k, A_{k-1}) = r_{s_k}.

    The pair must be (right, left) = B.(h_inv.[U+], w0bar.[U+]) for some B.
    """
    word = require_w0_word(model.cartan, word)
    base = left.rep @ model.w0bar_inv
    if not DecoratedFlag(base @ model.h_matrix(h_inv)).same_coset(right):
        raise ValueError("pair is not in the standard relative position for this h-invariant")
    coeffs, hs = chain_torus(model, word, h_inv)
    n = len(word)
    flags = []
    for k in range(n + 1):
        suffix = tuple(reversed(word[k:]))  # r_{s_N} ... r_{s_{k+1}}
        rep = base @ model.wbar(suffix) @ model.h_matrix(hs[k])
        flags.append(DecoratedFlag(rep))
    flags[0] = left
    return FlagChain(word, tuple(flags), hs, coeffs)


def delta_pair(model: GroupModel, s: int, A1: DecoratedFlag, A2: DecoratedFlag):
    """Delta_s(A1, A2): highest coefficient of w0bar g2^{-1} g1 on V(varpi_s)."""
    M = model.w0bar @ A2.rep.inverse() @ A1.rep
    return top_minor(M, model.fund_degree(s))


def star_word(model: GroupModel, word: Sequence[int]) -> tuple:
    return tuple(model.cartan.star(s) for s in word)


@dataclass(frozen=True, eq=False)
class QuadConfig:
    model: GroupModel
    h: HElement
    hp: HElement
    g: RatMatrix

    @cached_property
    def A_upper_L(self) -> DecoratedFlag:
        return DecoratedFlag(self.g @ self.model.h_matrix(self.h))

    @cached_property
    def A_lower_L(self) -> DecoratedFlag:
        return DecoratedFlag(self.model.identity())

    @cached_property
    def A_lower_R(self) -> DecoratedFlag:
        return DecoratedFlag(self.model.w0bar_inv @ self.model.h_matrix(self.hp))

    @cached_property
    def A_upper_R(self) -> DecoratedFlag:
        return DecoratedFlag(self.g @ self.model.w0bar)

    def upper_chain(self, word: Sequence[int]) -> FlagChain:
        cache = self.__dict__.setdefault("_upper", {})
        word = tuple(word)
        if word not in cache:
            cache[word] = chain(self.model, self.A_upper_R, self.A_upper_L, word, self.h)
        return cache[word]

    def lower_chain(self, word: Sequence[int]) -> FlagChain:
        """Chain along the starred word; ``word`` is the unstarred bottom word."""
        cache = self.__dict__.setdefault("_lower", {})
        word = tuple(word)
        if word not in cache:
            cache[word] = chain(self.model, self.A_lower_L, self.A_lower_R, star_word(self.model, word), self.hp)
        return cache[word]

    def to_json(self) -> dict:
        return {
            "type": self.model.name,
            "h": [str(Fraction(a)) for a in self.h.coords],
            "hprime": [str(Fraction(a)) for a in self.hp.coords],
            "g": self.g.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadConfig":
        from .repgroup import group_model

        model = group_model(data["type"])
        g = RatMatrix.from_json(data["g"])
        if not model.in_group(g):
            raise ValueError("g is not in the model group")
        return cls(model, HElement([Fraction(x) for x in data["h"]]), HElement([Fraction(x) for x in data["hprime"]]), g)


def frozen_invariants(config: QuadConfig):
    """({s: A_in^s}, {s: A_out^s})."""
    cartan = config.model.cartan
    a_in = {s: h_eval(config.hp, star_weight(cartan, cartan.fundamental(s))) for s in cartan.letters}
    a_out = {s: h_eval(config.h, cartan.fundamental(s)) for s in cartan.letters}
    return a_in, a_out


def suffix_word(word: Sequence[int], k: int) -> tuple:
    """r_{s_N} ... r_{s_{k+1}} as a word."""
    return tuple(reversed(tuple(word)[k:]))


def minor_denominator(config: QuadConfig, top: Sequence[int], bottom: Sequence[int], k: int, l: int, s: int):
    cartan = config.model.cartan
    fund = cartan.fundamental(s)
    u = suffix_word(bottom, l)
    v = suffix_word(top, k)
    lam_u = star_weight(cartan, positive_part(weyl_act(cartan, u, fund)))
    lam_v = positive_part(weyl_act(cartan, v, fund))
    return rat(Fraction(h_eval(config.hp, lam_u)) * h_eval(config.h, lam_v))


def wilson_minor_words(config: QuadConfig, top: Sequence[int], bottom: Sequence[int], k: int, l: int, s: int):
    num = delta_pair(config.model, s, config.upper_chain(top)[k], config.lower_chain(bottom)[l])
    return rat(Fraction(num) / minor_denominator(config, top, bottom, k, l, s))


def wilson_minor(config: QuadConfig, double_word: DoubleWord, k: int, l: int, s: int):
    """Delta_{u_{>l} varpi_s, v_{>k} varpi_s}(g_[c]) from the chain minor Delta_s(A^k, A_l)."""
    top, bottom = split_double_word(double_word, config.model.cartan)
    n = len(top)
    if not (0 <= k <= n and 0 <= l <= n):
        raise IndexError("chain index out of range")
    return wilson_minor_words(config, top, bottom, k, l, s)


def word_pairs(model: GroupModel) -> list:
    """(top, bottom) word pairs feeding the vector-representation matrix, in preference order."""
    if model.name == "SP4":
        return [((1, 2, 1, 2), (1, 2, 1, 2)), ((2, 1, 2, 1), (2, 1, 2, 1))]
    if model.name == "SL2":
        return [((1,), (1,))]
    if model.name == "SL3":
        return [((1, 2, 1), (1, 2, 1))]
    w = model.w0_word
    return [(w, w)]


@dataclass(frozen=True)
class EntrySource:
    """Where entry (i, j) comes from: top chain (pair index, k), bottom chain (pair index, l)."""

    top_pair: int
    k: int
    bottom_pair: int
    l: int
    sign: int


def matrix_layout(model: GroupModel, pairs=None) -> list:
    """For each (i, j) pick the chain flags whose Weyl weights hit e_i, e_j.

    Columns take the first word pair (then the largest k) whose v_{>k} varpi_1
    is the weight of e_j; rows likewise with u_{>l}.
    """
    pairs = pairs or word_pairs(model)
    cartan = model.cartan
    fund = cartan.fundamental(1)
    wts = model.basis_weights

    def find(which, target):
        for p, words in enumerate(pairs):
            word = words[which]
            for k in range(len(word), -1, -1):
                w = suffix_word(word, k)
                if weyl_act(cartan, w, fund) == target:
                    col = [model.wbar(w)[i, 0] for i in range(model.dim)]
                    idx = wts.index(target)
                    sign = col[idx]
                    assert sign in (1, -1) and sum(abs(x) for x in col) == 1
                    return p, k, sign
        raise GenericityError(f"weight {target} not reachable from the chains")

    cols = [find(0, wts[j]) for j in range(model.dim)]
    rows = [find(1, wts[i]) for i in range(model.dim)]
    return [[EntrySource(cols[j][0], cols[j][1], rows[i][0], rows[i][1], rows[i][2] * cols[j][2])
             for j in range(model.dim)] for i in range(model.dim)]


def wilson_matrix(config: QuadConfig, model: GroupModel | None = None, pairs=None) -> RatMatrix:
    """Assemble g_[c] entry by entry from chain minors (should equal g s_G)."""
    model = model or config.model
    pairs = pairs or word_pairs(model)
    layout = matrix_layout(model, pairs)
    out = []
    for row in layout:
        r = []
        for src in row:
            top = pairs[src.top_pair][0]
            bottom = pairs[src.bottom_pair][1]
            r.append(src.sign * wilson_minor_words(config, top, bottom, src.k, src.l, 1))
        out.append(r)
    return RatMatrix(out)


# ---------------------------------------------------------------------------
# Pair invariants
# ---------------------------------------------------------------------------

def pair_invariants(model: GroupModel, A1: DecoratedFlag, A2: DecoratedFlag):
    """(w, h) with (A1, A2) = k.(h.[U+], wbar.[U+])."""
    M = A2.rep.inverse() @ A1.rep
    found = []
    for w in model.cartan.weyl.elements():
        wm = model.wbar(w) @ M
        vals = [top_minor(wm, model.fund_degree(s)) for s in model.cartan.letters]
        if all(v != 0 for v in vals):
            found.append((w, vals))
    if not found:
        raise RuntimeError("pair lies in no Bruhat cell")
    top = max(len(w) for w, _ in found)
    best = [f for f in found if len(f[0]) == top]
    if len(best) != 1:
        raise RuntimeError("ambiguous Bruhat cell")
    w, vals = best[0]
    return w, HElement(vals)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random, nonzero: bool = True, size: int = 9) -> Fraction:
    while True:
        v = Fraction(rng.randint(-size, size), rng.randint(1, 4))
        if v or not nonzero:
            return v


def random_torus(model: GroupModel, rng: random.Random) -> HElement:
    return HElement([random_rational(rng) for _ in model.cartan.letters])


def default_double_word(model: GroupModel) -> DoubleWord:
    top, bottom = word_pairs(model)[0]
    return DoubleWord.from_words(top, bottom)


def _generic(model: GroupModel, g: RatMatrix) -> bool:
    # nonvanishing only depends on the index sets picked out by u and v
    W = model.cartan.weyl.elements()
    for s in model.cartan.letters:
        k = model.fund_degree(s)
        rows = {tuple(sorted(model.selector(u, k, "row")[0])) for u in W}
        cols = {tuple(sorted(model.selector(v, k, "col")[0])) for v in W}
        for P in rows:
            for Q in cols:
                if mat_minor(g, P, Q) == 0:
                    return False
    return True


def sample_cell_element(model: GroupModel, double_word: DoubleWord, rng: random.Random,
                        budget: int = 200, check: bool = True) -> RatMatrix:
    """g = h'' prod_k e_k with y_s for barred and x_s for unbarred letters."""
    split_double_word(double_word, model.cartan)
    for _ in range(budget):
        g = model.h_matrix(random_torus(model, rng))
        for s, barred in double_word.letters:
            t = random_rational(rng)
            g = g @ (model.y(s, t) if barred else model.x(s, t))
        if not check or _generic(model, g):
            return g
    raise GenericityError("resample budget exhausted")


def cell_product(model: GroupModel, double_word: DoubleWord, ts: Sequence, h: HElement | None = None) -> RatMatrix:
    g = model.h_matrix(h) if h is not None else model.identity()
    for (s, barred), t in zip(double_word.letters, ts):
        g = g @ (model.y(s, t) if barred else model.x(s, t))
    return g


def random_config(model: GroupModel, rng: random.Random) -> QuadConfig:
    g = sample_cell_element(model, default_double_word(model), rng)
    return QuadConfig(model, random_torus(model, rng), random_torus(model, rng), g)


# ---------------------------------------------------------------------------
# Triangle case and Wilson-line identities
# ---------------------------------------------------------------------------

def triangle_invariants(model: GroupModel, h1: HElement, h2: HElement, u: RatMatrix) -> dict:
    n = u.rows
    if not all(u[i, j] == (1 if i == j else 0) for i in range(n) for j in range(i + 1)):
        raise ValueError("u must be upper unitriangular")
    if not model.in_group(u):
        raise ValueError("u is not in the model group")
    w0 = model.w0bar
    boundary = w0 @ model.h_matrix(h1) @ model.w0bar_inv
    potentials = {s: generalized_minor(model, u, s, (), (s,)) for s in model.cartan.letters}
    return {
        "boundary": boundary,
        "boundary_twisted": boundary @ model.sG,
        "corner": u @ w0,
        "simple": u @ model.h_matrix(h2.inverse()) @ model.sG,
        "potentials": potentials,
    }


def twisted_compose(model: GroupModel, g1: RatMatrix, g2: RatMatrix) -> RatMatrix:
    return g1 @ model.w0bar_inv @ g2


def reverse_wilson(model: GroupModel, g: RatMatrix) -> RatMatrix:
    return dynkin_star(model, g.T)


# ---------------------------------------------------------------------------
# Explicit matrices, typed in by hand
# ---------------------------------------------------------------------------

# entry (i, j): (top chain, k, bottom chain, l, A_in letter, A_out letter);
# chain 0 uses the first reduced word, chain 1 the hatted one (2,1,2,1)
_E = None
EXPLICIT_TABLES = {
    "SL2": [
        [(0, 1, 0, 1, 1, 1), (0, 0, 0, 1, 1, _E)],
        [(0, 1, 0, 0, _E, 1), (0, 0, 0, 0, _E, _E)],
    ],
    "SL3": [
        [(0, 3, 0, 3, 1, 1), (0, 2, 0, 3, 1, 2), (0, 0, 0, 3, 1, _E)],
        [(0, 3, 0, 2, 2, 1), (0, 2, 0, 2, 2, 2), (0, 0, 0, 2, 2, _E)],
        [(0, 3, 0, 0, _E, 1), (0, 2, 0, 0, _E, 2), (0, 0, 0, 0, _E, _E)],
    ],
    "SP4": [
        [(0, 4, 0, 4, 1, 1), (1, 3, 0, 4, 1, 2), (0, 2, 0, 4, 1, 1), (0, 0, 0, 4, 1, _E)],
        [(0, 4, 1, 3, 2, 1), (1, 3, 1, 3, 2, 2), (0, 2, 1, 3, 2, 1), (0, 0, 1, 3, 2, _E)],
        [(0, 4, 0, 2, 1, 1), (1, 3, 0, 2, 1, 2), (0, 2, 0, 2, 1, 1), (0, 0, 0, 2, 1, _E)],
        [(0, 4, 0, 0, _E, 1), (1, 3, 0, 0, _E, 2), (0, 2, 0, 0, _E, 1), (0, 0, 0, 0, _E, _E)],
    ],
}

_EXPLICIT_WORDS = {
    "SL2": [(1,)],
    "SL3": [(1, 2, 1)],
    "SP4": [(1, 2, 1, 2), (2, 1, 2, 1)],
}


def explicit_matrix(config: QuadConfig) -> RatMatrix:
    """Delta_1(A^k, A_l) over the tabulated frozen monomial, entry by entry."""
    name = config.model.name
    if name not in EXPLICIT_TABLES:
        raise KeyError(f"no explicit table for {name}")
    words = _EXPLICIT_WORDS[name]
    a_in, a_out = frozen_invariants(config)
    tops = [config.upper_chain(w) for w in words]
    bottoms = [config.lower_chain(w) for w in words]
    rows = []
    for row in EXPLICIT_TABLES[name]:
        r = []
        for tp, k, bp, l, s_in, s_out in row:
            den = Fraction(1)
            if s_in is not None:
                den *= a_in[s_in]
            if s_out is not None:
                den *= a_out[s_out]
            r.append(rat(Fraction(delta_pair(config.model, 1, tops[tp][k], bottoms[bp][l])) / den))
        rows.append(r)
    return RatMatrix(rows)
