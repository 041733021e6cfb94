"""Matrix models of SL_n and Sp4 with Chevalley generators, Weyl lifts and minors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .exactalg import RatMatrix, mat_minor, rat
from .liecore import CartanData, Weight, cartan_type, coweyl_act, star_weight


@dataclass(frozen=True)
class HElement:
    """h = prod_s alpha_s^vee(a_s); coords are the a_s."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(rat(a) for a in self.coords))
        if any(a == 0 for a in self.coords):
            raise ValueError("torus coordinates must be nonzero")

    @classmethod
    def one(cls, rank: int) -> "HElement":
        return cls((1,) * rank)

    def __mul__(self, other: "HElement") -> "HElement":
        return HElement(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "HElement":
        return HElement(tuple(Fraction(1) / a for a in self.coords))


def h_eval(h: HElement, mu: Weight):
    """h^mu = prod_s a_s^{<alpha_s^vee, mu>}."""
    v = Fraction(1)
    for a, k in zip(h.coords, mu):
        if k:
            v *= Fraction(a) ** k
    return rat(v)


def h_coeval(h: HElement, t: int):
    """h^{varpi_t^vee}: the t-th coroot coordinate."""
    return h.coords[t - 1]


def coroot_element(rank: int, beta, c) -> HElement:
    """beta^vee(c) for a coweight beta in simple-coroot coordinates."""
    return HElement(tuple(Fraction(c) ** b for b in beta))


def weyl_act_torus(cartan: CartanData, word: Sequence[int], h: HElement) -> HElement:
    """w(h) = wbar h wbar^{-1}; on cocharacters this is the coweight action."""
    out = HElement.one(cartan.rank)
    for t, a in enumerate(h.coords, start=1):
        beta = coweyl_act(cartan, word, cartan.simple_coroot(t))
        out = out * coroot_element(cartan.rank, beta, a)
    return out


class GroupModel:
    """Defining representation of SL_{n} (type A_{n-1}) or Sp4 (type C2)."""

    def __init__(self, name: str):
        name = name.upper()
        self.name = name
        if name == "SP4":
            self.cartan = cartan_type("C2")
            self.dim = 4
            self.J = RatMatrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
            # (s, position pairs) for the root subgroups
            self._blocks = {1: [(0, 1), (2, 3)], 2: [(1, 2)]}
            self._fund_degree = {1: 1, 2: 2}
        elif name.startswith("SL"):
            n = int(name[2:])
            if n < 2:
                raise ValueError("SL_n needs n >= 2")
            self.cartan = cartan_type(f"A{n - 1}")
            self.dim = n
            self.J = None
            self._blocks = {s: [(s - 1, s)] for s in range(1, n)}
            self._fund_degree = {s: s for s in range(1, n)}
        else:
            raise ValueError(f"unknown group model {name!r}")

    def __repr__(self):
        return f"GroupModel({self.name})"

    @property
    def rank(self):
        return self.cartan.rank

    def fund_degree(self, s: int) -> int:
        """Exterior power Lambda^k of the defining rep carrying V(varpi_s)."""
        return self._fund_degree[s]

    def identity(self) -> RatMatrix:
        return RatMatrix.identity(self.dim)

    def _phi(self, s: int, a, b, c, d) -> RatMatrix:
        m = [[int(i == j) for j in range(self.dim)] for i in range(self.dim)]
        for (i, j) in self._blocks[s]:
            m[i][i], m[i][j], m[j][i], m[j][j] = a, b, c, d
        return RatMatrix(m)

    def x(self, s: int, t) -> RatMatrix:
        return self._phi(s, 1, t, 0, 1)

    def y(self, s: int, t) -> RatMatrix:
        return self._phi(s, 1, 0, t, 1)

    def alpha(self, s: int, a) -> RatMatrix:
        a = Fraction(a)
        if a == 0:
            raise ValueError("alpha^vee needs a nonzero argument")
        return self._phi(s, a, 0, 0, 1 / a)

    def rbar(self, s: int) -> RatMatrix:
        return self._phi(s, 0, -1, 1, 0)

    def wbar(self, word: Sequence[int]) -> RatMatrix:
        word = tuple(word)
        if not self.cartan.weyl.is_reduced(word):
            raise ValueError(f"{word} is not reduced")
        return self._wbar_cached(word)

    def _wbar_cached(self, word):
        cache = self.__dict__.setdefault("_wcache", {})
        if word not in cache:
            m = self.identity()
            for s in word:
                m = m @ self.rbar(s)
            cache[word] = m
        return cache[word]

    def selector(self, word: Sequence[int], k: int, side: str) -> tuple:
        """Signed positions of the first k rows of wbar_inv (side 'row') or columns of wbar ('col').

        Weyl lifts are signed permutation matrices, so each such row or column has
        one nonzero entry; returns (positions, sign).
        """
        key = (tuple(word), k, side)
        cache = self.__dict__.setdefault("_selcache", {})
        if key not in cache:
            M = self.wbar_inv(word) if side == "row" else self.wbar(word).T
            pos, sign = [], 1
            for i in range(k):
                nz = [(j, M[i, j]) for j in range(self.dim) if M[i, j] != 0]
                if len(nz) != 1 or abs(nz[0][1]) != 1:
                    raise RuntimeError("Weyl lift is not a signed permutation")
                pos.append(nz[0][0])
                sign *= int(nz[0][1])
            cache[key] = (tuple(pos), sign)
        return cache[key]

    def wbar_inv(self, word: Sequence[int]) -> RatMatrix:
        word = tuple(word)
        cache = self.__dict__.setdefault("_winvcache", {})
        if word not in cache:
            cache[word] = self.wbar(word).inverse()
        return cache[word]

    @cached_property
    def w0_word(self) -> tuple:
        return self.cartan.weyl.longest_word

    @cached_property
    def w0bar(self) -> RatMatrix:
        return self.wbar(self.w0_word)

    @cached_property
    def w0bar_inv(self) -> RatMatrix:
        return self.w0bar.inverse()

    @cached_property
    def sG(self) -> RatMatrix:
        return self.w0bar @ self.w0bar

    def h_matrix(self, h: HElement) -> RatMatrix:
        m = self.identity()
        for s, a in enumerate(h.coords, start=1):
            m = m @ self.alpha(s, a)
        return m

    def in_group(self, g: RatMatrix) -> bool:
        if g.rows != self.dim or g.cols != self.dim or g.det() != 1:
            return False
        if self.J is not None:
            return g.T @ self.J @ g == self.J
        return True

    @cached_property
    def sG_torus(self) -> HElement:
        """s_G as a torus element (it is central and diagonal)."""
        d = [self.sG[i, i] for i in range(self.dim)]
        for cand in _sign_vectors(self.rank):
            h = HElement(cand)
            if [self.h_matrix(h)[i, i] for i in range(self.dim)] == d:
                return h
        raise RuntimeError("s_G is not in the torus")

    @cached_property
    def basis_weights(self) -> list:
        """Weight of each standard basis vector, read off torus eigenvalues."""
        out = []
        for i in range(self.dim):
            wt = []
            for s in self.cartan.letters:
                v = Fraction(self.alpha(s, 2)[i, i])
                k = 0
                while v > 1:
                    v /= 2
                    k += 1
                while v < 1:
                    v *= 2
                    k -= 1
                wt.append(k)
            out.append(tuple(wt))
        return out


def _sign_vectors(r):
    if r == 0:
        yield ()
        return
    for rest in _sign_vectors(r - 1):
        yield rest + (1,)
        yield rest + (-1,)


_MODELS = {}


def group_model(name: str) -> GroupModel:
    key = name.upper()
    if key not in _MODELS:
        _MODELS[key] = GroupModel(key)
    return _MODELS[key]


def gen_x(model: GroupModel, s: int, t) -> RatMatrix:
    return model.x(s, t)


def gen_y(model: GroupModel, s: int, t) -> RatMatrix:
    return model.y(s, t)


def gen_alpha(model: GroupModel, s: int, a) -> RatMatrix:
    return model.alpha(s, a)


def rbar(model: GroupModel, s: int) -> RatMatrix:
    return model.rbar(s)


def wbar(model: GroupModel, word: Sequence[int]) -> RatMatrix:
    return model.wbar(word)


def s_G(model: GroupModel) -> RatMatrix:
    return model.sG


def transpose_T(g: RatMatrix) -> RatMatrix:
    return g.T


def dynkin_star(model: GroupModel, g: RatMatrix) -> RatMatrix:
    """w0bar (g^{-1})^T w0bar^{-1}."""
    return model.w0bar @ g.inverse().T @ model.w0bar_inv


def top_minor(M: RatMatrix, k: int):
    """Coefficient of e_1 ^ ... ^ e_k in Lambda^k(M)(e_1 ^ ... ^ e_k)."""
    idx = range(k)
    return mat_minor(M, idx, idx)


def generalized_minor(model: GroupModel, g: RatMatrix, s: int, u: Sequence[int], v: Sequence[int]):
    """Delta_{u varpi_s, v varpi_s}(g)."""
    k = model.fund_degree(s)
    rows, sr = model.selector(u, k, "row")
    cols, sc = model.selector(v, k, "col")
    return rat(sr * sc * mat_minor(g, rows, cols))


def generalized_minor_slow(model: GroupModel, g: RatMatrix, s: int, u: Sequence[int], v: Sequence[int]):
    """Same minor through the full product; kept as a cross-check."""
    M = model.wbar_inv(u) @ g @ model.wbar(v)
    return top_minor(M, model.fund_degree(s))


def exterior_power(M: RatMatrix, k: int) -> RatMatrix:
    """Matrix of Lambda^k(M) in the lexicographic basis e_I."""
    subsets = list(combinations(range(M.rows), k))
    return RatMatrix([[mat_minor(M, I, J) for J in subsets] for I in subsets])


def exterior_weights(model: GroupModel, k: int) -> list:
    """Weights of the basis e_I of Lambda^k (lexicographic)."""
    wts = model.basis_weights
    out = []
    for I in combinations(range(model.dim), k):
        out.append(tuple(sum(wts[i][t] for i in I) for t in range(model.rank)))
    return out


def star_h(model: GroupModel, h: HElement) -> HElement:
    """Dynkin involution on the torus: h* = w0(h^{-1})."""
    return weyl_act_torus(model.cartan, model.w0_word, h.inverse())


def matrix_to_h(model: GroupModel, m: RatMatrix) -> HElement:
    """Recover torus coordinates from a diagonal matrix in the model."""
    wts = model.basis_weights
    coords = []
    for s in model.cartan.letters:
        # find a basis vector whose weight pairs to 1 with alpha_s^vee and 0 elsewhere
        target = tuple(1 if t == s else 0 for t in model.cartan.letters)
        deg = model.fund_degree(s)
        for I in combinations(range(model.dim), deg):
            wt = tuple(sum(wts[i][t] for i in I) for t in range(model.rank))
            if wt == target:
                coords.append(mat_minor(m, I, I))
                break
        else:
            raise RuntimeError("no highest vector found")
    h = HElement(coords)
    if model.h_matrix(h) != m:
        raise ValueError("matrix is not a torus element of the model")
    return h


def star_weight_of(model: GroupModel, lam):
    return star_weight(model.cartan, lam)
