"""Cartan data, weights and coweights, Weyl words and double words.

Weights are integer tuples in the fundamental-weight basis; coweights are
integer tuples in the simple-coroot basis.  Indices in S are 1-based in the
public API (letters of words), tuples are 0-based internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

Weight = tuple
Coweight = tuple


class NotReduced(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    type_label: str
    cartan: tuple  # cartan[s][t] = <alpha_s^vee, alpha_t>, 0-based
    symmetrizer: tuple

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def letters(self) -> range:
        return range(1, self.rank + 1)

    def C(self, s: int, t: int) -> int:
        return self.cartan[s - 1][t - 1]

    def simple_root(self, s: int) -> Weight:
        """alpha_s in fundamental-weight coordinates (column s of the Cartan matrix)."""
        return tuple(self.cartan[u][s - 1] for u in range(self.rank))

    def fundamental(self, s: int) -> Weight:
        return tuple(1 if u == s - 1 else 0 for u in range(self.rank))

    def simple_coroot(self, s: int) -> Coweight:
        return self.fundamental(s)

    def coxeter_m(self, s: int, t: int) -> int:
        if s == t:
            return 1
        return {0: 2, 1: 3, 2: 4, 3: 6}[self.C(s, t) * self.C(t, s)]

    @cached_property
    def weyl(self) -> "WeylGroup":
        return WeylGroup(self)

    @cached_property
    def star_map(self) -> dict:
        """s -> s* defined by alpha_{s*} = -w0.alpha_s."""
        w0 = self.weyl.longest_word
        out = {}
        for s in self.letters:
            img = tuple(-x for x in weyl_act(self, w0, self.simple_root(s)))
            match = [t for t in self.letters if self.simple_root(t) == img]
            if len(match) != 1:
                raise RuntimeError("star map is not a permutation of simple roots")
            out[s] = match[0]
        return out

    def star(self, s: int) -> int:
        return self.star_map[s]


def cartan_type(label: str) -> CartanData:
    """Build A1, A2, An (n >= 1) or C2 data."""
    label = label.strip().upper()
    m = re.fullmatch(r"A(\d+)", label)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("rank must be positive")
        c = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))
        return CartanData(f"A{n}", c, (1,) * n)
    if label == "C2":
        # alpha_1 = e1 - e2 (short), alpha_2 = 2 e2 (long)
        return CartanData("C2", ((2, -2), (-1, 2)), (1, 2))
    raise ValueError(f"unsupported Cartan type {label!r}")


def pairing(beta: Coweight, mu: Weight) -> int:
    return sum(b * m for b, m in zip(beta, mu))


def reflect(cartan: CartanData, s: int, mu: Weight) -> Weight:
    a = mu[s - 1]
    if not a:
        return tuple(mu)
    root = cartan.simple_root(s)
    return tuple(m - a * r for m, r in zip(mu, root))


def weyl_act(cartan: CartanData, word: Sequence[int], mu: Weight) -> Weight:
    """r_{s_1} ... r_{s_l} applied to mu (rightmost letter acts first)."""
    mu = tuple(mu)
    for s in reversed(tuple(word)):
        mu = reflect(cartan, s, mu)
    return mu


def coreflect(cartan: CartanData, s: int, beta: Coweight) -> Coweight:
    """r_s(beta) = beta - <beta, alpha_s> alpha_s^vee."""
    k = pairing(beta, cartan.simple_root(s))
    if not k:
        return tuple(beta)
    out = list(beta)
    out[s - 1] -= k
    return tuple(out)


def coweyl_act(cartan: CartanData, word: Sequence[int], beta: Coweight) -> Coweight:
    beta = tuple(beta)
    for s in reversed(tuple(word)):
        beta = coreflect(cartan, s, beta)
    return beta


def positive_part(lam: Weight) -> Weight:
    return tuple(max(0, a) for a in lam)


def star_weight(cartan: CartanData, lam: Weight) -> Weight:
    out = [0] * cartan.rank
    for s in cartan.letters:
        out[cartan.star(s) - 1] = lam[s - 1]
    return tuple(out)


class WeylGroup:
    """Brute-force enumeration; elements keyed by their image of rho."""

    def __init__(self, cartan: CartanData):
        self.cartan = cartan
        rho = (1,) * cartan.rank
        self.rho = rho
        words = {rho: ()}
        frontier = [rho]
        while frontier:
            nxt = []
            for mu in frontier:
                for s in cartan.letters:
                    # left multiplication: r_s w
                    img = reflect(cartan, s, mu)
                    if img not in words:
                        words[img] = (s,) + words[mu]
                        nxt.append(img)
            frontier = nxt
            if len(words) > 100000:
                raise RuntimeError("Weyl group too large for enumeration")
        self._words = words

    def __len__(self):
        return len(self._words)

    def key(self, word: Sequence[int]):
        return weyl_act(self.cartan, word, self.rho)

    def length(self, word: Sequence[int]) -> int:
        return len(self._words[self.key(word)])

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(word) == len(word)

    def elements(self):
        """A reduced word for every element, shortest first."""
        return sorted(self._words.values(), key=lambda w: (len(w), w))

    def reduced_word(self, word: Sequence[int]) -> tuple:
        return self._words[self.key(word)]

    @cached_property
    def longest_word(self) -> tuple:
        return max(self._words.values(), key=len)

    @property
    def longest_length(self) -> int:
        return len(self.longest_word)

    def is_w0(self, word: Sequence[int]) -> bool:
        return self.key(word) == self.key(self.longest_word)

    def reduced_words_of(self, word: Sequence[int]) -> list:
        """All reduced words of the element represented by ``word``."""
        target = self.key(word)
        n = self.length(word)
        out = []

        def extend(prefix, key_len):
            if len(prefix) == n:
                if self.key(prefix) == target:
                    out.append(tuple(prefix))
                return
            for s in self.cartan.letters:
                w = prefix + [s]
                if self.length(w) == len(w):
                    extend(w, key_len + 1)

        extend([], 0)
        return out


def require_w0_word(cartan: CartanData, word: Sequence[int]) -> tuple:
    word = tuple(word)
    W = cartan.weyl
    if any(s not in cartan.letters for s in word):
        raise ValueError(f"letter out of range in {word}")
    if not W.is_reduced(word) or not W.is_w0(word):
        raise NotReduced(f"{word} is not a reduced word of w0 in type {cartan.type_label}")
    return word


@dataclass(frozen=True)
class CorootEntry:
    coords: Coweight
    simple: int | None  # t when the entry equals alpha_t^vee


def coroot_sequence(cartan: CartanData, word: Sequence[int]) -> list:
    """beta_j = r_{s_N} ... r_{s_{j+1}} (alpha_{s_j}^vee) for a reduced word of w0."""
    word = require_w0_word(cartan, word)
    out = []
    for j, s in enumerate(word):
        beta = coweyl_act(cartan, tuple(reversed(word[j + 1:])), cartan.simple_coroot(s))
        simple = None
        if sum(beta) == 1 and all(b >= 0 for b in beta):
            simple = beta.index(1) + 1
        out.append(CorootEntry(beta, simple))
    return out


def positive_coroots(cartan: CartanData) -> set:
    """Brute force: Weyl orbits of simple coroots, keeping positive ones."""
    found = set()
    for w in cartan.weyl.elements():
        for s in cartan.letters:
            b = coweyl_act(cartan, w, cartan.simple_coroot(s))
            if all(x >= 0 for x in b):
                found.add(b)
    return found


# ---------------------------------------------------------------------------
# Double words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DoubleWord:
    letters: tuple  # of (s, barred)

    @classmethod
    def parse(cls, text: str) -> "DoubleWord":
        letters = []
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            barred = part.endswith("*")
            s = int(part.rstrip("*"))
            letters.append((s, barred))
        return cls(tuple(letters))

    @classmethod
    def from_words(cls, top: Sequence[int], bottom: Sequence[int]) -> "DoubleWord":
        """Barred subword first, then unbarred."""
        return cls(tuple((s, True) for s in top) + tuple((s, False) for s in bottom))

    def __str__(self):
        return ",".join(f"{s}*" if b else str(s) for s, b in self.letters)


def split_double_word(w: DoubleWord, cartan: CartanData | None = None):
    """(barred subword s^top, unbarred subword s_bottom)."""
    top = tuple(s for s, b in w.letters if b)
    bottom = tuple(s for s, b in w.letters if not b)
    if cartan is not None:
        require_w0_word(cartan, top)
        require_w0_word(cartan, bottom)
    return top, bottom


def parse_word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))
