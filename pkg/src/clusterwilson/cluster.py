"""Seeds, mutation, Laurent membership and the A-to-X monomial map.

Vertex indices in this module's public functions are 1-based, matching the
usual cluster notation; the first m indices are mutable.  ``epsilon`` may hold
only the m exchange rows or all n rows (frozen rows are then mutated too, which
keeps arrows between frozen vertices for export and gluing).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .exactalg import LaurentPoly, NotDivisible, laurent_exact_div, parse_rational_expr, rank, rat, rat_str


class MutationError(ValueError):
    pass


Matrix = tuple  # tuple of tuples of rationals


def _as_matrix(eps) -> Matrix:
    return tuple(tuple(rat(x) for x in row) for row in eps)


def mutate_matrix(epsilon, k: int, m: int | None = None) -> Matrix:
    """Matrix mutation at the 1-based mutable index k."""
    eps = _as_matrix(epsilon)
    rows = len(eps)
    if m is None:
        m = rows
    if not 1 <= k <= min(m, rows):
        raise MutationError(f"index {k} is frozen or out of range")
    k -= 1
    out = []
    for i, row in enumerate(eps):
        new = []
        for j, e in enumerate(row):
            if i == k or j == k:
                new.append(-e)
            else:
                a, b = eps[i][k], eps[k][j]
                if a * b > 0:
                    new.append(rat(e + abs(a) * b))
                else:
                    new.append(e)
        out.append(tuple(new))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    n: int
    m: int
    epsilon: Matrix
    labels: tuple
    variables: tuple  # LaurentPoly in the ambient initial cluster
    path: tuple = ()  # mutation indices applied from the ambient seed
    symmetrizer: tuple | None = None

    def __post_init__(self):
        eps = _as_matrix(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "path", tuple(self.path))
        if not 0 <= self.m <= self.n:
            raise ValueError("need 0 <= m <= n")
        if len(eps) not in (self.m, self.n) or any(len(r) != self.n for r in eps):
            raise ValueError("epsilon must be m x n or n x n")
        if any(Fraction(eps[i][j]).denominator != 1 for i in range(self.m) for j in range(self.n)):
            raise ValueError("exchange rows must be integral")
        if len(self.labels) != self.n or len(self.variables) != self.n:
            raise ValueError("need n labels and n variables")
        if any(v.is_zero() for v in self.variables):
            raise ValueError("variables must be nonzero")

    @classmethod
    def initial(cls, epsilon, m: int, labels: Sequence[str] | None = None, symmetrizer=None) -> "Seed":
        eps = _as_matrix(epsilon)
        n = len(eps[0])
        labels = tuple(labels) if labels is not None else tuple(f"A{i + 1}" for i in range(n))
        variables = tuple(LaurentPoly.var(n, i) for i in range(n))
        return cls(n, m, eps, labels, variables, (), symmetrizer)

    @property
    def exchange(self) -> Matrix:
        """The m x n exchange matrix proper."""
        return self.epsilon[: self.m]

    @property
    def ambient_names(self) -> list:
        return [f"A{i + 1}" for i in range(self.n)]

    def is_initial(self) -> bool:
        return all(v == LaurentPoly.var(self.n, i) for i, v in enumerate(self.variables))

    # serialization
    def to_json(self) -> dict:
        data = {
            "n": self.n,
            "m": self.m,
            "epsilon": [[_num_json(x) for x in row] for row in self.epsilon],
            "labels": list(self.labels),
            "variables": [v.to_str() for v in self.variables],
        }
        if self.path:
            data["path"] = list(self.path)
        if self.symmetrizer is not None:
            data["symmetrizer"] = list(self.symmetrizer)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        for key in ("n", "m", "epsilon", "labels", "variables"):
            if key not in data:
                raise ValueError(f"seed JSON lacks {key!r}")
        n = int(data["n"])
        eps = [[Fraction(str(x)) for x in row] for row in data["epsilon"]]
        variables = [LaurentPoly.parse(t, nvars=n) for t in data["variables"]]
        return cls(n, int(data["m"]), eps, data["labels"], variables, tuple(data.get("path", ())),
                   tuple(data["symmetrizer"]) if data.get("symmetrizer") else None)


def _num_json(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else rat_str(x)


def exchange_monomials(seed: Seed, k: int):
    """(prod_{eps_kj > 0} A_j^{eps_kj}, prod_{eps_kj < 0} A_j^{-eps_kj}) in ambient variables."""
    row = seed.epsilon[k - 1]
    one = LaurentPoly.const(seed.n, 1)
    pos, neg = one, one
    for j, e in enumerate(row):
        e = int(e)
        if e > 0:
            pos = pos * seed.variables[j] ** e
        elif e < 0:
            neg = neg * seed.variables[j] ** (-e)
    return pos, neg


def mutate_seed(seed: Seed, k: int) -> Seed:
    if not 1 <= k <= seed.m:
        raise MutationError(f"index {k} is frozen or out of range")
    pos, neg = exchange_monomials(seed, k)
    try:
        new_var = laurent_exact_div(pos + neg, seed.variables[k - 1])
    except NotDivisible as exc:  # the exchange binomial always divides
        raise MutationError("exchange binomial not divisible; seed data is inconsistent") from exc
    variables = list(seed.variables)
    variables[k - 1] = new_var
    path = seed.path
    if path and path[-1] == k:
        path = path[:-1]
    else:
        path = path + (k,)
    return Seed(seed.n, seed.m, mutate_matrix(seed.epsilon, k, seed.m), seed.labels, variables, path, seed.symmetrizer)


def mutate_sequence(seed: Seed, sequence: Sequence[int]) -> Seed:
    for k in sequence:
        seed = mutate_seed(seed, k)
    return seed


def x_from_a(seed: Seed, i: int) -> LaurentPoly:
    """prod_j A_j^{eps_ij} as a monomial in the seed's own cluster variables."""
    if not 1 <= i <= seed.m:
        raise MutationError(f"index {i} is not mutable")
    return LaurentPoly.monomial([int(e) for e in seed.epsilon[i - 1]])


def x_from_a_ambient(seed: Seed, i: int) -> LaurentPoly | tuple:
    """The same monomial with the seed's variables substituted (ambient cluster)."""
    num, den = x_from_a(seed, i).substitute(list(seed.variables))
    return laurent_exact_div(num, den) if den.is_monomial() else (num, den)


def rank_check(epsilon, m: int | None = None) -> bool:
    eps = _as_matrix(epsilon)
    if m is None:
        m = len(eps)
    return rank(eps[:m]) == m


def is_skew_symmetrizable(epsilon, symmetrizer: Sequence[int], m: int | None = None) -> bool:
    """eps_ij d_j = -eps_ji d_i on the leading m x m block (eps D skew-symmetric)."""
    eps = _as_matrix(epsilon)
    if m is None:
        m = len(eps)
    d = list(symmetrizer)
    if any(x <= 0 for x in d[:m]):
        return False
    return all(eps[i][j] * d[j] == -eps[j][i] * d[i] for i in range(m) for j in range(m))


def skew_symmetrizer(epsilon, m: int | None = None) -> tuple | None:
    """Smallest positive integer d with eps D skew-symmetric on the mutable block, or None."""
    eps = _as_matrix(epsilon)
    if m is None:
        m = len(eps)
    d = [None] * m
    for start in range(m):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            if eps[i][i]:
                return None
            for j in range(m):
                a, b = eps[i][j], eps[j][i]
                if i == j or (a == 0 and b == 0):
                    continue
                if a == 0 or b == 0 or a * b > 0:
                    return None
                dj = d[i] * Fraction(-b) / Fraction(a)
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    return None
    den = lcm(*[x.denominator for x in d]) if d else 1
    ints = [int(x * den) for x in d]
    g = reduce(gcd, ints) if ints else 1
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class MutationSequence:
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(k) for k in self.indices))

    @classmethod
    def parse(cls, text: str) -> "MutationSequence":
        text = text.strip()
        return cls(tuple(int(x) for x in text.split(",")) if text else ())

    def validate(self, m: int) -> None:
        bad = [k for k in self.indices if not 1 <= k <= m]
        if bad:
            raise MutationError(f"indices {bad} are not mutable (m = {m})")

    def apply(self, seed: "Seed") -> "Seed":
        self.validate(seed.m)
        return mutate_sequence(seed, self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def export_quiver_dot(seed: Seed, name: str = "quiver") -> str:
    """Deterministic DOT text; frozen vertices boxed, multiplicities as edge labels.

    One edge per unordered pair; the label is |eps_ij| when the pair is
    skew-symmetric and "|eps_ij|,|eps_ji|" otherwise.
    """
    eps = seed.epsilon
    rows = len(eps)

    def entry(i, j):
        if i < rows:
            return Fraction(eps[i][j])
        if j < rows:
            return -Fraction(eps[j][i])
        return Fraction(0)

    def q(text):
        return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{", "  node [shape=circle];"]
    for i, lab in enumerate(seed.labels):
        lines.append(f"  {q(lab)}" + (" [shape=box];" if i >= seed.m else ";"))
    for i in range(seed.n):
        for j in range(i + 1, seed.n):
            a, b = entry(i, j), entry(j, i)
            if a == 0 and b == 0:
                continue
            src, dst = (i, j) if a > 0 or (a == 0 and b < 0) else (j, i)
            fwd, back = (a, b) if src == i else (b, a)
            label = rat_str(abs(fwd)) if abs(fwd) == abs(back) else f"{rat_str(abs(fwd))},{rat_str(abs(back))}"
            lines.append(f"  {q(seed.labels[src])} -> {q(seed.labels[dst])} [label={q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Laurent membership
# ---------------------------------------------------------------------------

def ambient_in_cluster(seed: Seed) -> tuple:
    """Ambient initial variables written as Laurent polynomials in ``seed``'s cluster."""
    if seed.is_initial():
        return tuple(LaurentPoly.var(seed.n, i) for i in range(seed.n))
    if not seed.path:
        raise ValueError("seed has no recorded mutation path back to its ambient cluster")
    back = Seed.initial(seed.epsilon, seed.m, seed.labels)
    back = mutate_sequence(back, reversed(seed.path))
    return back.variables


def as_rational(f, n: int):
    """Accept a LaurentPoly, a (num, den) pair, or an expression string."""
    if isinstance(f, LaurentPoly):
        return f, LaurentPoly.const(f.nvars, 1)
    if isinstance(f, str):
        return parse_rational_expr(f, nvars=n)
    num, den = f
    return num, den


def is_laurent_in_cluster(f, seed: Seed, names: Sequence[str] | None = None) -> bool:
    """True iff f (a rational function of the ambient variables) lies in the
    Laurent ring of ``seed``'s cluster."""
    if isinstance(f, str) and names is not None:
        num, den = parse_rational_expr(f, names=names)
    else:
        num, den = as_rational(f, seed.n)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    images = ambient_in_cluster(seed)
    n1, d1 = num.substitute(images)
    n2, d2 = den.substitute(images)
    try:
        laurent_exact_div(n1 * d2, n2 * d1)
    except NotDivisible:
        return False
    return True


def upper_bound_member(f, seed: Seed, names: Sequence[str] | None = None) -> bool:
    if not is_laurent_in_cluster(f, seed, names):
        return False
    return all(is_laurent_in_cluster(f, mutate_seed(seed, k), names) for k in range(1, seed.m + 1))


def cluster_variables_closure(seed: Seed, max_seeds: int = 10000) -> set:
    """All cluster variables reachable by mutation (stops at max_seeds seeds)."""
    seen_seeds = set()
    variables = set()
    todo = [seed]
    while todo:
        s = todo.pop()
        key = frozenset(s.variables[: s.m])
        if key in seen_seeds:
            continue
        seen_seeds.add(key)
        if len(seen_seeds) > max_seeds:
            raise RuntimeError("mutation class exceeds the exploration budget")
        variables.update(s.variables[: s.m])
        for k in range(1, s.m + 1):
            todo.append(mutate_seed(s, k))
    return variables
