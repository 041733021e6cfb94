"""Marked surfaces, triangulation counts, figure quivers, amalgamation and flips."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .cluster import MutationSequence, Seed
from .liecore import CartanData, DoubleWord, cartan_type, require_w0_word


class Unsupported(NotImplementedError):
    pass


class SurfaceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Surfaces and counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedSurface:
    genus: int
    boundaries: tuple  # marked points on each boundary component

    def __post_init__(self):
        object.__setattr__(self, "boundaries", tuple(int(x) for x in self.boundaries))
        if self.genus < 0:
            raise SurfaceError("genus must be >= 0")
        if not self.boundaries:
            raise SurfaceError("need at least one boundary component")
        if any(x < 1 for x in self.boundaries):
            raise SurfaceError("every boundary component needs a marked point")
        if self.genus == 0 and len(self.boundaries) == 1 and self.boundaries[0] < 3:
            raise SurfaceError("a disk needs at least three marked points")
        if self.n_edges_bound() <= 0:
            raise SurfaceError("surface admits no ideal triangulation")

    @property
    def b(self) -> int:
        return len(self.boundaries)

    @property
    def marked(self) -> int:
        return sum(self.boundaries)

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.b

    def n_edges_bound(self) -> int:
        """-3 chi + 2 |M|."""
        return -3 * self.euler + 2 * self.marked

    @classmethod
    def from_json(cls, data: Mapping) -> "MarkedSurface":
        return cls(int(data["genus"]), tuple(data["boundaries"]))

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundaries": list(self.boundaries)}


def counts(surface: MarkedSurface) -> tuple:
    """(|t(T)|, |e(T)|) for any ideal triangulation."""
    g, b, M = surface.genus, surface.b, surface.marked
    return 4 * g - 4 + 2 * b + M, 6 * g - 6 + 3 * b + 2 * M


def _cartan(c) -> CartanData:
    if isinstance(c, CartanData):
        return c
    label = str(c).upper()
    if label.startswith("SL"):
        return cartan_type(f"A{int(label[2:]) - 1}")
    if label == "SP4":
        return cartan_type("C2")
    return cartan_type(label)


def seed_sizes(surface: MarkedSurface, cartan) -> tuple:
    """(n, m) with n = r|e| + (l - r)|t| and n - m = b r."""
    cd = _cartan(cartan)
    r, l = cd.rank, cd.weyl.longest_length
    t, e = counts(surface)
    n = r * e + (l - r) * t
    return n, n - surface.b * r


def boundary_frozen(surface: MarkedSurface, cartan) -> int:
    """r |M|: frozen vertices carried by boundary edges in an amalgamated seed."""
    return _cartan(cartan).rank * surface.marked


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealTriangulation:
    """Triangles as ccw triples of edge ids; an id used twice is an internal edge."""

    triangles: tuple

    def __post_init__(self):
        tris = tuple(tuple(t) for t in self.triangles)
        object.__setattr__(self, "triangles", tris)
        if any(len(t) != 3 for t in tris):
            raise SurfaceError("triangles need three sides")
        for e, uses in self.sides_of().items():
            if len(uses) > 2:
                raise SurfaceError(f"edge {e!r} is used by {len(uses)} triangle sides")

    def sides_of(self) -> dict:
        out: dict = {}
        for ti, tri in enumerate(self.triangles):
            for si, e in enumerate(tri):
                out.setdefault(e, []).append((ti, si))
        return out

    def gluing(self) -> dict:
        """Involution on triangle sides (boundary sides map to themselves)."""
        out = {}
        for uses in self.sides_of().values():
            if len(uses) == 2:
                out[uses[0]], out[uses[1]] = uses[1], uses[0]
            else:
                out[uses[0]] = uses[0]
        return out

    @property
    def edges(self) -> list:
        return list(self.sides_of())

    def internal_edges(self) -> list:
        return [e for e, u in self.sides_of().items() if len(u) == 2]

    def boundary_edges(self) -> list:
        return [e for e, u in self.sides_of().items() if len(u) == 1]

    def check_counts(self, surface: MarkedSurface) -> bool:
        t, e = counts(surface)
        return len(self.triangles) == t and len(self.edges) == e and len(self.boundary_edges()) == surface.marked

    @classmethod
    def from_json(cls, data) -> "IdealTriangulation":
        return cls(tuple(tuple(t) for t in data["triangles"]))


def polygon_fan(k: int) -> IdealTriangulation:
    """Fan triangulation of a disk with k marked points from vertex 0."""
    if k < 3:
        raise SurfaceError("a polygon needs three vertices")
    tris = []
    for i in range(1, k - 1):
        a = f"b{i - 1}" if i == 1 else f"d{i}"
        c = f"b{k - 1}" if i == k - 2 else f"d{i + 1}"
        tris.append((a, f"b{i}", c))
    return IdealTriangulation(tuple(tris))


@dataclass(frozen=True)
class DecoratedTriangulation:
    """corners[t] = index of the side leaving the distinguished vertex v_T."""

    base: IdealTriangulation
    corners: tuple
    words: tuple | None = None

    def validate(self, cartan) -> None:
        cd = _cartan(cartan)
        t = len(self.base.triangles)
        if len(self.corners) != t or (self.words is not None and len(self.words) != t):
            raise SurfaceError("one corner and one word per triangle")
        if any(c not in (0, 1, 2) for c in self.corners):
            raise SurfaceError("corner index must be 0, 1 or 2")
        for w in self.words or ():
            require_w0_word(cd, w)


def quad_triangulation(cartan=None) -> DecoratedTriangulation:
    """The quadrilateral split by one diagonal, distinguished vertices on the diagonal."""
    base = IdealTriangulation((("top", "left", "diag"), ("bottom", "right", "diag")))
    words = None
    if cartan is not None:
        w = _cartan(cartan).weyl.longest_word
        words = (w, w)
    return DecoratedTriangulation(base, (0, 0), words)


# ---------------------------------------------------------------------------
# Minor labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinorLabel:
    """Delta_s(A^k, A_l) on the chains of (top, bottom), or a frozen A_in^s / A_out^s."""

    kind: str
    s: int
    k: int | None = None
    l: int | None = None

    def __str__(self):
        if self.kind == "D":
            return f"D{self.s}(A^{self.k},A_{self.l})"
        return f"A_{self.kind}^{self.s}"

    def evaluate(self, config, top: Sequence[int], bottom: Sequence[int]):
        from .confwilson import delta_pair, frozen_invariants

        if self.kind == "D":
            return delta_pair(config.model, self.s, config.upper_chain(top)[self.k], config.lower_chain(bottom)[self.l])
        a_in, a_out = frozen_invariants(config)
        return (a_in if self.kind == "in" else a_out)[self.s]


def D(s, k, l) -> MinorLabel:
    return MinorLabel("D", s, k, l)


def lattice_labels(word: DoubleWord, N: int) -> dict:
    """{(s, j): label}: row s holds the start point and the point after each occurrence of s.

    The walk starts at (k, l) = (0, N); barred letters raise k, unbarred letters lower l.
    """
    k, l = 0, N
    rows = {s: [(k, l)] for s, _ in word.letters}
    for s, barred in word.letters:
        if barred:
            k += 1
        else:
            l -= 1
        rows[s].append((k, l))
    return {(s, j): D(s, kk, ll) for s, pts in rows.items() for j, (kk, ll) in enumerate(pts)}


# ---------------------------------------------------------------------------
# Figure quivers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FigureQuiver:
    name: str
    vertices: tuple
    epsilon: tuple  # full n x n, rationals
    m: int
    symmetrizer: tuple  # per vertex; eps D is skew-symmetric
    model: str
    top: tuple
    bottom: tuple
    labels: tuple | None = None  # MinorLabel per vertex

    def seed(self) -> Seed:
        return Seed.initial(self.epsilon, self.m, self.vertices, self.symmetrizer)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        """1-based index of a vertex name."""
        return self.vertices.index(v) + 1

    def label_of(self, v: str) -> MinorLabel:
        if self.labels is None:
            raise Unsupported(f"{self.name} carries no vertex labels")
        return self.labels[self.vertices.index(v)]


def _build(vertices, m, arrows, half="", types=None, extra=None):
    """Assemble eps from arrow lists.

    arrows/half: "a>b" strings (weight 1 or 1/2).  With types, an arrow between
    a type-1 vertex i and a type-2 vertex j has |eps_ij| = 1, |eps_ji| = 2.
    extra: {vertex: {other: value}} set on both sides skew-symmetrically.
    """
    ix = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    eps = [[Fraction(0)] * n for _ in range(n)]
    d = [1] * n if types is None else [types[v] for v in vertices]

    def put(a, b, w):
        i, j = ix[a], ix[b]
        # eps_ij d_j = -eps_ji d_i; the type-2 side carries the larger magnitude
        eps[i][j] += w * Fraction(max(d[i], d[j]), d[j]) if d[i] != d[j] else w
        eps[j][i] -= w * Fraction(max(d[i], d[j]), d[i]) if d[i] != d[j] else w

    for spec, w in [(a, Fraction(1)) for a in arrows.split()] + [(a, Fraction(1, 2)) for a in half.split()]:
        a, b = spec.split(">")
        put(a, b, w)
    for v, row in (extra or {}).items():
        for u, x in row.items():
            i, j = ix[v], ix[u]
            eps[i][j] += x
            eps[j][i] -= Fraction(x) * d[j] / d[i]
    return tuple(tuple(x for x in r) for r in eps), tuple(d)


_A1_V = ("x11", "x10", "x12", "in1", "out1")
_A1_LABELS = {"x10": D(1, 0, 1), "x12": D(1, 1, 0), "in1": MinorLabel("in", 1), "out1": MinorLabel("out", 1)}

_A2_V = ("x11", "x12", "x13", "x21", "x10", "x14", "x20", "x22", "in1", "in2", "out1", "out2")
_A2_FROZEN = {f"{k}{s}": MinorLabel(k, s) for k in ("in", "out") for s in (1, 2)}
_A2_L12 = {"x10": D(1, 0, 3), "x20": D(2, 1, 3), "x11": D(1, 2, 3), "x13": D(1, 3, 1), "x14": D(1, 3, 0),
           "x22": D(2, 3, 0)}
_A2_L34 = {"x10": D(1, 0, 3), "x20": D(2, 0, 2), "x11": D(1, 0, 1), "x13": D(1, 2, 0), "x14": D(1, 3, 0),
           "x22": D(2, 3, 0)}
_A2_DATA = {
    1: ("x11>x10 x12>x11 x12>x13 x13>x14 x21>x20 x21>x22 x20>x11 x11>x21 x22>x13 x13>x21 x21>x12",
        "x10>x20 x14>x22",
        {"x11": {"out1": 1, "out2": -1}, "x12": {"in1": -1, "out1": -1}, "x13": {"in1": 1, "in2": -1}},
        dict(_A2_L12, x12=D(1, 3, 3), x21=D(2, 2, 3))),
    2: ("x11>x10 x11>x12 x13>x12 x13>x14 x21>x20 x21>x22 x20>x11 x22>x13 x12>x21",
        "x10>x20 x14>x22",
        {"x11": {"in1": -1, "out2": -1}, "x12": {"in1": 1, "out1": 1}, "x13": {"in2": -1, "out1": -1}},
        dict(_A2_L12, x12=D(1, 2, 2), x21=D(2, 2, 2))),
    3: ("x10>x11 x12>x11 x12>x13 x14>x13 x20>x21 x22>x21 x11>x20 x13>x22 x21>x12",
        "x20>x10 x22>x14",
        {"x11": {"in1": 1, "out2": 1}, "x12": {"in2": -1, "out2": -1}, "x13": {"in2": 1, "out1": 1}},
        dict(_A2_L34, x12=D(1, 2, 2), x21=D(2, 1, 1))),
    4: ("x10>x11 x11>x12 x13>x12 x14>x13 x20>x21 x22>x21 x11>x20 x13>x22 x12>x21 x21>x11 x21>x13",
        "x20>x10 x22>x14",
        {"x11": {"in1": 1, "in2": -1}, "x12": {"in2": 1, "out2": 1}, "x13": {"out1": 1, "out2": -1}},
        dict(_A2_L34, x12=D(1, 0, 0), x21=D(2, 1, 0))),
}

_C2_V = ("v11", "v12", "v13", "v21", "v22", "v23", "v10", "v14", "v20", "v24", "yl", "yr", "zl", "zr")
_C2_TYPES = {v: (1 if v[0] == "y" or v[1] == "1" else 2) for v in _C2_V}
_C2_WORD = DoubleWord.parse("1*,2*,1*,2*,2,1,2,1")
# as drawn; half arrows are the dashed ones
_C2_FIGURE = (
    "v11>v10 v12>v11 v12>v13 v13>v14 v10>yl yl>v11 v13>yr yr>v12 "
    "v21>v20 v22>v21 v22>v23 v23>v24 v21>zl zl>v22 v24>zr zr>v23 "
    "v20>v11 v21>v12 v14>v23 v13>v22 v11>v21 v23>v13",
    "v10>v20 v24>v14 zl>yl yr>zr",
)
# exchange rows fitted to the chain minors of the lattice labels below
_C2_MINORS = {
    "v11": {"v12": -1, "v21": 1, "v10": 1, "v20": -1, "yl": -1},
    "v12": {"v11": 1, "v13": 1, "v21": -1, "v22": 1, "v23": -1},
    "v13": {"v12": -1, "v23": 1, "v14": 1, "v24": -1, "yr": -1},
    "v21": {"v11": -2, "v12": 2, "v22": -1, "v20": 1, "zl": 1},
    "v22": {"v12": -2, "v21": 1, "v23": 1, "zr": -1, "zl": -1},
    "v23": {"v12": 2, "v13": -2, "v22": -1, "v24": 1, "zr": 1},
}
# boundary half arrows: left half as drawn, right half by the quad's rotation symmetry
_C2_MINORS_HALF = "v10>v20 zl>yl v14>v24 zr>yr"


def _c2_labels():
    lat = lattice_labels(_C2_WORD, 4)
    out = []
    for v in _C2_V:
        if v[0] == "v":
            out.append(lat[(int(v[1]), int(v[2]))])
        else:
            out.append(MinorLabel("out" if v[1] == "l" else "in", 1 if v[0] == "y" else 2))
    return tuple(out)


def _rows_matrix(vertices, m, rows, types, half=""):
    """Full matrix from exchange rows; frozen rows filled by skew-symmetrizability.

    ``half`` adds weight-1/2 arrows between frozen vertices.
    """
    ix = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    d = [types[v] for v in vertices]
    eps = [[Fraction(0)] * n for _ in range(n)]
    for v, row in rows.items():
        for u, x in row.items():
            eps[ix[v]][ix[u]] = Fraction(x)
    for i in range(m):
        for j in range(m, n):
            eps[j][i] = -eps[i][j] * d[j] / d[i]
    for spec in half.split():
        a, b = (ix[v] for v in spec.split(">"))
        top = Fraction(max(d[a], d[b]))
        eps[a][b] += Fraction(1, 2) * top / d[b]
        eps[b][a] -= Fraction(1, 2) * top / d[a]
    return tuple(tuple(r) for r in eps), tuple(d)


FIGURE_NAMES = ("A1-quad-left", "A1-quad-right", "A2-quad-1", "A2-quad-2", "A2-quad-3", "A2-quad-4",
                "C2-quad", "C2-quad-minors")


@lru_cache(maxsize=None)
def figure_quiver(name: str) -> FigureQuiver:
    if name in ("A1-quad-left", "A1-quad-right"):
        left = name.endswith("left")
        arrows = ("x11>x12 x12>in1 in1>x11 x11>x10 x10>out1 out1>x11" if left
                  else "x12>x11 in1>x10 x11>in1 x10>x11 out1>x12 x11>out1")
        eps, d = _build(_A1_V, 1, arrows)
        labels = dict(_A1_LABELS, x11=D(1, 1, 1) if left else D(1, 0, 0))
        return FigureQuiver(name, _A1_V, eps, 1, d, "SL2", (1,), (1,), tuple(labels[v] for v in _A1_V))
    if name.startswith("A2-quad-") and name[-1] in "1234":
        arrows, half, extra, labels = _A2_DATA[int(name[-1])]
        eps, d = _build(_A2_V, 4, arrows, half, extra=extra)
        labels = dict(_A2_FROZEN, **labels)
        return FigureQuiver(name, _A2_V, eps, 4, d, "SL3", (1, 2, 1), (1, 2, 1), tuple(labels[v] for v in _A2_V))
    if name == "C2-quad":
        eps, d = _build(_C2_V, 6, _C2_FIGURE[0], _C2_FIGURE[1], types=_C2_TYPES)
        return FigureQuiver(name, _C2_V, eps, 6, d, "SP4", (1, 2, 1, 2), (1, 2, 1, 2), None)
    if name == "C2-quad-minors":
        eps, d = _rows_matrix(_C2_V, 6, _C2_MINORS, _C2_TYPES, _C2_MINORS_HALF)
        return FigureQuiver(name, _C2_V, eps, 6, d, "SP4", (1, 2, 1, 2), (1, 2, 1, 2), _c2_labels())
    raise KeyError(f"unknown figure quiver {name!r}; known: {', '.join(FIGURE_NAMES)}")


def c2_double_word() -> DoubleWord:
    return _C2_WORD


# ---------------------------------------------------------------------------
# Flips
# ---------------------------------------------------------------------------

_FLIPS = {
    "A1": ("A1-quad-left", (("x11",),)),
    "A2": ("A2-quad-1", (("x12",), ("x11", "x21", "x13"), ("x12",))),
}


def flip_steps(cartan) -> tuple:
    """Vertex names per step (mutations inside a step commute)."""
    key = _cartan(cartan).type_label
    if key not in _FLIPS:
        raise Unsupported(f"no flip sequence recorded for type {key}")
    return _FLIPS[key][1]


def flip_sequence(cartan, quad_name: str | None = None) -> MutationSequence:
    """1-based indices in the initial quadrilateral seed of the given type."""
    key = _cartan(cartan).type_label
    if key == "C2":
        raise Unsupported("the C2 flip sequence is not recorded")
    if key not in _FLIPS:
        raise Unsupported(f"no flip sequence recorded for type {key}")
    name, steps = _FLIPS[key]
    if quad_name is not None and quad_name != name:
        raise Unsupported(f"flip sequences start from {name}")
    q = figure_quiver(name)
    return MutationSequence(tuple(q.index(v) for step in steps for v in step))


# ---------------------------------------------------------------------------
# Triangle templates and amalgamation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangleTemplate:
    """sides[0] leaves the distinguished vertex; sides in ccw order; side lists indexed by s."""

    type_label: str
    interior: tuple
    sides: tuple
    vertices: tuple
    epsilon: tuple
    symmetrizer: tuple

    def entry(self, a: str, b: str) -> Fraction:
        return self.epsilon[self.vertices.index(a)][self.vertices.index(b)]


# (quad, interior, E, I, D) for the upper triangle and its lower partner
_CUTS = {
    "A1": ("A1-quad-left", ((), ("x12",), ("in1",), ("x11",)), ((), ("x10",), ("out1",), ("x11",))),
    "A2": ("A2-quad-1", (("x13",), ("x14", "x22"), ("in1", "in2"), ("x12", "x21")),
           (("x11",), ("x10", "x20"), ("out1", "out2"), ("x12", "x21"))),
    "C2": ("C2-quad-minors", (("v13", "v23"), ("v14", "v24"), ("yr", "zr"), ("v12", "v22")),
           (("v11", "v21"), ("v10", "v20"), ("yl", "zl"), ("v12", "v22"))),
}


def cut_template(quiver: FigureQuiver, interior, e_side, i_side, d_side, type_label: str) -> TriangleTemplate:
    """Restrict the quad quiver to one triangle, halving entries within the diagonal."""
    verts = tuple(interior) + tuple(e_side) + tuple(i_side) + tuple(d_side)
    pos = [quiver.vertices.index(v) for v in verts]
    diag = set(d_side)
    eps = []
    for a, i in zip(verts, pos):
        row = []
        for b, j in zip(verts, pos):
            x = Fraction(quiver.epsilon[i][j])
            row.append(x / 2 if a in diag and b in diag else x)
        eps.append(tuple(row))
    sym = tuple(quiver.symmetrizer[i] for i in pos)
    return TriangleTemplate(type_label, tuple(interior), (tuple(e_side), tuple(i_side), tuple(d_side)),
                            verts, tuple(eps), sym)


def triangle_template(cartan, lower: bool = False) -> TriangleTemplate:
    key = _cartan(cartan).type_label
    if key not in _CUTS:
        raise Unsupported(f"no triangle data for type {key}")
    name, upper, low = _CUTS[key]
    return cut_template(figure_quiver(name), *(low if lower else upper), type_label=key)


def amalgamate(triangulation, cartan, templates: Sequence[TriangleTemplate] | TriangleTemplate | None = None) -> Seed:
    """Glue triangle templates along shared edges; side vertices are identified by rank index."""
    if isinstance(triangulation, DecoratedTriangulation):
        base, corners = triangulation.base, triangulation.corners
    else:
        base, corners = triangulation, (0,) * len(triangulation.triangles)
    cd = _cartan(cartan)
    if templates is None:
        templates = triangle_template(cd)
    if isinstance(templates, TriangleTemplate):
        templates = [templates] * len(base.triangles)
    if len(templates) != len(base.triangles):
        raise SurfaceError("one template per triangle")
    r = cd.rank
    sides = base.sides_of()
    interior_names = []
    for ti, tpl in enumerate(templates):
        if any(len(side) != r for side in tpl.sides):
            raise SurfaceError("template sides must carry rank-many vertices")
        interior_names += [f"T{ti}.{v}" for v in tpl.interior]
    internal = [e for e in sides if len(sides[e]) == 2]
    boundary = [e for e in sides if len(sides[e]) == 1]
    names = interior_names + [f"{e}.{s}" for e in internal for s in range(1, r + 1)]
    m = len(names)
    names += [f"{e}.{s}" for e in boundary for s in range(1, r + 1)]
    ix = {v: i for i, v in enumerate(names)}
    n = len(names)
    eps = [[Fraction(0)] * n for _ in range(n)]
    sym = [None] * n
    for ti, (tri, tpl) in enumerate(zip(base.triangles, templates)):
        c = corners[ti]
        rot = tri[c:] + tri[:c]
        where = {v: f"T{ti}.{v}" for v in tpl.interior}
        for side_edge, side_verts in zip(rot, tpl.sides):
            for s, v in enumerate(side_verts, start=1):
                where[v] = f"{side_edge}.{s}"
        for a in tpl.vertices:
            ga = ix[where[a]]
            da = tpl.symmetrizer[tpl.vertices.index(a)]
            if sym[ga] is not None and sym[ga] != da:
                raise SurfaceError("incompatible edge matching: symmetrizer mismatch")
            sym[ga] = da
            for b in tpl.vertices:
                eps[ga][ix[where[b]]] += tpl.entry(a, b)
    for i in range(m):
        for j in range(n):
            if eps[i][j].denominator != 1:
                raise SurfaceError(f"incompatible edge matching: half-integral exchange entry at {names[i]}")
    return Seed.initial(tuple(tuple(r_) for r_ in eps), m, names, tuple(sym))


def relabel_map(quad_seed_names: Sequence[str], cartan) -> dict:
    """Name map from the amalgamated quad seed to the figure quad quiver."""
    key = _cartan(cartan).type_label
    _, upper, lower = _CUTS[key]
    out = {}
    for tri, cut, edges in ((0, upper, ("top", "left", "diag")), (1, lower, ("bottom", "right", "diag"))):
        interior, e_side, i_side, d_side = cut
        for tv, v in zip(upper[0], interior):
            out[f"T{tri}.{tv}"] = v
        for edge, side in zip(edges, (e_side, i_side, d_side)):
            for s, v in enumerate(side, start=1):
                out[f"{edge}.{s}"] = v
    return {k: out[k] for k in quad_seed_names}


# ---------------------------------------------------------------------------
# Double-word moves and numeric evaluation of figure seeds
# ---------------------------------------------------------------------------

def barred_right_moves(word: DoubleWord) -> list:
    """Move every barred letter past the unbarred ones by adjacent swaps.

    Returns (s, j, word_after) for each swap of a barred s with an unbarred s;
    only those change the seed (a mutation at row-s vertex j).  Swaps of distinct
    letters commute in the cell and leave all lattice values unchanged.
    """
    letters = list(word.letters)
    out = []
    while True:
        pos = next((i for i in range(len(letters) - 1) if letters[i][1] and not letters[i + 1][1]), None)
        if pos is None:
            return out
        a, b = letters[pos], letters[pos + 1]
        letters[pos], letters[pos + 1] = b, a
        if a[0] == b[0]:
            j = 1 + sum(1 for s, _ in letters[:pos] if s == a[0])
            out.append((a[0], j, DoubleWord(tuple(letters))))


def label_values(quiver: FigureQuiver, config) -> list:
    """Evaluate every vertex label of the quiver at a QuadConfig."""
    if quiver.labels is None:
        raise Unsupported(f"{quiver.name} carries no vertex labels")
    return [lab.evaluate(config, quiver.top, quiver.bottom) for lab in quiver.labels]


def c2_swap_sequence() -> tuple:
    """(MutationSequence on C2-quad-minors, final lattice labels) for barred_right_moves."""
    q = figure_quiver("C2-quad-minors")
    moves = barred_right_moves(_C2_WORD)
    seq = MutationSequence(tuple(q.index(f"v{s}{j}") for s, j, _ in moves))
    final = lattice_labels(moves[-1][2], 4)
    labels = []
    for v, lab in zip(q.vertices, q.labels):
        labels.append(final[(int(v[1]), int(v[2]))] if v[0] == "v" else lab)
    return seq, tuple(labels)
