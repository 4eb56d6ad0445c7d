"""Lattice quotients of periodic arrangements: toric facets, cells, layers.

A toric arrangement is given by integer characters a (hypersurfaces
a.x in Z on V) and a lattice L with a.L in Z. Everything is computed on a
finite piece of the periodic arrangement and then reduced modulo L:
bounded facets are keyed by the fractional lattice coordinates of their
barycenters, Salvetti cells [C < F] by the chamber key plus the offset
between the barycenters of F and C.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import floor, gcd
from typing import Sequence

from .arrangement import (
    Character, Facet, FacePoset, Parallelepiped, enumerate_faces, hyperplanes_meeting_region, salvetti_chamber,
)
from .exactmath import IntMatrix, determinant, dot, inverse, matvec, rank_q, rref, smith_normal_form
from .homology import ChainComplex


class UnboundedChambers(ValueError):
    pass


class RegionTooSmall(ValueError):
    pass


class NotThick(ValueError):
    pass


class Lattice:
    """Full-rank lattice with the given basis vectors (columns)."""

    def __init__(self, basis: Sequence[Sequence]):
        cols = tuple(tuple(Fraction(x) for x in b) for b in basis)
        n = len(cols)
        if n == 0 or any(len(c) != n for c in cols):
            raise ValueError("lattice basis must be n vectors of length n")
        self.basis = cols
        self.matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        if determinant(self.matrix) == 0:
            raise ValueError("lattice basis is singular")
        self.inv = inverse(self.matrix)

    @classmethod
    def scaled_identity(cls, n: int, k=1) -> "Lattice":
        return cls([[Fraction(k) if i == j else 0 for i in range(n)] for j in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def covolume(self) -> Fraction:
        return abs(Fraction(determinant(self.matrix)))

    def coords(self, x: Sequence) -> tuple:
        return matvec(self.inv, x)

    def point(self, u: Sequence) -> tuple:
        return matvec(self.matrix, u)

    def check_characters(self, characters: Sequence[Character]) -> None:
        for chi in characters:
            if chi.dim != self.dim:
                raise ValueError(f"character {chi.vector} has dimension {chi.dim}, lattice has {self.dim}")
            for b in self.basis:
                if dot(chi.vector, b).denominator != 1:
                    raise ValueError(f"character {chi.vector} is not integral on the lattice vector {list(map(str, b))}")

    def as_json(self) -> list:
        return [[str(v) for v in b] for b in self.basis]


def _frac(u: Sequence) -> tuple:
    return tuple(v - floor(v) for v in u)


def extent(characters: Sequence[Character], lattice: Lattice) -> tuple:
    """Bound, in lattice coordinates, on the width of any bounded facet.

    Every facet lies in one cell {c_i <= a_i.x <= c_i + 1} of the subfamily
    of any n independent characters; the width of such a cell along lattice
    coordinate k is sum_j |(L^-1 A^-1)_kj|.
    """
    n = lattice.dim
    best = None
    for subset in combinations([c.vector for c in characters], n):
        if rank_q(subset) < n:
            continue
        m = inverse(subset)
        w = [[sum(lattice.inv[k][i] * m[i][j] for i in range(n)) for j in range(n)] for k in range(n)]
        e = tuple(sum(abs(v) for v in row) for row in w)
        best = e if best is None else tuple(min(a, b) for a, b in zip(best, e))
    if best is None:
        raise UnboundedChambers("unbounded chamber; unsupported (characters do not span)")
    return best


# --- local types of central arrangements ---------------------------------------

def _component_name(rank: int, count: int) -> str:
    if count == rank * (rank + 1) // 2:
        return f"A{rank}"
    if rank == 2 and count == 6:
        return "G2"
    if rank == 4 and count == 24:
        return "F4"
    if count == rank * rank:
        return f"B{rank}"
    if rank >= 4 and count == rank * (rank - 1):
        return f"D{rank}"
    return f"?{rank}:{count}"


def central_type(vectors: Sequence[Sequence[int]]) -> str:
    """Type label of a central arrangement, e.g. 'B2' or 'A1xA1'.

    Hyperplanes are split into irreducible components by circuits; each
    component is named by its rank and number of hyperplanes.
    """
    dirs = sorted({Character(tuple(v)).primitive for v in vectors})
    if not dirs:
        return "A0"
    h = len(dirs)
    r = rank_q(dirs)
    parent = list(range(h))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for size in range(3, r + 2):
        for S in combinations(range(h), size):
            if rank_q([dirs[i] for i in S]) != size - 1:
                continue
            if all(rank_q([dirs[i] for i in S if i != x]) == size - 1 for x in S):
                for i in S[1:]:
                    parent[find(i)] = find(S[0])
    comps: dict = {}
    for i in range(h):
        comps.setdefault(find(i), []).append(dirs[i])
    names = [_component_name(rank_q(c), len(c)) for c in comps.values()]
    return "x".join(sorted(names, key=lambda s: (s[0], s)))


# --- result types -----------------------------------------------------------------

@dataclass
class TorusFacet:
    index: int
    rep: Facet
    key: tuple
    dim: int

    def label(self) -> str:
        return f"F{self.dim}.{self.index}"


@dataclass
class ToricCell:
    index: int
    dim: int
    chamber_key: tuple
    offset: tuple
    rep: tuple[int, int]
    pair: tuple[int, int] | None = None


@dataclass
class ThicknessVerdict:
    thick: bool
    chamber: Facet | None = None
    pair: tuple[Facet, Facet] | None = None

    def __bool__(self):
        return self.thick


@dataclass
class Layer:
    index: int
    dim: int
    key: tuple
    facets: list[int]
    characters: list[tuple[int, ...]]
    local_type: str


@dataclass
class ToricBoundary:
    cells: list[ToricCell]
    incidence: dict[int, Counter] = field(default_factory=dict)
    thick: bool = False

    def faces_of(self, cell: ToricCell) -> Counter:
        return self.incidence.get(cell.index, Counter())

    def mod2_complex(self) -> ChainComplex:
        if not self.thick:
            raise NotThick("mod-2 boundary refused: the arrangement is not thick, so cells are not pairs [C < F]")
        return _mod2_complex(self.cells, self.incidence)


def _mod2_complex(cells, incidence) -> ChainComplex:
    top = max(c.dim for c in cells)
    by_dim = [[c for c in cells if c.dim == k] for k in range(top + 1)]
    pos = {c.index: i for cs in by_dim for i, c in enumerate(cs)}
    bds = [None]
    for k in range(1, top + 1):
        m = IntMatrix(len(by_dim[k - 1]), len(by_dim[k]))
        for j, c in enumerate(by_dim[k]):
            for lower, mult in incidence.get(c.index, {}).items():
                m.data[pos[lower]][j] = mult % 2
        bds.append(m)
    return ChainComplex(by_dim, bds, modulus=2)


# --- the quotient ------------------------------------------------------------------

class ToricArrangement:
    """Periodic arrangement of ``characters`` modulo ``lattice``.

    The fundamental domain is origin + L[0,1)^n; faces are enumerated on it
    expanded by twice the facet extent, which holds every lift needed for
    cells and their boundaries.
    """

    def __init__(self, characters: Sequence, lattice: Lattice, origin: Sequence | None = None,
                 poset: FacePoset | None = None):
        chars = sorted({c if isinstance(c, Character) else Character(tuple(c)) for c in characters})
        if not chars:
            raise ValueError("empty X")
        lattice.check_characters(chars)
        n = lattice.dim
        if rank_q([c.vector for c in chars]) < n:
            raise UnboundedChambers("unbounded chamber; unsupported")
        self.characters = chars
        self.lattice = lattice
        self.dim = n
        self.origin = tuple(Fraction(x) for x in (origin if origin is not None else (0,) * n))
        self.extent = extent(chars, lattice)
        self.fundamental = Parallelepiped(self.origin, lattice.basis, (Fraction(0),) * n, (Fraction(1),) * n)
        self.region = self.fundamental.expanded([2 * e for e in self.extent])
        needed = hyperplanes_meeting_region(chars, self.region)
        if poset is None:
            poset = enumerate_faces(needed, n, characters=chars)
            poset.region = self.region
        elif poset.dim != n or not set(needed) <= set(poset.hyperplanes):
            raise RegionTooSmall("region too small: the poset must cover the fundamental domain plus its margin")
        self.poset = poset

    # lifts

    def lattice_coords(self, x: Sequence) -> tuple:
        return self.lattice.coords([a - b for a, b in zip(x, self.origin)])

    def key_of_point(self, x: Sequence) -> tuple:
        return _frac(self.lattice_coords(x))

    @cached_property
    def _true(self) -> list[bool]:
        P = self.poset
        ok = []
        for F in P:
            ok.append(P.is_bounded(F) and all(self.region.contains(v.witness) for v in P.vertices(F)))
        return ok

    def is_true(self, F: Facet) -> bool:
        """F is bounded and its closure lies inside the enumerated region."""
        return self._true[F.index]

    @cached_property
    def _bary(self) -> dict:
        return {F.index: self.poset.barycenter(F) for F in self.poset if self._true[F.index]}

    def barycenter(self, F: Facet) -> tuple:
        return self._bary[F.index]

    def key(self, F: Facet) -> tuple:
        if not self._true[F.index]:
            raise RegionTooSmall(f"{F!r} is not fully inside the enumerated region")
        return self.key_of_point(self._bary[F.index])

    # facets

    @cached_property
    def facets(self) -> list[TorusFacet]:
        reps = []
        for F in self.poset:
            if self._true[F.index]:
                u = self.lattice_coords(self._bary[F.index])
                if all(0 <= v < 1 for v in u):
                    reps.append((F.dim, u, F))
        reps.sort(key=lambda t: (t[0], t[1]))
        return [TorusFacet(i, F, u, d) for i, (d, u, F) in enumerate(reps)]

    @cached_property
    def _facet_index(self) -> dict:
        return {tf.key: tf.index for tf in self.facets}

    def facet_of(self, F: Facet) -> TorusFacet:
        return self.facets[self._facet_index[self.key(F)]]

    def facet_counts(self) -> list[int]:
        c = Counter(tf.dim for tf in self.facets)
        return [c[d] for d in range(self.dim + 1)]

    def chambers(self) -> list[TorusFacet]:
        return [tf for tf in self.facets if tf.dim == self.dim]

    def covers(self) -> list[tuple[int, int, int]]:
        """(upper, lower, multiplicity) over toric facets one dimension apart."""
        out = []
        for tf in self.facets:
            c = Counter(self._facet_index[self.key(self.poset.facets[j])] for j in self.poset.below[tf.rep.index])
            out.extend((tf.index, lo, m) for lo, m in sorted(c.items()))
        return out

    def facet_complex(self) -> ChainComplex:
        """Mod-2 cellular chains of the real torus stratified by toric facets."""
        if not self.is_thick():
            raise NotThick("mod-2 facet complex refused: the arrangement is not thick")
        inc: dict = {}
        for up, lo, m in self.covers():
            inc.setdefault(up, Counter())[lo] += m
        return _mod2_complex(self.facets, inc)

    # thickness

    @cached_property
    def _thickness(self) -> ThicknessVerdict:
        for tf in self.chambers():
            seen = {}
            for F in self.poset.closure(tf.rep):
                k = self.key(F)
                if k in seen:
                    return ThicknessVerdict(False, tf.rep, (seen[k], F))
                seen[k] = F
        return ThicknessVerdict(True)

    def is_thick(self) -> ThicknessVerdict:
        """Closure test: no two facets in the closure of a chamber are translates."""
        return self._thickness

    # cells

    def _cell_key(self, C: Facet, F: Facet) -> tuple:
        bc, bf = self._bary[C.index], self._bary[F.index]
        return self.key(C), tuple(a - b for a, b in zip(bf, bc))

    @cached_property
    def cells(self) -> list[ToricCell]:
        """One cell per lattice orbit of affine cells [C < F], C inside the region."""
        orbits = {}
        for C in self.poset.chambers():
            if not self._true[C.index]:
                continue
            for F in self.poset.closure(C):
                orbits.setdefault(self._cell_key(C, F), None)
        reps = {}
        for tf in self.chambers():
            for F in self.poset.closure(tf.rep):
                reps[self._cell_key(tf.rep, F)] = (tf.rep.index, F.index)
        if set(reps) != set(orbits):
            raise RegionTooSmall("cell orbits seen from the fundamental domain differ from the region census")
        items = sorted(reps.items(), key=lambda kv: (self.dim - self.poset.facets[kv[1][1]].dim, kv[0]))
        cells = []
        for i, ((ck, off), (ci, fi)) in enumerate(items):
            F = self.poset.facets[fi]
            cells.append(ToricCell(i, self.dim - F.dim, ck, off, (ci, fi)))
        return cells

    @cached_property
    def _cell_index(self) -> dict:
        return {(c.chamber_key, c.offset): c.index for c in self.cells}

    def pair_injective(self) -> bool:
        """Orbit test: the map from cell orbits to (chamber orbit, facet orbit) is injective."""
        pairs = set()
        for c in self.cells:
            C, F = (self.poset.facets[i] for i in c.rep)
            pairs.add((self.key(C), self.key(F)))
        return len(pairs) == len(self.cells)

    def toric_cells(self) -> list[ToricCell]:
        cells = self.cells
        if self.is_thick():
            if not self.pair_injective():
                raise AssertionError("thick arrangement with a non-injective cell -> pair map")
            for c in cells:
                C, F = (self.poset.facets[i] for i in c.rep)
                c.pair = (self._facet_index[self.key(C)], self._facet_index[self.key(F)])
        return cells

    def cell_counts(self) -> list[int]:
        c = Counter(cell.dim for cell in self.cells)
        return [c[k] for k in range(self.dim + 1)]

    def boundary(self) -> ToricBoundary:
        """Unsigned incidence: [C' < F] lies in the boundary of [D < G] for F above G."""
        P = self.poset
        out = ToricBoundary(self.toric_cells(), thick=bool(self.is_thick()))
        for cell in self.cells:
            if cell.dim == 0:
                continue
            D, G = (P.facets[i] for i in cell.rep)
            cnt = Counter()
            for j in P.above[G.index]:
                F = P.facets[j]
                C = salvetti_chamber(P, F, D)
                if not self._true[C.index]:
                    raise RegionTooSmall(f"boundary lift {C!r} leaves the enumerated region")
                cnt[self._cell_index[self._cell_key(C, F)]] += 1
            out.incidence[cell.index] = cnt
        return out

    # layers

    def _flat_key(self, F: Facet) -> tuple:
        zeros = [h.normal for h, s in zip(self.poset.hyperplanes, F.signs) if s == 0]
        return self.flat_key(zeros, F.hull_point)

    def flat_key(self, zeros: Sequence, point: Sequence) -> tuple:
        """Canonical form of the flat through ``point`` with normals ``zeros``, modulo the lattice.

        The direction is the primitive integer row echelon form N; the offset
        N.p is reduced modulo N.L via a Smith form of N.L.
        """
        if not zeros:
            return (), ()
        N = []
        for row in rref(zeros, self.dim)[0]:
            den = 1
            for v in row:
                den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
            ints = [int(v * den) for v in row]
            g = 0
            for v in ints:
                g = gcd(g, v)
            N.append(tuple(v // g for v in ints))
        y = [dot(r, point) for r in N]
        M = [[dot(r, b) for b in self.lattice.basis] for r in N]
        s = 1
        for v in (x for r in M for x in r):
            d = Fraction(v).denominator
            s = s * d // gcd(s, d)
        snf = smith_normal_form(IntMatrix.from_rows([[int(x * s) for x in r] for r in M]))
        z = matvec(snf.U.tolist(), [v * s for v in y])
        diag = snf.D.diagonal()
        red = tuple(Fraction(zi) % diag[i] if diag[i] else Fraction(zi) for i, zi in enumerate(z))
        return tuple(N), red

    @cached_property
    def layers(self) -> list[Layer]:
        groups: dict = {}
        for tf in self.facets:
            groups.setdefault(self._flat_key(tf.rep), []).append(tf)
        out = []
        for key, tfs in groups.items():
            F = tfs[0].rep
            local = [c.vector for c in self.characters
                     if all(dot(c.vector, b) == 0 for b in F.hull_basis)
                     and dot(c.vector, F.hull_point).denominator == 1]
            out.append((F.dim, key, [t.index for t in tfs], local))
        out.sort(key=lambda t: (t[0], min(t[2])))
        return [Layer(i, d, k, idx, loc, central_type(loc)) for i, (d, k, idx, loc) in enumerate(out)]

    @cached_property
    def _layer_index(self) -> dict:
        return {L.key: L.index for L in self.layers}

    def layer_of_hyperplane(self, h) -> Layer:
        point = tuple(Fraction(0) for _ in range(self.dim))
        k = next(i for i, v in enumerate(h.normal) if v)
        point = point[:k] + (h.level / h.normal[k],) + point[k + 1:]
        return self.layers[self._layer_index[self.flat_key([h.normal], point)]]

    def layer_census(self, dim: int = 0) -> Counter:
        return Counter(L.local_type for L in self.layers if L.dim == dim)

    def summary(self) -> dict:
        verdict = self.is_thick()
        out = {
            "rank": self.dim,
            "characters": [list(c.vector) for c in self.characters],
            "lattice": self.lattice.as_json(),
            "facets": self.facet_counts(),
            "cells": self.cell_counts(),
            "thick": verdict.thick,
            "layers": [{"dim": L.dim, "facets": len(L.facets), "local_type": L.local_type}
                       for L in self.layers],
        }
        if not verdict.thick:
            out["witness"] = {
                "chamber": _fmt_facet(verdict.chamber, self),
                "facets": [_fmt_facet(f, self) for f in verdict.pair],
            }
        return out


def _fmt_facet(F: Facet, arr: ToricArrangement) -> dict:
    return {"dim": F.dim, "barycenter": [str(v) for v in arr.barycenter(F)]}


# --- functional interface ----------------------------------------------------------

def _arr(poset: FacePoset, lattice: Lattice, origin=None) -> ToricArrangement:
    if not poset.characters:
        raise ValueError("poset carries no characters; build it with hyperplanes_meeting_region")
    if origin is None and poset.region is not None:
        origin = poset.region.origin
    return ToricArrangement(poset.characters, lattice, origin, poset=poset)


def quotient_facets(poset: FacePoset, lattice: Lattice) -> list[TorusFacet]:
    return _arr(poset, lattice).facets


def is_thick(poset: FacePoset, lattice: Lattice) -> ThicknessVerdict:
    return _arr(poset, lattice).is_thick()


def toric_cells(poset: FacePoset, lattice: Lattice) -> list[ToricCell]:
    return _arr(poset, lattice).toric_cells()


def layers(poset: FacePoset, lattice: Lattice) -> list[Layer]:
    return _arr(poset, lattice).layers


def toric_boundary(arr: ToricArrangement) -> ToricBoundary:
    return arr.boundary()


# --- Weyl inputs --------------------------------------------------------------------

def weyl_arrangement(kind: str, rank: int, lattice: str = "coroot", origin=None) -> ToricArrangement:
    """Positive roots of the given type on V / coroot lattice or V / coweight lattice."""
    from .coxeter import root_datum, _check_type
    d = root_datum(_check_type(kind, rank), rank)
    if lattice == "coroot":
        L = Lattice(d.coroot_lattice)
    elif lattice == "coweight":
        L = Lattice(d.coweight_lattice)
    else:
        raise ValueError(f"unknown lattice kind {lattice!r}; use coroot or coweight")
    return ToricArrangement([Character(r) for r in d.positive_roots], L, origin)


def expected_vertex_types(kind: str, rank: int) -> Counter:
    """Vertex census of the Weyl toric arrangement on V / coroot lattice.

    Vertex i of the alcove has stabilizer W_{S - s_i}; its orbit splits into
    |W| / |W_{S - s_i}| points of the torus.
    """
    from .coxeter import build_affine_system, coxeter_type_label, enumerate_parabolic
    _, gens = build_affine_system(kind, rank)
    m = gens.coxeter_matrix()
    order = len(gens.finite_group)
    out = Counter()
    for i in range(len(gens)):
        rest = [j for j in range(len(gens)) if j != i]
        out[coxeter_type_label(m, rest)] += order // len(enumerate_parabolic(gens, rest))
    return out
