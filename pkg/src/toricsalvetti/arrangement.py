"""Exact face enumeration for finite pieces of periodic affine arrangements.

Faces are sign vectors over an ordered list of hyperplanes. Enumeration is
recursive on the dimension: the faces lying in a hyperplane H are the faces
of the arrangement restricted to H, and every chamber is found by stepping
off one of its walls. Unbounded faces are kept and flagged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, floor, gcd, lcm
from typing import Sequence

from .exactmath import LinearSystem, dot, feasible, inverse, matvec, rank_q, solve_affine


@dataclass(frozen=True, order=True)
class Character:
    """Integer vector a; its hypersurface lifts to the hyperplanes a.x = c, c in Z."""

    vector: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.vector)
        lead = next((x for x in v if x), 0)
        if lead == 0:
            raise ValueError("the zero vector is not a character")
        if lead < 0:
            v = tuple(-x for x in v)
        object.__setattr__(self, "vector", v)

    @property
    def dim(self) -> int:
        return len(self.vector)

    @property
    def divisibility(self) -> int:
        g = 0
        for x in self.vector:
            g = gcd(g, x)
        return g

    @property
    def primitive(self) -> tuple[int, ...]:
        g = self.divisibility
        return tuple(x // g for x in self.vector)


@dataclass(frozen=True, order=True)
class PeriodicHyperplane:
    """{x : normal . x = level} with a primitive, sign-normalized normal."""

    normal: tuple[int, ...]
    level: Fraction

    @classmethod
    def from_character(cls, chi: Character, c: int) -> "PeriodicHyperplane":
        g = chi.divisibility
        return cls(chi.primitive, Fraction(c, g))

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.level

    def sign(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Parallelepiped:
    """Closed region origin + basis @ [lo_k, hi_k]^n (basis vectors are columns)."""

    origin: tuple
    basis: tuple[tuple, ...]
    lo: tuple
    hi: tuple

    @classmethod
    def unit(cls, basis, origin=None) -> "Parallelepiped":
        n = len(basis)
        origin = tuple(Fraction(x) for x in (origin or (0,) * n))
        return cls(origin, tuple(tuple(Fraction(x) for x in b) for b in basis),
                   (Fraction(0),) * n, (Fraction(1),) * n)

    @classmethod
    def interval(cls, a, b) -> "Parallelepiped":
        return cls((Fraction(0),), ((Fraction(1),),), (Fraction(a),), (Fraction(b),))

    def expanded(self, margins: Sequence) -> "Parallelepiped":
        return Parallelepiped(self.origin, self.basis,
                              tuple(l - m for l, m in zip(self.lo, margins)),
                              tuple(h + m for h, m in zip(self.hi, margins)))

    @property
    def dim(self) -> int:
        return len(self.origin)

    @cached_property
    def _inv(self):
        cols = self.basis
        n = self.dim
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        return inverse(mat)

    def coords(self, x: Sequence) -> tuple:
        """Coordinates of x relative to origin in the basis."""
        return matvec(self._inv, [Fraction(a) - b for a, b in zip(x, self.origin)])

    def point(self, u: Sequence) -> tuple:
        n = self.dim
        return tuple(self.origin[i] + sum(Fraction(u[k]) * self.basis[k][i] for k in range(n)) for i in range(n))

    def contains(self, x: Sequence) -> bool:
        u = self.coords(x)
        return all(l <= v <= h for v, l, h in zip(u, self.lo, self.hi))

    def corners(self):
        for pick in product((0, 1), repeat=self.dim):
            yield self.point([self.hi[k] if p else self.lo[k] for k, p in enumerate(pick)])

    def constraints(self) -> list:
        """Nonstrict rows (a, c) meaning a.x <= c."""
        rows = []
        for k in range(self.dim):
            r = tuple(self._inv[k])
            shift = dot(r, self.origin)
            rows.append((r, self.hi[k] + shift))
            rows.append((tuple(-v for v in r), -(self.lo[k] + shift)))
        return rows


def hyperplanes_meeting_region(characters: Sequence, region: Parallelepiped) -> list[PeriodicHyperplane]:
    """Integer-level translates a.x = c of each character meeting the closed region."""
    if not characters:
        raise ValueError("empty X")
    if any(h <= l for l, h in zip(region.lo, region.hi)) or rank_q([list(b) for b in region.basis]) < region.dim:
        raise ValueError("degenerate region")
    out = set()
    for chi in characters:
        chi = chi if isinstance(chi, Character) else Character(tuple(chi))
        if chi.dim != region.dim:
            raise ValueError(f"character {chi.vector} has dimension {chi.dim}, region has {region.dim}")
        values = [dot(chi.vector, x) for x in region.corners()]
        for c in range(ceil(min(values)), floor(max(values)) + 1):
            out.add(PeriodicHyperplane.from_character(chi, c))
    return sorted(out)


# --- faces ---------------------------------------------------------------------

def _normalize(a, c):
    lead = next(x for x in a if x != 0)
    return tuple(x / lead for x in a), c / lead


def _face_witnesses(hyps: list, d: int) -> dict:
    """Map sign vector -> witness for every face of the arrangement in Q^d.

    ``hyps`` are pairwise distinct (a, c) with a nonzero.
    """
    if not hyps:
        return {(): tuple(Fraction(0) for _ in range(d))}
    faces: dict = {}
    if d == 1:
        return _line_witnesses(hyps)

    signs = _sign_oracle(hyps)

    for i, (a, c) in enumerate(hyps):
        p, basis = solve_affine([a], [c], d)
        sub = {}
        for j, (b, e) in enumerate(hyps):
            if j == i:
                continue
            bb = tuple(dot(b, v) for v in basis)
            if any(bb):
                key = _normalize(bb, e - dot(b, p))
                sub.setdefault(key, None)
        for t in _face_witnesses(list(sub), d - 1).values():
            x = tuple(p[k] + sum((t[r] * basis[r][k] for r in range(len(basis))), Fraction(0)) for k in range(d))
            faces.setdefault(signs(x), x)

    for sv, x in list(faces.items()):
        zeros = [i for i, s in enumerate(sv) if s == 0]
        if len(zeros) != 1:
            continue
        i = zeros[0]
        a = hyps[i][0]
        eps = None
        for j, (b, e) in enumerate(hyps):
            if j == i:
                continue
            slope = dot(b, a)
            if slope:
                bound = abs(dot(b, x) - e) / abs(slope)
                eps = bound if eps is None else min(eps, bound)
        eps = Fraction(1) if eps is None else eps / 2
        for s in (1, -1):
            y = tuple(xk + s * eps * ak for xk, ak in zip(x, a))
            faces.setdefault(sv[:i] + (s,) + sv[i + 1:], y)
    return faces


def _sign_oracle(hyps: list):
    """Sign vector of a rational point, evaluated in integer arithmetic."""
    forms = []
    for a, c in hyps:
        q = lcm(*(Fraction(v).denominator for v in a), Fraction(c).denominator)
        forms.append((tuple(int(v * q) for v in a), int(c * q)))

    def signs(x):
        den = lcm(*(Fraction(v).denominator for v in x)) if x else 1
        xs = [int(v * den) for v in x]
        out = []
        for a, c in forms:
            v = sum(ai * xi for ai, xi in zip(a, xs)) - c * den
            out.append((v > 0) - (v < 0))
        return tuple(out)

    return signs


def _line_witnesses(hyps: list) -> dict:
    # points c/a on a line: sorted points, the gaps between them and two rays
    pts = sorted({c / a[0] for a, c in hyps})
    samples = [pts[0] - 1]
    for i, p in enumerate(pts):
        samples.append(p)
        samples.append((p + pts[i + 1]) / 2 if i + 1 < len(pts) else p + 1)
    signs = _sign_oracle(hyps)
    out = {}
    for x in samples:
        out.setdefault(signs((x,)), (x,))
    return out


@dataclass(eq=False)
class Facet:
    index: int
    signs: tuple[int, ...]
    dim: int
    witness: tuple
    hull_point: tuple
    hull_basis: tuple

    def __repr__(self):
        s = "".join("+" if v > 0 else "-" if v < 0 else "0" for v in self.signs)
        return f"Facet({self.index}, dim={self.dim}, {s})"

    @property
    def is_chamber(self) -> bool:
        return 0 not in self.signs


class FacePoset:
    """All faces of a finite affine arrangement with the closure order.

    ``below[i]`` lists the faces of dimension dim-1 in the closure of face i;
    ``above[i]`` is the converse relation.
    """

    def __init__(self, hyperplanes: Sequence[PeriodicHyperplane], dim: int, region: Parallelepiped | None = None,
                 characters: Sequence[Character] = ()):
        self.hyperplanes = list(hyperplanes)
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("hyperplane list is not deduplicated")
        self.dim = dim
        self.region = region
        self.characters = list(characters)
        raw = [(tuple(Fraction(v) for v in h.normal), h.level) for h in self.hyperplanes]
        found = _face_witnesses(raw, dim)
        hulls = {}
        facets = []
        for idx, sv in enumerate(sorted(found)):
            zeros = tuple(i for i, s in enumerate(sv) if s == 0)
            if zeros not in hulls:
                p, basis = solve_affine([raw[i][0] for i in zeros], [raw[i][1] for i in zeros], dim)
                hulls[zeros] = (p, tuple(basis))
            p, basis = hulls[zeros]
            facets.append(Facet(idx, sv, len(basis), found[sv], p, basis))
        self.facets = facets
        self._index = {f.signs: f.index for f in facets}
        self._raw = raw
        self._build_order()

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def lookup(self, signs) -> Facet | None:
        i = self._index.get(tuple(signs))
        return None if i is None else self.facets[i]

    def by_dim(self, d: int) -> list[Facet]:
        return [f for f in self.facets if f.dim == d]

    def chambers(self) -> list[Facet]:
        return self.by_dim(self.dim)

    def f_vector(self) -> list[int]:
        return [len(self.by_dim(d)) for d in range(self.dim + 1)]

    def _build_order(self):
        below = [[] for _ in self.facets]
        above = [[] for _ in self.facets]
        cache = {}
        for F in self.facets:
            if F.dim == 0:
                continue
            zeros = tuple(i for i, s in enumerate(F.signs) if s == 0)
            if zeros not in cache:
                # hyperplanes grouped by the hyperplane they cut out in the hull of F
                groups = {}
                for j, (a, c) in enumerate(self._raw):
                    if F.signs[j] == 0:
                        continue
                    t = tuple(dot(a, v) for v in F.hull_basis)
                    if any(t):
                        groups.setdefault(_normalize(t, c - dot(a, F.hull_point)), []).append(j)
                cache[zeros] = list(groups.values())
            for members in cache[zeros]:
                sv = list(F.signs)
                for j in members:
                    sv[j] = 0
                G = self.lookup(sv)
                if G is not None:
                    below[F.index].append(G.index)
                    above[G.index].append(F.index)
        self.below = [sorted(b) for b in below]
        self.above = [sorted(a) for a in above]

    def _check(self, *facets):
        for f in facets:
            if f.index >= len(self.facets) or self.facets[f.index] is not f:
                raise ValueError(f"{f!r} does not belong to this poset")

    def closure_leq(self, F: Facet, G: Facet) -> bool:
        """F precedes G, i.e. G lies in the closure of F."""
        self._check(F, G)
        if any(g != 0 and g != f for f, g in zip(F.signs, G.signs)):
            return False
        return self.in_closure(G.witness, F)

    def in_closure(self, x: Sequence, F: Facet) -> bool:
        for (a, c), s in zip(self._raw, F.signs):
            v = dot(a, x) - c
            if (s == 0 and v != 0) or s * v < 0:
                return False
        return True

    def closure(self, F: Facet) -> list[Facet]:
        """F together with every face in its closure."""
        seen = {F.index}
        stack = [F.index]
        while stack:
            for j in self.below[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return [self.facets[i] for i in sorted(seen)]

    @cached_property
    def _vertices(self) -> list[frozenset]:
        out: list = [None] * len(self.facets)
        for F in sorted(self.facets, key=lambda f: f.dim):
            if F.dim == 0:
                out[F.index] = frozenset([F.index])
            else:
                out[F.index] = frozenset().union(*(out[j] for j in self.below[F.index]))
        return out

    def vertices(self, F: Facet) -> list[Facet]:
        return [self.facets[i] for i in sorted(self._vertices[F.index])]

    @cached_property
    def _bounded(self) -> list[bool]:
        out = [False] * len(self.facets)
        for F in sorted(self.facets, key=lambda f: f.dim):
            b = self.below[F.index]
            if F.dim == 0:
                out[F.index] = True
            elif F.dim == 1:
                out[F.index] = len(b) == 2
            else:
                out[F.index] = bool(b) and all(out[j] for j in b)
        return out

    def is_bounded(self, F: Facet) -> bool:
        return self._bounded[F.index]

    def barycenter(self, F: Facet) -> tuple:
        """Average of the closure vertices; lies in the relative interior."""
        if not self.is_bounded(F):
            raise ValueError(f"{F!r} is unbounded")
        vs = self.vertices(F)
        return tuple(sum((v.witness[k] for v in vs), Fraction(0)) / len(vs) for k in range(self.dim))

    def closure_system(self, F: Facet) -> LinearSystem:
        """Closure of F as a linear system, using only its supporting hyperplanes."""
        sysm = LinearSystem(self.dim)
        bounding = set()
        for j in self.below[F.index]:
            G = self.facets[j]
            bounding.update(i for i, (s, t) in enumerate(zip(F.signs, G.signs)) if s != 0 and t == 0)
        for i, s in enumerate(F.signs):
            a, c = self._raw[i]
            if s == 0:
                sysm.equalities.append((a, c))
            elif i in bounding:
                sysm.nonstrict.append((a, c) if s < 0 else (tuple(-x for x in a), -c))
        return sysm

    def restrict(self, region: Parallelepiped) -> list[Facet]:
        """Faces whose closure meets the closed region."""
        out = []
        extra = region.constraints()
        for F in self.facets:
            sysm = self.closure_system(F)
            sysm.nonstrict.extend(extra)
            if feasible(sysm) is not None:
                out.append(F)
        return out


def enumerate_faces(hyperplanes: Sequence[PeriodicHyperplane], dim: int | None = None,
                    region: Parallelepiped | None = None, characters: Sequence = ()) -> FacePoset:
    """Face poset of the arrangement; with a region, ``restricted`` lists the faces meeting it."""
    if dim is None:
        if region is not None:
            dim = region.dim
        elif hyperplanes:
            dim = len(hyperplanes[0].normal)
        else:
            raise ValueError("dimension unknown for an empty arrangement")
    poset = FacePoset(hyperplanes, dim, region, characters)
    if region is not None:
        poset.restricted = poset.restrict(region)
    return poset


def closure_leq(F: Facet, G: Facet, poset: FacePoset) -> bool:
    return poset.closure_leq(F, G)


# --- affine Salvetti cells ---------------------------------------------------------

@dataclass(frozen=True)
class SalvettiCell:
    chamber: int
    facet: int
    dim: int


@dataclass
class AffineSalvetti:
    poset: FacePoset
    cells: list[SalvettiCell]
    boundary: dict = field(default_factory=dict)

    def cells_of_dim(self, k: int) -> list[SalvettiCell]:
        return [c for c in self.cells if c.dim == k]

    def counts(self) -> list[int]:
        return [len(self.cells_of_dim(k)) for k in range(self.poset.dim + 1)]


def salvetti_chamber(poset: FacePoset, F: Facet, D: Facet) -> Facet:
    """The chamber adjacent to F on the same side as D of every hyperplane through F."""
    sv = tuple(f if f != 0 else d for f, d in zip(F.signs, D.signs))
    C = poset.lookup(sv)
    if C is None:
        raise LookupError(f"no chamber with signs {sv}")
    return C


def salvetti_boundary(poset: FacePoset, cell: SalvettiCell) -> list[SalvettiCell]:
    """Cells of dimension k-1 in the boundary of a k-cell [D < G]."""
    D = poset.facets[cell.chamber]
    G = poset.facets[cell.facet]
    out = []
    for j in poset.above[G.index]:
        F = poset.facets[j]
        C = salvetti_chamber(poset, F, D)
        out.append(SalvettiCell(C.index, F.index, cell.dim - 1))
    return out


def affine_salvetti(poset: FacePoset) -> AffineSalvetti:
    """Cells [C < F] (F in the closure of chamber C, dimension = codim F) and their boundaries."""
    cells = []
    for C in poset.chambers():
        for F in poset.closure(C):
            cells.append(SalvettiCell(C.index, F.index, poset.dim - F.dim))
    cells.sort(key=lambda c: (c.dim, c.chamber, c.facet))
    result = AffineSalvetti(poset, cells)
    for c in cells:
        if c.dim > 0:
            result.boundary[c] = salvetti_boundary(poset, c)
    return result
