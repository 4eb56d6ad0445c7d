"""Root data and affine Weyl groups as exact affine isometries.

The ambient space V is written in the basis of simple coroots, so the coroot
lattice is Z^n, roots are integer row vectors (their values on the simple
coroots) and every generator is an integer affine map.

Generator order is s0 (affine node), s1, ..., sn with s1..sn in Bourbaki
numbering. Rank 2 type B uses the C2 labelling, which is the labelling of the
worked example: s0 - s1 - s2 with both bonds of order 4.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .exactmath import IntMatrix, dot, inverse

DEFAULT_MAX_ORDER = 10**6
SUPPORTED = ("A", "B", "C", "D", "G", "F")


class UnsupportedType(ValueError):
    pass


class OrderCapExceeded(ValueError):
    pass


def max_order_from_env(default: int = DEFAULT_MAX_ORDER) -> int:
    value = os.environ.get("TORIC_MAX_ORDER")
    return int(value) if value else default


def weyl_group_order(kind: str, rank: int) -> int:
    kind = kind.upper()
    if kind == "A":
        return factorial(rank + 1)
    if kind in "BC":
        return 2**rank * factorial(rank)
    if kind == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if kind == "G":
        return 12
    if kind == "F":
        return 1152
    if kind == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    raise UnsupportedType(f"unknown type {kind}")


def _check_type(kind: str, rank: int) -> str:
    kind = kind.upper()
    if kind == "E":
        if rank not in (6, 7, 8):
            raise UnsupportedType(f"type E{rank} does not exist")
        return kind
    if kind not in SUPPORTED:
        raise UnsupportedType(f"unsupported type {kind!r}; expected one of A, B, C, D, G2, F4")
    if rank < 1 or (kind in "BC" and rank < 2) or (kind == "D" and rank < 4) \
            or (kind == "G" and rank != 2) or (kind == "F" and rank != 4):
        raise UnsupportedType(f"unsupported rank {rank} for type {kind}")
    return kind


def _euclidean_simple_roots(kind: str, n: int) -> list[tuple[Fraction, ...]]:
    """Simple roots in an orthonormal realization (Bourbaki plates)."""

    def e(i, dim):
        return [Fraction(int(j == i)) for j in range(dim)]

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    if kind == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if kind == "B" and n == 2:
        kind = "C"
    if kind == "B":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [tuple(e(n - 1, n))]
    if kind == "C":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [tuple(2 * x for x in e(n - 1, n))]
    if kind == "D":
        last = tuple(a + b for a, b in zip(e(n - 2, n), e(n - 1, n)))
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [last]
    if kind == "G":
        return [(Fraction(1), Fraction(-1), Fraction(0)), (Fraction(-2), Fraction(1), Fraction(1))]
    if kind == "F":
        h = Fraction(1, 2)
        return [
            (Fraction(0), Fraction(1), Fraction(-1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1), Fraction(-1)),
            (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
            (h, -h, -h, -h),
        ]
    raise UnsupportedType(kind)


@dataclass(frozen=True)
class AffineIsometry:
    """x -> linear @ x + translation, with exact entries."""

    linear: tuple[tuple, ...]
    translation: tuple

    @classmethod
    def identity(cls, n: int) -> "AffineIsometry":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    @classmethod
    def translation_by(cls, t: Sequence) -> "AffineIsometry":
        n = len(t)
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), tuple(t))

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __call__(self, x: Sequence):
        return tuple(dot(row, x) + b for row, b in zip(self.linear, self.translation))

    def __matmul__(self, other: "AffineIsometry") -> "AffineIsometry":
        """Composition: (self @ other)(x) = self(other(x))."""
        A, B = self.linear, other.linear
        cols = list(zip(*B))
        lin = tuple(tuple(dot(row, col) for col in cols) for row in A)
        return AffineIsometry(lin, self(other.translation))

    def is_identity(self) -> bool:
        return self == AffineIsometry.identity(self.dim)

    def is_translation(self) -> bool:
        return self.linear == AffineIsometry.identity(self.dim).linear

    def power(self, k: int) -> "AffineIsometry":
        out = AffineIsometry.identity(self.dim)
        for _ in range(k):
            out = out @ self
        return out


@dataclass(frozen=True)
class WeylClass:
    """Element of W, the image of W~ under the quotient by the coroot lattice.

    Equality is equality of the linear matrices; ``word`` is for display.
    """

    linear: tuple[tuple, ...]
    word: tuple[int, ...] = field(default=(), compare=False)

    def __matmul__(self, other: "WeylClass") -> "WeylClass":
        cols = list(zip(*other.linear))
        return WeylClass(tuple(tuple(dot(row, c) for c in cols) for row in self.linear))

    def label(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "1"


@dataclass(frozen=True)
class RootDatum:
    kind: str
    rank: int
    cartan: IntMatrix
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    highest_coroot: tuple[int, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    euclidean_simple_roots: tuple[tuple[Fraction, ...], ...]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def coroot_lattice(self) -> tuple[tuple[int, ...], ...]:
        """Basis vectors (columns) of the coroot lattice."""
        return self.simple_coroots

    @property
    def coweight_lattice(self) -> tuple[tuple[Fraction, ...], ...]:
        """Fundamental coweights, the basis of the lattice dual to the roots."""
        inv = inverse(self.cartan.tolist())
        return tuple(tuple(inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    def root_coefficients(self, root: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a root in the basis of simple roots."""
        inv = inverse(self.cartan.tolist())
        return tuple(sum(Fraction(root[i]) * inv[i][j] for i in range(self.rank)) for j in range(self.rank))


def root_datum(kind: str, rank: int) -> RootDatum:
    kind = _check_type(kind, rank)
    if kind == "E":
        raise UnsupportedType(f"type E{rank} is not supported")
    eu = _euclidean_simple_roots(kind, rank)

    def ip(a, b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    eu_coroots = [tuple(2 * x / ip(a, a) for x in a) for a in eu]
    cartan = [[int(ip(eu[i], eu_coroots[j])) for j in range(rank)] for i in range(rank)]
    gram = tuple(tuple(ip(eu_coroots[i], eu_coroots[j]) for j in range(rank)) for i in range(rank))

    # Orbit of the simple roots under W in the euclidean picture.
    def reflect(v, a, av):
        c = ip(v, av)
        return tuple(x - c * y for x, y in zip(v, a))

    roots = set(eu)
    frontier = list(eu)
    while frontier:
        nxt = []
        for r in frontier:
            for a, av in zip(eu, eu_coroots):
                s = reflect(r, a, av)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt

    def as_functional(r):
        return tuple(int(ip(r, cv)) for cv in eu_coroots)

    inv = inverse(cartan)

    def coeffs(f):
        return tuple(sum(Fraction(f[i]) * inv[i][j] for i in range(rank)) for j in range(rank))

    # coroot of r expressed in simple coroots: solve Gram-free by pairing with roots
    eu_mat = [[ip(eu_coroots[j], eu[i]) for j in range(rank)] for i in range(rank)]
    eu_inv = inverse(eu_mat)

    def coroot_coords(r):
        rv = tuple(2 * x / ip(r, r) for x in r)
        pair = [ip(eu[i], rv) for i in range(rank)]
        c = [sum(eu_inv[j][i] * pair[i] for i in range(rank)) for j in range(rank)]
        assert all(x.denominator == 1 for x in c)
        return tuple(int(x) for x in c)

    pos = []
    for r in roots:
        f = as_functional(r)
        c = coeffs(f)
        if all(x >= 0 for x in c):
            pos.append((sum(c), f, coroot_coords(r)))
    pos.sort(key=lambda t: (t[0], tuple(-x for x in t[1])))
    highest = pos[-1]
    return RootDatum(
        kind=kind,
        rank=rank,
        cartan=IntMatrix.from_rows(cartan),
        simple_roots=tuple(tuple(row) for row in cartan),
        simple_coroots=tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)),
        positive_roots=tuple(p[1] for p in pos),
        positive_coroots=tuple(p[2] for p in pos),
        highest_root=highest[1],
        highest_coroot=highest[2],
        gram=gram,
        euclidean_simple_roots=tuple(eu),
    )


def reflection(root: Sequence[int], coroot: Sequence[int], level: int = 0) -> AffineIsometry:
    """Reflection in the hyperplane {x : root(x) = level}."""
    n = len(root)
    lin = tuple(tuple(int(i == j) - coroot[i] * root[j] for j in range(n)) for i in range(n))
    return AffineIsometry(lin, tuple(level * c for c in coroot))


@dataclass(frozen=True)
class GeneratorSet:
    datum: RootDatum
    generators: tuple[AffineIsometry, ...]
    max_order: int = DEFAULT_MAX_ORDER

    @property
    def rank(self) -> int:
        return self.datum.rank

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i) -> AffineIsometry:
        return self.generators[i]

    def word(self, letters: Sequence[int]) -> AffineIsometry:
        out = AffineIsometry.identity(self.rank)
        for i in letters:
            out = out @ self.generators[i]
        return out

    def coxeter_matrix(self) -> list[list[int | None]]:
        """Orders m_ij of s_i s_j by exact matrix powers (None for infinite)."""
        k = len(self.generators)
        m = [[1] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                prod = self.generators[i] @ self.generators[j]
                order = None
                p = prod
                for e in range(1, 7):
                    if p.is_identity():
                        order = e
                        break
                    p = p @ prod
                m[i][j] = m[j][i] = order
        return m

    @cached_property
    def finite_group(self) -> tuple[WeylClass, ...]:
        """Elements of W with their shortlex-least reduced words in s1..sn."""
        n = self.rank
        ident = AffineIsometry.identity(n).linear
        gens = [self.generators[i].linear for i in range(1, n + 1)]
        seen = {ident: ()}
        layer = [ident]
        while layer:
            nxt = []
            for lin in layer:
                w = seen[lin]
                for k, g in enumerate(gens, start=1):
                    cols = list(zip(*g))
                    prod = tuple(tuple(dot(row, c) for c in cols) for row in lin)
                    if prod not in seen:
                        seen[prod] = w + (k,)
                        nxt.append(prod)
                        if len(seen) > self.max_order:
                            raise OrderCapExceeded(f"|W| exceeds order cap {self.max_order}")
            layer = nxt
        return tuple(WeylClass(lin, word) for lin, word in seen.items())

    def weyl_class(self, linear) -> WeylClass:
        return self._class_lookup[linear]

    @cached_property
    def _class_lookup(self) -> dict:
        return {c.linear: c for c in self.finite_group}


def build_affine_system(kind: str, rank: int, max_order: int | None = None):
    """Root datum and generators s0, s1, ..., sn of the affine Weyl group."""
    kind = _check_type(kind, rank)
    cap = max_order_from_env() if max_order is None else max_order
    order = weyl_group_order(kind, rank)
    if order > cap:
        raise OrderCapExceeded(
            f"type {kind}{rank}: |W| = {order} exceeds order cap {cap}; raise it with --max-order or TORIC_MAX_ORDER")
    if kind == "E":
        raise UnsupportedType(f"type E{rank} is not supported")
    datum = root_datum(kind, rank)
    gens = [reflection(datum.highest_root, datum.highest_coroot, 1)]
    for a, av in zip(datum.simple_roots, datum.simple_coroots):
        gens.append(reflection(a, av))
    return datum, GeneratorSet(datum, tuple(gens), cap)


def _as_subset(gens: GeneratorSet, gamma) -> tuple[int, ...]:
    gamma = tuple(sorted(set(gamma)))
    k = len(gens)
    if any(i < 0 or i >= k for i in gamma):
        raise ValueError(f"{gamma} is not a subset of S = {{s0..s{k - 1}}}")
    if len(gamma) == k:
        raise ValueError("Gamma = S generates the infinite affine group")
    return gamma


def enumerate_parabolic(gens: GeneratorSet, gamma) -> list[tuple[AffineIsometry, int]]:
    """All elements of the parabolic subgroup W_Gamma with Coxeter lengths.

    Breadth-first search by right multiplication; elements are listed by
    length and then by shortlex-least word.
    """
    return [(g, l) for g, l, _ in _parabolic_with_words(gens, gamma)]


def _parabolic_with_words(gens: GeneratorSet, gamma):
    gamma = _as_subset(gens, gamma)
    return _parabolic_cached(gens, gamma)


_PARABOLIC_CACHE: dict = {}


def _parabolic_cached(gens: GeneratorSet, gamma: tuple[int, ...]):
    key = (id(gens), gens.datum.label, gamma)
    hit = _PARABOLIC_CACHE.get(key)
    if hit is not None and hit[0] is gens:
        return hit[1]
    ident = AffineIsometry.identity(gens.rank)
    seen = {ident: ((), 0)}
    out = [(ident, 0, ())]
    layer = [ident]
    depth = 0
    while layer:
        depth += 1
        nxt = []
        for g in layer:
            word = seen[g][0]
            for i in gamma:
                h = g @ gens[i]
                if h not in seen:
                    seen[h] = (word + (i,), depth)
                    nxt.append(h)
                    out.append((h, depth, word + (i,)))
                    if len(seen) > gens.max_order:
                        raise OrderCapExceeded(f"|W_Gamma| exceeds order cap {gens.max_order}")
        layer = nxt
    _PARABOLIC_CACHE[key] = (gens, out)
    return out


def min_coset_reps(gens: GeneratorSet, gamma, sigma: int) -> list[tuple[AffineIsometry, int]]:
    """beta in W_Gamma with l(beta s) > l(beta) for every s in Gamma minus sigma."""
    gamma = _as_subset(gens, gamma)
    if sigma not in gamma:
        raise ValueError(f"s{sigma} is not in Gamma")
    elems = _parabolic_cached(gens, gamma)
    length = {g: l for g, l, _ in elems}
    rest = [s for s in gamma if s != sigma]
    return [(g, l) for g, l, _ in elems if all(length[g @ gens[s]] > l for s in rest)]


def project_to_finite(w: AffineIsometry, gens: GeneratorSet | None = None) -> WeylClass:
    """Class of w in W = W~ / coroot lattice: its linear part."""
    if gens is not None:
        return gens.weyl_class(w.linear)
    return WeylClass(w.linear)


def mu(gamma, j: int) -> int:
    """Number of s_i in Gamma with i <= j."""
    gamma = set(gamma)
    if j not in gamma:
        raise ValueError(f"s{j} is not in Gamma")
    return sum(1 for i in gamma if i <= j)


def coxeter_type_label(m: Sequence[Sequence[int | None]], subset: Sequence[int]) -> str:
    """Name of the finite Coxeter group generated by ``subset``, e.g. 'A1xA1'.

    B and C share a label since their reflection arrangements coincide.
    """
    subset = list(subset)
    if not subset:
        return "A0"
    comps = []
    remaining = set(subset)
    while remaining:
        start = min(remaining)
        comp, stack = {start}, [start]
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if j not in comp and m[i][j] != 2:
                    comp.add(j)
                    stack.append(j)
        remaining -= comp
        comps.append(sorted(comp))
    names = []
    for comp in comps:
        r = len(comp)
        edges = [(i, j, m[i][j]) for a, i in enumerate(comp) for j in comp[a + 1:] if m[i][j] != 2]
        labels = sorted(e[2] for e in edges)
        degree = {i: 0 for i in comp}
        for i, j, _ in edges:
            degree[i] += 1
            degree[j] += 1
        if any(l is None for l in labels):
            names.append(f"I{r}(inf)")
        elif r == 1:
            names.append("A1")
        elif 6 in labels:
            names.append("G2")
        elif 4 in labels:
            if r == 4 and labels.count(4) == 1:
                four = next(e for e in edges if e[2] == 4)
                if degree[four[0]] == 2 and degree[four[1]] == 2:
                    names.append("F4")
                    continue
            names.append(f"B{r}")
        elif max(degree.values()) >= 3:
            names.append(f"D{r}" if r >= 4 else f"A{r}")
        else:
            names.append(f"A{r}")
    return "x".join(sorted(names, key=lambda s: (s[0], s)))
