"""Row tableaux for the braid stratification and its quotient on the torus.

A point x of R^{n+1} gives a tableau: rows collect equal coordinates and
are ordered by increasing value. On the torus V / coweight lattice the
lattice acts on rows by cyclic rotation, so toric facets of dimension d are
rotation classes of tableaux with d+1 rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial, floor
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class RowTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or any(not r for r in rows):
            raise ValueError("tableau rows must be nonempty")
        flat = [e for r in rows for e in r]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError(f"entries must be exactly 1..{len(flat)}")
        if any(list(r) != sorted(r) for r in rows):
            raise ValueError("rows must be increasing")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, *rows) -> "RowTableau":
        return cls(tuple(tuple(sorted(r)) for r in rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return self.size - 1

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def rotate(self, s: int) -> "RowTableau":
        s %= len(self.rows)
        return RowTableau(self.rows[s:] + self.rows[:s])

    def merge(self, i: int, j: int) -> "RowTableau":
        """Merge row j into row i (kept at position i)."""
        merged = tuple(sorted(self.rows[i] + self.rows[j]))
        rows = [merged if k == i else r for k, r in enumerate(self.rows) if k != j]
        return RowTableau(tuple(rows))

    def __str__(self):
        return "[" + "|".join("".join(map(str, r)) if self.size < 10 else ",".join(map(str, r))
                              for r in self.rows) + "]"


@dataclass(frozen=True, order=True)
class CyclicClass:
    canonical: RowTableau

    @classmethod
    def of(cls, t: RowTableau) -> "CyclicClass":
        return cls(min(t.rotate(s) for s in range(t.row_count)))

    @property
    def size(self) -> int:
        return self.canonical.row_count

    @property
    def dim(self) -> int:
        return self.canonical.dim

    def members(self) -> list[RowTableau]:
        return sorted({self.canonical.rotate(s) for s in range(self.size)})

    def __str__(self):
        return str(self.canonical)


def tableau_of_point(x: Sequence) -> RowTableau:
    values = sorted(set(x))
    return RowTableau(tuple(tuple(i + 1 for i, v in enumerate(x) if v == val) for val in values))


def _set_partitions(N: int, r: int):
    """Unordered partitions of 1..N into r blocks (restricted growth strings)."""
    blocks: list[list[int]] = []

    def rec(e):
        if e > N:
            if len(blocks) == r:
                yield [tuple(b) for b in blocks]
            return
        if r - len(blocks) > N - e + 1:
            return
        for b in blocks:
            b.append(e)
            yield from rec(e + 1)
            b.pop()
        if len(blocks) < r:
            blocks.append([e])
            yield from rec(e + 1)
            blocks.pop()

    yield from rec(1)


def enumerate_tableaux(n: int, rows: int) -> list[RowTableau]:
    """All ordered partitions of 1..n+1 into ``rows`` increasing rows."""
    if n < 0 or not 1 <= rows <= n + 1:
        raise ValueError(f"row count {rows} out of range 1..{n + 1}")
    out = []
    for blocks in _set_partitions(n + 1, rows):
        out.extend(RowTableau(p) for p in permutations(blocks))
    return sorted(out)


def cyclic_classes(tableaux: Iterable[RowTableau]) -> list[CyclicClass]:
    tableaux = list(tableaux)
    if len({t.row_count for t in tableaux}) > 1:
        raise ValueError("mixed row counts")
    return sorted({CyclicClass.of(t) for t in tableaux})


def weyl_action(perm: Sequence[int], t: RowTableau) -> RowTableau:
    """Relabel entries by the permutation in one-line notation (i -> perm[i-1])."""
    if sorted(perm) != list(range(1, t.size + 1)):
        raise ValueError("not a permutation of the entries")
    return RowTableau(tuple(tuple(sorted(perm[e - 1] for e in r)) for r in t.rows))


def merges(t: RowTableau) -> list[RowTableau]:
    """Consecutive row merges plus the last row merged into the first."""
    h = t.row_count
    if h == 1:
        return []
    out = [t.merge(i, i + 1) for i in range(h - 1)]
    if h > 2:
        out.append(t.merge(0, h - 1))
    return out


@dataclass
class TableauPoset:
    n: int
    classes: list[list[CyclicClass]]
    covers: list[tuple[CyclicClass, CyclicClass]] = field(default_factory=list)

    def f_vector(self) -> list[int]:
        return [len(c) for c in self.classes]

    def euler(self) -> int:
        return sum((-1) ** d * k for d, k in enumerate(self.f_vector()))

    def to_dot(self) -> str:
        lines = [f"digraph tableaux_{self.n} {{"]
        for d, cs in enumerate(self.classes):
            for c in cs:
                lines.append(f'  "{c}" [label="{c}", dim={d}];')
        for up, lo in self.covers:
            lines.append(f'  "{up}" -> "{lo}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def toric_facet_poset(n: int) -> TableauPoset:
    if n < 1:
        raise ValueError("n must be at least 1")
    classes = [cyclic_classes(enumerate_tableaux(n, d + 1)) for d in range(n + 1)]
    covers = set()
    for cs in classes[1:]:
        for c in cs:
            for m in merges(c.canonical):
                covers.add((c, CyclicClass.of(m)))
    return TableauPoset(n, classes, sorted(covers, key=lambda e: (-e[0].dim, e)))


def stirling2(n: int, k: int) -> int:
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def expected_facet_count(n: int, d: int) -> int:
    return factorial(d) * stirling2(n + 1, d + 1)


# --- geometry ---------------------------------------------------------------------

def euclidean_point(c: Sequence) -> tuple:
    """Point of the sum-zero hyperplane with simple-coroot coordinates c."""
    n = len(c)
    return tuple([Fraction(c[0])] + [Fraction(c[i]) - c[i - 1] for i in range(1, n)] + [-Fraction(c[-1])])


def class_of_point(x: Sequence) -> CyclicClass:
    """Toric facet of the image of x: fractional parts, then rotation class."""
    return CyclicClass.of(tableau_of_point([v - floor(v) for v in x]))


def translate(x: Sequence, i: int, t=1) -> tuple:
    """t_i: add t to the first i coordinates."""
    return tuple(v + t if j < i else v for j, v in enumerate(x))


def check_translation_action(x: Sequence) -> list[str]:
    """On a point with x_1 <= ... <= x_{n+1} < x_1 + 1, each t_i must rotate the rows."""
    problems = []
    t = tableau_of_point(x)
    for i in range(1, len(x)):
        if x[i - 1] == x[i]:
            continue
        k = next(r for r, row in enumerate(t.rows) if i in row) + 1
        got = tableau_of_point(translate(x, i))
        if got != t.rotate(k):
            problems.append(f"t_{i} sends {t} to {got}, expected {t.rotate(k)}")
    return problems


@dataclass
class CrossCheckReport:
    n: int
    lattice: str
    match: bool
    geometric_counts: list[int]
    tableau_counts: list[int]
    thick: bool
    coroot_chambers: int | None = None
    diffs: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("n", "lattice", "match", "geometric_counts", "tableau_counts", "thick", "coroot_chambers",
                 "diffs", "notes")}

    def __str__(self):
        head = "match" if self.match else "MISMATCH"
        lines = [f"{head}: n={self.n} lattice={self.lattice} geometric={self.geometric_counts} "
                 f"tableaux={self.tableau_counts} thick={self.thick}"]
        lines += [f"  diff: {d}" for d in self.diffs]
        lines += [f"  note: {d}" for d in self.notes]
        return "\n".join(lines)


def cross_check_geometric(n: int, lattice: str = "coweight", compare_coroot: bool = True) -> CrossCheckReport:
    """Compare the tableau model with the toric facets of A~n computed geometrically."""
    from .torus import weyl_arrangement

    if not 1 <= n <= 2:
        raise ValueError("geometric cross-check is limited to n <= 2")
    arr = weyl_arrangement("A", n, lattice)
    combin = toric_facet_poset(n)
    diffs = []
    label = {}
    for tf in arr.facets:
        cls = class_of_point(euclidean_point(arr.barycenter(tf.rep)))
        if cls.dim != tf.dim:
            diffs.append(f"facet {tf.label()} of dimension {tf.dim} maps to {cls} with {cls.size} rows")
        label[tf.index] = cls
    if len(set(label.values())) != len(label):
        diffs.append("two toric facets map to the same cyclic class")
    geo = arr.facet_counts()
    tab = combin.f_vector()
    if geo != tab:
        diffs.append(f"facet counts differ: geometric {geo}, tableaux {tab}")
    geo_edges = {(label[u], label[l]) for u, l, _ in arr.covers()}
    tab_edges = set(combin.covers)
    for e in sorted(geo_edges - tab_edges):
        diffs.append(f"geometric cover {e[0]} > {e[1]} missing from the row-merge poset")
    for e in sorted(tab_edges - geo_edges):
        diffs.append(f"row-merge cover {e[0]} > {e[1]} missing from the geometry")
    notes = []
    for tf in arr.facets:
        x = sorted(v - floor(v) for v in euclidean_point(arr.barycenter(tf.rep)))
        diffs.extend(check_translation_action(x))
    thick = bool(arr.is_thick())
    notes.append(f"{lattice} lattice: {geo[-1]} chambers ({'thick' if thick else 'not thick'})")
    coroot_chambers = None
    if compare_coroot and lattice != "coroot":
        coroot_chambers = weyl_arrangement("A", n, "coroot").facet_counts()[-1]
        notes.append(f"coroot lattice: {coroot_chambers} chambers, (n+1)! = {factorial(n + 1)}")
    return CrossCheckReport(n, lattice, not diffs, geo, tab, thick, coroot_chambers, diffs, notes)
