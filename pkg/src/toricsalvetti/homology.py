"""Integer and mod-2 homology of finite chain complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactmath import IntMatrix, gf2_rank, smith_normal_form


class NotAComplex(ValueError):
    pass


@dataclass
class ChainComplex:
    """Cells per degree and boundary matrices.

    ``boundaries[k]`` maps degree-k chains to degree-(k-1) chains, so it has
    ``len(cells[k-1])`` rows and ``len(cells[k])`` columns; ``boundaries[0]``
    is unused. ``modulus`` is 0 for integer coefficients and 2 for Z/2.
    """

    cells: list[list[Any]]
    boundaries: list[IntMatrix | None]
    modulus: int = 0

    def __post_init__(self):
        while len(self.boundaries) < len(self.cells):
            self.boundaries.append(None)
        for k in range(1, len(self.cells)):
            d = self.boundaries[k]
            if d is None:
                self.boundaries[k] = IntMatrix(len(self.cells[k - 1]), len(self.cells[k]))
            elif (d.rows, d.cols) != (len(self.cells[k - 1]), len(self.cells[k])):
                raise ValueError(f"boundary {k} has shape {d.rows}x{d.cols}, expected "
                                 f"{len(self.cells[k - 1])}x{len(self.cells[k])}")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def boundary(self, k: int) -> IntMatrix:
        if 1 <= k < len(self.cells):
            return self.boundaries[k]
        rows = len(self.cells[k - 1]) if 0 <= k - 1 < len(self.cells) else 0
        cols = len(self.cells[k]) if 0 <= k < len(self.cells) else 0
        return IntMatrix(rows, cols)

    def coboundary(self, k: int) -> IntMatrix:
        """delta^k : C^k -> C^{k+1}, the transpose of the boundary of degree k+1."""
        return self.boundary(k + 1).transpose()

    def check(self) -> None:
        for k in range(2, len(self.cells)):
            prod = self.boundaries[k - 1] @ self.boundaries[k]
            bad = [v for _, _, v in prod.nonzero() if (v % self.modulus if self.modulus else v)]
            if bad:
                raise NotAComplex(f"boundary_{k - 1} o boundary_{k} != 0")


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]
    euler: int
    cell_counts: list[int] = field(default_factory=list)

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    def cohomology(self) -> dict:
        """H^k by universal coefficients: free rank b_k, torsion of H_{k-1}."""
        return {
            "betti": list(self.betti),
            "torsion": [[]] + [list(t) for t in self.torsion[:-1]] if self.torsion else [],
        }

    def as_dict(self) -> dict:
        return {
            "cells": list(self.cell_counts),
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
            "torsion_free": self.torsion_free,
            "cohomology": self.cohomology(),
        }


def euler_characteristic(cc: ChainComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(cc.counts()))


def integer_homology(cc: ChainComplex, validate: bool = True) -> HomologyResult:
    if cc.modulus:
        raise ValueError("integer homology needs an integer complex")
    if validate:
        cc.check()
    n = len(cc.cells)
    ranks = [0] * (n + 1)
    factors: list[list[int]] = [[] for _ in range(n + 1)]
    for k in range(1, n):
        snf = smith_normal_form(cc.boundaries[k], transforms=False)
        ranks[k] = snf.rank
        factors[k] = snf.invariant_factors
    counts = cc.counts()
    betti = [counts[k] - ranks[k] - ranks[k + 1] for k in range(n)]
    torsion = [[d for d in factors[k + 1] if d > 1] for k in range(n)]
    return HomologyResult(betti, torsion, euler_characteristic(cc), counts)


def mod2_homology(cc: ChainComplex, validate: bool = True) -> list[int]:
    """Dimensions of homology with coefficients in the field with two elements."""
    if validate:
        probe = ChainComplex(cc.cells, list(cc.boundaries), 2)
        probe.check()
    n = len(cc.cells)
    ranks = [0] * (n + 1)
    for k in range(1, n):
        ranks[k] = gf2_rank(cc.boundaries[k].data)
    counts = cc.counts()
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(n)]


def is_connected(cc: ChainComplex) -> bool:
    """Union-find over 0-cells joined by the 1-cells of the boundary incidence."""
    if not cc.cells or not cc.cells[0]:
        return False
    parent = list(range(len(cc.cells[0])))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if len(cc.cells) > 1:
        d1 = cc.boundaries[1].transpose()
        for col in d1.data:
            ends = [i for i, v in enumerate(col) if v]
            for a in ends[1:]:
                parent[find(a)] = find(ends[0])
    return len({find(i) for i in range(len(parent))}) == 1


# --- serialization -------------------------------------------------------------

def complex_to_dict(cc: ChainComplex, cell_labels=None) -> dict:
    label = cell_labels or (lambda c: c if isinstance(c, (str, int, dict, list)) else str(c))
    return {
        "modulus": cc.modulus,
        "cells": [[{"id": i, "cell": label(c)} for i, c in enumerate(cells)] for cells in cc.cells],
        "boundaries": [
            {"degree": k, "rows": cc.boundaries[k].rows, "cols": cc.boundaries[k].cols,
             "entries": [[i, j, v] for i, j, v in cc.boundaries[k].nonzero()]}
            for k in range(1, len(cc.cells))
        ],
    }


def complex_from_dict(data: dict) -> ChainComplex:
    cells = [[c["cell"] for c in sorted(cs, key=lambda c: c["id"])] for cs in data["cells"]]
    bds: list[IntMatrix | None] = [None] * len(cells)
    for b in data["boundaries"]:
        m = IntMatrix(b["rows"], b["cols"])
        for i, j, v in b["entries"]:
            m[i, j] = v
        bds[b["degree"]] = m
    return ChainComplex(cells, bds, data.get("modulus", 0))
