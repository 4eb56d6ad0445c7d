"""The toric Salvetti complex of a Weyl toric arrangement.

Cells are E([w], Gamma) with [w] in the finite Weyl group W and Gamma a
proper subset of the affine generators; the boundary is

    d E([w], G) = sum_{s in G} sum_{b} (-1)^(l(b) + mu(G, s)) E([w b], G - {s})

where b runs over the minimal coset representatives of W_G modulo
W_{G - {s}}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .coxeter import GeneratorSet, WeylClass, build_affine_system, min_coset_reps, mu
from .exactmath import IntMatrix
from .homology import ChainComplex

SignedChainComplex = ChainComplex


@dataclass(frozen=True)
class WeylCell:
    w: WeylClass
    gamma: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.gamma)

    def label(self) -> str:
        return f"E([{self.w.label()}],{{{','.join(f's{i}' for i in self.gamma)}}})"

    def as_dict(self) -> dict:
        return {"w": list(self.w.word), "gamma": list(self.gamma)}


def _shortlex(word):
    return (len(word), word)


def weyl_toric_cells(kind_or_gens, rank: int | None = None, max_order: int | None = None) -> list[WeylCell]:
    """All cells ordered by dimension, then Gamma, then the word of w."""
    gens = _gens(kind_or_gens, rank, max_order)
    W = sorted(gens.finite_group, key=lambda c: _shortlex(c.word))
    S = range(len(gens))
    cells = []
    for k in range(len(gens)):
        for gamma in combinations(S, k):
            cells.extend(WeylCell(w, gamma) for w in W)
    return cells


def _gens(kind_or_gens, rank, max_order) -> GeneratorSet:
    if isinstance(kind_or_gens, GeneratorSet):
        return kind_or_gens
    return build_affine_system(kind_or_gens, rank, max_order)[1]


def boundary(cell: WeylCell, gens: GeneratorSet) -> dict[WeylCell, int]:
    """Signed boundary as {cell: coefficient}; coefficients on equal cells add up."""
    out: dict[WeylCell, int] = defaultdict(int)
    for sigma in cell.gamma:
        face = tuple(s for s in cell.gamma if s != sigma)
        sign_mu = mu(cell.gamma, sigma)
        for beta, length in min_coset_reps(gens, cell.gamma, sigma):
            target = gens.weyl_class((cell.w @ WeylClass(beta.linear)).linear)
            out[WeylCell(target, face)] += (-1) ** (length + sign_mu)
    return {c: v for c, v in out.items() if v}


def assemble(kind_or_gens, rank: int | None = None, max_order: int | None = None) -> SignedChainComplex:
    gens = _gens(kind_or_gens, rank, max_order)
    cells = weyl_toric_cells(gens)
    by_dim: list[list[WeylCell]] = [[] for _ in range(len(gens))]
    for c in cells:
        by_dim[c.dim].append(c)
    index = [{c: i for i, c in enumerate(cs)} for cs in by_dim]
    bds: list[IntMatrix | None] = [None]
    for k in range(1, len(by_dim)):
        m = IntMatrix(len(by_dim[k - 1]), len(by_dim[k]))
        for j, c in enumerate(by_dim[k]):
            for face, v in boundary(c, gens).items():
                m.data[index[k - 1][face]][j] += v
        bds.append(m)
    return ChainComplex(by_dim, bds)
