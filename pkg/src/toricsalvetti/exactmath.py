"""Exact arithmetic substrate: integer matrices, Smith normal form, rational
linear algebra and Fourier-Motzkin feasibility.

Rationals are :class:`fractions.Fraction` throughout; nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

ExactScalar = Fraction


class IntMatrix:
    """Dense matrix of Python ints, stored as a list of rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            flat = [int(e) for e in entries]
            if len(flat) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
            self.data = [flat[i * cols:(i + 1) * cols] for i in range(rows)]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        m = cls(len(rows), cols)
        m.data = [[int(x) for x in r] for r in rows]
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @property
    def entries(self) -> list[int]:
        return [x for row in self.data for x in row]

    def tolist(self) -> list[list[int]]:
        return [row[:] for row in self.data]

    def copy(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.data, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = int(value)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.cols, self.rows)
        t.data = [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]
        return t

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        ocols = other.data
        for i, row in enumerate(self.data):
            acc = out.data[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(ocols[k]):
                        if b:
                            acc[j] += a * b
        return out

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, row in enumerate(self.data) for j, v in enumerate(row) if i != j)

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def nonzero(self):
        """Yield (row, col, value) triplets of the nonzero entries."""
        for i, row in enumerate(self.data):
            for j, v in enumerate(row):
                if v:
                    yield i, j, v


@dataclass
class SnfResult:
    U: IntMatrix | None
    D: IntMatrix
    V: IntMatrix | None

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: IntMatrix, transforms: bool = True) -> SnfResult:
    """Return U, D, V with U*A*V = D, D diagonal and d1 | d2 | ... .

    Pivots are the smallest nonzero absolute value in the active block,
    ties broken by (row, col). With ``transforms=False`` only D is computed.
    """
    m, n = A.rows, A.cols
    M = [row[:] for row in A.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    # V is kept transposed so column operations become row operations.
    Vt = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        if Vt is not None:
            Vt[j], Vt[k] = Vt[k], Vt[j]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        rs, rd = M[src], M[dst]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        for row in M:
            if row[src]:
                row[dst] -= q * row[src]
        if Vt is not None:
            vs, vd = Vt[src], Vt[dst]
            for j in range(n):
                if vs[j]:
                    vd[j] -= q * vs[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, M[i][t] // p)
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, M[t][j] // p)
            # Remainders smaller than |p| become the next pivot.
            small = None
            for i in range(t + 1, m):
                v = M[i][t]
                if v and (small is None or abs(v) < small[0]):
                    small = (abs(v), i, None)
            for j in range(t + 1, n):
                v = M[t][j]
                if v and (small is None or abs(v) < small[0]):
                    small = (abs(v), None, j)
            if small is not None:
                _, si, sj = small
                if si is not None:
                    swap_rows(t, si)
                else:
                    swap_cols(t, sj)
                continue
            if abs(p) != 1:
                bad = None
                for i in range(t + 1, m):
                    row = M[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    add_row(t, bad, -1)
                    continue
            break
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    D = IntMatrix(m, n)
    D.data = M
    if not transforms:
        return SnfResult(None, D, None)
    Um = IntMatrix(m, m)
    Um.data = U
    Vm = IntMatrix(n, n)
    Vm.data = [list(c) for c in zip(*Vt)] if n else []
    return SnfResult(Um, D, Vm)


def integer_rank(A: IntMatrix) -> int:
    return smith_normal_form(A, transforms=False).rank


def determinant(A: IntMatrix | Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-free Bareiss elimination."""
    rows = A.data if isinstance(A, IntMatrix) else A
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    det = sign * M[n - 1][n - 1]
    if isinstance(A, IntMatrix) or all(isinstance(x, int) for r in rows for x in r):
        return int(det)
    return det


def gf2_rank(rows: Iterable[Iterable[int]]) -> int:
    """Rank over the field with two elements; rows are integer vectors."""
    basis: dict[int, int] = {}
    for row in rows:
        v = 0
        for j, x in enumerate(row):
            if x % 2:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


# --- rational linear algebra -------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows * x = 0} in Q^n, one vector per free column."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, piv = rref(rows, n)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -R[r][f]
        basis.append(tuple(v))
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence, n: int):
    """Solve rows * x = rhs over Q.

    Returns (particular solution, nullspace basis) or None if inconsistent.
    The particular solution has zeros at free coordinates.
    """
    if not rows:
        return tuple(Fraction(0) for _ in range(n)), nullspace([], n)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(piv):
        x[pc] = R[r][n]
    return tuple(x), nullspace([r[:n] for r in R], n)


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def matvec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), 0) for col in Bt) for row in A)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


# --- feasibility ---------------------------------------------------------------

@dataclass
class LinearSystem:
    """Constraints a.x < c (strict), a.x <= c (nonstrict) and a.x = c (equalities)."""

    dim: int
    strict: list = field(default_factory=list)
    nonstrict: list = field(default_factory=list)
    equalities: list = field(default_factory=list)

    def check_dims(self):
        for kind in (self.strict, self.nonstrict, self.equalities):
            for a, _ in kind:
                if len(a) != self.dim:
                    raise ValueError(f"constraint of dimension {len(a)} in a system of dimension {self.dim}")

    def satisfied_by(self, x: Sequence) -> bool:
        return (all(dot(a, x) < c for a, c in self.strict)
                and all(dot(a, x) <= c for a, c in self.nonstrict)
                and all(dot(a, x) == c for a, c in self.equalities))


def _tightest(rows):
    """Keep one constraint per direction: the tightest, strict winning ties."""
    best = {}
    for a, c, s in rows:
        lead = next((abs(x) for x in a if x != 0), None)
        if lead is None:
            key = None
        else:
            a = tuple(x / lead for x in a)
            c = c / lead
            key = a
        if key is None:
            # constant constraint 0 (<|<=) c
            if c < 0 or (s and c == 0):
                return None
            continue
        old = best.get(key)
        if old is None or c < old[1] or (c == old[1] and s and not old[2]):
            best[key] = (a, c, s)
    return list(best.values())


def feasible(sys: LinearSystem):
    """Exact witness for a rational linear system, or None if infeasible.

    Equalities are eliminated by substitution; the remaining inequalities go
    through Fourier-Motzkin elimination with strictness propagated, then a
    witness is rebuilt by back substitution (interval midpoints, bound +/- 1
    for one-sided intervals, 0 when unconstrained).
    """
    sys.check_dims()
    n = sys.dim
    sol = solve_affine([a for a, _ in sys.equalities], [c for _, c in sys.equalities], n)
    if sol is None:
        return None
    x0, basis = sol
    f = len(basis)
    # x = x0 + sum t_k basis_k
    rows = []
    for kind, s in ((sys.strict, True), (sys.nonstrict, False)):
        for a, c in kind:
            a = [Fraction(v) for v in a]
            rows.append((tuple(dot(a, b) for b in basis), Fraction(c) - dot(a, x0), s))
    rows = _tightest(rows)
    if rows is None:
        return None
    levels = [rows]
    for k in range(f - 1, -1, -1):
        lower, upper, rest = [], [], []
        for a, c, s in levels[-1]:
            if a[k] > 0:
                upper.append((a, c, s))
            elif a[k] < 0:
                lower.append((a, c, s))
            else:
                rest.append((a, c, s))
        new = list(rest)
        for al, cl, sl in lower:
            for au, cu, su in upper:
                lam, mu = au[k], -al[k]
                a = tuple(lam * p + mu * q for p, q in zip(al, au))
                new.append((a, lam * cl + mu * cu, sl or su))
        new = _tightest(new)
        if new is None:
            return None
        levels.append(new)
    t = [Fraction(0)] * f
    # levels[f - k] holds constraints in t_0..t_{k-1}; solve t_0 first.
    for k in range(f):
        lo = hi = None
        lo_s = hi_s = False
        for a, c, s in levels[f - 1 - k]:
            if a[k] == 0:
                continue
            bound = (c - sum(a[j] * t[j] for j in range(k))) / a[k]
            if a[k] > 0:
                if hi is None or bound < hi or (bound == hi and s):
                    hi, hi_s = bound, s
            else:
                if lo is None or bound > lo or (bound == lo and s):
                    lo, lo_s = bound, s
        if lo is None and hi is None:
            v = Fraction(0)
        elif hi is None:
            v = lo + 1
        elif lo is None:
            v = hi - 1
        else:
            if lo > hi or (lo == hi and (lo_s or hi_s)):
                return None
            v = (lo + hi) / 2
        t[k] = v
    x = tuple(x0[i] + sum((t[k] * basis[k][i] for k in range(f)), Fraction(0)) for i in range(n))
    if not sys.satisfied_by(x):
        raise AssertionError("Fourier-Motzkin produced an invalid witness")
    return x
