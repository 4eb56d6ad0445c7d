from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from toricsalvetti.arrangement import (
    Character, Parallelepiped, PeriodicHyperplane, affine_salvetti, closure_leq, enumerate_faces,
    hyperplanes_meeting_region,
)
from toricsalvetti.exactmath import LinearSystem, feasible, rank_q


def H(normal, level=0):
    return PeriodicHyperplane(tuple(normal), Fraction(level))


def realizable_sign_vectors(hyps, dim):
    """Oracle: decide every sign vector with the exact feasibility solver."""
    out = set()
    for sv in product((-1, 0, 1), repeat=len(hyps)):
        s = LinearSystem(dim)
        for h, sign in zip(hyps, sv):
            a = tuple(Fraction(v) for v in h.normal)
            if sign == 0:
                s.equalities.append((a, h.level))
            elif sign > 0:
                s.strict.append((tuple(-v for v in a), -h.level))
            else:
                s.strict.append((a, h.level))
        if feasible(s) is not None:
            out.add(sv)
    return out


A2 = [H((1, 1)), H((1, -2)), H((2, -1))]


def test_braid_arrangement_a2():
    P = enumerate_faces(A2, 2)
    assert P.f_vector() == [1, 6, 6]
    assert {F.signs for F in P} == realizable_sign_vectors(A2, 2)
    assert affine_salvetti(P).counts() == [6, 12, 6]


def test_line_with_two_points():
    P = enumerate_faces([H((1,), 0), H((1,), 1)], 1)
    assert len(P) == 5
    assert P.f_vector() == [2, 3]
    bounded = [F for F in P if P.is_bounded(F)]
    assert [F.dim for F in bounded] == [0, 1, 0]
    mid = next(F for F in bounded if F.dim == 1)
    assert P.barycenter(mid) == (Fraction(1, 2),)


def test_single_hyperplane_in_plane():
    P = enumerate_faces([H((1, 0))], 2)
    assert P.f_vector() == [0, 1, 2]
    assert not any(P.is_bounded(F) for F in P)
    assert affine_salvetti(P).counts() == [2, 2, 0]


def test_witnesses_have_their_sign_vectors():
    P = enumerate_faces(A2 + [H((1, 0), 1)], 2)
    for F in P:
        assert tuple(h.sign(F.witness) for h in P.hyperplanes) == F.signs


def test_closure_order_against_brute_force():
    hyps = [H((1, 0), 0), H((0, 1), 0), H((1, 1), 1), H((1, -1), 0)]
    P = enumerate_faces(hyps, 2)
    for F in P:
        below = {G.index for G in P if G.dim == F.dim - 1 and closure_leq(F, G, P)}
        assert below == set(P.below[F.index])


def test_closure_rejects_foreign_facets():
    P = enumerate_faces(A2, 2)
    Q = enumerate_faces(A2, 2)
    with pytest.raises(ValueError):
        P.closure_leq(P.facets[0], Q.facets[1])


def test_region_filter():
    hyps = [H((1, 0), 0), H((1, 0), 1), H((0, 1), 0), H((0, 1), 1)]
    region = Parallelepiped.unit(((1, 0), (0, 1))).expanded((Fraction(-1, 4),) * 2)
    P = enumerate_faces(hyps, region=region)
    assert [F.dim for F in P.restricted] == [2]
    full = Parallelepiped.unit(((1, 0), (0, 1)))
    P = enumerate_faces(hyps, region=full)
    # the closed square touches the closure of every face of the grid
    assert len(P.restricted) == len(P) == 25


def test_hyperplanes_meeting_region():
    assert hyperplanes_meeting_region([Character((1,))], Parallelepiped.interval(Fraction(1, 4), Fraction(3, 4))) == []
    hs = hyperplanes_meeting_region([Character((1,))], Parallelepiped.interval(0, 2))
    assert [h.level for h in hs] == [0, 1, 2]
    # a non-primitive character a = 2x gives levels in (1/2)Z for the primitive normal
    hs = hyperplanes_meeting_region([Character((2,))], Parallelepiped.interval(0, 1))
    assert [h.level for h in hs] == [0, Fraction(1, 2), 1]
    with pytest.raises(ValueError, match="empty X"):
        hyperplanes_meeting_region([], Parallelepiped.interval(0, 1))
    with pytest.raises(ValueError):
        hyperplanes_meeting_region([Character((1,))], Parallelepiped.interval(1, 1))
    with pytest.raises(ValueError):
        hyperplanes_meeting_region([Character((1, 0))], Parallelepiped.interval(0, 1))


def test_character_normalization():
    assert Character((-2, 4)).vector == (2, -4)
    assert Character((2, -4)).primitive == (1, -2)
    with pytest.raises(ValueError):
        Character((0, 0))


def test_duplicate_hyperplanes_rejected():
    with pytest.raises(ValueError):
        enumerate_faces([H((1, 0)), H((1, 0))], 2)


def test_canonical_ordering():
    P = enumerate_faces(A2, 2)
    Q = enumerate_faces(list(A2), 2)
    assert [F.signs for F in P] == sorted(F.signs for F in P) == [F.signs for F in Q]


lines = st.tuples(st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)]), st.integers(-2, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(lines, min_size=1, max_size=4, unique=True))
def test_faces_match_feasibility_oracle(lines_in):
    hyps = sorted({H(n, c) for n, c in lines_in})
    P = enumerate_faces(hyps, 2)
    assert {F.signs for F in P} == realizable_sign_vectors(hyps, 2)
    for F in P:
        zero = [h.normal for h, s in zip(hyps, F.signs) if s == 0]
        assert F.dim == 2 - rank_q(zero)
    # Euler relation for a line arrangement: V - E + C = 1 (plane) counted with unbounded faces
    f = P.f_vector()
    assert f[0] - f[1] + f[2] == 1
