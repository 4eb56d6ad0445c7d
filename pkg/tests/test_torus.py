from fractions import Fraction

import pytest

from toricsalvetti.arrangement import Character, Parallelepiped, enumerate_faces, hyperplanes_meeting_region
from toricsalvetti.homology import euler_characteristic, mod2_homology
from toricsalvetti.torus import (
    Lattice, NotThick, RegionTooSmall, ToricArrangement, UnboundedChambers, central_type, expected_vertex_types,
    is_thick, layers, quotient_facets, toric_cells, weyl_arrangement,
)


@pytest.fixture(scope="module")
def circle1():
    return ToricArrangement([(1,)], Lattice.scaled_identity(1, 1))


@pytest.fixture(scope="module")
def circle2():
    return ToricArrangement([(1,)], Lattice.scaled_identity(1, 2))


@pytest.fixture(scope="module")
def b2():
    return weyl_arrangement("B", 2)


def test_circle_z_census(circle1):
    assert circle1.facet_counts() == [1, 1]
    assert circle1.cell_counts() == [1, 2]
    assert [(L.dim, L.local_type) for L in circle1.layers] == [(0, "A1"), (1, "A0")]


def test_circle_z_not_thick_with_witness(circle1):
    v = circle1.is_thick()
    assert not v
    assert circle1.barycenter(v.chamber) == (Fraction(1, 2),)
    assert sorted(circle1.barycenter(F) for F in v.pair) == [(0,), (1,)]
    assert not circle1.pair_injective()
    assert all(c.pair is None for c in circle1.toric_cells())


def test_circle_z_refuses_mod2(circle1):
    with pytest.raises(NotThick):
        circle1.boundary().mod2_complex()
    with pytest.raises(NotThick):
        circle1.facet_complex()


def test_circle_z_unsigned_boundary(circle1):
    b = circle1.boundary()
    for cell in b.cells:
        if cell.dim == 1:
            assert dict(b.faces_of(cell)) == {0: 2}


def test_circle_2z(circle2):
    assert circle2.facet_counts() == [2, 2]
    assert circle2.cell_counts() == [2, 4]
    assert circle2.is_thick() and circle2.pair_injective()
    b = circle2.boundary()
    for cell in b.cells:
        if cell.dim == 1:
            faces = b.faces_of(cell)
            assert sorted(faces) == [0, 1] and set(faces.values()) == {1}
    cc = b.mod2_complex()
    cc.check()
    # C* minus two points
    assert mod2_homology(cc) == [1, 3]
    # the real torus itself, stratified by the toric facets
    assert mod2_homology(circle2.facet_complex()) == [1, 1]


def test_non_primitive_character():
    arr = ToricArrangement([(2,)], Lattice.scaled_identity(1, 1))
    assert arr.facet_counts() == [2, 2]
    assert arr.cell_counts() == [2, 4]
    assert arr.is_thick()


def test_b2_census(b2):
    assert len(b2.chambers()) == 8
    assert b2.cell_counts() == [8, 24, 24]
    assert b2.is_thick() and b2.pair_injective()


def test_b2_layers(b2):
    zero = [L for L in b2.layers if L.dim == 0]
    assert len(zero) == 4
    assert sorted(L.local_type for L in zero) == ["A1xA1", "A1xA1", "B2", "B2"]
    assert [L.dim for L in b2.layers].count(2) == 1
    assert b2.layer_census(0) == expected_vertex_types("B", 2)


def test_b2_mod2_complex(b2):
    b = b2.boundary()
    for cell in b.cells:
        assert all(m == 1 for m in b.faces_of(cell).values())
    cc = b.mod2_complex()
    cc.check()
    assert mod2_homology(cc) == [1, 8, 15]
    assert euler_characteristic(cc) == 8
    assert mod2_homology(b2.facet_complex()) == [1, 2, 1]


def test_pair_forms_are_bijective(b2):
    cells = b2.toric_cells()
    pairs = [c.pair for c in cells]
    assert None not in pairs and len(set(pairs)) == len(cells)


@pytest.mark.parametrize("kind", ["A", "B", "G"])
def test_vertex_census_formula(kind):
    arr = weyl_arrangement(kind, 2)
    assert arr.layer_census(0) == expected_vertex_types(kind, 2)


def test_torus_euler_characteristic():
    arr = weyl_arrangement("A", 2, "coweight")
    assert arr.facet_counts() == [1, 3, 2]
    assert sum((-1) ** d * k for d, k in enumerate(arr.facet_counts())) == 0


@pytest.mark.parametrize("origin", [(Fraction(1, 3), Fraction(1, 7)), (Fraction(-5, 2), Fraction(2, 9))])
def test_origin_shift_invariance(origin):
    arr = weyl_arrangement("B", 2, origin=origin)
    assert arr.facet_counts() == [4, 12, 8]
    assert arr.cell_counts() == [8, 24, 24]
    assert bool(arr.is_thick())
    assert arr.layer_census(0) == {"B2": 2, "A1xA1": 2}


def test_origin_shift_1d():
    arr = ToricArrangement([(1,)], Lattice.scaled_identity(1, 2), origin=(Fraction(3, 5),))
    assert arr.facet_counts() == [2, 2] and arr.cell_counts() == [2, 4]


def test_functional_interface():
    chars = [Character((1,))]
    lat = Lattice.scaled_identity(1, 2)
    region = Parallelepiped.unit(((2,),)).expanded((2,))
    P = enumerate_faces(hyperplanes_meeting_region(chars, region), characters=chars)
    P.region = region
    assert [tf.dim for tf in quotient_facets(P, lat)] == [0, 0, 1, 1]
    assert is_thick(P, lat)
    assert len(toric_cells(P, lat)) == 6
    assert len(layers(P, lat)) == 3


def test_region_too_small():
    chars = [Character((1,))]
    P = enumerate_faces(hyperplanes_meeting_region(chars, Parallelepiped.interval(0, 1)), characters=chars)
    with pytest.raises(RegionTooSmall, match="region too small"):
        quotient_facets(P, Lattice.scaled_identity(1, 1))


def test_unbounded_rejected():
    with pytest.raises(UnboundedChambers, match="unbounded chamber; unsupported"):
        ToricArrangement([(1, 0)], Lattice.scaled_identity(2))


def test_lattice_validation():
    with pytest.raises(ValueError, match="not integral"):
        ToricArrangement([(1,)], Lattice([[Fraction(1, 2)]]))
    with pytest.raises(ValueError):
        Lattice([[1, 2], [2, 4]])
    with pytest.raises(ValueError, match="empty X"):
        ToricArrangement([], Lattice.scaled_identity(1))


def test_central_types():
    assert central_type([(1, 0), (0, 1)]) == "A1xA1"
    assert central_type([(1, 0), (0, 1), (1, 1)]) == "A2"
    assert central_type([(1, 0), (0, 1), (1, 1), (1, 2)]) == "B2"
    assert central_type([(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]) == "G2"
    assert central_type([(2, 0), (1, 0)]) == "A1"
    assert central_type([]) == "A0"
