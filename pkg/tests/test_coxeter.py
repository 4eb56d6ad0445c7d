import pytest

from toricsalvetti.coxeter import (
    AffineIsometry, OrderCapExceeded, UnsupportedType, build_affine_system, coxeter_type_label,
    enumerate_parabolic, min_coset_reps, mu, project_to_finite, root_datum, weyl_group_order,
)


@pytest.mark.parametrize("kind,rank,order", [
    ("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("B", 3, 48), ("C", 3, 48), ("G", 2, 12),
    ("D", 4, 192), ("F", 4, 1152),
])
def test_finite_group_order(kind, rank, order):
    _, gens = build_affine_system(kind, rank)
    assert len(gens.finite_group) == order == weyl_group_order(kind, rank)


def test_b2_labelling():
    _, gens = build_affine_system("B", 2)
    m = gens.coxeter_matrix()
    assert (m[0][1], m[1][2], m[0][2]) == (4, 4, 2)
    # s0 and s1 s2 s1 share a linear part; their product is a translation by a coroot
    s0, s1, s2 = gens[0], gens[1], gens[2]
    assert project_to_finite(s0, gens) == project_to_finite(s1 @ s2 @ s1, gens)
    t = s0 @ s1 @ s2 @ s1
    assert t.is_translation() and not t.is_identity()
    assert all(float(v).is_integer() for v in t.translation)


@pytest.mark.parametrize("kind,rank", [("A", 2), ("B", 2), ("G", 2), ("C", 3), ("B", 3)])
def test_coxeter_relations(kind, rank):
    _, gens = build_affine_system(kind, rank)
    m = gens.coxeter_matrix()
    ident = AffineIsometry.identity(rank)
    for i in range(len(gens)):
        assert gens[i] @ gens[i] == ident
        for j in range(i + 1, len(gens)):
            assert (gens[i] @ gens[j]).power(m[i][j]) == ident
            for k in range(1, m[i][j]):
                assert (gens[i] @ gens[j]).power(k) != ident


def test_affine_a1_is_infinite_dihedral():
    _, gens = build_affine_system("A", 1)
    assert gens.coxeter_matrix()[0][1] is None


def test_projection_is_homomorphism():
    _, gens = build_affine_system("G", 2)
    words = [(0, 1), (2, 0, 1), (1, 2, 1, 0), (0,)]
    for a in words:
        for b in words:
            lhs = project_to_finite(gens.word(a + b), gens)
            rhs = project_to_finite(gens.word(a), gens) @ project_to_finite(gens.word(b), gens)
            assert lhs.linear == rhs.linear


@pytest.mark.parametrize("gamma,size", [((1, 2), 8), ((0, 2), 4), ((0, 1), 8), ((0,), 2), ((), 1)])
def test_parabolic_sizes_b2(gamma, size):
    _, gens = build_affine_system("B", 2)
    assert len(enumerate_parabolic(gens, gamma)) == size


def test_parabolic_rejects_full_set():
    _, gens = build_affine_system("B", 2)
    with pytest.raises(ValueError):
        enumerate_parabolic(gens, (0, 1, 2))
    with pytest.raises(ValueError):
        enumerate_parabolic(gens, (3,))


def test_min_coset_reps_factorization():
    # every element of W_G factors uniquely as beta * u with u in W_{G - s}, lengths adding
    _, gens = build_affine_system("B", 2)
    for gamma in [(1, 2), (0, 1), (0, 2)]:
        whole = dict(enumerate_parabolic(gens, gamma))
        for sigma in gamma:
            rest = tuple(s for s in gamma if s != sigma)
            reps = min_coset_reps(gens, gamma, sigma)
            sub = enumerate_parabolic(gens, rest)
            assert len(reps) * len(sub) == len(whole)
            products = {}
            for beta, lb in reps:
                for u, lu in sub:
                    g = beta @ u
                    assert g not in products
                    products[g] = lb + lu
            assert products == whole


def test_min_coset_reps_values():
    _, gens = build_affine_system("B", 2)
    assert len(min_coset_reps(gens, (1, 2), 2)) == 4
    reps = min_coset_reps(gens, (0, 2), 0)
    assert sorted(l for _, l in reps) == [0, 1]
    with pytest.raises(ValueError):
        min_coset_reps(gens, (0, 2), 1)


def test_mu():
    assert mu((0, 2), 0) == 1
    assert mu((0, 2), 2) == 2
    assert mu((1, 2), 2) == 2
    with pytest.raises(ValueError):
        mu((0, 2), 1)


def test_type_labels():
    _, gens = build_affine_system("B", 2)
    m = gens.coxeter_matrix()
    assert coxeter_type_label(m, (1, 2)) == "B2"
    assert coxeter_type_label(m, (0, 2)) == "A1xA1"
    _, gens = build_affine_system("G", 2)
    m = gens.coxeter_matrix()
    assert sorted(coxeter_type_label(m, s) for s in [(1, 2), (0, 2), (0, 1)]) == ["A1xA1", "A2", "G2"]


def test_root_data():
    d = root_datum("B", 2)
    assert len(d.positive_roots) == 4
    assert root_datum("G", 2).cartan.tolist() in ([[2, -1], [-3, 2]], [[2, -3], [-1, 2]])
    assert len(root_datum("F", 4).positive_roots) == 24
    assert len(root_datum("D", 4).positive_roots) == 12


def test_caps_and_unsupported():
    with pytest.raises(OrderCapExceeded, match="order cap"):
        build_affine_system("E", 8)
    with pytest.raises(UnsupportedType):
        build_affine_system("E", 6, max_order=10 ** 9)
    with pytest.raises(OrderCapExceeded):
        build_affine_system("B", 3, max_order=10)
    with pytest.raises((UnsupportedType, ValueError)):
        build_affine_system("Q", 2)


def test_env_cap(monkeypatch):
    monkeypatch.setenv("TORIC_MAX_ORDER", "5")
    with pytest.raises(OrderCapExceeded):
        build_affine_system("A", 2)
