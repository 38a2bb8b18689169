import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from focklab.basis import (
    FockRep,
    HermiteRep,
    SpaceTag,
    basis_matrix,
    basis_size,
    enumerate_indices,
    evaluate,
    fock_D,
    fock_dz,
    fock_measure_rule,
    fock_mul_z,
    fock_sobolev_integral_norm,
    hermite_power,
    index_map,
    ladder,
    levels,
    number_operator,
    project_level,
    rep_from_json_dict,
    space_norm,
)
from focklab.special_fn import gauss_hermite_rule


def test_graded_lex_order():
    assert enumerate_indices(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert basis_size(2, 8) == 45
    assert basis_size(3, 4) == math.comb(7, 3)
    assert list(levels(2, 2)) == [0, 1, 1, 2, 2, 2]
    imap = index_map(2, 3)
    assert all(imap[a] == i for i, a in enumerate(enumerate_indices(2, 3)))


def test_rep_validation_and_immutability():
    with pytest.raises(ValueError):
        FockRep(1, 3, np.zeros(3))
    F = FockRep.basis(2, 2, (1, 1))
    with pytest.raises(ValueError):
        F.coeffs[0] = 1.0
    with pytest.raises(ValueError):
        HermiteRep(1, 2, np.zeros(3), measure="counting")


def test_algebra_aligns_degrees():
    a = FockRep.basis(1, 2, 1)
    b = FockRep.basis(1, 4, 4)
    c = a + 2 * b
    assert c.degree == 4
    assert c.coefficient(4) == 2
    assert (c - a).coefficient(1) == 0
    assert (-a).coefficient(1) == -1
    with pytest.raises(TypeError):
        a + HermiteRep.basis(1, 2, 1)


def test_random_rep_is_seeded_and_unit_norm():
    r1 = FockRep.random(2, 5, np.random.default_rng(7))
    r2 = FockRep.random(2, 5, np.random.default_rng(7))
    assert np.array_equal(r1.coeffs, r2.coeffs)
    assert r1.norm() == pytest.approx(1.0, abs=1e-15)


def test_json_round_trip_and_validation():
    rng = np.random.default_rng(1)
    for rep in (FockRep.random(2, 3, rng), HermiteRep.random(1, 4, rng, measure="gauss")):
        data = json.loads(json.dumps(rep.to_json_dict()))
        back = rep_from_json_dict(data)
        assert type(back) is type(rep)
        assert np.array_equal(back.coeffs, rep.coeffs)
    good = {"n": 1, "degree": 2, "basis": "fock", "measure": "lebesgue",
            "entries": [{"alpha": [0], "re": 1.0, "im": 0.0}, {"alpha": [2], "re": 0.0, "im": 1.0}]}
    assert rep_from_json_dict(good).coefficient(2) == 1j
    for bad in (
        {**good, "entries": good["entries"][::-1]},                       # unsorted
        {**good, "entries": [{"alpha": [3], "re": 1.0, "im": 0.0}]},     # out of range
        {k: v for k, v in good.items() if k != "degree"},                 # missing key
        {**good, "basis": "wavelet"},
    ):
        with pytest.raises(ValueError):
            rep_from_json_dict(bad)


def test_json_skips_zero_entries():
    F = FockRep.from_dict(1, 5, {3: 2.0})
    assert [e["alpha"] for e in F.to_json_dict()["entries"]] == [[3]]


def test_basis_matrix_kinds():
    x = np.array([[0.3], [-1.2]])
    H = basis_matrix("hermite", 1, 3, x)
    P = basis_matrix("poly", 1, 3, x)
    np.testing.assert_allclose(H, P * np.exp(-x ** 2 / 2))
    z = np.array([[0.5 + 0.5j, -0.2j]])
    Z = basis_matrix("fock", 2, 2, z)
    alpha = enumerate_indices(2, 2)
    for i, (a, b) in enumerate(alpha):
        ref = z[0, 0] ** a * z[0, 1] ** b / math.sqrt(2 ** (a + b) * math.factorial(a) * math.factorial(b))
        assert Z[0, i] == pytest.approx(ref)


def test_evaluate_shapes():
    F = FockRep.basis(2, 1, (1, 0))
    assert evaluate(F, [1.0, 2.0]) == pytest.approx(1 / math.sqrt(2))
    assert evaluate(F, np.array([[1.0, 0], [2.0, 0]])).shape == (2,)
    G = FockRep.basis(1, 1, 1)
    assert isinstance(G(0.5), complex)
    assert G(np.array([0.5, 1.0])).shape == (2,)


def test_ladder_relations_on_hermite_functions():
    rng = np.random.default_rng(3)
    f = HermiteRep.random(1, 6, rng)
    x = np.linspace(-2, 2, 7)
    # x f and f' evaluated pointwise
    xf = ladder(f, "x")
    np.testing.assert_allclose(evaluate(xf, x), x * evaluate(f, x), atol=1e-12)
    h = 1e-5
    df = (evaluate(f, x + h) - evaluate(f, x - h)) / (2 * h)
    np.testing.assert_allclose(evaluate(ladder(f, "d"), x), df, atol=1e-8)
    # [A, A*] = 2 in this normalization
    A = ladder(ladder(f, "Astar"), "A").resized(8)
    B = ladder(ladder(f, "A"), "Astar").resized(8)
    np.testing.assert_allclose((A - B).coeffs, 2 * f.resized(8).coeffs, atol=1e-12)
    with pytest.raises(ValueError):
        ladder(HermiteRep.random(1, 3, rng, measure="gauss"), "A")


def test_gauss_ladder_on_polynomials():
    rng = np.random.default_rng(4)
    g = HermiteRep.random(1, 5, rng, measure="gauss")
    x = np.linspace(-1.5, 1.5, 5)
    h = 1e-5
    dg = (evaluate(g, x + h) - evaluate(g, x - h)) / (2 * h)
    np.testing.assert_allclose(evaluate(ladder(g, "d"), x), dg, atol=1e-8)
    np.testing.assert_allclose(evaluate(ladder(g, "x"), x), x * evaluate(g, x), atol=1e-12)


def test_fock_operators_match_calculus():
    rng = np.random.default_rng(5)
    F = FockRep.random(2, 4, rng)
    z = np.array([[0.4 + 0.1j, -0.3 + 0.7j]])
    h = 1e-6
    e0 = np.array([[h, 0]])
    dF = (evaluate(F, z + e0) - evaluate(F, z - e0)) / (2 * h)
    assert evaluate(fock_dz(F, 0), z)[0] == pytest.approx(dF[0], abs=1e-8)
    assert evaluate(fock_mul_z(F, 1), z)[0] == pytest.approx(z[0, 1] * evaluate(F, z)[0], abs=1e-12)
    D = evaluate(fock_D(F, 0), z)[0]
    Ds = evaluate(fock_D(F, 0, star=True), z)[0]
    assert D + Ds == pytest.approx(z[0, 0] * evaluate(F, z)[0], abs=1e-12)
    np.testing.assert_allclose(number_operator(F).coeffs, (2 * F.levels + 2) * F.coeffs)


def test_number_operator_is_2_z_d_plus_n():
    rng = np.random.default_rng(8)
    F = FockRep.random(2, 5, rng)
    acc = F * 2.0
    for j in range(2):
        acc = acc + 2.0 * fock_mul_z(fock_dz(F, j), j)
    assert acc.resized(5).max_abs_diff(number_operator(F)) < 1e-12


def test_projection_and_hermite_power():
    F = FockRep.random(1, 4, np.random.default_rng(0))
    total = sum((project_level(F, k) for k in range(1, 5)), project_level(F, 0))
    assert total.max_abs_diff(F) == 0
    f = HermiteRep.random(2, 3, np.random.default_rng(1))
    np.testing.assert_allclose(hermite_power(hermite_power(f, 0.5), -0.5).coeffs, f.coeffs, rtol=1e-14)


def test_space_norm_compatibility():
    f = HermiteRep.random(1, 4, np.random.default_rng(2))
    g = HermiteRep.random(1, 4, np.random.default_rng(2), measure="gauss")
    F = FockRep.random(1, 4, np.random.default_rng(2))
    assert space_norm(f, SpaceTag("L2")) == pytest.approx(1.0)
    assert space_norm(g, SpaceTag("L2gamma")) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        space_norm(f, SpaceTag("L2gamma"))
    with pytest.raises(ValueError):
        space_norm(F, SpaceTag("HermiteSobolev", 1))
    with pytest.raises(ValueError):
        SpaceTag("Fock10", 0.5)
    with pytest.raises(ValueError):
        SpaceTag("Sobolev", 1)


def test_sobolev_norms_of_basis_functions():
    F = FockRep.basis(1, 6, 3)
    assert space_norm(F, SpaceTag("FockSobolev", 2)) == pytest.approx(7.0)
    # |D*^1 zeta_3|^2 + |zeta_3|^2 with D* raising by sqrt((a+1)/2)
    assert space_norm(F, SpaceTag("Fock10", 1)) == pytest.approx(math.sqrt(1 + 4 / 2 + 3 / 2))


def test_fock_measure_rule_integrates_monomials():
    pts, w = fock_measure_rule(1, 12)
    z = pts[:, 0]
    for a in range(5):
        for b in range(5):
            val = np.sum(w * z ** a * np.conj(z) ** b)
            ref = 2 ** a * math.factorial(a) if a == b else 0.0
            assert abs(val - ref) < 1e-10


def test_fock_sobolev_integral_norm_guard():
    F = FockRep.basis(1, 5, 0)
    with pytest.raises(ValueError):
        fock_sobolev_integral_norm(F, 2, order=6)
    # (1 + |z|^2)^2 against dnu on zeta_0: 1 + 2*2 + 8
    assert fock_sobolev_integral_norm(F, 2) ** 2 == pytest.approx(13.0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 2), N=st.integers(0, 6))
def test_plancherel_by_quadrature(seed, n, N):
    f = HermiteRep.random(n, N, np.random.default_rng(seed))
    rule = gauss_hermite_rule(N + 1)
    grids = np.meshgrid(*([rule.nodes] * n), indexing="ij")
    wg = np.meshgrid(*([rule.weights] * n), indexing="ij")
    X = np.stack([g.reshape(-1) for g in grids], axis=1)
    W = np.prod(np.stack([g.reshape(-1) for g in wg], axis=1), axis=1)
    vals = basis_matrix("poly", n, N, X) @ f.coeffs
    assert math.sqrt(np.sum(W * np.abs(vals) ** 2)) == pytest.approx(f.norm(), rel=1e-12)
