import numpy as np
import pytest

from optpred import (
    ChebPoly,
    as_nodes,
    from_lagrange_combination,
    lagrange_eval,
    lagrange_values,
    real_roots_bracketed,
    sup_norm_interval,
)
from optpred.imaginary import growth_poly, pell_companion

NODES3 = np.array([-1.0, 0.0, 1.0])


def test_as_nodes_validation():
    with pytest.raises(ValueError):
        as_nodes([0.5])
    with pytest.raises(ValueError):
        as_nodes([-1.2, 0.0, 1.0])
    with pytest.raises(ValueError):
        as_nodes([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        as_nodes([0.5, -0.5])


def test_chebpoly_basics():
    p = ChebPoly([1.0, 0.0, 2.0, 0.0])
    assert p.degree == 2  # trailing zero dropped
    assert ChebPoly([0.0, 0.0]).is_zero()
    assert p(0.5) == pytest.approx(1.0 + 2.0 * (2 * 0.25 - 1), abs=1e-14)
    q = p.reflected()
    xs = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(q(xs), p(-xs), atol=1e-14)
    with pytest.raises(ValueError):
        ChebPoly([])
    with pytest.raises(ValueError):
        ChebPoly([np.nan])


def test_chebpoly_json_round_trip():
    p = ChebPoly([1.5, -2j, 0.25 + 0.5j])
    q = ChebPoly.from_json(p.to_json())
    np.testing.assert_array_equal(p.coeffs, q.coeffs)
    assert p.to_json()["basis"] == "chebyshev"
    with pytest.raises(ValueError):
        ChebPoly.from_json({"basis": "monomial", "coeffs": [[1, 0]]})


def test_lagrange_eval_examples():
    # l_0(z) = z(z-1)/2 at z=2
    assert lagrange_eval(NODES3, 0, 2.0) == pytest.approx(1.0, abs=1e-14)
    # cardinal property of l_1
    for j, x in enumerate(NODES3):
        assert lagrange_eval(NODES3, 1, x) == pytest.approx(
            1.0 if j == 1 else 0.0, abs=1e-14
        )
    # l_1(z) = 1 - z^2 at z=2
    assert lagrange_eval(NODES3, 1, 2.0) == pytest.approx(-3.0, abs=1e-13)
    with pytest.raises(IndexError):
        lagrange_eval(NODES3, 3, 0.5)


def test_lagrange_values_matches_lagrange_eval():
    nodes = np.array([-1.0, -0.3, 0.2, 0.9, 1.0])
    z = 1.7 + 0.4j
    ell = lagrange_values(nodes, z)
    for i in range(len(nodes)):
        assert ell[i] == pytest.approx(lagrange_eval(nodes, i, z), rel=1e-13)


def test_partition_of_unity():
    rng = np.random.default_rng(3)
    nodes = np.array([-1.0, -0.6, -0.1, 0.4, 1.0])
    for _ in range(50):
        z = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
        assert abs(lagrange_values(nodes, z).sum() - 1.0) <= 1e-12


def test_from_lagrange_combination_examples():
    p = from_lagrange_combination(np.array([-1.0, 1.0]), [-1.0, 1.0])
    np.testing.assert_allclose(p.coeffs, [0.0, 1.0], atol=1e-14)
    t2 = from_lagrange_combination(NODES3, [1.0, -1.0, 1.0])
    np.testing.assert_allclose(t2.coeffs, [0.0, 0.0, 1.0], atol=1e-14)
    const = from_lagrange_combination(NODES3, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(const.coeffs, [1.0], atol=1e-14)
    with pytest.raises(ValueError):
        from_lagrange_combination(NODES3, [1.0, 2.0])


def test_interpolation_round_trip():
    rng = np.random.default_rng(5)
    nodes = np.array([-1.0, -0.7, -0.2, 0.3, 0.8, 1.0])
    for _ in range(25):
        c = rng.standard_normal(len(nodes)) + 1j * rng.standard_normal(len(nodes))
        p = ChebPoly(c)
        q = from_lagrange_combination(nodes, p(nodes))
        np.testing.assert_allclose(q.coeffs_padded(len(c)), c, atol=1e-11)


def test_sup_norm_t5():
    t5 = ChebPoly([0, 0, 0, 0, 0, 1.0])
    est = sup_norm_interval(t5)
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert abs(t5(est.argmax)) == pytest.approx(est.value, abs=1e-13)
    expected = np.cos(np.pi * np.arange(5, -1, -1) / 5)
    assert len(est.near_extreme_points) == 6
    np.testing.assert_allclose(est.near_extreme_points, expected, atol=1e-9)


def test_sup_norm_growth_poly():
    est = sup_norm_interval(growth_poly(2, 1.0))
    assert est.value == pytest.approx(1.0, abs=1e-10)


def test_sup_norm_linear():
    est = sup_norm_interval(ChebPoly([0.0, 2.0]))
    assert est.value == pytest.approx(2.0, abs=1e-12)
    assert abs(est.argmax) == pytest.approx(1.0, abs=1e-12)


def test_sup_norm_scaling():
    rng = np.random.default_rng(9)
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    base = sup_norm_interval(ChebPoly(c)).value
    for factor in [0.125, 3.0, -2.5, 1j * 4]:
        scaled = sup_norm_interval(ChebPoly(c * factor)).value
        assert scaled == pytest.approx(abs(factor) * base, rel=1e-12)
    with pytest.raises(ValueError):
        sup_norm_interval(ChebPoly([0.0]))


def test_roots_of_pell_companion_r1():
    roots = real_roots_bracketed(pell_companion(1, 1.0), [(-0.5, 0.5)])
    np.testing.assert_allclose(roots, [0.0], atol=1e-14)


def test_roots_of_t2():
    t2 = ChebPoly([0.0, 0.0, 1.0])
    roots = real_roots_bracketed(t2, [(-1.0, 0.0), (0.0, 1.0)])
    np.testing.assert_allclose(roots, [-np.sqrt(0.5), np.sqrt(0.5)], atol=1e-13)


def test_roots_of_pell_companion_r2():
    # 2(1+sqrt2)x^2 - 1 = 0 by hand from the recurrence
    expected = 1.0 / np.sqrt(2.0 * (1.0 + np.sqrt(2.0)))
    roots = real_roots_bracketed(pell_companion(2, 1.0), [(-1.0, 0.0), (0.0, 1.0)])
    np.testing.assert_allclose(roots, [-expected, expected], atol=1e-13)
    assert roots[1] == pytest.approx(0.45508986056222733, abs=1e-13)


def test_roots_reports_bad_bracket():
    t2 = ChebPoly([0.0, 0.0, 1.0])
    with pytest.raises(ValueError, match="bracket 1"):
        real_roots_bracketed(t2, [(-1.0, 0.0), (0.8, 0.9)])
    with pytest.raises(ValueError, match="not real"):
        real_roots_bracketed(ChebPoly([1j, 1.0]), [(-1.0, 1.0)])
