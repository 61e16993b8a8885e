import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realroots.bench import gen_type, real_targets
from realroots.errors import MaxIterExceeded
from realroots.frobenius import FrobeniusElement, companion
from realroots.modular import ModularConfig, agcd, real_roots_modular, sqrt_mod_step, t_polynomial
from realroots.poly import Polynomial
from realroots.refine import match_distance, oracle_roots
from realroots.sign_iter import mobius_step, sign_step

P3 = Polynomial([-2.0, 1.0, -2.0, 1.0])  # (x^2 + 1)(x - 2)
CIRCLE = Polynomial([1.0, 0.0, 1.0])


def x_element(p):
    return FrobeniusElement(p, [0.0, 1.0])


def separated_real_poly(n, rng, min_gap=0.3):
    """Real polynomial with roots kept apart so evaluations stay well conditioned."""
    while True:
        k = n // 2
        z = rng.uniform(-2, 2, k) + 1j * rng.uniform(0.2, 2, k)
        roots = np.concatenate([z, z.conj(), rng.uniform(-2, 2, n - 2 * k)])
        D = np.abs(roots[:, None] - roots[None, :]) + 10 * np.eye(n)
        if D.min() >= min_gap:
            return Polynomial(np.real(Polynomial.from_roots(roots).coeffs)), roots


def shortcut_degree(p, t, tol=1e-6):
    """Test-only stand-in for agcd: the number of oracle roots where t nearly vanishes."""
    z = oracle_roots(p)
    vals = np.abs(np.polyval(t.coeffs[::-1], z)) / max(1.0, np.linalg.norm(t.coeffs))
    return int(np.count_nonzero(vals <= tol))


class TestStep:
    def test_examples(self):
        y = sqrt_mod_step(x_element(P3))
        assert np.allclose(y.residue, np.array([-1, 4, -1]) / 4)
        assert y.values_at([2.0])[0] == pytest.approx(mobius_step(2.0))
        assert np.allclose(sqrt_mod_step(x_element(CIRCLE)).residue, [0, 1])

    def test_random_values(self, rng):
        p, z = separated_real_poly(10, rng)
        y = x_element(p)
        y1 = sqrt_mod_step(y)
        want = np.array([mobius_step(x) for x in z])
        assert np.abs(y1.values_at(z) - want).max() <= 1e-9 * max(1, np.abs(want).max())

    def test_t_examples(self, rng):
        assert np.allclose(t_polynomial(x_element(CIRCLE)).coeffs, 0)
        assert np.allclose(t_polynomial(x_element(Polynomial([-1, 0, 1]))).coeffs, [2])
        y = x_element(P3)
        for _ in range(6):
            y = sqrt_mod_step(y)
        t = t_polynomial(y)
        vals = np.abs(np.polyval(t.coeffs[::-1], np.array([1j, -1j, 2.0])))
        assert vals[:2].max() <= 1e-8 and vals[2] >= 0.5


class TestAgcd:
    def test_exact(self):
        res = agcd(P3, CIRCLE, tol=1e-8)
        assert res.d == 2
        assert np.allclose(res.g.monic().coeffs, [1, 0, 1])
        assert np.allclose(res.v.coeffs, [-2, 1])
        assert res.g.degree + res.v.degree == P3.degree

    def test_coprime(self):
        res = agcd(Polynomial([-1, 0, 1]), Polynomial([3.0]))
        assert res.d == 0 and np.allclose(res.v.coeffs, [-1, 0, 1])

    def test_perturbed(self, rng):
        delta = rng.standard_normal(3)
        t = Polynomial(CIRCLE.coeffs + 1e-10 * delta / np.linalg.norm(delta))
        res = agcd(P3, t, tol=1e-6)
        assert res.d == 2 and np.abs(res.v.coeffs - [-2, 1]).max() <= 1e-6
        assert res.division_error <= 1e-5

    def test_products(self, rng):
        for _ in range(10):
            d = int(rng.integers(1, 5))
            g = Polynomial.from_roots(rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d))
            v = Polynomial.from_roots(rng.uniform(-1, 1, 4))
            w = Polynomial.from_roots(rng.uniform(-1, 1, 3))
            p, t = g * v, g * w
            if np.abs(oracle_roots(v)[:, None] - oracle_roots(w)[None, :]).min() < 0.05:
                continue
            assert agcd(p, t, tol=1e-6).d == d

    def test_shortcut_agrees(self):
        p = gen_type("II", 32, 8)
        y = x_element(p)
        for _ in range(8):
            y = sqrt_mod_step(y)
        t = t_polynomial(y)
        assert agcd(p, t).d == shortcut_degree(p, t) == 32 - real_targets(oracle_roots(p)).size


class TestFlow:
    def test_cubic(self):
        rep = real_roots_modular(P3, 1)
        assert rep.roots.size == 1 and abs(rep.roots[0] - 2) <= 1e-8
        assert rep.iterations <= 8 and rep.variant == "modular"

    def test_no_real_roots(self):
        rep = real_roots_modular(CIRCLE, 0)
        assert rep.roots.size == 0 and rep.r_detected == 0

    def test_type_I(self):
        p = gen_type("I", 64, 8)
        z = real_targets(oracle_roots(p))
        rep = real_roots_modular(p, z.size)
        assert match_distance(rep.roots, z) <= 1e-6
        assert rep.iterations <= 15

    def test_without_count(self):
        rep = real_roots_modular(P3)
        assert abs(rep.roots[0] - 2) <= 1e-8

    def test_restart_on_zero_image(self):
        # the real root 1 maps to 0 after one step, so y_1 is not invertible
        p = Polynomial(np.real(Polynomial.from_roots([1.0, 2j, -2j]).coeffs))
        rep = real_roots_modular(p, 1)
        assert rep.status == "ill_conditioned_shifted" and rep.shifts >= 1
        assert abs(rep.roots[0] - 1) <= 1e-8

    def test_max_iter(self):
        p = gen_type("I", 32, 8)
        with pytest.raises(MaxIterExceeded) as info:
            real_roots_modular(p, 5, ModularConfig(max_iter=3))
        assert info.value.report.status == "failure"


def test_duality_with_matrix_flow(rng):
    for _ in range(5):
        n = int(rng.integers(4, 13))
        p, z = separated_real_poly(n, rng)
        y = x_element(p)
        M = companion(p)
        ref = z.copy()
        for k in range(1, 7):
            y = sqrt_mod_step(y)
            M = sign_step(M)
            ref = np.array([mobius_step(x) for x in ref])
            scale = max(1.0, np.abs(ref).max())
            assert np.abs(y.values_at(z) - ref).max() <= 1e-7 * scale
            assert np.abs(y.matrix() - M).max() <= 1e-7 * max(1.0, np.abs(M).max())


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_agcd_recovers_degree(d, m, seed):
    rng = np.random.default_rng(seed)
    gz = rng.uniform(-1, 1, d) + 1j * rng.uniform(0.2, 1, d)
    vz = rng.uniform(-1, 1, m)
    wz = rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m)
    allz = np.concatenate([gz, vz, wz])
    if (np.abs(allz[:, None] - allz[None, :]) + 10 * np.eye(allz.size)).min() < 0.1:
        return
    g = Polynomial.from_roots(gz)
    p, t = g * Polynomial.from_roots(vz), g * Polynomial.from_roots(wz)
    delta = rng.standard_normal(t.coeffs.size)
    t = Polynomial(t.coeffs + 1e-10 * delta / np.linalg.norm(delta))
    res = agcd(p, t, tol=1e-6)
    assert res.d == d
    assert res.division_error <= 1e-5
