"""Quadratic form of L, its factorization, the kernel ODE and the Wronskian."""

import numpy as np
import pytest

from kinkforge import connect, preset
from kinkforge._numerics import h1_norm_sq
from kinkforge.linearization import (
    decaying_solution,
    factorization_gap,
    kernel_dimension,
    kernel_ode,
    quad_form_direct,
    quad_form_factored,
    random_fields,
    report,
    second_solution,
    wronskian,
)

PRESETS = ["phi4", "iphi4", "triple"]


def test_quad_form_of_e_prime_vanishes(phi4):
    f, prof = phi4
    assert abs(quad_form_direct(f, prof, prof.de)) <= 5e-6
    assert abs(quad_form_factored(f, prof, prof.de)) <= 5e-6


def test_quad_forms_of_zero(phi4):
    f, prof = phi4
    z = np.zeros_like(prof.e)
    assert quad_form_direct(f, prof, z) == 0
    assert quad_form_factored(f, prof, z) == 0
    assert factorization_gap(f, prof, [z]).gap == 0


def test_gaussian_bump_factorizes(phi4):
    f, prof = phi4
    h = np.exp(-prof.x**2) + 0j
    direct, factored = quad_form_direct(f, prof, h), quad_form_factored(f, prof, h)
    assert direct == pytest.approx(factored, rel=1e-8)
    assert factored >= 0


@pytest.mark.parametrize("name", PRESETS)
def test_factorization_identity_on_presets(all_presets, name):
    f, prof = all_presets[name]
    rep = factorization_gap(f, prof, random_fields(prof, 50))
    assert rep.passed and rep.gap <= 1e-7
    assert np.all(rep.factored >= 0)


def test_factorization_identity_off_presets():
    # a rotated and translated quadratic, not one of the presets
    f = preset("phi4").compose_affine(np.exp(-0.4j), -np.exp(-0.4j) * (0.5 + 0.5j))
    a, b = 0.5 + 0.5j - np.exp(0.4j), 0.5 + 0.5j + np.exp(0.4j)
    prof = connect(f, a, b)
    assert factorization_gap(f, prof, random_fields(prof, 50, seed=7)).gap <= 1e-7


@pytest.mark.parametrize("name", PRESETS)
def test_form_is_nonnegative(all_presets, name):
    f, prof = all_presets[name]
    for h in random_fields(prof, 20, seed=11):
        assert quad_form_direct(f, prof, h) >= -1e-7 * (1 + h1_norm_sq(h, prof.dx))


def test_random_fields_are_seeded(phi4):
    _, prof = phi4
    a, b = random_fields(prof, 3, seed=5), random_fields(prof, 3, seed=5)
    for u, v in zip(a, b):
        assert np.array_equal(u, v)
        assert np.max(np.abs(u)) == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize("name", PRESETS)
def test_kernel_ode_reproduces_e_prime(all_presets, name):
    f, prof = all_presets[name]
    mid = prof.N // 2
    sol = kernel_ode(f, prof, prof.de[mid], prof.x[mid])
    assert not sol.overflow
    assert np.max(np.abs(sol.values - prof.de)) <= 1e-7 * np.max(np.abs(prof.de))


def test_kernel_ode_zero_stays_zero(phi4):
    f, prof = phi4
    assert np.all(kernel_ode(f, prof, 0.0).values == 0)


def test_kernel_ode_rejects_off_grid_start(phi4):
    f, prof = phi4
    with pytest.raises(ValueError):
        kernel_ode(f, prof, 1.0, x0=0.5 * prof.dx)


def test_second_solution_grows_both_ways(phi4):
    f, prof = phi4
    h = np.abs(second_solution(f, prof).values)
    k = 2 * np.sqrt(2)
    i, j = np.searchsorted(prof.x, [4.0, 8.0])
    rate = np.log(h[j] / h[i]) / (prof.x[j] - prof.x[i])
    assert rate == pytest.approx(k, rel=0.01)
    i, j = np.searchsorted(prof.x, [-8.0, -4.0])
    rate = np.log(h[i] / h[j]) / (prof.x[j] - prof.x[i])
    assert rate == pytest.approx(k, rel=0.01)


def test_wronskian_of_e_prime_with_itself(phi4):
    _, prof = phi4
    w, dev = wronskian(prof, prof.de)
    assert np.max(np.abs(w)) <= 1e-12 and dev <= 1e-12


@pytest.mark.parametrize("name", PRESETS)
def test_wronskian_constant(all_presets, name):
    f, prof = all_presets[name]
    w, dev = wronskian(prof, second_solution(f, prof).values)
    wbar = w[prof.N // 2]
    assert abs(wbar) > 0
    assert dev / abs(wbar) <= 1e-6


def test_wronskian_of_non_solution_varies(phi4):
    _, prof = phi4
    h = 1j * np.exp(-((prof.x - 1.0) ** 2))
    w, dev = wronskian(prof, h)
    assert dev / np.max(np.abs(w)) > 0.5


@pytest.mark.parametrize("name", PRESETS)
def test_kernel_dimension_one(all_presets, name):
    f, prof = all_presets[name]
    assert kernel_dimension(f, prof) == 1
    k = decaying_solution(f, prof)
    assert abs(k.determinant) <= 1e-8
    assert k.cosine_h1 >= 0.9999


def test_kernel_dimension_zero_without_orbit():
    # constant profile at a well: both decaying directions are transverse at x = 0
    from kinkforge.orbit_solver import constant_profile

    f = preset("phi4")
    prof = constant_profile(f, 1.0, X=6.0, N=512)
    assert kernel_dimension(f, prof) == 0


def test_report_summary(phi4):
    f, prof = phi4
    r = report(f, prof)
    assert r["pass"] and r["kernel_dim"] == 1
    assert set(r) == {"factorization_gap", "kernel_dim", "wronskian_dev", "pass"}
