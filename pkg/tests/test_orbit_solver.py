"""Heteroclinic orbits by two-sided shooting on the first-order reduction."""

import numpy as np
import pytest

from conftest import triple_closed_form
from kinkforge import connect, preset, wells
from kinkforge.errors import BlockedByWell, DegenerateSegment, InvalidGrid, LeftSegment
from kinkforge.holomorphic_potential import ComplexPoly, antiderivative
from kinkforge.orbit_solver import (
    closed_form_energy,
    constant_profile,
    quadrature_energy,
    segment_coordinates,
    transport_constant,
    verify_orbit,
)

SQ2 = np.sqrt(2.0)


def test_transport_constant_examples():
    assert transport_constant(antiderivative(preset("phi4")), -1, 1) == pytest.approx(-1)
    assert transport_constant(antiderivative(preset("iphi4")), -1j, 1j) == pytest.approx(1j)
    with pytest.raises(DegenerateSegment, match=r"g\(a\+\) = g\(a-\)"):
        transport_constant(antiderivative(preset("triple")), -1, 1)


def test_closed_form_energy_examples():
    assert closed_form_energy(antiderivative(preset("phi4")), -1, 1) == pytest.approx(SQ2 * 4 / 3, rel=1e-14)
    assert closed_form_energy(antiderivative(preset("triple")), -1, 0) == pytest.approx(SQ2 / 4, rel=1e-14)
    with pytest.raises(DegenerateSegment):
        closed_form_energy(antiderivative(preset("phi4")), 1, 1)


def test_phi4_orbit_is_tanh(phi4):
    f, prof = phi4
    assert np.max(np.abs(prof.e - np.tanh(SQ2 * prof.x))) <= 1e-6
    np.testing.assert_allclose(prof.de, SQ2 / np.cosh(SQ2 * prof.x) ** 2, atol=1e-8)
    assert prof.e[prof.N // 2] == pytest.approx(0, abs=1e-12)


def test_iphi4_orbit_is_rotated_tanh(iphi4):
    f, prof = iphi4
    assert np.max(np.abs(prof.e - 1j * np.tanh(SQ2 * prof.x))) <= 1e-6


def test_triple_orbit_closed_form(triple):
    f, prof = triple
    assert np.max(np.abs(prof.e - triple_closed_form(prof))) <= 1e-6


def test_triple_outer_pair_is_degenerate():
    f = preset("triple")
    ws = wells(f)
    with pytest.raises(DegenerateSegment):
        connect(f, ws[0], ws[2])


def test_blocked_by_well():
    # g(-1) > g(0) > g(3): the real branch leaving -1 toward 3 runs into the well at 0
    f = ComplexPoly.from_roots([-1, 0, 1, 3])
    with pytest.raises(BlockedByWell):
        connect(f, -1, 3, N=256)


def test_no_connection_between_far_wells():
    with pytest.raises(LeftSegment):
        connect(ComplexPoly.from_roots([-2, 1j, 2]), -2, 2, N=256)


@pytest.mark.parametrize("name", ["phi4", "iphi4", "triple"])
def test_verify_orbit_diagnostics(all_presets, name):
    f, prof = all_presets[name]
    d = verify_orbit(f, prof)
    assert d.equipartition <= 1e-9
    assert d.first_order <= 1e-9
    assert d.second_order <= 1e-3
    assert d.segment_deviation <= 1e-6 * abs(closed_form_energy(antiderivative(f), prof.a_minus, prof.a_plus))
    assert d.segment_monotone
    assert d.fitted_k_minus == pytest.approx(d.k_minus, rel=0.01)
    assert d.fitted_k_plus == pytest.approx(d.k_plus, rel=0.01)


def test_decay_rates(phi4, triple):
    assert verify_orbit(*phi4).fitted_k_minus == pytest.approx(2 * SQ2, rel=0.01)
    d = verify_orbit(*triple)
    assert d.fitted_k_minus == pytest.approx(2 * SQ2, rel=0.01)
    assert d.fitted_k_plus == pytest.approx(SQ2, rel=0.01)


def test_constant_profile_has_zero_residuals():
    f = preset("phi4")
    d = verify_orbit(f, constant_profile(f, 1.0, X=5.0, N=64))
    assert d.equipartition == 0.0
    assert d.second_order == 0.0
    assert d.first_order == 0.0


@pytest.mark.parametrize("name,expected", [("phi4", 1.8856181), ("iphi4", 1.8856181), ("triple", 0.3535534)])
def test_quadrature_energy(all_presets, name, expected):
    f, prof = all_presets[name]
    exact = closed_form_energy(antiderivative(f), prof.a_minus, prof.a_plus)
    assert exact == pytest.approx(expected, abs=1e-7)
    assert quadrature_energy(f, prof) == pytest.approx(exact, rel=1e-7)
    assert prof.energy == pytest.approx(exact, rel=1e-7)


def test_quadrature_energy_needs_grid():
    f = preset("phi4")
    with pytest.raises(InvalidGrid):
        quadrature_energy(f, constant_profile(f, 1.0, X=1.0, N=4))


def test_connect_rejects_bad_options():
    f = preset("phi4")
    with pytest.raises(TypeError):
        connect(f, -1, 1, bogus=1)
    with pytest.raises(InvalidGrid):
        connect(f, -1, 1, N=7)
    with pytest.raises(InvalidGrid):
        connect(f, -1, 1, X=-1.0)


@pytest.mark.parametrize("name", ["phi4", "iphi4", "triple"])
def test_segment_coordinates_monotone(all_presets, name):
    f, prof = all_presets[name]
    s, t = segment_coordinates(f, prof)
    length = closed_form_energy(antiderivative(f), prof.a_minus, prof.a_plus) / SQ2
    ds = np.diff(s)
    assert np.all(ds >= 0)
    # strict wherever floats can tell neighbours apart: distinct stored nodes,
    # and increments near the far end still above one ulp of the length
    resolvable = (prof.e[1:] != prof.e[:-1]) & (s[1:] < length * (1 - 1e-9))
    assert resolvable.sum() > prof.N // 2
    assert np.all(ds[resolvable] > 0)
    assert s[0] >= 0 and s[-1] <= length * (1 + 1e-15)
    assert np.max(np.abs(t)) <= 1e-6 * length


def test_deterministic():
    f = preset("triple")
    a = connect(f, -1, 0, N=512)
    b = connect(f, -1, 0, N=512)
    assert np.array_equal(a.e, b.e) and np.array_equal(a.de, b.de)
    assert a.energy == b.energy


@pytest.mark.parametrize("phi,b", [(0.7, 0.3 - 0.2j), (-2.1, 1.5j), (np.pi / 3, -0.4)])
def test_rotation_translation_equivariance(phi, b):
    f = preset("triple")
    rot = np.exp(1j * phi)
    g = f.compose_affine(np.conj(rot), -np.conj(rot) * b)
    base = connect(f, -1, 0)
    moved = connect(g, b - rot, b)
    assert np.max(np.abs(moved.e - (b + rot * base.e))) <= 1e-9


@pytest.mark.parametrize("c", [2.0, 0.5j, -1.5 + 0.5j])
def test_scaling(c):
    f = preset("phi4")
    base = connect(f, -1, 1)
    scaled = connect(f * c, -1, 1, X=12.0 / abs(c))
    assert scaled.energy == pytest.approx(abs(c) * base.energy, rel=1e-7)
    # x on the scaled grid is x/|c| on the base grid, up to the rotated transport constant
    assert np.max(np.abs(scaled.e - base.e)) <= 1e-8


def test_profile_evaluate_and_translate(phi4):
    f, prof = phi4
    xs = np.array([-20.0, -3.3, 0.123, 5.0, 30.0])
    np.testing.assert_allclose(prof.evaluate(xs), np.tanh(SQ2 * xs), atol=1e-8)
    np.testing.assert_allclose(prof.evaluate(xs, derivative=True), SQ2 / np.cosh(SQ2 * xs) ** 2, atol=1e-7)
    e, de = prof.translate(0.5)
    np.testing.assert_allclose(e, np.tanh(SQ2 * (prof.x - 0.5)), atol=1e-8)
