import math

import pytest

import opuc


def test_constant_closed_form():
    d = opuc.VerblunskyDescriptor.constant(0.5)
    z = 0.3 + 0.2j
    v = opuc.f_plus(d, 0, z)
    assert abs(v.value - opuc.constant_alpha_closed_form(0.5, z)) < 1e-10


def test_sigma_ac_band_endpoints():
    est = opuc.sigma_ac_estimate(opuc.VerblunskyDescriptor.constant(0.5))
    assert not est.approximate
    arcs = est.arcs.arcs()
    assert len(arcs) == 1
    lo, hi = arcs[0]
    assert abs(lo - math.pi / 3) < 0.01
    assert abs(hi - 5 * math.pi / 3) < 0.01


def test_descriptor_json_roundtrip():
    d = opuc.VerblunskyDescriptor.lopez(0, 2, 0.5, 0.5, 0.3, 0.1)
    d2 = opuc.VerblunskyDescriptor.from_json(d.to_json())
    assert d2.to_json() == d.to_json()


def test_lopez_moments():
    d = opuc.VerblunskyDescriptor.lopez(
        0, 2, 0.5, 0.5, 0.0, 0.0, opuc.Orientation.whole_line
    )
    assert abs(opuc.power_diagonal(d, 0, 1)) < 1e-12
    assert abs(opuc.power_diagonal(d, 0, 2) - (-0.25)) < 1e-12


def test_free_case_jacobi_resolvent():
    d = opuc.JacobiDescriptor.constant(opuc.JacobiPair(1.0, 0.0))
    z = 0.3 + 1.1j
    g = opuc.resolvent_diagonal(d, 0, z)
    # G = -1/sqrt(z^2 - 4) with the branch matching Im m > 0
    assert abs((z * z - 4) * g * g - 1) < 1e-8


def test_right_limits_of_sparse():
    d = opuc.VerblunskyDescriptor.sparse(4, 0.5)
    limits = opuc.right_limits(d)
    assert len(limits) == 2


def test_numeric_error_surfaces():
    with pytest.raises(opuc.NumericError):
        opuc.ratio_two_point(0.5, 0.0, 0.25, 0.0)
