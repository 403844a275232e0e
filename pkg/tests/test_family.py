import math

import pytest

from cbstab.errors import DomainError, QuadratureFailure
from cbstab.family import (
    FamilyPoint,
    alpha,
    c_bienergy_tangent_form_m4,
    c_constant,
    epsilon_schedule,
    evaluate_family,
    pointwise_densities,
    upper_bound,
)
from cbstab.quadrature import QuadratureConfig, sphere_volume

PI = math.pi


def test_alpha_identity_at_t_one():
    for r in (0.0, 0.3, 1.0, PI / 2, 2.8, PI):
        assert alpha(1.0, r) == pytest.approx(r, abs=1e-15)


def test_alpha_endpoints_exact():
    for t in (1e-8, 0.37, 1.0, 42.0, 1e8):
        assert alpha(t, 0.0) == 0.0
        assert alpha(t, PI) == PI


def test_alpha_example_value():
    # tan(pi/4) = 1, so alpha_2(pi/2) = 2*arctan(2)
    assert alpha(2.0, PI / 2) == pytest.approx(2.214297435588181, rel=1e-12)


def test_alpha_monotone():
    rs = [0.1 * k for k in range(1, 31)]
    values = [alpha(2.5, r) for r in rs]
    assert all(b > a for a, b in zip(values, values[1:]))
    ts = [0.1, 0.5, 1.0, 2.0, 10.0]
    values = [alpha(t, 1.3) for t in ts]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_alpha_reflection_identity():
    # alpha_{1/t}(r) = pi - alpha_t(pi - r), the source of the t <-> 1/t symmetry
    for t in (0.2, 0.9, 3.0, 40.0):
        for r in (0.1, 0.7, PI / 2, 2.0, 3.0):
            lhs = alpha(1.0 / t, r)
            rhs = PI - alpha(t, PI - r)
            assert lhs == pytest.approx(rhs, abs=1e-12)


def test_alpha_domain_errors():
    with pytest.raises(DomainError):
        alpha(0.0, 1.0)
    with pytest.raises(DomainError):
        alpha(-2.0, 1.0)
    with pytest.raises(DomainError):
        alpha(1.0, -0.1)
    with pytest.raises(DomainError):
        alpha(1.0, PI + 0.1)
    with pytest.raises(DomainError):
        alpha(1e9, 1.0)  # t range guard
    with pytest.raises(DomainError):
        alpha(1e-9, 1.0)


def test_family_point_validation():
    FamilyPoint(5, 0.25)
    with pytest.raises(DomainError):
        FamilyPoint(1, 0.25)
    with pytest.raises(DomainError):
        FamilyPoint(5, 0.0)


def test_densities_at_identity():
    for m in (2, 4, 7):
        for r in (0.2, PI / 2, 2.9):
            dphi, tau = pointwise_densities(m, 1.0, r)
            assert dphi == pytest.approx(m, rel=1e-13)
            assert tau == pytest.approx(0.0, abs=1e-13)


def test_densities_half_angle_oracle():
    # t=2 at r=pi/2: sin(2 arctan 2) = 4/5 and cos(2 arctan 2) = -3/5
    dphi, tau = pointwise_densities(5, 2.0, PI / 2)
    assert dphi == pytest.approx(16.0 / 5.0, rel=1e-14)
    assert tau == pytest.approx(1296.0 / 625.0, rel=1e-13)


def test_densities_vanish_for_small_t():
    dphi, tau = pointwise_densities(4, 1e-8, 1.0)
    assert dphi < 1e-14
    assert tau < 1e-14


def test_densities_domain():
    with pytest.raises(DomainError):
        pointwise_densities(4, 1.0, 0.0)
    with pytest.raises(DomainError):
        pointwise_densities(4, 1.0, PI)
    with pytest.raises(DomainError):
        pointwise_densities(1, 1.0, 1.0)


def test_identity_map_closed_forms():
    for m in range(2, 9):
        ev = evaluate_family(m, 1.0)
        omega_m = sphere_volume(m)
        assert ev.energy == pytest.approx(0.5 * m * omega_m, rel=1e-12)
        assert abs(ev.bienergy) <= 1e-12
        if m >= 4:
            want = m * (m - 1) * (m - 3) / 3.0 * omega_m
            assert ev.c_bienergy == pytest.approx(want, rel=1e-12)


def test_h4c_is_constant():
    target = 32.0 * PI ** 2 / 3.0
    for t in (0.1, 0.37, 1.0, 4.2, 10.0):
        ev = evaluate_family(4, t)
        assert ev.c_bienergy == pytest.approx(target, rel=1e-10)


def test_h4c_tangent_form_cross_check():
    target = 32.0 * PI ** 2 / 3.0
    for t in (0.37, 1.0, 2.5):
        via_x = c_bienergy_tangent_form_m4(t)
        assert via_x == pytest.approx(target, rel=1e-10)
        assert via_x == pytest.approx(evaluate_family(4, t).c_bienergy, rel=1e-10)


def test_s2_maps_are_harmonic():
    # conformal self-maps of S^2 have vanishing tension for every t
    for t in (0.2, 1.0, 3.7):
        ev = evaluate_family(2, t)
        assert ev.bienergy == 0.0
        assert ev.energy > 0.0


def test_decomposition_identity():
    for m in (3, 4, 5, 6):
        coef = 2.0 * (m - 1) * (m - 3) / 3.0
        for t in (0.3, 1.0, 2.4):
            ev = evaluate_family(m, t)
            combined = (ev.c_bienergy_error + ev.bienergy_error
                        + abs(coef) * ev.energy_error + 1e-11)
            assert abs(ev.c_bienergy - (ev.bienergy + coef * ev.energy)) <= combined


def test_inversion_symmetry():
    for m in (4, 5, 6):
        for t in (0.2, 0.5, 2.0, 5.0):
            a = evaluate_family(m, t)
            b = evaluate_family(m, 1.0 / t)
            for va, vb in ((a.energy, b.energy), (a.bienergy, b.bienergy),
                           (a.c_bienergy, b.c_bienergy)):
                assert abs(va - vb) <= 1e-9 * max(1.0, abs(va), abs(vb))


def test_positivity():
    for m in (4, 5, 6, 7, 8):
        for t in (0.01, 0.37, 1.0, 2.0, 50.0):
            assert evaluate_family(m, t).c_bienergy > 0.0


def test_evaluate_family_domain():
    with pytest.raises(DomainError):
        evaluate_family(1, 1.0)
    with pytest.raises(DomainError):
        evaluate_family(5, 0.0)
    with pytest.raises(DomainError):
        evaluate_family(5, 1e9)


def test_evaluate_family_quadrature_failure():
    starved = QuadratureConfig(base_nodes=4, initial_panels=1, max_doublings=1,
                               rel_tolerance=1e-30, abs_tolerance=1e-300)
    with pytest.raises(QuadratureFailure):
        evaluate_family(5, 0.2, starved)


def test_c_constant_values():
    assert c_constant(5) == pytest.approx(752.0 * PI ** 2 / 9.0, rel=1e-13)
    assert c_constant(6) == pytest.approx(62.0 * PI ** 3, rel=1e-13)
    for m in range(5, 12):
        assert c_constant(m) > 0.0
    with pytest.raises(DomainError):
        c_constant(4)


def test_epsilon_schedule_certificate():
    for m, eps in ((5, 1.0), (5, 0.1), (6, 0.5)):
        t, cert = epsilon_schedule(m, eps)
        assert 0.0 < t < cert.delta_prime
        assert cert.eta == pytest.approx(eps / c_constant(m), rel=1e-13)
        assert cert.rho == pytest.approx(PI - cert.eta / 2.0, rel=1e-13)
        assert cert.k == pytest.approx(math.tan(cert.rho / 2.0), rel=1e-12)
        assert cert.delta < PI / 2
        assert cert.delta_prime == pytest.approx(math.tan(cert.delta / 2.0) / cert.k,
                                                 rel=1e-13)
        # defining inequality of delta'
        assert math.sin(2.0 * math.atan(t * cert.k)) ** 2 < cert.eta / (2.0 * cert.rho)


def test_epsilon_schedule_guarantee():
    for m, eps in ((5, 1.0), (5, 0.1)):
        t, _ = epsilon_schedule(m, eps)
        ev = evaluate_family(m, t)
        assert ev.c_bienergy + ev.c_bienergy_error < eps


def test_epsilon_schedule_huge_eps_clamps():
    t, cert = epsilon_schedule(5, 1e9)
    assert cert.eta <= PI
    assert cert.rho > 0.0
    assert cert.delta < PI / 2
    assert t > 0.0


def test_epsilon_schedule_domain():
    with pytest.raises(DomainError):
        epsilon_schedule(4, 1.0)
    with pytest.raises(DomainError):
        epsilon_schedule(5, 0.0)
    with pytest.raises(DomainError):
        epsilon_schedule(5, -2.0)


def test_upper_bound_at_identity():
    # int sin^2 = pi/2, and the true value (40/3) omega_5 sits below C*pi/2
    bound = upper_bound(5, 1.0)
    assert bound == pytest.approx(c_constant(5) * PI / 2.0, rel=1e-11)
    ev = evaluate_family(5, 1.0)
    assert ev.c_bienergy < bound


def test_upper_bound_strict():
    for m in (5, 6):
        for t in (0.01, 0.5, 2.0, 80.0):
            ev = evaluate_family(m, t)
            bound = upper_bound(m, t)
            assert bound > 0.0
            assert ev.c_bienergy + ev.c_bienergy_error < bound


def test_concurrent_evaluations_are_deterministic():
    from concurrent.futures import ThreadPoolExecutor

    grid = [(m, t) for m in (4, 5) for t in (0.3, 1.0, 2.7)]
    sequential = [evaluate_family(m, t) for m, t in grid]
    with ThreadPoolExecutor(max_workers=6) as pool:
        concurrent = list(pool.map(lambda mt: evaluate_family(*mt), grid))
    assert concurrent == sequential
