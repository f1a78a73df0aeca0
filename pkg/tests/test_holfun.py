import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opcalc.errors import DomainError
from opcalc.holfun import (
    BernsteinFunction,
    HalfPlane,
    add,
    arccot_fn,
    arg_invert,
    arg_scale,
    arg_shift,
    band_limited,
    bernstein_resolvent,
    cayley,
    compose_power,
    constant,
    exp,
    exp_arccot,
    mul,
    parse_complex,
    parse_function,
    phi,
    power_exp,
    resolvent,
    scalar_mul,
    sector_exp,
    sectorial_limits,
)

RNG = np.random.default_rng(20240811)


def catalog():
    return [
        exp(1.0), exp(2.5), resolvent(1.0), resolvent(2 + 1j), cayley(1),
        cayley(4), phi(1.0), phi(10.0), power_exp(0.0), power_exp(1.0),
        arccot_fn(), exp_arccot(), sector_exp(0.5, 1.0),
        bernstein_resolvent(BernsteinFunction("sqrt"), 1.0),
        band_limited([(0.5, 1.0), (2.0, -0.3)]), constant(2 - 1j),
        add(exp(1.0), scalar_mul(0.5, exp(2.0))),
        mul(resolvent(1.0), resolvent(1.0)),
        arg_shift(resolvent(1.0), 1.0), arg_scale(cayley(2), 3.0),
        compose_power(resolvent(1.0), 0.5), arg_invert(exp(1.0)),
    ]


def interior_points(f, n=100):
    psi = f.domain.half_angle
    r = 10.0 ** RNG.uniform(-1.5, 1.5, n)
    a = RNG.uniform(-0.85, 0.85, n) * psi
    z = r * np.exp(1j * a)
    # keep a safe distance from the boundary rays and the origin
    return z[np.abs(np.abs(a) - psi) * r > 0.02]


class TestEval:
    def test_resolvent_at_one(self):
        assert resolvent(1.0)(1.0) == pytest.approx(0.5)

    def test_cayley_at_one(self):
        assert cayley(1)(1.0) == pytest.approx(0.0)

    def test_arccot_at_one(self):
        assert arccot_fn()(1.0) == pytest.approx(np.pi / 4)

    def test_domain_error_left_half_plane(self):
        with pytest.raises(DomainError):
            exp(1.0)(-1.0 + 0j)
        with pytest.raises(DomainError):
            exp(1.0)(1j)          # boundary is outside the open domain

    def test_phi_formula(self):
        z = 2.0 + 1.0j
        assert phi(3.0)(z) == pytest.approx(z / (z + 1) * np.exp(-3.0 / z))


class TestDeriv:
    def test_exp_rate_two(self):
        z = 0.7 + 0.2j
        assert exp(2.0).deriv(z) == pytest.approx(-2 * np.exp(-2 * z))

    def test_resolvent_at_half(self):
        assert resolvent(1.0).deriv(0.5 + 0j) == pytest.approx(-1.5 ** -2)

    def test_cayley_matches_central_difference(self):
        f = cayley(1)
        z = 1.0 + 1.0j
        h = 1e-6
        fd = (f(z + h) - f(z - h)) / (2 * h)
        assert abs(f.deriv(z) - fd) <= 1e-7 * (1 + abs(f.deriv(z)))

    @pytest.mark.parametrize("f", catalog(), ids=lambda f: f.describe()[:40])
    def test_all_catalog_derivatives(self, f):
        z = interior_points(f)
        h = 1e-6
        fd = (f(z + h) - f(z - h)) / (2 * h)
        dv = f.deriv(z)
        assert np.all(np.abs(dv - fd) <= 2e-7 * (1.0 + np.abs(dv)))


class TestTransforms:
    def test_compose_power_identity(self):
        f = exp(1.0)
        assert compose_power(f, 1.0) is f

    def test_compose_power_resolvent_at_four(self):
        g = compose_power(resolvent(1.0), 0.5)
        assert g(4.0) == pytest.approx(1.0 / 3.0)

    def test_compose_power_exp_is_sector_exp(self):
        g = compose_power(exp(1.0), 0.5)
        assert g.kind == "sector_exp"
        z = 2.0 + 0.5j
        assert g(z) == pytest.approx(np.exp(-np.sqrt(z)))

    def test_compose_power_composition_law(self):
        f = resolvent(1.0)
        a, b = 0.7, 0.9
        g1 = compose_power(compose_power(f, a), b)
        g2 = compose_power(f, a * b)
        z = interior_points(g2, 50)
        assert np.allclose(g1(z), g2(z), atol=1e-12, rtol=1e-12)

    def test_compose_power_domain_error(self):
        with pytest.raises(DomainError):
            compose_power(exp(1.0), 3.0)    # gamma * pi/2 > pi

    def test_arg_scale_exp(self):
        g = arg_scale(exp(1.0), 3.0)
        assert g.kind == "exp" and g.params["t"] == 3.0

    def test_arg_shift_resolvent(self):
        g = arg_shift(resolvent(1.0), 1.0)
        assert g.kind == "resolvent" and g.params["lam"] == 2.0

    def test_mul_resolvents(self):
        g = mul(resolvent(1.0), resolvent(1.0))
        assert g(1.0) == pytest.approx(0.25)
        assert g.good_for_green

    def test_mul_commutes_and_associates(self):
        f, g, h = exp(1.0), resolvent(2.0), cayley(2)
        z = interior_points(exp(1.0), 30)
        assert np.allclose(mul(f, g)(z), mul(g, f)(z), rtol=1e-15)
        assert np.allclose(mul(mul(f, g), h)(z), mul(f, mul(g, h))(z),
                           rtol=5e-15)

    def test_arg_invert_formula(self):
        g = arg_invert(resolvent(1.0))
        z = 2.0 + 1.0j
        assert g(z) == pytest.approx(1.0 / (1.0 + 1.0 / z))
        fd = (g(z + 1e-6) - g(z - 1e-6)) / 2e-6
        assert g.deriv(z) == pytest.approx(fd, rel=1e-6)


class TestLimits:
    def test_exp_limits(self):
        assert sectorial_limits(exp(1.0)) == pytest.approx((1.0, 0.0))

    def test_cayley_limits(self):
        f0, finf = sectorial_limits(cayley(1))
        assert f0 == pytest.approx(-1.0)
        assert finf == pytest.approx(1.0)

    def test_phi_limits(self):
        f0, finf = sectorial_limits(phi(1.0))
        assert abs(f0) < 1e-6
        assert finf == pytest.approx(1.0, abs=1e-6)

    def test_probes_match_exact_limits(self):
        for f in [exp(2.5), resolvent(2 + 1j), cayley(4), power_exp(1.0),
                  arccot_fn(), exp_arccot(), sector_exp(0.5, 1.0),
                  band_limited([(0.5, 1.0), (2.0, -0.3)])]:
            f0, finf = sectorial_limits(f)
            assert f0 == pytest.approx(f.limit_at("zero"), abs=2e-6)
            assert finf == pytest.approx(f.limit_at("inf"), abs=2e-6)

    def test_cache_write_once(self):
        f = exp(1.0)
        first = sectorial_limits(f)
        assert sectorial_limits(f) is first


class TestBernstein:
    @pytest.mark.parametrize("g", [
        BernsteinFunction("sqrt"),
        BernsteinFunction("power", 0.3),
        BernsteinFunction("log1p"),
        BernsteinFunction("rational_z_over_1pz"),
    ], ids=lambda g: g.kind)
    def test_bernstein_signs_on_log_grid(self, g):
        t = np.logspace(-3, 3, 121)
        assert np.all(g(t).real > 0)
        assert np.all(g.deriv(t).real > 0)
        assert np.all(g.deriv2(t).real < 0)

    @given(st.floats(min_value=0.05, max_value=0.95))
    @settings(max_examples=25, deadline=None)
    def test_power_bernstein_property(self, a):
        g = BernsteinFunction("power", a)
        t = np.logspace(-2, 2, 41)
        assert np.all(g(t).real > 0)
        assert np.all(g.deriv(t).real > 0)
        assert np.all(g.deriv2(t).real < 0)

    def test_bernstein_resolvent_limits(self):
        f = bernstein_resolvent(BernsteinFunction("sqrt"), 2.0)
        assert f.limit_at("zero") == pytest.approx(0.5)
        assert f.limit_at("inf") == 0.0
        fr = bernstein_resolvent(BernsteinFunction("rational_z_over_1pz"), 1.0)
        assert fr.limit_at("inf") == pytest.approx(0.5)


class TestParser:
    def test_complex_literals(self):
        assert parse_complex("1+0i") == 1.0
        assert parse_complex("2i") == 2j
        assert parse_complex("-0.3") == -0.3
        assert parse_complex("1.5-2.5i") == 1.5 - 2.5j

    def test_examples_from_interface(self):
        assert parse_function("exp(t=2)").params["t"] == 2.0
        assert parse_function("resolvent(1+0i)").params["lam"] == 1.0
        assert parse_function("cayley^12").params["n"] == 12
        assert parse_function("phi(t=100)").params["t"] == 100.0
        assert parse_function("power_exp(nu=1)").params["nu"] == 1.0
        f = parse_function("bernstein_resolvent(g=sqrt,lambda=1+0i)")
        assert f.params["lam"] == 1.0 and f.params["g"].kind == "sqrt"
        f = parse_function("bandlimited[(0.5,1),(2,-0.3)]")
        assert f.params["terms"] == ((0.5, 1.0 + 0j), (2.0, -0.3 + 0j))

    def test_power_of_non_cayley(self):
        f = parse_function("resolvent(1)^2")
        assert f(1.0) == pytest.approx(0.25)

    def test_unknown_function(self):
        with pytest.raises(ValueError):
            parse_function("zeta(2)")
