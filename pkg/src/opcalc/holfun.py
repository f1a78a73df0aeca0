"""Catalog of holomorphic functions on the right half-plane and sectors.

The catalog is closed: every entry carries an exact analytic derivative,
exact sectorial limits at 0 and infinity, boundedness and Green-formula
flags, and characteristic scales consumed by the quadrature engine.
Arbitrary user lambdas are deliberately not accepted; the norm and
membership machinery needs controlled derivatives and tail behaviour.

All evaluators are numpy-vectorized and use principal branches for logs
and powers; arccot is (1/2i) log((z+i)/(z-i)) with the principal log.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoLimit
from .quad import QuadConfig

__all__ = [
    "Domain",
    "HalfPlane",
    "Sector",
    "HolFunction",
    "BernsteinFunction",
    "exp",
    "resolvent",
    "resolvent_pow",
    "cayley",
    "phi",
    "power_exp",
    "arccot_fn",
    "exp_arccot",
    "sector_exp",
    "bernstein_resolvent",
    "band_limited",
    "constant",
    "add",
    "mul",
    "scalar_mul",
    "arg_scale",
    "arg_shift",
    "compose_power",
    "arg_invert",
    "eval_fn",
    "deriv_fn",
    "sectorial_limits",
    "parse_function",
    "arccot_scalar",
]

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Domain:
    """Open sector of half-angle ``half_angle`` (pi/2 = right half-plane)."""

    half_angle: float

    def __post_init__(self):
        if not 0.0 < self.half_angle <= np.pi + 1e-12:
            raise DomainError(f"sector half-angle {self.half_angle} not in (0, pi]")

    @property
    def is_half_plane(self) -> bool:
        return abs(self.half_angle - np.pi / 2) < 1e-14

    def contains(self, z, closure=False) -> np.ndarray:
        z = np.asarray(z, complex)
        ang = np.abs(np.angle(z))
        tol = 1e-14
        if closure:
            inside = ang <= self.half_angle + 1e-12
        else:
            inside = ang < self.half_angle - tol
        return inside & (np.abs(z) > 0)

    def __repr__(self):
        if self.is_half_plane:
            return "HalfPlane"
        return f"Sector({self.half_angle:.6g})"


def HalfPlane() -> Domain:
    return Domain(np.pi / 2)


def Sector(psi: float) -> Domain:
    return Domain(float(psi))


def arccot_scalar(z):
    """arccot on C_+ via the principal branch: (1/2i) log((z+i)/(z-i))."""
    z = np.asarray(z, complex)
    return np.log((z + 1j) / (z - 1j)) / 2j


@dataclass(frozen=True)
class BernsteinFunction:
    """Bernstein functions used for subordination and resolvent estimates."""

    kind: str                       # sqrt | power | log1p | rational_z_over_1pz
    alpha: float = 0.5              # exponent for kind == "power"

    def __post_init__(self):
        if self.kind not in ("sqrt", "power", "log1p", "rational_z_over_1pz"):
            raise ValueError(f"unknown Bernstein kind {self.kind!r}")
        if self.kind == "power" and not 0.0 < self.alpha < 1.0:
            raise ValueError("power exponent must lie in (0, 1)")

    def __call__(self, z):
        z = np.asarray(z, complex)
        if self.kind == "sqrt":
            return np.sqrt(z)
        if self.kind == "power":
            return z ** self.alpha
        if self.kind == "log1p":
            return np.log(1.0 + z)
        return z / (1.0 + z)

    def deriv(self, z):
        z = np.asarray(z, complex)
        if self.kind == "sqrt":
            return 0.5 * z ** -0.5
        if self.kind == "power":
            return self.alpha * z ** (self.alpha - 1.0)
        if self.kind == "log1p":
            return 1.0 / (1.0 + z)
        return 1.0 / (1.0 + z) ** 2

    def deriv2(self, z):
        z = np.asarray(z, complex)
        if self.kind == "sqrt":
            return -0.25 * z ** -1.5
        if self.kind == "power":
            return self.alpha * (self.alpha - 1.0) * z ** (self.alpha - 2.0)
        if self.kind == "log1p":
            return -1.0 / (1.0 + z) ** 2
        return -2.0 / (1.0 + z) ** 3

    def limit_at_inf(self):
        return 1.0 if self.kind == "rational_z_over_1pz" else np.inf

    def sector_zero(self, lam: complex):
        """Zero of lam + g(z), or None if none exists on the slit plane."""
        lam = complex(lam)
        neg = -lam
        if self.kind == "sqrt":
            if abs(np.angle(neg)) < np.pi / 2:
                return neg ** 2
            return None
        if self.kind == "power":
            if abs(np.angle(neg)) < self.alpha * np.pi:
                return neg ** (1.0 / self.alpha)
            return None
        if self.kind == "log1p":
            if abs(lam.imag) < np.pi:
                z = np.exp(-lam) - 1.0
                return z if z != 0 else None
            return None
        if abs(1.0 + lam) < 1e-300:
            return None
        z = -lam / (1.0 + lam)
        return z if z != 0 else None


@dataclass(frozen=True, eq=False)
class HolFunction:
    """A catalog holomorphic function with exact derivative and metadata."""

    kind: str
    params: dict = field(default_factory=dict)
    domain: Domain = field(default_factory=HalfPlane)
    children: tuple = ()
    f0: complex | None = None          # sectorial limit at 0
    finf: complex | None = None        # sectorial limit at infinity
    bounded: bool = True
    good_for_green: bool = False
    scales: tuple = (1.0,)
    probed_limits: list = field(default_factory=list)   # write-once cache

    # -- evaluation ----------------------------------------------------

    def __call__(self, z, closure=False):
        return eval_fn(self, z, closure=closure)

    def deriv(self, z, closure=False):
        return deriv_fn(self, z, closure=closure)

    def limit_at(self, which: str):
        v = self.f0 if which == "zero" else self.finf
        if v is None:
            raise NoLimit(f"{self.kind} has no sectorial limit at {which}")
        return complex(v)

    def restricted(self, psi: float) -> "HolFunction":
        """The same function viewed on the smaller sector Sigma_psi."""
        if psi > self.domain.half_angle + 1e-12:
            raise DomainError(
                f"cannot restrict {self.kind} (angle {self.domain.half_angle:.4g}) "
                f"to the larger sector of angle {psi:.4g}")
        return HolFunction(self.kind, self.params, Domain(psi), self.children,
                           self.f0, self.finf, self.bounded,
                           self.good_for_green, self.scales)

    def describe(self) -> str:
        ps = ",".join(f"{k}={v}" for k, v in self.params.items())
        if self.children:
            inner = ";".join(c.describe() for c in self.children)
            return f"{self.kind}({ps}|{inner})"
        return f"{self.kind}({ps})"


def _check_domain(f: HolFunction, z, closure):
    z = np.asarray(z, complex)
    if not np.all(f.domain.contains(z, closure=closure)):
        bad = z[~f.domain.contains(z, closure=closure)]
        raise DomainError(
            f"point {bad.ravel()[0]} outside the open domain {f.domain} "
            f"of {f.kind}")
    return z


def eval_fn(f: HolFunction, z, closure=False):
    """Value of the catalog formula at z (DomainError outside the domain)."""
    z = _check_domain(f, z, closure)
    return _EVAL[f.kind](f, z)


def deriv_fn(f: HolFunction, z, closure=False):
    """Exact analytic derivative of the catalog formula at z."""
    z = _check_domain(f, z, closure)
    return _DERIV[f.kind](f, z)


# -- catalog constructors ----------------------------------------------


def exp(t: float) -> HolFunction:
    """e_t(z) = exp(-t z), t >= 0."""
    t = float(t)
    if t < 0:
        raise DomainError("exp rate must be >= 0")
    if t == 0:
        return constant(1.0)
    return HolFunction("exp", {"t": t}, HalfPlane(), f0=1.0, finf=0.0,
                       bounded=True, scales=(t, 1.0 / t))


def resolvent(lam: complex) -> HolFunction:
    """r_lam(z) = (lam + z)^{-1}, lam in C_+."""
    lam = complex(lam)
    if lam.real <= 0:
        raise DomainError("resolvent parameter must have Re > 0")
    ang = np.pi - abs(np.angle(lam))
    return HolFunction("resolvent", {"lam": lam}, Domain(min(np.pi, ang)),
                       f0=1.0 / lam, finf=0.0, bounded=True,
                       good_for_green=True, scales=(abs(lam),))


def resolvent_pow(lam: complex, p: int) -> HolFunction:
    """(lam + z)^{-p} for integer p >= 1 (Laplace transform of t^{p-1}e^{-lam t}/(p-1)!)."""
    lam = complex(lam)
    p = int(p)
    if lam.real <= 0 or p < 1:
        raise DomainError("resolvent_pow needs Re lam > 0 and p >= 1")
    if p == 1:
        return resolvent(lam)
    ang = np.pi - abs(np.angle(lam))
    return HolFunction("resolvent_pow", {"lam": lam, "p": p},
                       Domain(min(np.pi, ang)), f0=lam ** -p, finf=0.0,
                       bounded=True, good_for_green=True, scales=(abs(lam),))


def cayley(n: int = 1) -> HolFunction:
    """V^n(z) = ((z-1)/(z+1))^n."""
    n = int(n)
    if n < 1:
        raise DomainError("cayley power must be >= 1")
    return HolFunction("cayley_power", {"n": n}, HalfPlane(),
                       f0=float((-1) ** n), finf=1.0, bounded=True,
                       scales=(1.0, float(n)))


def phi(t: float) -> HolFunction:
    """phi_t(z) = z (z+1)^{-1} e^{-t/z}."""
    t = float(t)
    if t <= 0:
        raise DomainError("phi needs t > 0")
    return HolFunction("phi_t", {"t": t}, HalfPlane(), f0=0.0, finf=1.0,
                       bounded=True, scales=(1.0, t, 1.0 / t))


def power_exp(nu: float) -> HolFunction:
    """f_nu(z) = z^nu e^{-z}, nu >= 0."""
    nu = float(nu)
    if nu < 0:
        raise DomainError("power_exp needs nu >= 0")
    return HolFunction("power_exp", {"nu": nu}, HalfPlane(),
                       f0=1.0 if nu == 0 else 0.0, finf=0.0,
                       bounded=(nu == 0), scales=(1.0, nu + 1.0))


def arccot_fn() -> HolFunction:
    """arccot z = (1/2i) log((z+i)/(z-i)), unbounded on C_+."""
    return HolFunction("arccot", {}, HalfPlane(), f0=np.pi / 2, finf=0.0,
                       bounded=False, scales=(1.0,))


def exp_arccot() -> HolFunction:
    """exp(arccot z): bounded on C_+ but with no continuous boundary value at i."""
    return HolFunction("exp_arccot", {}, HalfPlane(),
                       f0=complex(np.exp(np.pi / 2)), finf=1.0, bounded=True,
                       scales=(1.0,))


def sector_exp(gamma: float, lam: complex) -> HolFunction:
    """e_{gamma,lam}(z) = exp(-lam z^gamma) on its maximal sector."""
    gamma = float(gamma)
    lam = complex(lam)
    if gamma <= 0:
        raise DomainError("sector_exp needs gamma > 0")
    if lam == 0:
        return constant(1.0)
    ang = (np.pi / 2 - abs(np.angle(lam))) / gamma
    if ang <= 0:
        raise DomainError("sector_exp parameter lam too far from the positive axis")
    s = abs(lam) ** (-1.0 / gamma)
    return HolFunction("sector_exp", {"gamma": gamma, "lam": lam},
                       Domain(min(np.pi, ang)), f0=1.0, finf=0.0, bounded=True,
                       scales=(s, 1.0 / s) if s > 0 else (1.0,))


def bernstein_resolvent(g: BernsteinFunction, lam: complex) -> HolFunction:
    """(lam + g(z))^{-1} on the largest sector avoiding zeros of lam + g."""
    lam = complex(lam)
    if lam == 0:
        raise DomainError("bernstein_resolvent needs lam != 0")
    z0 = g.sector_zero(lam)
    ang = np.pi if z0 is None else abs(np.angle(z0))
    if ang <= 0:
        raise DomainError("lam + g vanishes on the positive axis")
    ginf = g.limit_at_inf()
    finf = 0.0 if np.isinf(ginf) else 1.0 / (lam + ginf)
    scales = (abs(lam), max(abs(lam), 1.0 / abs(lam)))
    if z0 is not None:
        scales = scales + (abs(z0),)
    return HolFunction("bernstein_resolvent", {"g": g, "lam": lam},
                       Domain(min(np.pi, ang) * (1 - 1e-12)),
                       f0=1.0 / lam, finf=finf, bounded=True, scales=scales)


def band_limited(terms) -> HolFunction:
    """sum_k c_k e^{-t_k z} with frequencies t_k >= 0."""
    terms = tuple((float(t), complex(c)) for t, c in terms)
    if any(t < 0 for t, _ in terms):
        raise DomainError("band_limited frequencies must be >= 0")
    merged: dict[float, complex] = {}
    for t, c in terms:
        merged[t] = merged.get(t, 0.0) + c
    terms = tuple(sorted((t, c) for t, c in merged.items() if c != 0))
    if not terms:
        return constant(0.0)
    tpos = [t for t, _ in terms if t > 0] or [1.0]
    f0 = sum(c for _, c in terms)
    finf = merged.get(0.0, 0.0)
    return HolFunction("band_limited", {"terms": terms}, HalfPlane(),
                       f0=f0, finf=finf, bounded=True,
                       scales=tuple(tpos) + tuple(1.0 / t for t in tpos))


def constant(c: complex) -> HolFunction:
    c = complex(c)
    return HolFunction("constant", {"c": c}, Domain(np.pi), f0=c, finf=c,
                       bounded=True, good_for_green=(c == 0), scales=(1.0,))


# -- algebraic closure -------------------------------------------------


def _common_domain(*fs) -> Domain:
    return Domain(min(f.domain.half_angle for f in fs))


def add(f: HolFunction, g: HolFunction) -> HolFunction:
    if f.kind == "band_limited" and g.kind == "band_limited":
        return band_limited(f.params["terms"] + g.params["terms"])
    if f.kind == "constant" and g.kind == "constant":
        return constant(f.params["c"] + g.params["c"])
    lim = (None if (f.f0 is None or g.f0 is None) else f.f0 + g.f0,
           None if (f.finf is None or g.finf is None) else f.finf + g.finf)
    return HolFunction("sum", {}, _common_domain(f, g), (f, g),
                       f0=lim[0], finf=lim[1],
                       bounded=f.bounded and g.bounded,
                       good_for_green=f.good_for_green and g.good_for_green,
                       scales=f.scales + g.scales)


def mul(f: HolFunction, g: HolFunction) -> HolFunction:
    if f.kind == "constant":
        return scalar_mul(f.params["c"], g)
    if g.kind == "constant":
        return scalar_mul(g.params["c"], f)
    if f.kind == "exp" and g.kind == "exp":
        return exp(f.params["t"] + g.params["t"])
    lim = (None if (f.f0 is None or g.f0 is None) else f.f0 * g.f0,
           None if (f.finf is None or g.finf is None) else f.finf * g.finf)
    return HolFunction("product", {}, _common_domain(f, g), (f, g),
                       f0=lim[0], finf=lim[1],
                       bounded=f.bounded and g.bounded,
                       good_for_green=f.good_for_green and g.good_for_green,
                       scales=f.scales + g.scales)


def scalar_mul(c: complex, f: HolFunction) -> HolFunction:
    c = complex(c)
    if c == 0:
        return constant(0.0)
    if c == 1:
        return f
    if f.kind == "constant":
        return constant(c * f.params["c"])
    if f.kind == "band_limited":
        return band_limited([(t, c * ck) for t, ck in f.params["terms"]])
    if f.kind == "scalar":
        return scalar_mul(c * f.params["c"], f.children[0])
    return HolFunction("scalar", {"c": c}, f.domain, (f,),
                       f0=None if f.f0 is None else c * f.f0,
                       finf=None if f.finf is None else c * f.finf,
                       bounded=f.bounded, good_for_green=f.good_for_green,
                       scales=f.scales)


def arg_scale(f: HolFunction, t: float) -> HolFunction:
    """f(t z) for t > 0."""
    t = float(t)
    if t <= 0:
        raise DomainError("arg_scale needs t > 0")
    if t == 1 or f.kind == "constant":
        return f
    if f.kind == "exp":
        return exp(f.params["t"] * t)
    if f.kind == "band_limited":
        return band_limited([(tk * t, c) for tk, c in f.params["terms"]])
    if f.kind == "resolvent":
        return scalar_mul(1.0 / t, resolvent(f.params["lam"] / t))
    if f.kind == "sector_exp":
        g = f.params["gamma"]
        return sector_exp(g, f.params["lam"] * t ** g)
    return HolFunction("arg_scale", {"t": t}, f.domain, (f,),
                       f0=f.f0, finf=f.finf, bounded=f.bounded,
                       good_for_green=f.good_for_green,
                       scales=tuple(s / t for s in f.scales))


def arg_shift(f: HolFunction, tau: complex) -> HolFunction:
    """f(z + tau) for Re tau >= 0."""
    tau = complex(tau)
    if tau.real < 0:
        raise DomainError("arg_shift needs Re tau >= 0")
    if tau == 0 or f.kind == "constant":
        return f
    if f.kind == "exp":
        return scalar_mul(np.exp(-f.params["t"] * tau), exp(f.params["t"]))
    if f.kind == "resolvent":
        return resolvent(f.params["lam"] + tau)
    if f.kind == "resolvent_pow":
        return resolvent_pow(f.params["lam"] + tau, f.params["p"])
    if f.kind == "band_limited":
        return band_limited([(t, c * np.exp(-t * tau))
                             for t, c in f.params["terms"]])
    dom = Domain(min(f.domain.half_angle, np.pi / 2))
    f0 = None
    if f.domain.contains(tau) if tau != 0 else False:
        f0 = complex(eval_fn(f, tau))
    elif tau != 0 and f.domain.contains(tau, closure=True):
        try:
            f0 = complex(eval_fn(f, tau, closure=True))
        except (DomainError, FloatingPointError):
            f0 = None
    return HolFunction("arg_shift", {"tau": tau}, dom, (f,),
                       f0=f0, finf=f.finf, bounded=f.bounded,
                       good_for_green=f.good_for_green,
                       scales=f.scales + (max(abs(tau), 1e-8),))


def compose_power(f: HolFunction, gamma: float) -> HolFunction:
    """f(z^gamma); the rescaled domain must stay a sector of angle <= pi."""
    gamma = float(gamma)
    if gamma <= 0:
        raise DomainError("compose_power needs gamma > 0")
    if gamma == 1 or f.kind == "constant":
        return f
    if gamma * f.domain.half_angle > np.pi + 1e-12:
        raise DomainError(
            f"compose_power({gamma}) exceeds the angle-pi budget: "
            f"gamma * {f.domain.half_angle:.4g} > pi")
    new_angle = min(np.pi, f.domain.half_angle / gamma)
    if f.kind == "exp":
        return sector_exp(gamma, f.params["t"])
    if f.kind == "sector_exp":
        return sector_exp(f.params["gamma"] * gamma, f.params["lam"])
    if f.kind == "arg_power":
        return compose_power(f.children[0], f.params["gamma"] * gamma)
    return HolFunction("arg_power", {"gamma": gamma}, Domain(new_angle), (f,),
                       f0=f.f0, finf=f.finf, bounded=f.bounded,
                       scales=tuple(s ** (1.0 / gamma) for s in f.scales))


def arg_invert(f: HolFunction) -> HolFunction:
    """f(1/z); swaps the sectorial limits."""
    if f.kind == "constant":
        return f
    if f.kind == "arg_invert":
        return f.children[0]
    return HolFunction("arg_invert", {}, f.domain, (f,),
                       f0=f.finf, finf=f.f0, bounded=f.bounded,
                       scales=tuple(1.0 / s for s in f.scales) + f.scales)


# -- evaluator table ---------------------------------------------------


def _ev_exp(f, z):
    return np.exp(-f.params["t"] * z)


def _dv_exp(f, z):
    t = f.params["t"]
    return -t * np.exp(-t * z)


def _ev_res(f, z):
    return 1.0 / (f.params["lam"] + z)


def _dv_res(f, z):
    return -1.0 / (f.params["lam"] + z) ** 2


def _ev_resp(f, z):
    return (f.params["lam"] + z) ** float(-f.params["p"])


def _dv_resp(f, z):
    p = f.params["p"]
    return -p * (f.params["lam"] + z) ** float(-p - 1)


def _ev_cay(f, z):
    return ((z - 1.0) / (z + 1.0)) ** f.params["n"]


def _dv_cay(f, z):
    n = f.params["n"]
    return 2.0 * n * ((z - 1.0) / (z + 1.0)) ** (n - 1) / (z + 1.0) ** 2


def _ev_phi(f, z):
    return z / (z + 1.0) * np.exp(-f.params["t"] / z)


def _dv_phi(f, z):
    t = f.params["t"]
    return np.exp(-t / z) * (1.0 / (z + 1.0) ** 2 + t / (z * (z + 1.0)))


def _ev_pexp(f, z):
    nu = f.params["nu"]
    return z ** nu * np.exp(-z) if nu else np.exp(-z)


def _dv_pexp(f, z):
    nu = f.params["nu"]
    if nu == 0:
        return -np.exp(-z)
    return (nu * z ** (nu - 1.0) - z ** nu) * np.exp(-z)


def _ev_acot(f, z):
    return arccot_scalar(z)


def _dv_acot(f, z):
    return -1.0 / (z * z + 1.0)


def _ev_eacot(f, z):
    return np.exp(arccot_scalar(z))


def _dv_eacot(f, z):
    return -np.exp(arccot_scalar(z)) / (z * z + 1.0)


def _ev_sexp(f, z):
    return np.exp(-f.params["lam"] * z ** f.params["gamma"])


def _dv_sexp(f, z):
    g, lam = f.params["gamma"], f.params["lam"]
    return -lam * g * z ** (g - 1.0) * np.exp(-lam * z ** g)


def _ev_bres(f, z):
    return 1.0 / (f.params["lam"] + f.params["g"](z))


def _dv_bres(f, z):
    g, lam = f.params["g"], f.params["lam"]
    return -g.deriv(z) / (lam + g(z)) ** 2


def _ev_band(f, z):
    out = np.zeros_like(np.asarray(z, complex))
    for t, c in f.params["terms"]:
        out = out + c * np.exp(-t * z)
    return out


def _dv_band(f, z):
    out = np.zeros_like(np.asarray(z, complex))
    for t, c in f.params["terms"]:
        out = out - c * t * np.exp(-t * z)
    return out


def _ev_const(f, z):
    return np.full_like(np.asarray(z, complex), f.params["c"])


def _dv_const(f, z):
    return np.zeros_like(np.asarray(z, complex))


def _ev_sum(f, z):
    a, b = f.children
    return _EVAL[a.kind](a, z) + _EVAL[b.kind](b, z)


def _dv_sum(f, z):
    a, b = f.children
    return _DERIV[a.kind](a, z) + _DERIV[b.kind](b, z)


def _ev_prod(f, z):
    a, b = f.children
    return _EVAL[a.kind](a, z) * _EVAL[b.kind](b, z)


def _dv_prod(f, z):
    a, b = f.children
    return (_DERIV[a.kind](a, z) * _EVAL[b.kind](b, z)
            + _EVAL[a.kind](a, z) * _DERIV[b.kind](b, z))


def _ev_scal(f, z):
    (a,) = f.children
    return f.params["c"] * _EVAL[a.kind](a, z)


def _dv_scal(f, z):
    (a,) = f.children
    return f.params["c"] * _DERIV[a.kind](a, z)


def _ev_ascale(f, z):
    (a,) = f.children
    return _EVAL[a.kind](a, f.params["t"] * z)


def _dv_ascale(f, z):
    (a,) = f.children
    t = f.params["t"]
    return t * _DERIV[a.kind](a, t * z)


def _ev_ashift(f, z):
    (a,) = f.children
    return _EVAL[a.kind](a, z + f.params["tau"])


def _dv_ashift(f, z):
    (a,) = f.children
    return _DERIV[a.kind](a, z + f.params["tau"])


def _ev_apow(f, z):
    (a,) = f.children
    return _EVAL[a.kind](a, z ** f.params["gamma"])


def _dv_apow(f, z):
    (a,) = f.children
    g = f.params["gamma"]
    return g * z ** (g - 1.0) * _DERIV[a.kind](a, z ** g)


def _ev_ainv(f, z):
    (a,) = f.children
    return _EVAL[a.kind](a, 1.0 / z)


def _dv_ainv(f, z):
    (a,) = f.children
    return -_DERIV[a.kind](a, 1.0 / z) / z ** 2


_EVAL = {
    "exp": _ev_exp, "resolvent": _ev_res, "resolvent_pow": _ev_resp,
    "cayley_power": _ev_cay, "phi_t": _ev_phi, "power_exp": _ev_pexp,
    "arccot": _ev_acot, "exp_arccot": _ev_eacot, "sector_exp": _ev_sexp,
    "bernstein_resolvent": _ev_bres, "band_limited": _ev_band,
    "constant": _ev_const, "sum": _ev_sum, "product": _ev_prod,
    "scalar": _ev_scal, "arg_scale": _ev_ascale, "arg_shift": _ev_ashift,
    "arg_power": _ev_apow, "arg_invert": _ev_ainv,
}

_DERIV = {
    "exp": _dv_exp, "resolvent": _dv_res, "resolvent_pow": _dv_resp,
    "cayley_power": _dv_cay, "phi_t": _dv_phi, "power_exp": _dv_pexp,
    "arccot": _dv_acot, "exp_arccot": _dv_eacot, "sector_exp": _dv_sexp,
    "bernstein_resolvent": _dv_bres, "band_limited": _dv_band,
    "constant": _dv_const, "sum": _dv_sum, "product": _dv_prod,
    "scalar": _dv_scal, "arg_scale": _dv_ascale, "arg_shift": _dv_ashift,
    "arg_power": _dv_apow, "arg_invert": _dv_ainv,
}


def sectorial_limits(f: HolFunction, tol: float = 1e-6,
                     cfg: QuadConfig | None = None):
    """Numerically probed sectorial limits (f(0), f(inf)).

    Probes the rays arg z in {0, +-psi/2} at radii 10^{+-k}, k <= 8, and
    demands agreement across rays at the extreme radii; raises NoLimit
    otherwise.  The probed values are cached on the function (write-once)
    and cross-checked against the exact catalog limits when present.
    """
    if f.probed_limits:
        return f.probed_limits[0]
    psi = f.domain.half_angle / 2.0
    rays = np.array([0.0, psi, -psi])
    out = []
    for which, sign in (("zero", -1), ("inf", +1)):
        # radii 10^{+-k}; start at k = 8 and deepen for slow sectorial rates
        spread, vals = np.inf, None
        for k in range(8, 33, 4):
            radii = 10.0 ** (sign * np.array([k - 1, k], float))
            vals = np.array([[complex(eval_fn(f, r * np.exp(1j * a)))
                              for a in rays] for r in radii])
            spread = np.abs(vals - vals[-1, 0]).max()
            if np.isfinite(spread) and spread <= tol * (1.0 + abs(vals[-1, 0])):
                break
        else:
            raise NoLimit(
                f"{f.kind}: sectorial ray probes disagree at {which} "
                f"(spread {spread:.3g})")
        out.append(complex(vals[-1, 0]))
    limits = (out[0], out[1])
    f.probed_limits.append(limits)
    return limits


# -- function mini-language --------------------------------------------

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)?\s*"
    r"(?:([+-])\s*)?(?:([+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$")


def parse_complex(s: str) -> complex:
    s = s.strip()
    if not s:
        raise ValueError("empty complex literal")
    try:
        return complex(s.replace("i", "j").replace(" ", ""))
    except ValueError:
        pass
    m = _COMPLEX_RE.match(s)
    if not m or (m.group(1) is None and "i" not in s and "j" not in s):
        raise ValueError(f"cannot parse complex literal {s!r}")
    re_part = float(m.group(1)) if m.group(1) else 0.0
    if "i" in s or "j" in s:
        sign = -1.0 if m.group(2) == "-" else 1.0
        im = float(m.group(3)) if m.group(3) else 1.0
        return complex(re_part, sign * im)
    return complex(re_part, 0.0)


_BERNSTEIN_NAMES = {
    "sqrt": BernsteinFunction("sqrt"),
    "log1p": BernsteinFunction("log1p"),
    "rational": BernsteinFunction("rational_z_over_1pz"),
    "z/(1+z)": BernsteinFunction("rational_z_over_1pz"),
}


def parse_function(text: str) -> HolFunction:
    """Parse the CLI mini-language, e.g. ``exp(t=2)``, ``cayley^12``,
    ``resolvent(1+0i)``, ``phi(t=100)``, ``power_exp(nu=1)``,
    ``bernstein_resolvent(g=sqrt,lambda=1+0i)``,
    ``bandlimited[(0.5,1),(2,-0.3)]``, ``arccot``, ``constant(2)``."""
    text = text.strip()
    m = re.match(r"^([a-zA-Z_][a-zA-Z_0-9]*)(.*)$", text)
    if not m:
        raise ValueError(f"cannot parse function expression {text!r}")
    name, rest = m.group(1), m.group(2).strip()

    power = 1
    pm = re.search(r"\^(\d+)$", rest)
    if pm:
        power = int(pm.group(1))
        rest = rest[: pm.start()].strip()

    kwargs: dict[str, str] = {}
    args: list[str] = []
    if rest.startswith("(") and rest.endswith(")"):
        body = rest[1:-1]
        for part in _split_args(body):
            if "=" in part:
                k, v = part.split("=", 1)
                kwargs[k.strip()] = v.strip()
            elif part.strip():
                args.append(part.strip())
    elif rest.startswith("[") and rest.endswith("]"):
        pairs = re.findall(r"\(([^()]*)\)", rest)
        terms = []
        for p in pairs:
            t, c = p.split(",")
            terms.append((float(t), parse_complex(c)))
        if name.lower() in ("bandlimited", "band_limited"):
            return band_limited(terms)
        raise ValueError(f"bracket syntax only valid for bandlimited, got {name}")
    elif rest:
        raise ValueError(f"cannot parse arguments {rest!r}")

    lname = name.lower()
    if lname == "exp":
        f = exp(float(kwargs.get("t", args[0] if args else 1.0)))
    elif lname == "resolvent":
        f = resolvent(parse_complex(kwargs.get("lambda", kwargs.get(
            "lam", args[0] if args else "1"))))
    elif lname == "cayley":
        f = cayley(int(kwargs.get("n", args[0] if args else 1)))
    elif lname == "phi":
        f = phi(float(kwargs.get("t", args[0] if args else 1.0)))
    elif lname == "power_exp":
        f = power_exp(float(kwargs.get("nu", args[0] if args else 0.0)))
    elif lname == "arccot":
        f = arccot_fn()
    elif lname == "exp_arccot":
        f = exp_arccot()
    elif lname == "sector_exp":
        f = sector_exp(float(kwargs.get("gamma", args[0] if args else 1.0)),
                       parse_complex(kwargs.get("lambda", kwargs.get(
                           "lam", args[1] if len(args) > 1 else "1"))))
    elif lname == "bernstein_resolvent":
        gname = kwargs.get("g", args[0] if args else "sqrt")
        if gname.startswith("power"):
            am = re.match(r"power\(([^)]*)\)", gname)
            g = BernsteinFunction("power", float(am.group(1)))
        else:
            g = _BERNSTEIN_NAMES[gname]
        f = bernstein_resolvent(g, parse_complex(kwargs.get(
            "lambda", kwargs.get("lam", args[1] if len(args) > 1 else "1"))))
    elif lname in ("bandlimited", "band_limited"):
        raise ValueError("bandlimited needs [(t,c),...] syntax")
    elif lname == "constant":
        f = constant(parse_complex(kwargs.get("c", args[0] if args else "0")))
    else:
        raise ValueError(f"unknown catalog function {name!r}")

    if power != 1:
        if f.kind == "cayley_power":
            return cayley(f.params["n"] * power)
        out = f
        for _ in range(power - 1):
            out = mul(out, f)
        return out
    return f


def _split_args(body: str):
    depth = 0
    cur = ""
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            yield cur
            cur = ""
        else:
            cur += ch
    if cur.strip():
        yield cur
