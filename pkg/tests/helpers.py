"""Brute-force oracles shared by unit and integration tests.

Each oracle evaluates a quantity straight from its defining integral with
scipy.integrate.quad, independently of the substitutions the library uses.
"""

import math

from scipy import integrate

from noma_metadist.models.network import NetworkParams


def hyp2f1_cov_oracle(b: float, delta: float, x: float) -> float:
    """1 + 2 int_1^inf (1 - (1 + x y^-eta)^-b) y dy, integrated in w = 1/y."""
    if x == 0.0:
        return 1.0
    eta = 2.0 / delta

    def integrand(w: float) -> float:
        if w == 0.0:
            return 0.0
        return -math.expm1(-b * math.log1p(x * w**eta)) / w**3

    knee = x ** (-1.0 / eta)
    points = [knee] if knee < 1.0 else None
    value, _ = integrate.quad(
        integrand, 0.0, 1.0, points=points, epsabs=0.0, epsrel=1e-11, limit=500
    )
    return 1.0 + 2.0 * value


def hyp2f1_half(x: float) -> float:
    """2F1(1, -1/2; 1/2; -x) = 1 + sqrt(x) atan(sqrt(x))."""
    root = math.sqrt(x)
    return 1.0 + root * math.atan(root)


def hyp2f1_half_second(x: float) -> float:
    """2F1(2, -1/2; 1/2; -x) = 1 + 1.5 sqrt(x) atan(sqrt(x)) + x / (2 (1 + x))."""
    root = math.sqrt(x)
    return 1.0 + 1.5 * root * math.atan(root) + x / (2.0 * (1.0 + x))


def enoma_two_user_scp(m: float, i: int) -> float:
    """SCP of rank i in E-NOMA with N=2 and eta=4 as a function of M_i."""
    f = hyp2f1_half(m)
    if i == 1:
        return 2.0 / (1.0 + f)
    return 2.0 / f - 2.0 / (1.0 + f)


def cnoma_exact_oracle(params: NetworkParams, m: float, b: int = 1) -> float:
    """Guard-zone moment of a single C-NOMA user at eta = 4, as a double integral over (rho, r).

    The link distance r is uniform in the in-disk (density 8 r / rho^2 on [0, rho/2]),
    the nearest interferer sits at distance rho and the remaining interferers are
    excluded from the disk of radius rho - r.
    """
    eta = params.eta
    pattern_of = hyp2f1_half if b == 1 else hyp2f1_half_second
    scale = math.pi * params.lam
    upper = math.sqrt(-math.log(1e-12) / scale)

    def inner(rho: float) -> float:
        def integrand(r: float) -> float:
            guard = rho - r
            pattern = pattern_of(m * (r / guard) ** eta)
            nearest = (1.0 + m * (r / rho) ** eta) ** (-b)
            density = 8.0 * r / (rho * rho)
            return density * nearest * math.exp(-scale * guard * guard * (pattern - 1.0))

        value, _ = integrate.quad(integrand, 0.0, 0.5 * rho, epsrel=1e-9, limit=200)
        return value

    def outer(rho: float) -> float:
        return 2.0 * scale * rho * math.exp(-scale * rho * rho) * inner(rho)

    value, _ = integrate.quad(outer, 0.0, upper, epsrel=1e-8, limit=200)
    return value
