"""
Cusps of Gamma_1(q), the weight-2 multiplier v(gamma) = zeta^b, cusp
parameters kappa_L and the Riemann-Roch count z = m - g + 1 on X_1(q)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Tuple

from sympy import divisors, isprime

from hecke_identity.algebra.cyclotomic import CycloNumber, zeta_power
from hecke_identity.algebra.gf_psl2 import require_supported_prime
from hecke_identity.errors import InternalInconsistency, NotInGroup, UnsupportedPrime

logger = logging.getLogger(__name__)

IntMatrix = Tuple[int, int, int, int]


def _require_level(q: int) -> None:
    if q < 5 or not isprime(q):
        raise UnsupportedPrime(f"level {q} must be a prime >= 5", details={'q': q})


def _mat_mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def _mat_inv(x: IntMatrix) -> IntMatrix:
    return (x[3], -x[1], -x[2], x[0])


def gamma1_index(q: int) -> int:
    """mu = [PSL2(Z) : Gamma_1(q)]"""
    _require_level(q)
    return (q * q - 1) // 2


def genus_x1(q: int) -> int:
    _require_level(q)
    numerator = (q - 5) * (q - 7)
    if numerator % 24:
        raise UnsupportedPrime(f"(q-5)(q-7)/24 is not integral for q = {q}", details={'q': q})
    return numerator // 24


def genus_x(q: int) -> int:
    """Genus of X(q), i.e. dim S_2(Gamma(q))"""
    _require_level(q)
    return 1 + (q * q - 1) * (q - 6) // 24


def gamma_q_cusp_count(q: int) -> int:
    _require_level(q)
    return (q * q - 1) // 2


def valence_total(q: int, weight: int = 2) -> Fraction:
    """Total order mu*k/12 of a nonzero form of weight k on Gamma_1(q)"""
    return Fraction(gamma1_index(q) * weight, 12)


# --- cusps -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Cusp:
    """r/s in lowest terms with s >= 0; infinity is 1/0"""
    r: int
    s: int
    q: int

    def __post_init__(self):
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"cusp {self.r}/{self.s} is not in lowest terms")
        if self.s < 0:
            raise ValueError(f"cusp denominator must be nonnegative, got {self.s}")

    def matrix(self) -> IntMatrix:
        """L = (r x; s y) in SL2(Z) with L(infinity) = r/s"""
        x, y = _bezout_completion(self.r, self.s)
        return (self.r, x, self.s, y)

    def __str__(self):
        return "oo" if self.s == 0 else f"{self.r}/{self.s}"


def _bezout_completion(r: int, s: int) -> Tuple[int, int]:
    # find x, y with r*y - x*s = 1
    old_r, cur_r = r, s
    old_u, cur_u = 1, 0
    old_v, cur_v = 0, 1
    while cur_r:
        k = old_r // cur_r
        old_r, cur_r = cur_r, old_r - k * cur_r
        old_u, cur_u = cur_u, old_u - k * cur_u
        old_v, cur_v = cur_v, old_v - k * cur_v
    # old_u*r + old_v*s = old_r = +-1
    sign = old_r
    return (-old_v * sign, old_u * sign)


@dataclass(frozen=True)
class CuspData:
    cusp: Cusp
    width: int
    kappa: Fraction


def cusps_equivalent(c1: Cusp, c2: Cusp) -> bool:
    """(r, s) ~ (r', s') iff (r', s') = +-(r + j s, s) mod q for some j"""
    q = c1.q
    if c2.q != q:
        return False
    for sign in (1, -1):
        r2, s2 = (sign * c2.r) % q, (sign * c2.s) % q
        if s2 != c1.s % q:
            continue
        if c1.s % q:
            return True
        if r2 == c1.r % q:
            return True
    return False


def _representatives(q: int) -> List[Cusp]:
    half = (q - 1) // 2
    reps = [Cusp(0, 1, q)]
    reps += [Cusp(1, s, q) for s in range(2, half + 1)]
    reps += [Cusp(r, q, q) for r in range(1, half + 1)]
    return reps


def canonical_cusp(cusp: Cusp) -> Cusp:
    for rep in _representatives(cusp.q):
        if cusps_equivalent(rep, cusp):
            return rep
    raise InternalInconsistency(f"cusp {cusp} matches no representative for q = {cusp.q}")


def stabilizer_matrix(cusp: Cusp, n: int) -> IntMatrix:
    """L P^n L^-1 = (1 - nrs, nr^2; -ns^2, 1 + nrs)"""
    L = cusp.matrix()
    product = _mat_mul(_mat_mul(L, (1, n, 0, 1)), _mat_inv(L))
    r, s = cusp.r, cusp.s
    expected = (1 - n * r * s, n * r * r, -n * s * s, 1 + n * r * s)
    if product != expected:
        raise InternalInconsistency(f"L P^{n} L^-1 = {product}, expected {expected}")
    return product


def in_gamma1(gamma: IntMatrix, q: int) -> bool:
    """Membership in Gamma_1(q) proper; -gamma is not identified with gamma"""
    a, b, c, d = gamma
    return a * d - b * c == 1 and a % q == 1 and c % q == 0 and d % q == 1


def cusp_width(cusp: Cusp) -> int:
    """Least n with L P^n L^-1 in Gamma_1(q); it divides q"""
    _require_level(cusp.q)
    for n in divisors(cusp.q):
        if in_gamma1(stabilizer_matrix(cusp, n), cusp.q):
            return n
    raise InternalInconsistency(f"no width found for cusp {cusp}")


def multiplier_exponent(gamma: IntMatrix, q: int) -> int:
    """b mod q, where v(gamma) = zeta_q^b"""
    if not in_gamma1(gamma, q):
        raise NotInGroup(f"{gamma} is not in Gamma_1({q})", details={'gamma': list(gamma), 'q': q})
    return gamma[1] % q


def multiplier_v(gamma: IntMatrix, q: int) -> CycloNumber:
    return zeta_power(q, multiplier_exponent(gamma, q))


def cusp_parameter(q: int, cusp: Cusp) -> Fraction:
    """kappa_L in [0, 1) with v(L P^n_L L^-1) = exp(2 pi i kappa_L)"""
    if cusp.q != q:
        cusp = Cusp(cusp.r, cusp.s, q)
    width = cusp_width(cusp)
    return Fraction(multiplier_exponent(stabilizer_matrix(cusp, width), q), q)


def cusp_data(cusp: Cusp) -> CuspData:
    return CuspData(cusp, cusp_width(cusp), cusp_parameter(cusp.q, cusp))


def cusp_representatives(q: int) -> List[CuspData]:
    """
    The q-1 cusps of Gamma_1(q): 0/1 and 1/s (s = 2..(q-1)/2) of width q,
    then r/q (r = 1..(q-1)/2) of width 1
    """
    _require_level(q)
    reps = [cusp_data(cusp) for cusp in _representatives(q)]
    if len(reps) != q - 1:
        raise InternalInconsistency(f"found {len(reps)} cusps for q = {q}, expected {q - 1}")
    width_sum = sum(data.width for data in reps)
    if width_sum != gamma1_index(q):
        raise InternalInconsistency(f"cusp widths sum to {width_sum}, index is {gamma1_index(q)}")
    return reps


# --- divisor degree and Riemann-Roch ------------------------------------------

@dataclass(frozen=True)
class DivisorSummary:
    q: int
    mu: int
    g: int
    kappa_sum: Fraction
    m: Fraction
    z: int

    @property
    def claim_margin(self) -> Fraction:
        """m - 2g + 2, which equals q - 1 - sum(kappa)"""
        return self.m - 2 * self.g + 2


def divisor_summary(q: int, cusps: Optional[Iterable[Cusp]] = None) -> DivisorSummary:
    """
    Degree m = mu/6 - sum kappa_L of the divisor D with V ~ L(D), the genus
    of X_1(q), and z = m - g + 1. cusps may supply alternative orbit
    representatives; they must cover every orbit exactly once.
    """
    require_supported_prime(q)
    mu = gamma1_index(q)
    g = genus_x1(q)

    if cusps is None:
        kappas = [data.kappa for data in cusp_representatives(q)]
    else:
        cusps = list(cusps)
        canonical = {canonical_cusp(cusp) for cusp in cusps}
        if len(cusps) != q - 1 or len(canonical) != q - 1:
            raise InternalInconsistency(f"supplied cusps do not cover the {q - 1} orbits exactly once")
        kappas = [cusp_parameter(q, cusp) for cusp in cusps]

    kappa_sum = sum(kappas, Fraction(0))
    m = valence_total(q, weight=2) - kappa_sum
    if m.denominator != 1 or m < 0:
        raise InternalInconsistency(f"divisor degree m = {m} is not a nonnegative integer for q = {q}")

    margin = m - 2 * g + 2
    if margin != q - 1 - kappa_sum or margin <= 0:
        raise InternalInconsistency(f"m - 2g + 2 = {margin} fails the degree claim for q = {q}")

    z = int(m) - g + 1
    if z < 1:
        raise InternalInconsistency(f"z = {z} for q = {q}")

    logger.debug(f"q = {q}: mu = {mu}, sum kappa = {kappa_sum}, m = {m}, g = {g}, z = {z}")
    return DivisorSummary(q=q, mu=mu, g=g, kappa_sum=kappa_sum, m=m, z=z)
