"""
Exact arithmetic in cyclotomic fields Q(zeta_n)

A CycloNumber of conductor n is a dense vector of phi(n) rationals in the
power basis 1, zeta_n, ..., zeta_n^(phi(n)-1), reduced modulo the n-th
cyclotomic polynomial. Reduction is canonical, so equal field elements
compare equal coefficient by coefficient.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import mpmath
from sympy import divisors, isprime

from hecke_identity.config import DEFAULT_EXACT_CEILING
from hecke_identity.algebra.gf_psl2 import legendre_symbol
from hecke_identity.errors import ConductorTooLarge, InternalInconsistency, UnsupportedPrime

logger = logging.getLogger(__name__)

# Extra working bits for to_complex; the returned value is within
# 2^(-precision_bits + EMBEDDING_GUARD_BITS) of the exact embedding
EMBEDDING_GUARD_BITS = 8

_exact_ceiling = DEFAULT_EXACT_CEILING

Rational = Union[int, Fraction]


def set_exact_ceiling(ceiling: int) -> None:
    """Largest conductor that mixed-conductor operations may coerce to"""
    global _exact_ceiling
    if ceiling < 1:
        raise ValueError(f"ceiling must be positive, got {ceiling}")
    _exact_ceiling = ceiling


def exact_ceiling() -> int:
    return _exact_ceiling


def _poly_divide_exact(numerator: List[int], divisor: Sequence[int]) -> List[int]:
    """numerator / divisor for a monic integer divisor that divides exactly (low degree first)"""
    remainder = list(numerator)
    deg_d = len(divisor) - 1
    quotient = [0] * (len(remainder) - deg_d)
    for k in range(len(quotient) - 1, -1, -1):
        coeff = remainder[k + deg_d]
        quotient[k] = coeff
        if coeff:
            for j, dj in enumerate(divisor):
                remainder[k + j] -= coeff * dj
    if any(remainder):
        raise InternalInconsistency(f"polynomial division left remainder {remainder}")
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Phi_n as integer coefficients, constant term first"""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(n: int, coeffs: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
    """Fold exponents mod n, then reduce mod Phi_n"""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    work = [Fraction(0)] * n
    for k, c in coeffs.items():
        if c:
            work[k % n] += c
    for k in range(n - 1, deg - 1, -1):
        c = work[k]
        if c:
            base = k - deg
            for j in range(deg):
                pj = phi_poly[j]
                if pj:
                    work[base + j] -= c * pj
            work[k] = Fraction(0)
    return tuple(work[:deg])


@dataclass(frozen=True)
class CycloNumber:
    """Exact element of Q(zeta_n)"""
    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.n):
            raise ValueError(f"conductor {self.n} needs {euler_phi(self.n)} coefficients, got {len(self.coeffs)}")

    # --- inspection ---

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise InternalInconsistency(f"{self} is not rational")
        return self.coeffs[0]

    def shrink(self) -> "CycloNumber":
        """Rational values drop to conductor 1"""
        if self.n != 1 and self.is_rational():
            return rational(self.coeffs[0])
        return self

    def to_coefficient_list(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.n}^{k}")
        return " + ".join(terms) if terms else "0"

    # --- operators ---

    def __add__(self, other):
        return cyclo_arith(self, _lift(other), "add")

    def __radd__(self, other):
        return cyclo_arith(_lift(other), self, "add")

    def __sub__(self, other):
        return cyclo_arith(self, _lift(other), "sub")

    def __rsub__(self, other):
        return cyclo_arith(_lift(other), self, "sub")

    def __mul__(self, other):
        return cyclo_arith(self, _lift(other), "mul")

    def __rmul__(self, other):
        return cyclo_arith(_lift(other), self, "mul")

    def __neg__(self):
        return CycloNumber(self.n, tuple(-c for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = rational(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if self.n == other.n:
            return self.coeffs == other.coeffs
        return (self - other).is_zero()

    def __hash__(self):
        # equal values may sit in different conductors, so only rationals hash by value
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(CycloNumber)


def rational(value: Rational) -> CycloNumber:
    return CycloNumber(1, (Fraction(value),))


def _lift(value) -> CycloNumber:
    if isinstance(value, CycloNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return rational(value)
    raise TypeError(f"cannot combine CycloNumber with {type(value).__name__}")


def zeta_power(n: int, k: int) -> CycloNumber:
    """zeta_n^(k mod n)"""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    return CycloNumber(n, _reduce(n, {k % n: Fraction(1)}))


def coerce(x: CycloNumber, n: int) -> CycloNumber:
    """View x in Q(zeta_n); requires x.n | n"""
    if x.n == n:
        return x
    if n % x.n:
        raise ValueError(f"conductor {x.n} does not divide {n}")
    if n > _exact_ceiling:
        raise ConductorTooLarge(
            f"conductor {n} exceeds exact ceiling {_exact_ceiling}",
            details={'conductor': n, 'ceiling': _exact_ceiling},
        )
    if x.is_rational():
        return CycloNumber(n, (x.coeffs[0],) + (Fraction(0),) * (euler_phi(n) - 1))
    step = n // x.n
    return CycloNumber(n, _reduce(n, {k * step: c for k, c in enumerate(x.coeffs)}))


def _common_conductor(a: int, b: int) -> int:
    common = a * b // gcd(a, b)
    if common > _exact_ceiling:
        raise ConductorTooLarge(
            f"lcm({a}, {b}) = {common} exceeds exact ceiling {_exact_ceiling}",
            details={'conductor': common, 'ceiling': _exact_ceiling},
        )
    return common


def _scale(x: CycloNumber, c: Fraction) -> CycloNumber:
    return CycloNumber(x.n, tuple(c * v for v in x.coeffs))


def cyclo_arith(x: CycloNumber, y: CycloNumber, op: str) -> CycloNumber:
    """x op y for op in {add, sub, mul}, in the smallest common field"""
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown operation {op}")

    if op == "sub":
        y = -y
        op = "add"

    # rational operands never force a larger conductor
    if op == "mul":
        if x.is_rational():
            return _scale(y, x.coeffs[0])
        if y.is_rational():
            return _scale(x, y.coeffs[0])
    else:
        if x.is_rational() and x.n != y.n:
            x, y = y, x
        if y.is_rational() and x.n != y.n:
            return CycloNumber(x.n, (x.coeffs[0] + y.coeffs[0],) + x.coeffs[1:])

    n = _common_conductor(x.n, y.n)
    x, y = coerce(x, n), coerce(y, n)

    if op == "add":
        return CycloNumber(n, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))

    product: Dict[int, Fraction] = {}
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if b:
                product[i + j] = product.get(i + j, Fraction(0)) + a * b
    return CycloNumber(n, _reduce(n, product))


def cyclo_sum(values: Iterable[CycloNumber]) -> CycloNumber:
    """Exact sum, accumulated per conductor before the conductors are mixed"""
    buckets: Dict[int, CycloNumber] = {}
    for value in values:
        n = value.n
        buckets[n] = cyclo_arith(buckets[n], value, "add") if n in buckets else value

    total = rational(0)
    for n in sorted(buckets):
        total = cyclo_arith(total, buckets[n].shrink(), "add").shrink()
    return total


def cyclo_conj(x: CycloNumber) -> CycloNumber:
    """Image under zeta_n -> zeta_n^-1"""
    if x.is_rational():
        return x
    return CycloNumber(x.n, _reduce(x.n, {(-k) % x.n: c for k, c in enumerate(x.coeffs)}))


def to_complex(x: CycloNumber, precision_bits: int = 53) -> mpmath.mpc:
    """Embedding zeta_n -> exp(2*pi*i/n), evaluated with mpmath"""
    if precision_bits < 53:
        raise ValueError(f"precision_bits must be at least 53, got {precision_bits}")
    with mpmath.workprec(precision_bits + EMBEDDING_GUARD_BITS + len(x.coeffs).bit_length()):
        total = mpmath.mpc(0)
        for k, c in enumerate(x.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / x.n)
    return total


def gauss_sum(q: int) -> CycloNumber:
    """Sum of zeta_q^x over the quadratic residues x mod q"""
    if not isprime(q) or q % 4 != 3:
        raise UnsupportedPrime(f"Gauss sum needs a prime q = 3 (mod 4), got {q}", details={'q': q})
    terms = {x: Fraction(1) for x in range(1, q) if legendre_symbol(x, q) == 1}
    return CycloNumber(q, _reduce(q, terms))
