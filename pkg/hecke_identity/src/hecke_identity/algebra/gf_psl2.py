"""
Finite-field arithmetic and the group PSL2(F_q)

Elements are 2x2 matrices of determinant 1 over F_q, stored as the
canonical member of the pair {M, -M}. Conjugacy classes follow the
classical list for q = 3 (mod 4): identity, split torus, non-split torus
and the two unipotent classes of P = (1 1; 0 1) and P^-1.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from sympy import isprime

from hecke_identity.errors import InvalidElement, ModulusMismatch, UnsupportedPrime

logger = logging.getLogger(__name__)


def require_supported_prime(q: int) -> int:
    """Raise UnsupportedPrime unless q is a prime with q = 3 (mod 4) and q > 3"""
    if not isinstance(q, int) or q <= 3 or not isprime(q):
        raise UnsupportedPrime(f"q = {q} must be a prime greater than 3", details={'q': q})
    if q % 4 != 3:
        raise UnsupportedPrime(
            f"q = {q} is {q % 4} (mod 4); only primes q = 3 (mod 4) are supported",
            details={'q': q},
        )
    return q


def legendre_symbol(n: int, q: int) -> int:
    """(n/q) by Euler's criterion"""
    n %= q
    if n == 0:
        return 0
    return 1 if pow(n, (q - 1) // 2, q) == 1 else -1


@dataclass(frozen=True, order=True)
class Fq:
    """Element of the prime field F_q"""
    value: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, 'value', self.value % self.q)

    def _check(self, other: "Fq") -> None:
        if other.q != self.q:
            raise ModulusMismatch(f"F_{self.q} and F_{other.q} cannot be combined")

    def _coerce(self, other: Union["Fq", int]) -> "Fq":
        if isinstance(other, int):
            return Fq(other, self.q)
        self._check(other)
        return other

    def __add__(self, other):
        return Fq(self.value + self._coerce(other).value, self.q)

    def __sub__(self, other):
        return Fq(self.value - self._coerce(other).value, self.q)

    def __mul__(self, other):
        return Fq(self.value * self._coerce(other).value, self.q)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Fq(-self.value, self.q)

    def inverse(self) -> "Fq":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        return Fq(pow(self.value, -1, self.q), self.q)

    def is_square(self) -> bool:
        return legendre_symbol(self.value, self.q) >= 0

    def sqrt(self) -> "Fq":
        """Square root for q = 3 (mod 4), where x^((q+1)/4) is a root of every square"""
        root = Fq(pow(self.value, (self.q + 1) // 4, self.q), self.q)
        if root * root != self:
            raise ValueError(f"{self.value} is not a square in F_{self.q}")
        return root

    def __int__(self):
        return self.value


def field_sqrt(n: int, q: int) -> int:
    return Fq(n, q).sqrt().value


@dataclass(frozen=True, order=True)
class PSL2Element:
    """Canonical representative of {M, -M} with M = (a b; c d) in SL2(F_q)"""
    q: int
    a: int
    b: int
    c: int
    d: int

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def trace(self) -> int:
        return (self.a + self.d) % self.q

    def negated(self) -> Tuple[int, int, int, int]:
        q = self.q
        return ((-self.a) % q, (-self.b) % q, (-self.c) % q, (-self.d) % q)

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)

    def __mul__(self, other: "PSL2Element") -> "PSL2Element":
        return psl2_mul(self, other)

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d}) mod {self.q}"


def _as_int(x: Union[Fq, int]) -> int:
    return x.value if isinstance(x, Fq) else int(x)


def psl2_canonicalize(a, b, c, d, q: int) -> PSL2Element:
    """Reduce mod q and keep the sign whose first nonzero entry lies in [1, (q-1)/2]"""
    entries = [_as_int(x) % q for x in (a, b, c, d)]
    if (entries[0] * entries[3] - entries[1] * entries[2]) % q != 1:
        raise InvalidElement(
            f"determinant of {tuple(entries)} is not 1 mod {q}",
            details={'entries': entries, 'q': q},
        )

    half = (q - 1) // 2
    first = next(e for e in entries if e != 0)
    if first > half:
        entries = [(-e) % q for e in entries]
    return PSL2Element(q, *entries)


def identity(q: int) -> PSL2Element:
    return PSL2Element(q, 1, 0, 0, 1)


def unipotent_p(q: int) -> PSL2Element:
    """P = (1 1; 0 1)"""
    return PSL2Element(q, 1, 1, 0, 1)


def psl2_mul(x: PSL2Element, y: PSL2Element) -> PSL2Element:
    if x.q != y.q:
        raise ModulusMismatch(f"cannot multiply elements over F_{x.q} and F_{y.q}")
    return psl2_canonicalize(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
        x.q,
    )


def psl2_inverse(x: PSL2Element) -> PSL2Element:
    return psl2_canonicalize(x.d, -x.b, -x.c, x.a, x.q)


def psl2_power(x: PSL2Element, k: int) -> PSL2Element:
    if k < 0:
        x, k = psl2_inverse(x), -k
    result = identity(x.q)
    base = x
    while k:
        if k & 1:
            result = psl2_mul(result, base)
        base = psl2_mul(base, base)
        k >>= 1
    return result


def conjugate(x: PSL2Element, g: PSL2Element) -> PSL2Element:
    """g x g^-1"""
    return psl2_mul(psl2_mul(g, x), psl2_inverse(g))


def element_order(x: PSL2Element) -> int:
    order = 1
    current = x
    while not current.is_identity():
        current = psl2_mul(current, x)
        order += 1
    return order


def group_order(q: int) -> int:
    return q * (q * q - 1) // 2


# --- conjugacy classes -------------------------------------------------------

class ClassKind(str, Enum):
    IDENTITY = "Identity"
    SPLIT = "Split"
    NON_SPLIT = "NonSplit"
    UNIPOTENT_PLUS = "UnipotentPlus"
    UNIPOTENT_MINUS = "UnipotentMinus"


@dataclass(frozen=True)
class ConjClassLabel:
    """
    A conjugacy class of PSL2(F_q).

    parameter is () for identity and unipotent classes, the eigenvalue pair
    (t, 1/t) in increasing order for Split, and (a, b) with
    eps = a + b*sqrt(-1), a and b in [0, (q-1)/2], for NonSplit.
    """
    kind: ClassKind
    parameter: Tuple[int, ...]
    size: int

    @property
    def key(self) -> Tuple[str, Tuple[int, ...]]:
        return (self.kind.value, self.parameter)

    def name(self) -> str:
        if self.parameter:
            return f"{self.kind.value}{self.parameter}"
        return self.kind.value


def _split_parameter(eigenvalue: int, q: int) -> Tuple[int, int]:
    # {t, 1/t} up to sign: take the pair holding the largest of +-t, +-1/t
    t = eigenvalue % q
    t_inv = pow(t, -1, q)
    candidates = [(t, t_inv), (q - t, q - t_inv)]
    best = max(candidates, key=max)
    return tuple(sorted(best))


def _nonsplit_parameter(a: int, b: int, q: int) -> Tuple[int, int]:
    # eps ~ eps^-1 ~ -eps: all four sign choices of (a, b) coincide
    return (min(a % q, (-a) % q), min(b % q, (-b) % q))


def _unipotent_kind(x: PSL2Element) -> ClassKind:
    q = x.q
    a, b, c, d = x.entries()
    if (a + d) % q != 2:
        a, b, c, d = x.negated()

    # nonzero fixed vector e of M, from a nonzero row of M - I
    if (a - 1) % q or b % q:
        e1, e2 = b % q, (1 - a) % q
    else:
        e1, e2 = (d - 1) % q, (-c) % q

    # complete e to g = (e1 f1; e2 f2) with det g = 1
    if e1:
        f1, f2 = 0, pow(e1, -1, q)
    else:
        f1, f2 = (-pow(e2, -1, q)) % q, 0

    g = psl2_canonicalize(e1, f1, e2, f2, q)
    m = PSL2Element(q, a, b, c, d)
    h = psl2_mul(psl2_mul(psl2_inverse(g), m), g)

    # h is +-(1 u; 0 1); bring it to trace 2 before reading u
    ha, hb, hc, hd = h.entries()
    if ha != 1:
        ha, hb, hc, hd = h.negated()
    assert (ha, hc, hd) == (1, 0, 1), f"conjugate of unipotent {x} is not upper triangular"
    return ClassKind.UNIPOTENT_PLUS if legendre_symbol(hb, q) == 1 else ClassKind.UNIPOTENT_MINUS


@lru_cache(maxsize=None)
def class_sizes(q: int) -> Dict[ClassKind, int]:
    return {
        ClassKind.IDENTITY: 1,
        ClassKind.SPLIT: q * (q + 1),
        ClassKind.NON_SPLIT: q * (q - 1),
        ClassKind.UNIPOTENT_PLUS: (q * q - 1) // 2,
        ClassKind.UNIPOTENT_MINUS: (q * q - 1) // 2,
    }


def _label(kind: ClassKind, parameter: Tuple[int, ...], q: int) -> ConjClassLabel:
    size = class_sizes(q)[kind]
    if kind == ClassKind.NON_SPLIT and parameter[0] == 0:
        # involution class, eps = sqrt(-1)
        size //= 2
    return ConjClassLabel(kind, parameter, size)


def classify_class(x: PSL2Element) -> ConjClassLabel:
    q = x.q
    if x.is_identity():
        return _label(ClassKind.IDENTITY, (), q)

    t = x.trace()
    discriminant = (t * t - 4) % q
    if discriminant == 0:
        return _label(_unipotent_kind(x), (), q)

    half = pow(2, -1, q)
    if legendre_symbol(discriminant, q) == 1:
        eigenvalue = (t + field_sqrt(discriminant, q)) * half
        return _label(ClassKind.SPLIT, _split_parameter(eigenvalue, q), q)

    # conjugate to (a -b; b a) with a = t/2, a^2 + b^2 = 1
    a = t * half % q
    b = field_sqrt(1 - a * a, q)
    return _label(ClassKind.NON_SPLIT, _nonsplit_parameter(a, b, q), q)


def class_representative(label: ConjClassLabel, q: int) -> PSL2Element:
    if label.kind == ClassKind.IDENTITY:
        return identity(q)
    if label.kind == ClassKind.SPLIT:
        t, t_inv = label.parameter
        return psl2_canonicalize(t, 0, 0, t_inv, q)
    if label.kind == ClassKind.NON_SPLIT:
        a, b = label.parameter
        return psl2_canonicalize(a, -b, b, a, q)
    if label.kind == ClassKind.UNIPOTENT_PLUS:
        return unipotent_p(q)
    return psl2_canonicalize(1, -1, 0, 1, q)


@lru_cache(maxsize=None)
def _enumerate_classes(q: int) -> Tuple[ConjClassLabel, ...]:
    labels: List[ConjClassLabel] = [_label(ClassKind.IDENTITY, (), q)]

    split_seen: Set[Tuple[int, int]] = set()
    for t in range(2, q - 1):
        parameter = _split_parameter(t, q)
        if parameter not in split_seen:
            split_seen.add(parameter)
            labels.append(_label(ClassKind.SPLIT, parameter, q))

    for a in range((q - 1) // 2 + 1):
        rest = (1 - a * a) % q
        if rest and legendre_symbol(rest, q) == 1:
            parameter = _nonsplit_parameter(a, field_sqrt(rest, q), q)
            labels.append(_label(ClassKind.NON_SPLIT, parameter, q))

    labels.append(_label(ClassKind.UNIPOTENT_PLUS, (), q))
    labels.append(_label(ClassKind.UNIPOTENT_MINUS, (), q))

    expected = (q + 5) // 2
    if len(labels) != expected:
        raise AssertionError(f"found {len(labels)} classes for q = {q}, expected {expected}")
    if sum(label.size for label in labels) != group_order(q):
        raise AssertionError(f"class sizes for q = {q} do not sum to {group_order(q)}")
    return tuple(labels)


def enumerate_classes(q: int) -> List[ConjClassLabel]:
    """The (q+5)/2 conjugacy classes, ordered Identity, Split, NonSplit, P, P^-1"""
    require_supported_prime(q)
    return list(_enumerate_classes(q))


# --- tori H1, H2 -------------------------------------------------------------

class Subgroup(str, Enum):
    H1 = "H1"   # non-split torus, order (q+1)/2
    H2 = "H2"   # split torus, order (q-1)/2


@lru_cache(maxsize=None)
def _subgroup_elements(q: int, which: Subgroup) -> Tuple[PSL2Element, ...]:
    elements: Set[PSL2Element] = set()
    if which == Subgroup.H1:
        for a in range(q):
            for b in range(q):
                if (a * a + b * b) % q == 1:
                    elements.add(psl2_canonicalize(a, -b, b, a, q))
    else:
        for t in range(1, q):
            elements.add(psl2_canonicalize(t, 0, 0, pow(t, -1, q), q))
    return tuple(sorted(elements))


def subgroup_order(q: int, which: Subgroup) -> int:
    return (q + 1) // 2 if which == Subgroup.H1 else (q - 1) // 2


def subgroup_elements(q: int, which: Subgroup) -> List[PSL2Element]:
    if q % 4 != 3:
        raise UnsupportedPrime(f"q = {q} is not 3 (mod 4)", details={'q': q})
    elements = list(_subgroup_elements(q, Subgroup(which)))
    expected = subgroup_order(q, Subgroup(which))
    if len(elements) != expected:
        raise AssertionError(f"{which} has {len(elements)} elements for q = {q}, expected {expected}")
    return elements


def subgroup_generator(q: int, which: Subgroup) -> PSL2Element:
    """First element (in sorted order) whose order equals the subgroup order"""
    order = subgroup_order(q, Subgroup(which))
    for element in subgroup_elements(q, which):
        if element_order(element) == order:
            return element
    raise AssertionError(f"{which} is not cyclic for q = {q}")


# --- brute force -------------------------------------------------------------

def all_elements(q: int) -> Iterator[PSL2Element]:
    """Every element of PSL2(F_q) exactly once"""
    half = (q - 1) // 2
    for a in range(q):
        for b in range(q):
            if a == 0 and b == 0:
                continue
            first = a if a else b
            if first > half:
                continue
            if a:
                a_inv = pow(a, -1, q)
                for c in range(q):
                    yield PSL2Element(q, a, b, c, (1 + b * c) * a_inv % q)
            else:
                c = (-pow(b, -1, q)) % q
                for d in range(q):
                    yield PSL2Element(q, a, b, c, d)


def brute_force_classes(q: int) -> List[Set[PSL2Element]]:
    """Conjugation orbits, by closure under conjugation with S and T"""
    logger.info(f"Enumerating conjugacy orbits of PSL2(F_{q}) by brute force...")
    generators = [psl2_canonicalize(0, -1, 1, 0, q), unipotent_p(q)]
    generators += [psl2_inverse(g) for g in generators]

    remaining = set(all_elements(q))
    orbits: List[Set[PSL2Element]] = []
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = conjugate(x, g)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        remaining -= orbit
        orbits.append(orbit)

    logger.info(f"Found {len(orbits)} orbits")
    return orbits


def random_element(q: int, rng: Optional[random.Random] = None) -> PSL2Element:
    rng = rng or random.Random()
    while True:
        a, b, c = rng.randrange(q), rng.randrange(q), rng.randrange(q)
        if a:
            return psl2_canonicalize(a, b, c, (1 + b * c) * pow(a, -1, q), q)
        if b:
            return psl2_canonicalize(0, b, -pow(b, -1, q), rng.randrange(q), q)
