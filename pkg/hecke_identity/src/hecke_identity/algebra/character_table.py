"""
Character table of PSL2(F_q), q = 3 (mod 4)

Rows are the irreducibles id, St, pi_chi, pi_rho, pi_+, pi_-; columns are
the conjugacy classes from gf_psl2. Entries are exact CycloNumbers. The
module also solves for eigenvalue multiplicities of pi(P^-1) and counts
the zeta-eigenspace of a formally decomposed representation.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import lcm
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

from sympy.ntheory import primitive_root

from hecke_identity.algebra.cyclotomic import (
    CycloNumber,
    cyclo_conj,
    cyclo_sum,
    euler_phi,
    exact_ceiling,
    gauss_sum,
    rational,
    to_complex,
    zeta_power,
)
from hecke_identity.algebra.gf_psl2 import (
    ClassKind,
    ConjClassLabel,
    Subgroup,
    classify_class,
    enumerate_classes,
    group_order,
    legendre_symbol,
    require_supported_prime,
    subgroup_elements,
)
from hecke_identity.errors import (
    ExactModeUnavailable,
    InternalInconsistency,
    NotARepresentationTrace,
    UnknownLabel,
)

logger = logging.getLogger(__name__)


class IrrepKind(str, Enum):
    TRIVIAL = "Trivial"
    STEINBERG = "Steinberg"
    PI_CHI = "PiChi"
    PI_RHO = "PiRho"
    PI_PLUS = "PiPlus"
    PI_MINUS = "PiMinus"


@dataclass(frozen=True)
class IrrepLabel:
    kind: IrrepKind
    index: Optional[int] = None

    def degree(self, q: int) -> int:
        return {
            IrrepKind.TRIVIAL: 1,
            IrrepKind.STEINBERG: q,
            IrrepKind.PI_CHI: q + 1,
            IrrepKind.PI_RHO: q - 1,
            IrrepKind.PI_PLUS: (q - 1) // 2,
            IrrepKind.PI_MINUS: (q - 1) // 2,
        }[self.kind]

    def name(self) -> str:
        if self.index is None:
            return self.kind.value
        return f"{self.kind.value}({self.index})"


TRIVIAL = IrrepLabel(IrrepKind.TRIVIAL)
STEINBERG = IrrepLabel(IrrepKind.STEINBERG)
PI_PLUS = IrrepLabel(IrrepKind.PI_PLUS)
PI_MINUS = IrrepLabel(IrrepKind.PI_MINUS)


def enumerate_irreps(q: int) -> List[IrrepLabel]:
    families = (q - 3) // 4
    irreps = [TRIVIAL, STEINBERG]
    irreps += [IrrepLabel(IrrepKind.PI_CHI, j) for j in range(1, families + 1)]
    irreps += [IrrepLabel(IrrepKind.PI_RHO, k) for k in range(1, families + 1)]
    irreps += [PI_PLUS, PI_MINUS]
    return irreps


# --- torus characters --------------------------------------------------------

def _norm_one_mul(x: Tuple[int, int], y: Tuple[int, int], q: int) -> Tuple[int, int]:
    # (a + b i)(c + d i) in F_q(sqrt(-1))
    return ((x[0] * y[0] - x[1] * y[1]) % q, (x[0] * y[1] + x[1] * y[0]) % q)


def _norm_one_generator(q: int) -> Tuple[int, int]:
    """First (a, b) in scan order generating the cyclic group a^2 + b^2 = 1 of order q+1"""
    for a in range(q):
        for b in range(1, q):
            if (a * a + b * b) % q != 1:
                continue
            power, order = (a, b), 1
            while power != (1, 0):
                power = _norm_one_mul(power, (a, b), q)
                order += 1
            if order == q + 1:
                return (a, b)
    raise AssertionError(f"no generator of the norm-one group for q = {q}")


@dataclass(frozen=True)
class _TorusLogs:
    """Discrete logarithms on F_q^x/{+-1} and N^1/{+-1}"""
    split: Dict[int, int]
    norm_one: Dict[Tuple[int, int], int]


def _torus_logs(q: int, g_split: int, g_norm1: Tuple[int, int]) -> _TorusLogs:
    split_order = (q - 1) // 2
    split: Dict[int, int] = {}
    t = 1
    for m in range(q - 1):
        split[t] = m % split_order
        t = t * g_split % q

    norm_order = (q + 1) // 2
    norm_one: Dict[Tuple[int, int], int] = {}
    eps = (1, 0)
    for m in range(q + 1):
        norm_one[eps] = m % norm_order
        eps = _norm_one_mul(eps, g_norm1, q)
    return _TorusLogs(split, norm_one)


# --- the table ---------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable:
    q: int
    classes: Tuple[ConjClassLabel, ...]
    irreps: Tuple[IrrepLabel, ...]
    values: Tuple[Tuple[CycloNumber, ...], ...]
    generator_gsplit: int
    generator_gnorm1: Tuple[int, int]
    mode: str = "exact"
    _row_index: Dict[IrrepLabel, int] = field(default_factory=dict, compare=False, repr=False)
    _col_index: Dict[Tuple, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._row_index.update({irrep: i for i, irrep in enumerate(self.irreps)})
        self._col_index.update({label.key: j for j, label in enumerate(self.classes)})

    @property
    def order(self) -> int:
        return group_order(self.q)

    @property
    def conductor(self) -> int:
        return lcm(self.q, (self.q - 1) // 2, (self.q + 1) // 2)

    def row(self, irrep: IrrepLabel) -> Tuple[CycloNumber, ...]:
        if irrep not in self._row_index:
            raise UnknownLabel(f"{irrep} is not an irreducible of PSL2(F_{self.q})")
        return self.values[self._row_index[irrep]]

    def column_index(self, label: ConjClassLabel) -> int:
        if label.key not in self._col_index:
            raise UnknownLabel(f"{label} is not a conjugacy class of PSL2(F_{self.q})")
        return self._col_index[label.key]

    def class_of_kind(self, kind: ClassKind) -> ConjClassLabel:
        return next(label for label in self.classes if label.kind == kind)


def _character_values(
    irrep: IrrepLabel,
    label: ConjClassLabel,
    q: int,
    logs: _TorusLogs,
    gauss: CycloNumber,
) -> CycloNumber:
    kind = irrep.kind
    split_order = (q - 1) // 2
    norm_order = (q + 1) // 2

    if label.kind == ClassKind.IDENTITY:
        return rational(irrep.degree(q))

    if kind == IrrepKind.TRIVIAL:
        return rational(1)

    if label.kind == ClassKind.SPLIT:
        if kind == IrrepKind.STEINBERG:
            return rational(1)
        if kind == IrrepKind.PI_CHI:
            m = logs.split[label.parameter[0]]
            return zeta_power(split_order, irrep.index * m) + zeta_power(split_order, -irrep.index * m)
        return rational(0)

    if label.kind == ClassKind.NON_SPLIT:
        a, b = label.parameter
        m = logs.norm_one[(a, b)]
        if kind == IrrepKind.STEINBERG:
            return rational(-1)
        if kind == IrrepKind.PI_RHO:
            return -(zeta_power(norm_order, irrep.index * m) + zeta_power(norm_order, -irrep.index * m))
        if kind in (IrrepKind.PI_PLUS, IrrepKind.PI_MINUS):
            # rho_0 is the order-2 character of N^1/{+-1}
            return rational(-1 if m % 2 == 0 else 1)
        return rational(0)

    # unipotent classes: P is UnipotentPlus, P^-1 is UnipotentMinus
    if kind == IrrepKind.STEINBERG:
        return rational(0)
    if kind == IrrepKind.PI_CHI:
        return rational(1)
    if kind == IrrepKind.PI_RHO:
        return rational(-1)
    at_p = kind == IrrepKind.PI_PLUS
    if label.kind == ClassKind.UNIPOTENT_MINUS:
        at_p = not at_p
    return cyclo_conj(gauss) if at_p else gauss


@lru_cache(maxsize=32)
def _build(q: int) -> Tuple[Tuple[ConjClassLabel, ...], Tuple[IrrepLabel, ...], Tuple[Tuple[CycloNumber, ...], ...], int, Tuple[int, int]]:
    classes = tuple(enumerate_classes(q))
    irreps = tuple(enumerate_irreps(q))
    g_split = primitive_root(q)
    g_norm1 = _norm_one_generator(q)
    logs = _torus_logs(q, g_split, g_norm1)
    gauss = gauss_sum(q)

    values = tuple(
        tuple(_character_values(irrep, label, q, logs, gauss) for label in classes)
        for irrep in irreps
    )
    return classes, irreps, values, g_split, g_norm1


def build_character_table(q: int, *, allow_numeric: bool = False) -> CharacterTable:
    """
    Table 1 for PSL2(F_q).

    Exact mode needs lcm(q, (q-1)/2, (q+1)/2) under the cyclotomic ceiling;
    otherwise ExactModeUnavailable is raised, or with allow_numeric the
    table is returned with mode = "numeric" for the floating-point checks.
    """
    require_supported_prime(q)
    conductor = lcm(q, (q - 1) // 2, (q + 1) // 2)
    mode = "exact"
    if conductor > exact_ceiling():
        if not allow_numeric:
            raise ExactModeUnavailable(
                f"conductor {conductor} for q = {q} exceeds exact ceiling {exact_ceiling()}",
                details={'q': q, 'conductor': conductor, 'ceiling': exact_ceiling()},
            )
        mode = "numeric"
        logger.info(f"q = {q}: conductor {conductor} above ceiling, table in numeric mode")

    logger.debug(f"Building character table for q = {q}")
    classes, irreps, values, g_split, g_norm1 = _build(q)
    return CharacterTable(q, classes, irreps, values, g_split, g_norm1, mode)


def character_value(table: CharacterTable, irrep: IrrepLabel, label: ConjClassLabel) -> CycloNumber:
    return table.row(irrep)[table.column_index(label)]


def _require_exact(table: CharacterTable) -> None:
    if table.mode != "exact":
        raise ExactModeUnavailable(
            f"table for q = {table.q} is numeric; use numeric_inner_product",
            details={'q': table.q},
        )


def inner_product(table: CharacterTable, row_a: IrrepLabel, row_b: IrrepLabel) -> Fraction:
    """(1/|G|) sum over classes of size * a * conj(b)"""
    _require_exact(table)
    a, b = table.row(row_a), table.row(row_b)
    total = cyclo_sum(
        label.size * va * cyclo_conj(vb)
        for label, va, vb in zip(table.classes, a, b)
    )
    return total.as_rational() / table.order


def column_inner_product(table: CharacterTable, col_a: ConjClassLabel, col_b: ConjClassLabel) -> Fraction:
    """sum over irreps of value(col_a) * conj(value(col_b)); |G|/size on the diagonal, else 0"""
    _require_exact(table)
    i, j = table.column_index(col_a), table.column_index(col_b)
    total = cyclo_sum(row[i] * cyclo_conj(row[j]) for row in table.values)
    return total.as_rational()


def numeric_inner_product(table: CharacterTable, row_a: IrrepLabel, row_b: IrrepLabel, precision_bits: int = 53) -> complex:
    a, b = table.row(row_a), table.row(row_b)
    total = sum(
        label.size * complex(to_complex(va, precision_bits)) * complex(to_complex(vb, precision_bits)).conjugate()
        for label, va, vb in zip(table.classes, a, b)
    )
    return total / table.order


def numeric_column_inner_product(table: CharacterTable, col_a: ConjClassLabel, col_b: ConjClassLabel, precision_bits: int = 53) -> complex:
    i, j = table.column_index(col_a), table.column_index(col_b)
    return sum(
        complex(to_complex(row[i], precision_bits)) * complex(to_complex(row[j], precision_bits)).conjugate()
        for row in table.values
    )


def max_orthogonality_error(table: CharacterTable, precision_bits: int = 53) -> float:
    """Largest deviation of the floating-point row and column relations from their exact values"""
    values = [[complex(to_complex(v, precision_bits)) for v in row] for row in table.values]
    sizes = [label.size for label in table.classes]
    worst = 0.0

    for i, a in enumerate(values):
        for j in range(i, len(values)):
            b = values[j]
            total = sum(s * x * y.conjugate() for s, x, y in zip(sizes, a, b)) / table.order
            worst = max(worst, abs(total - (1 if i == j else 0)))

    for i, size in enumerate(sizes):
        for j in range(i, len(sizes)):
            total = sum(row[i] * row[j].conjugate() for row in values)
            expected = table.order / size if i == j else 0
            worst = max(worst, abs(total - expected) / (table.order / size))

    logger.debug(f"q = {table.q}: orthogonality error {worst:.3e}")
    return worst


def trivial_multiplicity_on_subgroup(table: CharacterTable, irrep: IrrepLabel, which: Subgroup) -> int:
    """(1/|H|) sum over h in H of the character at h"""
    elements = subgroup_elements(table.q, which)
    total = cyclo_sum(character_value(table, irrep, classify_class(h)) for h in elements)
    value = total.as_rational() / len(elements) if total.is_rational() else None
    if value is None or value.denominator != 1 or value < 0:
        raise InternalInconsistency(
            f"multiplicity of the trivial character of {which} in {irrep.name()} is {total}/{len(elements)}",
            details={'q': table.q, 'irrep': irrep.name(), 'subgroup': str(which)},
        )
    return int(value)


# --- eigenvalue multiplicities of pi(P^-1) -----------------------------------

@dataclass(frozen=True)
class PVector:
    """p(n) = multiplicity of zeta^n as an eigenvalue of pi(P^-1), n = 0..q-1"""
    q: int
    p: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.p)

    def __getitem__(self, n: int) -> int:
        return self.p[n % self.q]


def solve_p_vector(q: int, degree: int, trace_p_inverse: CycloNumber) -> PVector:
    """
    Solve sum p(n) = degree and sum p(n) zeta^n = trace.

    In the basis 1, zeta, ..., zeta^(q-2) the trace has coefficients
    p(n) - p(q-1); the degree equation then fixes p(q-1).
    """
    if q % trace_p_inverse.n:
        raise NotARepresentationTrace(f"trace conductor {trace_p_inverse.n} does not divide {q}")
    # q is prime, so the trace is rational or already in Q(zeta_q); no ceiling applies
    if trace_p_inverse.n == q:
        coeffs = trace_p_inverse.coeffs
    else:
        coeffs = (trace_p_inverse.coeffs[0],) + (Fraction(0),) * (q - 2)

    excess = degree - sum(coeffs)
    if excess % q:
        raise NotARepresentationTrace(
            f"degree {degree} is incompatible with the trace for q = {q}",
            details={'q': q, 'degree': degree},
        )
    last = Fraction(excess, q)
    p = [c + last for c in coeffs] + [last]
    if any(v < 0 or v.denominator != 1 for v in p):
        raise NotARepresentationTrace(
            f"no nonnegative integer solution for degree {degree}",
            details={'q': q, 'degree': degree, 'p': [str(v) for v in p]},
        )
    return PVector(q, tuple(int(v) for v in p))


def p_table_for_irrep(table: CharacterTable, irrep: IrrepLabel) -> PVector:
    """P^-1 lies in the UnipotentMinus class, so its trace is that column's entry"""
    trace = character_value(table, irrep, table.class_of_kind(ClassKind.UNIPOTENT_MINUS))
    return solve_p_vector(table.q, irrep.degree(table.q), trace)


def closed_form_p_vector(q: int, irrep: IrrepLabel) -> PVector:
    """The tabulated p(n) for each family, for comparison with the solver"""
    kind = irrep.kind
    if kind == IrrepKind.TRIVIAL:
        p = [1] + [0] * (q - 1)
    elif kind == IrrepKind.STEINBERG:
        p = [1] * q
    elif kind == IrrepKind.PI_CHI:
        p = [2] + [1] * (q - 1)
    elif kind == IrrepKind.PI_RHO:
        p = [0] + [1] * (q - 1)
    else:
        sign = 1 if kind == IrrepKind.PI_PLUS else -1
        p = [1 if legendre_symbol(n, q) == sign else 0 for n in range(q)]
    return PVector(q, tuple(p))


# --- formal decompositions ---------------------------------------------------

@dataclass(frozen=True)
class DecompVector:
    """Multiplicities x St + y+ pi_+ + y- pi_- + sum u_chi pi_chi + sum v_rho pi_rho"""
    x: int = 0
    y_plus: int = 0
    y_minus: int = 0
    u: Mapping[int, int] = field(default_factory=dict)
    v: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "u", MappingProxyType(dict(self.u)))
        object.__setattr__(self, "v", MappingProxyType(dict(self.v)))

    def __hash__(self):
        return hash((self.x, self.y_plus, self.y_minus, frozenset(self.u.items()), frozenset(self.v.items())))

    @property
    def U(self) -> int:
        return sum(self.u.values())

    @property
    def V(self) -> int:
        return sum(self.v.values())

    @property
    def Y(self) -> int:
        return self.y_plus + self.y_minus

    @property
    def S(self) -> int:
        return self.Y + 2 * self.U + 2 * self.V

    def validate(self, q: int) -> None:
        families = (q - 3) // 4
        for name, mapping in (('u', self.u), ('v', self.v)):
            for index, mult in mapping.items():
                if not 1 <= index <= families:
                    raise UnknownLabel(f"{name} index {index} out of range [1, {families}] for q = {q}")
                if mult < 0:
                    raise ValueError(f"negative multiplicity {mult} for {name}[{index}]")
        if min(self.x, self.y_plus, self.y_minus) < 0:
            raise ValueError("multiplicities must be nonnegative")

    def terms(self) -> List[Tuple[IrrepLabel, int]]:
        terms = [(STEINBERG, self.x), (PI_PLUS, self.y_plus), (PI_MINUS, self.y_minus)]
        terms += [(IrrepLabel(IrrepKind.PI_CHI, j), m) for j, m in sorted(self.u.items())]
        terms += [(IrrepLabel(IrrepKind.PI_RHO, k), m) for k, m in sorted(self.v.items())]
        return [(irrep, mult) for irrep, mult in terms if mult]

    def degree(self, q: int) -> int:
        return sum(irrep.degree(q) * mult for irrep, mult in self.terms())


def eisenstein_decomposition(q: int) -> DecompVector:
    """E_2(Gamma(q)) = St + 2 sum_chi pi_chi"""
    families = (q - 3) // 4
    return DecompVector(x=1, u={j: 2 for j in range(1, families + 1)})


def eigenspace_dim(table: CharacterTable, decomp: DecompVector) -> int:
    """dim of {w : P^-1 w = zeta w}, i.e. sum of mult * p_pi(1)"""
    decomp.validate(table.q)
    return sum(mult * p_table_for_irrep(table, irrep)[1] for irrep, mult in decomp.terms())


def zeta_eigenspace_dim(q: int, cusp_form_decomp: DecompVector, table: Optional[CharacterTable] = None) -> int:
    """Eigenspace dimension on M_2(Gamma(q)) = E_2 + S_2, given the cusp-form decomposition"""
    table = table or build_character_table(q, allow_numeric=True)
    return eigenspace_dim(table, cusp_form_decomp) + eigenspace_dim(table, eisenstein_decomposition(q))


def subgroup_invariants(table: CharacterTable, decomp: DecompVector) -> Tuple[int, int]:
    """(Z(H2), Z(H1)): trivial multiplicity of each torus in the decomposed representation"""
    decomp.validate(table.q)
    z_h2 = sum(mult * trivial_multiplicity_on_subgroup(table, irrep, Subgroup.H2) for irrep, mult in decomp.terms())
    z_h1 = sum(mult * trivial_multiplicity_on_subgroup(table, irrep, Subgroup.H1) for irrep, mult in decomp.terms())
    return z_h2, z_h1
