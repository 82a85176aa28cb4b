# central_char.py
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from config import VerifierConfig
from errors import UnsupportedCase
from exactmath import ExactMatrix, MultiPoly, format_rational, poly_identity_test
from functor_image import FunctorParams, derive, eigenvalue_table, require_admissible

SHIFT_ORDERS = ('shift-then-conjugate', 'conjugate-then-shift')
YCC_CONSTANT_TERMS = ('corrected', 'as-printed')
CASE_KINDS = ('case1', 'case2', 'equal-rank')

# Differences of higher total degree go to random-point testing instead of expansion
SYMBOLIC_DEGREE_LIMIT = 12

MU = sympy.Symbol('mu')
TAU = sympy.Symbol('tau')
R = sympy.Rational


def nu_symbols(p: int) -> List[sympy.Symbol]:
    return [sympy.Symbol(f'nu{i}') for i in range(1, p + 1)]


def parameter_variables(p: int) -> List[str]:
    return ['mu', 'tau'] + [f'nu{i}' for i in range(1, p + 1)]


@dataclass(frozen=True)
class CaseTag:
    """Shape of an n = 1 parameter pack: case1 and equal-rank carry the deficient index k."""
    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise UnsupportedCase(f"unknown case {self.kind!r}")
        if self.kind != 'case2' and self.k < 1:
            raise UnsupportedCase(f"{self.kind} needs a position k >= 1")

    def __str__(self):
        return self.kind if self.kind == 'case2' else f'{self.kind}(k={self.k})'


@dataclass(frozen=True)
class CasimirPoly:
    N: int
    k: int
    poly: MultiPoly


@dataclass(frozen=True)
class InfinitesimalCharacter:
    case: CaseTag
    lam: Tuple[MultiPoly, ...]
    nu: Tuple[MultiPoly, ...]


def _check_shape(p: int, q: int, case: CaseTag):
    if p < 1 or q < p:
        raise UnsupportedCase(f"unsupported rank pair (p, q) = ({p}, {q})")
    if case.kind == 'equal-rank' and q != p:
        raise UnsupportedCase("the equal-rank shape needs p = q")
    if case.kind != 'equal-rank' and q == p:
        raise UnsupportedCase(f"{case.kind} needs q > p; use the equal-rank shape")
    if case.kind != 'case2' and case.k > p:
        raise UnsupportedCase(f"k={case.k} exceeds p={p}")


def casimir_restriction(k: int, N: int) -> CasimirPoly:
    """Restriction of C_k to the diagonal Cartan, in variables E1..EN."""
    E = [sympy.Symbol(f'E{i}') for i in range(1, N + 1)]
    variables = [e.name for e in E]
    if k == 2:
        expr = sum((E[i - 1] ** 2 + (N - 2 * i + 1) * E[i - 1] for i in range(1, N + 1)), sympy.Integer(0))
    elif k == 3:
        expr = sympy.Integer(0)
        for i in range(1, N + 1):
            e = E[i - 1]
            expr += e ** 3 + (2 * N - 3 * i + 1) * e ** 2 + (N - i) * (N - 2 * i + 1) * e
            for j in range(i + 1, N + 1):
                expr += (-N + 2 * i - 1) * E[j - 1] - e * E[j - 1]
    else:
        raise UnsupportedCase(f"Casimir elements of degree {k} are not supported")
    return CasimirPoly(N, k, MultiPoly(expr, variables))


def infinitesimal_character(p: int, q: int, case: CaseTag) -> InfinitesimalCharacter:
    """(λ, ν) with λ of length q (torus part first, then the U(q−p) part)."""
    _check_shape(p, q, case)
    variables = parameter_variables(p)
    torus = MU * (q - p) + 2 * TAU
    lam = [torus] * p
    if case.kind in ('case1', 'equal-rank'):
        lam[case.k - 1] = torus - 1
    for j in range(1, q - p + 1):
        lam.append(R(q - p - 1, 2) - MU * p + TAU - (j - 1))
    if case.kind == 'case2':
        lam[-1] = lam[-1] - 1
    return InfinitesimalCharacter(case, tuple(MultiPoly(v, variables) for v in lam),
                                  tuple(MultiPoly(v, variables) for v in nu_symbols(p)))


def _conjugation(p: int, q: int) -> Dict[str, MultiPoly]:
    """E-coordinates of diag(h − a, h + a, b)."""
    mapping = {}
    for i in range(1, p + 1):
        h, a = sympy.Symbol(f'h{i}'), sympy.Symbol(f'a{i}')
        mapping[f'E{i}'] = MultiPoly(h - a)
        mapping[f'E{p + i}'] = MultiPoly(h + a)
    for j in range(1, q - p + 1):
        mapping[f'E{2 * p + j}'] = MultiPoly(sympy.Symbol(f'b{j}'))
    return mapping


def _hc_shift(names: Sequence[str], N: int) -> Dict[str, MultiPoly]:
    """names[i-1] ↦ names[i-1] − (N − 2i + 1)/2."""
    return {name: MultiPoly(sympy.Symbol(name) - R(N - 2 * i + 1, 2))
            for i, name in enumerate(names, start=1)}


def evaluate_character(p: int, q: int, case: CaseTag,
                       order: str = 'shift-then-conjugate') -> Tuple[MultiPoly, MultiPoly]:
    """(c₂, c₃) as polynomials in μ, τ, ν₁..ν_p."""
    if order not in SHIFT_ORDERS:
        raise ValueError(f"unknown shift order {order!r}")
    N = p + q
    character = infinitesimal_character(p, q, case)
    e_names = [f'E{i}' for i in range(1, N + 1)]
    conjugation = _conjugation(p, q)
    # position order of the conjugated coordinates: h_1..h_p, a_1..a_p, b_1..
    hab_names = ([f'h{i}' for i in range(1, p + 1)] + [f'a{i}' for i in range(1, p + 1)]
                 + [f'b{j}' for j in range(1, q - p + 1)])
    point: Dict[str, MultiPoly] = {}
    for i in range(1, p + 1):
        point[f'h{i}'] = character.lam[i - 1] / 2
        point[f'a{i}'] = character.nu[i - 1] / 2
    for j in range(1, q - p + 1):
        point[f'b{j}'] = character.lam[p + j - 1]
    results = []
    for k in (2, 3):
        poly = casimir_restriction(k, N).poly
        if order == 'shift-then-conjugate':
            poly = poly.substitute(_hc_shift(e_names, N)).substitute(conjugation)
        else:
            poly = poly.substitute(conjugation).substitute(_hc_shift(hab_names, N))
        results.append(MultiPoly(poly.substitute(point).expr, parameter_variables(p)))
    return results[0], results[1]


def displayed_character(p: int, q: int, case: CaseTag) -> Tuple[MultiPoly, MultiPoly]:
    """The closed-form c₂, c₃ as printed; the equal-rank shape uses the Case 1 formulas at q = p."""
    _check_shape(p, q, case)
    mu, tau = MU, TAU
    nus = nu_symbols(p)
    S = sum((v ** 2 for v in nus), sympy.Integer(0))
    variables = parameter_variables(p)
    if case.kind in ('case1', 'equal-rank'):
        nu_k = nus[case.k - 1]
        c2 = (S / 2 - R(p ** 3, 6) - R(p * q ** 2, 2) + R(p, 6) + R(1, 2) + mu * (p - q)
              + (-p ** 3 * mu ** 2 + p * q ** 2 * mu ** 2) / 2 - 2 * tau + tau ** 2 * (p + q))
        c3 = (R(p + q, 4) * S - R(3, 4) * nu_k ** 2 - R(p * q ** 3, 4) - R(p ** 2 * q ** 2, 4) + R(q ** 2, 4)
              - R(p ** 3 * q, 12) + R(7 * p * q, 12) + R(q, 4) - R(p ** 4, 12) + R(p ** 2, 3) + R(p, 4) - 1
              - R(3, 4) * mu * (p - q) * S + R(1, 4) * mu ** 3 * p * q ** 3 - R(3, 4) * mu ** 3 * p ** 2 * q ** 2
              - R(1, 4) * mu ** 3 * p ** 3 * q + R(3, 4) * mu ** 3 * p ** 4 + R(1, 4) * mu ** 2 * p * q ** 3
              + R(1, 4) * mu ** 2 * p ** 2 * q ** 2 - R(3, 4) * mu ** 2 * q ** 2 - R(1, 4) * mu ** 2 * p ** 3 * q
              + R(3, 2) * mu ** 2 * p * q - R(1, 4) * mu ** 2 * p ** 4 - R(3, 4) * mu ** 2 * p ** 2
              - R(1, 4) * mu * p * q ** 3 + R(3, 4) * mu * p ** 2 * q ** 2
              - R(1, 2) * mu * q ** 2 - R(3, 4) * mu * p ** 3 * q + R(1, 4) * mu * p * q + R(3, 4) * mu * q
              + R(1, 4) * mu * p ** 4 + R(1, 4) * mu * p ** 2 - R(3, 4) * mu * p + R(3, 2) * tau * S
              + tau ** 3 * (p + q)
              - 3 * tau ** 2 + R(3, 2) * mu ** 2 * tau * p * q ** 2 - R(3, 2) * mu ** 2 * tau * p ** 3
              - 3 * mu * tau * q + 3 * mu * tau * p - R(3, 2) * tau * p * q ** 2 - R(1, 2) * tau * p ** 3
              + R(1, 2) * tau * p + R(3, 2) * tau)
    else:
        c2 = (S / 2 - R(p * q ** 2, 2) + q - R(p ** 3, 6) - R(5 * p, 6) + R(1, 2) * mu ** 2 * p * q ** 2
              - R(1, 2) * mu ** 2 * p ** 3 + 2 * mu * p - 2 * tau + tau ** 2 * (p + q))
        c3 = (R(p + q, 4) * S - R(p * q ** 3, 4) - R(p ** 2 * q ** 2, 4) - R(p ** 3 * q, 12) + R(25 * p * q, 12)
              - R(p ** 4, 12) - R(11 * p ** 2, 12) - 1
              + R(3, 4) * mu * (q - p) * S + R(1, 4) * mu ** 3 * p * q ** 3 - R(3, 4) * mu ** 3 * p ** 2 * q ** 2
              - R(1, 4) * mu ** 3 * p ** 3 * q + R(3, 4) * mu ** 3 * p ** 4 + R(1, 4) * mu ** 2 * p * q ** 3
              + R(1, 4) * mu ** 2 * p ** 2 * q ** 2 - R(1, 4) * mu ** 2 * p ** 3 * q - R(1, 4) * mu ** 2 * p ** 4
              - 3 * mu ** 2 * p ** 2 - R(1, 4) * mu * p * q ** 3 + R(3, 4) * mu * p ** 2 * q ** 2
              - R(3, 4) * mu * p ** 3 * q
              - R(7, 4) * mu * p * q + R(1, 4) * mu * p ** 4 + R(15, 4) * mu * p ** 2 - R(5, 2) * tau * p
              - R(1, 2) * tau * p ** 3 + 3 * tau * q - R(3, 2) * tau * p * q ** 2 + 6 * mu * tau * p
              - R(3, 2) * mu ** 2 * tau * p ** 3 + R(3, 2) * mu ** 2 * tau * p * q ** 2 - 3 * tau ** 2
              + tau ** 3 * (p + q))
    return MultiPoly(c2, variables), MultiPoly(c3, variables)


def identity_holds(difference: MultiPoly, rng: random.Random, samples: int = 20,
                   bound: int = 10 ** 4) -> Tuple[bool, str]:
    """Zero test of a polynomial difference: exact expansion, or random points past the degree limit."""
    if difference.total_degree <= SYMBOLIC_DEGREE_LIMIT:
        return difference.is_zero(), 'symbolic'
    return poly_identity_test(difference, rng, samples, bound), 'random-points'


def character_residuals(p: int, q: int, case: CaseTag, order: str = 'shift-then-conjugate',
                        rng: Optional[random.Random] = None) -> Dict[str, Any]:
    """Printed minus computed c₂, c₃; an empty residual means the printed formula is reproduced."""
    rng = rng or random.Random(0)
    computed = evaluate_character(p, q, case, order)
    printed = displayed_character(p, q, case)
    report: Dict[str, Any] = {'p': p, 'q': q, 'case': str(case), 'order': order}
    for name, mine, theirs in zip(('c2', 'c3'), computed, printed):
        residual = theirs - mine
        holds, method = identity_holds(residual, rng)
        report[name] = {'matches': holds, 'method': method, 'residual': '0' if holds else str(residual)}
    return report


def ycc_rhs(c2: Any, c3: Any, p: int, q: int, constant_term: str = 'corrected') -> MultiPoly:
    """Right-hand side of the y₁² identity at n = 1, in the variables of c₂, c₃ and μ, τ.

    For p = q the simplified equal-rank form is used whatever the constant term.
    """
    if constant_term not in YCC_CONSTANT_TERMS:
        raise ValueError(f"unknown constant term reading {constant_term!r}")
    c2, c3 = MultiPoly.coerce(c2), MultiPoly.coerce(c3)
    mu, tau = MultiPoly.variable('mu'), MultiPoly.variable('tau')
    if p == q:
        return (-c3 / 3 + (tau + R(p, 3)) * c2 + R(p ** 2, 3) - R(1, 3) + tau ** 2
                + tau * R(2 * p, 3) * (1 - tau * p - tau ** 2 * 2))
    if constant_term == 'corrected':
        square = (mu * (p - q) - tau * 2) ** 2 / 4
    else:
        square = (tau * (-2) + (p - q)) ** 2 * mu ** 2 / 4
    return (-c3 / 3 + (mu * (q - p) + tau * 2 + R(p + q, 3)) * c2 / 2 + R((p + q) ** 2, 12) - R(1, 3) + square
            - mu * (1 - mu ** 2) * R(p * q * (p - q) * (p + q), 6)
            + tau * (p + q) * (2 - tau * (p + q) + mu * tau * 3 * (p - q) - tau ** 2 * 4) / 6)


def expected_y_square(p: int, q: int, case: CaseTag) -> MultiPoly:
    """λ_{1,1}²: ν_k²/4 for the deficient torus shapes, ((q−p+μ(p+q))/2)² for Case 2."""
    variables = parameter_variables(p)
    if case.kind == 'case2':
        return MultiPoly(((q - p + MU * (p + q)) / 2) ** 2, variables)
    return MultiPoly(nu_symbols(p)[case.k - 1] ** 2 / 4, variables)


def classify_case(params: FunctorParams) -> CaseTag:
    if params.n != 1:
        raise UnsupportedCase(f"central-character shapes need n = 1, got n = {params.n}")
    d = derive(params)
    p, q, mu = params.p, params.q, params.mu
    torus = mu * (q - p) + 2 * d.tau
    compact = -mu * p + d.tau
    deficits = [torus - v for v in params.nvec]
    xi_deficits = [compact - v for v in params.xi]
    if all(x == 0 for x in xi_deficits) and sorted(deficits) == [0] * (p - 1) + [1]:
        return CaseTag('equal-rank' if q == p else 'case1', deficits.index(1) + 1)
    if q > p and all(v == 0 for v in deficits) and xi_deficits == [0] * (q - p - 1) + [1]:
        return CaseTag('case2')
    raise UnsupportedCase(f"parameters {params.to_dict()} fit neither central-character shape")


def shift_order_outcomes(rng: Optional[random.Random] = None) -> Dict[str, bool]:
    """Whether each shift order reproduces the printed Case 1 c₂ at (p, q) = (1, 2)."""
    outcomes = {}
    for order in SHIFT_ORDERS:
        outcomes[order] = character_residuals(1, 2, CaseTag('case1', 1), order, rng)['c2']['matches']
    return outcomes


@dataclass
class CentralResult:
    p: int
    q: int
    case: CaseTag
    order: str
    constant_term: str
    c2: MultiPoly
    c3: MultiPoly
    y_square: MultiPoly
    expected: MultiPoly
    holds: bool
    method: str
    constant_terms: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p, 'q': self.q, 'case': str(self.case), 'order': self.order,
            'constant_term': self.constant_term,
            'c2': str(self.c2), 'c3': str(self.c3),
            'y1_squared': self.y_square.factored(), 'expected': self.expected.factored(),
            'identity_holds': self.holds, 'method': self.method,
            'constant_terms': self.constant_terms,
        }


class CentralCharacterChecker:
    """Checks the y₁² identity against the central characters of the principal series."""

    def __init__(self, logger, config: Optional[VerifierConfig] = None):
        self.logger = logger
        self.config = config or VerifierConfig()
        self.rng = random.Random(self.config.PIT_SEED)
        self._constant_terms: Dict[str, str] = {}

    def _holds(self, difference: MultiPoly) -> Tuple[bool, str]:
        return identity_holds(difference, self.rng, int(self.config.PIT_SAMPLES), int(self.config.PIT_BOUND))

    def constant_term_outcomes(self, order: str = 'shift-then-conjugate') -> Dict[str, bool]:
        """Whether each constant-term reading reproduces λ_{1,1}² on every (1, 2) shape."""
        outcomes = {reading: True for reading in YCC_CONSTANT_TERMS}
        for case in self.cases_for(1, 2):
            c2, c3 = evaluate_character(1, 2, case, order)
            expected = expected_y_square(1, 2, case)
            for reading in YCC_CONSTANT_TERMS:
                if outcomes[reading]:
                    outcomes[reading] = self._holds(ycc_rhs(c2, c3, 1, 2, reading) - expected)[0]
        return outcomes

    def default_constant_term(self, order: str = 'shift-then-conjugate') -> str:
        fixed = self.config.YCC_CONSTANT_TERM
        if fixed in YCC_CONSTANT_TERMS:
            return fixed
        if fixed not in (None, 'auto'):
            raise ValueError(f"unknown constant term reading {fixed!r}")
        if order not in self._constant_terms:
            outcomes = self.constant_term_outcomes(order)
            self._constant_terms[order] = next((r for r in YCC_CONSTANT_TERMS if outcomes[r]), YCC_CONSTANT_TERMS[0])
        return self._constant_terms[order]

    def check(self, p: int, q: int, case: CaseTag, order: str = 'shift-then-conjugate',
              constant_term: Optional[str] = None) -> CentralResult:
        constant_term = constant_term or self.default_constant_term(order)
        c2, c3 = evaluate_character(p, q, case, order)
        expected = expected_y_square(p, q, case)
        outcomes = {}
        for reading in YCC_CONSTANT_TERMS:
            outcomes[reading] = self._holds(ycc_rhs(c2, c3, p, q, reading) - expected)[0]
        value = ycc_rhs(c2, c3, p, q, constant_term)
        holds, method = self._holds(value - expected)
        self.logger.info(f"({p},{q}) {case}: y1^2 = {value.factored()}, expected {expected.factored()}, "
                         f"identity {'holds' if holds else 'FAILS'}")
        return CentralResult(p, q, case, order, constant_term, c2, c3, value, expected, holds, method, outcomes)

    def evaluate_at(self, result: CentralResult, point: Dict[str, Any]) -> Dict[str, str]:
        """c₂, c₃ and y₁² at a numeric point {mu, tau, nu1, ...}."""
        return {name: format_rational(poly.evaluate(point))
                for name, poly in (('c2', result.c2), ('c3', result.c3), ('y1_squared', result.y_square))}

    def cases_for(self, p: int, q: int) -> List[CaseTag]:
        if p == q:
            return [CaseTag('equal-rank', k) for k in range(1, p + 1)]
        return [CaseTag('case1', k) for k in range(1, p + 1)] + [CaseTag('case2')]

    def residuals(self, p: int, q: int, case: CaseTag, order: str) -> Dict[str, Any]:
        report = character_residuals(p, q, case, order, self.rng)
        for name in ('c2', 'c3'):
            if not report[name]['matches']:
                self.logger.warning(f"printed {name} for ({p},{q}) {case} differs by {report[name]['residual']}")
        return report

    def end_to_end_check(self, params: FunctorParams, model, order: str = 'shift-then-conjugate',
                         constant_term: Optional[str] = None) -> Dict[str, Any]:
        """Compare y₁² on the tensor model with the identity evaluated at the same parameters."""
        case = classify_case(params)
        d = require_admissible(params)
        y1 = model.y_operator(1)
        square = y1 @ y1
        dim = square.rows
        scalar = square.get(0, 0) if dim else None
        is_scalar = dim > 0 and square == ExactMatrix.identity(dim).scale(scalar)
        constant_term = constant_term or self.default_constant_term(order)
        c2, c3 = evaluate_character(params.p, params.q, case, order)
        point = {'mu': params.mu, 'tau': d.tau}
        point.update({f'nu{i}': v for i, v in enumerate(params.nu, start=1)})
        rhs = ycc_rhs(c2, c3, params.p, params.q, constant_term).evaluate(point)
        eigen = eigenvalue_table(params).values[0][0]
        result = {
            'case': str(case),
            'order': order,
            'constant_term': constant_term,
            'dimension': dim,
            'y1_squared_is_scalar': is_scalar,
            'tensor_value': None if scalar is None else format_rational(scalar),
            'identity_value': format_rational(rhs),
            'eigenvalue_squared': format_rational(eigen ** 2),
            'holds': is_scalar and scalar == rhs == eigen ** 2,
        }
        self.logger.info(f"End-to-end {case}: tensor {result['tensor_value']}, identity {result['identity_value']}")
        return result
