# functor_image.py
import json
from dataclasses import dataclass
from math import factorial, prod
from typing import Any, Dict, List, Optional, Tuple

import sympy

from daha import DahaPresentation, InductionData, LinearRep, induce_module, make_presentation
from errors import InadmissibleParameters, ParameterError, PresentationError
from exactmath import ExactMatrix, as_rational, format_rational
from symcomb import Partition, Perm, murphy_basis, specht_dimension, specht_matrices
from utils import read_json_file

HECKE_READINGS = ('as-written', 'long-root')
INDEX_READINGS = ('k-m_p', 'k-m_p+1')

# Reading under which the explicit tensor model satisfies the relations
DEFAULT_HECKE_READING = 'long-root'


@dataclass(frozen=True)
class FunctorParams:
    p: int
    q: int
    n: int
    mu: sympy.Rational
    nvec: Tuple[int, ...]
    xi: Tuple[int, ...] = ()
    nu: Tuple[sympy.Rational, ...] = ()

    def __post_init__(self):
        for name in ('p', 'q', 'n'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")
        if self.q < self.p:
            raise ParameterError(f"q={self.q} must be at least p={self.p}")
        object.__setattr__(self, 'mu', as_rational(self.mu))
        object.__setattr__(self, 'nvec', tuple(_as_int(v, 'nvec') for v in self.nvec))
        object.__setattr__(self, 'xi', tuple(_as_int(v, 'xi') for v in self.xi))
        nu = tuple(as_rational(v) for v in self.nu) if self.nu else tuple(
            sympy.Rational(2 * i + 1, 2 * i + 3) for i in range(self.p))
        object.__setattr__(self, 'nu', nu)
        if len(self.nvec) != self.p:
            raise ParameterError(f"nvec needs {self.p} entries, got {len(self.nvec)}")
        if len(self.xi) != self.q - self.p:
            raise ParameterError(f"xi needs q-p={self.q - self.p} entries, got {len(self.xi)}")
        if any(self.xi[i] < self.xi[i + 1] for i in range(len(self.xi) - 1)):
            raise ParameterError(f"xi must be weakly decreasing: {self.xi}")
        if len(self.nu) != self.p:
            raise ParameterError(f"nu needs {self.p} entries, got {len(self.nu)}")

    @property
    def N(self) -> int:
        return self.p + self.q

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FunctorParams':
        if not isinstance(data, dict):
            raise ParameterError("parameter document must be a JSON object")
        missing = [k for k in ('p', 'q', 'n', 'mu', 'nvec') if k not in data]
        if missing:
            raise ParameterError(f"missing parameter fields: {', '.join(missing)}")
        unknown = sorted(set(data) - {'p', 'q', 'n', 'mu', 'nvec', 'xi', 'nu', 'label'})
        if unknown:
            raise ParameterError(f"unknown parameter fields: {', '.join(unknown)}")
        try:
            return cls(
                p=_as_int(data['p'], 'p'),
                q=_as_int(data['q'], 'q'),
                n=_as_int(data['n'], 'n'),
                mu=as_rational(data['mu']),
                nvec=tuple(data['nvec']),
                xi=tuple(data.get('xi', ())),
                nu=tuple(as_rational(v) for v in data.get('nu', ())),
            )
        except (TypeError, ValueError, sympy.SympifyError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"malformed parameter value: {exc}") from exc

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'q': self.q,
            'n': self.n,
            'mu': format_rational(self.mu),
            'nvec': list(self.nvec),
            'xi': list(self.xi),
            'nu': [format_rational(v) for v in self.nu],
        }


def _as_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ParameterError(f"{name}: booleans are not integers")
    try:
        r = as_rational(value)
    except (TypeError, ValueError, sympy.SympifyError) as exc:
        raise ParameterError(f"{name}: {value!r} is not an integer") from exc
    if r.q != 1:
        raise ParameterError(f"{name}: {value!r} is not an integer")
    return int(r)


def load_params(path: str) -> FunctorParams:
    return FunctorParams.from_dict(read_json_file(path))


def dump_params(params: FunctorParams) -> str:
    return json.dumps(params.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class DerivedParams:
    tau: sympy.Rational
    n_mu: Tuple[sympy.Rational, ...]
    xi_mu: Tuple[sympy.Rational, ...]
    n_xi: sympy.Rational
    m: Tuple[sympy.Rational, ...]
    kappa1: sympy.Rational
    kappa2: sympy.Rational
    rho: Tuple[sympy.Rational, ...]
    rho_branch: str

    def block_sizes(self) -> Tuple[int, ...]:
        """(n_1^μ, ..., n_p^μ, n_ξ^μ) as integers; only meaningful when admissible."""
        return tuple(int(v) for v in self.n_mu) + (int(self.n_xi),)

    def xi_partition(self) -> Partition:
        return Partition.from_sequence(int(v) for v in self.xi_mu)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tau': format_rational(self.tau),
            'n_mu': [format_rational(v) for v in self.n_mu],
            'xi_mu': [format_rational(v) for v in self.xi_mu],
            'n_xi_mu': format_rational(self.n_xi),
            'm': [format_rational(v) for v in self.m],
            'kappa1': format_rational(self.kappa1),
            'kappa2': format_rational(self.kappa2),
            'rho': [format_rational(v) for v in self.rho],
            'rho_branch': self.rho_branch,
        }


def derive(params: FunctorParams) -> DerivedParams:
    p, q, n, mu = params.p, params.q, params.n, params.mu
    if (mu * p).q != 1 or (mu * q).q != 1:
        raise ParameterError(f"mu*p and mu*q must be integers (mu={mu}, p={p}, q={q})")
    N = p + q
    tau = sympy.Rational(sum(params.nvec) + sum(params.xi) + n, N)
    n_mu = tuple(-ni + mu * (q - p) + 2 * tau for ni in params.nvec)
    xi_mu = tuple(-params.xi[q - p - i] - mu * p + tau for i in range(1, q - p + 1))
    n_xi = sum(xi_mu, sympy.Rational(0))
    m = [sympy.Rational(0)]
    for value in n_mu:
        m.append(m[-1] + value)
    m.append(sympy.Rational(n))
    kappa1 = sympy.Rational(p - q, 2) - mu * N / 2
    if q > p:
        rho = tuple(-sympy.Rational(N, 2) + i - sympy.Rational(1, 2) + params.nu[i - 1] / 2 for i in range(1, p + 1))
        branch = 'q>p'
    else:
        rho = tuple(-p + i - sympy.Rational(1, 2) + params.nu[i - 1] / 2 for i in range(1, p + 1))
        branch = 'q=p'
    return DerivedParams(tau, n_mu, xi_mu, n_xi, tuple(m), kappa1, sympy.Rational(1), rho, branch)


def validate(params: FunctorParams) -> List[str]:
    """Violated admissibility conditions; an empty list means admissible."""
    d = derive(params)
    p, q, mu = params.p, params.q, params.mu
    violations = []
    for i, (ni, value) in enumerate(zip(params.nvec, d.n_mu), start=1):
        if value.q != 1 or value < 0:
            violations.append(
                f"n_{i} - mu(q-p) - 2tau = {format_rational(-value)} is not a non-positive integer "
                f"(n_{i}^mu = {format_rational(value)})")
    shifted = [x + mu * p - d.tau for x in params.xi]
    if shifted:
        if any(v.q != 1 for v in shifted):
            violations.append(f"xi + mu*p - tau = {[format_rational(v) for v in shifted]} is not integral")
        elif any(shifted[i] < shifted[i + 1] for i in range(len(shifted) - 1)):
            violations.append(f"xi + mu*p - tau = {[format_rational(v) for v in shifted]} is not dominant")
        elif shifted[0] > 0:
            violations.append(f"xi_1 + mu*p - tau = {format_rational(shifted[0])} is positive")
    total = sum(d.n_mu, sympy.Rational(0)) + d.n_xi
    if total != params.n:
        violations.append(f"sum n_i^mu + n_xi^mu = {format_rational(total)} differs from n = {params.n}")
    return violations


def is_admissible(params: FunctorParams) -> bool:
    return not validate(params)


def require_admissible(params: FunctorParams) -> DerivedParams:
    violations = validate(params)
    if violations:
        raise InadmissibleParameters(violations)
    return derive(params)


@dataclass(frozen=True)
class DimensionFormula:
    total: int
    coset_factor: int
    specht_factor: int
    coset_factor_bare: Optional[sympy.Rational] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {'dimension': self.total, 'C_mu': self.coset_factor, 'd_xi_mu': self.specht_factor}
        if self.coset_factor_bare is not None:
            data['C_mu_without_factorials'] = format_rational(self.coset_factor_bare)
        return data


def predicted_dimension(params: FunctorParams) -> DimensionFormula:
    """n!·∏2^{n_i^μ} / (∏n_i^μ!·∏h_k(ξ^μ)) = C^μ · d_{ξ^μ}."""
    d = require_admissible(params)
    blocks = d.block_sizes()
    *a_blocks, n_xi = blocks
    shape = d.xi_partition()
    numerator = factorial(params.n) * prod(2 ** b for b in a_blocks)
    total = numerator // (prod(factorial(b) for b in a_blocks) * prod(shape.hook_lengths()))
    coset = numerator // (prod(factorial(b) for b in a_blocks) * factorial(n_xi))
    bare_denominator = prod(a_blocks) * factorial(n_xi)
    bare = sympy.Rational(numerator, bare_denominator) if bare_denominator else None
    formula = DimensionFormula(total, coset, specht_dimension(shape), bare)
    if formula.coset_factor * formula.specht_factor != formula.total:
        raise ArithmeticError("dimension factorization mismatch")
    return formula


def psi_set_cardinality(params: FunctorParams) -> int:
    """Number of (α, β) with α_i + β_i = n_i^μ, the set reading of C^μ."""
    d = require_admissible(params)
    return prod(int(v) + 1 for v in d.n_mu)


def relation_constants(params: FunctorParams,
                       reading: str = DEFAULT_HECKE_READING) -> Tuple[sympy.Rational, sympy.Rational]:
    """(S-relation constant, γ-relation constant) of the target algebra.

    'as-written' pairs (κ₁, κ₂) = ((p−q−μN)/2, 1) with the S and γ relations in that order;
    'long-root' scales the γ reflection by its root length, giving (κ₂, 2κ₁).
    """
    d = derive(params)
    if reading == 'as-written':
        return d.kappa1, d.kappa2
    if reading == 'long-root':
        return d.kappa2, 2 * d.kappa1
    raise ValueError(f"unknown Hecke parameter reading {reading!r}")


def target_presentation(params: FunctorParams, reading: str = DEFAULT_HECKE_READING,
                        mixed_coxeter: bool = True) -> DahaPresentation:
    return make_presentation('BC', params.n, relation_constants(params, reading), mixed_coxeter=mixed_coxeter)


@dataclass(frozen=True)
class EigenvalueTable:
    """λ_{k,s} for k = 1..n (rows) and s = 1..d (columns); None marks an index overflow."""
    values: Tuple[Tuple[Optional[sympy.Rational], ...], ...]
    index_reading: str

    @property
    def complete(self) -> bool:
        return all(v is not None for row in self.values for v in row)

    def column(self, s: int) -> Tuple[Optional[sympy.Rational], ...]:
        return tuple(row[s] for row in self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index_reading': self.index_reading,
            'complete': self.complete,
            'rows': [[None if v is None else format_rational(v) for v in row] for row in self.values],
        }


def eigenvalue_table(params: FunctorParams, index_reading: str = 'k-m_p') -> EigenvalueTable:
    if index_reading not in INDEX_READINGS:
        raise ValueError(f"unknown eigenvalue index reading {index_reading!r}")
    d = require_admissible(params)
    p, q, mu = params.p, params.q, params.mu
    shape = d.xi_partition()
    alpha_hat = murphy_basis(shape, 'Lhat').eigenvalues
    dim = len(alpha_hat)
    m = [int(v) for v in d.m]
    shift = 0 if index_reading == 'k-m_p' else 1
    offset = -(sympy.Rational(p - q) - mu * (p + q)) / 2
    rows = []
    for k in range(1, params.n + 1):
        row: List[Optional[sympy.Rational]] = []
        for s in range(dim):
            block = next((r for r in range(1, p + 1) if m[r - 1] < k <= m[r]), None)
            if block is not None:
                value = params.nu[block - 1] / 2 + sympy.Rational(m[block] + m[block - 1], 2) - k + sympy.Rational(1, 2)
                row.append(value)
                continue
            idx = k - m[p] + shift
            if 1 <= idx <= shape.size:
                row.append(offset + alpha_hat[s][idx - 1])
            else:
                row.append(None)
        rows.append(tuple(row))
    return EigenvalueTable(tuple(rows), index_reading)


class MurphySeedAction:
    """S_{n_ξ} acting on the Lhat Murphy basis of S^{ξ^μ}."""

    def __init__(self, shape: Partition):
        self.shape = shape
        self.module = specht_matrices(shape)
        self.change = murphy_basis(shape, 'Lhat').matrix
        self.change_inverse = self.change.inverse() if self.change.rows else self.change
        self._cache: Dict[Perm, ExactMatrix] = {}

    def __call__(self, perm: Perm) -> ExactMatrix:
        if perm not in self._cache:
            self._cache[perm] = self.change_inverse @ self.module.action(perm) @ self.change
        return self._cache[perm]


def build_induction_data(params: FunctorParams, index_reading: str = 'k-m_p') -> InductionData:
    d = require_admissible(params)
    table = eigenvalue_table(params, index_reading)
    if not table.complete:
        raise PresentationError(f"eigenvalue table incomplete under index reading {index_reading}")
    shape = d.xi_partition()
    action = MurphySeedAction(shape)
    return InductionData(d.block_sizes(), table.values, action, action.module.dimension)


def build_P_tilde(params: FunctorParams, hecke_reading: str = DEFAULT_HECKE_READING,
                  index_reading: str = 'k-m_p') -> LinearRep:
    data = build_induction_data(params, index_reading)
    return induce_module(data, target_presentation(params, hecke_reading))
