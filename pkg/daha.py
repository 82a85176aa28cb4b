# daha.py
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from errors import PresentationError
from exactmath import ExactMatrix, as_rational, format_rational, nullspace, random_rational, restrict
from symcomb import CosetTable, Perm, SignedPermutation, bc_generator, word_to_element

Word = Tuple[str, ...]
Term = Tuple[sympy.Rational, Word]


@dataclass(frozen=True)
class Relation:
    """Σ coefficient · word = 0, the empty word standing for the identity."""
    name: str
    terms: Tuple[Term, ...]
    kind: str = 'cross'

    def generators(self) -> set:
        return {letter for _, word in self.terms for letter in word}


@dataclass(frozen=True)
class DahaPresentation:
    kind: str
    n: int
    params: Tuple[sympy.Rational, ...]
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]
    sum_zero: bool = False
    mixed_coxeter: bool = True

    @property
    def group_generators(self) -> Tuple[str, ...]:
        return tuple(g for g in self.generators if not g.startswith('y'))

    @property
    def y_generators(self) -> Tuple[str, ...]:
        return tuple(g for g in self.generators if g.startswith('y'))

    def describe(self) -> str:
        values = ', '.join(format_rational(k) for k in self.params)
        return f"{self.kind}_{self.n}({values})"


def _identity_relation(name: str, word: Word, kind: str = 'coxeter') -> Relation:
    return Relation(name, ((sympy.Rational(1), word), (sympy.Rational(-1), ())), kind)


def _commutator(name: str, a: str, b: str, kind: str = 'commute') -> Relation:
    return Relation(name, ((sympy.Rational(1), (a, b)), (sympy.Rational(-1), (b, a))), kind)


def make_presentation(kind: str, n: int, params: Sequence[Any],
                      sum_zero: bool = True, mixed_coxeter: bool = True) -> DahaPresentation:
    """Generators and relations of H_n(κ) (type A) or H_n(κ₁, κ₂) (type BC).

    For type BC, κ₁ is the S_i cross-relation constant and κ₂ the γ_n one.
    """
    kind = kind.upper()
    if not isinstance(n, int) or n < 1:
        raise PresentationError(f"invalid rank {n!r}")
    if kind == 'A':
        if len(params) != 1:
            raise PresentationError("type A takes exactly one parameter")
    elif kind == 'BC':
        if len(params) != 2:
            raise PresentationError("type BC takes exactly two parameters")
    else:
        raise PresentationError(f"unsupported type {kind!r}")
    params = tuple(as_rational(k) for k in params)
    kappa_s = params[0]
    S = [f'S{i}' for i in range(1, n)]
    y = [f'y{i}' for i in range(1, n + 1)]
    gamma = f'gamma{n}'
    relations: List[Relation] = []

    for i in range(1, n):
        relations.append(_identity_relation(f'S{i}^2 = 1', (S[i - 1],) * 2))
    for i in range(1, n - 1):
        relations.append(_identity_relation(f'(S{i} S{i + 1})^3 = 1', (S[i - 1], S[i]) * 3))
    for i in range(1, n):
        for j in range(i + 2, n):
            relations.append(_commutator(f'S{i} S{j} = S{j} S{i}', S[i - 1], S[j - 1], 'coxeter'))
    if kind == 'BC':
        relations.append(_identity_relation(f'{gamma}^2 = 1', (gamma, gamma)))
        if mixed_coxeter and n > 1:
            relations.append(_identity_relation(f'(S{n - 1} {gamma})^4 = 1', (S[n - 2], gamma) * 4, 'mixed'))
            for i in range(1, n - 1):
                relations.append(_commutator(f'S{i} {gamma} = {gamma} S{i}', S[i - 1], gamma, 'mixed'))

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            relations.append(_commutator(f'[y{i}, y{j}] = 0', y[i - 1], y[j - 1]))
    for i in range(1, n):
        relations.append(Relation(
            f'S{i} y{i} - y{i + 1} S{i} = {kappa_s}',
            ((sympy.Rational(1), (S[i - 1], y[i - 1])),
             (sympy.Rational(-1), (y[i], S[i - 1])),
             (-kappa_s, ())),
        ))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                relations.append(_commutator(f'[S{i}, y{j}] = 0', S[i - 1], y[j - 1]))
    if kind == 'BC':
        kappa_g = params[1]
        relations.append(Relation(
            f'{gamma} y{n} + y{n} {gamma} = {kappa_g}',
            ((sympy.Rational(1), (gamma, y[n - 1])),
             (sympy.Rational(1), (y[n - 1], gamma)),
             (-kappa_g, ())),
        ))
        for j in range(1, n):
            relations.append(_commutator(f'[{gamma}, y{j}] = 0', gamma, y[j - 1]))
    if kind == 'A' and sum_zero:
        relations.append(Relation('y1 + ... + yn = 0',
                                  tuple((sympy.Rational(1), (name,)) for name in y), 'sum'))

    generators = tuple(S) + ((gamma,) if kind == 'BC' else ()) + tuple(y)
    return DahaPresentation(kind, n, params, generators, tuple(relations),
                            sum_zero=(kind == 'A' and sum_zero), mixed_coxeter=mixed_coxeter)


@dataclass(frozen=True)
class LinearRep:
    dimension: int
    assignment: Dict[str, ExactMatrix]

    def __post_init__(self):
        for name, matrix in self.assignment.items():
            if matrix.shape != (self.dimension, self.dimension):
                raise PresentationError(
                    f"generator {name} has shape {matrix.shape}, expected {self.dimension}x{self.dimension}")

    def __getitem__(self, name: str) -> ExactMatrix:
        return self.assignment[name]

    def word_matrix(self, word: Word) -> ExactMatrix:
        result = ExactMatrix.identity(self.dimension)
        for letter in word:
            result = result @ self.assignment[letter]
        return result


@dataclass(frozen=True)
class RelationResult:
    name: str
    kind: str
    passed: bool
    violation: Optional[Tuple[int, int, sympy.Rational]] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'relation': self.name, 'kind': self.kind, 'passed': self.passed}
        if self.violation is not None:
            i, j, value = self.violation
            data['violation'] = {'row': i, 'col': j, 'value': format_rational(value)}
        return data


@dataclass
class VerificationReport:
    presentation: str
    results: List[RelationResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[RelationResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'presentation': self.presentation,
            'passed': self.passed,
            'relations_checked': len(self.results),
            'failures': [r.to_dict() for r in self.failures],
        }


def verify_linear_rep(pres: DahaPresentation, rep: LinearRep) -> VerificationReport:
    missing = [g for g in pres.generators if g not in rep.assignment]
    if missing:
        raise PresentationError(f"missing generator assignments: {', '.join(missing)}")
    report = VerificationReport(pres.describe())
    identity = ExactMatrix.identity(rep.dimension)
    for relation in pres.relations:
        total = ExactMatrix.zeros(rep.dimension, rep.dimension)
        for coefficient, word in relation.terms:
            term = rep.word_matrix(word) if word else identity
            total = total + term.scale(coefficient)
        violation = total.max_violation()
        report.results.append(RelationResult(relation.name, relation.kind, violation is None, violation))
    return report


def scale_rep(rep: LinearRep, c: Any) -> LinearRep:
    """y_i → c·y_i, turning a module of H_n(κ₁,κ₂) into one of H_n(cκ₁,cκ₂)."""
    c = as_rational(c)
    assignment = {name: (m.scale(c) if name.startswith('y') else m) for name, m in rep.assignment.items()}
    return LinearRep(rep.dimension, assignment)


def scale_presentation(pres: DahaPresentation, c: Any) -> DahaPresentation:
    c = as_rational(c)
    return make_presentation(pres.kind, pres.n, [k * c for k in pres.params],
                             sum_zero=pres.sum_zero, mixed_coxeter=pres.mixed_coxeter)


def rational_eigenvalues(matrix: ExactMatrix) -> Dict[sympy.Rational, int]:
    """Rational roots of the characteristic polynomial with algebraic multiplicities."""
    if matrix.rows == 0:
        return {}
    x = sympy.Symbol('x')
    coefficients = [as_rational(c) for c in matrix.domain_matrix.to_dense().charpoly()]
    poly = sympy.Poly(coefficients, x)
    return {r: k for r, k in sympy.roots(poly).items() if isinstance(r, sympy.Rational)}


def joint_spectrum(rep: LinearRep, names: Sequence[str]) -> Dict[Tuple[sympy.Rational, ...], int]:
    """Joint generalized eigenvalues of commuting operators, with multiplicities."""
    spectrum: Dict[Tuple[sympy.Rational, ...], int] = {}

    def split(basis: ExactMatrix, depth: int, prefix: Tuple[sympy.Rational, ...]):
        if basis.cols == 0:
            return
        if depth == len(names):
            spectrum[prefix] = spectrum.get(prefix, 0) + basis.cols
            return
        local = restrict(basis, rep[names[depth]], names[depth])
        identity = ExactMatrix.identity(local.rows)
        for value, multiplicity in sorted(rational_eigenvalues(local).items()):
            shifted = (local - identity.scale(value)).power(multiplicity)
            kernel = ExactMatrix.hstack(nullspace(shifted), rows=local.rows)
            split(basis @ kernel, depth + 1, prefix + (value,))

    split(ExactMatrix.identity(rep.dimension), 0, ())
    return spectrum


def format_spectrum(spectrum: Dict[Tuple[sympy.Rational, ...], int]) -> List[Dict[str, Any]]:
    """Sorted multiset of eigenvalue tuples as JSON-ready records."""
    return [{'eigenvalues': [format_rational(v) for v in key], 'multiplicity': mult}
            for key, mult in sorted(spectrum.items())]


def intertwiner_space(rep_a: LinearRep, rep_b: LinearRep, pres: DahaPresentation) -> List[ExactMatrix]:
    """Basis of {X : X·A(g) = B(g)·X for every generator g}."""
    da, db = rep_a.dimension, rep_b.dimension
    if da == 0 or db == 0:
        return []

    def var(i: int, k: int) -> int:
        return i * da + k

    equations: List[Dict[int, Any]] = []
    for g in pres.generators:
        A, B = rep_a[g].sparse_rows(), rep_b[g].sparse_rows()
        a_columns: Dict[int, Dict[int, Any]] = {}
        for k, row in A.items():
            for j, value in row.items():
                a_columns.setdefault(j, {})[k] = value
        for i in range(db):
            b_row = B.get(i, {})
            for j in range(da):
                eq: Dict[int, Any] = {}
                for k, value in a_columns.get(j, {}).items():
                    eq[var(i, k)] = eq.get(var(i, k), 0) + value
                for k, value in b_row.items():
                    eq[var(k, j)] = eq.get(var(k, j), 0) - value
                eq = {key: v for key, v in eq.items() if v}
                if eq:
                    equations.append(eq)
    system = ExactMatrix.from_entries(
        (len(equations), da * db),
        {(r, c): v for r, eq in enumerate(equations) for c, v in eq.items()},
    )
    basis = []
    for vector in nullspace(system):
        entries = {}
        for (idx, _), value in vector.entries.items():
            entries[divmod(idx, da)] = value
        basis.append(ExactMatrix.from_entries((db, da), entries))
    return basis


def find_invertible_element(basis: Sequence[ExactMatrix], rng: random.Random, bound: int = 10 ** 4,
                            attempts: int = 20) -> Optional[ExactMatrix]:
    """A random rational combination of the basis that is invertible, if one turns up."""
    if not basis or not basis[0].is_square():
        return None
    n = basis[0].rows
    for _ in range(attempts):
        combination = ExactMatrix.zeros(n, n)
        for b in basis:
            combination = combination + b.scale(random_rational(rng, bound))
        if combination.rank() == n:
            return combination
    return None


@dataclass(frozen=True)
class InductionData:
    """Seed H-module P together with the cosets of W_{BC_n}/Γ̃.

    block_sizes = (n_1, ..., n_p, n_ξ) on consecutive positions; the seed vectors are common
    y-eigenvectors with eigenvalues[k-1][s-1] = λ_{k,s}; xi_action gives the S_{n_ξ} action.
    """
    block_sizes: Tuple[int, ...]
    eigenvalues: Tuple[Tuple[sympy.Rational, ...], ...]
    xi_action: Callable[[Perm], ExactMatrix]
    seed_dimension: int

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    @property
    def xi_start(self) -> int:
        return sum(self.block_sizes[:-1])

    def cosets(self) -> CosetTable:
        return CosetTable(self.n, self.block_sizes)

    def seed_action(self, h: SignedPermutation) -> ExactMatrix:
        """Action of h ∈ Γ̃ on P: trivial on the A-blocks, signed Specht action on the ξ-block."""
        start, size = self.xi_start, self.block_sizes[-1]
        if any(h.signs[j] < 0 for j in range(start)):
            raise PresentationError("element outside Γ̃: sign change in an A-block")
        sign = 1
        for j in range(start, start + size):
            if h.signs[j] < 0:
                sign = -sign
        local = tuple(h.perm[start + i] - start for i in range(size))
        return self.xi_action(local).scale(sign)


def _cross(letter: str, j: int, n: int, kappa_s, kappa_g) -> Tuple[int, int, Any]:
    """y_j · letter = ε · letter · y_j' + c, returned as (ε, j', c)."""
    if letter.startswith('S'):
        i = int(letter[1:])
        if j == i:
            return 1, i + 1, kappa_s
        if j == i + 1:
            return 1, i, -kappa_s
        return 1, j, 0
    if j == n:
        return -1, j, kappa_g
    return 1, j, 0


def induce_module(data: InductionData, target: DahaPresentation) -> LinearRep:
    """Ind from H = ⊗H^i ⊗ H^ξ to the BC_n algebra, on the basis (coset, seed index)."""
    n = data.n
    if target.kind != 'BC' or target.n != n:
        raise PresentationError(f"target {target.describe()} does not match rank {n}")
    d = data.seed_dimension
    if len(data.eigenvalues) != n or any(len(row) != d for row in data.eigenvalues):
        raise PresentationError("seed eigenvalue table has the wrong shape")
    kappa_s, kappa_g = target.params
    table = data.cosets()
    reps = table.representatives
    dim = len(reps) * d

    def place(entries: Dict[Tuple[int, int], Any], target_coset: int, source: int, block: ExactMatrix, coeff=1):
        for (s2, s1), value in block.entries.items():
            key = (target_coset * d + s2, source * d + s1)
            entries[key] = entries.get(key, 0) + coeff * value

    assignment: Dict[str, ExactMatrix] = {}
    for name in target.group_generators:
        g = bc_generator(name, n)
        entries: Dict[Tuple[int, int], Any] = {}
        for c, rep in enumerate(reps):
            c2, h = table.locate(g * rep.element)
            place(entries, c2, c, data.seed_action(h))
        assignment[name] = ExactMatrix.from_entries((dim, dim), entries)

    for k in range(1, n + 1):
        entries = {}
        for c, rep in enumerate(reps):
            word = rep.word
            sign, j = 1, k
            for t, letter in enumerate(word):
                eps, j_next, const = _cross(letter, j, n, kappa_s, kappa_g)
                if const:
                    reduced = word_to_element(word[:t] + word[t + 1:], n)
                    c2, h = table.locate(reduced)
                    place(entries, c2, c, data.seed_action(h), sign * const)
                sign *= eps
                j = j_next
            for s in range(d):
                key = (c * d + s, c * d + s)
                entries[key] = entries.get(key, 0) + sign * data.eigenvalues[j - 1][s]
        assignment[f'y{k}'] = ExactMatrix.from_entries((dim, dim), entries)
    return LinearRep(dim, assignment)
