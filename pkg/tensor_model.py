# tensor_model.py
import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from config import VerifierConfig
from daha import LinearRep, find_invertible_element, intertwiner_space, verify_linear_rep
from errors import GuardrailExceeded, InadmissibleParameters, InvarianceError, ParameterError, PresentationError
from exactmath import ExactMatrix, column_basis, format_rational, nullspace_matrix, restrict, solve_in_span
from functor_image import (HECKE_READINGS, INDEX_READINGS, FunctorParams, build_P_tilde, derive, eigenvalue_table,
                           is_admissible, predicted_dimension, target_presentation, validate)
from symcomb import (Partition, SignedPermutation, bc_generator_names, enumerate_bc_group, murphy_basis,
                     specht_matrices, weyl_dimension, young_symmetrizer_image)

Key = Tuple[int, Tuple[int, ...]]
Transform = Callable[[Tuple[int, ...]], Iterable[Tuple[Any, Tuple[int, ...]]]]

HALF = sympy.Rational(1, 2)


def _tensor_elementary(r: int, m: int, a: int, b: int) -> ExactMatrix:
    """Σ_k (E_ab)_k on (C^r)^{⊗m}, coordinates in itertools.product order."""
    basis = list(itertools.product(range(r), repeat=m))
    index = {t: i for i, t in enumerate(basis)}
    entries: Dict[Tuple[int, int], int] = {}
    for col, t in enumerate(basis):
        for k, c in enumerate(t):
            if c == b:
                key = (index[t[:k] + (a,) + t[k + 1:]], col)
                entries[key] = entries.get(key, 0) + 1
    return ExactMatrix.from_entries((len(basis), len(basis)), entries)


@dataclass(frozen=True)
class WModule:
    """W = V(n_1) ⊗ ⋯ ⊗ V(n_p) ⊗ V(ξ) as a module for Lie(M).

    t_i acts by the scalar torus_weights[i-1]; gl_generators[(a, b)] is E_{2p+a+1, 2p+b+1}
    with a, b counted from 0 inside the U(q−p) block.
    """
    dimension: int
    torus_weights: Tuple[int, ...]
    gl_generators: Dict[Tuple[int, int], ExactMatrix]
    xi: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.xi)

    def highest_weight_vector(self) -> ExactMatrix:
        if self.rank < 2:
            return ExactMatrix.identity(self.dimension).column(0)
        raising = [self.gl_generators[(a, a + 1)] for a in range(self.rank - 1)]
        kernel = nullspace_matrix(ExactMatrix.vstack(raising, cols=self.dimension))
        if kernel.cols != 1:
            raise ArithmeticError(f"V(xi) has {kernel.cols} highest weight vectors")
        return kernel

    def weight(self, vector: ExactMatrix) -> Tuple[sympy.Rational, ...]:
        """Eigenvalues of E_aa on a weight vector."""
        pivot = min(vector.entries)
        values = []
        for a in range(self.rank):
            image = self.gl_generators[(a, a)] @ vector
            value = image.get(*pivot) / vector.get(*pivot)
            if image != vector.scale(value):
                raise ValueError("not a weight vector")
            values.append(value)
        return tuple(values)


def build_W(params: FunctorParams) -> WModule:
    r = params.q - params.p
    xi = tuple(params.xi)
    base = xi[-1] if xi else 0
    shape = Partition.from_sequence(x - base for x in xi)
    basis = young_symmetrizer_image(shape, r) if r else ExactMatrix.identity(1)
    dim = basis.cols
    generators: Dict[Tuple[int, int], ExactMatrix] = {}
    for a in range(r):
        for b in range(r):
            op = restrict(basis, _tensor_elementary(r, shape.size, a, b), f'E[{a},{b}] on V(xi)')
            if a == b and base:
                op = op + ExactMatrix.identity(dim).scale(base)
            generators[(a, b)] = op
    expected = weyl_dimension(xi, r) if r else 1
    if dim != expected:
        raise ArithmeticError(f"V{xi} realized with dimension {dim}, Weyl dimension is {expected}")
    return WModule(dim, tuple(params.nvec), generators, xi)


def check_guardrail(params: FunctorParams, limit: int) -> int:
    r = params.q - params.p
    w_dim = weyl_dimension(params.xi, r) if r else 1
    size = w_dim * params.N ** params.n
    if size > limit:
        raise GuardrailExceeded(size, limit)
    return size


def _block_counts(t: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    counts = [0] * p
    for c in t:
        if c < 2 * p:
            counts[c % p] += 1
    return tuple(counts)


@dataclass(frozen=True)
class TensorSpace:
    """Torus-balanced part of W ⊗ (C^N)^{⊗n}; keys (w, (i_1, ..., i_n)) with 0-based indices."""
    N: int
    n: int
    w_dimension: int
    theta_sign: int
    theta_torus: sympy.Rational
    theta_gl: sympy.Rational
    keys: Tuple[Key, ...]

    @property
    def full_dimension(self) -> int:
        return self.w_dimension * self.N ** self.n

    @property
    def dimension(self) -> int:
        return len(self.keys)

    @cached_property
    def index(self) -> Dict[Key, int]:
        return {key: i for i, key in enumerate(self.keys)}


def _replace(t: Tuple[int, ...], k: int, value: int) -> Tuple[int, ...]:
    return t[:k] + (value,) + t[k + 1:]


def _adjacent_word(perm: Sequence[int]) -> List[int]:
    """Adjacent transpositions sorting perm (bubble sort order)."""
    items = list(perm)
    word = []
    for _ in range(len(items)):
        for j in range(len(items) - 1):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                word.append(j + 1)
    return word


@lru_cache(maxsize=None)
def _bc_words(n: int) -> Dict[SignedPermutation, Tuple[str, ...]]:
    return enumerate_bc_group(n)


@dataclass(frozen=True)
class EigenCheck:
    index_reading: str
    complete: bool
    failures: Tuple[Dict[str, Any], ...] = ()

    @property
    def passed(self) -> bool:
        return self.complete and not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {'index_reading': self.index_reading, 'complete': self.complete,
                'passed': self.passed, 'failures': list(self.failures)}


@dataclass
class Resolution:
    """Which reading of an ambiguous convention was adopted, with the outcome of each reading."""
    question: str
    chosen: Any
    status: str
    outcomes: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'question': self.question, 'chosen': str(self.chosen), 'status': self.status,
                'outcomes': self.outcomes}


def pick_reading(question: str, readings: Sequence[Any], passing: Sequence[Any], outcomes: Dict[str, Any],
                 fixed: Any = 'auto') -> Resolution:
    if fixed not in (None, 'auto'):
        return Resolution(question, fixed, 'fixed', outcomes)
    if len(passing) == 1:
        return Resolution(question, passing[0], 'resolved', outcomes)
    if passing:
        return Resolution(question, passing[0], 'ambiguous', outcomes)
    return Resolution(question, readings[0], 'unresolved', outcomes)


class TensorModel:
    """Explicit model of F_{n,p,μ}(H) on (W ⊗ (C^N)^{⊗n} ⊗ 1_θ)^M.

    Operators are assembled on the torus-balanced space and restricted to the invariant subspace;
    every restriction asserts that the subspace is preserved.
    """

    def __init__(self, params: FunctorParams, logger: Optional[logging.Logger] = None,
                 config: Optional[VerifierConfig] = None, theta_sign: int = 1):
        if theta_sign not in (1, -1):
            raise ValueError(f"theta_sign must be 1 or -1, got {theta_sign!r}")
        self.params = params
        self.logger = logger or logging.getLogger(__name__)
        self.config = config or VerifierConfig()
        self.theta_sign = theta_sign
        self.derived = derive(params)
        self.full_dimension = check_guardrail(params, int(self.config.MAX_TENSOR_DIM))
        self.W = build_W(params)
        self.space = self._balanced_space()
        self._restricted: Dict[str, ExactMatrix] = {}
        self._varpi: Optional[ExactMatrix] = None
        self.logger.debug(f"Balanced space has dimension {self.space.dimension} of {self.full_dimension}")

    # Spaces

    def _balanced_space(self) -> TensorSpace:
        p, q, n, mu = self.params.p, self.params.q, self.params.n, self.params.mu
        N, tau = self.params.N, self.derived.tau
        theta_torus = -mu * (q - p) - 2 * tau
        theta_gl = mu * p - tau
        counts = [-(ni + self.theta_sign * theta_torus) for ni in self.params.nvec]
        keys: Tuple[Key, ...] = ()
        if all(c.q == 1 and c >= 0 for c in counts):
            target = tuple(int(c) for c in counts)
            tuples = [t for t in itertools.product(range(N), repeat=n) if _block_counts(t, p) == target]
            keys = tuple((w, t) for w in range(self.W.dimension) for t in tuples)
        return TensorSpace(N, n, self.W.dimension, self.theta_sign, theta_torus, theta_gl, keys)

    def _assemble(self, transform: Transform, label: str) -> ExactMatrix:
        """Operator on the balanced space acting on the tensor factors only."""
        index = self.space.index
        entries: Dict[Tuple[int, int], Any] = {}
        for col, (w, t) in enumerate(self.space.keys):
            for coeff, image in transform(t):
                if not coeff:
                    continue
                row = index.get((w, image))
                if row is None:
                    raise InvarianceError(f"{label} leaves the torus-balanced space")
                entries[(row, col)] = entries.get((row, col), 0) + coeff
        size = self.space.dimension
        return ExactMatrix.from_entries((size, size), entries)

    def _gl_condition(self, a: int, b: int) -> ExactMatrix:
        """x_W + Σ_k x_(k) + θ_sign·θ(x) for x = E_{2p+a+1, 2p+b+1}."""
        shift = 2 * self.params.p
        index = self.space.index
        w_columns: Dict[int, Dict[int, Any]] = {}
        for row, values in self.W.gl_generators[(a, b)].sparse_rows().items():
            for col, value in values.items():
                w_columns.setdefault(col, {})[row] = value
        entries: Dict[Tuple[int, int], Any] = {}

        def add(key: Key, col: int, value: Any):
            row = index[key]
            entries[(row, col)] = entries.get((row, col), 0) + value

        for col, (w, t) in enumerate(self.space.keys):
            for w2, value in w_columns.get(w, {}).items():
                add((w2, t), col, value)
            for k, c in enumerate(t):
                if c == shift + b:
                    add((w, _replace(t, k, shift + a)), col, 1)
            if a == b:
                add((w, t), col, self.theta_sign * self.space.theta_gl)
        size = self.space.dimension
        return ExactMatrix.from_entries((size, size), entries)

    @cached_property
    def condition_system(self) -> ExactMatrix:
        r = self.params.q - self.params.p
        size = self.space.dimension
        blocks = [self._gl_condition(a, b) for a in range(r) for b in range(r)]
        return ExactMatrix.vstack(blocks, cols=size)

    @cached_property
    def basis(self) -> ExactMatrix:
        """Columns spanning the invariant subspace, in balanced-space coordinates."""
        size = self.space.dimension
        if size == 0:
            basis = ExactMatrix.zeros(0, 0)
        elif self.params.q == self.params.p:
            basis = ExactMatrix.identity(size)
        else:
            basis = nullspace_matrix(self.condition_system)
        self.logger.info(f"Invariant subspace: dimension {basis.cols} (balanced space {size})")
        return basis

    @property
    def dimension(self) -> int:
        return self.basis.cols

    def _restrict(self, label: str, build: Callable[[], ExactMatrix]) -> ExactMatrix:
        if label not in self._restricted:
            self._restricted[label] = restrict(self.basis, build(), label)
        return self._restricted[label]

    # Weyl group

    def swap_operator(self, i: int, j: int) -> ExactMatrix:
        """S_ij exchanging tensor factors i and j (1-based)."""
        def transform(t):
            u = list(t)
            u[i - 1], u[j - 1] = u[j - 1], u[i - 1]
            return [(1, tuple(u))]

        return self._restrict(f'S({i},{j})', lambda: self._assemble(transform, f'S({i},{j})'))

    def gamma_operator(self, l: int) -> ExactMatrix:
        """γ_l applying J = diag(I_p, −I_q) to factor l."""
        p = self.params.p

        def transform(t):
            return [(1 if t[l - 1] < p else -1, t)]

        return self._restrict(f'gamma({l})', lambda: self._assemble(transform, f'gamma({l})'))

    def generator_matrix(self, name: str) -> ExactMatrix:
        if name.startswith('S'):
            i = int(name[1:])
            return self.swap_operator(i, i + 1)
        if name.startswith('gamma'):
            return self.gamma_operator(int(name[5:]))
        raise PresentationError(f"unknown group generator {name!r}")

    def group_action(self, g: SignedPermutation) -> ExactMatrix:
        n = self.params.n
        if g.n != n:
            raise PresentationError(f"element of W_BC{g.n} acting on a rank {n} model")
        result = ExactMatrix.identity(self.dimension)
        for name in _bc_words(n)[g]:
            result = result @ self.generator_matrix(name)
        return result

    # Hecke operators

    @cached_property
    def reduced_terms(self) -> Tuple[List[Tuple[Any, Tuple[int, int]]],
                                     List[Tuple[Any, Tuple[int, int], Tuple[int, int]]]]:
        """(single-factor terms, two-factor terms (coefficient, E on factor l, E on factor k)), 1-based."""
        p, q, mu, N = self.params.p, self.params.q, self.params.mu, self.params.N
        single = []
        for i in range(1, p + 1):
            rho = self.derived.rho[i - 1]
            single.append((-rho - HALF - mu * N / 2 - (q - i), (i, p + i)))
            single.append((-rho - HALF + mu * N / 2 - (p - i), (p + i, i)))
        pairs = []
        for i in range(1, p + 1):
            for j in range(i + 1, p + 1):
                pairs.append((-1, (p + i, p + j), (p + j, i)))
                pairs.append((1, (p + j, p + i), (i, p + j)))
            for j in range(1, i):
                pairs.append((1, (i, j), (p + j, i)))
                pairs.append((-1, (j, i), (i, p + j)))
            for j in range(p + 1, q + 1):
                pairs.append((-1, (p + i, p + j), (p + j, i)))
                pairs.append((1, (p + j, p + i), (i, p + j)))
            pairs.append((-HALF, (p + i, p + i), (p + i, i)))
            pairs.append((HALF, (i, i), (p + i, i)))
            pairs.append((HALF, (p + i, p + i), (i, p + i)))
            pairs.append((-HALF, (i, i), (i, p + i)))
        return single, pairs

    def ytilde_operator(self, k: int) -> ExactMatrix:
        single, pairs = self.reduced_terms
        n, kk = self.params.n, k - 1

        def transform(t):
            out = []
            for coeff, (a, b) in single:
                if t[kk] == b - 1:
                    out.append((coeff, _replace(t, kk, a - 1)))
            for l in range(n):
                if l == kk:
                    continue
                for coeff, (al, bl), (ak, bk) in pairs:
                    if t[l] == bl - 1 and t[kk] == bk - 1:
                        out.append((-coeff, _replace(_replace(t, l, al - 1), kk, ak - 1)))
            return out

        return self._restrict(f'ytilde({k})', lambda: self._assemble(transform, f'ytilde({k})'))

    def y_operator(self, k: int) -> ExactMatrix:
        """y_k = ỹ_k + κ₁γ_k + ½Σ_{l>k}S_kl − ½Σ_{l<k}S_kl + ½Σ_{l≠k}S_klγ_kγ_l."""
        label = f'y({k})'
        if label in self._restricted:
            return self._restricted[label]
        result = self.ytilde_operator(k) + self.gamma_operator(k).scale(self.derived.kappa1)
        for l in range(1, self.params.n + 1):
            if l == k:
                continue
            swap = self.swap_operator(k, l)
            result = result + swap.scale(HALF if l > k else -HALF)
            result = result + (swap @ self.gamma_operator(k) @ self.gamma_operator(l)).scale(HALF)
        self._restricted[label] = result
        return result

    def tensor_rep(self) -> LinearRep:
        n = self.params.n
        assignment = {name: self.generator_matrix(name) for name in bc_generator_names(n)}
        for k in range(1, n + 1):
            assignment[f'y{k}'] = self.y_operator(k)
        return LinearRep(self.dimension, assignment)

    # Common eigenvectors

    def _highest_weight_span(self, shape: Partition, s: int) -> ExactMatrix:
        """gl(q−p)-submodule of (C^{q−p})^{⊗n_ξ} generated by the tensor image of ŵ_s."""
        r = self.params.q - self.params.p
        m = shape.size
        module = specht_matrices(shape)
        tabloid_vector = module.polytabloids @ murphy_basis(shape, 'Lhat').vectors[s - 1]
        tuples = list(itertools.product(range(r), repeat=m))
        index = {t: i for i, t in enumerate(tuples)}
        entries = {(index[module.tabloids[row]], 0): value for (row, _), value in tabloid_vector.entries.items()}
        span = ExactMatrix.from_entries((len(tuples), 1), entries)
        lowering = [_tensor_elementary(r, m, a + 1, a) for a in range(r - 1)]
        while lowering:
            grown = column_basis(ExactMatrix.hstack([span] + [op @ span for op in lowering]))
            if grown.cols == span.cols:
                break
            span = grown
        expected = weyl_dimension(shape.parts, r) if r else 1
        if span.cols != expected:
            raise ArithmeticError(f"generated module has dimension {span.cols}, expected {expected}")
        return span

    def _varpi_full(self, s: int) -> ExactMatrix:
        p, q = self.params.p, self.params.q
        r, shift = q - p, 2 * p
        *a_blocks, n_xi = self.derived.block_sizes()
        shape = self.derived.xi_partition()
        u_terms: List[Tuple[int, Tuple[int, ...]]] = [(1, ())]
        for i, size in enumerate(a_blocks):
            for _ in range(size):
                u_terms = [(c * sign, t + (idx,)) for c, t in u_terms for sign, idx in ((1, i), (-1, p + i))]
        span = self._highest_weight_span(shape, s)
        xi_tuples = list(itertools.product(range(r), repeat=n_xi))
        index = self.space.index
        entries: Dict[Tuple[int, int], Any] = {}
        col = 0
        for w in range(self.W.dimension):
            for g in range(span.cols):
                for (row, _), value in span.column(g).entries.items():
                    tail = tuple(shift + x for x in xi_tuples[row])
                    for sign, head in u_terms:
                        key = (index[(w, head + tail)], col)
                        entries[key] = entries.get(key, 0) + sign * value
                col += 1
        embedding = ExactMatrix.from_entries((self.space.dimension, col), entries)
        if r == 0:
            kernel = ExactMatrix.identity(col)
        else:
            kernel = nullspace_matrix(self.condition_system @ embedding)
        if kernel.cols != 1:
            raise InvarianceError(f"expected one invariant in W ⊗ u ⊗ G_{s}, found {kernel.cols}")
        vector = embedding @ kernel
        pivot = min(vector.entries)
        return vector.scale(1 / vector.entries[pivot])

    def build_varpi(self, s: int) -> ExactMatrix:
        """ϖ_s in invariant-subspace coordinates, normalized by its first nonzero tensor coordinate."""
        if not is_admissible(self.params):
            raise InadmissibleParameters(validate(self.params))
        d = len(murphy_basis(self.derived.xi_partition(), 'Lhat').vectors)
        if not 1 <= s <= d:
            raise ParameterError(f"s={s} outside 1..{d}")
        coordinates = solve_in_span(self.basis, self._varpi_full(s))
        if coordinates is None:
            raise InvarianceError(f"varpi_{s} is not an invariant vector")
        return coordinates

    def varpi_matrix(self) -> ExactMatrix:
        """All ϖ_s as columns."""
        if self._varpi is None:
            d = len(murphy_basis(self.derived.xi_partition(), 'Lhat').vectors)
            self._varpi = ExactMatrix.hstack([self.build_varpi(s) for s in range(1, d + 1)], rows=self.dimension)
            self.logger.debug(f"varpi vectors:\n{self._varpi.pretty()}")
        return self._varpi

    def varpi_tensor(self, s: int) -> Dict[Key, sympy.Rational]:
        """ϖ_s as {(w, index tuple): coefficient} with 1-based tensor indices."""
        vector = self.basis @ self.build_varpi(s)
        return {(self.space.keys[row][0], tuple(c + 1 for c in self.space.keys[row][1])): value
                for (row, _), value in vector.entries.items()}

    def eigenvector_check(self, index_reading: str = 'k-m_p') -> EigenCheck:
        table = eigenvalue_table(self.params, index_reading)
        if not table.complete:
            return EigenCheck(index_reading, False)
        V = self.varpi_matrix()
        failures = []
        for s in range(V.cols):
            v = V.column(s)
            for k in range(1, self.params.n + 1):
                value = table.values[k - 1][s]
                if self.y_operator(k) @ v != v.scale(value):
                    failures.append({'k': k, 's': s + 1, 'expected': format_rational(value)})
        return EigenCheck(index_reading, True, tuple(failures))

    # Structural checks

    def _specht_generation(self, V: ExactMatrix) -> bool:
        m_p = int(self.derived.m[self.params.p])
        shape = self.derived.xi_partition()
        n_xi = shape.size
        if V.rank() != V.cols:
            return False
        local = {}
        for i in range(1, n_xi):
            matrix = solve_in_span(V, self.swap_operator(m_p + i, m_p + i + 1) @ V)
            if matrix is None:
                return False
            local[i] = matrix
        module = specht_matrices(shape)
        for perm in itertools.permutations(range(1, n_xi + 1)):
            product = ExactMatrix.identity(V.cols)
            for i in _adjacent_word(perm):
                product = product @ local[i]
            if product.trace() != module.character(perm):
                return False
        return True

    def orbit_span_check(self) -> bool:
        if not is_admissible(self.params):
            return self.dimension == 0
        generators = [self.generator_matrix(name) for name in bc_generator_names(self.params.n)]
        span = column_basis(self.varpi_matrix())
        while True:
            grown = column_basis(ExactMatrix.hstack([span] + [g @ span for g in generators]))
            if grown.cols == span.cols:
                break
            span = grown
        return span.cols == self.dimension

    def prop_checks(self) -> Dict[str, bool]:
        """Block invariance, Specht generation, sign action and orbit spanning of the ϖ_s."""
        V = self.varpi_matrix()
        *a_blocks, _ = self.derived.block_sizes()
        m_p = int(self.derived.m[self.params.p])
        block_ok, start = True, 1
        for size in a_blocks:
            for i in range(start, start + size - 1):
                block_ok = block_ok and self.swap_operator(i, i + 1) @ V == V
            start += size
        sign_ok = all(self.gamma_operator(l) @ V == -V for l in range(m_p + 1, self.params.n + 1))
        results = {
            'block_invariance': block_ok,
            'specht_generation': self._specht_generation(V),
            'sign_action': sign_ok,
            'orbit_span': self.orbit_span_check(),
        }
        self.logger.info(f"Structural checks: {results}")
        return results


# Module-level entry points

def invariant_subspace(params: FunctorParams, theta_sign: int = 1,
                       config: Optional[VerifierConfig] = None) -> ExactMatrix:
    return TensorModel(params, config=config, theta_sign=theta_sign).basis


def group_action(params: FunctorParams, g: SignedPermutation) -> ExactMatrix:
    return TensorModel(params).group_action(g)


def y_operator(params: FunctorParams, k: int) -> ExactMatrix:
    return TensorModel(params).y_operator(k)


def build_varpi(params: FunctorParams, s: int) -> ExactMatrix:
    return TensorModel(params).build_varpi(s)


def orbit_span_check(params: FunctorParams) -> bool:
    return TensorModel(params).orbit_span_check()


def prop_checks(params: FunctorParams) -> Dict[str, bool]:
    return TensorModel(params).prop_checks()


def tensor_rep(params: FunctorParams) -> LinearRep:
    return TensorModel(params).tensor_rep()


# Runtime resolution of ambiguous conventions

def resolve_theta_sign(params: FunctorParams, logger: Optional[logging.Logger] = None,
                       config: Optional[VerifierConfig] = None, fixed: Any = 'auto') -> Resolution:
    """Sign of the invariance character for which the invariant dimension matches the closed form."""
    expected = predicted_dimension(params).total if is_admissible(params) else 0
    outcomes: Dict[str, Any] = {'expected_dimension': expected}
    passing = []
    for sign in (1, -1):
        dimension = TensorModel(params, logger, config, theta_sign=sign).dimension
        outcomes[str(sign)] = dimension
        if dimension == expected:
            passing.append(sign)
    fixed_sign = fixed if fixed in (None, 'auto') else int(fixed)
    return pick_reading('theta_sign', (1, -1), passing, outcomes, fixed_sign)


def resolve_hecke_reading(model: TensorModel, fixed: Any = 'auto') -> Resolution:
    rep = model.tensor_rep()
    outcomes: Dict[str, Any] = {}
    passing = []
    for reading in HECKE_READINGS:
        report = verify_linear_rep(target_presentation(model.params, reading), rep)
        outcomes[reading] = {'passed': report.passed, 'failed_relations': [r.name for r in report.failures]}
        if report.passed:
            passing.append(reading)
    return pick_reading('hecke_parameter_reading', HECKE_READINGS, passing, outcomes, fixed)


def resolve_eigen_index(model: TensorModel, fixed: Any = 'auto') -> Resolution:
    outcomes: Dict[str, Any] = {}
    passing = []
    for reading in INDEX_READINGS:
        check = model.eigenvector_check(reading)
        outcomes[reading] = check.to_dict()
        if check.passed:
            passing.append(reading)
    return pick_reading('eigen_index_reading', INDEX_READINGS, passing, outcomes, fixed)


def isomorphism_check(model: TensorModel, hecke_reading: str, index_reading: str,
                      rng: Optional[random.Random] = None) -> Dict[str, Any]:
    """Search for an invertible intertwiner between the induced module and the tensor model."""
    rng = rng or random.Random(model.config.PIT_SEED)
    induced = build_P_tilde(model.params, hecke_reading, index_reading)
    rep = model.tensor_rep()
    result: Dict[str, Any] = {'induced_dimension': induced.dimension, 'model_dimension': rep.dimension,
                              'hecke_reading': hecke_reading, 'index_reading': index_reading}
    if induced.dimension != rep.dimension:
        result.update({'intertwiners': 0, 'invertible': False})
        return result
    basis = intertwiner_space(induced, rep, target_presentation(model.params, hecke_reading))
    result['intertwiners'] = len(basis)
    result['invertible'] = find_invertible_element(basis, rng, model.config.PIT_BOUND) is not None
    model.logger.info(f"Intertwiner space of dimension {len(basis)}; invertible: {result['invertible']}")
    return result
