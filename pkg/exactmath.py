# exactmath.py
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import InvarianceError

RationalLike = Union[int, str, Fraction, sympy.Rational]


def as_rational(value: Any) -> sympy.Rational:
    """Coerce ints, "a/b" strings, Fractions and domain elements to an exact sympy Rational."""
    if isinstance(value, sympy.Rational):
        return value
    if QQ.of_type(value):
        return QQ.to_sympy(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        value = value.strip()
    result = sympy.Rational(value)
    if not isinstance(result, sympy.Rational):
        raise TypeError(f"not a rational number: {value!r}")
    return result


def qq(value: Any):
    """Convert to an element of the QQ ground domain."""
    if QQ.of_type(value):
        return value
    return QQ.from_sympy(as_rational(value))


def format_rational(value: Any) -> str:
    return str(as_rational(value))


def parse_rational(text: Any) -> sympy.Rational:
    return as_rational(text)


class ExactMatrix:
    """Immutable sparse matrix over QQ backed by a sympy DomainMatrix."""

    __slots__ = ('_dm',)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        object.__setattr__(self, '_dm', dm.to_sparse())

    def __setattr__(self, key, value):
        raise AttributeError("ExactMatrix is immutable")

    # Construction

    @classmethod
    def from_entries(cls, shape: Tuple[int, int],
                     entries: Mapping[Tuple[int, int], Any]) -> 'ExactMatrix':
        rows, cols = shape
        dod: Dict[int, Dict[int, Any]] = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside shape {shape}")
            v = qq(value)
            if v:
                dod.setdefault(i, {})[j] = v
        return cls(DomainMatrix(dod, (rows, cols), QQ))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> 'ExactMatrix':
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValueError("ragged row list")
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls.from_entries((n_rows, n_cols), entries)

    @classmethod
    def column_vector(cls, values: Sequence[Any]) -> 'ExactMatrix':
        return cls.from_entries((len(values), 1), {(i, 0): v for i, v in enumerate(values)})

    @classmethod
    def identity(cls, n: int) -> 'ExactMatrix':
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'ExactMatrix':
        return cls(DomainMatrix.zeros((rows, cols), QQ))

    @classmethod
    def diagonal(cls, values: Sequence[Any]) -> 'ExactMatrix':
        n = len(values)
        return cls.from_entries((n, n), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def hstack(cls, blocks: Sequence['ExactMatrix'], rows: Optional[int] = None) -> 'ExactMatrix':
        if not blocks:
            return cls.zeros(rows or 0, 0)
        first, rest = blocks[0]._dm, [b._dm for b in blocks[1:]]
        return cls(first.hstack(*rest) if rest else first)

    @classmethod
    def vstack(cls, blocks: Sequence['ExactMatrix'], cols: Optional[int] = None) -> 'ExactMatrix':
        if not blocks:
            return cls.zeros(0, cols or 0)
        first, rest = blocks[0]._dm, [b._dm for b in blocks[1:]]
        return cls(first.vstack(*rest) if rest else first)

    # Access

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    def sparse_rows(self) -> Dict[int, Dict[int, Any]]:
        """Row-major dict of nonzero QQ entries."""
        return {i: dict(row) for i, row in self._dm.to_sdm().items() if row}

    @property
    def entries(self) -> Dict[Tuple[int, int], sympy.Rational]:
        return {(i, j): QQ.to_sympy(v)
                for i, row in self._dm.to_sdm().items()
                for j, v in row.items() if v}

    @property
    def nnz(self) -> int:
        return sum(1 for row in self._dm.to_sdm().values() for v in row.values() if v)

    def get(self, i: int, j: int) -> sympy.Rational:
        return QQ.to_sympy(self._dm.to_sdm().get(i, {}).get(j, QQ.zero))

    def to_rows(self) -> List[List[sympy.Rational]]:
        table = [[sympy.Rational(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            table[i][j] = v
        return table

    def column(self, j: int) -> 'ExactMatrix':
        return ExactMatrix(self._dm.extract(list(range(self.rows)), [j]))

    def columns(self) -> List['ExactMatrix']:
        return [self.column(j) for j in range(self.cols)]

    def extract_rows(self, indices: Sequence[int]) -> 'ExactMatrix':
        return ExactMatrix(self._dm.extract(list(indices), list(range(self.cols))))

    def vector_entries(self) -> List[sympy.Rational]:
        """Entries of a column vector as a flat list."""
        if self.cols != 1:
            raise ValueError("not a column vector")
        return [self.get(i, 0) for i in range(self.rows)]

    # Arithmetic

    def __matmul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(self._dm.matmul(other._dm))

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return ExactMatrix(self._dm + other._dm)

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return ExactMatrix(self._dm - other._dm)

    def __neg__(self) -> 'ExactMatrix':
        return ExactMatrix(-self._dm)

    def scale(self, c: Any) -> 'ExactMatrix':
        c = qq(c)
        if not c:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix(self._dm.mul(c))

    def __mul__(self, c: Any) -> 'ExactMatrix':
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix(self._dm.transpose())

    @property
    def T(self) -> 'ExactMatrix':
        return self.transpose()

    def power(self, k: int) -> 'ExactMatrix':
        result = ExactMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def trace(self) -> sympy.Rational:
        sdm = self._dm.to_sdm()
        return QQ.to_sympy(sum((sdm.get(i, {}).get(i, QQ.zero) for i in range(min(self.shape))), QQ.zero))

    def rank(self) -> int:
        if 0 in self.shape:
            return 0
        return self._dm.rank()

    def inverse(self) -> 'ExactMatrix':
        return ExactMatrix(self._dm.to_dense().inv())

    # Predicates

    def is_zero(self) -> bool:
        return self.nnz == 0

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == ExactMatrix.identity(self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def max_violation(self) -> Optional[Tuple[int, int, sympy.Rational]]:
        """The largest-magnitude nonzero entry as (row, col, value); ties go to row-major order."""
        best = None
        for (i, j), v in sorted(self.entries.items()):
            if best is None or abs(v) > abs(best[2]):
                best = (i, j, v)
        return best

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def pretty(self) -> str:
        return '\n'.join('[' + ', '.join(str(v) for v in row) + ']' for row in self.to_rows())


def nullspace(m: ExactMatrix) -> List[ExactMatrix]:
    """Basis of the kernel of m as column vectors, from the reduced row echelon form."""
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0 or m.is_zero():
        return ExactMatrix.identity(cols).columns()
    basis = m.domain_matrix.to_dense().nullspace()
    if basis.shape[0] == 0:
        return []
    basis_t = ExactMatrix(basis).transpose()
    return basis_t.columns()


def nullspace_matrix(m: ExactMatrix) -> ExactMatrix:
    """Kernel basis packed as the columns of one matrix (cols(m) x nullity)."""
    return ExactMatrix.hstack(nullspace(m), rows=m.cols)


def column_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns of m at pivot positions; a basis of its column space."""
    if 0 in m.shape or m.is_zero():
        return ExactMatrix.zeros(m.rows, 0)
    _, pivots = m.domain_matrix.to_dense().rref()
    return ExactMatrix.hstack([m.column(j) for j in pivots], rows=m.rows)


def _row_pivots(basis: ExactMatrix) -> List[int]:
    # Rows of an injective basis matrix whose restriction is invertible.
    _, pivots = basis.transpose().domain_matrix.to_dense().rref()
    return list(pivots)


def solve_in_span(basis: ExactMatrix, vectors: ExactMatrix) -> Optional[ExactMatrix]:
    """Coefficients X with basis @ X == vectors, or None when some column leaves the span."""
    if basis.cols == 0:
        return ExactMatrix.zeros(0, vectors.cols) if vectors.is_zero() else None
    pivots = _row_pivots(basis)
    if len(pivots) != basis.cols:
        raise ValueError("basis columns are linearly dependent")
    square = basis.extract_rows(pivots)
    coefficients = square.inverse() @ vectors.extract_rows(pivots)
    if basis @ coefficients != vectors:
        return None
    return coefficients


def restrict(basis: ExactMatrix, op: ExactMatrix, label: str = 'operator') -> ExactMatrix:
    """Matrix of op on the column span of basis; raises InvarianceError when the span is not preserved."""
    image = op @ basis
    coefficients = solve_in_span(basis, image)
    if coefficients is None:
        raise InvarianceError(f"{label} does not preserve the subspace (dim {basis.cols})")
    return coefficients


def random_rational(rng, bound: int) -> sympy.Rational:
    numerator = rng.randint(-bound, bound)
    denominator = rng.randint(1, bound)
    return sympy.Rational(numerator, denominator)


# Polynomials

VariableLike = Union[str, sympy.Symbol]


def _symbol(name: VariableLike) -> sympy.Symbol:
    return name if isinstance(name, sympy.Symbol) else sympy.Symbol(name)


class MultiPoly:
    """Exact multivariate polynomial over QQ with an ordered variable list."""

    __slots__ = ('_expr', '_variables')

    def __init__(self, expr: Any, variables: Optional[Iterable[VariableLike]] = None):
        expr = sympy.expand(sympy.sympify(expr))
        free = sorted(expr.free_symbols, key=sympy.default_sort_key)
        if variables is None:
            names = tuple(s.name for s in free)
        else:
            names = tuple(_symbol(v).name for v in variables)
            missing = [s.name for s in free if s.name not in names]
            names = names + tuple(missing)
        object.__setattr__(self, '_expr', expr)
        object.__setattr__(self, '_variables', names)
        for coeff in self.terms.values():
            if not isinstance(coeff, sympy.Rational):
                raise TypeError(f"non-rational coefficient {coeff}")

    def __setattr__(self, key, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def variable(cls, name: VariableLike) -> 'MultiPoly':
        return cls(_symbol(name), [name])

    @classmethod
    def constant(cls, value: Any) -> 'MultiPoly':
        return cls(as_rational(value), [])

    @classmethod
    def coerce(cls, value: Any) -> 'MultiPoly':
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, sympy.Expr) and not isinstance(value, sympy.Rational):
            return cls(value)
        return cls.constant(value)

    @property
    def expr(self) -> sympy.Expr:
        return self._expr

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    @property
    def symbols(self) -> Tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(v) for v in self._variables)

    @property
    def terms(self) -> Dict[Tuple[int, ...], sympy.Rational]:
        if not self._variables:
            return {(): self._expr} if self._expr != 0 else {}
        poly = sympy.Poly(self._expr, *self.symbols, domain='QQ')
        return {monom: sympy.Rational(coeff) for monom, coeff in poly.as_dict().items() if coeff != 0}

    @property
    def total_degree(self) -> int:
        terms = self.terms
        return max((sum(m) for m in terms), default=0)

    def is_zero(self) -> bool:
        return self._expr == 0

    def is_constant(self) -> bool:
        return not self._expr.free_symbols

    def _merged(self, other: 'MultiPoly') -> List[str]:
        return list(self._variables) + [v for v in other._variables if v not in self._variables]

    def __add__(self, other: Any) -> 'MultiPoly':
        other = MultiPoly.coerce(other)
        return MultiPoly(self._expr + other._expr, self._merged(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> 'MultiPoly':
        other = MultiPoly.coerce(other)
        return MultiPoly(self._expr - other._expr, self._merged(other))

    def __rsub__(self, other: Any) -> 'MultiPoly':
        return MultiPoly.coerce(other) - self

    def __mul__(self, other: Any) -> 'MultiPoly':
        other = MultiPoly.coerce(other)
        return MultiPoly(self._expr * other._expr, self._merged(other))

    __rmul__ = __mul__

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly(-self._expr, self._variables)

    def __pow__(self, k: int) -> 'MultiPoly':
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        return MultiPoly(self._expr ** k, self._variables)

    def __truediv__(self, c: Any) -> 'MultiPoly':
        return MultiPoly(self._expr / as_rational(c), self._variables)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, sympy.Rational)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return sympy.expand(self._expr - other._expr) == 0

    def __hash__(self):
        return hash(self._expr)

    def substitute(self, bindings: Mapping[VariableLike, Any]) -> 'MultiPoly':
        return poly_substitute(self, bindings)

    def evaluate(self, bindings: Mapping[VariableLike, Any]) -> sympy.Rational:
        result = poly_substitute(self, bindings)
        if not result.is_constant():
            unbound = ', '.join(v for v in result.variables if sympy.Symbol(v) in result.expr.free_symbols)
            raise ValueError(f"unbound variables remain: {unbound}")
        return as_rational(result.expr)

    def factored(self) -> str:
        return str(sympy.factor(self._expr))

    def __str__(self) -> str:
        return str(self._expr)

    def __repr__(self) -> str:
        return f"MultiPoly({self._expr}, variables={list(self._variables)})"


def poly_substitute(p: MultiPoly, bindings: Mapping[VariableLike, Any]) -> MultiPoly:
    """Simultaneous exact substitution; bindings for variables absent from p are ignored."""
    replacements = {}
    introduced: List[str] = []
    for key, value in bindings.items():
        name = _symbol(key).name
        if name not in p.variables:
            continue
        if isinstance(value, MultiPoly):
            replacements[sympy.Symbol(name)] = value.expr
            introduced.extend(v for v in value.variables if v not in introduced)
        else:
            replacements[sympy.Symbol(name)] = as_rational(value)
    bound = {s.name for s in replacements}
    remaining = [v for v in p.variables if v not in bound]
    variables = remaining + [v for v in introduced if v not in remaining]
    return MultiPoly(p.expr.xreplace(replacements), variables)


def poly_identity_test(difference: MultiPoly, rng, samples: int = 20, bound: int = 10 ** 4) -> bool:
    """Zero-test by evaluation at random rational points."""
    for _ in range(samples):
        point = {v: random_rational(rng, bound) for v in difference.variables}
        if difference.evaluate(point) != 0:
            return False
    return True
