# symcomb.py
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterable, List, Sequence, Tuple

import sympy
from sympy.combinatorics import Permutation
from sympy.utilities.iterables import multiset_permutations, partitions

from errors import MurphyBasisError, PresentationError
from exactmath import ExactMatrix, column_basis, solve_in_span

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, 'parts', parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def from_sequence(cls, values: Iterable[int]) -> 'Partition':
        """Drop zero parts from a weakly decreasing non-negative sequence."""
        return cls(tuple(int(v) for v in values if int(v) != 0))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    def conjugate(self) -> 'Partition':
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))

    def boxes(self) -> List[Tuple[int, int]]:
        return [(r, c) for r, length in enumerate(self.parts) for c in range(length)]

    def contents(self) -> List[int]:
        return [c - r for r, c in self.boxes()]

    def hook_lengths(self) -> List[int]:
        conj = self.conjugate().parts
        return [self.parts[r] - c + conj[c] - r - 1 for r, c in self.boxes()]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return '(' + ','.join(str(p) for p in self.parts) + ')'


def partitions_of(m: int) -> List[Partition]:
    """All partitions of m, largest first part first."""
    if m == 0:
        return [Partition(())]
    result = []
    for multiplicities in partitions(m):
        parts = sorted((k for k, v in multiplicities.items() for _ in range(v)), reverse=True)
        result.append(Partition(tuple(parts)))
    return sorted(result, key=lambda p: p.parts, reverse=True)


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise ValueError("row lengths do not match the shape")
        entries = sorted(x for row in self.rows for x in row)
        if entries != list(range(1, self.shape.size + 1)):
            raise ValueError("filling must use 1..m exactly once")
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("rows must increase")
        for r in range(1, len(self.rows)):
            for c in range(len(self.rows[r])):
                if self.rows[r - 1][c] >= self.rows[r][c]:
                    raise ValueError("columns must increase")

    @property
    def size(self) -> int:
        return self.shape.size

    def position(self, i: int) -> Tuple[int, int]:
        for r, row in enumerate(self.rows):
            if i in row:
                return r, row.index(i)
        raise KeyError(i)

    def content(self, i: int) -> int:
        r, c = self.position(i)
        return c - r

    def content_vector(self) -> Tuple[int, ...]:
        return tuple(self.content(i) for i in range(1, self.size + 1))

    def reading_word(self) -> Tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    def row_labels(self) -> Tuple[int, ...]:
        """Row index of each of 1..m; the tabloid {T} in row-label form."""
        labels = [0] * self.size
        for r, row in enumerate(self.rows):
            for x in row:
                labels[x - 1] = r
        return tuple(labels)

    def columns(self) -> List[Tuple[int, ...]]:
        if not self.rows:
            return []
        return [tuple(row[c] for row in self.rows if len(row) > c) for c in range(len(self.rows[0]))]


@lru_cache(maxsize=None)
def enumerate_standard_tableaux(shape: Partition) -> Tuple[StandardTableau, ...]:
    """Standard tableaux in lexicographic order of their row-reading words."""
    found = []

    def grow(rows: List[List[int]], k: int):
        if k > shape.size:
            found.append(StandardTableau(shape, tuple(tuple(r) for r in rows)))
            return
        for r, length in enumerate(shape.parts):
            if len(rows[r]) < length and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                grow(rows, k + 1)
                rows[r].pop()

    grow([[] for _ in shape.parts], 1)
    return tuple(sorted(found, key=lambda t: t.reading_word()))


def specht_dimension(shape: Partition) -> int:
    return factorial(shape.size) // prod(shape.hook_lengths())


# Permutations are tuples of images (1-based): perm[i-1] = perm(i).

def identity_perm(m: int) -> Perm:
    return tuple(range(1, m + 1))


def transposition(i: int, j: int, m: int) -> Perm:
    images = list(range(1, m + 1))
    images[i - 1], images[j - 1] = j, i
    return tuple(images)


def compose(a: Perm, b: Perm) -> Perm:
    """(a ∘ b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def reversal(m: int) -> Perm:
    return tuple(m - i for i in range(m))


def perm_sign(perm: Perm) -> int:
    if len(perm) < 2:
        return 1
    return Permutation([x - 1 for x in perm]).signature()


def act_on_labels(perm: Perm, labels: Sequence[int]) -> Tuple[int, ...]:
    """Move the label at position k to position perm(k)."""
    moved = [0] * len(labels)
    for k, label in enumerate(labels):
        moved[perm[k] - 1] = label
    return tuple(moved)


def column_group(tableau: StandardTableau) -> List[Tuple[Perm, int]]:
    """All (permutation, sign) pairs preserving the columns of the tableau."""
    m = tableau.size
    per_column = []
    for col in tableau.columns():
        options = []
        for image in itertools.permutations(col):
            options.append(dict(zip(col, image)))
        per_column.append(options)
    group = []
    for choice in itertools.product(*per_column):
        images = list(range(1, m + 1))
        for mapping in choice:
            for src, dst in mapping.items():
                images[src - 1] = dst
        perm = tuple(images)
        group.append((perm, perm_sign(perm)))
    return group


@dataclass(frozen=True)
class SpechtModule:
    """S^λ on the polytabloid basis {e_T} in tableau order."""
    shape: Partition
    tableaux: Tuple[StandardTableau, ...]
    tabloids: Tuple[Tuple[int, ...], ...]
    polytabloids: ExactMatrix
    generator_matrices: Dict[str, ExactMatrix]
    _cache: Dict[Perm, ExactMatrix] = field(default_factory=dict, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.tableaux)

    @property
    def size(self) -> int:
        return self.shape.size

    def action(self, perm: Perm) -> ExactMatrix:
        """Matrix of an arbitrary permutation of 1..m on the polytabloid basis."""
        if perm in self._cache:
            return self._cache[perm]
        index = {t: i for i, t in enumerate(self.tabloids)}
        entries = {}
        for (row, col), value in self.polytabloids.entries.items():
            entries[(index[act_on_labels(perm, self.tabloids[row])], col)] = value
        image = ExactMatrix.from_entries(self.polytabloids.shape, entries)
        matrix = solve_in_span(self.polytabloids, image)
        if matrix is None:
            raise ArithmeticError(f"polytabloid span not stable under {perm}")
        self._cache[perm] = matrix
        return matrix

    def transposition_matrix(self, i: int, j: int) -> ExactMatrix:
        return self.action(transposition(i, j, self.size))

    def character(self, perm: Perm) -> sympy.Rational:
        return self.action(perm).trace()


@lru_cache(maxsize=None)
def specht_matrices(shape: Partition) -> SpechtModule:
    m = shape.size
    tableaux = enumerate_standard_tableaux(shape)
    base_labels = [r for r, length in enumerate(shape.parts) for _ in range(length)]
    tabloids = tuple(tuple(t) for t in multiset_permutations(base_labels)) if m else ((),)
    index = {t: i for i, t in enumerate(tabloids)}
    entries: Dict[Tuple[int, int], int] = {}
    for s, tableau in enumerate(tableaux):
        labels = tableau.row_labels()
        for perm, sign in column_group(tableau):
            key = (index[act_on_labels(perm, labels)], s)
            entries[key] = entries.get(key, 0) + sign
    polytabloids = ExactMatrix.from_entries((len(tabloids), len(tableaux)), entries)
    module = SpechtModule(shape, tableaux, tabloids, polytabloids, {})
    for i in range(1, m):
        module.generator_matrices[f'S{i}'] = module.transposition_matrix(i, i + 1)
    return module


def jm_matrices(shape: Partition, variant: str = 'L') -> List[ExactMatrix]:
    """L_s = Σ_{j<s} S_{sj} (variant 'L') or L̂_i = Σ_{j>i} S_{ij} (variant 'Lhat')."""
    module = specht_matrices(shape)
    if variant not in ('L', 'Lhat'):
        raise ValueError(f"unknown Jucys-Murphy variant {variant!r}")
    m, d = shape.size, module.dimension
    result = []
    for s in range(1, m + 1):
        total = ExactMatrix.zeros(d, d)
        others = range(1, s) if variant == 'L' else range(s + 1, m + 1)
        for j in others:
            total = total + module.transposition_matrix(s, j)
        result.append(total)
    return result


@dataclass(frozen=True)
class MurphyBasis:
    shape: Partition
    variant: str
    vectors: Tuple[ExactMatrix, ...]
    eigenvalues: Tuple[Tuple[int, ...], ...]

    @property
    def matrix(self) -> ExactMatrix:
        """Basis vectors as columns, in polytabloid coordinates."""
        return ExactMatrix.hstack(list(self.vectors), rows=len(self.vectors))


@lru_cache(maxsize=None)
def murphy_basis(shape: Partition, variant: str = 'L') -> MurphyBasis:
    module = specht_matrices(shape)
    m, d = shape.size, module.dimension
    L = jm_matrices(shape, 'L')
    box_contents = sorted(set(shape.contents()))
    identity = ExactMatrix.identity(d)
    vectors, table = [], []
    for s, tableau in enumerate(module.tableaux):
        alpha = tableau.content_vector()
        projector = identity
        for c in box_contents:
            for i in range(1, m + 1):
                if c == alpha[i - 1]:
                    continue
                factor = (identity.scale(c) - L[i - 1]).scale(sympy.Rational(1, c - alpha[i - 1]))
                projector = projector @ factor
        unit = ExactMatrix.from_entries((d, 1), {(s, 0): 1})
        w = projector @ unit
        if w.is_zero():
            raise MurphyBasisError(f"E_s e_s vanished for shape {shape} at s={s + 1}")
        if variant == 'Lhat':
            w = module.action(reversal(m)) @ w
            alpha = tuple(alpha[m - i] for i in range(1, m)) + ((0,) if m else ())
        elif variant != 'L':
            raise ValueError(f"unknown Jucys-Murphy variant {variant!r}")
        vectors.append(w)
        table.append(tuple(alpha))
    return MurphyBasis(shape, variant, tuple(vectors), tuple(table))


def weyl_dimension(weight: Sequence[int], N: int) -> int:
    """dim V(λ) for GL_N: ∏_{i<j} (λ_i − λ_j + j − i)/(j − i)."""
    lam = list(weight) + [0] * (N - len(weight))
    value = sympy.Rational(1)
    for i in range(N):
        for j in range(i + 1, N):
            value *= sympy.Rational(lam[i] - lam[j] + j - i, j - i)
    return int(value)


def schur_weyl_check(N: int, m: int) -> Tuple[int, int]:
    """(Σ_{λ ⊢ m, height ≤ N} dim V(λ)·d_λ, N^m)."""
    total = sum(weyl_dimension(lam.parts, N) * specht_dimension(lam)
                for lam in partitions_of(m) if lam.height <= N)
    return total, N ** m


def young_symmetrizer_image(shape: Partition, N: int) -> ExactMatrix:
    """Basis (as columns) of the image of the Young symmetrizer of T₁ in (C^N)^{⊗m}.

    Tensor coordinates follow itertools.product(range(N), repeat=m).
    """
    m = shape.size
    if m == 0:
        return ExactMatrix.identity(1)
    t1 = enumerate_standard_tableaux(shape)[0]
    rows = [tuple(r) for r in t1.rows]
    row_perms = []
    for choice in itertools.product(*(itertools.permutations(r) for r in rows)):
        images = list(range(1, m + 1))
        for src_row, dst_row in zip(rows, choice):
            for src, dst in zip(src_row, dst_row):
                images[src - 1] = dst
        row_perms.append(tuple(images))
    col_perms = column_group(t1)
    basis = list(itertools.product(range(N), repeat=m))
    index = {b: i for i, b in enumerate(basis)}
    entries: Dict[Tuple[int, int], int] = {}
    for col, word in enumerate(basis):
        symmetrized: Dict[Tuple[int, ...], int] = {}
        for r in row_perms:
            key = act_on_labels(r, word)
            symmetrized[key] = symmetrized.get(key, 0) + 1
        for key, coeff in symmetrized.items():
            for c, sign in col_perms:
                target = act_on_labels(c, key)
                entry = (index[target], col)
                entries[entry] = entries.get(entry, 0) + sign * coeff
    return column_basis(ExactMatrix.from_entries((len(basis), len(basis)), entries))


# Hyperoctahedral group

@dataclass(frozen=True)
class SignedPermutation:
    """g(i) = signs[i-1] * perm[i-1] for i in 1..n."""
    perm: Perm
    signs: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"not a bijection: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"invalid sign vector: {self.signs}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> 'SignedPermutation':
        return cls(identity_perm(n), (1,) * n)

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> 'SignedPermutation':
        return cls(transposition(i, j, n), (1,) * n)

    @classmethod
    def simple_reflection(cls, i: int, n: int) -> 'SignedPermutation':
        return cls.transposition(i, i + 1, n)

    @classmethod
    def sign_flip(cls, i: int, n: int) -> 'SignedPermutation':
        signs = [1] * n
        signs[i - 1] = -1
        return cls(identity_perm(n), tuple(signs))

    def image(self, i: int) -> int:
        """Signed image of i (which may itself be negative)."""
        value = self.signs[abs(i) - 1] * self.perm[abs(i) - 1]
        return value if i > 0 else -value

    def signed_images(self) -> Tuple[int, ...]:
        return tuple(self.image(i) for i in range(1, self.n + 1))

    def __mul__(self, other: 'SignedPermutation') -> 'SignedPermutation':
        images = [self.image(other.image(i)) for i in range(1, self.n + 1)]
        return SignedPermutation(tuple(abs(x) for x in images), tuple(1 if x > 0 else -1 for x in images))

    def inverse(self) -> 'SignedPermutation':
        perm = [0] * self.n
        signs = [1] * self.n
        for i in range(1, self.n + 1):
            j = self.perm[i - 1]
            perm[j - 1] = i
            signs[j - 1] = self.signs[i - 1]
        return SignedPermutation(tuple(perm), tuple(signs))

    def is_identity(self) -> bool:
        return self == SignedPermutation.identity(self.n)


def bc_generator_names(n: int) -> List[str]:
    return [f'S{i}' for i in range(1, n)] + [f'gamma{n}']


def bc_generator(name: str, n: int) -> SignedPermutation:
    if name.startswith('S'):
        return SignedPermutation.simple_reflection(int(name[1:]), n)
    if name.startswith('gamma'):
        return SignedPermutation.sign_flip(int(name[5:]), n)
    raise PresentationError(f"unknown group generator {name!r}")


def word_to_element(word: Sequence[str], n: int) -> SignedPermutation:
    element = SignedPermutation.identity(n)
    for name in word:
        element = element * bc_generator(name, n)
    return element


def enumerate_bc_group(n: int) -> Dict[SignedPermutation, Tuple[str, ...]]:
    """Every element of W_{BC_n} with its lexicographically least reduced word."""
    names = bc_generator_names(n)
    rank = {name: k for k, name in enumerate(names)}
    gens = [bc_generator(name, n) for name in names]
    words = {SignedPermutation.identity(n): ()}
    frontier = [SignedPermutation.identity(n)]
    while frontier:
        candidates: Dict[SignedPermutation, Tuple[str, ...]] = {}
        for g in frontier:
            for name, gen in zip(names, gens):
                h = gen * g
                if h in words:
                    continue
                word = (name,) + words[g]
                best = candidates.get(h)
                if best is None or [rank[x] for x in word] < [rank[x] for x in best]:
                    candidates[h] = word
        words.update(candidates)
        frontier = sorted(candidates, key=lambda e: [rank[x] for x in candidates[e]])
    return words


def coset_count_formula(n: int, block_sizes: Sequence[int], factorials: bool = True) -> sympy.Rational:
    """|W_{BC_n}/Γ̃| from the closed form; factorials=False gives the variant with bare ∏ n_i."""
    *a_blocks, xi_block = block_sizes
    if factorials:
        denominator = 2 ** xi_block * factorial(xi_block) * prod(factorial(b) for b in a_blocks)
    else:
        denominator = 2 ** xi_block * factorial(xi_block) * prod(a_blocks)
    return sympy.Rational(2 ** n * factorial(n), denominator) if denominator else sympy.nan


@dataclass(frozen=True)
class CosetRep:
    element: SignedPermutation
    word: Tuple[str, ...]


class CosetTable:
    """Left cosets gΓ̃ for Γ̃ = S_{n_1}×⋯×S_{n_p}×(S_{n_ξ}⋉Z₂^{n_ξ}) on consecutive blocks."""

    def __init__(self, n: int, block_sizes: Sequence[int]):
        block_sizes = tuple(int(b) for b in block_sizes)
        if not block_sizes or any(b < 0 for b in block_sizes) or sum(block_sizes) != n:
            raise PresentationError(f"block sizes {block_sizes} do not sum to n={n}")
        self.n = n
        self.block_sizes = block_sizes
        self.blocks: List[Tuple[int, ...]] = []
        start = 1
        for size in block_sizes:
            self.blocks.append(tuple(range(start, start + size)))
            start += size
        names = bc_generator_names(n)
        rank = {name: k for k, name in enumerate(names)}
        chosen: Dict[tuple, CosetRep] = {}
        for element, word in sorted(enumerate_bc_group(n).items(),
                                    key=lambda kv: (len(kv[1]), [rank[x] for x in kv[1]])):
            key = self.coset_key(element)
            if key not in chosen:
                chosen[key] = CosetRep(element, word)
        self.representatives: List[CosetRep] = sorted(
            chosen.values(), key=lambda c: (len(c.word), [rank[x] for x in c.word]))
        self._index = {self.coset_key(c.element): i for i, c in enumerate(self.representatives)}

    def coset_key(self, g: SignedPermutation) -> tuple:
        key = []
        for block in self.blocks[:-1]:
            key.append(tuple(sorted(g.image(j) for j in block)))
        key.append(tuple(sorted(abs(g.image(j)) for j in self.blocks[-1])))
        return tuple(key)

    def locate(self, g: SignedPermutation) -> Tuple[int, SignedPermutation]:
        """(coset index c, h ∈ Γ̃) with g = rep_c · h."""
        c = self._index[self.coset_key(g)]
        h = self.representatives[c].element.inverse() * g
        return c, h

    def __len__(self):
        return len(self.representatives)


def hyperoctahedral_cosets(n: int, block_sizes: Sequence[int]) -> List[CosetRep]:
    return list(CosetTable(n, block_sizes).representatives)
