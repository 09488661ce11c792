"""Exact linear algebra over the scalar domains of utils.scalars.

Dense helpers work on lists of rows. ``SparseEchelon`` keeps an echelon
basis of sparse vectors (dicts keyed by any totally ordered key) and is used
for ideal closures where the ambient basis is large but vectors are short.
"""

from typing import Callable, Hashable, Iterable, Optional

from utils.scalars import Scalar, ScalarDomain

Matrix = list[list[Scalar]]
SparseVector = dict[Hashable, Scalar]


class SingularMatrixError(ValueError):
    """Raised when inverting a singular or non-square matrix."""
    pass


def zeros(rows: int, cols: int, domain: ScalarDomain) -> Matrix:
    return [[domain.zero] * cols for _ in range(rows)]


def identity(size: int, domain: ScalarDomain) -> Matrix:
    out = zeros(size, size, domain)
    for i in range(size):
        out[i][i] = domain.one
    return out


def transpose(matrix: Matrix, rows: int, cols: int) -> Matrix:
    return [[matrix[i][j] for i in range(rows)] for j in range(cols)]


def matmul(a: Matrix, b: Matrix, inner: int, cols: int, domain: ScalarDomain) -> Matrix:
    """Product of an (m x inner) and an (inner x cols) matrix."""
    out = zeros(len(a), cols, domain)
    for i, row in enumerate(a):
        target = out[i]
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    target[j] = target[j] + x * y
    return out


def rref(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; pivot columns are chosen left to right."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(rows: Matrix, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Matrix, ncols: int, domain: ScalarDomain) -> Matrix:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [domain.zero] * ncols
        vec[f] = domain.one
        for i, p in enumerate(pivots):
            vec[p] = -reduced[i][f]
        basis.append(vec)
    return basis


def solve(a: Matrix, b: list[Scalar], ncols: int, domain: ScalarDomain) -> Optional[list[Scalar]]:
    """One solution of a . x = b, or None when the system is inconsistent."""
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [domain.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][ncols]
    return x


def inverse(matrix: Matrix, size: int, domain: ScalarDomain) -> Matrix:
    if len(matrix) != size:
        raise SingularMatrixError(f"Expected a square matrix of size {size}")
    augmented = [list(row) + e for row, e in zip(matrix, identity(size, domain))]
    reduced, pivots = rref(augmented, 2 * size)
    if pivots[:size] != list(range(size)) or len(pivots) < size:
        raise SingularMatrixError("Matrix is singular")
    return [row[size:] for row in reduced[:size]]


def in_span(basis: Matrix, vec: list[Scalar], ncols: int) -> bool:
    return rank(list(basis) + [vec], ncols) == rank(basis, ncols)


def coordinates(basis: Matrix, vec: list[Scalar], ncols: int, domain: ScalarDomain) -> Optional[list[Scalar]]:
    """Coefficients c with sum c_i basis_i = vec, or None if vec is outside the span."""
    if not basis:
        return [] if not any(vec) else None
    columns = transpose(basis, len(basis), ncols)
    return solve(columns, vec, len(basis), domain)


class SparseEchelon:
    """Echelon basis of sparse vectors, pivoting on the largest key.

    ``order`` maps a key to a sortable value; the leading key of a row is the
    key with the largest order. Rows are normalized to leading coefficient 1.
    """

    def __init__(self, order: Callable[[Hashable], object] = lambda k: k):
        self.order = order
        self.rows: dict[Hashable, SparseVector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def leading(self, vec: SparseVector) -> Hashable:
        return max(vec, key=self.order)

    def reduce(self, vec: SparseVector) -> SparseVector:
        """Fully reduce a vector: no key of the result is a pivot."""
        vec = {k: v for k, v in vec.items() if v}
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec
            key = max(hits, key=self.order)
            factor = vec[key]
            for k, v in self.rows[key].items():
                value = vec.get(k, 0) - factor * v
                if value:
                    vec[k] = value
                else:
                    vec.pop(k, None)

    def add(self, vec: SparseVector) -> bool:
        """Insert a vector; returns False when it was already in the span."""
        reduced = self.reduce(vec)
        if not reduced:
            return False
        lead = self.leading(reduced)
        inv = 1 / reduced[lead]
        self.rows[lead] = {k: v * inv for k, v in reduced.items()}
        return True

    def extend(self, vectors: Iterable[SparseVector]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def contains(self, vec: SparseVector) -> bool:
        return not self.reduce(vec)

    @property
    def pivots(self) -> list[Hashable]:
        return sorted(self.rows, key=self.order)
