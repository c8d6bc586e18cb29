"""Dense square matrices over a finite field and row-reduced subspace bases.

Matrices are immutable wrappers around numpy int64 arrays of canonical
field encodings.  A :class:`SpanBasis` holds the row-reduced echelon
basis of a subspace of n-by-n matrices (flattened row-major to length
n*n vectors) together with enough bookkeeping to express any member in
terms of the matrices that were actually inserted, in insertion order —
the coordinate system callers actually reason in.
"""

import numpy as np

from .field import Field, FieldElement

MAX_SIZE = 64


class Matrix:
    """An n-by-n matrix over a :class:`Field`; immutable after construction."""

    __slots__ = ("field", "n", "data")

    def __init__(self, field: Field, data: np.ndarray):
        n = data.shape[0]
        if data.shape != (n, n):
            raise ValueError(f"matrix must be square, got shape {data.shape}")
        if n < 1 or n > MAX_SIZE:
            raise ValueError(f"matrix size {n} out of range 1..{MAX_SIZE}")
        self.field = field
        self.n = n
        self.data = data
        data.flags.writeable = False

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        """Build from nested integers, reducing each entry into the field."""
        return cls(field, field.np_reduce(np.array(rows, dtype=np.int64)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.zeros((n, n), dtype=np.int64))

    def _check_compatible(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check_compatible(other)
        return Matrix(self.field, self.field.np_add(self.data, other.data))

    def __sub__(self, other):
        self._check_compatible(other)
        return Matrix(self.field, self.field.np_sub(self.data, other.data))

    def __neg__(self):
        return Matrix(self.field, self.field.np_neg(self.data))

    def __mul__(self, other):
        self._check_compatible(other)
        return Matrix(self.field, self.field.np_matmul(self.data, other.data))

    def scale(self, c) -> "Matrix":
        raw = c.value if isinstance(c, FieldElement) else self.field.from_int(c)
        return Matrix(self.field, self.field.np_mul(np.int64(raw), self.data))

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, int(self.data[i, j]))

    def flat(self) -> np.ndarray:
        """Row-major flattening to a length n*n coordinate vector."""
        return self.data.reshape(-1)

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.n, self.data.tobytes()))

    def __repr__(self):
        rows = ", ".join("[" + " ".join(self.field.label(int(v)) for v in row) + "]"
                         for row in self.data)
        return f"Matrix({self.field}, {rows})"

    def to_lists(self) -> list[list[int]]:
        return self.data.tolist()


class SpanBasis:
    """Row-reduced basis of a subspace of n-by-n matrices.

    ``insert`` keeps the rows in reduced row-echelon form over the
    flattened coordinates (pivot order follows the row-major index) and
    records, for each echelon row, its expression in the independent
    matrices inserted so far.  ``coordinates`` therefore answers span
    membership with coefficients relative to the inserted matrices, not
    the echelon rows.
    """

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self._rows: list[np.ndarray] = []      # echelon rows, length n*n
        self._pivots: list[int] = []
        self._combos: list[np.ndarray] = []    # row i = sum_j combos[i][j] * originals[j]
        self._originals: list[Matrix] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def matrices(self) -> tuple[Matrix, ...]:
        """The independent inserted matrices, in insertion order."""
        return tuple(self._originals)

    def _reduce(self, vec: np.ndarray):
        """Return (residual, coefficients against echelon rows)."""
        f = self.field
        coeffs = np.zeros(len(self._rows), dtype=np.int64)
        for i, p in enumerate(self._pivots):
            c = int(vec[p])
            if c:
                coeffs[i] = c
                vec = f.np_sub(vec, f.np_mul(np.int64(c), self._rows[i]))
        return vec, coeffs

    def insert(self, m: Matrix) -> bool:
        """Insert a matrix; True if it extended the span."""
        self._check(m)
        residual, coeffs = self._reduce(m.flat().copy())
        nz = np.flatnonzero(residual)
        if nz.size == 0:
            return False
        f = self.field
        pivot = int(nz[0])
        lead_inv = np.int64(f.inv(int(residual[pivot])))
        new_row = f.np_mul(lead_inv, residual)

        k = len(self._originals)
        combo = np.zeros(k + 1, dtype=np.int64)
        combo[k] = 1
        for i, c in enumerate(coeffs):
            if c:
                combo[: len(self._combos[i])] = f.np_sub(
                    combo[: len(self._combos[i])],
                    f.np_mul(np.int64(int(c)), self._combos[i]))
        combo = f.np_mul(lead_inv, combo)

        # widen existing combo records for the new original
        self._combos = [np.concatenate([cb, np.zeros(k + 1 - len(cb), dtype=np.int64)])
                        for cb in self._combos]
        self._originals.append(m)

        # back-eliminate the new pivot column to keep full RREF
        for i in range(len(self._rows)):
            c = int(self._rows[i][pivot])
            if c:
                self._rows[i] = f.np_sub(self._rows[i], f.np_mul(np.int64(c), new_row))
                self._combos[i] = f.np_sub(self._combos[i], f.np_mul(np.int64(c), combo))

        pos = int(np.searchsorted(np.array(self._pivots, dtype=np.int64), pivot))
        self._rows.insert(pos, new_row)
        self._pivots.insert(pos, pivot)
        self._combos.insert(pos, combo)
        return True

    def coordinates(self, m: Matrix) -> np.ndarray | None:
        """Coefficients of m over the inserted matrices, or None if outside."""
        self._check(m)
        residual, coeffs = self._reduce(m.flat().copy())
        if residual.any():
            return None
        f = self.field
        out = np.zeros(len(self._originals), dtype=np.int64)
        for i, c in enumerate(coeffs):
            if c:
                out = f.np_add(out, f.np_mul(np.int64(int(c)), self._combos[i]))
        return out

    def contains(self, m: Matrix) -> bool:
        return self.coordinates(m) is not None

    def reconstruct(self, coords) -> Matrix:
        """Linear combination of the inserted matrices with given coefficients."""
        f = self.field
        acc = np.zeros(self.n * self.n, dtype=np.int64)
        for c, mat in zip(coords, self._originals):
            raw = c.value if isinstance(c, FieldElement) else f.from_int(int(c))
            if raw:
                acc = f.np_add(acc, f.np_mul(np.int64(raw), mat.flat()))
        return Matrix(f, acc.reshape(self.n, self.n))

    def _check(self, m: Matrix):
        if m.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {m.field}")
        if m.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {m.n}")

    def __repr__(self):
        return f"SpanBasis({self.field}, n={self.n}, dim={self.dim})"
