"""
Row-major sparse matrices over exact scalars.

Entries are usually ``fractions.Fraction`` but any field type works
(floats and complex numbers are used by the cross-checks).
"""

from fractions import Fraction


def fstr(x):
    """Render a scalar the way reports and triplet files store it"""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, complex):
        return f"{x.real!r}{x.imag:+.17g}j"
    return repr(x)


class SparseMatrix:
    """
    Sparse matrix stored as one dictionary ``{col: value}`` per row.

    Zero values are never stored, so ``row(i)`` lists exactly the nonzero
    entries of row ``i``.
    """

    def __init__(self, n_rows, n_cols, rows=None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._rows = rows if rows is not None else [dict() for _ in range(n_rows)]

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        return cls(len(values), len(values), [{i: v} if v != 0 else {} for i, v in enumerate(values)])

    @classmethod
    def from_dense(cls, dense):
        dense = [list(r) for r in dense]
        n_cols = len(dense[0]) if dense else 0
        rows = [{j: v for j, v in enumerate(r) if v != 0} for r in dense]
        return cls(len(dense), n_cols, rows)

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self):
        return sum(len(r) for r in self._rows)

    def add(self, i, j, value):
        """Accumulate ``value`` into entry (i, j)"""
        if value == 0:
            return
        row = self._rows[i]
        total = row.get(j, 0) + value
        if total == 0:
            row.pop(j, None)
        else:
            row[j] = total

    def __getitem__(self, key):
        i, j = key
        return self._rows[i].get(j, 0)

    def __setitem__(self, key, value):
        i, j = key
        if value == 0:
            self._rows[i].pop(j, None)
        else:
            self._rows[i][j] = value

    def row(self, i):
        return self._rows[i]

    def entries(self):
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                yield i, j, v

    def copy(self):
        return SparseMatrix(self.n_rows, self.n_cols, [dict(r) for r in self._rows])

    def transpose(self):
        out = SparseMatrix(self.n_cols, self.n_rows)
        for i, j, v in self.entries():
            out._rows[j][i] = v
        return out

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if not isinstance(other, SparseMatrix):
            return self.mat_vec(other)
        if self.n_cols != other.n_rows:
            raise ValueError(f"Shape mismatch: {self.shape} @ {other.shape}")
        out = SparseMatrix(self.n_rows, other.n_cols)
        for i, row in enumerate(self._rows):
            acc = {}
            for k, a in row.items():
                for j, b in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out._rows[i] = {j: v for j, v in acc.items() if v != 0}
        return out

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} vs {other.shape}")
        out = self.copy()
        for i, j, v in other.entries():
            out.add(i, j, sign * v)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return SparseMatrix(self.n_rows, self.n_cols,
                            [{j: c * v for j, v in r.items() if c * v != 0} for r in self._rows])

    def mat_vec(self, v):
        """Column action ``M @ v`` for a plain sequence ``v``"""
        return [sum((a * v[j] for j, a in row.items()), 0) for row in self._rows]

    def vec_mat(self, v):
        """Row action ``v @ M`` for a plain sequence ``v``"""
        out = [0] * self.n_cols
        for i, row in enumerate(self._rows):
            if v[i] == 0:
                continue
            for j, a in row.items():
                out[j] += v[i] * a
        return out

    def row_sums(self):
        return [sum(r.values(), 0) for r in self._rows]

    def is_zero(self):
        return all(not r for r in self._rows)

    def to_dense(self):
        dense = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, j, v in self.entries():
            dense[i][j] = v
        return dense

    def to_numpy(self, dtype=float):
        import numpy as np
        arr = np.zeros(self.shape, dtype=dtype)
        for i, j, v in self.entries():
            arr[i, j] = dtype(v)
        return arr

    def map_values(self, fn):
        return SparseMatrix(self.n_rows, self.n_cols,
                            [{j: fn(v) for j, v in r.items()} for r in self._rows])

    def to_triplets(self):
        """Export as ``row col value`` lines, one nonzero entry per line"""
        return "\n".join(f"{i} {j} {fstr(v)}" for i, j, v in self.entries())

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"
