"""Dense square matrices over either scalar backend.

Entries are held in a numpy array: ``complex128`` for the approximate backend,
``object`` (of :class:`~nctorus.scalar.CycloScalar`) for the exact one.  The
exact product skips zero entries, which keeps clock/shift style matrices
cheap without giving up the dense layout.
"""

from __future__ import annotations

import numpy as np

from .scalar import APPROX

__all__ = ["SquareMatrix", "commutator", "pairing"]


class SquareMatrix:
    """Immutable n x n matrix tied to a scalar field."""

    __slots__ = ("n", "field", "entries", "_rows")

    def __init__(self, entries: np.ndarray, field):
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"expected a square array, got shape {entries.shape}")
        self.n = entries.shape[0]
        self.field = field
        entries.setflags(write=False)
        self.entries = entries
        self._rows = None

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, n: int, field=APPROX) -> "SquareMatrix":
        return cls(_zero_array(n, field), field)

    @classmethod
    def identity(cls, n: int, field=APPROX) -> "SquareMatrix":
        a = _zero_array(n, field)
        for i in range(n):
            a[i, i] = field.one
        return cls(a, field)

    @classmethod
    def from_rows(cls, rows, field=APPROX) -> "SquareMatrix":
        n = len(rows)
        a = _zero_array(n, field)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("rows must form a square array")
            for j, x in enumerate(row):
                a[i, j] = field.coerce(x)
        return cls(a, field)

    @classmethod
    def from_entries(cls, n: int, entries: dict, field=APPROX) -> "SquareMatrix":
        """Build from a sparse {(i, j): value} mapping."""
        a = _zero_array(n, field)
        for (i, j), x in entries.items():
            a[i, j] = a[i, j] + field.coerce(x)
        return cls(a, field)

    @property
    def backend(self) -> str:
        return "exact" if self.field.exact else "approximate"

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "SquareMatrix") -> None:
        if not isinstance(other, SquareMatrix):
            raise TypeError("expected a SquareMatrix")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.field is not self.field:
            raise ValueError(f"backend mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        return SquareMatrix(self.entries + other.entries, self.field)

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        return SquareMatrix(self.entries - other.entries, self.field)

    def __neg__(self) -> "SquareMatrix":
        return SquareMatrix(-self.entries, self.field)

    def scale(self, c) -> "SquareMatrix":
        c = self.field.coerce(c)
        if self.field.exact:
            out = _zero_array(self.n, self.field)
            for i, j, x in self.nonzeros():
                out[i, j] = x * c
            return SquareMatrix(out, self.field)
        return SquareMatrix(self.entries * c, self.field)

    def __mul__(self, c) -> "SquareMatrix":
        if isinstance(c, SquareMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        if not self.field.exact:
            return SquareMatrix(self.entries @ other.entries, self.field)
        out = _zero_array(self.n, self.field)
        rows_b = other.row_support()
        for i, row in enumerate(self.row_support()):
            for k, a in row:
                for j, b in rows_b[k]:
                    out[i, j] = out[i, j] + a * b
        return SquareMatrix(out, self.field)

    def __pow__(self, k: int) -> "SquareMatrix":
        if k < 0:
            raise ValueError("negative matrix powers are not supported")
        result = SquareMatrix.identity(self.n, self.field)
        for _ in range(k):
            result = result @ self
        return result

    def dagger(self) -> "SquareMatrix":
        if self.field.exact:
            out = _zero_array(self.n, self.field)
            for i, j, x in self.nonzeros():
                out[j, i] = x.conjugate()
            return SquareMatrix(out, self.field)
        return SquareMatrix(self.entries.conj().T.copy(), self.field)

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.entries.T.copy(), self.field)

    def trace(self):
        t = self.field.zero
        for i in range(self.n):
            t = t + self.entries[i, i]
        return t

    # sparsity helpers (exact backend) -----------------------------------

    def row_support(self) -> list[list[tuple[int, object]]]:
        if self._rows is None:
            e = self.entries
            if self.field.exact:
                rows = [[(j, e[i, j]) for j in range(self.n) if e[i, j]] for i in range(self.n)]
            else:
                rows = [[(j, e[i, j]) for j in np.flatnonzero(e[i])] for i in range(self.n)]
            self._rows = rows
        return self._rows

    def nonzeros(self):
        for i, row in enumerate(self.row_support()):
            for j, x in row:
                yield i, j, x

    # predicates ---------------------------------------------------------

    def is_zero(self, tol: float | None = None) -> bool:
        if self.field.exact:
            return not any(True for _ in self.nonzeros())
        tol = self.field.tol if tol is None else tol
        return float(np.max(np.abs(self.entries), initial=0.0)) <= tol

    def max_abs(self) -> float:
        """Largest entry magnitude; positive whenever the matrix is nonzero."""
        return max((self.field.residual(x) for _, _, x in self.nonzeros()), default=0.0)

    def equals(self, other: "SquareMatrix", tol: float | None = None) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and self.field is other.field and self.equals(other)

    __hash__ = None

    def is_upper_triangular(self, strict: bool = False) -> bool:
        for i, j, x in self.nonzeros():
            if i > j or (strict and i == j):
                if not self.field.is_zero(x):
                    return False
        return True

    def is_antihermitian(self) -> bool:
        return (self + self.dagger()).is_zero()

    def has_real_diagonal(self) -> bool:
        return all(self.field.is_zero(self.field.imag(self.entries[i, i])) for i in range(self.n))

    # export -------------------------------------------------------------

    def to_complex(self) -> np.ndarray:
        if self.field.exact:
            out = np.zeros((self.n, self.n), dtype=complex)
            for i, j, x in self.nonzeros():
                out[i, j] = self.field.to_complex(x)
            return out
        return np.array(self.entries, dtype=complex)

    def to_json(self) -> list[list[dict]]:
        c = self.to_complex()
        return [[{"re": float(x.real), "im": float(x.imag)} for x in row] for row in c]

    def __repr__(self) -> str:
        return f"SquareMatrix(n={self.n}, backend={self.backend})\n{np.array2string(self.to_complex(), precision=4)}"


def _zero_array(n: int, field) -> np.ndarray:
    if field.exact:
        a = np.empty((n, n), dtype=object)
        a.fill(field.zero)
        return a
    return np.zeros((n, n), dtype=complex)


def commutator(x: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
    """[x, y] = xy - yx."""
    return x @ y - y @ x


def pairing(x: SquareMatrix, y: SquareMatrix):
    """Im Tr(xy), computed without forming the product.

    Exact backend returns a real element of the cyclotomic field, approximate
    returns a float.
    """
    x._check(y)
    field = x.field
    if not field.exact:
        return float(np.sum(x.entries * y.entries.T).imag)
    acc = field.zero
    ye = y.entries
    for i, j, a in x.nonzeros():
        b = ye[j, i]
        if b:
            acc = acc + a * b
    return field.imag(acc)

