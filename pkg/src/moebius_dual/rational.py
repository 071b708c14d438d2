"""Dense matrices over exact rationals.

Entries are ``fractions.Fraction`` stored in a numpy object array, so all
linear algebra (matmul, inversion, comparisons) is exact.  Floats are
rejected on input: every algebraic identity in this package is checked
with zero tolerance, and a float would silently poison that.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import NonRationalEntry, SingularMatrix

__all__ = ["RationalMatrix", "parse_fraction", "format_fraction"]


def parse_fraction(s):
    """Parse a ``"p/q"`` or ``"p"`` string into a Fraction."""
    if isinstance(s, Rational):
        return Fraction(s)
    if isinstance(s, str):
        s = s.strip()
        if "." in s or "e" in s or "E" in s:
            raise NonRationalEntry(f"decimal notation {s!r} rejected; use \"p/q\"")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise NonRationalEntry(f"cannot parse rational {s!r}") from exc
    raise NonRationalEntry(f"not an exact rational: {s!r}")


def format_fraction(x: Fraction) -> str:
    """Lowest-terms ``"p/q"`` with positive denominator, ``"p"`` if integral."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coerce(value):
    if isinstance(value, float):
        raise NonRationalEntry(f"float entry {value!r} rejected; supply exact rationals")
    if isinstance(value, str):
        return parse_fraction(value)
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, (np.integer,)):
        return Fraction(int(value))
    raise NonRationalEntry(f"not an exact rational: {value!r}")


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_a",)

    def __init__(self, data):
        if isinstance(data, RationalMatrix):
            a = data._a
        elif isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
            a = np.array([[_coerce(v) for v in row] for row in data], dtype=object)
        else:
            rows = [list(r) for r in data]
            if not rows or any(len(r) != len(rows[0]) for r in rows):
                raise ValueError("ragged or empty matrix data")
            a = np.array([[_coerce(v) for v in row] for row in rows], dtype=object)
        if a.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        a.setflags(write=False)
        self._a = a

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "RationalMatrix":
        m = object.__new__(cls)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        a = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls._wrap(a)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls._wrap(np.full((rows, cols), Fraction(0), dtype=object))

    @classmethod
    def diagonal(cls, values) -> "RationalMatrix":
        vals = [_coerce(v) for v in values]
        a = np.full((len(vals), len(vals)), Fraction(0), dtype=object)
        for i, v in enumerate(vals):
            a[i, i] = v
        return cls._wrap(a)

    @classmethod
    def from_function(cls, rows: int, cols: int, fn) -> "RationalMatrix":
        a = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                a[i, j] = _coerce(fn(i, j))
        return cls._wrap(a)

    @classmethod
    def column(cls, values) -> "RationalMatrix":
        return cls([[v] for v in values])

    # -- basic queries ---------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    def __getitem__(self, key):
        v = self._a[key]
        if isinstance(v, np.ndarray):
            return RationalMatrix._wrap(v.copy()) if v.ndim == 2 else list(v)
        return v

    def row(self, i):
        return list(self._a[i, :])

    def col(self, j):
        return list(self._a[:, j])

    def array(self) -> np.ndarray:
        """Writable copy of the underlying object array."""
        return self._a.copy()

    def __iter__(self):
        return (list(r) for r in self._a)

    def __repr__(self):
        body = "; ".join(" ".join(format_fraction(v) for v in row) for row in self._a)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    # -- algebra ---------------------------------------------------------------

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix._wrap(self._a @ other._a)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix._wrap(self._a + other._a)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix._wrap(self._a - other._a)

    def scale(self, c) -> "RationalMatrix":
        return RationalMatrix._wrap(self._a * _coerce(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self._a))))

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._wrap(self._a.T.copy())

    def apply(self, vector):
        """Matrix-vector product, returning a list of Fractions."""
        v = np.array([_coerce(x) for x in vector], dtype=object)
        return list(self._a @ v)

    def power(self, n: int) -> "RationalMatrix":
        if self.rows != self.cols or n < 0:
            raise ValueError("power requires a square matrix and n >= 0")
        out = RationalMatrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out

    def inverse(self) -> "RationalMatrix":
        """Exact inverse by Gauss-Jordan elimination with rational pivots."""
        if self.rows != self.cols:
            raise SingularMatrix("only square matrices can be inverted")
        n = self.rows
        x = self._a.copy()
        y = RationalMatrix.identity(n).array()
        for i in range(n):
            piv = next((j for j in range(i, n) if x[j, i] != 0), None)
            if piv is None:
                raise SingularMatrix(f"singular at column {i}")
            if piv != i:
                x[[i, piv]] = x[[piv, i]]
                y[[i, piv]] = y[[piv, i]]
            p = x[i, i]
            if p != 1:
                x[i, :] = x[i, :] / p
                y[i, :] = y[i, :] / p
            for j in range(n):
                if j != i and x[j, i] != 0:
                    f = x[j, i]
                    x[j, :] = x[j, :] - f * x[i, :]
                    y[j, :] = y[j, :] - f * y[i, :]
        return RationalMatrix._wrap(y)

    def nullspace_vector(self):
        """A nonzero rational kernel vector, or None if the kernel is trivial."""
        m, n = self.shape
        x = self._a.copy()
        pivots = {}
        r = 0
        for c in range(n):
            piv = next((j for j in range(r, m) if x[j, c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                x[[r, piv]] = x[[piv, r]]
            x[r, :] = x[r, :] / x[r, c]
            for j in range(m):
                if j != r and x[j, c] != 0:
                    x[j, :] = x[j, :] - x[j, c] * x[r, :]
            pivots[c] = r
            r += 1
            if r == m:
                break
        free = [c for c in range(n) if c not in pivots]
        if not free:
            return None
        f = free[0]
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for c, pr in pivots.items():
            v[c] = -x[pr, f]
        return v

    # -- predicates ------------------------------------------------------------

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._a.flat)

    def min_entry(self) -> Fraction:
        return min(self._a.flat)

    def row_sums(self):
        return [sum(row, Fraction(0)) for row in self._a]

    def is_stochastic(self) -> bool:
        return self.is_nonnegative() and all(s == 1 for s in self.row_sums())

    def is_substochastic(self) -> bool:
        return self.is_nonnegative() and all(s <= 1 for s in self.row_sums())

    # -- serialization ----------------------------------------------------------

    def to_json(self, row_labels=None, col_labels=None) -> str:
        doc = {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_fraction(v) for v in row] for row in self._a],
        }
        if row_labels is not None:
            doc["row_labels"] = [str(l) for l in row_labels]
        if col_labels is not None:
            doc["col_labels"] = [str(l) for l in col_labels]
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RationalMatrix":
        doc = json.loads(text, parse_float=_reject_float)
        m = cls(doc["entries"])
        if m.rows != doc.get("rows", m.rows) or m.cols != doc.get("cols", m.cols):
            raise ValueError("declared shape does not match entries")
        return m

    def to_csv(self, row_labels=None, col_labels=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if col_labels is not None:
            w.writerow([""] + [str(l) for l in col_labels])
        for i, row in enumerate(self._a):
            prefix = [str(row_labels[i])] if row_labels is not None else []
            w.writerow(prefix + [format_fraction(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, has_labels: bool = False) -> "RationalMatrix":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if has_labels:
            rows = [r[1:] for r in rows[1:]]
        return cls(rows)


def _reject_float(s):
    raise NonRationalEntry(f"float {s!r} rejected; use \"p/q\" strings")
