"""Exact linear algebra over the rationals and prime fields.

Scalars are plain Python values: ``fractions.Fraction`` over the rationals
(always in lowest terms with positive denominator) and canonical ints in
``[0, p)`` over GF(p).  A :class:`Field` object supplies the arithmetic, so
matrix and subspace code is field-generic.

Elimination strategy: over the rationals rows are scaled to integers and
reduced with fraction-free (Bareiss) elimination, which keeps intermediate
entries integral; over GF(p) plain Gauss-Jordan is used.  Subspaces are
always stored as reduced row echelon bases, so subspace equality is a
syntactic comparison of the stored rows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NotInvertibleError,
    UnsupportedFieldError,
)

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "QQ",
    "GF",
    "Matrix",
    "Subspace",
    "rank",
    "kernel_basis",
    "subspace_sum",
    "subspace_intersect",
    "enumerate_subspaces",
    "gaussian_binomial",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of the two supported exact fields."""

    characteristic: int = 0
    is_finite: bool = False

    def normalize(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise UnsupportedFieldError(f"{self} is not enumerable")

    def validate(self, x) -> bool:
        """True iff ``x`` is a canonical scalar of this field."""
        raise NotImplementedError

    def to_str(self, x) -> str:
        return str(x)

    def parse(self, s: str):
        """Parse a scalar from its serialized form ("n" or "n/d")."""
        return self.from_fraction(Fraction(s))


class RationalField(Field):
    """The rational numbers, represented by ``fractions.Fraction``."""

    characteristic = 0
    is_finite = False

    def normalize(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def validate(self, x):
        return isinstance(x, (int, Fraction))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """GF(p) for a prime p, represented by canonical ints in [0, p)."""

    is_finite = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def normalize(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes in GF({self.p})")
        return (q.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p

    def elements(self):
        return iter(range(self.p))

    def validate(self, x):
        return isinstance(x, int) and 0 <= x < self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def _check_same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatchError(f"mixed fields: {a} vs {b}")


# ---------------------------------------------------------------------------
# Elimination cores.  These return reduced row echelon data:
# (pivot column tuple, tuple of canonical rows with unit pivots, no zero rows).
# ---------------------------------------------------------------------------


def _rref_prime(rows: list[list[int]], p: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c] % p, p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] % p:
                f = m[i][c] % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return tuple(pivots), tuple(tuple(row) for row in m[: len(pivots)])


def _rref_rational(rows: list[list[Fraction]]) -> tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]]:
    # Clear denominators per row, then run fraction-free (Bareiss) forward
    # elimination on integers; back-substitution happens on the small echelon
    # part with exact rational division.
    m: list[list[int]] = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        m.append(ints)
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pc = m[r][c]
        for i in range(r + 1, n_rows):
            fi = m[i][c]
            m[i] = [(pc * a - fi * b) // prev for a, b in zip(m[i], m[r])]
        prev = pc
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    # Reduced form: normalize pivots to 1 and eliminate above, with Fractions.
    ech: list[list[Fraction]] = []
    for i in range(len(pivots)):
        pc = m[i][pivots[i]]
        ech.append([Fraction(x, pc) for x in m[i]])
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            f = ech[j][c]
            if f:
                ech[j] = [a - f * b for a, b in zip(ech[j], ech[i])]
    return tuple(pivots), tuple(tuple(row) for row in ech)


def _rref(rows: Sequence[Sequence], field: Field):
    if field.is_finite:
        return _rref_prime([list(r) for r in rows], field.characteristic)
    return _rref_rational([[Fraction(x) for x in r] for r in rows])


class Matrix:
    """Immutable sparse matrix: only nonzero entries are stored."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows: int, cols: int, field: Field, entries=None):
        self.rows = rows
        self.cols = cols
        self.field = field
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionMismatchError(f"entry ({r},{c}) outside {rows}x{cols}")
                if not field.validate(v):
                    raise FieldMismatchError(f"entry {v!r} is not a canonical {field} scalar")
                v = field.normalize(v)
                if v != field.zero:
                    clean[(r, c)] = v
        self.entries = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field) -> "Matrix":
        return cls(rows, cols, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        one = field.one
        return cls(n, n, field, {(i, i): one for i in range(n)})

    @classmethod
    def scalar(cls, n: int, value, field: Field) -> "Matrix":
        value = field.normalize(value)
        return cls(n, n, field, {(i, i): value for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field, cols: int | None = None) -> "Matrix":
        n_rows = len(rows)
        if cols is None:
            cols = len(rows[0]) if n_rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatchError("ragged rows")
            for j, v in enumerate(row):
                v = field.normalize(v)
                if v != field.zero:
                    entries[(i, j)] = v
        return cls(n_rows, cols, field, entries)

    # -- basic queries -----------------------------------------------------

    def get(self, r: int, c: int):
        return self.entries.get((r, c), self.field.zero)

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_rows(self) -> list[list]:
        zero = self.field.zero
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def rows_by_index(self) -> dict[int, list[tuple[int, object]]]:
        """Entries grouped by row: {row: [(col, value), ...]}."""
        grouped: dict[int, list[tuple[int, object]]] = {}
        for (r, c), v in self.entries.items():
            grouped.setdefault(r, []).append((c, v))
        return grouped

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.field, frozenset(self.entries.items())))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field}, nnz={self.nnz})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._compat(other)
        out = dict(self.entries)
        norm = self.field.normalize
        zero = self.field.zero
        for k, v in other.entries.items():
            s = norm(out.get(k, zero) + v)
            if s == zero:
                out.pop(k, None)
            else:
                out[k] = s
        return Matrix(self.rows, self.cols, self.field, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(self.field.neg(self.field.one))

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.neg(self.field.one))

    def scale(self, s) -> "Matrix":
        s = self.field.normalize(s)
        if s == self.field.zero:
            return Matrix(self.rows, self.cols, self.field)
        norm = self.field.normalize
        return Matrix(
            self.rows, self.cols, self.field, {k: norm(v * s) for k, v in self.entries.items()}
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_rows = other.rows_by_index()
        acc: dict[tuple[int, int], object] = {}
        for (r, k), v in self.entries.items():
            row = other_rows.get(k)
            if not row:
                continue
            for c, w in row:
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        norm = self.field.normalize
        zero = self.field.zero
        out = {}
        for k, v in acc.items():
            v = norm(v)
            if v != zero:
                out[k] = v
        return Matrix(self.rows, other.cols, self.field, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self.field, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product, vec given as a dense column of scalars."""
        if len(vec) != self.cols:
            raise DimensionMismatchError("vector length mismatch")
        acc = [0] * self.rows
        for (r, c), v in self.entries.items():
            acc[r] += v * vec[c]
        norm = self.field.normalize
        return [norm(x) for x in acc]

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product (self most significant)."""
        _check_same_field(self.field, other.field)
        norm = self.field.normalize
        zero = self.field.zero
        out = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                v = norm(v1 * v2)
                if v != zero:
                    out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v
        return Matrix(self.rows * other.rows, self.cols * other.cols, self.field, out)

    def stack(self, other: "Matrix") -> "Matrix":
        """Vertical concatenation."""
        _check_same_field(self.field, other.field)
        if self.cols != other.cols:
            raise DimensionMismatchError("column count mismatch for stack")
        out = dict(self.entries)
        for (r, c), v in other.entries.items():
            out[(r + self.rows, c)] = v
        return Matrix(self.rows + other.rows, self.cols, self.field, out)

    def _compat(self, other: "Matrix") -> None:
        _check_same_field(self.field, other.field)
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    # -- elimination-backed queries ----------------------------------------

    def rref(self):
        """Reduced row echelon form: (pivot columns, canonical rows)."""
        return _rref(self.to_rows(), self.field)

    def rank(self) -> int:
        pivots, _ = self.rref()
        return len(pivots)

    def column_space(self) -> "Subspace":
        return Subspace.from_spanning(self.transpose().to_rows(), self.rows, self.field)

    def kernel(self) -> "Subspace":
        """Right kernel {v : M v = 0}, canonicalized."""
        pivots, ech = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        field = self.field
        vectors = []
        for f in free:
            v = [field.zero] * self.cols
            v[f] = field.one
            for i, c in enumerate(pivots):
                v[c] = field.neg(ech[i][f])
            vectors.append(v)
        return Subspace.from_spanning(vectors, self.cols, field)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise NotInvertibleError("only square matrices can be inverted")
        n = self.rows
        field = self.field
        aug = self.to_rows()
        ident = Matrix.identity(n, field).to_rows()
        for i in range(n):
            aug[i] = list(aug[i]) + list(ident[i])
        pivots, ech = _rref(aug, field)
        if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
            raise NotInvertibleError("matrix is singular")
        entries = {}
        for i in range(n):
            for j in range(n):
                v = ech[i][n + j]
                if v != field.zero:
                    entries[(i, j)] = v
        return Matrix(n, n, field, entries)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


class Subspace:
    """A linear subspace of F^n, stored as a reduced echelon basis.

    The stored basis is the unique reduced row echelon representative, so
    `==` on subspaces is set equality.
    """

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, ambient_dim: int, field: Field, basis=(), pivots=(), _trusted=False):
        self.ambient_dim = ambient_dim
        self.field = field
        if _trusted:
            self.basis = basis
            self.pivots = pivots
        else:
            p, b = _rref(list(basis), field) if basis else ((), ())
            self.basis = b
            self.pivots = p

    @classmethod
    def from_spanning(cls, vectors: Iterable[Sequence], ambient_dim: int, field: Field) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatchError("spanning vector has wrong length")
        if not vecs:
            return cls.zero(ambient_dim, field)
        pivots, rows = _rref(vecs, field)
        return cls(ambient_dim, field, rows, pivots, _trusted=True)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field) -> "Subspace":
        return cls(ambient_dim, field, (), (), _trusted=True)

    @classmethod
    def full(cls, ambient_dim: int, field: Field) -> "Subspace":
        rows = tuple(
            tuple(field.one if i == j else field.zero for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(ambient_dim, field, rows, tuple(range(ambient_dim)), _trusted=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.field, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in F^{self.ambient_dim} over {self.field})"

    def _compat(self, other: "Subspace") -> None:
        _check_same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError("vector length mismatch")
        field = self.field
        v = [field.normalize(x) for x in vector]
        for row, piv in zip(self.basis, self.pivots):
            f = v[piv]
            if f != field.zero:
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        return all(x == field.zero for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(self.contains(row) for row in other.basis)

    def sum_(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace.from_spanning(
            list(self.basis) + list(other.basis), self.ambient_dim, self.field
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim, self.field)
        field = self.field
        n = self.ambient_dim
        du, dw = self.dim, other.dim
        # Columns are (a, b) with a*U - b*W = 0; kernel gives intersection a*U.
        entries = {}
        for i, row in enumerate(self.basis):
            for j, v in enumerate(row):
                if v != field.zero:
                    entries[(j, i)] = v
        for i, row in enumerate(other.basis):
            for j, v in enumerate(row):
                if v != field.zero:
                    entries[(j, du + i)] = field.neg(v)
        ker = Matrix(n, du + dw, field, entries).kernel()
        vectors = []
        for kv in ker.basis:
            vec = [field.zero] * n
            for i in range(du):
                c = kv[i]
                if c != field.zero:
                    vec = [field.add(a, field.mul(c, b)) for a, b in zip(vec, self.basis[i])]
            vectors.append(vec)
        return Subspace.from_spanning(vectors, n, field)

    def to_matrix(self) -> Matrix:
        return Matrix.from_rows([list(r) for r in self.basis], self.field, cols=self.ambient_dim)


# ---------------------------------------------------------------------------
# Module-level operations.
# ---------------------------------------------------------------------------


def rank(m: Matrix) -> int:
    """Exact rank of a matrix over its field."""
    return m.rank()


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of the right kernel of ``m``."""
    return m.kernel()


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    """Smallest subspace containing both arguments."""
    return u.sum_(w)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Largest subspace contained in both arguments."""
    return u.intersect(w)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of GF(p)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(ambient_dim: int, dim: int, field: Field) -> Iterator[Subspace]:
    """Yield every ``dim``-dimensional subspace of field^ambient_dim once.

    Subspaces are produced as reduced echelon bases: pivot column sets run in
    lexicographic order, and for each pivot set the free entries run through
    all field values odometer-style (last free slot fastest).  Only finite
    fields are enumerable.
    """
    if not field.is_finite:
        raise UnsupportedFieldError("subspace enumeration requires a finite field")
    if dim > ambient_dim or dim < 0:
        raise DimensionMismatchError(f"dim {dim} exceeds ambient dimension {ambient_dim}")
    if dim == 0:
        yield Subspace.zero(ambient_dim, field)
        return
    values = list(field.elements())
    for pivots in itertools.combinations(range(ambient_dim), dim):
        pivot_set = set(pivots)
        # Free slots: entries strictly right of the row's pivot, outside
        # pivot columns (those are forced to 0 in reduced echelon form).
        free_slots = [
            (i, c)
            for i in range(dim)
            for c in range(pivots[i] + 1, ambient_dim)
            if c not in pivot_set
        ]
        for fill in itertools.product(values, repeat=len(free_slots)):
            rows = [[field.zero] * ambient_dim for _ in range(dim)]
            for i, c in enumerate(pivots):
                rows[i][c] = field.one
            for (i, c), v in zip(free_slots, fill):
                rows[i][c] = v
            yield Subspace(
                ambient_dim,
                field,
                tuple(tuple(r) for r in rows),
                tuple(pivots),
                _trusted=True,
            )
