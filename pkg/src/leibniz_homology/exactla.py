"""Exact linear algebra over the rationals and prime fields.

Subspaces are stored by their reduced row-echelon basis, so two subspaces
are equal exactly when their basis grids are equal. A quotient ``V / R``
uses the non-pivot coordinates of ``R``'s echelon form as its coordinates;
the section sends quotient coordinate ``k`` to the unit vector on the
``k``-th non-pivot column.

Matrices of linear maps act on column vectors: ``matrix`` has shape
``(codomain.dim, domain.dim)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .report import Node, SequenceReport


class LinearAlgebraError(Exception):
    pass


class DimensionMismatch(LinearAlgebraError, ValueError):
    pass


class NotWellDefined(LinearAlgebraError):
    """A map was asked to descend to quotients whose relations it does not respect."""


class NonCommutingSquare(LinearAlgebraError):
    pass


class ExactnessPrereqFailed(LinearAlgebraError):
    pass


# ---------------------------------------------------------------------------
# scalars


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, x):
        if isinstance(x, Mod):
            return x.v
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(self.v, -1, self.p), self.p) ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """The rationals (characteristic 0) or the prime field GF(p)."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0:
            if not _is_prime(characteristic) or characteristic >= 2**31:
                raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {characteristic}")
        self.characteristic = characteristic

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a residue into Q")
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise TypeError(f"residue mod {x.p} is not in GF({p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return Mod(x.numerator * pow(x.denominator, -1, p), p)
        return Mod(int(x), p)

    def parse(self, text: str):
        return self(text)

    def format(self, a) -> str:
        return str(a)

    def elements(self) -> list:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return [Mod(i, self.characteristic) for i in range(self.characteristic)]

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_from_string(text: str) -> Field:
    """Parse ``Q``/``QQ``/``rationals`` or ``GF(p)``/``Fp``/``F_p``."""
    t = text.strip().replace(" ", "")
    if t.upper() in ("Q", "QQ", "RATIONALS"):
        return QQ
    for prefix in ("GF(", "gf("):
        if t.startswith(prefix) and t.endswith(")"):
            return Field(int(t[len(prefix):-1]))
    for prefix in ("F_", "F", "GF", "f_", "f"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return Field(int(t[len(prefix):]))
    raise ValueError(f"unrecognised field {text!r}")


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense immutable matrix of field elements."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def _raw(cls, field: Field, rows: tuple, ncols: int) -> Matrix:
        m = object.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(field(x) for x in c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(field, rows, len(cols))

    @classmethod
    def from_sparse_columns(cls, field: Field, columns: Sequence[dict], nrows: int) -> Matrix:
        z = field.zero
        grid = [[z] * len(columns) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                grid[i][j] = x
        return cls._raw(field, tuple(tuple(r) for r in grid), len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, tuple(self.columns()), self.nrows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        z = self.field.zero
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            s = z
            for j, x in nz:
                a = r[j]
                if a:
                    s = s + a * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            z = self.field.zero
            orow = [[(k, x) for k, x in enumerate(r) if x] for r in other.rows]
            rows = []
            for r in self.rows:
                acc = [z] * other.ncols
                for j, a in enumerate(r):
                    if a:
                        for k, x in orow[j]:
                            acc[k] = acc[k] + a * x
                rows.append(tuple(acc))
            return Matrix._raw(self.field, tuple(rows), other.ncols)
        return self.apply(other)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix._raw(
            self.field,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + other.scale(-1)

    def scale(self, k) -> Matrix:
        k = self.field(k)
        return Matrix._raw(self.field, tuple(tuple(k * a for a in r) for r in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, [{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


def hstack(*ms: Matrix) -> Matrix:
    field = ms[0].field
    n = ms[0].nrows
    if any(m.nrows != n for m in ms):
        raise DimensionMismatch("hstack row mismatch")
    rows = tuple(tuple(x for m in ms for x in m.rows[i]) for i in range(n))
    return Matrix._raw(field, rows, sum(m.ncols for m in ms))


def vstack(*ms: Matrix) -> Matrix:
    field = ms[0].field
    n = ms[0].ncols
    if any(m.ncols != n for m in ms):
        raise DimensionMismatch("vstack column mismatch")
    return Matrix._raw(field, tuple(r for m in ms for r in m.rows), n)


def sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


def dense(field: Field, v: dict, n: int) -> tuple:
    z = field.zero
    return tuple(v.get(i, z) for i in range(n))


class Echelon:
    """Incrementally maintained reduced row-echelon basis of sparse rows.

    Every stored row has pivot entry 1 and zeros in every other pivot
    column, so reducing a vector needs one pass over its pivot entries.
    """

    __slots__ = ("field", "ncols", "rows")

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for c in [c for c in v if c in self.rows]:
            a = v.get(c)
            if not a:
                continue
            for k, x in self.rows[c].items():
                nv = v.get(k, 0) - a * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, v: dict) -> bool:
        if len(self.rows) == self.ncols:
            return False
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            a = row.get(p)
            if a:
                for k, x in r.items():
                    nv = row.get(k, 0) - a * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return True

    def extend(self, vectors: Iterable[dict]) -> None:
        for v in vectors:
            self.insert(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def matrix(self) -> Matrix:
        f = self.field
        return Matrix._raw(f, tuple(dense(f, self.rows[p], self.ncols) for p in self.pivots()), self.ncols)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    e = Echelon(m.field, m.ncols)
    e.extend(sparse(r) for r in m.rows)
    return e.matrix(), e.pivots()


def rank(m: Matrix) -> int:
    e = Echelon(m.field, m.ncols)
    e.extend(sparse(r) for r in m.rows)
    return e.rank


# ---------------------------------------------------------------------------
# subspaces and quotients


class Subspace:
    """Subspace of ``field^ambient_dim`` held by its RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_echelon")

    def __init__(self, field: Field, ambient_dim: int, echelon: Echelon):
        self.field = field
        self.ambient_dim = ambient_dim
        self._echelon = echelon
        self.basis = echelon.matrix()
        self.pivots = tuple(echelon.pivots())

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable) -> Subspace:
        e = Echelon(field, ambient_dim)
        for v in vectors:
            if isinstance(v, dict):
                e.insert(v)
            else:
                if len(v) != ambient_dim:
                    raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
                e.insert(sparse(v))
        return cls(field, ambient_dim, e)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, Echelon(field, ambient_dim))

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        o = field.one
        return cls.span(field, ambient_dim, ({i: o} for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[tuple]:
        return list(self.basis.rows)

    def sparse_vectors(self) -> list[dict]:
        return [dict(self._echelon.rows[p]) for p in self.pivots]

    def reduce(self, v) -> dict:
        if not isinstance(v, dict):
            v = sparse(v)
        return self._echelon.reduce(v)

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coords(self, v) -> tuple:
        """Coordinates of ``v`` in the RREF basis (entries at pivot columns)."""
        if not self.contains(v):
            raise LinearAlgebraError("vector not in subspace")
        z = self.field.zero
        if isinstance(v, dict):
            return tuple(v.get(p, z) for p in self.pivots)
        return tuple(v[p] for p in self.pivots)

    def inclusion_matrix(self) -> Matrix:
        """Columns are the basis vectors (ambient_dim x dim)."""
        if self.dim == 0:
            return Matrix.zeros(self.field, self.ambient_dim, 0)
        return self.basis.T

    def issubset(self, other: Subspace) -> bool:
        self._same_ambient(other)
        return all(other.contains(v) for v in self.sparse_vectors())

    def __le__(self, other: Subspace) -> bool:
        return self.issubset(other)

    def __add__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        e = Echelon(self.field, self.ambient_dim)
        e.extend(self.sparse_vectors())
        e.extend(other.sparse_vectors())
        return Subspace(self.field, self.ambient_dim, e)

    def intersect(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # solve sum a_i u_i = sum b_j w_j
        cols = [sparse(u) for u in self.vectors()] + [
            {k: -x for k, x in sparse(w).items()} for w in other.vectors()
        ]
        m = Matrix.from_sparse_columns(self.field, cols, self.ambient_dim)
        ker = _nullspace(m)
        us = self.vectors()
        out = []
        for c in ker:
            v = [self.field.zero] * self.ambient_dim
            for i, a in enumerate(c[: self.dim]):
                if a:
                    for k, x in enumerate(us[i]):
                        if x:
                            v[k] = v[k] + a * x
            out.append(v)
        return Subspace.span(self.field, self.ambient_dim, out)

    def _same_ambient(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise DimensionMismatch("subspaces live in different ambients")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.rows == other.basis.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class QuotientSpace:
    """``field^ambient_dim / relations`` with canonical projection and section."""

    __slots__ = ("field", "ambient_dim", "relations", "dim", "free", "_rel_rows", "_pos")

    def __init__(self, ambient_dim: int, relations: Subspace):
        if relations.ambient_dim != ambient_dim:
            raise DimensionMismatch(
                f"relations live in dimension {relations.ambient_dim}, ambient is {ambient_dim}"
            )
        self.field = relations.field
        self.ambient_dim = ambient_dim
        self.relations = relations
        piv = set(relations.pivots)
        self.free = tuple(c for c in range(ambient_dim) if c not in piv)
        self.dim = len(self.free)
        self._rel_rows = relations._echelon.rows
        self._pos = {c: k for k, c in enumerate(self.free)}

    def project(self, v) -> tuple:
        if not isinstance(v, dict):
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("vector length does not match ambient")
            v = sparse(v)
        z = self.field.zero
        out = [z] * self.dim
        pos = self._pos
        for c, a in v.items():
            k = pos.get(c)
            if k is not None:
                out[k] = out[k] + a
            else:
                for f, x in self._rel_rows[c].items():
                    if f != c:
                        kk = pos[f]
                        out[kk] = out[kk] - a * x
        return tuple(out)

    def project_sparse(self, v: dict) -> dict:
        return sparse(self.project(v))

    def lift(self, q: Sequence) -> tuple:
        if len(q) != self.dim:
            raise DimensionMismatch("quotient vector length mismatch")
        z = self.field.zero
        out = [z] * self.ambient_dim
        for k, a in enumerate(q):
            out[self.free[k]] = a
        return tuple(out)

    def lift_basis(self, k: int) -> dict:
        return {self.free[k]: self.field.one}

    def lift_basis_dense(self, k: int) -> tuple:
        z = self.field.zero
        v = [z] * self.ambient_dim
        v[self.free[k]] = self.field.one
        return tuple(v)

    @property
    def projection(self) -> Matrix:
        cols = [self.project({c: self.field.one}) for c in range(self.ambient_dim)]
        return Matrix.from_columns(self.field, cols, self.dim) if cols else Matrix.zeros(self.field, self.dim, 0)

    @property
    def section(self) -> Matrix:
        o = self.field.one
        cols = [{c: o} for c in self.free]
        return Matrix.from_sparse_columns(self.field, cols, self.ambient_dim)

    def is_zero_class(self, v) -> bool:
        return self.relations.contains(v)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientSpace)
            and self.ambient_dim == other.ambient_dim
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.relations))

    def __repr__(self):
        return f"QuotientSpace(dim={self.dim}, ambient={self.ambient_dim}, relations={self.relations.dim})"


def space(field: Field, n: int) -> QuotientSpace:
    """The plain space ``field^n``."""
    return QuotientSpace(n, Subspace.zero(field, n))


def quotient(ambient_dim: int, relations: Subspace) -> QuotientSpace:
    return QuotientSpace(ambient_dim, relations)


# ---------------------------------------------------------------------------
# linear maps


class LinearMap:
    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: QuotientSpace, codomain: QuotientSpace, matrix: Matrix):
        if matrix.shape != (codomain.dim, domain.dim):
            raise DimensionMismatch(
                f"matrix shape {matrix.shape} does not match {codomain.dim}x{domain.dim}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @property
    def field(self) -> Field:
        return self.matrix.field

    @classmethod
    def from_images(cls, domain: QuotientSpace, codomain: QuotientSpace, images: Sequence) -> LinearMap:
        """Images of the domain basis vectors, as codomain coordinate vectors."""
        if len(images) != domain.dim:
            raise DimensionMismatch("need one image per domain basis vector")
        f = domain.field
        cols = [im if isinstance(im, dict) else sparse(im) for im in images]
        return cls(domain, codomain, Matrix.from_sparse_columns(f, cols, codomain.dim))

    @classmethod
    def identity(cls, s: QuotientSpace) -> LinearMap:
        return cls(s, s, Matrix.identity(s.field, s.dim))

    @classmethod
    def zero(cls, domain: QuotientSpace, codomain: QuotientSpace) -> LinearMap:
        return cls(domain, codomain, Matrix.zeros(domain.field, codomain.dim, domain.dim))

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def compose(self, inner: LinearMap) -> LinearMap:
        """``self ∘ inner``."""
        if inner.codomain.dim != self.domain.dim:
            raise DimensionMismatch("maps are not composable")
        return LinearMap(inner.domain, self.codomain, self.matrix @ inner.matrix)

    def __matmul__(self, inner: LinearMap) -> LinearMap:
        return self.compose(inner)

    def kernel(self) -> Subspace:
        return kernel(self)

    def image(self) -> Subspace:
        return image(self)

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_injective(self) -> bool:
        return self.rank == self.domain.dim

    def is_surjective(self) -> bool:
        return self.rank == self.codomain.dim

    def is_bijective(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.is_injective()

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearMap({self.domain.dim} -> {self.codomain.dim}, rank {self.rank})"


def _nullspace(m: Matrix) -> list[tuple]:
    e = Echelon(m.field, m.ncols)
    e.extend(sparse(r) for r in m.rows)
    pivots = e.pivots()
    pset = set(pivots)
    z, o = m.field.zero, m.field.one
    out = []
    for f in range(m.ncols):
        if f in pset:
            continue
        v = [z] * m.ncols
        v[f] = o
        for p in pivots:
            a = e.rows[p].get(f)
            if a:
                v[p] = -a
        out.append(tuple(v))
    return out


def sparse_kernel(columns: Sequence[dict], nrows: int, field: Field) -> Subspace:
    """Kernel of the map whose (sparse) columns are given."""
    rows: list[dict] = [{} for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows[i][j] = x
    n = len(columns)
    e = Echelon(field, n)
    e.extend(r for r in rows if r)
    pivots = e.pivots()
    pset = set(pivots)
    o = field.one
    out = []
    for f in range(n):
        if f in pset:
            continue
        v = {f: o}
        for p in pivots:
            a = e.rows[p].get(f)
            if a:
                v[p] = -a
        out.append(v)
    return Subspace.span(field, n, out)


def sparse_image(columns: Sequence[dict], nrows: int, field: Field) -> Subspace:
    return Subspace.span(field, nrows, columns)


def apply_columns(columns: Sequence[dict], v: dict) -> dict:
    """Apply the map with sparse ``columns`` to the sparse vector ``v``."""
    out: dict = {}
    for c, a in v.items():
        for k, x in columns[c].items():
            nv = out.get(k, 0) + a * x
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def kernel(f: LinearMap) -> Subspace:
    return Subspace.span(f.field, f.domain.dim, _nullspace(f.matrix))


def image(f: LinearMap) -> Subspace:
    return Subspace.span(f.field, f.codomain.dim, f.matrix.columns())


def cokernel(f: LinearMap) -> QuotientSpace:
    return QuotientSpace(f.codomain.dim, image(f))


def subspace_space(s: Subspace) -> tuple[QuotientSpace, LinearMap]:
    """A subspace as a space of its own, with the inclusion into the ambient."""
    own = space(s.field, s.dim)
    amb = space(s.field, s.ambient_dim)
    return own, LinearMap(own, amb, s.inclusion_matrix())


def restrict(f: LinearMap, sub: Subspace, target: Subspace | None = None) -> LinearMap:
    """``f`` restricted to ``sub`` (coordinates in its RREF basis).

    With ``target`` the result lands in ``target``'s RREF coordinates and the
    inclusion ``f(sub) ⊆ target`` is checked.
    """
    dom = space(f.field, sub.dim)
    images = [f(v) for v in sub.vectors()]
    if target is None:
        return LinearMap.from_images(dom, f.codomain, [f.codomain.project(f.codomain.lift(y)) for y in images])
    cod = space(f.field, target.dim)
    out = []
    for y in images:
        if not target.contains(y):
            raise NotWellDefined("restricted map leaves the target subspace")
        out.append(target.coords(y))
    return LinearMap.from_images(dom, cod, out)


def induced_map(f, dom: QuotientSpace, cod: QuotientSpace) -> LinearMap:
    """Descend an ambient map ``f`` to ``dom -> cod``.

    ``f`` is a Matrix (or LinearMap) of shape ``(cod.ambient_dim,
    dom.ambient_dim)``. Raises NotWellDefined unless ``f`` maps
    ``dom.relations`` into ``cod.relations``.
    """
    m = f.matrix if isinstance(f, LinearMap) else f
    if m.shape != (cod.ambient_dim, dom.ambient_dim):
        raise DimensionMismatch(
            f"ambient map shape {m.shape} vs ({cod.ambient_dim}, {dom.ambient_dim})"
        )
    for r in dom.relations.vectors():
        if not cod.relations.contains(m.apply(r)):
            raise NotWellDefined("ambient map does not send relations into relations")
    cols = [cod.project(m.apply(dom.lift_basis_dense(k))) for k in range(dom.dim)]
    return LinearMap.from_images(dom, cod, cols)


def induced_from_columns(columns: Sequence[dict], dom: QuotientSpace, cod: QuotientSpace) -> LinearMap:
    """Like induced_map but the ambient map is given sparsely by its columns."""
    if len(columns) != dom.ambient_dim:
        raise DimensionMismatch("need one column per ambient basis vector of the domain")

    def apply(v: dict) -> dict:
        out: dict = {}
        for c, a in v.items():
            for k, x in columns[c].items():
                nv = out.get(k, 0) + a * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    for r in dom.relations.sparse_vectors():
        if not cod.relations.contains(apply(r)):
            raise NotWellDefined("ambient map does not send relations into relations")
    images = [cod.project(columns[c]) for c in dom.free]
    return LinearMap.from_images(dom, cod, images)


def direct_sum_map(*maps: LinearMap) -> LinearMap:
    """``(f_1, ..., f_k)``: common domain into the direct sum of codomains."""
    dom = maps[0].domain
    f = dom.field
    total = sum(m.codomain.dim for m in maps)
    mat = vstack(*(m.matrix for m in maps)) if total else Matrix.zeros(f, 0, dom.dim)
    return LinearMap(dom, space(f, total), mat)


# ---------------------------------------------------------------------------
# exactness


def check_exact(seq: Sequence[LinearMap], name: str = "sequence", labels: Sequence[str] | None = None) -> SequenceReport:
    """Exactness at every interior node of ``seq[0] -> seq[1] -> ...``."""
    if not seq:
        raise ValueError("empty sequence")
    for a, b in zip(seq, seq[1:]):
        if a.codomain != b.domain:
            raise DimensionMismatch("sequence maps are not composable")
    if labels is None:
        labels = [f"V{i}" for i in range(len(seq) + 1)]
    if len(labels) != len(seq) + 1:
        raise ValueError("need one label per space")
    rep = SequenceReport(name)
    for i in range(1, len(seq)):
        inc, out = seq[i - 1], seq[i]
        im = image(inc)
        ker = kernel(out)
        rep.nodes.append(Node(labels[i], out.domain.dim, im.dim, ker.dim, im == ker))
        rep.check(f"{labels[i - 1]}->{labels[i]}->{labels[i + 1]} composite is zero", (out @ inc).is_zero())
    return rep


# ---------------------------------------------------------------------------
# snake lemma


@dataclass(frozen=True)
class Ladder:
    """Commutative ladder

        A  --f-->  B  --g-->  C
        |alpha     |beta      |gamma
        A' --f2--> B' --g2--> C'
    """

    f: LinearMap
    g: LinearMap
    f2: LinearMap
    g2: LinearMap
    alpha: LinearMap
    beta: LinearMap
    gamma: LinearMap


@dataclass(frozen=True)
class Snake:
    connecting: LinearMap  # ker(gamma) -> coker(alpha), in RREF / quotient coordinates
    kernel: Subspace  # ker(gamma) inside C
    cokernel: QuotientSpace  # A' / im(alpha)


def solve(f: LinearMap, y: Sequence, shift: bool = False) -> tuple | None:
    """A preimage of ``y`` under ``f`` or None.

    The default choice sets every free variable to zero; ``shift=True``
    adds the sum of the kernel basis vectors, giving a second deterministic
    choice.
    """
    fld = f.field
    n = f.domain.dim
    e = Echelon(fld, n + 1)
    for r, yr in zip(f.matrix.rows, y):
        row = sparse(r)
        if yr:
            row[n] = yr
        e.insert(row)
    if n in e.rows:
        return None
    x = [fld.zero] * n
    for p, row in e.rows.items():
        x[p] = row.get(n, fld.zero)
    if shift:
        for v in kernel(f).vectors():
            x = [a + b for a, b in zip(x, v)]
    return tuple(x)


def snake_connecting(ladder: Ladder) -> Snake:
    L = ladder
    if not (L.f2 @ L.alpha).matrix == (L.beta @ L.f).matrix:
        raise NonCommutingSquare("left square does not commute")
    if not (L.g2 @ L.beta).matrix == (L.gamma @ L.g).matrix:
        raise NonCommutingSquare("right square does not commute")
    if not L.f2.is_injective():
        raise ExactnessPrereqFailed("bottom-left map is not injective")
    if image(L.f2) != kernel(L.g2):
        raise ExactnessPrereqFailed("bottom row not exact at the middle")
    if image(L.f) != kernel(L.g):
        raise ExactnessPrereqFailed("top row not exact at the middle")
    if not L.g.is_surjective():
        raise ExactnessPrereqFailed("top-right map is not surjective")

    kgam = kernel(L.gamma)
    coker = cokernel(L.alpha)

    def chase(c, shift: bool) -> tuple:
        b = solve(L.g, c, shift)
        bb = L.beta(b)
        a = solve(L.f2, bb, shift)
        if a is None:
            raise ExactnessPrereqFailed("beta(b) left the image of the bottom-left map")
        return coker.project(a)

    images = [chase(c, False) for c in kgam.vectors()]
    again = [chase(c, True) for c in kgam.vectors()]
    if images != again:
        raise NotWellDefined("connecting map depends on the choice of preimages")
    dom = space(kgam.field, kgam.dim)
    return Snake(LinearMap.from_images(dom, coker, images), kgam, coker)
