"""Exact linear algebra over the rationals and prime fields.

Every Hom space, ideal and homology computation in this package reduces to
kernels, solves and subspace arithmetic implemented here.  All arithmetic is
exact: rationals are `fractions.Fraction` in lowest terms, prime-field
elements are ints in [0, p).  Subspaces are kept in reduced row echelon form,
which is the canonical representative used for every equality test.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

__all__ = [
    "FieldSpec",
    "QQ",
    "Mat",
    "Subspace",
    "LinSolver",
    "kernel",
    "solve_affine",
]


class FieldSpec:
    """The base field: Q (characteristic 0) or F_p for a prime p."""

    def __init__(self, characteristic: int = 0):
        if characteristic:
            if characteristic < 2 or any(
                characteristic % d == 0 for d in range(2, int(characteristic**0.5) + 1)
            ):
                raise InputError(f"characteristic {characteristic} is not prime")
        self.char = characteristic

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rationals" if self.char == 0 else "prime-field"

    # -- element arithmetic ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def coerce(self, x):
        """Accept ints, Fractions and 'a/b' strings."""
        if self.char == 0:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise InputError(f"cannot coerce {x!r} into Q")
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/")
                return self.div(int(num) % self.char, int(den) % self.char)
            x = int(x)
        if isinstance(x, (int, Fraction)):
            if isinstance(x, Fraction):
                return self.div(x.numerator % self.char, x.denominator % self.char)
            return x % self.char
        raise InputError(f"cannot coerce {x!r} into F_{self.char}")

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("field inverse of zero")
        return 1 / Fraction(a) if self.char == 0 else pow(a, self.char - 2, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All field elements; prime fields only (used by enumeration oracles)."""
        if self.char == 0:
            raise InputError("cannot enumerate Q")
        return range(self.char)

    def random(self, rng):
        if self.char:
            return rng.randrange(self.char)
        return Fraction(rng.randint(-4, 4))

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.char == other.char

    def __hash__(self):
        return hash(("FieldSpec", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = FieldSpec.rationals()


class Mat:
    """Dense matrix over a FieldSpec, acting on column vectors."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data, rows=None, cols=None):
        self.field = field
        if rows is None:
            rows = len(data)
            cols = len(data[0]) if data else 0
        self.rows = rows
        self.cols = cols
        self.data = [[field.coerce(x) for x in row] for row in data]
        for row in self.data:
            if len(row) != cols:
                raise InputError("ragged matrix rows")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        if rows:
            return cls(field, rows)
        return cls.zeros(field, 0, 0 if cols is None else cols)

    @classmethod
    def column(cls, field, vec):
        return cls(field, [[x] for x in vec], len(vec), 1)

    def copy(self):
        return Mat(self.field, [row[:] for row in self.data], self.rows, self.cols)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        f = self.field
        return Mat(
            f,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        self._check_shape(other)
        f = self.field
        return Mat(
            f,
            [
                [f.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        f = self.field
        return Mat(f, [[f.neg(a) for a in row] for row in self.data], self.rows, self.cols)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return Mat(f, [[f.mul(c, a) for a in row] for row in self.data], self.rows, self.cols)

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise InputError(
                f"matrix product shape mismatch: {self.shape} x {other.shape}"
            )
        f = self.field
        out = Mat.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            srow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = srow[k]
                if not a:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return out

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise InputError("vector length mismatch")
        f = self.field
        out = []
        for row in self.data:
            s = f.zero
            for a, x in zip(row, vec):
                if a and x:
                    s = f.add(s, f.mul(a, x))
            out.append(s)
        return out

    def transpose(self):
        return Mat(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.shape == other.shape
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(map(tuple, self.data))))

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in row) for row in self.data)
        return f"Mat({self.rows}x{self.cols}: {body})"

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
        f = self.field
        rows = [row[:] for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            pr = next((i for i in range(r, self.rows) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = f.inv(rows[r][c])
            rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(self.rows):
                if i != r and rows[i][c]:
                    q = rows[i][c]
                    rows[i] = [f.sub(x, f.mul(q, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return Mat(f, rows, self.rows, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space, one vector per free column."""
        f = self.field
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            vec = [f.zero] * self.cols
            vec[fc] = f.one
            for r, pc in enumerate(pivots):
                vec[pc] = f.neg(red.data[r][fc])
            basis.append(vec)
        return basis

    def solve(self, b):
        """One solution of self·x = b, or None when inconsistent."""
        if len(b) != self.rows:
            raise InputError("right-hand side length mismatch")
        f = self.field
        aug = Mat(
            f,
            [row + [bi] for row, bi in zip(self.data, b)] if self.rows else [],
            self.rows,
            self.cols + 1,
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.data[r][self.cols]
        return x


class LinSolver:
    """Repeated exact solves of A·x = b with A fixed.

    Precomputes the RREF of [A | I]; each solve is then a single
    matrix-vector product plus consistency check.
    """

    def __init__(self, a: Mat):
        self.field = a.field
        self.a = a
        aug = Mat(
            a.field,
            [
                row + [a.field.one if i == j else a.field.zero for j in range(a.rows)]
                for i, row in enumerate(a.data)
            ]
            if a.rows
            else [],
            a.rows,
            a.cols + a.rows,
        )
        red, pivots = aug.rref()
        self.pivots = [p for p in pivots if p < a.cols]
        self.rank = len(self.pivots)
        # transform rows: red = T·[A|I], so T = right block
        self.transform = [row[a.cols :] for row in red.data]
        self.reduced = [row[: a.cols] for row in red.data]

    def solve(self, b):
        """One solution of A·x = b, or None."""
        f = self.field
        w = []
        for trow in self.transform:
            s = f.zero
            for t, bi in zip(trow, b):
                if t and bi:
                    s = f.add(s, f.mul(t, bi))
            w.append(s)
        x = [f.zero] * self.a.cols
        for r, pc in enumerate(self.pivots):
            x[pc] = w[r]
        # rows past the rank must be consistent
        for r in range(self.rank, len(w)):
            if w[r]:
                return None
        return x


def kernel(m: Mat) -> "Subspace":
    """Right null space {v : m·v = 0} as a canonical Subspace."""
    return Subspace.from_vectors(m.field, m.cols, m.kernel_basis())


def solve_affine(m: Mat, b):
    """Full solution set of m·x = b: (particular, kernel Subspace), or None."""
    x = m.solve(list(b))
    if x is None:
        return None
    return x, kernel(m)


class Subspace:
    """A subspace of F^n, stored by its reduced-echelon basis (canonical)."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: FieldSpec, ambient: int, echelon_basis):
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(v) for v in echelon_basis)

    @classmethod
    def from_vectors(cls, field, ambient, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise InputError("vector does not match ambient dimension")
        if not vectors:
            return cls(field, ambient, [])
        red, pivots = Mat(field, vectors, len(vectors), ambient).rref()
        return cls(field, ambient, red.data[: len(pivots)])

    @classmethod
    def zero(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, Mat.identity(field, ambient).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        return Mat.from_rows(self.field, [list(v) for v in self.basis], self.ambient)

    def reduce(self, vec):
        """Residue of vec after subtracting its projection onto the basis."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if x)
            if v[pc]:
                c = v[pc]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __add__(self, other) -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(
            self.field, self.ambient, list(self.basis) + list(other.basis)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Kernel-of-stacked-matrix construction."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        f = self.field
        # columns: coefficients (x, y) with x·A = y·B
        stacked = Mat(
            f,
            [
                [self.basis[i][c] for i in range(self.dim)]
                + [f.neg(other.basis[j][c]) for j in range(other.dim)]
                for c in range(self.ambient)
            ],
            self.ambient,
            self.dim + other.dim,
        )
        vecs = []
        for coeff in stacked.kernel_basis():
            v = [f.zero] * self.ambient
            for i in range(self.dim):
                if coeff[i]:
                    v = [f.add(a, f.mul(coeff[i], b)) for a, b in zip(v, self.basis[i])]
            vecs.append(v)
        return Subspace.from_vectors(f, self.ambient, vecs)

    def quotient_basis(self, sub: "Subspace"):
        """Vectors of self extending a basis of sub (coset representatives)."""
        self._check(sub)
        if not self.contains_subspace(sub):
            raise InputError("quotient-basis requires sub to be contained in self")
        out = []
        span = sub
        for v in self.basis:
            if not span.contains(v):
                out.append(list(v))
                span = span + Subspace.from_vectors(self.field, self.ambient, [v])
        return out

    def _check(self, other):
        if self.ambient != other.ambient:
            raise InputError("ambient dimension mismatch")

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient})"


def subspace_algebra(op: str, a: Subspace, b: Subspace):
    """Dispatcher mirroring the external interface: sum/intersect/quotient-basis/contains."""
    if op == "sum":
        return a + b
    if op == "intersect":
        return a.intersect(b)
    if op == "quotient-basis":
        return a.quotient_basis(b)
    if op == "contains":
        return a.contains_subspace(b)
    raise InputError(f"unknown subspace operation {op!r}")


class CosetSpace:
    """Coordinates on total/sub: coset representatives plus projection maps."""

    def __init__(self, total: Subspace, sub: Subspace):
        self.field = total.field
        self.ambient = total.ambient
        self.total = total
        self.sub = sub
        self.reps = total.quotient_basis(sub)
        self.dim = len(self.reps)
        cols = [list(v) for v in self.reps] + [list(v) for v in sub.basis]
        self._solver = LinSolver(
            Mat(
                self.field,
                [[cols[j][i] for j in range(len(cols))] for i in range(self.ambient)],
                self.ambient,
                len(cols),
            )
        )

    def project(self, vec):
        """Coordinates of vec + sub in the coset basis."""
        sol = self._solver.solve([self.field.coerce(x) for x in vec])
        if sol is None:
            raise InputError("vector outside the total space")
        return sol[: self.dim]

    def lift(self, coords):
        f = self.field
        v = [f.zero] * self.ambient
        for c, rep in zip(coords, self.reps):
            if c:
                v = [f.add(a, f.mul(c, b)) for a, b in zip(v, rep)]
        return v
