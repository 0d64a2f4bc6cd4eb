"""Exact linear algebra over Z/p and the rationals.

Elements are plain Python values (ints in [0, p) for Z/p, Fraction for the
rationals); a Field object supplies the arithmetic.  Everything here is
exact -- no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Base class: exact field arithmetic on canonical representatives."""

    zero = None
    one = None

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

    def from_int(self, n: int):
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.spec()


class PrimeField(Field):
    """Z/p for p prime; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in Z/p")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def spec(self) -> str:
        return f"zp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("zp", self.p))


class RationalField(Field):
    """The rationals; elements are fractions.Fraction (always reduced)."""

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

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

    def from_int(self, n: int):
        return Fraction(n)

    def spec(self) -> str:
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")


QQ = RationalField()
GF2 = PrimeField(2)


def parse_field(spec: str) -> Field:
    """Parse a field selection string: "q" or "zp:<prime>"."""
    spec = spec.strip().lower()
    if spec == "q":
        return QQ
    if spec.startswith("zp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise FieldError(f"bad field spec {spec!r}")
        return PrimeField(p)
    raise FieldError(f"bad field spec {spec!r}")


class Matrix:
    """Dense matrix over an exact field.  Immutable once built.

    0 x n and n x 0 matrices are legal and stand for maps to/from the
    zero space.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int,
                 data: Sequence[Sequence]):
        self.field = field
        self.rows = rows
        self.cols = cols
        dat = tuple(tuple(r) for r in data)
        if len(dat) != rows or any(len(r) != cols for r in dat):
            raise ValueError("matrix shape mismatch")
        self.data = dat

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n,
                   [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_int_rows(cls, field: Field, rows: Sequence[Sequence[int]],
                      cols: Optional[int] = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols,
                   [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence],
                     rows: Optional[int] = None) -> "Matrix":
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls(field, rows, len(cols),
                   [[cols[j][i] for j in range(len(cols))]
                    for i in range(rows)])

    # -- basics -------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field == self.field
                and other.data == self.data
                and other.rows == self.rows and other.cols == self.cols)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __getitem__(self, rc):
        i, j = rc
        return self.data[i][j]

    def __repr__(self):
        return f"Matrix({self.field.spec()}, {self.rows}x{self.cols}, {self.data})"

    def row(self, i) -> tuple:
        return self.data[i]

    def column(self, j) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------

    def add(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      [[F.add(self.data[i][j], other.data[i][j])
                        for j in range(self.cols)] for i in range(self.rows)])

    def sub(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      [[F.sub(self.data[i][j], other.data[i][j])
                        for j in range(self.cols)] for i in range(self.rows)])

    def neg(self) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      [[F.neg(x) for x in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      [[F.mul(c, x) for x in r] for r in self.data])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        F = self.field
        z = F.zero
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = ri[k]
                    if a != z:
                        acc = F.add(acc, F.mul(a, other.data[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(F, self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        F = self.field
        z = F.zero
        out = []
        for i in range(self.rows):
            acc = z
            ri = self.data[i]
            for k in range(self.cols):
                if ri[k] != z:
                    acc = F.add(acc, F.mul(ri[k], vec[k]))
            out.append(acc)
        return tuple(out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [self.data[i] + other.data[i] for i in range(self.rows)])


def _col_order(cols: int, pivot: str) -> list:
    if pivot == "first":
        return list(range(cols))
    if pivot == "last":
        return list(range(cols - 1, -1, -1))
    raise ValueError(f"unknown pivot order {pivot!r}")


def _echelon(M: Matrix, pivot: str = "first"):
    """Row-reduce a copy of M.  Returns (rows, pivot_cols) with rows in
    reduced echelon form relative to the chosen column scan order."""
    F = M.field
    z = F.zero
    rows = [list(r) for r in M.data]
    nr = len(rows)
    piv_cols = []
    r = 0
    for c in _col_order(M.cols, pivot):
        if r >= nr:
            break
        sel = None
        for i in range(r, nr):
            if rows[i][c] != z:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != z:
                f = rows[i][c]
                rows[i] = [F.sub(rows[i][j], F.mul(f, rows[r][j]))
                           for j in range(M.cols)]
        piv_cols.append(c)
        r += 1
    return rows, piv_cols


def rank(M: Matrix) -> int:
    _, piv = _echelon(M)
    return len(piv)


def kernel_basis(M: Matrix, pivot: str = "first") -> Matrix:
    """Basis of the null space, as columns.  Column count = cols - rank."""
    F = M.field
    z, o = F.zero, F.one
    rows, piv_cols = _echelon(M, pivot)
    piv_set = set(piv_cols)
    free = [c for c in _col_order(M.cols, pivot) if c not in piv_set]
    basis = []
    for fc in free:
        v = [z] * M.cols
        v[fc] = o
        for r, pc in enumerate(piv_cols):
            v[pc] = F.neg(rows[r][fc])
        basis.append(tuple(v))
    return Matrix.from_columns(F, basis, rows=M.cols)


def solve(M: Matrix, b: Sequence, pivot: str = "first") -> Optional[tuple]:
    """One exact solution x of M x = b, or None if inconsistent.

    Free coordinates are set to zero, so the answer is the
    lexicographically-determined solution for the given pivot order.
    """
    if len(b) != M.rows:
        raise ValueError("rhs length mismatch")
    F = M.field
    z = F.zero
    aug = Matrix(F, M.rows, M.cols + 1,
                 [list(M.data[i]) + [b[i]] for i in range(M.rows)])
    # scan original columns in pivot order, never pivot on the rhs column
    rows = [list(r) for r in aug.data]
    piv_cols = []
    r = 0
    for c in _col_order(M.cols, pivot):
        if r >= M.rows:
            break
        sel = None
        for i in range(r, M.rows):
            if rows[i][c] != z:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c] != z:
                f = rows[i][c]
                rows[i] = [F.sub(rows[i][j], F.mul(f, rows[r][j]))
                           for j in range(M.cols + 1)]
        piv_cols.append(c)
        r += 1
    for i in range(r, M.rows):
        if rows[i][M.cols] != z:
            return None
    x = [z] * M.cols
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][M.cols]
    return tuple(x)


def solve_many(M: Matrix, B: Matrix, pivot: str = "first"
               ) -> Optional[Matrix]:
    """Exact solutions X with M X = B, column by column, from a single
    elimination; None if any column is inconsistent.  Free coordinates
    are zero, as in solve."""
    if B.rows != M.rows:
        raise ValueError("rhs row mismatch")
    F = M.field
    z = F.zero
    k = B.cols
    w = M.cols + k
    rows = [list(M.data[i]) + list(B.data[i]) for i in range(M.rows)]
    piv_cols = []
    r = 0
    for c in _col_order(M.cols, pivot):
        if r >= M.rows:
            break
        sel = None
        for i in range(r, M.rows):
            if rows[i][c] != z:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c] != z:
                f = rows[i][c]
                rows[i] = [F.sub(rows[i][j], F.mul(f, rows[r][j]))
                           for j in range(w)]
        piv_cols.append(c)
        r += 1
    for i in range(r, M.rows):
        if any(rows[i][M.cols + j] != z for j in range(k)):
            return None
    data = [[z] * k for _ in range(M.cols)]
    for i, c in enumerate(piv_cols):
        for j in range(k):
            data[c][j] = rows[i][M.cols + j]
    return Matrix(F, M.cols, k, data)


def column_space_pivots(M: Matrix, pivot: str = "first") -> list:
    """Indices of a maximal independent set of columns."""
    _, piv = _echelon(M, pivot)
    return sorted(piv) if pivot == "first" else sorted(piv, reverse=True)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ValueError("inverse of non-square matrix")
    n = M.rows
    F = M.field
    aug = M.hstack(Matrix.identity(F, n))
    rows, piv = _echelon(aug, "first")
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(F, n, n, [r[n:] for r in rows])


def complete_to_basis(vectors: Sequence[Sequence], field: Field, dim: int,
                      pivot: str = "first") -> Matrix:
    """Invertible matrix whose first columns are the given (independent)
    vectors, completed with standard basis vectors chosen by pivot order."""
    cols = [tuple(v) for v in vectors]
    F = field
    z, o = F.zero, F.one
    order = _col_order(dim, pivot)
    for e in order:
        if len(cols) == dim:
            break
        cand = tuple(o if i == e else z for i in range(dim))
        trial = Matrix.from_columns(F, cols + [cand], rows=dim)
        if rank(trial) == len(cols) + 1:
            cols.append(cand)
    M = Matrix.from_columns(F, cols, rows=dim)
    if rank(M) != dim:
        raise ValueError("given vectors are not linearly independent")
    return M


# -- polynomials ------------------------------------------------------
# A polynomial is a tuple of field elements, lowest degree first, with a
# nonzero leading coefficient (or the empty tuple for 0).


def poly_trim(field: Field, coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == field.zero:
        c.pop()
    return tuple(c)


def poly_add(field: Field, a, b) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return poly_trim(field, out)


def poly_mul(field: Field, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == field.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return poly_trim(field, out)


def poly_scale(field: Field, c, a) -> tuple:
    return poly_trim(field, [field.mul(c, x) for x in a])


def poly_pow(field: Field, a, e: int) -> tuple:
    out = (field.one,)
    for _ in range(e):
        out = poly_mul(field, out, a)
    return out


def poly_eval_matrix(field: Field, coeffs, M: Matrix) -> Matrix:
    """p(M) by Horner's rule."""
    n = M.rows
    out = Matrix.zeros(field, n, n)
    for c in reversed(coeffs):
        out = out.mul(M)
        if c != field.zero:
            out = out.add(Matrix.identity(field, n).scale(c))
    return out


def poly_str(field: Field, coeffs) -> str:
    """Readable form like "x^2 - x + 3", highest degree first."""
    if not coeffs:
        return "0"
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == field.zero:
            continue
        if isinstance(field, PrimeField):
            neg = False
            mag = c
        else:
            neg = c < 0
            mag = -c if neg else c
        if d == 0:
            term = f"{mag}"
        else:
            xs = "x" if d == 1 else f"x^{d}"
            term = xs if mag == field.one else f"{mag}*{xs}"
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts)


def companion_matrix(field: Field, coeffs) -> Matrix:
    """Companion matrix of a monic polynomial (degree >= 1)."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != field.one:
        raise ValueError("companion matrix needs a monic polynomial")
    z = field.zero
    M = [[z] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = field.one
    for i in range(n):
        M[i][n - 1] = field.neg(coeffs[i])
    return Matrix(field, n, n, M)


def char_poly(M: Matrix) -> tuple:
    """Characteristic polynomial det(xI - M), monic, via the Hessenberg
    reduction and the leading-principal-minor recurrence."""
    if not M.is_square():
        raise ValueError("char_poly of non-square matrix")
    n = M.rows
    F = M.field
    if n == 0:
        return (F.one,)
    z = F.zero
    H = [list(r) for r in M.data]
    for c in range(n - 2):
        sel = None
        for i in range(c + 1, n):
            if H[i][c] != z:
                sel = i
                break
        if sel is None:
            continue
        if sel != c + 1:
            H[c + 1], H[sel] = H[sel], H[c + 1]
            for i in range(n):
                H[i][c + 1], H[i][sel] = H[i][sel], H[i][c + 1]
        for i in range(c + 2, n):
            if H[i][c] != z:
                f = F.div(H[i][c], H[c + 1][c])
                for j in range(n):
                    H[i][j] = F.sub(H[i][j], F.mul(f, H[c + 1][j]))
                for k in range(n):
                    H[k][c + 1] = F.add(H[k][c + 1], F.mul(f, H[k][i]))
    # p_r = (x - H[r-1][r-1]) p_{r-1} - sum over trailing subdiagonal runs
    x_poly = (z, F.one)
    p = [(F.one,)]
    for r in range(1, n + 1):
        term = poly_mul(F, poly_add(F, x_poly, (F.neg(H[r - 1][r - 1]),)),
                        p[r - 1])
        prod = F.one
        for m in range(1, r):
            prod = F.mul(prod, H[r - m][r - m - 1])
            if prod == z:
                break
            coef = F.mul(H[r - 1 - m][r - 1], prod)
            if coef != z:
                term = poly_add(F, term,
                                poly_scale(F, F.neg(coef), p[r - 1 - m]))
        p.append(term)
    return p[n]


def _factor_irreducible(field: Field, coeffs) -> list:
    """Monic irreducible factorization via sympy.  Returns a list of
    (factor_coeffs, multiplicity) with factors monic, low degree first."""
    import sympy

    x = sympy.symbols("x")
    if isinstance(field, PrimeField):
        expr = [int(c) for c in reversed(coeffs)]
        fl = sympy.Poly(expr, x, modulus=field.p).factor_list()
        out = []
        for poly, e in fl[1]:
            cs = [int(c) % field.p for c in reversed(poly.all_coeffs())]
            lead = cs[-1]
            if lead != 1:
                inv = field.inv(lead)
                cs = [field.mul(inv, c) for c in cs]
            out.append((tuple(cs), int(e)))
    else:
        expr = [sympy.Rational(c.numerator, c.denominator)
                for c in reversed(coeffs)]
        fl = sympy.Poly(expr, x, domain="QQ").factor_list()
        out = []
        for poly, e in fl[1]:
            cs = [Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())]
            lead = cs[-1]
            if lead != 1:
                cs = [c / lead for c in cs]
            out.append((tuple(cs), int(e)))
    out.sort(key=lambda fe: (len(fe[0]), [str(c) for c in fe[0]]))
    return out


@dataclass(frozen=True)
class JordanBlock:
    """A generalized Jordan block: monic irreducible factor + multiplicity.

    A degree-1 factor (x - lam) with lam != 0 is the classical Jordan
    cell (lam, k); higher-degree factors carry split=False.
    """

    factor: tuple
    k: int

    @property
    def degree(self) -> int:
        return len(self.factor) - 1

    @property
    def split(self) -> bool:
        return self.degree == 1

    def eigenvalue(self):
        """lam for a split block (x - lam); None otherwise."""
        if not self.split:
            return None
        return self.factor[0] if isinstance(self.factor[0], int) else -self.factor[0]


def _block_eigenvalue(field: Field, factor: tuple):
    # factor = (c0, 1) represents x + c0, eigenvalue -c0
    return field.neg(factor[0])


def jordan_decomposition(M: Matrix) -> dict:
    """Generalized Jordan decomposition of an invertible square matrix.

    Returns a multiset {JordanBlock: count}.  Blocks reconstruct M up to
    similarity; sum of k * deg(factor) over the multiset equals the size.
    """
    if not M.is_square():
        raise ValueError("jordan_decomposition needs a square matrix")
    n = M.rows
    F = M.field
    if n == 0:
        return {}
    if rank(M) < n:
        raise ValueError("jordan_decomposition needs an invertible matrix")
    cp = char_poly(M)
    blocks: dict = {}
    for factor, mult in _factor_irreducible(F, cp):
        dg = len(factor) - 1
        A = poly_eval_matrix(F, factor, M)
        ranks = [n]
        P = Matrix.identity(F, n)
        for _ in range(mult):
            P = P.mul(A)
            ranks.append(rank(P))
            if ranks[-1] == ranks[-2]:
                break
        # blocks of size >= j for this factor
        ge = []
        for j in range(1, len(ranks)):
            b = (ranks[j - 1] - ranks[j]) // dg
            if b <= 0:
                break
            ge.append(b)
        for j in range(1, len(ge) + 1):
            nxt = ge[j] if j < len(ge) else 0
            cnt = ge[j - 1] - nxt
            if cnt > 0:
                blocks[JordanBlock(factor, j)] = \
                    blocks.get(JordanBlock(factor, j), 0) + cnt
    total = sum(b.k * b.degree * c for b, c in blocks.items())
    assert total == n, "jordan block sizes do not add up"
    return blocks


def jordan_eigen_pairs(field: Field, blocks: dict) -> list:
    """Sorted [(eigenvalue-or-factor-string, k, count)] for reporting."""
    out = []
    for b, c in sorted(blocks.items(),
                       key=lambda bc: (bc[0].degree, str(bc[0].factor), bc[0].k)):
        if b.split:
            out.append((_block_eigenvalue(field, b.factor), b.k, c))
        else:
            out.append((poly_str(field, b.factor), b.k, c))
    return out
