"""Exact matrices over GF(p) and the rationals.

Entries are plain ints reduced mod p, or ``Fraction``s; there is no floating
point anywhere.  Row reduction always pivots on the first nonzero entry, so
every basis this module produces is reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


class LinAlgError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """GF(p) for prime p, or the rationals when p is None."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise LinAlgError(f"modulus {p} is not prime")
        self.p = p

    @property
    def is_prime_field(self):
        return self.p is not None

    def coerce(self, x):
        if self.p is None:
            return Fraction(x)
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / Fraction(a)
        return pow(a, self.p - 2, self.p)

    def elements(self):
        """All field elements; prime fields only."""
        if self.p is None:
            raise LinAlgError("cannot enumerate the rationals")
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


GF2 = Field(2)
QQ = Field(None)


class Matrix:
    """Immutable exact matrix, row major."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise LinAlgError("entry grid does not match declared shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(field.coerce(x) for x in r) for r in entries)

    @classmethod
    def from_rows(cls, field, entries):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(field, rows, cols, entries)

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, field, values):
        return cls(field, len(values), 1, tuple((v,) for v in values))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {list(map(list, self.entries))})"

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)

    def __add__(self, other):
        self._check_same_shape(other)
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same_shape(other)
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(sub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(neg(a) for a in r) for r in self.entries))

    def scale(self, c):
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(mul(c, a) for a in r) for r in self.entries))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.field.p
        bt = tuple(zip(*other.entries)) if other.entries and other.cols else ((),) * other.cols
        out = []
        for r in self.entries:
            row = []
            for c in bt:
                s = sum(a * b for a, b in zip(r, c))
                row.append(s % p if p is not None else s)
            out.append(tuple(row))
        if not out:
            out = []
        return Matrix(self.field, self.rows, other.cols, tuple(out) if out else ())

    def transpose(self):
        if self.rows == 0:
            return Matrix(self.field, self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)))

    def power(self, k):
        result = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def submatrix_cols(self, idxs):
        return Matrix(self.field, self.rows, len(idxs),
                      tuple(tuple(r[j] for j in idxs) for r in self.entries))

    def to_lists(self):
        return [list(r) for r in self.entries]

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols or self.field != other.field:
            raise LinAlgError("shape or field mismatch")

    @classmethod
    def hstack(cls, field, mats, rows=None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, rows or 0, 0)
        r = mats[0].rows
        entries = tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(r))
        return cls(field, r, sum(m.cols for m in mats), entries)

    @classmethod
    def vstack(cls, field, mats, cols=None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, 0, cols or 0)
        c = mats[0].cols
        entries = tuple(row for m in mats for row in m.entries)
        return cls(field, sum(m.rows for m in mats), c, entries)

    @classmethod
    def block(cls, field, grid):
        """Assemble from a grid of blocks with consistent row/col sizes."""
        rows = [cls.hstack(field, row) for row in grid]
        return cls.vstack(field, rows)

    @classmethod
    def block_diag(cls, field, mats):
        mats = list(mats)
        n = len(mats)
        grid = [[mats[i] if i == j else cls.zeros(field, mats[i].rows, mats[j].cols)
                 for j in range(n)] for i in range(n)]
        if not grid:
            return cls.zeros(field, 0, 0)
        return cls.block(field, grid)

    def vec(self):
        """Row-major flattening, as a tuple."""
        return tuple(x for row in self.entries for x in row)


def _rref(field, rows):
    """Reduced row echelon form, in place on a list of lists.

    The pivot is the first nonzero entry in each column, scanning top down;
    returns the pivot column list.
    """
    p = field.p
    zero = field.zero
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one:
            if p is not None:
                rows[r] = [(x * inv) % p for x in rows[r]]
            else:
                rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f != zero:
                if p is not None:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
                else:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m):
    rows = [list(r) for r in m.entries]
    pivots = _rref(m.field, rows)
    return Matrix(m.field, m.rows, m.cols, rows), pivots


def rank(m):
    rows = [list(r) for r in m.entries]
    return len(_rref(m.field, rows))


def kernel_basis(m):
    """Matrix whose columns span ker(m); column count = cols - rank."""
    field = m.field
    rows = [list(r) for r in m.entries]
    pivots = _rref(field, rows)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rows[r][f])
        cols.append(v)
    return Matrix(field, m.cols, len(cols), tuple(zip(*cols)) if cols else ((),) * m.cols)


def solve(a, b):
    """Particular X with a @ X = b, free variables set to 0; None if inconsistent."""
    if a.rows != b.rows:
        raise LinAlgError("solve: row mismatch")
    field = a.field
    aug_rows = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    if not aug_rows:
        return Matrix.zeros(field, a.cols, b.cols)
    pivots = _rref(field, aug_rows)
    if any(pc >= a.cols for pc in pivots):
        return None
    x = [[field.zero] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = aug_rows[r][a.cols + j]
    return Matrix(field, a.cols, b.cols, tuple(tuple(r) for r in x))


def solve_affine(a, b):
    """(particular, kernel basis) for a @ X = b, or None."""
    x = solve(a, b)
    if x is None:
        return None
    return x, kernel_basis(a)


def solve_right(a, b):
    """X with X @ a = b, free variables 0; None if inconsistent."""
    xt = solve(a.transpose(), b.transpose())
    return None if xt is None else xt.transpose()


def column_space_basis(m):
    """The pivot columns of m: a deterministic basis of im(m)."""
    _, pivots = rref(m)
    return m.submatrix_cols(pivots)


def extend_to_basis(c):
    """Indices of standard basis vectors completing the independent columns of c.

    Greedy over e_0, e_1, ...; returns (indices, full basis matrix [c | e_idxs]).
    """
    field = c.field
    n = c.rows
    rows = [list(col) for col in zip(*c.entries)] if c.cols else []
    base_rank = len(rows)
    if base_rank:
        check = [r[:] for r in rows]
        base_rank = len(_rref(field, check))
        if base_rank != c.cols:
            raise LinAlgError("extend_to_basis: columns are dependent")
    added = []
    cur = [r[:] for r in rows]
    cur_rank = base_rank
    for i in range(n):
        if cur_rank == n:
            break
        e = [field.zero] * n
        e[i] = field.one
        trial = [r[:] for r in cur] + [e]
        r2 = len(_rref(field, trial))
        if r2 > cur_rank:
            cur.append(e)
            cur_rank = r2
            added.append(i)
    ecols = Matrix(field, n, len(added),
                   tuple(tuple(field.one if i == a else field.zero for a in added) for i in range(n)))
    return added, Matrix.hstack(field, [c, ecols], rows=n)


def inverse(m):
    if m.rows != m.cols:
        return None
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or not (m @ x == Matrix.identity(m.field, m.rows)):
        return None
    return x


def all_matrices(field, rows, cols):
    """Every rows x cols matrix over a prime field, in lexicographic order."""
    elems = list(field.elements())
    for flat in product(elems, repeat=rows * cols):
        yield Matrix(field, rows, cols,
                     tuple(flat[i * cols:(i + 1) * cols] for i in range(rows)))


class BlockSystem:
    """Linear equations in several matrix-shaped unknowns.

    Each equation is sum_k  L_k @ X_{name_k} @ R_k = rhs; L/R may be None
    for identity.  Unknowns are vectorised row-major in insertion order.
    """

    def __init__(self, field):
        self.field = field
        self._vars = {}
        self._order = []
        self._rows = []
        self._rhs = []

    def add_var(self, name, rows, cols):
        if name in self._vars:
            raise LinAlgError(f"duplicate unknown {name!r}")
        self._vars[name] = (rows, cols)
        self._order.append(name)
        return name

    def total_unknowns(self):
        return sum(r * c for r, c in self._vars.values())

    def _offset(self, name):
        off = 0
        for v in self._order:
            if v == name:
                return off
            r, c = self._vars[v]
            off += r * c
        raise LinAlgError(f"unknown variable {name!r}")

    def add_eq(self, terms, rhs=None, shape=None):
        field = self.field
        terms = list(terms)
        if rhs is not None:
            out_r, out_c = rhs.rows, rhs.cols
        elif shape is not None:
            out_r, out_c = shape
        else:
            name, left, right = terms[0]
            vr, vc = self._vars[name]
            out_r = left.rows if left is not None else vr
            out_c = right.cols if right is not None else vc
        zero = field.zero
        mul, add = field.mul, field.add
        rows = [{} for _ in range(out_r * out_c)]
        for name, left, right in terms:
            vr, vc = self._vars[name]
            off = self._offset(name)
            lm = left.entries if left is not None else None
            rm = right.entries if right is not None else None
            for a in range(out_r):
                for b in range(out_c):
                    row = rows[a * out_c + b]
                    for i in range(vr):
                        li = lm[a][i] if lm is not None else (field.one if a == i else zero)
                        if li == zero:
                            continue
                        base = off + i * vc
                        for j in range(vc):
                            rj = rm[j][b] if rm is not None else (field.one if j == b else zero)
                            if rj == zero:
                                continue
                            col = base + j
                            row[col] = add(row.get(col, zero), mul(li, rj))
        self._rows.extend(rows)
        if rhs is None:
            self._rhs.extend([zero] * (out_r * out_c))
        else:
            self._rhs.extend(rhs.vec())

    def _matrix(self):
        n = self.total_unknowns()
        zero = self.field.zero
        dense = []
        for row in self._rows:
            full = [zero] * n
            for col, val in row.items():
                full[col] = val
            dense.append(tuple(full))
        return Matrix(self.field, len(dense), n, tuple(dense))

    def _unpack(self, flat):
        out = {}
        for name in self._order:
            r, c = self._vars[name]
            off = self._offset(name)
            out[name] = Matrix(self.field, r, c,
                               tuple(tuple(flat[off + i * c + j] for j in range(c)) for i in range(r)))
        return out

    def solve(self):
        n = self.total_unknowns()
        a = self._matrix()
        b = Matrix(self.field, len(self._rhs), 1, tuple((x,) for x in self._rhs))
        x = solve(a, b)
        if x is None:
            return None
        return self._unpack([x.entries[i][0] for i in range(n)])

    def kernel(self):
        n = self.total_unknowns()
        k = kernel_basis(self._matrix())
        return [self._unpack([k.entries[i][j] for i in range(n)]) for j in range(k.cols)]
