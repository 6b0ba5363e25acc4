"""The coefficient ring k[x]/(x^n) and its finite-dimensional modules.

A module is a k-vector space together with the nilpotent matrix by which x
acts; n = 1 recovers plain vector spaces, n >= 2 gives a non-semisimple,
self-injective base with genuinely infinite projective resolutions.
"""

from __future__ import annotations

from . import linalg
from .linalg import BlockSystem, LinAlgError, Matrix


class AlgebraError(ValueError):
    pass


class BaseAlgebra:
    """k[x]/(x^n) over an exact field."""

    __slots__ = ("field", "n")

    def __init__(self, field, n):
        if n < 1:
            raise AlgebraError("nilpotency index must be >= 1")
        self.field = field
        self.n = n

    def __eq__(self, other):
        return isinstance(other, BaseAlgebra) and self.field == other.field and self.n == other.n

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"BaseAlgebra({self.field}, n={self.n})"


class AModule:
    """Finite-dimensional module: (dimension, action of x)."""

    __slots__ = ("algebra", "dim", "op")

    def __init__(self, algebra, dim, op):
        if op.rows != dim or op.cols != dim or op.field != algebra.field:
            raise AlgebraError("operator shape does not match module dimension")
        if not op.power(algebra.n).is_zero():
            raise AlgebraError(f"operator is not nilpotent of index <= {algebra.n}")
        self.algebra = algebra
        self.dim = dim
        self.op = op

    def __eq__(self, other):
        return (isinstance(other, AModule) and self.algebra == other.algebra
                and self.dim == other.dim and self.op == other.op)

    def __hash__(self):
        return hash((self.algebra, self.dim, self.op))

    def __repr__(self):
        return f"AModule(dim={self.dim})"


class AModuleMorphism:
    """A-linear map, stored as the matrix on column coordinates."""

    __slots__ = ("source", "target", "mat")

    def __init__(self, source, target, mat, _checked=False):
        if source.algebra != target.algebra:
            raise AlgebraError("morphism endpoints live over different base algebras")
        if mat.rows != target.dim or mat.cols != source.dim:
            raise AlgebraError("morphism matrix has wrong shape")
        if not _checked and not (mat @ source.op == target.op @ mat):
            raise AlgebraError("matrix does not commute with the x-action")
        self.source = source
        self.target = target
        self.mat = mat

    def __matmul__(self, other):
        if other.target is not self.source and other.target != self.source:
            raise AlgebraError("composition endpoint mismatch")
        return AModuleMorphism(other.source, self.target, self.mat @ other.mat, _checked=True)

    def __add__(self, other):
        return AModuleMorphism(self.source, self.target, self.mat + other.mat, _checked=True)

    def __sub__(self, other):
        return AModuleMorphism(self.source, self.target, self.mat - other.mat, _checked=True)

    def __neg__(self):
        return AModuleMorphism(self.source, self.target, -self.mat, _checked=True)

    def scale(self, c):
        return AModuleMorphism(self.source, self.target, self.mat.scale(c), _checked=True)

    def is_zero(self):
        return self.mat.is_zero()

    def __eq__(self, other):
        return (isinstance(other, AModuleMorphism) and self.source == other.source
                and self.target == other.target and self.mat == other.mat)

    def __hash__(self):
        return hash((self.source, self.target, self.mat))

    def __repr__(self):
        return f"AModuleMorphism({self.source.dim}->{self.target.dim})"


class ModuleCategory:
    """mod-k[x]/(x^n) with the operations the complex machinery needs.

    Everything is pure and value-cached; modules and morphisms are immutable,
    so sharing across computations is safe.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.field = algebra.field
        self._hom_cache = {}
        self._cover_cache = {}

    # -- objects ------------------------------------------------------------

    def zero(self):
        return AModule(self.algebra, 0, Matrix.zeros(self.field, 0, 0))

    def module(self, op_rows):
        m = Matrix.from_rows(self.field, op_rows) if op_rows else Matrix.zeros(self.field, 0, 0)
        return AModule(self.algebra, m.rows, m)

    def vector_module(self, d):
        """k^d with zero action (the semisimple module)."""
        return AModule(self.algebra, d, Matrix.zeros(self.field, d, d))

    def free(self, r):
        """A^r; x acts by one nilpotent Jordan block of size n per copy."""
        n = self.algebra.n
        dim = r * n
        z, o = self.field.zero, self.field.one
        entries = [[z] * dim for _ in range(dim)]
        for j in range(r):
            for i in range(n - 1):
                entries[j * n + i + 1][j * n + i] = o
        return AModule(self.algebra, dim, Matrix(self.field, dim, dim, entries))

    def dim(self, m):
        return m.dim

    def is_zero_obj(self, m):
        return m.dim == 0

    def equal_objects(self, a, b):
        return a == b

    # -- morphisms ----------------------------------------------------------

    def morphism(self, source, target, rows):
        if target.dim == 0 or source.dim == 0 or not rows:
            mat = Matrix.zeros(self.field, target.dim, source.dim)
        else:
            mat = Matrix.from_rows(self.field, rows)
        return AModuleMorphism(source, target, mat)

    def identity(self, m):
        return AModuleMorphism(m, m, Matrix.identity(self.field, m.dim), _checked=True)

    def zero_map(self, source, target):
        return AModuleMorphism(source, target, Matrix.zeros(self.field, target.dim, source.dim),
                               _checked=True)

    def mor_vec(self, f):
        return f.mat.vec()

    def mor_from_vec(self, source, target, flat):
        c = source.dim
        mat = Matrix(self.field, target.dim, c,
                     tuple(tuple(flat[i * c + j] for j in range(c)) for i in range(target.dim)))
        return AModuleMorphism(source, target, mat, _checked=True)

    def hom_basis(self, m1, m2):
        """Basis of Hom_A(m1, m2): solutions of F N1 = N2 F."""
        key = (m1, m2)
        cached = self._hom_cache.get(key)
        if cached is not None:
            return cached
        if m1.dim == 0 or m2.dim == 0:
            basis = []
        else:
            sys = BlockSystem(self.field)
            sys.add_var("F", m2.dim, m1.dim)
            sys.add_eq([("F", None, m1.op), ("F", -m2.op, None)])
            basis = [AModuleMorphism(m1, m2, sol["F"], _checked=True) for sol in sys.kernel()]
        self._hom_cache[key] = basis
        return basis

    # -- kernels, cokernels, images, sums ------------------------------------

    def kernel(self, f):
        k = linalg.kernel_basis(f.mat)
        if k.cols == 0:
            kmod = self.zero()
            return kmod, self.zero_map(kmod, f.source)
        op = linalg.solve(k, f.source.op @ k)
        kmod = AModule(self.algebra, k.cols, op)
        return kmod, AModuleMorphism(kmod, f.source, k, _checked=True)

    def cokernel(self, f):
        c = linalg.column_space_basis(f.mat)
        added, full = linalg.extend_to_basis(c)
        r = c.cols
        d = f.target.dim
        if d == r:
            cmod = self.zero()
            return cmod, self.zero_map(f.target, cmod)
        inv = linalg.inverse(full)
        proj = Matrix(self.field, d - r, d, inv.entries[r:])
        section = full.submatrix_cols(range(r, d))
        op = proj @ f.target.op @ section
        cmod = AModule(self.algebra, d - r, op)
        return cmod, AModuleMorphism(f.target, cmod, proj, _checked=True)

    def image(self, f):
        c = linalg.column_space_basis(f.mat)
        if c.cols == 0:
            imod = self.zero()
            return imod, self.zero_map(imod, f.target)
        op = linalg.solve(c, f.target.op @ c)
        imod = AModule(self.algebra, c.cols, op)
        return imod, AModuleMorphism(imod, f.target, c, _checked=True)

    def direct_sum(self, mods):
        mods = list(mods)
        total = AModule(self.algebra, sum(m.dim for m in mods),
                        Matrix.block_diag(self.field, [m.op for m in mods]))
        injs, projs = [], []
        z, o = self.field.zero, self.field.one
        off = 0
        for m in mods:
            inj = Matrix(self.field, total.dim, m.dim,
                         tuple(tuple(o if i == off + j else z for j in range(m.dim))
                               for i in range(total.dim)))
            injs.append(AModuleMorphism(m, total, inj, _checked=True))
            projs.append(AModuleMorphism(total, m, inj.transpose(), _checked=True))
            off += m.dim
        return total, injs, projs

    def factor_through_mono(self, f, incl):
        """Unique g with incl @ g = f (assumes im f lies in im incl)."""
        g = linalg.solve(incl.mat, f.mat)
        if g is None:
            raise AlgebraError("map does not factor through the given mono")
        return AModuleMorphism(f.source, incl.source, g, _checked=True)

    def factor_through_epi(self, f, proj):
        """Unique g with g @ proj = f (assumes f kills ker proj)."""
        g = linalg.solve_right(proj.mat, f.mat)
        if g is None:
            raise AlgebraError("map does not factor through the given epi")
        return AModuleMorphism(proj.target, f.target, g, _checked=True)

    # -- predicates ----------------------------------------------------------

    def is_epi(self, f):
        return linalg.rank(f.mat) == f.target.dim

    def is_mono(self, f):
        return linalg.rank(f.mat) == f.source.dim

    def is_iso(self, f):
        return f.source.dim == f.target.dim and linalg.rank(f.mat) == f.source.dim

    def is_projective(self, m):
        """Free over A: rank(N^i) = dim (n-i)/n for every i."""
        n = self.algebra.n
        if n == 1:
            return True
        if m.dim % n:
            return False
        r = m.dim // n
        power = m.op
        for i in range(1, n):
            if linalg.rank(power) != r * (n - i):
                return False
            power = power @ m.op
        return True

    def is_injective(self, m):
        # k[x]/(x^n) is self-injective, so the two classes coincide.
        return self.is_projective(m)

    def is_split_epi(self, f):
        if f.target.dim == 0:
            return True
        sys = BlockSystem(self.field)
        sys.add_var("S", f.source.dim, f.target.dim)
        sys.add_eq([("S", None, f.target.op), ("S", -f.source.op, None)])
        sys.add_eq([("S", f.mat, None)], rhs=Matrix.identity(self.field, f.target.dim))
        return sys.solve() is not None

    def is_split_mono(self, f):
        if f.source.dim == 0:
            return True
        sys = BlockSystem(self.field)
        sys.add_var("R", f.source.dim, f.target.dim)
        sys.add_eq([("R", None, f.target.op), ("R", -f.source.op, None)])
        sys.add_eq([("R", None, f.mat)], rhs=Matrix.identity(self.field, f.source.dim))
        return sys.solve() is not None

    def modules_isomorphic(self, m1, m2):
        """Nilpotent operators are classified by the ranks of their powers."""
        if m1.dim != m2.dim:
            return False
        p1, p2 = m1.op, m2.op
        for _ in range(1, self.algebra.n):
            if linalg.rank(p1) != linalg.rank(p2):
                return False
            p1, p2 = p1 @ m1.op, p2 @ m2.op
        return True

    # -- projective covers ----------------------------------------------------

    def projective_epi(self, m, redundant=False):
        """Epi from a free module A^r onto m, r = dim(m / x m).

        With redundant=True one extra free summand mapping by zero is added;
        this gives a second, non-minimal resolution route for oracle checks.
        """
        key = (m, redundant)
        cached = self._cover_cache.get(key)
        if cached is not None:
            return cached
        n = self.algebra.n
        c = linalg.column_space_basis(m.op)
        added, _ = linalg.extend_to_basis(c)
        r = len(added)
        r_total = r + (1 if redundant else 0)
        p = self.free(r_total)
        cols = []
        for j in added:
            e = Matrix(self.field, m.dim, 1,
                       tuple((self.field.one if i == j else self.field.zero,) for i in range(m.dim)))
            v = e
            for _ in range(n):
                cols.append(v)
                v = m.op @ v
        if redundant:
            cols.extend(Matrix.zeros(self.field, m.dim, 1) for _ in range(n))
        mat = Matrix.hstack(self.field, cols, rows=m.dim) if cols else Matrix.zeros(self.field, m.dim, 0)
        rho = AModuleMorphism(p, m, mat)
        if linalg.rank(mat) != m.dim:
            raise AlgebraError("projective cover failed to surject")
        result = (p, rho)
        self._cover_cache[key] = result
        return result
