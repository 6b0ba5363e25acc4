"""Projective resolutions of modules, representations and bounded complexes;
Ext and derived-Hom dimensions computed from them.

Resolutions over k[x]/(x^n) with n >= 2 never terminate, so every resolution
carries the cut degree it was truncated at and a completeness flag; Ext and
derived-Hom computations refuse to answer outside the certified range instead
of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import complexes as cx
from .complexes import ChainMap, Complex
from .linalg import Matrix
from . import linalg


class WindowError(RuntimeError):
    """The requested answer is not certified by the computed window."""


@dataclass(frozen=True)
class AugmentedResolution:
    """Termwise-projective complex in degrees <= 0 (or <= hi for complexes)
    together with its augmentation map; exact above the cut."""
    complex: Complex
    target: object
    augmentation: object      # morphism P^0 -> target, or a ChainMap for complexes
    length: int               # number of steps actually built
    cut: int                  # lowest degree present
    complete: bool            # True when the resolution terminated by itself


def projective_resolution(ctx, x, length, redundant=False):
    """Exact sequence P^{-L} -> ... -> P^0 -> x -> 0 with projective terms.

    With redundant=True every cover carries an extra free summand mapping by
    zero; the resulting non-minimal resolution is the oracle route for the
    resolution-independence checks.
    """
    if length < 0:
        raise ValueError("resolution length must be >= 0")
    if not redundant and ctx.is_projective(x):
        c = Complex.stalk(ctx, x, 0)
        return AugmentedResolution(c, x, ctx.identity(x), 0, 0, True)
    terms = []
    diffs = []
    p0, rho = ctx.projective_epi(x, redundant)
    terms.append(p0)
    k, incl = ctx.kernel(rho)
    complete = False
    steps = 0
    for j in range(1, length + 1):
        if ctx.is_zero_obj(k):
            complete = True
            break
        pj, cover = ctx.projective_epi(k, redundant)
        diffs.append(incl @ cover)
        terms.append(pj)
        k, incl = ctx.kernel(cover)
        steps = j
    else:
        complete = ctx.is_zero_obj(k)
    terms.reverse()
    diffs.reverse()
    c = Complex(ctx, -steps, 0, terms, diffs)
    return AugmentedResolution(c, x, rho, steps, -steps, complete)


def resolve_complex(ctx, x, length):
    """Epi quasi-isomorphism rho: P -> x from a bounded-above termwise
    projective complex; ker(rho) is exact in every degree above the cut.

    Degrees are built top down.  At each degree the new term is a cover of
    the underlying term plus a cover of the cycles of the kernel one degree
    up, which is what forces the kernel exact.
    """
    x = x.trimmed()
    if x.is_empty():
        c = Complex.zero(ctx)
        return AugmentedResolution(c, x, cx.zero_chain_map(c, x), 0, 0, True)
    if cx.termwise_in(x, ctx.is_projective):
        return AugmentedResolution(x, x, cx.identity_chain_map(x), 0, x.lo, True)

    cut = x.lo - length
    p_terms = {}
    p_diffs = {}
    rho = {}
    kernels = {}

    def kernel_at(i):
        if i not in kernels:
            if i not in p_terms:
                z = ctx.zero()
                kernels[i] = (z, ctx.zero_map(z, ctx.zero()))
            else:
                kernels[i] = ctx.kernel(rho[i])
        return kernels[i]

    def cycles_of_kernel(i):
        """Z^i(ker rho) with its inclusion into P^i."""
        if i not in p_terms:
            z = ctx.zero()
            return z, ctx.zero_map(z, ctx.zero())
        k_i, incl_i = kernel_at(i)
        _, incl_next = kernel_at(i + 1)
        d_up = p_diffs.get(i)
        if d_up is None:
            d_up = ctx.zero_map(p_terms[i], p_terms.get(i + 1, ctx.zero()))
        dk = ctx.factor_through_mono(d_up @ incl_i, incl_next)
        z, zincl = ctx.kernel(dk)
        return z, incl_i @ zincl

    complete = False
    low = cut
    for i in range(x.hi, cut - 1, -1):
        a_obj, a_map = ctx.projective_epi(x.term(i))
        zk, zk_incl = cycles_of_kernel(i + 1)
        b_obj, b_map = ctx.projective_epi(zk)
        if ctx.is_zero_obj(a_obj) and ctx.is_zero_obj(b_obj):
            if all(ctx.is_zero_obj(x.term(j)) for j in range(x.lo, i + 1)):
                complete = True
                low = i + 1
                break
            # nothing to place at this degree, but lower ones still matter
            p_terms[i] = ctx.direct_sum([a_obj, b_obj])[0]
            rho[i] = ctx.zero_map(p_terms[i], x.term(i))
            p_diffs[i] = ctx.zero_map(p_terms[i], p_terms.get(i + 1, ctx.zero()))
            continue
        total, injs, projs = ctx.direct_sum([a_obj, b_obj])
        # lift of d_X o a through rho^{i+1}, confined to ker d_P^{i+1}
        up = p_terms.get(i + 1)
        if up is None:
            lift = ctx.zero_map(a_obj, ctx.zero())
        else:
            lift = _lift_into_cycles(ctx, a_obj, x.diff(i) @ a_map, rho[i + 1],
                                     p_diffs.get(i + 1), p_terms.get(i + 2))
        beta = zk_incl @ b_map
        p_terms[i] = total
        rho[i] = a_map @ projs[0]
        if up is not None:
            p_diffs[i] = (lift @ projs[0]) + (beta @ projs[1])
        else:
            p_diffs[i] = ctx.zero_map(total, ctx.zero())
    else:
        low = cut

    degrees = sorted(d for d in p_terms)
    if not degrees:
        c = Complex.zero(ctx)
        return AugmentedResolution(c, x, cx.zero_chain_map(c, x), length, cut, True)
    lo, hi = degrees[0], degrees[-1]
    terms = [p_terms[i] for i in range(lo, hi + 1)]
    diffs = [p_diffs[i] for i in range(lo, hi)]
    p = Complex(ctx, lo, hi, terms, diffs)
    aug = ChainMap(p, x, {i: rho[i] for i in rho})
    return AugmentedResolution(p, x, aug, length, low, complete)


def _lift_into_cycles(ctx, src, f, rho_up, d_up, two_up):
    """Morphism l: src -> P^{i+1} with rho_up o l = f and d_up o l = 0."""
    p_up = rho_up.source
    basis = ctx.hom_basis(src, p_up)
    if not basis:
        if f.is_zero():
            return ctx.zero_map(src, p_up)
        raise WindowError("no lift available; enlarge the resolution window")
    cols = []
    for b in basis:
        col = list(ctx.mor_vec(rho_up @ b))
        if d_up is not None and two_up is not None:
            col.extend(ctx.mor_vec(d_up @ b))
        cols.append(col)
    rhs = list(ctx.mor_vec(f))
    if d_up is not None and two_up is not None:
        rhs.extend(ctx.mor_vec(ctx.zero_map(src, two_up)))
    a = Matrix(ctx.field, len(cols[0]), len(cols), tuple(zip(*cols)))
    b = Matrix(ctx.field, len(rhs), 1, tuple((e,) for e in rhs))
    sol = linalg.solve(a, b)
    if sol is None:
        raise WindowError("lifting against the partial resolution failed; enlarge the window")
    out = ctx.zero_map(src, p_up)
    for k, bb in enumerate(basis):
        c = sol.entries[k][0]
        if c != ctx.field.zero:
            out = out + bb.scale(c)
    return out


# -- Ext ------------------------------------------------------------------------


def ext_dim(ctx, x, y, i, length=None, redundant=False):
    """dim_k Ext^i(x, y) computed from a projective resolution of x.

    Needs length >= i + 1 unless the resolution terminates by itself; a too
    short length raises WindowError rather than under-reporting.
    """
    if i < 0:
        raise ValueError("negative Ext degree")
    if length is None:
        length = i + 1
    res = projective_resolution(ctx, x, length, redundant=redundant)
    if not res.complete and res.length < i + 1:
        raise WindowError(f"resolution length {res.length} too short for Ext^{i}")
    return _hom_cochain_homology_dim(ctx, res.complex, y, i)


def _hom_cochain_homology_dim(ctx, p, y, i):
    """H^i of Hom(P, y) for P in degrees <= 0 and y an object."""
    def hom_dim(j):
        return len(ctx.hom_basis(p.term(-j), y))

    def dmat(j):
        # Hom(P^{-j}, y) -> Hom(P^{-j-1}, y), precomposition with d
        src = ctx.hom_basis(p.term(-j), y)
        tgt = ctx.hom_basis(p.term(-j - 1), y)
        cols = []
        for b in src:
            cols.append(cx._coords(ctx, tgt, b @ p.diff(-j - 1)))
        if not cols:
            return Matrix.zeros(ctx.field, len(tgt), 0)
        return Matrix(ctx.field, len(tgt), len(cols), tuple(zip(*cols)))

    d_i = dmat(i)
    z = d_i.cols - linalg.rank(d_i)
    if i == 0:
        return z
    return z - linalg.rank(dmat(i - 1))


def ext_dims_from_resolution(ctx, res, y, degrees, cache=None):
    """{i: dim Ext^i} for several degrees from one resolution.

    The differential matrices of Hom(P, y) depend only on (differential, y)
    values, which repeat heavily across periodic resolutions; an optional
    cache dict exploits that across calls.
    """
    degrees = sorted(degrees)
    top = degrees[-1]
    if not res.complete and res.length < top + 1:
        raise WindowError(f"resolution length {res.length} too short for Ext^{top}")
    p = res.complex
    mats = {}
    for j in range(0, top + 1):
        d = p.diff(-j - 1)
        key = (d, y)
        if cache is not None and key in cache:
            mats[j] = cache[key]
            continue
        src = ctx.hom_basis(p.term(-j), y)
        tgt = ctx.hom_basis(p.term(-j - 1), y)
        cols = [cx._coords(ctx, tgt, b @ d) for b in src]
        if cols:
            m = Matrix(ctx.field, len(tgt), len(cols), tuple(zip(*cols)))
        else:
            m = Matrix.zeros(ctx.field, len(tgt), 0)
        entry = (m.cols, linalg.rank(m))
        mats[j] = entry
        if cache is not None:
            cache[key] = entry
    out = {}
    for i in degrees:
        ncols, rk = mats[i]
        z = ncols - rk
        out[i] = z if i == 0 else z - mats[i - 1][1]
    return out


def ext1_via_cover(ctx, w, x):
    """dim Ext^1(w, x), from a single cover step: coker(Hom(P, x) -> Hom(K, x))."""
    p, rho = ctx.projective_epi(w)
    k, incl = ctx.kernel(rho)
    if ctx.is_zero_obj(k):
        return 0
    hom_k = ctx.hom_basis(k, x)
    if not hom_k:
        return 0
    hom_p = ctx.hom_basis(p, x)
    cols = [cx._coords(ctx, hom_k, h @ incl) for h in hom_p]
    if not cols:
        return len(hom_k)
    m = Matrix(ctx.field, len(hom_k), len(cols), tuple(zip(*cols)))
    return len(hom_k) - linalg.rank(m)


def derived_hom_dim(x, y, i, length=4):
    """dim Hom_D(x, y[i]) via a termwise-projective resolution of x."""
    ctx = x.ctx
    res = resolve_complex(ctx, x, length)
    if not res.complete and res.cut > (y.lo if not y.is_empty() else 0) - i - 1:
        raise WindowError(
            f"resolution cut {res.cut} cannot certify degree {i}; increase the length")
    h = cx.hom_complex(res.complex, y)
    if h.is_empty():
        return 0
    return cx.homology_dim(h, i)


def ext1_complexes(x, y):
    """dim Ext^1(x, y) in the abelian category of complexes.

    Uses the projective-object cover by sums of disks: with
    0 -> W -> T -> x -> 0 and T projective, Ext^1(x, y) is the cokernel of
    the restriction map on chain-map spaces Hom(T, y) -> Hom(W, y).
    """
    ctx = x.ctx
    if x.is_empty() or x.is_zero_complex():
        return 0
    t, pi = cx.sum_of_disks_cover(x)
    omega, incl = cx.kernel_complex(pi)
    omega_basis = cx.chain_map_basis(omega, y)
    if not omega_basis:
        return 0
    t_basis = cx.chain_map_basis(t, y)

    def flat(cm, source):
        vec = []
        for i in range(source.lo, source.hi + 1):
            vec.extend(ctx.mor_vec(cm.comp(i)))
        return vec

    basis_mat = Matrix(ctx.field, len(flat(omega_basis[0], omega)), len(omega_basis),
                       tuple(zip(*[flat(b, omega) for b in omega_basis])))
    cols = []
    for h in t_basis:
        restricted = h @ incl
        target = Matrix(ctx.field, basis_mat.rows, 1,
                        tuple((e,) for e in flat(restricted, omega)))
        coords = linalg.solve(basis_mat, target)
        cols.append([coords.entries[k][0] for k in range(len(omega_basis))])
    if not cols:
        return len(omega_basis)
    m = Matrix(ctx.field, len(omega_basis), len(cols), tuple(zip(*cols)))
    return len(omega_basis) - linalg.rank(m)


# -- the split dg-projective class -------------------------------------------------


def is_split_dg_projective(x, chain_level=True):
    """Vertexwise termwise-projective complexes whose out maps split.

    chain_level=True asks for a section that is itself a chain map (one
    linear system across all degrees); chain_level=False asks for a section
    degree by degree.  The two can differ; the harness reports where.
    """
    repctx = x.ctx
    base = repctx.base
    for v in repctx.quiver.vertices:
        vc = cx.at_vertex(x, v)
        if not cx.termwise_in(vc, base.is_projective):
            return False
        if chain_level:
            if not _chain_split_epi(cx.vertex_out_chain_map(x, v)):
                return False
        else:
            for i in range(x.lo, x.hi + 1):
                if not base.is_split_epi(repctx.out_map(x.term(i), v)):
                    return False
    return True


def _chain_split_epi(f):
    """Section of f that is itself a chain map, found by one linear solve."""
    x, y = f.source, f.target
    ctx = x.ctx
    lo = min(x.lo, y.lo)
    hi = max(x.hi, y.hi)
    slots = []
    for i in range(lo, hi + 1):
        slots.append((i, ctx.hom_basis(y.term(i), x.term(i))))
    nvars = sum(len(b) for _, b in slots)
    offsets = {}
    off = 0
    for i, basis in slots:
        offsets[i] = (off, basis)
        off += len(basis)
    rows, rhs = [], []
    zero = ctx.field.zero
    # chain condition: s^{i+1} d_Y^i - d_X^i s^i = 0
    for i in range(lo - 1, hi + 1):
        probe = ctx.zero_map(y.term(i), x.term(i + 1))
        veclen = len(ctx.mor_vec(probe))
        if veclen == 0:
            continue
        block = [[zero] * nvars for _ in range(veclen)]
        touched = False
        for j in (i, i + 1):
            o_basis = offsets.get(j)
            if o_basis is None:
                continue
            o, basis = o_basis
            for k, b in enumerate(basis):
                if j == i + 1:
                    vec = ctx.mor_vec(b @ y.diff(i))
                else:
                    vec = ctx.mor_vec(-(x.diff(i) @ b))
                touched = True
                for r, val in enumerate(vec):
                    if val != zero:
                        block[r][o + k] = ctx.field.add(block[r][o + k], val)
        if touched:
            rows.extend(block)
            rhs.extend([zero] * veclen)
    # section condition: f^i s^i = id
    for i in range(lo, hi + 1):
        ident = ctx.identity(y.term(i))
        veclen = len(ctx.mor_vec(ident))
        if veclen == 0:
            continue
        block = [[zero] * nvars for _ in range(veclen)]
        o, basis = offsets[i]
        for k, b in enumerate(basis):
            vec = ctx.mor_vec(f.comp(i) @ b)
            for r, val in enumerate(vec):
                if val != zero:
                    block[r][o + k] = ctx.field.add(block[r][o + k], val)
        rows.extend(block)
        rhs.extend(ctx.mor_vec(ident))
    if not rows:
        return True
    a = Matrix(ctx.field, len(rows), nvars, tuple(tuple(r) for r in rows))
    b = Matrix(ctx.field, len(rhs), 1, tuple((e,) for e in rhs))
    return linalg.solve(a, b) is not None
