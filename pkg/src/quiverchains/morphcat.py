"""The morphism category: representations of the two-vertex quiver, the
kernel/cokernel functors between its mono and epi subcategories, their
complex-level extensions, and the derived auto-equivalence computed through
projective resolutions.

An arrow object (A -f-> B) is stored as an A2 representation with A at vertex
"1" and B at vertex "2".  The mono objects (f injective) and epi objects
(f surjective) are exchanged by ker_functor and cok_functor; psi0 extends the
cokernel side through a two-step projective resolution.  The literal psi0
formula is lossy outside the mono subcategory ((k -> 0) goes to 0), so
equivalence-style assertions are only ever made on mono objects; psi exposes
the full complex-level picture.
"""

from __future__ import annotations

from . import complexes as cx
from . import model as md
from . import resolution as rs
from .complexes import ChainMap, Complex
from .quiver import a2_quiver
from .reps import RepCategory, RepError, Representation


def arrow_category(base):
    """Rep(A2, mod-A): the ambient category of arrow objects."""
    return RepCategory(a2_quiver(), base)


def arrow_object(cat, top, bot, rows):
    """The object (top -f-> bot) with f given by matrix rows."""
    return cat.rep_from_matrices({"1": top, "2": bot}, {"a": rows})


def top(x):
    return x.modules["1"]


def bot(x):
    return x.modules["2"]


def structure_map(x):
    return x.arrows["a"]


def is_mono_object(x):
    return x.cat.base.is_mono(structure_map(x))


def is_epi_object(x):
    return x.cat.base.is_epi(structure_map(x))


def cok_functor(x):
    """(A -f-> B)  |->  (B -can-> coker f); always an epi object."""
    cat = x.cat
    c, proj = cat.base.cokernel(structure_map(x))
    return Representation(cat, {"1": bot(x), "2": c}, {"a": proj}, _checked=True)


def ker_functor(x):
    """(A -g-> B)  |->  (ker g -incl-> A); always a mono object."""
    cat = x.cat
    k, incl = cat.base.kernel(structure_map(x))
    return Representation(cat, {"1": k, "2": top(x)}, {"a": incl}, _checked=True)


def cok_of_morphism(f):
    """The action of the cokernel functor on a morphism of arrow objects."""
    cat = f.source.cat
    base = cat.base
    cs = cok_functor(f.source)
    ct = cok_functor(f.target)
    top_comp = f.components["2"]
    bot_comp = base.factor_through_epi(ct.arrows["a"] @ f.components["2"], cs.arrows["a"])
    from .reps import RepMorphism
    return RepMorphism(cs, ct, {"1": top_comp, "2": bot_comp}, _checked=True)


def ker_of_morphism(f):
    """The action of the kernel functor on a morphism of arrow objects."""
    cat = f.source.cat
    base = cat.base
    ks = ker_functor(f.source)
    kt = ker_functor(f.target)
    bot_comp = f.components["1"]
    top_comp = base.factor_through_mono(f.components["1"] @ ks.arrows["a"], kt.arrows["a"])
    from .reps import RepMorphism
    return RepMorphism(ks, kt, {"1": top_comp, "2": bot_comp}, _checked=True)


def cok_complex(x):
    """Apply the cokernel functor termwise to a complex of mono objects."""
    for i in range(x.lo, x.hi + 1):
        if not x.ctx.is_zero_obj(x.term(i)) and not is_mono_object(x.term(i)):
            raise RepError(f"term at degree {i} is not a mono object")
    terms = [cok_functor(x.term(i)) for i in range(x.lo, x.hi + 1)]
    diffs = [cok_of_morphism(x.diff(i)) for i in range(x.lo, x.hi)]
    if x.is_empty():
        return Complex.zero(x.ctx)
    return Complex(x.ctx, x.lo, x.hi, terms, diffs)


def ker_complex(x):
    """Apply the kernel functor termwise to a complex of epi objects."""
    for i in range(x.lo, x.hi + 1):
        if not x.ctx.is_zero_obj(x.term(i)) and not is_epi_object(x.term(i)):
            raise RepError(f"term at degree {i} is not an epi object")
    terms = [ker_functor(x.term(i)) for i in range(x.lo, x.hi + 1)]
    diffs = [ker_of_morphism(x.diff(i)) for i in range(x.lo, x.hi)]
    if x.is_empty():
        return Complex.zero(x.ctx)
    return Complex(x.ctx, x.lo, x.hi, terms, diffs)


def psi(x, length=4):
    """The complex-level image of x: termwise cokernels of a termwise
    projective resolution.  Reported with its full homology table since the
    cokernel functor does not preserve quasi-isomorphisms."""
    ctx = x.ctx
    res = rs.resolve_complex(ctx, x, length)
    image = cok_complex(res.complex)
    return image


def psi_with_homology(x, length=4):
    image = psi(x, length)
    return image, cx.homology_dims(image)


def psi0(x, length=1):
    """H^0 of the cokernel complex of a projective resolution of x[0]:
    the literal two-step formula."""
    cat = x.cat
    res = rs.projective_resolution(cat, x, max(length, 1))
    image = cok_complex(res.complex)
    return cx.homology(image, 0)


def psi0_inv(x, length=1):
    """H^0 of the kernel complex of a fibrant-cofibrant replacement of x[0];
    the dual reading through termwise epi objects."""
    cat = x.cat
    stalk = Complex.stalk(cat, x, 0)
    qcert = md.cofibrant_replacement(stalk, max(length, 1))
    rcert = md.fibrant_replacement(qcert.object)
    r = rcert.object
    if r.is_empty() or r.is_zero_complex():
        return cat.zero()
    image = ker_complex(r)
    return cx.homology(image, 0)


def ext_compare(x, y, i, length=4):
    """(Ext^i(x, y), Ext^i(psi0 x, psi0 y)); the two agree on mono objects."""
    cat = x.cat
    lhs = rs.ext_dim(cat, x, y, i, length=length)
    rhs = rs.ext_dim(cat, psi0(x), psi0(y), i, length=length)
    return lhs, rhs
