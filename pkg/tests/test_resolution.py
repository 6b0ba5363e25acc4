import pytest

from quiverchains import complexes as cx
from quiverchains import resolution as rs
from quiverchains.complexes import ChainMap, Complex
from quiverchains.linalg import rank
from quiverchains.resolution import WindowError

from conftest import arrow_rep


def check_resolution_exact(ctx, res):
    """Augmentation epi; homology vanishes strictly above the cut; H^0 = target."""
    p = res.complex
    if res.length == 0 and res.complete:
        return
    assert ctx.is_epi(res.augmentation)
    assert cx.homology_dim(p, 0) == ctx.dim(res.target)
    for i in range(res.cut + 1, 0):
        assert cx.homology_dim(p, i) == 0


def test_resolution_of_projective_is_itself(dual_numbers):
    free = dual_numbers.free(1)
    res = rs.projective_resolution(dual_numbers, free, 4)
    assert res.complete and res.length == 0
    assert res.complex.term(0) == free


def test_periodic_resolution_of_simple(dual_numbers):
    simple = dual_numbers.vector_module(1)
    res = rs.projective_resolution(dual_numbers, simple, 4)
    assert not res.complete
    assert res.cut == -4
    for i in range(-4, 1):
        assert res.complex.term(i).dim == 2
    check_resolution_exact(dual_numbers, res)


def test_resolution_of_simple_rep_over_field(a2):
    # 0 -> (0 -> k) -> (k -> k) -> (k -> 0) -> 0
    s1 = arrow_rep(a2, 1, 0, [])
    res = rs.projective_resolution(a2, s1, 4)
    assert res.complete and res.length == 1
    assert res.complex.term(0).dims() == (1, 1)
    assert res.complex.term(-1).dims() == (0, 1)
    check_resolution_exact(a2, res)


def test_redundant_resolution_stays_exact(dual_numbers):
    simple = dual_numbers.vector_module(1)
    res = rs.projective_resolution(dual_numbers, simple, 3, redundant=True)
    assert res.complex.term(0).dim == 4
    check_resolution_exact(dual_numbers, res)


def test_resolve_complex_fast_path(dual_numbers):
    free = dual_numbers.free(1)
    d = Complex.disk(dual_numbers, free, 0)
    res = rs.resolve_complex(dual_numbers, d, 4)
    assert res.complete
    assert res.complex == d


def test_resolve_complex_of_stalk_matches_module_resolution(dual_numbers):
    simple = dual_numbers.vector_module(1)
    res_c = rs.resolve_complex(dual_numbers, Complex.stalk(dual_numbers, simple, 0), 4)
    res_m = rs.projective_resolution(dual_numbers, simple, 4)
    for i in range(-4, 1):
        assert res_c.complex.term(i).dim == res_m.complex.term(i).dim
    _kernel_exact_above_cut(dual_numbers, res_c)


def _kernel_exact_above_cut(ctx, res):
    k, _ = cx.kernel_complex(res.augmentation)
    for i in range(res.cut + 1, k.hi + 1):
        assert cx.homology_dim(k, i) == 0
    for i in range(res.complex.lo, res.complex.hi + 1):
        assert ctx.is_epi(res.augmentation.comp(i)) or ctx.is_zero_obj(res.target.term(i))
        assert ctx.is_projective(res.complex.term(i))


def test_resolve_complex_two_degree_target(dual_numbers):
    free = dual_numbers.free(1)
    simple = dual_numbers.vector_module(1)
    quot = dual_numbers.hom_basis(free, simple)[0]
    x = Complex(dual_numbers, 0, 1, [free, simple], [quot])
    res = rs.resolve_complex(dual_numbers, x, 4)
    _kernel_exact_above_cut(dual_numbers, res)
    for i in range(res.cut + 1, 2):
        assert cx.homology_dim(res.complex, i) == cx.homology_dim(x, i)


def test_resolve_complex_sum_matches_summand_homology(dual_numbers):
    simple = dual_numbers.vector_module(1)
    stalk = Complex.stalk(dual_numbers, simple, 0)
    disk = Complex.disk(dual_numbers, simple, 5)
    total, _, _ = cx.direct_sum_complex([stalk, disk])
    res = rs.resolve_complex(dual_numbers, total, 4)
    _kernel_exact_above_cut(dual_numbers, res)
    for i in range(res.cut + 1, res.complex.hi + 1):
        assert cx.homology_dim(res.complex, i) == cx.homology_dim(total, i)


def test_ext_projective_source_vanishes(dual_numbers):
    free = dual_numbers.free(1)
    simple = dual_numbers.vector_module(1)
    assert rs.ext_dim(dual_numbers, free, simple, 1) == 0
    assert rs.ext_dim(dual_numbers, free, free, 2, length=3) == 0


def test_ext_simple_reps_over_field(a2):
    s1 = arrow_rep(a2, 1, 0, [])
    s2 = arrow_rep(a2, 0, 1, [])
    assert rs.ext_dim(a2, s1, s2, 1) == 1
    assert rs.ext_dim(a2, s2, s1, 1) == 0


def test_ext_periodic_self_extensions(dual_numbers):
    # oracle: the periodic resolution ... A -x-> A -x-> A -> k built by hand;
    # every induced map on Hom(-, k) vanishes, so Ext^i(k, k) = 1 for all i
    simple = dual_numbers.vector_module(1)
    free = dual_numbers.free(1)
    xmul = dual_numbers.morphism(free, free, free.op.to_lists())
    L = 5
    manual = Complex(dual_numbers, -L, 0, [free] * (L + 1), [xmul] * L)
    for i in range(0, 5):
        expected = rs._hom_cochain_homology_dim(dual_numbers, manual, simple, i)
        assert expected == 1
        assert rs.ext_dim(dual_numbers, simple, simple, i, length=L) == expected


def test_ext_degree_zero_is_hom(dual_numbers):
    mods = [dual_numbers.zero(), dual_numbers.vector_module(1), dual_numbers.free(1),
            dual_numbers.vector_module(2)]
    for m in mods:
        for n in mods:
            assert rs.ext_dim(dual_numbers, m, n, 0) == len(dual_numbers.hom_basis(m, n))


def test_ext_independent_of_resolution(dual_numbers):
    mods = [dual_numbers.vector_module(1), dual_numbers.free(1), dual_numbers.vector_module(2)]
    for m in mods:
        for n in mods:
            for i in range(3):
                a = rs.ext_dim(dual_numbers, m, n, i, length=4)
                b = rs.ext_dim(dual_numbers, m, n, i, length=4, redundant=True)
                assert a == b


def test_ext1_via_cover_agrees(dual_numbers, a2):
    mods = [dual_numbers.vector_module(1), dual_numbers.free(1)]
    for m in mods:
        for n in mods:
            assert rs.ext1_via_cover(dual_numbers, m, n) == rs.ext_dim(dual_numbers, m, n, 1)
    s1 = arrow_rep(a2, 1, 0, [])
    s2 = arrow_rep(a2, 0, 1, [])
    assert rs.ext1_via_cover(a2, s1, s2) == 1
    assert rs.ext1_via_cover(a2, s2, s1) == 0


def test_ext_window_error(dual_numbers):
    simple = dual_numbers.vector_module(1)
    with pytest.raises(WindowError):
        rs.ext_dim(dual_numbers, simple, simple, 3, length=2)


def test_derived_hom_agrees_with_hom_and_ext(dual_numbers):
    simple = dual_numbers.vector_module(1)
    free = dual_numbers.free(1)
    for m in (simple, free):
        for n in (simple, free):
            sm = Complex.stalk(dual_numbers, m, 0)
            sn = Complex.stalk(dual_numbers, n, 0)
            assert rs.derived_hom_dim(sm, sn, 0, length=3) == len(dual_numbers.hom_basis(m, n))
            assert rs.derived_hom_dim(sm, sn, 1, length=4) == rs.ext_dim(dual_numbers, m, n, 1)


def test_derived_hom_exact_source_vanishes(dual_numbers):
    d = Complex.disk(dual_numbers, dual_numbers.vector_module(1), 0)
    target = Complex.stalk(dual_numbers, dual_numbers.free(1), 0)
    for i in (-1, 0, 1):
        assert rs.derived_hom_dim(d, target, i, length=4) == 0


def test_derived_hom_window_error(dual_numbers):
    simple = dual_numbers.vector_module(1)
    sm = Complex.stalk(dual_numbers, simple, 0)
    with pytest.raises(WindowError):
        rs.derived_hom_dim(sm, sm, 3, length=2)


def test_split_dg_projective_examples(a2):
    s1 = Complex.stalk(a2, arrow_rep(a2, 1, 0, []), 0)     # (k -> 0)[0]
    s2 = Complex.stalk(a2, arrow_rep(a2, 0, 1, []), 0)     # (0 -> k)[0]
    p1 = a2.free_at("1", a2.base.vector_module(1))
    dp1 = Complex.disk(a2, p1, 0)
    assert rs.is_split_dg_projective(s1)
    assert not rs.is_split_dg_projective(s2)
    assert rs.is_split_dg_projective(dp1)


def test_split_dg_projective_chain_vs_degreewise(a2):
    # degree 0: (k -> k, id), degree 1: (k -> 0); differential (id, 0).
    # Every degree lies in the split class, but no chain-level section exists.
    p1 = a2.free_at("1", a2.base.vector_module(1))
    s1 = arrow_rep(a2, 1, 0, [])
    d = None
    for f in a2.hom_basis(p1, s1):
        if not f.components["1"].is_zero():
            d = f
    x = Complex(a2, 0, 1, [p1, s1], [d])
    assert rs.is_split_dg_projective(x, chain_level=False)
    assert not rs.is_split_dg_projective(x, chain_level=True)
