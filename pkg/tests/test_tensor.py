import itertools
import random

import pytest

from eqmack.abelian import AbGroup, AbHom
from eqmack.groups import FiniteGroup, subgroup_classes
from eqmack.gsets import (
    GMap,
    GSet,
    disjoint_union,
    enumerate_gmaps,
    point_gset,
    regular_gset,
    std_orbit,
)
from eqmack.mackey import (
    FixedPointMackey,
    MackeyMorphism,
    WeylModule,
    burnside_mackey,
    constant_mackey,
    orbit_maps_between,
)
from eqmack.simplicial import (
    circle_space,
    discrete_inclusion,
    discrete_space,
    point_space,
    s0_space,
    sign_circle,
    smash,
    smash_assoc,
    trivial_rep,
    sign_rep,
)
from eqmack.tensor import (
    CoendRep,
    ModuleTensor,
    PsiMap,
    TensorMackey,
    identity_rep,
    injective_normal_form,
    normalize_coend_rep,
    reduced_as_cokernel,
    reduced_tensor,
    rho_iso,
    ses_from_coefficients,
    ses_from_cofibration,
    smash_module_map,
    structure_map_psi,
    tensor,
    transfer_via_pullback,
)

C2 = FiniteGroup.cyclic(2)
S3 = FiniteGroup.symmetric(3)


def gset_suite(G):
    orbits = [std_orbit(G, r) for r in subgroup_classes(G)]
    extra = disjoint_union([orbits[0], orbits[-1]])[0]
    return orbits + [extra]


def test_point_tensor_recovers_m():
    for G in (C2, S3):
        pt = point_space(G, bound=3)
        for M in (burnside_mackey(G), constant_mackey(G, AbGroup.free(1))):
            T = tensor(pt, M)
            for S in gset_suite(G):
                base = M.evaluate(S).value
                for n in range(pt.bound + 1):
                    assert T.group_at(n, S).iso_eq(base)
                # faces are isomorphisms (all simplices degenerate)
                for i in range(2):
                    assert T.face(1, i, S).is_iso()


def test_s0_tensor_doubles():
    M = burnside_mackey(C2)
    X = s0_space(C2, bound=2)
    T = tensor(X, M)
    R = reduced_tensor(X, M)
    for S in gset_suite(C2):
        mv = M.evaluate(S).value
        free, tors = mv.invariants()
        assert T.group_at(0, S).invariants() == (2 * free, tors + tors)
        assert R.group_at(0, S).iso_eq(mv)


def test_discrete_free_orbit_tensor():
    M = burnside_mackey(C2)
    X = discrete_space(C2, regular_gset(C2), bound=2)
    T = tensor(X, M)
    pt = std_orbit(C2, subgroup_classes(C2)[1])
    # M(C2/e x pt) = M(C2/e) = Z
    assert T.group_at(0, pt).invariants() == (1, ())


def test_normalize_coend_reps():
    M = burnside_mackey(C2)
    X = point_space(C2, bound=2)
    T = tensor(X, M)
    pt = std_orbit(C2, subgroup_classes(C2)[1])
    ev = T.value(0, pt)
    # identity representative
    x = (1, 2)
    rep = identity_rep(T, 0, pt, x)
    assert normalize_coend_rep(T, 0, pt, rep) == x
    # projection representative: image of the free generator
    ls = T.level_set(0, pt)
    free = regular_gset(C2)
    proj = GMap(free, ls.gset, (0, 0))
    rep2 = CoendRep(carrier=free, gmap=proj, coeff=(1,))
    out = normalize_coend_rep(T, 0, pt, rep2)
    # the class of the free orbit span in the Burnside group of a point
    basis = M.basis(ls.gset)
    idx = basis.index(((C2.identity,), 0))
    assert out[idx] == 1 and sum(abs(v) for v in out) == 1
    # non-injective representative equals its injective factorization
    rep3 = injective_normal_form(T, 0, pt, rep2)
    assert rep3.is_injective()
    assert normalize_coend_rep(T, 0, pt, rep3) == out


def proj_pi(G):
    e = subgroup_classes(G)[0]
    full = subgroup_classes(G)[-1]
    return GMap(std_orbit(G, e), std_orbit(G, full), (0,) * G.order)


def test_transfer_via_pullback_identity_and_projection():
    M = burnside_mackey(C2)
    X = point_space(C2, bound=2)
    T = tensor(X, M)
    pt = std_orbit(C2, subgroup_classes(C2)[1])
    ident = GMap.identity(pt)
    for x in ((1, 0), (0, 1), (2, -1)):
        rep = identity_rep(T, 0, pt, x)
        assert transfer_via_pullback(T, 0, ident, rep) == x
    pi = proj_pi(C2)
    # restriction along pi on the Burnside group of the point
    basis = M.basis(T.level_set(0, pt).gset)
    e_idx = basis.index(((C2.identity,), 0))
    full_idx = 1 - e_idx
    unit_full = tuple(1 if i == full_idx else 0 for i in range(2))
    unit_e = tuple(1 if i == e_idx else 0 for i in range(2))
    rep = identity_rep(T, 0, pt, unit_full)
    assert transfer_via_pullback(T, 0, pi, rep) == (1,)
    rep = identity_rep(T, 0, pt, unit_e)
    assert transfer_via_pullback(T, 0, pi, rep) == (2,)


def test_transfer_independent_of_representative():
    rng = random.Random(3)
    M = burnside_mackey(C2)
    X = sign_circle(C2, (0,), bound=2)
    T = tensor(X, M)
    e, full = subgroup_classes(C2)
    S, Tset = std_orbit(C2, e), std_orbit(C2, full)
    f = proj_pi(C2)
    n = 1
    ls = T.level_set(n, Tset)
    carriers = [regular_gset(C2), disjoint_union([regular_gset(C2), point_gset(C2)])[0]]
    for carrier in carriers:
        for gamma in enumerate_gmaps(carrier, ls.gset):
            cval = M.evaluate(carrier).value
            for _ in range(2):
                coeff = tuple(rng.randrange(-2, 3) for _ in range(cval.ngens))
                rep = CoendRep(carrier=carrier, gmap=gamma, coeff=coeff)
                via_recipe = transfer_via_pullback(T, n, f, rep)
                collapsed = normalize_coend_rep(T, n, Tset, rep)
                direct = T.contravariant_S(n, f)(collapsed)
                assert T.group_at(n, S).elements_equal(via_recipe, direct)


def test_collapse_coherence_on_suite():
    # the pullback recipe agrees with the restriction of the collapsed class
    M = constant_mackey(C2, AbGroup.free(1))
    X = sign_circle(C2, (0,), bound=2)
    T = tensor(X, M)
    for S in gset_suite(C2)[:3]:
        for Tset in gset_suite(C2)[:3]:
            for f in enumerate_gmaps(S, Tset):
                n = 1
                val = T.group_at(n, Tset)
                for c in range(val.ngens):
                    unit = tuple(1 if i == c else 0 for i in range(val.ngens))
                    rep = identity_rep(T, n, Tset, unit)
                    lhs = transfer_via_pullback(T, n, f, rep)
                    rhs = T.contravariant_S(n, f)(unit)
                    assert T.group_at(n, S).elements_equal(lhs, rhs)


def test_reduced_tensor_point_is_zero():
    M = burnside_mackey(C2)
    R = reduced_tensor(point_space(C2, bound=2), M)
    for S in gset_suite(C2):
        for n in range(3):
            assert R.group_at(n, S).is_trivial()


def test_splitting_unreduced_vs_reduced():
    M = burnside_mackey(C2)
    X = sign_circle(C2, (0,), bound=3)
    T = tensor(X, M)
    R = reduced_tensor(X, M)
    for S in gset_suite(C2):
        for n in range(3):
            free_t, tors_t = T.group_at(n, S).invariants()
            mf, mt = M.evaluate(S).value.invariants()
            rf, rt = R.group_at(n, S).invariants()
            assert free_t == mf + rf
            assert sorted(tors_t) == sorted(mt + rt)


def test_reduced_matches_cokernel_presentation():
    M = burnside_mackey(C2)
    X = sign_circle(C2, (0,), bound=2)
    for S in gset_suite(C2)[:3]:
        for n in range(2):
            coker, proj, mapping = reduced_as_cokernel(X, M, n, S)
            assert mapping.is_iso()


def test_face_degeneracy_structure_commutes_with_restrictions():
    # faces commute with every contravariant map (pullback axiom instance)
    M = burnside_mackey(C2)
    X = sign_circle(C2, (0,), bound=2)
    T = tensor(X, M)
    recs = subgroup_classes(C2)
    for j in recs:
        for h in recs:
            for om in orbit_maps_between(j, h):
                f = om.gmap()
                for i in range(2):
                    lhs = T.face(1, i, f.src).compose(T.contravariant_S(1, f))
                    rhs = T.contravariant_S(0, f).compose(T.face(1, i, f.tgt))
                    assert lhs.same_as(rhs)


def test_module_tensor_spheres():
    W = C2
    A = WeylModule.trivial(W, AbGroup.free(1))
    K = s0_space(W, bound=2)
    mt = ModuleTensor(K, A)
    c = mt.chain_complex().check()
    assert c.homology(0).invariants() == (1, ())
    assert c.homology(1).is_trivial()
    circle = circle_space(W, bound=3)
    mt2 = ModuleTensor(circle, A)
    c2 = mt2.chain_complex().check()
    assert c2.homology(0).is_trivial()
    assert c2.homology(1).invariants() == (1, ())


def test_smash_module_map_unit():
    W = C2
    A = WeylModule.regular(W)
    K = circle_space(W, bound=2)
    Y = s0_space(W, bound=2)
    h = smash_module_map(Y, K, A, 1, 1)  # pair with the non-base vertex
    assert h.is_injective()


def test_module_tensor_fixed_points_vs_equivariant_maps():
    # the G-fixed part of the linearization is the equivariant-function group
    G = C2
    A = WeylModule.regular(G)  # Z[C2] as a G-module
    K = sign_circle(G, (0,), bound=2)
    mtK = ModuleTensor(K, A, reduced=True)
    e = subgroup_classes(G)[0]
    for S in gset_suite(G)[:3]:
        for n in range(2):
            sm, pts = _smash_with_plus(K, S, n)
            mt = _module_of_set(sm, A)
            fixed = _fixed_subgroup(mt)
            rhs = FixedPointMackey(G, e, mtK.module(n))
            rv = rhs.value_of(S)
            assert fixed.iso_eq(rv)


def _smash_with_plus(K, S, n):
    # the set (K_n x S) with a basepoint column collapsed
    from eqmack.tensor import smash_level

    ls = smash_level(K.levels[n], K.base(n), S)
    return ls.gset, ls.pairs


def _module_of_set(gset, A):
    """The permutation module on the non-base points of a based G-set."""
    from eqmack import abelian as ab

    n = gset.size - 1
    value, incls, projs = ab.direct_sum([A.value] * n)
    mats = []
    for g in gset.group.elements():
        h = AbHom.zero(value, value)
        for i in range(n):
            tgtp = gset.action[g][i + 1]
            if tgtp != 0:
                h = h + incls[tgtp - 1].compose(A.hom(g)).compose(projs[i])
        mats.append(h.mat)
    return WeylModule(gset.group, value, tuple(mats))


def _fixed_subgroup(module):
    W = module.group
    from eqmack import abelian as ab

    rows = [module.hom(g) - AbHom.identity(module.value) for g in W.elements()]
    tgt, incls, _ = ab.direct_sum([module.value] * len(rows))
    h = AbHom.zero(module.value, tgt)
    for r, rh in enumerate(rows):
        h = h + incls[r].compose(rh)
    k, _ = h.kernel()
    return k


@pytest.mark.parametrize(
    "xname", ["s0", "sign"]
)
def test_rho_is_an_isomorphism(xname):
    G = C2
    e, full = subgroup_classes(G)
    X = s0_space(G, bound=3) if xname == "s0" else sign_circle(G, (0,), bound=3)
    for hrec, module in (
        (e, WeylModule.regular(e.weyl)),
        (full, WeylModule.trivial(full.weyl, AbGroup.free(1))),
    ):
        iso = rho_iso(X, hrec, module)
        for rec in subgroup_classes(G):
            for n in range(3):
                rho = iso.rho(rec, n)
                sig = iso.sigma(rec, n)
                assert rho.compose(sig).same_as(AbHom.identity(rho.tgt))
                assert sig.compose(rho).same_as(AbHom.identity(rho.src))


def test_rho_point_space_is_identity_sized():
    G = C2
    e = subgroup_classes(G)[0]
    iso = rho_iso(point_space(G, bound=2), e, WeylModule.trivial(e.weyl, AbGroup.free(1)))
    for rec in subgroup_classes(G):
        r = iso.rho(rec, 0)
        assert r.is_iso()
        assert r.src.iso_eq(r.tgt)


def test_rho_naturality_both_variances():
    G = C2
    e = subgroup_classes(G)[0]
    module = WeylModule.regular(e.weyl)
    X = sign_circle(G, (0,), bound=2)
    iso = rho_iso(X, e, module)
    n = 1
    rhsf = iso.rhs_functor(n)
    for j in subgroup_classes(G):
        for h in subgroup_classes(G):
            for om in orbit_maps_between(j, h):
                f = om.gmap()
                # contravariant naturality
                lhs = iso.rho(j, n).compose(iso.T.contravariant_S(n, f))
                rhs = rhsf.orbit_contravariant(om).compose(iso.rho(h, n))
                assert lhs.same_as(rhs)
                # covariant naturality
                lhs = iso.rho(h, n).compose(iso.T.covariant_S(n, f))
                rhs = rhsf.orbit_covariant(om).compose(iso.rho(j, n))
                assert lhs.same_as(rhs)


def test_rho_naturality_in_x():
    from eqmack.tensor import fp_postcompose

    G = C2
    e = subgroup_classes(G)[0]
    module = WeylModule.trivial(e.weyl, AbGroup.free(1))
    X = sign_circle(G, (0,), bound=2)
    iso = rho_iso(X, e, module)
    for rec in subgroup_classes(G):
        S = std_orbit(G, rec)
        for i in range(2):
            theta = iso.MT.face_hom(1, i)
            lhs = iso.rho(rec, 0).compose(iso.T.face(1, i, S))
            rhs = fp_postcompose(
                iso.rhs_functor(1), iso.rhs_functor(0), theta, S
            ).compose(iso.rho(rec, 1))
            assert lhs.same_as(rhs)


def test_psi_zero_descriptor_is_iso():
    M = constant_mackey(C2, AbGroup.free(1))
    X = sign_circle(C2, (0,), bound=3)
    psi = structure_map_psi(trivial_rep(0), X, M)
    for rec in subgroup_classes(C2):
        for n in range(2):
            alphas = psi.sphere_fixed_simplices(rec, n)
            assert len(alphas) == 1
            comp = psi.component(rec, n, alphas[0])
            assert comp.is_iso()
            base_comp = psi.component(rec, n, psi.SW.base(n))
            assert base_comp.is_zero_hom()


def test_psi_transitivity_square():
    G = C2
    M = constant_mackey(G, AbGroup.free(1))
    X = s0_space(G, bound=3)
    psi_w = PsiMap(sign_rep(), X, M)
    x1 = psi_w.SX  # S^sigma smash X
    psi_u = PsiMap(trivial_rep(1), x1, M)
    combined_sphere = smash(psi_u.SW, psi_w.SW)
    assoc = smash_assoc(psi_u.SW, psi_w.SW, X)
    psi_uw = PsiMap.from_sphere(combined_sphere, X, M)
    for rec in subgroup_classes(G):
        S = std_orbit(G, rec)
        for n in range(2):
            for a_u in psi_u.sphere_fixed_simplices(rec, n):
                for a_w in psi_w.sphere_fixed_simplices(rec, n):
                    idx = {
                        p: i
                        for i, p in enumerate(combined_sphere._smash_points[n])
                        if p is not None
                    }
                    alpha = idx[(a_u, a_w)]
                    direct = psi_uw.component(rec, n, alpha)
                    step = psi_u.component(rec, n, a_u).compose(
                        psi_w.component(rec, n, a_w)
                    )
                    fix = psi_u.T_tgt.space_hom(
                        psi_uw.T_tgt, assoc.comps[n].values, n, S
                    )
                    assert fix.compose(step).same_as(direct)


def test_ses_from_cofibration_exactness():
    G = C2
    M = burnside_mackey(G)
    sig = sign_circle(G, (0,), bound=3)
    s0 = s0_space(G, bound=3)
    incl = discrete_inclusion(s0, sig, (0, 1))
    ses = ses_from_cofibration(incl, M)
    for S in gset_suite(G)[:3]:
        for n in range(3):
            assert ses.check_exact(n, S)


def test_ses_cofibration_trivial_cases():
    G = C2
    M = constant_mackey(G, AbGroup.free(1))
    sig = sign_circle(G, (0,), bound=2)
    pt = point_space(G, bound=2)
    incl = discrete_inclusion(pt, sig, (0,))
    ses = ses_from_cofibration(incl, M)
    # quotient recovers the reduced tensor of the whole space
    R = reduced_tensor(sig, M)
    for S in gset_suite(G)[:2]:
        for n in range(2):
            assert ses.check_exact(n, S)
            assert ses.quot.group_at(n, S).iso_eq(R.group_at(n, S))
    # Y = X collapses to a point: the quotient functor vanishes
    full_incl = discrete_inclusion(s0_space(G, bound=2), s0_space(G, bound=2), (0, 1))
    ses2 = ses_from_cofibration(full_incl, M)
    for n in range(2):
        assert ses2.quot.group_at(n, std_orbit(G, subgroup_classes(G)[1])).is_trivial()


def constant_mod2(G):
    return constant_mackey(G, AbGroup.cyclic(2))


def test_ses_from_coefficients():
    from eqmack.mackey import fixed_point_morphism

    G = C2
    M = constant_mackey(G, AbGroup.free(1))
    P = constant_mod2(G)
    recs = subgroup_classes(G)
    phi = MackeyMorphism(
        M, M, {r.class_id: AbHom(M.orbit_value(r), M.orbit_value(r), ((2,),)) for r in recs}
    ).check()
    theta = AbHom(AbGroup.free(1), AbGroup.cyclic(2), ((1,),))
    psi = fixed_point_morphism(M, P, theta).check()
    X = sign_circle(G, (0,), bound=3)
    ses = ses_from_coefficients(phi, psi, X)
    for S in gset_suite(G)[:3]:
        for n in range(3):
            assert ses.check_exact(n, S)


def test_ses_from_coefficients_split():
    from eqmack.mackey import direct_sum_mackey

    G = C2
    M = constant_mackey(G, AbGroup.free(1))
    N = burnside_mackey(G)
    total, incls, projs = direct_sum_mackey([M, N])
    X = s0_space(G, bound=2)
    ses = ses_from_coefficients(incls[0], projs[1], X)
    for n in range(2):
        assert ses.check_exact(n, std_orbit(G, subgroup_classes(G)[0]))
