import itertools

import pytest

from eqmack.groups import FiniteGroup, subgroup_classes
from eqmack.simplicial import (
    DEFAULT_BOUND,
    RepDescriptor,
    SimplicialError,
    SimplicialGMap,
    build_from_generators,
    circle_space,
    collapse,
    compose_monotone,
    cylinder_inclusions,
    delta,
    epi_mono,
    eta,
    fixed_system,
    join,
    monotones,
    point_space,
    representation_sphere,
    rotation_rep,
    rotation_sphere,
    s0_space,
    sign_circle,
    sign_rep,
    smash,
    sphere_for_descriptors,
    standard_simplex_plus,
    surjections,
    suspend,
    trivial_rep,
    underlying_reduced_chains,
    wedge,
)

C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)


def reduced_homology(X, n):
    return underlying_reduced_chains(X).homology(n).invariants()


def test_monotone_helpers():
    assert delta(1, 2) == (0, 2)
    assert eta(0, 1) == (0, 0, 1)
    tau = (0, 0, 2)
    iota, pi = epi_mono(tau)
    assert iota == (0, 2) and pi == (0, 0, 1)
    assert compose_monotone(iota, pi) == tau
    assert len(surjections(3, 1)) == 3
    assert len(monotones(1, 2)) == 6


def test_point_and_s0():
    pt = point_space(C2)
    assert all(l.size == 1 for l in pt.levels)
    s0 = s0_space(C2)
    assert reduced_homology(s0, 0) == (1, ())
    assert reduced_homology(s0, 1) == (0, ())


def test_circle_homology():
    c = circle_space(C2)
    assert reduced_homology(c, 0) == (0, ())
    assert reduced_homology(c, 1) == (1, ())
    assert reduced_homology(c, 2) == (0, ())


def test_sign_circle_structure():
    s = sign_circle(C2, (0,))
    assert s.levels[0].size == 2
    assert len(s.nondegenerate(1)) == 2
    assert reduced_homology(s, 1) == (1, ())
    # fixed points: two vertices for the full group, the circle for e
    full = subgroup_classes(C2)[1]
    fixed, _ = fixed_system(s, full.elements)
    assert fixed.levels[0].size == 2
    assert all(len(fixed.nondegenerate(n)) == 0 for n in range(1, fixed.bound + 1))
    e = subgroup_classes(C2)[0]
    under, _ = fixed_system(s, e.elements)
    assert reduced_homology(under, 1) == (1, ())


def test_smash_unit():
    s0 = s0_space(C2)
    sig = sign_circle(C2, (0,))
    sm = smash(sig, s0)
    for n in range(sm.bound + 1):
        assert sm.levels[n].size == sig.levels[n].size
    assert reduced_homology(sm, 1) == (1, ())


def test_smash_spheres():
    c = circle_space(C2)
    s2 = smash(c, c)
    assert reduced_homology(s2, 1) == (0, ())
    assert reduced_homology(s2, 2) == (1, ())
    sig = sign_circle(C2, (0,))
    s1sig = smash(c, sig)
    assert reduced_homology(s1sig, 2) == (1, ())
    assert reduced_homology(s1sig, 1) == (0, ())


def test_rotation_sphere():
    r = rotation_sphere(C3, 3, 1)
    assert reduced_homology(r, 2) == (1, ())
    assert reduced_homology(r, 1) == (0, ())
    full = subgroup_classes(C3)[1]
    fixed, _ = fixed_system(r, full.elements)
    # the two cone points survive
    assert len(fixed.nondegenerate(0)) == 2
    assert all(len(fixed.nondegenerate(n)) == 0 for n in range(1, fixed.bound + 1))


def test_representation_sphere_dispatch():
    assert representation_sphere(C2, trivial_rep(0)).levels[0].size == 2
    s = representation_sphere(C2, sign_rep())
    assert s.levels[0].size == 2
    r = representation_sphere(C3, rotation_rep(3, 1))
    assert reduced_homology(r, 2) == (1, ())
    with pytest.raises(SimplicialError):
        representation_sphere(C3, sign_rep())
    smashsp = sphere_for_descriptors(C2, [sign_rep(), trivial_rep(1)])
    assert reduced_homology(smashsp, 2) == (1, ())


def test_suspension():
    s0 = s0_space(C2)
    s1 = suspend(s0, trivial_rep(1))
    assert reduced_homology(s1, 1) == (1, ())
    sig = sign_circle(C2, (0,))
    s = suspend(sig, trivial_rep(1))
    assert reduced_homology(s, 2) == (1, ())
    unchanged = suspend(sig, trivial_rep(0))
    for n in range(unchanged.bound + 1):
        assert unchanged.levels[n].size == sig.levels[n].size


def test_fixed_points_commute_with_smash():
    sig = sign_circle(C2, (0,))
    c = circle_space(C2)
    sm = smash(sig, c)
    for rec in subgroup_classes(C2):
        left, _ = fixed_system(sm, rec.elements)
        fx, _ = fixed_system(sig, rec.elements)
        fy, _ = fixed_system(c, rec.elements)
        right = smash(fx, fy)
        for n in range(left.bound + 1):
            assert left.levels[n].size == right.levels[n].size


def test_degeneracy_status_is_invariant():
    sig = sign_circle(C2, (0,))
    for n in range(sig.bound + 1):
        flags = sig.degenerate_flags(n)
        for g in C2.elements():
            for p in range(sig.levels[n].size):
                assert flags[p] == flags[sig.levels[n].action[g][p]]


def test_operator_matches_faces():
    sig = sign_circle(C2, (0,))
    for n in range(1, sig.bound + 1):
        for i in range(n + 1):
            assert sig.operator(delta(i, n), n - 1, n) == sig.faces[n][i].values
    for n in range(sig.bound):
        for i in range(n + 1):
            assert sig.operator(eta(i, n), n + 1, n) == sig.degens[n][i].values


def test_operator_composition():
    sig = smash(sign_circle(C2, (0,)), circle_space(C2))
    for a in monotones(1, 2):
        for b in monotones(2, 3):
            ba = compose_monotone(b, a)
            lhs = sig.operator(ba, 1, 3)
            step = sig.operator(b, 2, 3)
            fin = sig.operator(a, 1, 2)
            rhs = tuple(fin[v] for v in step)
            assert lhs == rhs


def vertex_subcomplex(X):
    """Per-level point sets: all iterated degeneracies of the vertices."""
    subs = []
    for n in range(X.bound + 1):
        pts = set()
        for v in range(X.levels[0].size):
            y = v
            for m in range(n):
                y = X.degens[m][0].values[y]
            pts.add(y)
        subs.append(pts)
    return subs


def test_collapse_to_wedge_of_circles():
    sig = sign_circle(C2, (0,))
    q, proj = collapse(sig, vertex_subcomplex(sig))
    assert q.levels[0].size == 1
    assert reduced_homology(q, 0) == (0, ())
    assert reduced_homology(q, 1) == (2, ())


def test_wedge_homology():
    c = circle_space(C2)
    s0 = s0_space(C2)
    w, ix, iy = wedge(c, s0)
    assert reduced_homology(w, 0) == (1, ())
    assert reduced_homology(w, 1) == (1, ())


def test_cylinder_inclusions_valid():
    sig = sign_circle(C2, (0,))
    cyl, i0, i1 = cylinder_inclusions(sig)
    assert i0.comps[0].values != i1.comps[0].values


def test_standard_simplex_plus():
    d1 = standard_simplex_plus(C2, 1)
    assert d1.levels[0].size == 3  # base + two vertices
    assert d1.levels[1].size == 4  # base + (00), (01), (11)


def test_join_is_a_sphere():
    # S^0 * S^0 = S^1
    from eqmack.gsets import trivial_gset

    pts = build_from_generators(C2, [trivial_gset(C2, 2)], [None])
    j = join(pts, pts)
    jb = j.as_based(0)
    assert reduced_homology(jb, 0) == (0, ())
    assert reduced_homology(jb, 1) == (1, ())
