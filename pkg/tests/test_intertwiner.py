import random

import pytest

from conftest import FIXTURES, load
from skewmorita.cyclotomic import ONE, ZERO, Cyc
from skewmorita.intertwiner import (Intertwiner, PairingError, build_induced, circledast,
                                    fast_pairing_terms, hom_intertwiners, pairing, pairing_fast,
                                    unit_intertwiner)
from skewmorita.selftest import random_combo, random_path
from skewmorita.skew import SkewElement


def test_degree_zero_induced_is_v(d10):
    inst, _ = d10
    V = inst.modules[(0, "chi1")]
    M = build_induced(inst, (0,), V)
    assert M.dim == V.dim == 1


@pytest.mark.parametrize("t,sign", [("chi0", -1), ("chi1", 1)])
def test_dihedral_dual_induced_module(d10, t, sign):
    # M*(0,0;rho_t) has basis x10* (x) c eps_t and x40* (x) c^4 eps_t
    inst, _ = d10
    G = inst.group
    M = build_induced(inst, (0, 0), inst.modules[(0, t)], dual=True)
    assert M.dim == 2
    labels = {inst.dual_space.quiver.arrows[p[1][0]].label for (p, _) in M.basis}
    assert labels == {"x10*", "x40*"}
    tau = M.action_matrix(G.index("t"))
    assert tau[0, 0] == ZERO and tau[1, 1] == ZERO
    assert tau[0, 1] == Cyc.rational(sign) and tau[1, 0] == Cyc.rational(sign)


def test_trivial_group_induced_dimension():
    inst, _ = load("trivial")
    U = inst.qg_vertices[0][1]
    for j, count in [(1, 2), (2, 0), (0, 0)]:
        M = build_induced(inst, (0, j), inst.modules[(j, U)])
        assert M.dim == count


@pytest.mark.parametrize("name", FIXTURES)
def test_unit_laws(name):
    inst, qg = load(name)
    for a in qg.arrows:
        (i, U), (j, V) = qg.vertices[a.source], qg.vertices[a.target]
        assert circledast(a.f, unit_intertwiner(inst, i, U)) == a.f
        assert circledast(unit_intertwiner(inst, j, V), a.f) == a.f
        assert circledast(a.dual, unit_intertwiner(inst, j, V, dual=True)) == a.dual
        assert circledast(unit_intertwiner(inst, i, U, dual=True), a.dual) == a.dual


@pytest.mark.parametrize("name", FIXTURES)
def test_arrows_are_equivariant(name):
    _, qg = load(name)
    for a in qg.arrows:
        assert a.f.is_equivariant()
        assert a.dual.is_equivariant()


def test_product_identity_on_all_dihedral_pairs(d10):
    # composable pairs satisfy the identity; the other products vanish in the skew algebra
    _, qg = d10
    count = 0
    for a in qg.arrows:
        for b in qg.arrows:
            prod = a.f.skew_value() * b.f.skew_value()
            if a.target == b.source:
                assert circledast(b.f, a.f).skew_value() == prod
            else:
                assert not prod
            count += 1
    assert count == 16


def test_dihedral_dual_arrow_values(d10):
    # phi(eps) = x10* (x) c eps + (-1)^(s+t+1) x40* (x) c^4 eps
    inst, qg = d10
    dsp, G, Qd = inst.dual_space, inst.group, inst.dual_space.quiver
    c, c4 = G.index("c"), G.index("c^4")
    for a in qg.arrows:
        s, t = a.source, a.target
        eps = SkewElement.from_group_alg(dsp, 0, inst.idempotents[qg.vertices[s]])
        x10 = SkewElement(dsp, {((0, (Qd.arrow_id("x10*"),)), c): ONE})
        x40 = SkewElement(dsp, {((0, (Qd.arrow_id("x40*"),)), c4): ONE})
        expected = (x10 + x40.scale((-1) ** (s + t + 1))) * eps
        assert a.dual.skew_value() == expected


def test_dihedral_dual_chain_is_a_product(d10):
    # phi_gamma(eps) is the product of the five single dual values, last arrow first
    inst, qg = d10
    for path in list(qg.paths(5, 0, 1))[:6]:
        prod = None
        for a in reversed(path[1]):
            v = qg.arrows[a].dual.skew_value()
            prod = v if prod is None else prod * v
        assert qg.phi_gamma(path).skew_value() == prod


@pytest.mark.parametrize("name", FIXTURES)
def test_dual_normalisation(name):
    _, qg = load(name)
    for a in qg.arrows:
        for b in qg.arrows:
            if (a.source, a.target) == (b.source, b.target):
                assert pairing(a.f, b.dual) == (ONE if a is b else ZERO)


def test_schur_zero_for_different_irreps(d10):
    _, qg = d10
    f = qg.arrows[0].f            # chi0 -> chi0
    phi = qg.arrows[3].dual       # dual of chi1 -> chi1
    assert pairing(f, phi) == ZERO
    assert pairing_fast(f, phi) == ZERO


def test_pairing_needs_matching_sides(d10):
    _, qg = d10
    a = qg.arrows[0]
    with pytest.raises(PairingError):
        pairing(a.f, a.f)
    with pytest.raises(PairingError):
        pairing(qg.f_gamma((0, (0, 0))), a.dual)


@pytest.mark.parametrize("name", ["d10", "z6", "s3", "z3nonmono", "z2mixed"])
def test_associativity_and_pairing_compatibility(name):
    _, qg = load(name)
    rng = random.Random(7)
    for _ in range(15):
        p = random_path(qg, 3, rng)
        if p is None:
            pytest.skip("no paths of length 3")
        s, (a1, a2, a3) = p
        v1, v2 = qg.arrows[a1].target, qg.arrows[a2].target
        f1, f2, f3 = (random_combo(qg, x, rng) for x in [(s, (a1,)), (v1, (a2,)), (v2, (a3,))])
        assert circledast(circledast(f3, f2), f1) == circledast(f3, circledast(f2, f1))
        g1, g2 = random_combo(qg, (s, (a1,)), rng, dual=True), random_combo(qg, (v1, (a2,)), rng, dual=True)
        assert pairing(circledast(f2, f1), circledast(g1, g2)) == pairing(f2, g2) * pairing(f1, g1)


@pytest.mark.parametrize("name", [n for n in FIXTURES if load(n)[0].monomial_abelian])
def test_fast_equals_slow_on_hom_bases(name):
    _, qg = load(name)
    for sp in qg.spaces.values():
        for g in sp["m_basis"]:
            for phi in sp["dual_basis"]:
                assert pairing_fast(g, phi) == pairing(g, phi)


def test_fast_pairing_falls_back_with_warning():
    _, qg = load("s3")
    a = next(x for x in qg.arrows if x.f.U.dim == 2 or x.f.V.dim == 2)
    with pytest.warns(UserWarning):
        assert pairing_fast(a.f, a.dual) == ONE


def test_degree_one_fast_identity(d10):
    _, qg = d10
    for a in qg.arrows:
        assert sum((t.value for t in fast_pairing_terms(a.f, a.dual)), ZERO) == ONE


def test_serialization_is_stable(d10):
    _, qg = d10
    a = qg.arrows[1]
    assert a.f.serialize() == a.f.serialize()
    assert all(len(item) == 5 for item in a.f.serialize())


def test_hom_dimension_matches_dual_side():
    for name in FIXTURES:
        inst, _ = load(name)
        for (i, U) in inst.qg_vertices:
            for (j, V) in inst.qg_vertices:
                assert len(hom_intertwiners(inst, i, U, (j,), V)) == \
                    len(hom_intertwiners(inst, j, V, (i,), U, dual=True))


def test_h0_convention_is_pinned_by_z6(monkeypatch):
    # z6 has paths whose coset product lands in a nontrivial stabilizer element
    import skewmorita.intertwiner as mod
    _, qg = load("z6")
    paths = [p for p in qg.paths(2) if qg.path_iseq(p) == (0, 0, 0)]

    def all_biorthogonal():
        return all(pairing(qg.f_gamma(p), qg.phi_gamma(q)) == (ONE if p == q else ZERO)
                   for p in paths for q in paths
                   if p[0] == q[0] and qg.path_end(p) == qg.path_end(q))

    assert all_biorthogonal()
    monkeypatch.setattr(mod, "H0_INVERSE", False)
    assert not all_biorthogonal()
