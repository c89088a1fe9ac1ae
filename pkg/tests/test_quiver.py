import pytest

from conftest import FIXTURES, load
from skewmorita.cyclotomic import ONE, ZERO, Cyc
from skewmorita.groups import ActionValidationError, build_group
from skewmorita.quiver import ArrowSpace, Potential, Quiver, canonical_rotation, check_invariance


def two_cycle():
    return Quiver.from_edges(2, [(0, 1, "a"), (1, 0, "b")])


def test_paths_and_rendering():
    Q = two_cycle()
    assert list(Q.paths_from(0, 0)) == [(0, ())]
    assert list(Q.paths_from(0, 3)) == [(0, (0, 1, 0))]
    assert Q.render_path((0, (0, 1))) == "a b"
    assert Q.render_path((1, ())) == "e1"
    assert Q.is_path((0, (0, 1))) and not Q.is_path((0, (1,)))
    assert Q.end((0, (0,))) == 1
    assert "->" in Q.to_dot()


def test_loop_counts():
    Q = Quiver.from_edges(1, [(0, 0, "l")])
    assert len(list(Q.paths_from(0, 7))) == 1


def z2_swap_space(images_s):
    G = build_group([[0, 1], [1, 0]])
    Q = two_cycle()
    ident = [((0, ONE),), ((1, ONE),)]
    return ArrowSpace(Q, G, [[0, 1], [1, 0]], [ident, images_s])


def test_valid_swap_action():
    sp = z2_swap_space([((1, ONE),), ((0, ONE),)])
    assert sp.monomial
    assert sp.act_path(1, (0, (0, 1))) == {(1, (1, 0)): ONE}


@pytest.mark.parametrize("images,fragment", [
    ([((0, ONE),), ((1, ONE),)], "does not join"),
    ([((1, -ONE),), ((0, ONE),)], "differs"),
])
def test_invalid_actions_name_the_pair(images, fragment):
    with pytest.raises(ActionValidationError) as exc:
        z2_swap_space(images)
    assert fragment in str(exc.value)
    assert exc.value.pair is not None


@pytest.mark.parametrize("name", FIXTURES)
def test_dual_action_preserves_the_pairing(name):
    inst, _ = load(name)
    sp, dsp = inst.space, inst.dual_space
    n = len(sp.quiver.arrows)
    for g in range(inst.group.order):
        M, D = sp.matrix(g), dsp.matrix(g)
        # sum_c D[c][a] M[c][b] = delta_ab
        for a in range(n):
            for b in range(n):
                s = ZERO
                for c in range(n):
                    s = s + D[c][a] * M[c][b]
                assert s == (ONE if a == b else ZERO)
    for a, da in zip(sp.quiver.arrows, dsp.quiver.arrows):
        assert (da.source, da.target, da.label) == (a.target, a.source, a.label + "*")


def test_potential_validation_and_rotation():
    Q = two_cycle()
    with pytest.raises(ValueError):
        Potential(Q, [((0,), ONE)])
    W = Potential(Q, [((0, 1), ONE), ((0, 1), -ONE)])
    assert not W
    assert canonical_rotation((3, 1, 2)) == (1, 2, 3)


def test_invariance_check():
    sp = z2_swap_space([((1, ONE),), ((0, ONE),)])
    Q = sp.quiver
    assert check_invariance(sp, Potential(Q, [((0, 1), ONE)])) == (True, None)
    sp2 = z2_swap_space([((1, -ONE),), ((0, -ONE),)])
    # a b -> (-b)(-a) = b a, still invariant; a b a b likewise
    assert check_invariance(sp2, Potential(Q, [((0, 1), ONE)]))[0]
    # an odd number of sign flips is detected
    G = build_group([[0, 1], [1, 0]])
    Ql = Quiver.from_edges(1, [(0, 0, "l")])
    sp3 = ArrowSpace(Ql, G, [[0], [0]], [[((0, ONE),)], [((0, -ONE),)]])
    ok, g = check_invariance(sp3, Potential(Ql, [((0, 0, 0), ONE)]))
    assert not ok and g == 1


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_potentials_are_invariant(name):
    inst, _ = load(name)
    assert inst.check_invariance() == (True, None)
