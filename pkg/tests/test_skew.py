import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, load
from skewmorita.cyclotomic import ONE, Cyc
from skewmorita.selftest import random_projected
from skewmorita.skew import (NotProjectedError, SkewElement, canonicalize, e_hat, e_tilde,
                             expand_canonical, graded_dimension, potential_element, xi)


def random_element(inst, rng, n_terms=3, max_len=2):
    Q, G = inst.quiver, inst.group
    terms = {}
    for _ in range(n_terms):
        v = rng.randrange(Q.num_vertices)
        n = rng.randint(0, max_len)
        paths = list(Q.paths_from(v, n))
        if not paths:
            continue
        terms[(rng.choice(paths), rng.randrange(G.order))] = Cyc.rational(rng.randint(-3, 3))
    return SkewElement(inst.space, terms)


@pytest.mark.parametrize("name", ["d10", "z6", "z3nonmono", "s3"])
@given(seed=st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_associativity(name, seed):
    inst, _ = load(name)
    rng = random.Random(seed)
    a, b, c = (random_element(inst, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("name", FIXTURES)
def test_idempotents(name):
    inst, _ = load(name)
    et, eh = e_tilde(inst), e_hat(inst)
    assert et * et == et
    assert eh * eh == eh
    assert eh * et == et == et * eh


def test_skew_product_rule(d10):
    inst, _ = d10
    sp, G, Q = inst.space, inst.group, inst.quiver
    c, t = G.index("c"), G.index("t")
    x01, x12, x40 = (Q.arrow_id(x) for x in ("x01", "x12", "x40"))
    # (x01 * c)(x01 * e) = x01 . ^c x01 * c = x01 x12 * c
    a = SkewElement(sp, {((0, (x01,)), c): ONE})
    b = SkewElement(sp, {((0, (x01,)), 0): ONE})
    assert a * b == SkewElement(sp, {((0, (x01, x12)), c): ONE})
    # ^t x01 = -x04: (x40 * t)(x01 * e) = -x40 x04 * t
    a = SkewElement(sp, {((4, (x40,)), t): ONE})
    x04 = Q.arrow_id("x04")
    assert a * b == SkewElement(sp, {((4, (x40, x04)), t): -ONE})
    # incomposable
    assert not (b * b)


def test_json_roundtrip(d10):
    inst, _ = d10
    rng = random.Random(3)
    a = random_element(inst, rng, 5)
    assert SkewElement.from_json(inst.space, a.to_json()) == a


@pytest.mark.parametrize("name", FIXTURES)
def test_canonical_form_roundtrip(name):
    inst, _ = load(name)
    rng = random.Random(11)
    for n in range(3):
        x = random_projected(inst, n, rng)
        assert expand_canonical(canonicalize(x, inst), inst) == x


def test_canonicalize_rejects_non_rep_endpoints(d10):
    inst, _ = d10
    x = SkewElement(inst.space, {((1, ()), 0): ONE})
    with pytest.raises(ValueError):
        canonicalize(x, inst)


def test_xi_rejects_unprojected(d10):
    inst, _ = d10
    # both cycles of W are based at vertex 0, so W is already fixed by e~
    assert e_tilde(inst) * potential_element(inst) * e_tilde(inst) == potential_element(inst)
    x = SkewElement.path(inst.space, (0, (inst.quiver.arrow_id("x01"),)))
    with pytest.raises(NotProjectedError):
        xi(x, inst)


@pytest.mark.parametrize("name,dims", [
    ("d10", [2, 4, 8, 16]),
    ("trivial", [3, 5, 9, 15]),
    ("z2swap", [1, 1, 1, 1]),
])
def test_graded_dimension_values(name, dims):
    inst, _ = load(name)
    assert [graded_dimension(inst, n) for n in range(4)] == dims


def test_graded_dimension_trivial_group_counts_paths():
    inst, _ = load("trivial")
    Q = inst.quiver
    for n in range(4):
        assert graded_dimension(inst, n) == sum(len(list(Q.paths_from(v, n))) for v in range(Q.num_vertices))


def test_render(d10):
    inst, _ = d10
    x = SkewElement.path(inst.space, (0, (0,)), inst.group.index("c"), 2)
    assert x.render() == "2 · x01 * c"
