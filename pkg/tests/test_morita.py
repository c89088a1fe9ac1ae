import json

import pytest

from conftest import FIXTURES, load
from skewmorita.cyclotomic import ONE, ZERO
from skewmorita.intertwiner import pairing
from skewmorita.linalg import CycMatrix, rank
from skewmorita.selftest import golden_dir
from skewmorita.skew import graded_dimension


def test_dihedral_quiver(d10):
    _, qg = d10
    assert qg.vertices == [(0, "chi0"), (0, "chi1")]
    assert len(qg.arrows) == 4
    assert qg.multiplicities() == {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert [a.label for a in qg.arrows] == [
        "f[0,chi0->0,chi0]#0", "f[0,chi0->0,chi1]#0", "f[0,chi1->0,chi0]#0", "f[0,chi1->0,chi1]#0"]


def test_trivial_group_gives_the_same_quiver():
    inst, qg = load("trivial")
    Q = inst.quiver
    assert len(qg.vertices) == Q.num_vertices
    edges = sorted((a.source, a.target) for a in Q.arrows)
    assert sorted((qg.vertices[a.source][0], qg.vertices[a.target][0]) for a in qg.arrows) == edges


def test_swap_gives_one_loop():
    _, qg = load("z2swap")
    assert len(qg.vertices) == 1 and len(qg.arrows) == 1
    assert qg.arrows[0].source == qg.arrows[0].target == 0


@pytest.mark.parametrize("name,counts", [
    ("s3", {("triv", "std"): 1, ("sign", "std"): 1, ("std", "triv"): 1, ("std", "sign"): 1,
            ("std", "std"): 1}),
])
def test_mckay_quiver_of_s3(name, counts):
    _, qg = load(name)
    got = {(qg.vertices[s][1], qg.vertices[t][1]): c for (s, t), c in qg.multiplicities().items()}
    assert got == counts


@pytest.mark.parametrize("name", FIXTURES)
def test_gram_matrices_are_invertible_and_duals_biorthogonal(name):
    _, qg = load(name)
    for (s, t), sp in qg.spaces.items():
        n = len(sp["m_basis"])
        if n:
            assert rank(sp["gram"]) == n
        arrows = [a for a in qg.arrows if (a.source, a.target) == (s, t)]
        assert len(arrows) == n
        gram = CycMatrix(n, n, [pairing(a.f, b.dual) for a in arrows for b in arrows])
        assert gram == CycMatrix.identity(n) if n else True


@pytest.mark.parametrize("name", FIXTURES)
def test_graded_dimension_identity(name):
    inst, qg = load(name)
    for n in range(4):
        assert sum(1 for _ in qg.paths(n)) == graded_dimension(inst, n)


def test_path_counts(d10):
    _, qg = d10
    n, paths = qg.count_paths(0)
    assert n == 2 and paths == [(0, ()), (1, ())]
    assert qg.count_paths(5)[0] == 64
    for s in range(2):
        for t in range(2):
            assert qg.count_paths(5, s, t)[0] == 16
    _, one = load("z2swap")
    assert one.count_paths(7)[0] == 1


def test_lazy_path_values(d10):
    inst, qg = d10
    for k, (i, U) in enumerate(qg.vertices):
        assert qg.skew_value((k, ())).terms == {((i, ()), g): c for g, c in inst.idempotents[(i, U)].coeffs.items()}


def test_exports(d10):
    _, qg = d10
    dot = qg.to_dot()
    assert dot.count(" -> q") == 4
    doc = json.loads(qg.dumps())
    assert len(doc["arrows"]) == 4 and len(doc["vertices"]) == 2
    assert qg.dumps() + "\n" == (golden_dir() / "d10_reduce.json").read_text()
