"""Invariant suites run by ``skewmorita selftest``.

Each suite returns a :class:`SuiteResult`; a failing suite carries the
first offending datum in ``detail``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cyclotomic import ONE, ZERO, Cyc, cyclotomic_polynomial, totient, zeta
from .groups import GroupValidationError, build_group
from .instance import load_instance_file
from .intertwiner import (circledast, fast_pairing_terms, pairing, pairing_fast,
                          xi)
from .morita import QGQuiver, build_qg
from .reduce import transport, transport_potential, verify_roundtrip
from .skew import SkewElement, e_tilde, graded_dimension, potential_element

__all__ = ["SuiteResult", "run_selftest", "fixture_dir", "golden_dir", "check_dihedral_terms",
           "random_projected", "random_combo"]


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"[{tag}] {self.name}" + (f": {self.detail}" if self.detail else "")


def fixture_dir() -> Path:
    return Path(str(resources.files("skewmorita") / "fixtures"))


def golden_dir() -> Path:
    return fixture_dir() / "golden"


# -- random data shared with the test-suite -------------------------------

def random_cyc(rng: random.Random, n: int) -> Cyc:
    return Cyc.from_coeffs(n, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(totient(n))])


def random_projected(inst, n: int, rng: random.Random, terms: int = 3) -> SkewElement:
    """e~ (sum of random p*g) e~ with p of length n between orbit representatives."""
    Q, G, orb = inst.quiver, inst.group, inst.orbits
    reps = set(orb.orbit_reps)
    raw: dict = {}
    for _ in range(terms):
        i = rng.choice(orb.orbit_reps)
        paths = [p for p in Q.paths_from(i, n) if orb.orbit_of[Q.end(p)][0] in reps]
        if not paths:
            continue
        p = rng.choice(paths)
        end = Q.end(p)
        rep, w = orb.orbit_of[end]
        # g with g.rep = end, times a random stabilizer element
        h = rng.choice(orb.stabilizers[rep].elements)
        g = G.mul[w][h]
        raw[(p, g)] = raw.get((p, g), ZERO) + Cyc.rational(rng.randint(-3, 3) or 1)
    et = e_tilde(inst)
    return et * SkewElement(inst.space, raw) * et


def random_combo(qg: QGQuiver, path, rng: random.Random, dual: bool = False):
    """Random combination of f_gamma (or phi_gamma) over paths parallel to ``path``."""
    iseq = qg.path_iseq(path)
    out = None
    for q in qg.paths(len(path[1]), path[0], qg.path_end(path)):
        if qg.path_iseq(q) != iseq:
            continue
        c = Cyc.rational(rng.randint(-2, 2))
        if q == path and not c:
            c = ONE
        if not c:
            continue
        x = (qg.phi_gamma(q) if dual else qg.f_gamma(q)).scale(c)
        out = x if out is None else out + x
    return out


def random_path(qg: QGQuiver, n: int, rng: random.Random, start: int | None = None):
    starts = [start] if start is not None else list(range(len(qg.vertices)))
    for _ in range(50):
        s = rng.choice(starts)
        v, arrows = s, []
        for _ in range(n):
            out = qg.out_arrows[v]
            if not out:
                break
            a = rng.choice(out)
            arrows.append(a)
            v = qg.arrows[a].target
        if len(arrows) == n:
            return (s, tuple(arrows))
    return None


# -- suites ------------------------------------------------------------------

def suite_field(rng: random.Random) -> SuiteResult:
    for n in (1, 3, 4, 5, 6, 8, 10, 12):
        for _ in range(20):
            a, b, c = (random_cyc(rng, n) for _ in range(3))
            if (a + b) * c != a * c + b * c or (a * b) * c != a * (b * c) or a * b != b * a:
                return SuiteResult("field axioms", False, f"ring law fails in Q(zeta_{n}) for {a}, {b}, {c}")
            if a and a * a.inverse() != ONE:
                return SuiteResult("field axioms", False, f"inverse fails for {a}")
        # Phi_n(zeta_n) = 0 and the product of Phi_d over d | n is x^n - 1
        z = zeta(n)
        val = ZERO
        for k, coef in enumerate(cyclotomic_polynomial(n)):
            val = val + z ** k * coef
        if val:
            return SuiteResult("field axioms", False, f"Phi_{n}(zeta_{n}) = {val}")
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                phi = cyclotomic_polynomial(d)
                new = [0] * (len(prod) + len(phi) - 1)
                for i, x in enumerate(prod):
                    for j, y in enumerate(phi):
                        new[i + j] += x * y
                prod = new
        if prod != [-1] + [0] * (n - 1) + [1]:
            return SuiteResult("field axioms", False, f"prod Phi_d != x^{n} - 1")
    return SuiteResult("field axioms", True)


def suite_groups(instances) -> SuiteResult:
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    try:
        build_group(bad)
        return SuiteResult("group validation", False, "non-group table accepted")
    except GroupValidationError:
        pass
    for inst in instances:
        G, orb = inst.group, inst.orbits
        for i in orb.orbit_reps:
            size = len(orb.orbit(i))
            if size * len(orb.stabilizers[i].elements) != G.order:
                return SuiteResult("group validation", False, f"{inst.name}: orbit-stabilizer fails at vertex {i}")
        if sum(len(orb.orbit(i)) for i in orb.orbit_reps) != inst.quiver.num_vertices:
            return SuiteResult("group validation", False, f"{inst.name}: orbits do not partition the vertices")
    return SuiteResult("group validation", True)


def suite_idempotents(instances) -> SuiteResult:
    for inst in instances:
        G = inst.group
        for (i, lab), eps in inst.idempotents.items():
            if eps.mul(G, eps) != eps:
                return SuiteResult("primitive idempotents", False, f"{inst.name}: eps_{lab} not idempotent")
            if inst.modules[(i, lab)].dim != next(U.dim for U in inst.irreps[i] if U.label == lab):
                return SuiteResult("primitive idempotents", False, f"{inst.name}: dim kH eps_{lab} != dim {lab}")
    return SuiteResult("primitive idempotents", True)


def suite_product_identity(qgs) -> SuiteResult:
    for qg in qgs:
        for a in qg.arrows:
            for b in qg.arrows:
                if a.target != b.source:
                    continue
                lhs = circledast(b.f, a.f).skew_value()
                rhs = a.f.skew_value() * b.f.skew_value()
                if lhs != rhs:
                    return SuiteResult("product identity (f'⊛f)(eps) = f(eps)f'(eps)", False,
                                       f"{qg.inst.name}: {a.label} then {b.label}")
    return SuiteResult("product identity (f'⊛f)(eps) = f(eps)f'(eps)", True)


def suite_assoc(qgs, rng, trials: int) -> SuiteResult:
    name = "⊛ associativity"
    for qg in qgs:
        for _ in range(trials):
            p = random_path(qg, 3, rng)
            if p is None:
                break
            s, (a1, a2, a3) = p
            v1, v2 = qg.arrows[a1].target, qg.arrows[a2].target
            f1 = random_combo(qg, (s, (a1,)), rng)
            f2 = random_combo(qg, (v1, (a2,)), rng)
            f3 = random_combo(qg, (v2, (a3,)), rng)
            if circledast(circledast(f3, f2), f1) != circledast(f3, circledast(f2, f1)):
                return SuiteResult(name, False, f"{qg.inst.name}: {qg.render_path(p)}")
    return SuiteResult(name, True)


def suite_pairing_compat(qgs, rng, trials: int) -> SuiteResult:
    name = "pairing compatibility"
    for qg in qgs:
        for _ in range(trials):
            n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
            p1 = random_path(qg, n1, rng)
            if p1 is None:
                break
            p2 = random_path(qg, n2, rng, start=qg.path_end(p1))
            if p2 is None:
                continue
            f1, f2 = random_combo(qg, p1, rng), random_combo(qg, p2, rng)
            g1, g2 = random_combo(qg, p1, rng, dual=True), random_combo(qg, p2, rng, dual=True)
            lhs = pairing(circledast(f2, f1), circledast(g1, g2))
            rhs = pairing(f2, g2) * pairing(f1, g1)
            if lhs != rhs:
                return SuiteResult(name, False, f"{qg.inst.name}: {lhs} != {rhs}")
    return SuiteResult(name, True)


def suite_biorthogonal(qgs, max_len: int = 3) -> SuiteResult:
    name = "biorthogonality (f_gamma|phi_gamma') = delta"
    for qg in qgs:
        for n in range(max_len + 1):
            paths = list(qg.paths(n))
            for p in paths:
                for q in paths:
                    if p[0] != q[0] or qg.path_end(p) != qg.path_end(q):
                        continue
                    if qg.path_iseq(p) != qg.path_iseq(q):
                        continue
                    val = pairing(qg.f_gamma(p), qg.phi_gamma(q))
                    if val != (ONE if p == q else ZERO):
                        return SuiteResult(name, False, f"{qg.inst.name}: ({qg.render_path(p)} | "
                                                        f"{qg.render_path(q)}) = {val}")
    return SuiteResult(name, True)


def suite_graded(qgs, max_len: int = 3) -> SuiteResult:
    name = "graded dimensions"
    for qg in qgs:
        for n in range(max_len + 1):
            a = sum(1 for _ in qg.paths(n))
            b = graded_dimension(qg.inst, n)
            if a != b:
                return SuiteResult(name, False, f"{qg.inst.name}: degree {n}: {a} paths, dimension {b}")
    return SuiteResult(name, True)


def suite_fast(qgs, rng) -> SuiteResult:
    name = "fast/slow pairing agreement"
    used = 0
    for qg in qgs:
        if not qg.inst.monomial_abelian:
            continue
        used += 1
        for (s, t), sp in qg.spaces.items():
            for g in sp["m_basis"]:
                for phi in sp["dual_basis"]:
                    if pairing_fast(g, phi) != pairing(g, phi):
                        return SuiteResult(name, False, f"{qg.inst.name}: arrow space {s}->{t}")
        if qg.inst.potential is not None:
            if transport_potential(qg, method="fast") != transport_potential(qg, method="slow"):
                return SuiteResult(name, False, f"{qg.inst.name}: potential transport differs")
        for n in range(3):
            th = random_projected(qg.inst, n, rng)
            if transport(th, qg, method="fast") != transport(th, qg, method="slow"):
                return SuiteResult(name, False, f"{qg.inst.name}: random degree {n} element")
    return SuiteResult(name, True, "" if used else "no fixture satisfies the monomial abelian setting")


def suite_roundtrip(qgs, rng, per_degree: int) -> SuiteResult:
    name = "round trip"
    for qg in qgs:
        for n in range(4):
            for _ in range(per_degree):
                th = random_projected(qg.inst, n, rng)
                res = verify_roundtrip(th, transport(th, qg), qg)
                if not res:
                    return SuiteResult(name, False, f"{qg.inst.name}: {res.report(qg)}")
    return SuiteResult(name, True)


def check_dihedral_terms(qg: QGQuiver, golden: dict) -> list[str]:
    """Compare the fast-pairing terms of the dihedral example with the golden file."""
    inst = qg.inst
    G, Q, Qd = inst.group, inst.quiver, inst.dual_space.quiver
    et = e_tilde(inst)
    theta = et * potential_element(inst) * et
    comps = xi(theta, inst)
    problems = []
    n = golden["length"]
    # vertex k of the reduced quiver is (0, rho_k), so r + w = s + t
    for s, (i, U) in enumerate(qg.vertices):
        for t, (j, V) in enumerate(qg.vertices):
            parity = (s + t) % 2
            f = comps.get(((i,) * (n + 1), U, V))
            for path in qg.paths(n, s, t):
                where = f"({U},{V}) {qg.render_path(path)}"
                want = Cyc.from_json(golden["pairing"][str(parity)])
                got = pairing(f, qg.phi_gamma(path)) if f is not None else ZERO
                if got != want:
                    problems.append(f"{where}: pairing expected {want} got {got}")
                if f is None:
                    continue
                terms = fast_pairing_terms(f, qg.phi_gamma(path))
                if len(terms) != len(golden["columns"]):
                    problems.append(f"{where}: {len(terms)} terms, expected {len(golden['columns'])}")
                    continue
                for col, term in zip(golden["columns"], terms):
                    got_row = {
                        "path": [Q.arrows[a].label for a in term.path[1]],
                        "ys": [G.name(y) for y in term.ys],
                        "dual_path": [Qd.arrows[a].label for a in term.dual_path[1]],
                        "chi": term.chi,
                        "beta": term.beta,
                        "h0": G.name(term.h0),
                        "chi_U": term.chi_U,
                    }
                    for key, want in col.items():
                        if key in ("chi", "beta", "chi_U"):
                            want = Cyc.from_json(want[str(parity)] if isinstance(want, dict) else want)
                        if got_row[key] != want:
                            problems.append(f"{where}: {key} expected {want} got {got_row[key]}")
    comb = transport_potential(qg)
    expect = golden["transport"]
    nonzero = [c for c in comb.terms.values()]
    if len(nonzero) != expect["nonzero_paths"]:
        problems.append(f"transport: {len(nonzero)} nonzero paths, expected {expect['nonzero_paths']}")
    bad = [c for c in nonzero if c != Cyc.from_json(expect["coeff"])]
    if bad:
        problems.append(f"transport: coefficient {bad[0]} differs from {expect['coeff']}")
    return problems


def suite_golden(fixtures: Path, golden: Path) -> SuiteResult:
    name = "dihedral golden values"
    gfile = golden / "d10_pairing_terms.json"
    ffile = fixtures / "d10.json"
    if not gfile.exists() or not ffile.exists():
        return SuiteResult(name, True, "no golden file present, skipped")
    qg = build_qg(load_instance_file(ffile))
    problems = check_dihedral_terms(qg, json.loads(gfile.read_text()))
    rfile = golden / "d10_reduce.json"
    if rfile.exists() and qg.dumps() + "\n" != rfile.read_text():
        problems.append("reduce --json output differs from d10_reduce.json")
    if problems:
        return SuiteResult(name, False, "; ".join(problems[:5]))
    return SuiteResult(name, True)


def run_selftest(fixtures: Path | None = None, golden: Path | None = None, seed: int = 0,
                 trials: int = 20) -> list[SuiteResult]:
    fixtures = Path(fixtures) if fixtures is not None else fixture_dir()
    golden = Path(golden) if golden is not None else fixtures / "golden"
    rng = random.Random(seed)
    files = sorted(fixtures.glob("*.json"))
    instances = [load_instance_file(f) for f in files]
    results = [suite_field(rng)]
    if not instances:
        results.append(SuiteResult("instances", True, f"no fixtures found in {fixtures}; nothing else to check"))
        return results
    qgs = [build_qg(inst) for inst in instances]
    results += [
        suite_groups(instances),
        suite_idempotents(instances),
        suite_product_identity(qgs),
        suite_assoc(qgs, rng, trials),
        suite_pairing_compat(qgs, rng, trials),
        suite_biorthogonal(qgs),
        suite_graded(qgs),
        suite_fast(qgs, rng),
        suite_roundtrip(qgs, rng, max(1, trials // 4)),
        suite_golden(fixtures, golden),
    ]
    return results
