"""Induced modules M(i;V), intertwiners, the circledast product and pairings.

An element of M(i_0..i_n; V) is stored in coordinates over the basis
``(path, l)``: ``path`` runs over the paths from i_0 whose t-th vertex lies
in the orbit of i_t, and ``l`` indexes the echelon basis v_l of
V = kG_{i_n}.eps_V.  Inside T_S(M)*G the basis vector ``(path, l)`` is
``path * (Y v_l)`` where Y = y_1...y_n is the coset-rep product read off
from the vertices of the path.  The same code serves the dual arrow
space, where paths run over dual arrows.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cyclotomic import ONE, ZERO, Cyc
from .groups import chain_factorize, vertex_chain
from .linalg import CycMatrix
from .quiver import ArrowSpace
from .reps import CyclicModule, GroupAlgElem, ModuleRep, hom_basis
from .skew import NotProjectedError, SkewElement, e_tilde

__all__ = [
    "InducedModule",
    "Intertwiner",
    "PairingError",
    "FastTerm",
    "build_induced",
    "unit_intertwiner",
    "circledast",
    "pairing",
    "pairing_fast",
    "fast_pairing_terms",
    "hom_intertwiners",
    "xi",
    "H0_INVERSE",
]

# The tail h0 acts on the U-part through its inverse.  This follows from
# unwinding the adjunction that defines the pairing; with ^{h0} instead the
# pairing is no longer compatible with circledast once stabilizers have
# characters of order > 2.
H0_INVERSE = True


class PairingError(ValueError):
    pass


class InducedModule:
    def __init__(self, inst, space: ArrowSpace, iseq: Sequence[int], V: CyclicModule):
        self.inst = inst
        self.space = space
        self.iseq = tuple(iseq)
        self.V = V
        self.n = len(self.iseq) - 1
        G, orbits, Q = inst.group, inst.orbits, space.quiver
        self.stabs = [orbits.stabilizers[i] for i in self.iseq]
        if V.stab is not self.stabs[-1]:
            raise ValueError("module V does not live on the last vertex of the sequence")
        self.paths = []
        self.chain: dict = {}
        for p in Q.paths_from(self.iseq[0], self.n):
            verts = Q.vertices_of(p)
            if all(orbits.orbit_of[v][0] == i for v, i in zip(verts, self.iseq)):
                _, ys, Y = vertex_chain(G, orbits, verts)
                self.paths.append(p)
                self.chain[p] = (ys, Y)
        self.basis = [(p, l) for p in self.paths for l in range(V.dim)]
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._action: dict[int, CycMatrix] = {}

    @property
    def source_vertex(self) -> int:
        return self.iseq[0]

    def __repr__(self) -> str:
        return f"InducedModule(iseq={self.iseq}, V={self.V.label}, dim={self.dim})"

    def to_skew(self, vec: Mapping) -> SkewElement:
        G = self.inst.group
        out: dict = {}
        for (p, l), c in vec.items():
            Y = self.chain[p][1]
            row = G.mul[Y]
            for h, x in self.V.basis[l].coeffs.items():
                k = (p, row[h])
                out[k] = out.get(k, ZERO) + c * x
        return SkewElement(self.space, out)

    def from_skew(self, elem: SkewElement | Mapping) -> dict:
        terms = elem.terms if isinstance(elem, SkewElement) else elem
        G = self.inst.group
        stab = self.stabs[-1]
        parts: dict = {}
        for (p, g), c in terms.items():
            if p not in self.chain:
                raise ValueError(f"path {self.space.quiver.render_path(p)} is not in {self!r}")
            h = G.mul[G.inv[self.chain[p][1]]][g]
            if h not in stab:
                raise ValueError("group part does not lie in the expected coset")
            parts.setdefault(p, {})[h] = parts.setdefault(p, {}).get(h, ZERO) + c
        out = {}
        for p, d in parts.items():
            for l, x in enumerate(self.V.coords(GroupAlgElem(d))):
                if x:
                    out[(p, l)] = x
        return out

    def act(self, g: int, vec: Mapping) -> dict:
        """Left action of g in G_{i_0}."""
        G = self.inst.group
        terms: dict = {}
        for (p, l), c in vec.items():
            gY = G.mul[g][self.chain[p][1]]
            for q, chi in self.space.act_path(g, p).items():
                for h, x in self.V.basis[l].coeffs.items():
                    k = (q, G.mul[gY][h])
                    terms[k] = terms.get(k, ZERO) + c * chi * x
        return self.from_skew({k: v for k, v in terms.items() if v})

    def action_matrix(self, g: int) -> CycMatrix:
        m = self._action.get(g)
        if m is None:
            cols = [self.act(g, {b: ONE}) for b in self.basis]
            entries = [ZERO] * (self.dim * self.dim)
            for j, col in enumerate(cols):
                for b, c in col.items():
                    entries[self.index[b] * self.dim + j] = c
            m = CycMatrix(self.dim, self.dim, entries)
            self._action[g] = m
        return m

    def as_module(self) -> ModuleRep:
        return ModuleRep(self.dim, {h: self.action_matrix(h) for h in self.stabs[0].elements})


def build_induced(inst, iseq: Sequence[int], V: CyclicModule | str, dual: bool = False) -> InducedModule:
    """Cached InducedModule for the orbit sequence ``iseq`` and module V."""
    if isinstance(V, str):
        V = inst.modules[(iseq[-1], V)]
    key = (tuple(iseq), V.label, dual)
    cache = inst._induced
    hit = cache.get(key)
    if hit is None:
        space = inst.dual_space if dual else inst.space
        hit = InducedModule(inst, space, iseq, V)
        cache[key] = hit
    return hit


class Intertwiner:
    """A kG_{i_0}-map U -> M(i; V), stored as one sparse column per U-basis vector."""

    def __init__(self, U: CyclicModule, W: InducedModule, cols: Sequence[Mapping]):
        if U.stab is not W.stabs[0]:
            raise ValueError("source module does not live on the first vertex of the sequence")
        if len(cols) != U.dim:
            raise ValueError("need one column per basis vector of U")
        self.U = U
        self.W = W
        self.cols = tuple({k: v for k, v in c.items() if v} for c in cols)

    @classmethod
    def from_matrix(cls, U: CyclicModule, W: InducedModule, F: CycMatrix) -> Intertwiner:
        cols = []
        for k in range(U.dim):
            cols.append({W.basis[r]: F[r, k] for r in range(W.dim) if F[r, k]})
        return cls(U, W, cols)

    @property
    def iseq(self) -> tuple[int, ...]:
        return self.W.iseq

    @property
    def V(self) -> CyclicModule:
        return self.W.V

    @property
    def degree(self) -> int:
        return self.W.n

    @property
    def dual(self) -> bool:
        return self.W.space is not self.W.inst.space

    @property
    def key(self):
        return (self.iseq, self.U.label, self.V.label)

    def __repr__(self) -> str:
        return (f"Intertwiner({self.U.label} -> M{self.iseq};{self.V.label}, "
                f"{sum(len(c) for c in self.cols)} coords)")

    def _compatible(self, other: Intertwiner) -> None:
        if self.W is not other.W or self.U is not other.U:
            raise ValueError("intertwiners live in different hom spaces")

    def __add__(self, other: Intertwiner) -> Intertwiner:
        self._compatible(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            d = dict(a)
            for k, v in b.items():
                d[k] = d.get(k, ZERO) + v
            cols.append(d)
        return Intertwiner(self.U, self.W, cols)

    def __sub__(self, other: Intertwiner) -> Intertwiner:
        return self + other.scale(-ONE)

    def scale(self, c) -> Intertwiner:
        return Intertwiner(self.U, self.W, [{k: c * v for k, v in col.items()} for col in self.cols])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Intertwiner):
            return NotImplemented
        return self.W is other.W and self.U is other.U and self.cols == other.cols

    def __hash__(self):
        return id(self)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def value(self, x: GroupAlgElem | Sequence[Cyc]) -> dict:
        """f(x) in coordinates of M(i; V); x is an element of U or its coordinates."""
        coords = self.U.coords(x) if isinstance(x, GroupAlgElem) else list(x)
        out: dict = {}
        for c, col in zip(coords, self.cols):
            if c:
                for k, v in col.items():
                    out[k] = out.get(k, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def skew_value(self, x: GroupAlgElem | None = None) -> SkewElement:
        """f(x) as an element of T_S(M)*G; defaults to x = eps_U."""
        x = self.U.idem if x is None else x
        return self.W.to_skew(self.value(x))

    def is_equivariant(self) -> bool:
        U, W = self.U, self.W
        for h in U.stab.elements:
            A = U.action[h]
            for k in range(U.dim):
                lhs = self.value(A.col(k))
                if lhs != W.act(h, self.cols[k]):
                    return False
        return True

    def serialize(self):
        """List of (U index, ys as names, arrow labels, V index, scalar)."""
        G, Q = self.W.inst.group, self.W.space.quiver
        out = []
        for k, col in enumerate(self.cols):
            for (p, l), c in sorted(col.items(), key=lambda kv: self.W.index[kv[0]]):
                ys = [G.name(y) for y in self.W.chain[p][0]]
                out.append([k, ys, [Q.arrows[a].label for a in p[1]], l, c.to_json()])
        return out

    def render(self) -> str:
        G, Q = self.W.inst.group, self.W.space.quiver
        lines = []
        for k, col in enumerate(self.cols):
            terms = []
            for (p, l), c in sorted(col.items(), key=lambda kv: self.W.index[kv[0]]):
                Y = self.W.chain[p][1]
                terms.append(f"({c}) {Q.render_path(p)} ⊗ {G.name(Y)}·v{l}")
            lines.append(f"u{k} ↦ " + (" + ".join(terms) if terms else "0"))
        return "\n".join(lines)


def unit_intertwiner(inst, i: int, U: str | CyclicModule, dual: bool = False) -> Intertwiner:
    Umod = inst.modules[(i, U)] if isinstance(U, str) else U
    W = build_induced(inst, (i,), Umod, dual=dual)
    return Intertwiner(Umod, W, [{((i, ()), k): ONE} for k in range(Umod.dim)])


def circledast(f2: Intertwiner, f1: Intertwiner) -> Intertwiner:
    """``f2 ⊛ f1``: f1 runs first (U -> M(i;V)), then f2 (V -> M(i';W))."""
    if f1.V is not f2.U:
        raise ValueError("endpoint mismatch: target module of f1 is not the source of f2")
    if f1.W.space is not f2.W.space:
        raise ValueError("cannot compose intertwiners over different arrow spaces")
    inst = f1.W.inst
    G = inst.group
    space = f1.W.space
    iseq = f1.iseq + f2.iseq[1:]
    W = build_induced(inst, iseq, f2.V, dual=f1.dual)
    cols = []
    for col in f1.cols:
        out: dict = {}
        for (p, l), c in col.items():
            Y = f1.W.chain[p][1]
            for (p2, l2), c2 in f2.cols[l].items():
                cc = c * c2
                for q, chi in space.act_path(Y, p2).items():
                    k = ((p[0], p[1] + q[1]), l2)
                    out[k] = out.get(k, ZERO) + cc * chi
        cols.append(out)
    return Intertwiner(f1.U, W, cols)


def _check_pairable(f: Intertwiner, phi: Intertwiner) -> None:
    if f.dual or not phi.dual:
        raise PairingError("pairing needs an M-side intertwiner and an M*-side intertwiner")
    if phi.iseq != tuple(reversed(f.iseq)):
        raise PairingError(f"orbit sequences do not match: {f.iseq} vs {phi.iseq}")
    if phi.U.stab is not f.V.stab or phi.V.stab is not f.U.stab:
        raise PairingError("endpoint modules live over different stabilizers")


def _schur_zero(f: Intertwiner, phi: Intertwiner) -> bool:
    # distinct irreps of the same stabilizer at an endpoint force (f|phi) = 0
    return phi.U is not f.V or phi.V is not f.U


def _pairing_vector(f: Intertwiner, phi: Intertwiner, k: int) -> list[Cyc]:
    """Right-hand side of the pairing formula applied to u_k, in U coordinates."""
    inst = f.W.inst
    G = inst.group
    U = f.U
    space = inst.space
    stabs = f.W.stabs
    acc = [ZERO] * U.dim
    for (p, l), c in f.cols[k].items():
        ys, Y = f.W.chain[p]
        _, h0 = chain_factorize(G, ys, stabs)
        hh = G.inv[h0] if H0_INVERSE else h0
        A = U.action[hh]
        dual_col = phi.cols[l]
        for q, chi in space.act_path(G.inv[Y], p).items():
            # the dual path q* starts at the end of q and reverses its arrows
            qstar = (space.quiver.end(q), tuple(reversed(q[1])))
            for m in range(U.dim):
                d = dual_col.get((qstar, m))
                if d:
                    s = c * chi * d
                    for r in range(U.dim):
                        a = A[r, m]
                        if a:
                            acc[r] = acc[r] + s * a
    return acc


def pairing(f: Intertwiner, phi: Intertwiner) -> Cyc:
    """The scalar (f|phi), computed on every basis vector of U and cross-checked."""
    _check_pairable(f, phi)
    if _schur_zero(f, phi):
        return ZERO
    lam = None
    for k in range(f.U.dim):
        vec = _pairing_vector(f, phi, k)
        for r, x in enumerate(vec):
            if r != k and x:
                raise PairingError("pairing output is not proportional to the input vector")
        if lam is None:
            lam = vec[k]
        elif vec[k] != lam:
            raise PairingError("pairing scalar differs between basis vectors of U")
    return lam if lam is not None else ZERO


def pairing_scalar(f: Intertwiner, phi: Intertwiner) -> Cyc:
    """Same as pairing() but reads the scalar off the first basis vector only."""
    _check_pairable(f, phi)
    if _schur_zero(f, phi):
        return ZERO
    return _pairing_vector(f, phi, 0)[0]


@dataclass(frozen=True)
class FastTerm:
    path: tuple
    ys: tuple[int, ...]
    alpha: Cyc
    chi: Cyc
    moved_path: tuple
    dual_path: tuple
    beta: Cyc
    h0: int
    chi_U: Cyc

    @property
    def value(self) -> Cyc:
        return self.alpha * self.beta * self.chi * self.chi_U


def _fast_ok(f: Intertwiner, phi: Intertwiner) -> bool:
    inst = f.W.inst
    return (inst.space.monomial and f.U.dim == 1 and f.V.dim == 1
            and inst.group.is_abelian(f.U.stab.elements))


def fast_pairing_terms(f: Intertwiner, phi: Intertwiner) -> list[FastTerm]:
    """Per-path records of the combinatorial pairing for one-dimensional U, V.

    alpha is the coefficient of ``path ⊗ Y eps_V`` in f(eps_U) and beta the
    coefficient of ``dual path ⊗ X eps_U`` in phi(eps_V).
    """
    _check_pairable(f, phi)
    if _schur_zero(f, phi):
        raise PairingError("endpoint irreps differ; the pairing is zero and has no term table")
    if not _fast_ok(f, phi):
        raise PairingError("combinatorial pairing needs one-dimensional modules and a monomial action")
    inst = f.W.inst
    G, space = inst.group, inst.space
    U, V = f.U, f.V
    iu, iv = U.idem_coords[0], V.idem_coords[0]
    ratio_f, ratio_phi = iu / iv, iv / iu
    out = []
    for (p, _), c in sorted(f.cols[0].items(), key=lambda kv: f.W.index[kv[0]]):
        ys, Y = f.W.chain[p]
        _, h0 = chain_factorize(G, ys, f.W.stabs)
        (q, chi), = space.act_path(G.inv[Y], p).items()
        qstar = (space.quiver.end(q), tuple(reversed(q[1])))
        beta = phi.cols[0].get((qstar, 0), ZERO) * ratio_phi
        hh = G.inv[h0] if H0_INVERSE else h0
        out.append(FastTerm(p, ys, c * ratio_f, chi, q, qstar, beta, h0, U.action[hh][0, 0]))
    return out


def pairing_fast(f: Intertwiner, phi: Intertwiner) -> Cyc:
    """Combinatorial pairing; falls back to the general one outside its setting."""
    _check_pairable(f, phi)
    if _schur_zero(f, phi):
        return ZERO
    if not _fast_ok(f, phi):
        warnings.warn("combinatorial pairing unavailable here, using the general pairing", stacklevel=2)
        return pairing(f, phi)
    acc = ZERO
    for t in fast_pairing_terms(f, phi):
        if t.alpha and t.beta:
            acc = acc + t.value
    return acc


def hom_intertwiners(inst, i: int, U: str, jseq: Sequence[int], V: str, dual: bool = False) -> list[Intertwiner]:
    """Echelon basis of Hom_{G_i}(U, M(i, jseq...; V)) as intertwiners."""
    Umod = inst.modules[(i, U)]
    W = build_induced(inst, (i,) + tuple(jseq), inst.modules[(jseq[-1], V)], dual=dual)
    mats = hom_basis(Umod, W.as_module(), Umod.stab.elements)
    return [Intertwiner.from_matrix(Umod, W, F) for F in mats]


def xi(theta: SkewElement, inst, check: bool = True) -> dict:
    """Split theta into intertwiners keyed by (orbit sequence, U, V).

    For every pair of vertices (i,U), (j,V) of the reduced quiver the map is
    u -> u.(e_i*eps_U).theta.(e_j*eps_V), grouped by the orbit sequence of
    the paths that occur.
    """
    space, G = inst.space, inst.group
    if theta.space is not space:
        raise ValueError("element does not live over the instance's arrow space")
    if check:
        et = e_tilde(inst)
        if et * theta * et != theta:
            raise NotProjectedError("element is not fixed by e~ on both sides")
    out: dict = {}
    for (i, Ul) in inst.qg_vertices:
        Umod = inst.modules[(i, Ul)]
        left_basis = [SkewElement.from_group_alg(space, i, b) for b in Umod.basis]
        for (j, Vl) in inst.qg_vertices:
            right = SkewElement.from_group_alg(space, j, inst.idempotents[(j, Vl)])
            tail = theta * right
            if not tail:
                continue
            images = [lb * tail for lb in left_basis]
            groups: dict = {}
            for k, img in enumerate(images):
                for (p, g), c in img.terms.items():
                    groups.setdefault(p, {}).setdefault(k, {})[(p, g)] = c
            by_seq: dict = {}
            for p, per_k in groups.items():
                iseq = vertex_chain(G, inst.orbits, space.quiver.vertices_of(p))[0]
                if iseq[-1] != j:
                    raise ValueError("path does not end in the expected orbit")
                slot = by_seq.setdefault(iseq, [dict() for _ in range(Umod.dim)])
                for k, terms in per_k.items():
                    slot[k].update(terms)
            Vmod = inst.modules[(j, Vl)]
            for iseq, per_k in sorted(by_seq.items()):
                W = build_induced(inst, iseq, Vmod)
                cols = [W.from_skew(t) for t in per_k]
                f = Intertwiner(Umod, W, cols)
                if not f.is_zero():
                    out[(iseq, Ul, Vl)] = f
    return out
