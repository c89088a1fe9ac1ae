"""Brute-force arithmetic in the skew group algebra T_S(M)*G.

Elements are sparse sums of ``path * g`` with the product
``(u*g)(u'*g') = (u . ^g u') * gg'``; paths that do not compose multiply
to zero.  This module is the oracle every faster computation is checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .cyclotomic import ONE, ZERO, Cyc
from .groups import vertex_chain
from .linalg import rank
from .quiver import ArrowSpace
from .reps import GroupAlgElem

__all__ = [
    "SkewElement",
    "CanonicalTerm",
    "NotProjectedError",
    "skew_mul",
    "e_tilde",
    "e_hat",
    "canonicalize",
    "expand_canonical",
    "xi",
    "graded_dimension",
    "potential_element",
]


class NotProjectedError(ValueError):
    """The element is not fixed by multiplication with e~ on both sides."""


class SkewElement:
    __slots__ = ("space", "terms")

    def __init__(self, space: ArrowSpace, terms: Mapping | None = None):
        self.space = space
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, space: ArrowSpace) -> SkewElement:
        return cls(space)

    @classmethod
    def vertex(cls, space: ArrowSpace, v: int, g: int = 0, coeff=ONE) -> SkewElement:
        return cls(space, {((v, ()), g): Cyc.from_json(coeff)})

    @classmethod
    def path(cls, space: ArrowSpace, path, g: int = 0, coeff=ONE) -> SkewElement:
        if not space.quiver.is_path(path):
            raise ValueError(f"not a path: {path!r}")
        return cls(space, {(tuple(path[:1]) + (tuple(path[1]),), g): Cyc.from_json(coeff)})

    @classmethod
    def from_group_alg(cls, space: ArrowSpace, v: int, x: GroupAlgElem) -> SkewElement:
        return cls(space, {((v, ()), g): c for g, c in x.coeffs.items()})

    # -- arithmetic ------------------------------------------------------

    def _same(self, other: SkewElement) -> None:
        if other.space is not self.space:
            raise ValueError("skew elements over different arrow spaces")

    def __add__(self, other: SkewElement) -> SkewElement:
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return SkewElement(self.space, out)

    def __sub__(self, other: SkewElement) -> SkewElement:
        return self + other.scale(-ONE)

    def __neg__(self) -> SkewElement:
        return self.scale(-ONE)

    def scale(self, c) -> SkewElement:
        c = Cyc.from_json(c)
        if not c:
            return SkewElement(self.space)
        return SkewElement(self.space, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: SkewElement) -> SkewElement:
        return skew_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(p[1]) for (p, _) in self.terms}

    def homogeneous(self, n: int) -> SkewElement:
        return SkewElement(self.space, {k: v for k, v in self.terms.items() if len(k[0][1]) == n})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0][1]), kv[0][0], kv[0][1]))

    # -- display / serialisation ------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        Q, G = self.space.quiver, self.space.group
        lines = [f"{c} · {Q.render_path(p)} * {G.name(g)}" for (p, g), c in self.sorted_terms()]
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"SkewElement({len(self.terms)} terms)"

    def to_json(self):
        Q, G = self.space.quiver, self.space.group
        out = []
        for ((start, arrows), g), c in self.sorted_terms():
            item = {"arrows": [Q.arrows[a].label for a in arrows], "group": G.name(g), "coeff": c.to_json()}
            if not arrows:
                item["vertex"] = start
            out.append(item)
        return {"terms": out}

    @classmethod
    def from_json(cls, space: ArrowSpace, doc) -> SkewElement:
        Q, G = space.quiver, space.group
        out: dict = {}
        for item in doc["terms"] if isinstance(doc, Mapping) else doc:
            arrows = tuple(Q.arrow_id(a) for a in item.get("arrows", ()))
            if arrows:
                start = Q.arrows[arrows[0]].source
            else:
                start = int(item["vertex"])
            path = (start, arrows)
            if not Q.is_path(path):
                raise ValueError(f"not a path: {item.get('arrows')}")
            key = (path, G.index(item.get("group", 0)))
            out[key] = out.get(key, ZERO) + Cyc.from_json(item.get("coeff", 1))
        return cls(space, out)


def skew_mul(a: SkewElement, b: SkewElement) -> SkewElement:
    a._same(b)
    space = a.space
    Q, G = space.quiver, space.group
    out: dict = {}
    by_group: dict[int, list] = {}
    for (p, g), c in a.terms.items():
        by_group.setdefault(g, []).append((p, Q.end(p), c))
    for g, lefts in by_group.items():
        mrow = G.mul[g]
        for (p2, g2), c2 in b.terms.items():
            gg = mrow[g2]
            for q, chi in space.act_path(g, p2).items():
                qs = q[0]
                for p, end, c in lefts:
                    if end == qs:
                        key = ((p[0], p[1] + q[1]), gg)
                        out[key] = out.get(key, ZERO) + c * c2 * chi
    return SkewElement(space, out)


def e_hat(inst, space: ArrowSpace | None = None) -> SkewElement:
    space = space or inst.space
    return SkewElement(space, {((i, ()), 0): ONE for i in inst.orbits.orbit_reps})


def e_tilde(inst, space: ArrowSpace | None = None) -> SkewElement:
    space = space or inst.space
    out = SkewElement(space)
    for (i, lab), eps in inst.idempotents.items():
        out = out + SkewElement.from_group_alg(space, i, eps)
    return out


def potential_element(inst, W=None) -> SkewElement:
    W = W if W is not None else inst.potential
    Q = inst.quiver
    if W is None:
        return SkewElement(inst.space)
    return SkewElement(inst.space, {((Q.arrows[cyc[0]].source, cyc), 0): c for cyc, c in W.terms.items()})


@dataclass(frozen=True)
class CanonicalTerm:
    iseq: tuple[int, ...]
    ys: tuple[int, ...]
    h: int
    path: tuple
    coeff: Cyc


def canonicalize(a: SkewElement, inst) -> list[CanonicalTerm]:
    """Rewrite every term as (orbit sequence, coset reps, tail) data.

    The right endpoint of ``p * g`` is ``g^-1 . end(p)``; both endpoints
    must be orbit representatives.
    """
    G, orbits, Q = inst.group, inst.orbits, a.space.quiver
    out = []
    for (p, g), c in a.sorted_terms():
        right = orbits.action[G.inv[g]][Q.end(p)]
        if orbits.orbit_of[p[0]][0] != p[0] or orbits.orbit_of[right][0] != right:
            raise ValueError(f"term {Q.render_path(p)} * {G.name(g)} is not between orbit representatives")
        iseq, ys, Y = vertex_chain(G, orbits, Q.vertices_of(p))
        h = G.mul[G.inv[Y]][g]
        assert h in orbits.stabilizers[iseq[-1]]
        out.append(CanonicalTerm(iseq, ys, h, p, c))
    return out


def expand_canonical(terms: Iterable[CanonicalTerm], inst, space=None) -> SkewElement:
    G = inst.group
    out: dict = {}
    for t in terms:
        Y = G.prod(*t.ys)
        key = (t.path, G.mul[Y][t.h])
        out[key] = out.get(key, ZERO) + t.coeff
    return SkewElement(space or inst.space, out)


def xi(theta: SkewElement, inst, check: bool = True):
    """The map taking theta in e~(T*G)e~ to a sum of intertwiners."""
    from .intertwiner import xi as _xi
    return _xi(theta, inst, check=check)


def graded_dimension(inst, n: int, by_block: bool = False):
    """dim of the degree-n part of e~ (T_S(M)*G) e~, by brute force.

    Each block (e*eps_U)(T*G)(e*eps_V) is spanned by the products with the
    basis elements ``p * g`` (p a path from i, g.j = end(p)); its
    dimension is the rank of those products.
    """
    space, G, Q = inst.space, inst.group, inst.quiver
    orbits = inst.orbits
    blocks = {}
    for (i, U) in inst.qg_vertices:
        left = SkewElement.from_group_alg(space, i, inst.idempotents[(i, U)])
        paths = list(Q.paths_from(i, n))
        for (j, V) in inst.qg_vertices:
            right = SkewElement.from_group_alg(space, j, inst.idempotents[(j, V)])
            vecs = []
            for p in paths:
                end = Q.end(p)
                for g in range(G.order):
                    if orbits.action[g][j] != end:
                        continue
                    x = left * SkewElement(space, {(p, g): ONE}) * right
                    if x:
                        vecs.append(x.terms)
            if not vecs:
                blocks[(i, U, j, V)] = 0
                continue
            keys = sorted({k for v in vecs for k in v}, key=lambda k: (k[0], k[1]))
            rows = [[v.get(k, ZERO) for k in keys] for v in vecs]
            blocks[(i, U, j, V)] = rank(rows)
    if by_block:
        return blocks
    return sum(blocks.values())
