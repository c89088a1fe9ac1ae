"""Quivers, group actions on arrows, dual actions and potentials.

A path is a pair ``(start_vertex, arrow_ids)``; the arrows compose left to
right, so ``target(a_k) == source(a_{k+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .cyclotomic import ONE, ZERO, Cyc
from .groups import ActionValidationError, Group

__all__ = [
    "Arrow",
    "Quiver",
    "ArrowSpace",
    "ActionValidationError",
    "Potential",
    "check_invariance",
    "path_end",
    "canonical_rotation",
]

Path = tuple  # (start, (a1, ..., an))


@dataclass(frozen=True)
class Arrow:
    id: int
    source: int
    target: int
    label: str


class Quiver:
    def __init__(self, num_vertices: int, arrows: Sequence[Arrow]):
        self.num_vertices = num_vertices
        self.arrows = tuple(arrows)
        for k, a in enumerate(self.arrows):
            if a.id != k:
                raise ValueError(f"arrow ids must be dense, arrow {a.label!r} has id {a.id}")
            for v in (a.source, a.target):
                if not 0 <= v < num_vertices:
                    raise ValueError(f"arrow {a.label!r} uses unknown vertex {v}")
        out = [[] for _ in range(num_vertices)]
        for a in self.arrows:
            out[a.source].append(a.id)
        self.out_arrows = tuple(tuple(x) for x in out)
        self._by_label = {a.label: a.id for a in self.arrows}
        if len(self._by_label) != len(self.arrows):
            raise ValueError("arrow labels must be distinct")

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Sequence[tuple[int, int, str]]) -> Quiver:
        return cls(num_vertices, [Arrow(k, s, t, lab) for k, (s, t, lab) in enumerate(edges)])

    def arrow_id(self, label) -> int:
        if isinstance(label, int):
            return label
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"unknown arrow {label!r}") from None

    def end(self, path: Path) -> int:
        start, arrows = path
        return self.arrows[arrows[-1]].target if arrows else start

    def is_path(self, path: Path) -> bool:
        v = path[0]
        for a in path[1]:
            if self.arrows[a].source != v:
                return False
            v = self.arrows[a].target
        return True

    def vertices_of(self, path: Path) -> tuple[int, ...]:
        start, arrows = path
        return (start,) + tuple(self.arrows[a].target for a in arrows)

    def paths_from(self, start: int, length: int) -> Iterator[Path]:
        """Depth-first enumeration in lexicographic arrow-id order."""
        def rec(v, acc):
            if len(acc) == length:
                yield (start, tuple(acc))
                return
            for a in self.out_arrows[v]:
                acc.append(a)
                yield from rec(self.arrows[a].target, acc)
                acc.pop()
        yield from rec(start, [])

    def render_path(self, path: Path) -> str:
        start, arrows = path
        if not arrows:
            return f"e{start}"
        return " ".join(self.arrows[a].label for a in arrows)

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in range(self.num_vertices):
            lines.append(f'  v{v} [label="{v}"];')
        for a in self.arrows:
            lines.append(f'  v{a.source} -> v{a.target} [label="{a.label}"];')
        lines.append("}")
        return "\n".join(lines)


def path_end(quiver: Quiver, path: Path) -> int:
    return quiver.end(path)


class ArrowSpace:
    """A quiver together with a linear G-action on its arrows.

    ``images[g][a]`` is a tuple of ``(b, coeff)`` with ``^g a = sum coeff*b``.
    """

    def __init__(self, quiver: Quiver, group: Group, vertex_action, images, validate: bool = True):
        self.quiver = quiver
        self.group = group
        self.vertex_action = tuple(tuple(p) for p in vertex_action)
        self.images = tuple(tuple(tuple((int(b), c) for b, c in img if c) for img in row)
                            for row in images)
        self._path_cache: dict = {}
        if validate:
            self.validate()
        self.monomial = all(len(img) == 1 for row in self.images for img in row)

    def validate(self) -> None:
        G, Q = self.group, self.quiver
        if len(self.images) != G.order:
            raise ActionValidationError("arrow action needs an entry for every group element")
        for g in range(G.order):
            if len(self.images[g]) != len(Q.arrows):
                raise ActionValidationError(f"arrow action of {G.name(g)} has the wrong length", (G.name(g),))
            act = self.vertex_action[g]
            for a in Q.arrows:
                img = self.images[g][a.id]
                if not img:
                    raise ActionValidationError(
                        f"{G.name(g)} sends arrow {a.label} to zero", (G.name(g), a.label))
                for b, _ in img:
                    arr = Q.arrows[b]
                    if arr.source != act[a.source] or arr.target != act[a.target]:
                        raise ActionValidationError(
                            f"{G.name(g)} maps arrow {a.label} to {arr.label}, "
                            f"which does not join the image vertices", (G.name(g), a.label))
        for a in Q.arrows:
            if dict(self.images[0][a.id]) != {a.id: ONE}:
                raise ActionValidationError(f"identity does not fix arrow {a.label}", (G.name(0), a.label))
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul[g][h]
                for a in Q.arrows:
                    lhs = dict(self.images[gh][a.id])
                    rhs: dict[int, Cyc] = {}
                    for b, c in self.images[h][a.id]:
                        for d, e in self.images[g][b]:
                            rhs[d] = rhs.get(d, ZERO) + c * e
                    rhs = {k: v for k, v in rhs.items() if v}
                    if lhs != rhs:
                        raise ActionValidationError(
                            f"action of {G.name(gh)} on arrow {a.label} differs from "
                            f"{G.name(g)} after {G.name(h)}", (G.name(g), G.name(h), a.label))

    def act_vertex(self, g: int, v: int) -> int:
        return self.vertex_action[g][v]

    def act_arrow(self, g: int, a: int):
        return self.images[g][a]

    def act_path(self, g: int, path: Path) -> dict:
        """``^g path`` as a dict ``{path: coeff}``."""
        key = (g, path)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        start, arrows = path
        out = {((self.vertex_action[g][start]), ()): ONE}
        for a in arrows:
            nxt: dict = {}
            for (s, p), c in out.items():
                for b, e in self.images[g][a]:
                    k = (s, p + (b,))
                    nxt[k] = nxt.get(k, ZERO) + c * e
            out = nxt
        out = {k: v for k, v in out.items() if v}
        if len(self._path_cache) < 200000:
            self._path_cache[key] = out
        return out

    def matrix(self, g: int) -> list[list[Cyc]]:
        """Dense matrix of g on arrows: column a holds the image of a."""
        n = len(self.quiver.arrows)
        m = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b, c in self.images[g][a]:
                m[b][a] = c
        return m

    def dual(self) -> ArrowSpace:
        """Action on the dual arrows a*: t(a) -> s(a), ``^g phi = phi(^{g^-1} .)``.

        Dual arrows keep the ids of the arrows they are dual to.
        """
        Q, G = self.quiver, self.group
        dq = Quiver(Q.num_vertices,
                    [Arrow(a.id, a.target, a.source, _dual_label(a.label)) for a in Q.arrows])
        images = []
        for g in range(G.order):
            ginv = G.inv[g]
            row: list[dict] = [dict() for _ in Q.arrows]
            for b in range(len(Q.arrows)):
                for a, c in self.images[ginv][b]:
                    row[a][b] = row[a].get(b, ZERO) + c
            images.append([tuple(sorted(r.items())) for r in row])
        return ArrowSpace(dq, G, self.vertex_action, images, validate=False)


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def canonical_rotation(arrows: tuple[int, ...]) -> tuple[int, ...]:
    if not arrows:
        return arrows
    return min(arrows[k:] + arrows[:k] for k in range(len(arrows)))


class Potential:
    """Linear combination of oriented cycles, stored as given."""

    def __init__(self, quiver: Quiver, terms: Sequence[tuple[Sequence[int], Cyc]]):
        self.quiver = quiver
        merged: dict[tuple[int, ...], Cyc] = {}
        for cyc, c in terms:
            cyc = tuple(cyc)
            if not cyc:
                raise ValueError("potential terms must have positive length")
            start = quiver.arrows[cyc[0]].source
            path = (start, cyc)
            if not quiver.is_path(path):
                raise ValueError(f"potential term {quiver.render_path(path)} is not a path")
            if quiver.end(path) != start:
                raise ValueError(f"potential term {quiver.render_path(path)} is not a cycle")
            merged[cyc] = merged.get(cyc, ZERO) + c
        self.terms = {k: v for k, v in merged.items() if v}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(c) for c in self.terms}

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {self.quiver.render_path((self.quiver.arrows[k[0]].source, k))}"
                          for k, c in self.terms.items())


def _rotation_classes(space: ArrowSpace, terms: Mapping, g: int) -> dict:
    out: dict = {}
    for cyc, c in terms.items():
        start = space.quiver.arrows[cyc[0]].source
        for (_, p), e in space.act_path(g, (start, cyc)).items():
            k = canonical_rotation(p)
            out[k] = out.get(k, ZERO) + c * e
    return {k: v for k, v in out.items() if v}


def check_invariance(space: ArrowSpace, W: Potential):
    """``(True, None)`` if every g fixes W modulo rotation, else ``(False, g)``."""
    base = _rotation_classes(space, W.terms, 0)
    for g in range(1, space.group.order):
        if _rotation_classes(space, W.terms, g) != base:
            return False, g
    return True, None
