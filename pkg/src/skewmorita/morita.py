"""The reduced quiver Q_G with arrow intertwiners and their duals.

For every ordered pair of vertices (i,U), (j,V) the hom spaces on both
sides are computed in echelon form.  The M*-side basis phi_0, phi_1, ...
is kept as is and serves as the dual arrows; the arrows themselves are
the combinations of the M-side basis that are biorthogonal to it under
the pairing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .cyclotomic import ONE, Cyc
from .intertwiner import (Intertwiner, circledast, hom_intertwiners, pairing,
                          unit_intertwiner)
from .linalg import CycMatrix, SingularMatrix, inverse
from .skew import SkewElement

__all__ = ["QGArrow", "QGQuiver", "InternalConsistencyError", "build_qg"]


class InternalConsistencyError(RuntimeError):
    pass


@dataclass(eq=False)
class QGArrow:
    id: int
    source: int
    target: int
    label: str
    index: int
    f: Intertwiner = field(repr=False)
    dual: Intertwiner = field(repr=False)


class QGQuiver:
    def __init__(self, inst, vertices, arrows, spaces):
        self.inst = inst
        self.vertices = list(vertices)
        self.vertex_index = {v: k for k, v in enumerate(self.vertices)}
        self.arrows: list[QGArrow] = list(arrows)
        # (source, target) -> dict with the echelon bases and the Gram matrix
        self.spaces = spaces
        out = [[] for _ in self.vertices]
        for a in self.arrows:
            out[a.source].append(a.id)
        self.out_arrows = [tuple(x) for x in out]
        self._f_cache: dict = {}
        self._phi_cache: dict = {}
        self._skew_cache: dict = {}
        self._label_index = {a.label: a.id for a in self.arrows}

    def __repr__(self) -> str:
        return f"QGQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    # -- labels ----------------------------------------------------------

    def vertex_label(self, v: int) -> str:
        i, U = self.vertices[v]
        return f"{i},{U}"

    def arrow_id(self, label) -> int:
        if isinstance(label, int):
            return label
        return self._label_index[label]

    def multiplicities(self) -> dict[tuple[int, int], int]:
        out: dict = {}
        for a in self.arrows:
            out[(a.source, a.target)] = out.get((a.source, a.target), 0) + 1
        return out

    # -- paths -----------------------------------------------------------

    def path_end(self, path) -> int:
        start, arrows = path
        return self.arrows[arrows[-1]].target if arrows else start

    def path_iseq(self, path) -> tuple[int, ...]:
        start, arrows = path
        verts = [start] + [self.arrows[a].target for a in arrows]
        return tuple(self.vertices[v][0] for v in verts)

    def paths(self, n: int, source: int | None = None, target: int | None = None) -> Iterator:
        """Length-n paths, depth first in arrow-id order, optionally with fixed endpoints."""
        starts = range(len(self.vertices)) if source is None else [source]
        for s in starts:
            def rec(v, acc):
                if len(acc) == n:
                    if target is None or v == target:
                        yield (s, tuple(acc))
                    return
                for a in self.out_arrows[v]:
                    acc.append(a)
                    yield from rec(self.arrows[a].target, acc)
                    acc.pop()
            yield from rec(s, [])

    def count_paths(self, n: int, source: int | None = None, target: int | None = None):
        lst = list(self.paths(n, source, target))
        return len(lst), lst

    def render_path(self, path) -> str:
        start, arrows = path
        if not arrows:
            return f"e[{self.vertex_label(start)}]"
        return " ".join(self.arrows[a].label for a in arrows)

    # -- intertwiners attached to paths ----------------------------------

    def f_gamma(self, path) -> Intertwiner:
        """f_n ⊛ ... ⊛ f_1 for the path f_1 f_2 ... f_n (unit for a lazy path)."""
        path = (path[0], tuple(path[1]))
        hit = self._f_cache.get(path)
        if hit is not None:
            return hit
        start, arrows = path
        if not arrows:
            i, U = self.vertices[start]
            res = unit_intertwiner(self.inst, i, U)
        elif len(arrows) == 1:
            res = self.arrows[arrows[0]].f
        else:
            res = circledast(self.arrows[arrows[-1]].f, self.f_gamma((start, arrows[:-1])))
        self._f_cache[path] = res
        return res

    def phi_gamma(self, path) -> Intertwiner:
        """f_1^∨ ⊛ f_2^∨ ⊛ ... ⊛ f_n^∨ (dual unit for a lazy path)."""
        path = (path[0], tuple(path[1]))
        hit = self._phi_cache.get(path)
        if hit is not None:
            return hit
        start, arrows = path
        if not arrows:
            i, U = self.vertices[start]
            res = unit_intertwiner(self.inst, i, U, dual=True)
        elif len(arrows) == 1:
            res = self.arrows[arrows[0]].dual
        else:
            first = self.arrows[arrows[0]]
            res = circledast(first.dual, self.phi_gamma((first.target, arrows[1:])))
        self._phi_cache[path] = res
        return res

    def skew_value(self, path) -> SkewElement:
        """Image of a path in e~(T*G)e~: the product f_1(eps) f_2(eps) ... f_n(eps)."""
        path = (path[0], tuple(path[1]))
        hit = self._skew_cache.get(path)
        if hit is not None:
            return hit
        start, arrows = path
        inst = self.inst
        if not arrows:
            i, U = self.vertices[start]
            res = SkewElement.from_group_alg(inst.space, i, inst.idempotents[(i, U)])
        elif len(arrows) == 1:
            res = self.arrows[arrows[0]].f.skew_value()
        else:
            res = self.skew_value((start, arrows[:-1])) * self.arrows[arrows[-1]].f.skew_value()
        self._skew_cache[path] = res
        return res

    # -- export ------------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["digraph QG {"]
        for k in range(len(self.vertices)):
            lines.append(f'  q{k} [label="({self.vertex_label(k)})"];')
        for a in self.arrows:
            lines.append(f'  q{a.source} -> q{a.target} [label="{a.label}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self, intertwiners: bool = True) -> dict:
        doc = {
            "vertices": [{"vertex": i, "irrep": U} for (i, U) in self.vertices],
            "multiplicities": [
                {"source": self.vertex_label(s), "target": self.vertex_label(t), "count": c}
                for (s, t), c in sorted(self.multiplicities().items())
            ],
            "arrows": [],
        }
        for a in self.arrows:
            item = {"label": a.label, "source": self.vertex_label(a.source),
                    "target": self.vertex_label(a.target)}
            if intertwiners:
                item["intertwiner"] = a.f.serialize()
                item["dual"] = a.dual.serialize()
            doc["arrows"].append(item)
        return doc

    def dumps(self, intertwiners: bool = True) -> str:
        return json.dumps(self.to_json(intertwiners), indent=2, sort_keys=True)


def build_qg(inst) -> QGQuiver:
    vertices = inst.qg_vertices
    arrows: list[QGArrow] = []
    spaces = {}
    for s, (i, U) in enumerate(vertices):
        for t, (j, V) in enumerate(vertices):
            gs = hom_intertwiners(inst, i, U, (j,), V)
            phis = hom_intertwiners(inst, j, V, (i,), U, dual=True)
            if len(gs) != len(phis):
                raise InternalConsistencyError(
                    f"hom dimensions differ for ({i},{U}) -> ({j},{V}): {len(gs)} vs {len(phis)}")
            n = len(gs)
            gram = None
            if n:
                gram = CycMatrix(n, n, [pairing(g, p) for g in gs for p in phis])
                try:
                    ginv = inverse(gram)
                except SingularMatrix as exc:
                    raise InternalConsistencyError(
                        f"degenerate pairing between ({i},{U}) and ({j},{V}):\n{gram!r}") from exc
            spaces[(s, t)] = {"m_basis": gs, "dual_basis": phis, "gram": gram}
            for k in range(n):
                f = None
                for j2, g in enumerate(gs):
                    c = ginv[k, j2]
                    if c:
                        f = g.scale(c) if f is None else f + g.scale(c)
                label = f"f[{i},{U}->{j},{V}]#{k}"
                arrows.append(QGArrow(len(arrows), s, t, label, k, f, phis[k]))
    return QGQuiver(inst, vertices, arrows, spaces)
