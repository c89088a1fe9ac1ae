"""Transport of elements of e~(T*G)e~ into linear combinations of Q_G paths.

Paths of Q_G compose left to right: the path f_1 f_2 ... f_n is sent to
f_1(eps) f_2(eps) ... f_n(eps) in the skew algebra, and its intertwiner is
f_n ⊛ ... ⊛ f_1.  The coefficient of a path gamma in the transport of theta
is the pairing of the matching component of Xi(theta) with phi_gamma.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from .cyclotomic import ONE, ZERO, Cyc
from .intertwiner import pairing, pairing_fast, xi
from .morita import InternalConsistencyError, QGQuiver
from .skew import NotProjectedError, SkewElement, e_tilde, potential_element

__all__ = [
    "QGPathComb",
    "RoundTripResult",
    "transport",
    "transport_potential",
    "verify_roundtrip",
    "workers_from_env",
]

METHODS = ("auto", "fast", "slow", "both")


class QGPathComb:
    """Sparse combination of Q_G paths; a path is (start vertex, arrow ids)."""

    __slots__ = ("qg", "terms")

    def __init__(self, qg: QGQuiver, terms: Mapping | None = None):
        self.qg = qg
        clean = {}
        for path, c in (terms or {}).items():
            path = (int(path[0]), tuple(path[1]))
            if not self._composable(path):
                raise ValueError(f"not a path of Q_G: {path!r}")
            c = Cyc.from_json(c)
            if c:
                clean[path] = clean.get(path, ZERO) + c
        self.terms = {p: c for p, c in clean.items() if c}

    def _composable(self, path) -> bool:
        start, arrows = path
        v = start
        for a in arrows:
            arr = self.qg.arrows[a]
            if arr.source != v:
                return False
            v = arr.target
        return True

    def __add__(self, other: QGPathComb) -> QGPathComb:
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, ZERO) + c
        return QGPathComb(self.qg, out)

    def __sub__(self, other: QGPathComb) -> QGPathComb:
        return self + other.scale(-ONE)

    def scale(self, c) -> QGPathComb:
        c = Cyc.from_json(c)
        return QGPathComb(self.qg, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other: QGPathComb) -> QGPathComb:
        # concatenation, self first
        out: dict = {}
        for (s1, a1), c1 in self.terms.items():
            end = self.qg.path_end((s1, a1))
            for (s2, a2), c2 in other.terms.items():
                if s2 != end:
                    continue
                key = (s1, a1 + a2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return QGPathComb(self.qg, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QGPathComb):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"QGPathComb({len(self.terms)} paths)"

    def coeff(self, path) -> Cyc:
        return self.terms.get((path[0], tuple(path[1])), ZERO)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), kv[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for path, c in self.sorted_items():
            sign = " + "
            if c.is_rational() and c.to_fraction() < 0:
                sign, c = " - ", -c
            out += f"{sign}{c} · {self.qg.render_path(path)}"
        return out[3:] if out.startswith(" + ") else "-" + out[3:]

    def to_json(self) -> dict:
        out = []
        for (start, arrows), c in self.sorted_items():
            item = {"arrows": [self.qg.arrows[a].label for a in arrows], "coeff": c.to_json()}
            if not arrows:
                item["vertex"] = self.qg.vertex_label(start)
            out.append(item)
        return {"paths": out}

    @classmethod
    def from_json(cls, qg: QGQuiver, doc) -> QGPathComb:
        labels = {qg.vertex_label(k): k for k in range(len(qg.vertices))}
        terms: dict = {}
        for item in doc["paths"]:
            arrows = tuple(qg.arrow_id(a) for a in item["arrows"])
            start = qg.arrows[arrows[0]].source if arrows else labels[item["vertex"]]
            key = (start, arrows)
            terms[key] = terms.get(key, ZERO) + Cyc.from_json(item["coeff"])
        return cls(qg, terms)

    def to_skew(self) -> SkewElement:
        out = SkewElement.zero(self.qg.inst.space)
        for path, c in self.sorted_items():
            out = out + self.qg.skew_value(path).scale(c)
        return out


def workers_from_env(default: int = 1) -> int:
    raw = os.environ.get("SKEWMORITA_WORKERS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"SKEWMORITA_WORKERS must be a positive integer, got {raw!r}") from None


def _coefficient(f, phi, method: str) -> Cyc:
    if method == "slow":
        return pairing(f, phi)
    if method == "fast":
        return pairing_fast(f, phi)
    a, b = pairing_fast(f, phi), pairing(f, phi)
    if a != b:
        raise InternalConsistencyError(f"fast pairing {a} differs from pairing {b}")
    return a


def transport(theta: SkewElement, qg: QGQuiver, method: str = "auto", workers: int | None = None,
              check: bool = True) -> QGPathComb:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    inst = qg.inst
    if method == "auto":
        method = "fast" if inst.monomial_abelian else "slow"
    elif method in ("fast", "both") and not inst.monomial_abelian:
        raise ValueError("the fast pairing needs abelian stabilizers and a monomial action")
    if check:
        et = e_tilde(inst)
        if et * theta * et != theta:
            raise NotProjectedError("element is not fixed by e~ on both sides")
    comps = xi(theta, inst, check=False)
    jobs = []
    for (iseq, Ul, Vl), f in comps.items():
        s = qg.vertex_index[(iseq[0], Ul)]
        t = qg.vertex_index[(iseq[-1], Vl)]
        for path in qg.paths(len(iseq) - 1, s, t):
            if qg.path_iseq(path) == iseq:
                jobs.append((path, f))

    def work(job):
        path, f = job
        return path, _coefficient(f, qg.phi_gamma(path), method)

    workers = workers if workers is not None else workers_from_env()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(j) for j in jobs]
    terms: dict = {}
    for path, c in results:
        terms[path] = terms.get(path, ZERO) + c
    return QGPathComb(qg, terms)


@dataclass
class RoundTripResult:
    ok: bool
    difference: SkewElement | None = None
    offending: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def report(self, qg: QGQuiver) -> str:
        if self.ok:
            return "round trip ok"
        lines = ["round trip failed; differing paths:"]
        for path, c in self.offending:
            lines.append(f"  {qg.render_path(path)}: off by {c}")
        if not self.offending and self.difference is not None:
            lines.append(self.difference.render())
        return "\n".join(lines)


def verify_roundtrip(theta: SkewElement, comb: QGPathComb, qg: QGQuiver) -> RoundTripResult:
    diff = comb.to_skew() - theta
    if not diff:
        return RoundTripResult(True)
    try:
        off = transport(diff, qg, method="slow", check=False)
        offending = off.sorted_items()
    except Exception:  # the difference may not decompose; report it raw
        offending = []
    return RoundTripResult(False, diff, offending)


def transport_potential(qg: QGQuiver, W=None, method: str = "auto", workers: int | None = None) -> QGPathComb:
    inst = qg.inst
    W = W if W is not None else inst.potential
    if W is None or not W.terms:
        return QGPathComb(qg)
    ok, g = inst.check_invariance(W)
    if not ok:
        warnings.warn(f"potential is not invariant under {inst.group.name(g)}", stacklevel=2)
    et = e_tilde(inst)
    theta = et * potential_element(inst, W) * et
    return transport(theta, qg, method=method, workers=workers, check=False)
