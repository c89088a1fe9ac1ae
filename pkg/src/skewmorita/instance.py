"""Loading and validating problem instances from JSON documents.

Schema (all keys except ``group``, ``vertex_action`` and ``arrows`` optional)::

    {
      "name": "d10",
      "group": {"mul": [[...]], "names": [...]}            # or
      "group": {"generators": {"c": [perm], "t": [perm]}},
      "vertex_action": [[perm per element]]                 # or
      "vertex_action": {"<element name>": perm, ...},       # closed under products
      "arrows": [{"label": "x01", "source": 0, "target": 1}, ...],
      "arrow_action": {"<element name>": {"<arrow>": "<arrow>" | [coeff, "<arrow>"]
                                          | [[coeff, "<arrow>"], ...]}},
      "irreps": {"<orbit rep>": [{"label": "...", "matrices": {"<element>": grid}}]},
      "potential": [{"cycle": ["x01", ...], "coeff": 1}],
      "conductor": 10
    }

Elements missing from ``vertex_action``/``arrow_action``/irrep matrices
are filled in by closing the given ones under the group product.
"""

from __future__ import annotations

import json
from collections import deque
from functools import cached_property
from pathlib import Path as FsPath
from typing import Any, Callable, Mapping

from .cyclotomic import ONE, ZERO, Cyc
from .groups import (ActionValidationError, Group, GroupValidationError, Orbits,
                     build_group, compute_orbits, group_from_permutations)
from .linalg import CycMatrix
from .quiver import ArrowSpace, Potential, Quiver, check_invariance
from .reps import (CyclicModule, GroupAlgElem, Irrep, IrrepValidationError,
                   abelian_irreps, hom_basis, module_of_cyclic_idempotent, primitive_idempotent,
                   validate_irrep)

__all__ = ["Instance", "InstanceValidationError", "load_instance", "load_instance_file"]


class InstanceValidationError(ValueError):
    """Raised for any invalid input; ``details`` is a JSON-ready dict."""

    def __init__(self, kind: str, message: str, pair=None):
        super().__init__(message)
        self.details = {"error": kind, "message": message}
        if pair is not None:
            self.details["pair"] = list(pair)


def _close(G: Group, given: Mapping[int, Any], compose: Callable, identity, what: str) -> list:
    """Extend values on some elements to all of G via ``val(s*g) = s o val(g)``."""
    if len(given) == G.order:
        return [given[g] for g in range(G.order)]
    known: dict[int, Any] = {0: identity}
    if 0 in given and given[0] != identity:
        raise InstanceValidationError("action", f"identity has a nontrivial {what}", [G.name(0)])
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for s, val in given.items():
            k = G.mul[s][g]
            v = compose(val, known[g])
            if k not in known:
                known[k] = v
                queue.append(k)
            elif known[k] != v:
                raise InstanceValidationError(
                    "action", f"{what} is inconsistent: {G.name(s)} after {G.name(g)} "
                              f"disagrees with {G.name(k)}", [G.name(s), G.name(g)])
    if len(known) != G.order:
        raise InstanceValidationError("action", f"the elements given for the {what} do not generate the group")
    for s, val in given.items():
        if known[s] != val:
            raise InstanceValidationError("action", f"{what} of {G.name(s)} is inconsistent", [G.name(s)])
    return [known[g] for g in range(G.order)]


def _parse_image(Q: Quiver, spec) -> tuple:
    """Arrow image: a label, ``[coeff, label]`` or a list of such pairs."""
    if isinstance(spec, (str, int)) and not isinstance(spec, bool):
        return ((Q.arrow_id(spec), ONE),)
    if isinstance(spec, list) and len(spec) == 2 and isinstance(spec[1], str):
        return ((Q.arrow_id(spec[1]), Cyc.from_json(spec[0])),)
    out: dict[int, Cyc] = {}
    for c, lab in spec:
        b = Q.arrow_id(lab)
        out[b] = out.get(b, ZERO) + Cyc.from_json(c)
    return tuple(sorted((b, c) for b, c in out.items() if c))


def _compose_linear(f: tuple, g: tuple) -> tuple:
    """Compose arrow maps given as per-arrow image tuples: (f o g)."""
    out = []
    for img in g:
        acc: dict[int, Cyc] = {}
        for b, c in img:
            for d, e in f[b]:
                acc[d] = acc.get(d, ZERO) + c * e
        out.append(tuple(sorted((k, v) for k, v in acc.items() if v)))
    return tuple(out)


class Instance:
    """Validated instance: group, quiver, actions, irreps and optional potential."""

    def __init__(self, name, group: Group, orbits: Orbits, space: ArrowSpace,
                 irreps: Mapping[int, list[Irrep]], potential: Potential | None, conductor: int):
        self.name = name
        self.group = group
        self.orbits = orbits
        self.space = space
        self.quiver = space.quiver
        self.irreps = dict(irreps)
        self.potential = potential
        self.conductor = conductor
        self.modules: dict[tuple[int, str], CyclicModule] = {}
        self.idempotents: dict[tuple[int, str], GroupAlgElem] = {}
        for i, lst in self.irreps.items():
            H = orbits.stabilizers[i]
            for U in lst:
                eps = primitive_idempotent(U)
                self.idempotents[(i, U.label)] = eps
                self.modules[(i, U.label)] = module_of_cyclic_idempotent(group, H, eps, U.label)
        self._induced: dict = {}

    @cached_property
    def dual_space(self) -> ArrowSpace:
        return self.space.dual()

    @property
    def qg_vertices(self) -> list[tuple[int, str]]:
        return [(i, U.label) for i in self.orbits.orbit_reps for U in self.irreps[i]]

    def stabilizer(self, i: int):
        return self.orbits.stabilizers[i]

    @cached_property
    def monomial_abelian(self) -> bool:
        """Abelian stabilizers, one-dimensional irreps and a monomial action."""
        G = self.group
        return (self.space.monomial
                and all(G.is_abelian(self.stabilizer(i).elements) for i in self.orbits.orbit_reps)
                and all(U.dim == 1 for lst in self.irreps.values() for U in lst))

    def check_invariance(self, W=None):
        W = W if W is not None else self.potential
        if W is None:
            return True, None
        return check_invariance(self.space, W)

    def __repr__(self) -> str:
        return (f"Instance({self.name!r}, |G|={self.group.order}, "
                f"{self.quiver.num_vertices} vertices, {len(self.quiver.arrows)} arrows)")


def _group_from_doc(gdoc) -> tuple[Group, list | None]:
    if "mul" in gdoc:
        G = build_group(gdoc["mul"], gdoc.get("names"))
        if "order" in gdoc and gdoc["order"] != G.order:
            raise InstanceValidationError("group", f"declared order {gdoc['order']} != table size {G.order}")
        return G, None
    if "generators" in gdoc:
        G, perms = group_from_permutations(gdoc["generators"])
        return G, perms
    raise InstanceValidationError("schema", "group needs 'mul' or 'generators'")


def load_instance(doc: Mapping) -> Instance:
    try:
        return _load(doc)
    except InstanceValidationError:
        raise
    except GroupValidationError as exc:
        raise InstanceValidationError("group", str(exc), getattr(exc, "witness", None)) from exc
    except ActionValidationError as exc:
        raise InstanceValidationError("action", str(exc), exc.pair) from exc
    except IrrepValidationError as exc:
        raise InstanceValidationError("irrep", str(exc)) from exc
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InstanceValidationError("schema", str(exc)) from exc


def load_instance_file(path) -> Instance:
    with open(FsPath(path)) as fh:
        doc = json.load(fh)
    return load_instance(doc)


def _load(doc: Mapping) -> Instance:
    for key in ("group", "vertex_action", "arrows"):
        if key not in doc:
            raise InstanceValidationError("schema", f"missing key {key!r}")
    G, _ = _group_from_doc(doc["group"])
    named = lambda d: {G.index(k): v for k, v in d.items()}  # noqa: E731

    va = doc["vertex_action"]
    if isinstance(va, Mapping):
        given = {g: tuple(p) for g, p in named(va).items()}
        nverts = len(next(iter(given.values())))
        ident = tuple(range(nverts))
        action = _close(G, given, lambda p, q: tuple(p[x] for x in q), ident, "vertex action")
    else:
        if len(va) != G.order:
            raise InstanceValidationError("schema", "vertex_action list needs one permutation per element")
        action = [tuple(p) for p in va]
    nverts = doc.get("vertices", len(action[0]))
    orbits = compute_orbits(G, action)

    edges = []
    for a in doc["arrows"]:
        if isinstance(a, Mapping):
            edges.append((int(a["source"]), int(a["target"]), str(a["label"])))
        else:
            s, t, lab = a
            edges.append((int(s), int(t), str(lab)))
    Q = Quiver.from_edges(nverts, edges)

    identity_map = tuple(((a.id, ONE),) for a in Q.arrows)
    aa = doc.get("arrow_action")
    if aa is None:
        raise InstanceValidationError("schema", "missing key 'arrow_action'")
    given = {}
    for g, table in named(aa).items():
        row = list(identity_map)
        missing = [a.label for a in Q.arrows if a.label not in table]
        if missing:
            raise InstanceValidationError(
                "action", f"arrow action of {G.name(g)} does not specify {missing[0]}", [G.name(g), missing[0]])
        for lab, spec in table.items():
            row[Q.arrow_id(lab)] = _parse_image(Q, spec)
        given[g] = tuple(row)
    images = _close(G, given, _compose_linear, identity_map, "arrow action")
    space = ArrowSpace(Q, G, action, images)

    irreps: dict[int, list[Irrep]] = {}
    supplied = doc.get("irreps", {}) or {}
    for i in orbits.orbit_reps:
        H = orbits.stabilizers[i]
        spec = supplied.get(str(i), supplied.get(i))
        if spec is None:
            irreps[i] = abelian_irreps(G, H)
            continue
        lst = []
        for k, entry in enumerate(spec):
            mats_doc = entry["matrices"]
            if isinstance(mats_doc, Mapping):
                gm = {g: CycMatrix.from_json(m) for g, m in named(mats_doc).items()}
            else:
                gm = {h: CycMatrix.from_json(m) for h, m in zip(H.elements, mats_doc)}
            dim = next(iter(gm.values())).rows
            sub = _subgroup(G, H)
            closed = _close(sub, {sub.to_sub[g]: m for g, m in gm.items() if g in sub.to_sub},
                            lambda x, y: x @ y, CycMatrix.identity(dim), f"irrep {entry.get('label', k)}")
            mats = {sub.elements[s]: m for s, m in enumerate(closed)}
            if set(gm) - set(H.elements):
                raise InstanceValidationError("irrep", f"irrep {entry.get('label', k)} has matrices outside the stabilizer")
            U = Irrep(G, H, mats, str(entry.get("label", f"U{k}")))
            validate_irrep(U)
            lst.append(U)
        if sum(U.dim ** 2 for U in lst) != H.order:
            raise InstanceValidationError(
                "irrep", f"irreps supplied for vertex {i} are incomplete: sum of squared dimensions "
                         f"{sum(U.dim ** 2 for U in lst)} != {H.order}")
        labels = [U.label for U in lst]
        if len(set(labels)) != len(labels):
            raise InstanceValidationError("irrep", f"duplicate irrep labels at vertex {i}")
        for a in range(len(lst)):
            for b in range(a):
                if hom_basis(lst[a], lst[b].as_module(), H.elements):
                    raise InstanceValidationError(
                        "irrep", f"irreps {lst[b].label} and {lst[a].label} at vertex {i} are isomorphic")
        irreps[i] = lst

    potential = None
    if doc.get("potential"):
        terms = []
        for t in doc["potential"]:
            terms.append(([Q.arrow_id(lab) for lab in t["cycle"]], Cyc.from_json(t.get("coeff", 1))))
        potential = Potential(Q, terms)

    conductor = int(doc.get("conductor", G.exponent()))
    return Instance(doc.get("name", "instance"), G, orbits, space, irreps, potential, conductor)


class _SubgroupView(Group):
    """A subgroup re-indexed as a standalone group (used for closure)."""

    def __init__(self, G: Group, elements):
        self.elements = list(elements)
        self.to_sub = {g: k for k, g in enumerate(self.elements)}
        mul = [[self.to_sub[G.mul[a][b]] for b in self.elements] for a in self.elements]
        super().__init__(mul, [G.name(g) for g in self.elements])


def _subgroup(G: Group, H) -> _SubgroupView:
    return _SubgroupView(G, H.elements)
