"""Finite groups as multiplication tables, orbits, stabilizers and cosets."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

__all__ = [
    "GroupValidationError",
    "ActionValidationError",
    "Group",
    "build_group",
    "group_from_permutations",
    "Stabilizer",
    "Orbits",
    "compute_orbits",
    "factorize",
    "chain_factorize",
    "vertex_chain",
]

_EXHAUSTIVE_LIMIT = 64


class GroupValidationError(ValueError):
    """A table failed one of the group axioms; ``axiom`` names which."""

    def __init__(self, axiom: str, message: str, witness=None):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom
        self.witness = witness


class ActionValidationError(ValueError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class Group:
    """Group on 0..order-1 with identity 0.

    ``relabel[old] = new`` records how the input labels were permuted to
    put the identity first.
    """

    def __init__(self, mul, names=None, relabel=None):
        self.mul = tuple(tuple(r) for r in mul)
        self.order = len(self.mul)
        self.identity = 0
        row0 = self.mul[0]
        self.inv = tuple(row.index(0) for row in self.mul)
        assert all(row0[g] == g for g in range(self.order))
        if names is None:
            names = ["e"] + [f"g{k}" for k in range(1, self.order)]
        self.names = tuple(names)
        self._index = {n: k for k, n in enumerate(self.names)}
        self.relabel = tuple(relabel) if relabel is not None else tuple(range(self.order))
        self._orders: list[int] | None = None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order})"

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def prod(self, *elems: int) -> int:
        acc = 0
        for x in elems:
            acc = self.mul[acc][x]
        return acc

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = self.mul[x][g]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[a]

    def exponent(self) -> int:
        from math import lcm
        return lcm(*(self.element_order(g) for g in range(self.order)))

    def is_abelian(self, elements: Sequence[int] | None = None) -> bool:
        els = range(self.order) if elements is None else elements
        return all(self.mul[a][b] == self.mul[b][a] for a in els for b in els)

    def name(self, g: int) -> str:
        return self.names[g]

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.order:
                raise KeyError(f"no group element {name}")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown group element {name!r}") from None

    def generated_by(self, gens: Sequence[int]) -> list[int]:
        seen = {0}
        todo = [0]
        while todo:
            x = todo.pop()
            for s in gens:
                y = self.mul[s][x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(seen)

    def small_generating_set(self) -> list[int]:
        gens: list[int] = []
        span = {0}
        for g in sorted(range(self.order), key=lambda x: (-self.element_order(x), x)):
            if g not in span:
                gens.append(g)
                span = set(self.generated_by(gens))
            if len(span) == self.order:
                break
        return gens


def build_group(mul_table, names=None, seed: int = 0) -> Group:
    """Validate a multiplication table and return a Group with identity 0."""
    rows = [list(r) for r in mul_table]
    n = len(rows)
    if n == 0:
        raise GroupValidationError("closure", "empty table")
    for a, r in enumerate(rows):
        if len(r) != n:
            raise GroupValidationError("closure", f"row {a} has length {len(r)}, expected {n}", (a,))
        for b, x in enumerate(r):
            if not isinstance(x, int) or not 0 <= x < n:
                raise GroupValidationError("closure", f"{a}*{b} = {x!r} is not an element", (a, b))
    ident = next((e for e in range(n)
                  if all(rows[e][x] == x and rows[x][e] == x for x in range(n))), None)
    if ident is None:
        raise GroupValidationError("identity", "no two-sided identity element")
    for a in range(n):
        if not any(rows[a][b] == ident and rows[b][a] == ident for b in range(n)):
            raise GroupValidationError("inverse", f"element {a} has no two-sided inverse", (a,))
    if n <= _EXHAUSTIVE_LIMIT:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000)]
    for a, b, c in triples:
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise GroupValidationError("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    relabel = list(range(n))
    if ident != 0:
        relabel[0], relabel[ident] = ident, 0
        perm = relabel
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[rows[a][b]]
        rows = new
        if names is not None:
            names = list(names)
            names[0], names[ident] = names[ident], names[0]
    group = Group(rows, names, relabel)
    if n > _EXHAUSTIVE_LIMIT:
        gens = group.small_generating_set()
        for a in range(n):
            for b in range(n):
                for s in gens:
                    if rows[rows[a][b]][s] != rows[a][rows[b][s]]:
                        raise GroupValidationError("associativity",
                                                   f"({a}*{b})*{s} != {a}*({b}*{s})", (a, b, s))
    return group


def group_from_permutations(generators: Mapping[str, Sequence[int]] | Sequence[Sequence[int]]):
    """Close a set of permutations under composition.

    Elements are enumerated breadth first by word length, so element 0 is
    the identity and names are shortest words such as ``"c*c*t"``.
    Composition is ``(g*h)(x) = g(h(x))``.  Returns ``(group, perms)``.
    """
    if not isinstance(generators, Mapping):
        generators = {f"s{k}": p for k, p in enumerate(generators)}
    gens = [(name, tuple(p)) for name, p in generators.items()]
    if not gens:
        raise ValueError("at least one generator is required")
    deg = len(gens[0][1])
    for name, p in gens:
        if len(p) != deg or sorted(p) != list(range(deg)):
            raise ValueError(f"generator {name!r} is not a permutation of 0..{deg - 1}")
    ident = tuple(range(deg))
    perms = [ident]
    names = ["e"]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for name, s in gens:
            q = tuple(s[x] for x in perms[k])
            if q not in index:
                index[q] = len(perms)
                perms.append(q)
                names.append(name if k == 0 else f"{name}*{names[k]}")
                queue.append(index[q])
    n = len(perms)
    mul = [[index[tuple(perms[a][x] for x in perms[b])] for b in range(n)] for a in range(n)]
    return build_group(mul, names), perms


@dataclass(frozen=True)
class Stabilizer:
    vertex: int
    elements: tuple[int, ...]
    members: frozenset
    coset_reps: tuple[int, ...]
    rep_of: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.members


def make_stabilizer(G: Group, vertex: int, elements: Sequence[int]) -> Stabilizer:
    elements = tuple(sorted(elements))
    rep_of: list = [None] * G.order
    reps = []
    for g in range(G.order):
        if rep_of[g] is None:
            reps.append(g)
            for h in elements:
                rep_of[G.mul[g][h]] = (g, h)
    return Stabilizer(vertex, elements, frozenset(elements), tuple(reps), tuple(rep_of))


def factorize(g: int, H: Stabilizer) -> tuple[int, int]:
    """Return ``(y, h)`` with ``g = y*h``, y a coset representative and h in H."""
    return H.rep_of[g]


@dataclass(frozen=True)
class Orbits:
    orbit_reps: tuple[int, ...]
    orbit_of: tuple[tuple[int, int], ...]
    stabilizers: Mapping[int, Stabilizer]
    action: tuple[tuple[int, ...], ...] = field(repr=False)

    def rep(self, v: int) -> int:
        return self.orbit_of[v][0]

    def witness(self, v: int) -> int:
        return self.orbit_of[v][1]

    def orbit(self, i: int) -> list[int]:
        return [v for v, (r, _) in enumerate(self.orbit_of) if r == i]

    def act(self, g: int, v: int) -> int:
        return self.action[g][v]


def _validate_action(G: Group, action, npoints: int, what: str = "vertex"):
    if len(action) != G.order:
        raise ActionValidationError(f"{what} action needs one permutation per group element")
    for g, p in enumerate(action):
        if len(p) != npoints or sorted(p) != list(range(npoints)):
            raise ActionValidationError(f"{what} action of {G.name(g)} is not a permutation", (G.name(g),))
    if any(action[0][v] != v for v in range(npoints)):
        raise ActionValidationError(f"identity acts nontrivially on {what}s", (G.name(0),))
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul[g][h]
            for v in range(npoints):
                if action[gh][v] != action[g][action[h][v]]:
                    raise ActionValidationError(
                        f"{what} action is not compatible with the product of "
                        f"{G.name(g)} and {G.name(h)} at {v}", (G.name(g), G.name(h)))


def compute_orbits(G: Group, vertex_action: Sequence[Sequence[int]]) -> Orbits:
    action = tuple(tuple(p) for p in vertex_action)
    nverts = len(action[0]) if action else 0
    _validate_action(G, action, nverts)
    orbit_of: list = [None] * nverts
    reps = []
    for v in range(nverts):
        if orbit_of[v] is None:
            reps.append(v)
            for g in range(G.order):
                w = action[g][v]
                if orbit_of[w] is None:
                    orbit_of[w] = (v, g)
    stabs = {}
    for i in reps:
        elems = [g for g in range(G.order) if action[g][i] == i]
        stabs[i] = make_stabilizer(G, i, elems)
    return Orbits(tuple(reps), tuple(orbit_of), stabs, action)


def chain_factorize(G: Group, ys: Sequence[int], stabs: Sequence[Stabilizer]):
    """Decreasing induction producing ``(xs, h0)`` from coset reps ``ys``.

    ``stabs`` lists the stabilizers of i_0..i_n.  ``xs`` is returned in the
    order x_{n-1}, ..., x_0, and ``(y_1...y_n)^-1 = x_{n-1}...x_0 h0``.
    """
    n = len(ys)
    if n == 0:
        return (), 0
    xs = []
    x, h = stabs[n - 1].rep_of[G.inv[ys[n - 1]]]
    xs.append(x)
    for t in range(n - 1, 0, -1):
        x, h = stabs[t - 1].rep_of[G.mul[h][G.inv[ys[t - 1]]]]
        xs.append(x)
    return tuple(xs), h


def vertex_chain(G: Group, orbits: Orbits, vertices: Sequence[int]):
    """Decompose a vertex walk v_0, ..., v_n with v_0 an orbit rep.

    Returns ``(iseq, ys, Y)`` with v_t = (y_1...y_t) i_t for each t and
    ``Y = y_1...y_n``.
    """
    i0 = vertices[0]
    if orbits.orbit_of[i0][0] != i0:
        raise ValueError(f"walk must start at an orbit representative, got {i0}")
    iseq = [i0]
    ys = []
    Y = 0
    for v in vertices[1:]:
        w = orbits.action[G.inv[Y]][v]
        i, wit = orbits.orbit_of[w]
        y = orbits.stabilizers[i].rep_of[wit][0]
        iseq.append(i)
        ys.append(y)
        Y = G.mul[Y][y]
    return tuple(iseq), tuple(ys), Y
