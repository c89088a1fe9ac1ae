"""Representations of stabilizer subgroups.

Irreps are either generated automatically (abelian stabilizers) or
supplied as matrices and validated.  Each irrep U is realized as the
cyclic module kH.eps_U with an echelonized basis, which is the form the
intertwiner calculus works with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .cyclotomic import ONE, ZERO, Cyc, zeta
from .groups import Group, Stabilizer
from .linalg import CycMatrix, kernel_basis, rank, rref

__all__ = [
    "GroupAlgElem",
    "Irrep",
    "ModuleRep",
    "CyclicModule",
    "IrrepValidationError",
    "abelian_irreps",
    "cyclic_decomposition",
    "primitive_idempotent",
    "module_of_cyclic_idempotent",
    "hom_basis",
    "validate_irrep",
]


class IrrepValidationError(ValueError):
    pass


class GroupAlgElem:
    """Sparse element of the group algebra kG (zero coefficients dropped)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Cyc] | None = None):
        self.coeffs = {g: c for g, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, g: int) -> GroupAlgElem:
        return cls({g: ONE})

    def __getitem__(self, g: int) -> Cyc:
        return self.coeffs.get(g, ZERO)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgElem):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: GroupAlgElem) -> GroupAlgElem:
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, ZERO) + c
        return GroupAlgElem(out)

    def __sub__(self, other: GroupAlgElem) -> GroupAlgElem:
        return self + other.scale(-ONE)

    def scale(self, c) -> GroupAlgElem:
        return GroupAlgElem({g: c * x for g, x in self.coeffs.items()})

    def mul(self, G: Group, other: GroupAlgElem) -> GroupAlgElem:
        out: dict[int, Cyc] = {}
        for a, x in self.coeffs.items():
            row = G.mul[a]
            for b, y in other.coeffs.items():
                k = row[b]
                out[k] = out.get(k, ZERO) + x * y
        return GroupAlgElem(out)

    def left(self, G: Group, g: int) -> GroupAlgElem:
        return GroupAlgElem({G.mul[g][a]: x for a, x in self.coeffs.items()})

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def render(self, G: Group | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for g in sorted(self.coeffs):
            name = G.name(g) if G is not None else f"g{g}"
            parts.append(f"({self.coeffs[g]})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GroupAlgElem({self.render()})"


@dataclass(frozen=True)
class ModuleRep:
    dim: int
    action: Mapping[int, CycMatrix]
    basis_labels: tuple = ()

    def check_homomorphism(self, G: Group, elements: Sequence[int]) -> None:
        ident = CycMatrix.identity(self.dim)
        if self.action[0] != ident:
            raise IrrepValidationError("identity does not act as the identity matrix")
        for g in elements:
            for h in elements:
                if self.action[g] @ self.action[h] != self.action[G.mul[g][h]]:
                    raise IrrepValidationError(
                        f"rho({G.name(g)}) rho({G.name(h)}) != rho({G.name(G.mul[g][h])})")


class Irrep:
    """Irreducible representation of a stabilizer given by matrices."""

    def __init__(self, group: Group, stab: Stabilizer, matrices: Mapping[int, CycMatrix], label: str):
        self.group = group
        self.stab = stab
        self.matrices = dict(matrices)
        self.label = label
        self.dim = self.matrices[0].rows

    @property
    def character(self) -> dict[int, Cyc]:
        out = {}
        for h, m in self.matrices.items():
            acc = ZERO
            for k in range(m.rows):
                acc = acc + m[k, k]
            out[h] = acc
        return out

    def as_module(self) -> ModuleRep:
        return ModuleRep(self.dim, self.matrices)

    def __repr__(self) -> str:
        return f"Irrep({self.label}, dim={self.dim}, vertex={self.stab.vertex})"


class CyclicModule(ModuleRep):
    """The left module kH.eps with an echelon basis of group algebra elements.

    ``pivots[k]`` is the group element carrying the leading 1 of basis
    vector k, so coordinates of a vector are read off at the pivots.
    """

    def __init__(self, G: Group, stab: Stabilizer, idem: GroupAlgElem, label: str = ""):
        rows = [[idem.left(G, h)[g] for g in stab.elements] for h in stab.elements]
        red, pivcols = rref(rows)
        basis = tuple(GroupAlgElem({stab.elements[c]: x for c, x in enumerate(r)}) for r in red)
        pivots = tuple(stab.elements[c] for c in pivcols)
        object.__setattr__(self, "group", G)
        object.__setattr__(self, "stab", stab)
        object.__setattr__(self, "idem", idem)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)
        action = {}
        for h in stab.elements:
            cols = [self.coords(b.left(G, h)) for b in basis]
            action[h] = CycMatrix(len(basis), len(basis),
                                  [cols[j][i] for i in range(len(basis)) for j in range(len(basis))])
        super().__init__(len(basis), action, tuple(f"{label}[{k}]" for k in range(len(basis))))
        object.__setattr__(self, "idem_coords", tuple(self.coords(idem)))

    def coords(self, x: GroupAlgElem, check: bool = True) -> list[Cyc]:
        c = [x[p] for p in self.pivots]
        if check and self.vector(c) != x:
            raise ValueError(f"element {x.render(self.group)} is not in the module {self.label}")
        return c

    def vector(self, coords: Sequence[Cyc]) -> GroupAlgElem:
        out = GroupAlgElem()
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def __repr__(self) -> str:
        return f"CyclicModule({self.label}, dim={self.dim})"


def cyclic_decomposition(G: Group, elements: Sequence[int]) -> list[tuple[int, int]]:
    """Split an abelian subgroup into cyclic factors ``(generator, order)``.

    Greedy: repeatedly choose an element of largest order modulo the part
    already generated whose actual order equals that quotient order.
    """
    elements = sorted(elements)
    span = {0}
    factors: list[tuple[int, int]] = []
    while len(span) < len(elements):
        best = None
        for g in elements:
            k, x = 1, g
            while x not in span:
                x = G.mul[x][g]
                k += 1
            if k > 1 and G.element_order(g) == k and (best is None or k > best[1]):
                best = (g, k)
        if best is None:
            raise ArithmeticError("failed to split abelian group into cyclic factors")
        g, k = best
        new = set()
        x = 0
        for _ in range(k):
            for s in span:
                new.add(G.mul[x][s])
            x = G.mul[x][g]
        span = new
        factors.append(best)
    return factors


def abelian_irreps(G: Group, H: Stabilizer) -> list[Irrep]:
    """All characters of an abelian stabilizer, trivial character first."""
    if not G.is_abelian(H.elements):
        raise IrrepValidationError(
            f"stabilizer of vertex {H.vertex} is not abelian; irreps must be supplied")
    factors = cyclic_decomposition(G, H.elements)
    orders = [m for _, m in factors]
    # exponent vector of every element
    expo: dict[int, tuple[int, ...]] = {}
    for ev in product(*(range(m) for m in orders)):
        g = 0
        for (gen, _), e in zip(factors, ev):
            g = G.mul[g][G.power(gen, e)]
        expo[g] = ev
    out = []
    for av in product(*(range(m) for m in orders)):
        mats = {}
        for h in H.elements:
            val = ONE
            for a, e, m in zip(av, expo[h], orders):
                if a * e % m:
                    val = val * zeta(m, a * e % m)
            mats[h] = CycMatrix(1, 1, [val])
        label = "chi" + (".".join(str(a) for a in av) if av else "0")
        out.append(Irrep(G, H, mats, label))
    return out


def hom_basis(U: ModuleRep | Irrep, W: ModuleRep, elements: Sequence[int]) -> list[CycMatrix]:
    """Basis of {F : W(h) F = F U(h) for all h}, F of shape dim W x dim U.

    F is flattened column by column, so the echelon ordering puts the
    image of the first U basis vector first.
    """
    if isinstance(U, Irrep):
        U = U.as_module()
    du, dw = U.dim, W.dim
    nvars = du * dw
    if nvars == 0:
        return []

    def var(r, k):
        return k * dw + r

    rows = []
    for h in elements:
        A, B = W.action[h], U.action[h]
        for r in range(dw):
            for k in range(du):
                row = [ZERO] * nvars
                for s in range(dw):
                    a = A[r, s]
                    if a:
                        row[var(s, k)] = row[var(s, k)] + a
                for j in range(du):
                    b = B[j, k]
                    if b:
                        row[var(r, j)] = row[var(r, j)] - b
                if any(row):
                    rows.append(row)
    if not rows:
        rows = [[ZERO] * nvars]
    out = []
    for v in kernel_basis(rows):
        flat = v.entries
        out.append(CycMatrix(dw, du, [flat[var(r, k)] for r in range(dw) for k in range(du)]))
    return out


def validate_irrep(irrep: Irrep) -> None:
    G, H = irrep.group, irrep.stab
    for h in H.elements:
        if h not in irrep.matrices:
            raise IrrepValidationError(f"irrep {irrep.label}: no matrix for {G.name(h)}")
        m = irrep.matrices[h]
        if m.rows != irrep.dim or m.cols != irrep.dim:
            raise IrrepValidationError(f"irrep {irrep.label}: matrix for {G.name(h)} has wrong shape")
    extra = set(irrep.matrices) - set(H.elements)
    if extra:
        raise IrrepValidationError(f"irrep {irrep.label}: matrices given outside the stabilizer")
    irrep.as_module().check_homomorphism(G, H.elements)
    if len(hom_basis(irrep, irrep.as_module(), H.elements)) != 1:
        raise IrrepValidationError(f"irrep {irrep.label} is reducible (Schur check failed)")


def primitive_idempotent(irrep: Irrep) -> GroupAlgElem:
    """(d/|H|) sum_h rho(h^-1)[0,0] h, checked to be idempotent of the right rank."""
    G, H = irrep.group, irrep.stab
    scale = Cyc.rational(Fraction(irrep.dim, H.order))
    eps = GroupAlgElem({h: scale * irrep.matrices[G.inv[h]][0, 0] for h in H.elements})
    if eps.mul(G, eps) != eps:
        raise IrrepValidationError(f"idempotent of {irrep.label} is not idempotent")
    left = [[eps.left(G, h)[g] for g in H.elements] for h in H.elements]
    if rank(left) != irrep.dim:
        raise IrrepValidationError(f"kH.eps for {irrep.label} does not have dimension {irrep.dim}")
    return eps


def module_of_cyclic_idempotent(G: Group, H: Stabilizer, eps: GroupAlgElem, label: str = "") -> CyclicModule:
    if any(g not in H for g in eps.coeffs):
        raise ValueError("idempotent is not supported on the stabilizer")
    if eps.mul(G, eps) != eps:
        raise ValueError("element is not idempotent")
    return CyclicModule(G, H, eps, label)
