"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/Phi_n(x) as an integer numerator vector over a common positive
denominator.  Operands with different conductors are embedded into the
field of the lcm conductor before any operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Cyc",
    "cyclotomic_polynomial",
    "embed",
    "totient",
    "zeta",
    "as_cyc",
]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; the quotient of integer polynomials stays integral
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dn]
        q[k] = c
        if c:
            for j in range(dn + 1):
                num[k + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows k = 0..2d-2 give x^k mod Phi_n as integer vectors of length d."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(max(2 * d - 1, n)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _zeta_powers(n: int) -> tuple[tuple[int, ...], ...]:
    """z^k mod Phi_n for k = 0..n-1."""
    return _reduction_table(n)[:n] if n > 1 else ((1,),)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # Tr(z^k)/phi(n) = mu(m)/phi(m) with m = n/gcd(n,k): independent of n
    out = []
    for k in range(totient(n)):
        m = n // math.gcd(n, k)
        out.append(Fraction(_mobius(m), totient(m)))
    return tuple(out)


def _reduce(n: int, prod: list[int]) -> list[int]:
    d = totient(n)
    if len(prod) <= d:
        return prod + [0] * (d - len(prod))
    table = _reduction_table(n)
    out = prod[:d]
    for k in range(d, len(prod)):
        c = prod[k]
        if c:
            row = table[k]
            for j in range(d):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _lift(num: tuple[int, ...], n_from: int, n_to: int) -> tuple[int, ...]:
    if n_from == n_to:
        return num
    d_to = totient(n_to)
    if n_from == 1:
        return (num[0],) + (0,) * (d_to - 1)
    step = n_to // n_from
    powers = _zeta_powers(n_to)
    out = [0] * d_to
    for k, c in enumerate(num):
        if c:
            row = powers[(k * step) % n_to]
            for j in range(d_to):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


class Cyc:
    """An element of Q(zeta_n).

    ``Cyc(n, num, den)`` represents ``sum(num[k] * z^k) / den`` with
    ``z = exp(2*pi*i/n)``.  Values are immutable and canonical: the
    numerator vector has length phi(n) and shares no common factor with the
    positive denominator.
    """

    __slots__ = ("n", "num", "den")

    n: int
    num: tuple[int, ...]
    den: int

    def __init__(self, n: int, num: Iterable[int], den: int = 1):
        num = tuple(int(c) for c in num)
        if n < 1:
            raise ValueError(f"conductor must be positive, got {n}")
        if len(num) != totient(n):
            raise ValueError(
                f"conductor {n} needs {totient(n)} coefficients, got {len(num)}"
            )
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self._set(n, num, den)

    def _set(self, n: int, num: tuple[int, ...], den: int) -> None:
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            den = 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, n: int, num: Sequence[int], den: int) -> Cyc:
        obj = object.__new__(cls)
        obj._set(n, tuple(num), den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Cyc values are immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q) -> Cyc:
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence) -> Cyc:
        """Build from rational power-basis coordinates (any Fraction-able)."""
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != totient(n):
            raise ValueError(f"conductor {n} needs {totient(n)} coefficients")
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return cls._raw(n, [f.numerator * (den // f.denominator) for f in fr], den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- predicates / conversions ----------------------------------------

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return any(self.num)

    def embed(self, target: int) -> Cyc:
        return embed(self, target)

    # -- arithmetic -------------------------------------------------------

    def _align(self, other: Cyc) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        if self.n == other.n:
            return self.n, self.num, other.num
        n = math.lcm(self.n, other.n)
        return n, _lift(self.num, self.n, n), _lift(other.num, other.n, n)

    def __add__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1 and self.n != 1:
            c = other.num[0]
            num = list(x * other.den for x in self.num)
            num[0] += c * self.den
            return Cyc._raw(self.n, num, self.den * other.den)
        n, a, b = self._align(other)
        da, db = self.den, other.den
        if da == db:
            return Cyc._raw(n, [x + y for x, y in zip(a, b)], da)
        return Cyc._raw(n, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        return Cyc._raw(self.n, [-x for x in self.num], self.den)

    def __pos__(self) -> Cyc:
        return self

    def __sub__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1:
            c = other.num[0]
            return Cyc._raw(self.n, [x * c for x in self.num], self.den * other.den)
        if self.n == 1:
            c = self.num[0]
            return Cyc._raw(other.n, [x * c for x in other.num], self.den * other.den)
        n, a, b = self._align(other)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyc._raw(n, _reduce(n, prod), self.den * other.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyc:
        """Image under the automorphism z -> z^k (k coprime to n)."""
        n = self.n
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if n == 1:
            return self
        powers = _zeta_powers(n)
        d = len(self.num)
        out = [0] * d
        for j, c in enumerate(self.num):
            if c:
                row = powers[(j * k) % n]
                for t in range(d):
                    if row[t]:
                        out[t] += c * row[t]
        return Cyc._raw(n, out, self.den)

    def conjugate(self) -> Cyc:
        return self.galois(self.n - 1) if self.n > 2 else self

    def inverse(self) -> Cyc:
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return Cyc._raw(self.n, (self.den,) + (0,) * (len(self.num) - 1), self.num[0])
        # a^-1 = (product of the other conjugates) / norm(a)
        rest = Cyc.rational(1)
        for k in _units(self.n):
            if k != 1:
                rest = rest * self.galois(k)
        norm = self * rest
        if not norm.is_rational():
            raise ArithmeticError("norm is not rational; internal error")
        return rest * Cyc.rational(1 / norm.to_fraction())

    def __truediv__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> Cyc:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> Cyc:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Cyc._raw(self.n, (1,) + (0,) * (len(self.num) - 1), 1)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        other = as_cyc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        _, a, b = self._align(other)
        da, db = self.den, other.den
        return all(x * db == y * da for x, y in zip(a, b))

    def __hash__(self) -> int:
        # the degree-normalised trace does not depend on the conductor
        w = _trace_weights(self.n)
        tr = sum((c * wk for c, wk in zip(self.num, w) if c), Fraction(0))
        return hash(tr / self.den)

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyc({self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            if k == 0:
                terms.append(str(q))
                continue
            mono = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
            if q == 1:
                terms.append(mono)
            elif q == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{q}*{mono}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    # -- serialisation ----------------------------------------------------

    def minimal(self) -> Cyc:
        """The same number written over the smallest possible conductor."""
        if self.n == 1:
            return self
        if self.is_rational():
            return Cyc._raw(1, (self.num[0],), self.den)
        for d in sorted(k for k in range(2, self.n) if self.n % k == 0):
            # fixed by every automorphism that is trivial on Q(zeta_d)?
            if any(self.galois(k) != self for k in _units(self.n) if k % d == 1):
                continue
            coords = _solve_rational([_lift(_unit_vector(d, j), d, self.n) for j in range(totient(d))],
                                     self.num)
            if coords is not None:
                return Cyc._raw(d, coords, self.den)
        return self

    def to_json(self):
        m = self.minimal()
        return {
            "conductor": m.n,
            "coeffs": [[str(q.numerator), str(q.denominator)] for q in m.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> Cyc:
        """Parse any of the accepted scalar encodings.

        ``{"conductor": n, "coeffs": [["num","den"], ...]}``, a rational
        pair ``["num","den"]``, an int, a string ``"a/b"``, or
        ``{"zeta": n, "power": k}``.
        """
        if isinstance(obj, Cyc):
            return obj
        if isinstance(obj, bool):
            raise ValueError(f"not a scalar: {obj!r}")
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        if isinstance(obj, list) and len(obj) == 2 and not isinstance(obj[0], list):
            return cls.rational(Fraction(int(obj[0]), int(obj[1])))
        if isinstance(obj, dict):
            if "zeta" in obj:
                val = zeta(int(obj["zeta"]), int(obj.get("power", 1)))
                if "coeff" in obj:
                    val = val * cls.from_json(obj["coeff"])
                return val
            n = int(obj["conductor"])
            coeffs = []
            for c in obj["coeffs"]:
                if isinstance(c, list):
                    coeffs.append(Fraction(int(c[0]), int(c[1])))
                else:
                    coeffs.append(Fraction(c))
            return cls.from_coeffs(n, coeffs)
        raise ValueError(f"not a scalar: {obj!r}")


def _unit_vector(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if k == j else 0 for k in range(totient(n)))


def _solve_rational(columns: list[tuple[int, ...]], target: Sequence[int]) -> list[int] | None:
    """Integer solution x of sum_j x_j columns[j] = target, or None."""
    m, n = len(target), len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def as_cyc(x) -> Cyc:
    """Coerce ints and rationals; returns NotImplemented for other types."""
    if isinstance(x, Cyc):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return Cyc._raw(1, (x,), 1)
    if isinstance(x, Rational):
        return Cyc._raw(1, (int(x.numerator),), int(x.denominator))
    return NotImplemented


def zeta(n: int, k: int = 1) -> Cyc:
    """The root of unity exp(2*pi*i*k/n) in conductor n."""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    return Cyc._raw(n, _zeta_powers(n)[k % n], 1)


def embed(a: Cyc, target: int) -> Cyc:
    """Image of ``a`` under z_m -> z_n^(n/m); requires m | n."""
    if target % a.n:
        raise ValueError(f"conductor {a.n} does not divide {target}")
    return Cyc._raw(target, _lift(a.num, a.n, target), a.den)


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)
