"""Arithmetic in GF(p) and low-degree polynomials over it.

The modulus is carried by every value instead of being global, so the same
code serves every prime.  Combining values that carry different moduli is a
programming error and trips an assertion.

Polynomials store plain integer coefficients, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


@dataclass(frozen=True, order=True)
class FieldElement:
    """A residue class modulo the prime ``p``."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            assert other.p == self.p, f"mixed moduli {self.p} and {other.p}"
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other):
        return self * fp_inv(FieldElement(self._coerce(other), self.p))

    def __pow__(self, k: int):
        if k < 0:
            return fp_inv(self) ** (-k)
        return FieldElement(pow(self.value, k, self.p), self.p)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def fp_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError(f"no inverse: 0 in GF({a.p})")
    return FieldElement(pow(a.value, a.p - 2, a.p), a.p)


def inv_mod(a: int, p: int) -> int:
    """Integer-level inverse used by the matrix kernels."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"no inverse: 0 in GF({p})")
    return pow(a, p - 2, p)


class Poly:
    """Polynomial over GF(p) with coefficients lowest degree first.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[Union[int, FieldElement]], p: int) -> None:
        cs = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                assert c.p == p, f"mixed moduli {p} and {c.p}"
                c = c.value
            cs.append(int(c) % p)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self.p = p

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "Poly":
        out = cls([1], p)
        for r in roots:
            out = out * cls([-r, 1], p)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = inv_mod(self.leading, self.p)
        return Poly([c * inv for c in self.coeffs], self.p)

    def __call__(self, x: Union[int, FieldElement]) -> int:
        x = int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def _check(self, other: "Poly") -> None:
        assert other.p == self.p, f"mixed moduli {self.p} and {other.p}"

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.p)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.p)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        inv = inv_mod(other.leading, self.p)
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv % self.p
            if c:
                quot[k - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - d + j] = (rem[k - d + j] - c * b) % self.p
        return Poly(quot, self.p), Poly(rem[:d], self.p)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.p))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Poly(0 mod {self.p})"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + mono)
        return f"Poly({' + '.join(terms)} mod {self.p})"


def poly_roots(q: Poly) -> frozenset[FieldElement]:
    """All roots of ``q`` in GF(p), found by evaluating at every element."""
    if q.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    if q.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")
    return frozenset(FieldElement(x, q.p) for x in range(q.p) if q(x) == 0)


def root_multiplicities(q: Poly) -> dict[int, int]:
    """Map each root of ``q`` in GF(p) to its multiplicity."""
    out: dict[int, int] = {}
    for r in poly_roots(q):
        lin = Poly([-r.value, 1], q.p)
        rest, m = q, 0
        while True:
            quot, rem = divmod(rest, lin)
            if not rem.is_zero():
                break
            rest, m = quot, m + 1
        out[r.value] = m
    return out


def poly_is_irreducible(q: Poly) -> bool:
    # A factorization of a cubic or quadratic must contain a linear factor,
    # so "no root" is equivalent to irreducible only up to degree 3.
    if q.is_zero() or not 1 <= q.degree <= 3:
        raise ValueError(f"irreducibility test only valid for degree 1..3, got {q.degree}")
    if q.degree == 1:
        return True
    return not poly_roots(q)
