"""Automorphism groups: units of Z_{p^k} and GL(2, p).

The four kinds of conjugacy-class representatives of GL(2, p) -- scalar
matrices, diagonal matrices with distinct eigenvalues, Jordan blocks, and
companion matrices of irreducible quadratics -- are generated here together
with their centralizer subgroups.

Centralizers are always computed by brute-force filtering of the full
GL(2, p) element list.  The closed-form parametrizations of those subgroups
(`parametrized_centralizer`) are kept separately so the test suite can
assert that filter and formula agree element for element: the formulas are
checked facts, not trusted input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .fp import Prime, fp_inv, is_irreducible_quadratic

SCALAR = "scalar"
DISTINCT = "distinct"
JORDAN = "jordan"
IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over F_p, row-major entries reduced mod p.

    Singular matrices are deliberately representable (difference matrices of
    commuting automorphism pairs usually are singular); invertibility is
    enforced only where an automorphism is required.
    """

    m00: int
    m01: int
    m10: int
    m11: int
    p: int

    def __post_init__(self):
        p = self.p
        object.__setattr__(self, "m00", self.m00 % p)
        object.__setattr__(self, "m01", self.m01 % p)
        object.__setattr__(self, "m10", self.m10 % p)
        object.__setattr__(self, "m11", self.m11 % p)

    @classmethod
    def identity(cls, p: int) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int) -> "Mat2":
        return cls(0, 0, 0, 0, p)

    @property
    def entries(self) -> tuple:
        return (self.m00, self.m01, self.m10, self.m11)

    def mul(self, other: "Mat2") -> "Mat2":
        if self.p != other.p:
            raise ValueError("matrices over different fields")
        p = self.p
        a, b, c, d = self.m00, self.m01, self.m10, self.m11
        e, f, g, h = other.m00, other.m01, other.m10, other.m11
        return Mat2(
            (a * e + b * g) % p,
            (a * f + b * h) % p,
            (c * e + d * g) % p,
            (c * f + d * h) % p,
            p,
        )

    def __sub__(self, other: "Mat2") -> "Mat2":
        if self.p != other.p:
            raise ValueError("matrices over different fields")
        p = self.p
        return Mat2(
            self.m00 - other.m00,
            self.m01 - other.m01,
            self.m10 - other.m10,
            self.m11 - other.m11,
            p,
        )

    def det(self) -> int:
        return (self.m00 * self.m11 - self.m01 * self.m10) % self.p

    def rank(self) -> int:
        if self.det() != 0:
            return 2
        return 0 if self.entries == (0, 0, 0, 0) else 1

    def inv(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ValueError(f"{self} is singular")
        di = fp_inv(d, self.p)
        return Mat2(
            di * self.m11, -di * self.m01, -di * self.m10, di * self.m00, self.p
        )

    def is_scalar(self) -> bool:
        return self.m01 == 0 and self.m10 == 0 and self.m00 == self.m11

    def __str__(self) -> str:
        return f"[[{self.m00},{self.m01}],[{self.m10},{self.m11}]] mod {self.p}"


@dataclass(frozen=True)
class Unit:
    """Automorphism of Z_{p^k}: multiplication by a residue coprime to p."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)
        if math.gcd(self.value, self.modulus) != 1:
            raise ValueError(f"{self.value} is not a unit mod {self.modulus}")

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


Automorphism = Union[Unit, Mat2]


@dataclass(frozen=True)
class ConjClassRep:
    """One conjugacy-class representative of GL(2, p).

    kind        matrix            constraint
    scalar      [[a,0],[0,a]]     a != 0
    distinct    [[a,0],[0,b]]     0 < a < b
    jordan      [[a,1],[0,a]]     a != 0
    irreducible [[0,1],[a,b]]     x^2 - b*x - a irreducible over F_p
    """

    kind: str
    a: int
    b: Optional[int]
    p: int

    def __post_init__(self):
        p, a, b = self.p, self.a, self.b
        if self.kind in (SCALAR, JORDAN):
            if not (0 < a < p and b is None):
                raise ValueError(f"bad {self.kind} representative ({a}, {b})")
        elif self.kind == DISTINCT:
            if b is None or not 0 < a < b < p:
                raise ValueError(f"bad distinct-diagonal representative ({a}, {b})")
        elif self.kind == IRREDUCIBLE:
            if b is None or not is_irreducible_quadratic(a, b, p):
                raise ValueError(f"x^2 - {b}x - {a} is reducible mod {p}")
        else:
            raise ValueError(f"unknown representative kind {self.kind!r}")

    def matrix(self) -> Mat2:
        if self.kind == SCALAR:
            return Mat2(self.a, 0, 0, self.a, self.p)
        if self.kind == DISTINCT:
            return Mat2(self.a, 0, 0, self.b, self.p)
        if self.kind == JORDAN:
            return Mat2(self.a, 1, 0, self.a, self.p)
        return Mat2(0, 1, self.a, self.b, self.p)


@lru_cache(maxsize=None)
def conj_class_reps(p: int) -> tuple:
    """All p^2 - 1 conjugacy-class representatives of GL(2, p), deterministically ordered."""
    p = Prime(p)
    reps = [ConjClassRep(SCALAR, a, None, p) for a in range(1, p)]
    reps += [
        ConjClassRep(DISTINCT, a, b, p)
        for a in range(1, p)
        for b in range(a + 1, p)
    ]
    reps += [ConjClassRep(JORDAN, a, None, p) for a in range(1, p)]
    reps += [
        ConjClassRep(IRREDUCIBLE, a, b, p)
        for a in range(p)
        for b in range(p)
        if is_irreducible_quadratic(a, b, p)
    ]
    return tuple(reps)


@lru_cache(maxsize=None)
def gl2_elements(p: int) -> tuple:
    """All invertible 2x2 matrices over F_p, lexicographic by entries."""
    p = Prime(p)
    out = []
    for m00 in range(p):
        for m01 in range(p):
            for m10 in range(p):
                for m11 in range(p):
                    m = Mat2(m00, m01, m10, m11, p)
                    if m.det() != 0:
                        out.append(m)
    return tuple(out)


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


@lru_cache(maxsize=None)
def centralizer(A: Mat2) -> tuple:
    """The subgroup {B in GL(2,p) : AB = BA}, by brute-force filter."""
    if A.det() == 0:
        raise ValueError(f"{A} is singular; centralizers are taken in GL(2,p)")
    return tuple(B for B in gl2_elements(A.p) if A.mul(B) == B.mul(A))


def parametrized_centralizer(rep: ConjClassRep) -> tuple:
    """Closed-form description of the centralizer of each representative kind.

    Used as the cross-check target for the brute-force `centralizer` filter;
    the two must agree element for element.
    """
    p = rep.p
    if rep.kind == SCALAR:
        return gl2_elements(p)
    if rep.kind == DISTINCT:
        return tuple(
            Mat2(u, 0, 0, v, p) for u in range(1, p) for v in range(1, p)
        )
    if rep.kind == JORDAN:
        return tuple(
            Mat2(u, v, 0, u, p) for u in range(1, p) for v in range(p)
        )
    a, b = rep.a, rep.b
    return tuple(
        Mat2(u, v, a * v, u + b * v, p)
        for u in range(p)
        for v in range(p)
        if (u, v) != (0, 0)
    )


@lru_cache(maxsize=None)
def conjugacy_partition(p: int) -> tuple:
    """Conjugacy classes of GL(2, p) as frozensets, one per representative.

    Built by brute-force conjugation of each representative by every group
    element.  Raises if the representatives fail to be a transversal (two of
    them conjugate, or some matrix uncovered), so downstream code may rely
    on the partition rather than assume it.
    """
    p = Prime(p)
    gl = gl2_elements(p)
    pairs = [(h, h.inv()) for h in gl]
    classes = []
    covered: set = set()
    for rep in conj_class_reps(p):
        R = rep.matrix()
        cls = frozenset(h.mul(R).mul(hi) for h, hi in pairs)
        if covered & cls:
            raise ValueError(f"representative {R} is conjugate to an earlier one")
        covered |= cls
        classes.append(cls)
    if len(covered) != len(gl):
        raise ValueError("conjugacy classes of the representatives do not cover GL(2,p)")
    return tuple(classes)


def commutes(A: Automorphism, B: Automorphism) -> bool:
    """Whether two automorphisms of the same group commute."""
    if isinstance(A, Unit) and isinstance(B, Unit):
        if A.modulus != B.modulus:
            raise ValueError("units of different cyclic groups")
        return True
    if isinstance(A, Mat2) and isinstance(B, Mat2):
        if A.p != B.p:
            raise ValueError("matrices over different fields")
        return A.mul(B) == B.mul(A)
    raise TypeError("cannot mix a unit with a matrix")


@lru_cache(maxsize=None)
def units(p: int, k: int = 1) -> tuple:
    """Aut(Z_{p^k}): all residues coprime to p, ascending; count p^k - p^(k-1)."""
    p = Prime(p)
    if k < 1:
        raise ValueError("exponent k must be >= 1")
    n = p ** k
    return tuple(Unit(u, n) for u in range(1, n) if u % p != 0)
