"""The ambient abelian groups: Z_{p^k} and Z_p x Z_p.

Group elements are plain values -- residues (int) for the cyclic family and
coordinate pairs (x, y) for the rank-2 elementary abelian family.  Every
group fixes a deterministic element order (ascending residue, respectively
lexicographic by components); all index-based artifacts downstream inherit
that order, which makes enumeration output reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .fp import Prime

Element = Union[int, tuple]


@dataclass(frozen=True)
class Cyclic:
    """Z_{p^k}: residues 0 .. p^k - 1 under addition mod p^k."""

    p: Prime
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        if self.k < 1:
            raise ValueError("exponent k must be >= 1")

    @property
    def order(self) -> int:
        return self.p ** self.k

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> list:
        return list(range(self.order))

    def check(self, a) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element of {self}")
        return a

    def add(self, a, b) -> int:
        self.check(a)
        self.check(b)
        return (a + b) % self.order

    def neg(self, a) -> int:
        self.check(a)
        return (-a) % self.order

    def index(self, a) -> int:
        return self.check(a)

    def apply(self, m: int, a: int) -> int:
        """Image of a under the endomorphism x -> m*x (m need not be a unit)."""
        return (m * a) % self.order

    def __str__(self) -> str:
        return f"Z_{self.p}^{self.k}" if self.k > 1 else f"Z_{self.p}"


@dataclass(frozen=True)
class ElemAbelianRank2:
    """Z_p x Z_p: pairs (x, y) under componentwise addition mod p."""

    p: Prime

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))

    @property
    def order(self) -> int:
        return self.p * self.p

    @property
    def zero(self) -> tuple:
        return (0, 0)

    def elements(self) -> list:
        p = self.p
        return [(x, y) for x in range(p) for y in range(p)]

    def check(self, a) -> tuple:
        if (
            not isinstance(a, tuple)
            or len(a) != 2
            or not all(isinstance(c, int) and 0 <= c < self.p for c in a)
        ):
            raise ValueError(f"{a!r} is not an element of {self}")
        return a

    def add(self, a, b) -> tuple:
        self.check(a)
        self.check(b)
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def neg(self, a) -> tuple:
        self.check(a)
        p = self.p
        return ((-a[0]) % p, (-a[1]) % p)

    def index(self, a) -> int:
        self.check(a)
        return a[0] * self.p + a[1]

    def apply(self, m, a) -> tuple:
        """Image of the column vector a under a 2x2 matrix (not necessarily invertible)."""
        p = self.p
        x, y = a
        return ((m.m00 * x + m.m01 * y) % p, (m.m10 * x + m.m11 * y) % p)

    def __str__(self) -> str:
        return f"(Z_{self.p})^2"


GroupSpec = Union[Cyclic, ElemAbelianRank2]


@dataclass(frozen=True, eq=False)
class CosetList:
    """Cosets of an image subgroup Im(M) inside G.

    `representatives` holds one element per coset, chosen greedily in the
    deterministic element order (so the zero coset always comes first), and
    `coset_index` maps every group element to the position of its coset.
    """

    representatives: tuple
    subgroup_order: int
    coset_index: dict

    def __len__(self) -> int:
        return len(self.representatives)


def quotient_cosets(G: GroupSpec, M) -> CosetList:
    """Cosets of Im(M) in G, where M is any endomorphism of G.

    The image subgroup is computed by exhaustive application of M; structural
    shortcuts (gcd for cyclic groups, column spaces for matrices) are used
    only as cross-check properties in the tests.
    """
    els = G.elements()
    image_set = {G.apply(M, g) for g in els}
    image = [g for g in els if g in image_set]
    reps = []
    coset_index: dict = {}
    for g in els:
        if g in coset_index:
            continue
        idx = len(reps)
        reps.append(g)
        for im in image:
            coset_index[G.add(g, im)] = idx
    if len(reps) * len(image) != G.order:
        raise ValueError(f"{M!r} is not an endomorphism of {G}")
    return CosetList(tuple(reps), len(image), coset_index)
