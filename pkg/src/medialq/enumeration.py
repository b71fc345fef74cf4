"""Isomorphism-class enumeration of quasigroups affine over an abelian group.

One triple (phi, psi, c) is listed per isomorphism class:

  * phi ranges over conjugacy-class representatives of Aut(G);
  * psi ranges over conjugacy-class representatives of the centralizer
    C(phi), conjugation taken inside C(phi) itself;
  * c ranges over orbit representatives of the action of C(phi) & C(psi)
    on the quotient G / Im(1 - phi - psi).

For the rank-2 group Z_p x Z_p the representative list is tagged with a
closed vocabulary of 15 case labels (four kinds of phi, sub-split by the
kind of psi where phi is scalar, and by the computed rank of the difference
matrix 1 - phi - psi).  Rank conditions are always computed from the matrix
itself, never from per-case algebraic shortcuts.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .fp import Prime
from .gl2 import (
    SCALAR,
    Automorphism,
    Mat2,
    Unit,
    centralizer,
    commutes,
    conj_class_reps,
    conjugacy_partition,
    units,
)
from .groups import CosetList, Cyclic, ElemAbelianRank2, GroupSpec, quotient_cosets

CASE_TAG_CYCLIC = "cyclic"

CASE_TAGS_RANK2 = (
    "case1.scalar-scalar.regular",
    "case1.scalar-scalar.singular",
    "case1.scalar-distinct.regular",
    "case1.scalar-distinct.singular",
    "case1.scalar-jordan.regular",
    "case1.scalar-jordan.singular",
    "case1.scalar-irreducible.regular",
    "case2.distinct-diag.regular",
    "case2.distinct-diag.rank1",
    "case2.distinct-diag.rank0",
    "case3.jordan.regular",
    "case3.jordan.rank1",
    "case3.jordan.rank0",
    "case4.irreducible.regular",
    "case4.irreducible.singular",
)


@dataclass(frozen=True)
class RepresentativeTriple:
    phi: Automorphism
    psi: Automorphism
    c: object
    case_tag: str


@dataclass(frozen=True, eq=False)
class EnumerationReport:
    group: GroupSpec
    triples: tuple
    tallies: dict
    total: int = field(default=-1)

    def __post_init__(self):
        if self.total == -1:
            object.__setattr__(self, "total", len(self.triples))
        if self.total != len(self.triples) or self.total != sum(self.tallies.values()):
            raise ValueError("report total disagrees with triples/tallies")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _raw(f: Automorphism):
    return f.value if isinstance(f, Unit) else f


def _one_minus(G: GroupSpec, phi: Automorphism, psi: Automorphism):
    """The endomorphism 1 - phi - psi, as a residue or a (possibly singular) matrix."""
    if isinstance(G, Cyclic):
        return (1 - phi.value - psi.value) % G.order
    return Mat2.identity(G.p) - phi - psi


def reps_x(G: GroupSpec) -> tuple:
    """Conjugacy-class representatives of Aut(G).

    Aut of a cyclic group is abelian, so every unit is its own class; for
    Z_p x Z_p the representatives are the four matrix kinds.
    """
    if isinstance(G, Cyclic):
        return units(G.p, G.k)
    return tuple(rep.matrix() for rep in conj_class_reps(G.p))


@lru_cache(maxsize=None)
def _assert_commutative(members: tuple) -> bool:
    for i, A in enumerate(members):
        for B in members[i + 1 :]:
            if A.mul(B) != B.mul(A):
                raise ValueError(f"centralizer is not commutative: {A} vs {B}")
    return True


def reps_y(G: GroupSpec, phi: Automorphism) -> tuple:
    """Conjugacy-class representatives of C(phi), conjugating inside C(phi).

    For scalar phi the centralizer is all of GL(2, p) and the global
    representative list is reused -- after checking (once per prime, via
    the brute-force partition) that it really is a transversal.  For the
    other kinds C(phi) is verified to be commutative, so it is its own
    transversal.
    """
    if isinstance(G, Cyclic):
        if phi not in units(G.p, G.k):
            raise ValueError(f"{phi} is not a designated representative")
        return units(G.p, G.k)
    by_matrix = {rep.matrix(): rep for rep in conj_class_reps(G.p)}
    rep = by_matrix.get(phi)
    if rep is None:
        raise ValueError(f"{phi} is not a designated representative")
    if rep.kind == SCALAR:
        conjugacy_partition(G.p)  # raises unless the list is a transversal of GL(2,p)
        return reps_x(G)
    members = centralizer(phi)
    _assert_commutative(members)
    return members


def stabilizer(G: GroupSpec, phi: Automorphism, psi: Automorphism) -> tuple:
    """C(phi) & C(psi): every automorphism commuting with both."""
    if not commutes(phi, psi):
        raise ValueError("phi and psi do not commute")
    if isinstance(G, Cyclic):
        return units(G.p, G.k)
    if phi.is_scalar():
        # scalars are central, so the intersection is just C(psi)
        return centralizer(psi)
    base = centralizer(phi)
    if psi.is_scalar():
        return base
    return tuple(B for B in base if B.mul(psi) == psi.mul(B))


_ORBIT_CACHE: dict = {}


def _orbit_reps(G: GroupSpec, stab: tuple, cosets: CosetList) -> tuple:
    """Orbit representatives of stab acting on the given coset list.

    Orbits are computed by union-find over all (stabilizer element, coset)
    pairs; each orbit is represented by its least coset representative in
    element order, and the zero coset's orbit comes first.
    """
    key = (stab, cosets.representatives, tuple(cosets.coset_index.items()))
    cached = _ORBIT_CACHE.get(key)
    if cached is not None:
        return cached
    uf = _UnionFind(len(cosets))
    index = cosets.coset_index
    for h in stab:
        m = _raw(h)
        for i, r in enumerate(cosets.representatives):
            uf.union(i, index[G.apply(m, r)])
    roots: dict = {}
    for i, r in enumerate(cosets.representatives):
        root = uf.find(i)
        if root not in roots or G.index(r) < G.index(roots[root]):
            roots[root] = r
    result = tuple(sorted(roots.values(), key=G.index))
    _ORBIT_CACHE[key] = result
    return result


def orbit_reps_c(G: GroupSpec, phi: Automorphism, psi: Automorphism) -> tuple:
    """Orbit representatives of C(phi) & C(psi) on G / Im(1 - phi - psi)."""
    if not commutes(phi, psi):
        raise ValueError("phi and psi do not commute")
    cosets = quotient_cosets(G, _one_minus(G, phi, psi))
    if len(cosets) == 1:
        return (G.zero,)
    return _orbit_reps(G, stabilizer(G, phi, psi), cosets)


def _rank2_tag(phi_kind: str, psi_kind, rank: int) -> str:
    if phi_kind == SCALAR:
        state = "regular" if rank == 2 else "singular"
        return f"case1.scalar-{psi_kind}.{state}"
    if phi_kind == "distinct":
        return "case2.distinct-diag." + {2: "regular", 1: "rank1", 0: "rank0"}[rank]
    if phi_kind == "jordan":
        return "case3.jordan." + {2: "regular", 1: "rank1", 0: "rank0"}[rank]
    return "case4.irreducible." + ("regular" if rank == 2 else "singular")


def _rank2_triples(G: ElemAbelianRank2, rep_index: int) -> list:
    reps = conj_class_reps(G.p)
    rep = reps[rep_index]
    phi = rep.matrix()
    psis = reps_y(G, phi)
    kinds = {r.matrix(): r.kind for r in reps}
    out = []
    for psi in psis:
        rank = _one_minus(G, phi, psi).rank()
        tag = _rank2_tag(rep.kind, kinds.get(psi), rank)
        for c in orbit_reps_c(G, phi, psi):
            out.append(RepresentativeTriple(phi, psi, c, tag))
    return out


def _cyclic_triples(G: Cyclic, phi: Unit) -> list:
    out = []
    for psi in reps_y(G, phi):
        for c in orbit_reps_c(G, phi, psi):
            out.append(RepresentativeTriple(phi, psi, c, CASE_TAG_CYCLIC))
    return out


def enumerate_forms(G: GroupSpec, jobs: int = 1) -> EnumerationReport:
    """Full representative-triple list for G, with per-case tallies.

    Work may be partitioned across the phi representatives (`jobs` worker
    processes); the output is identical at any job count.
    """
    if isinstance(G, Cyclic):
        keys = list(units(G.p, G.k))
        worker = _cyclic_triples
        tallies = {CASE_TAG_CYCLIC: 0}
    else:
        keys = list(range(len(conj_class_reps(G.p))))
        worker = _rank2_triples
        tallies = {tag: 0 for tag in CASE_TAGS_RANK2}
    if jobs > 1:
        _warm_caches(G)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(worker, [G] * len(keys), keys))
    else:
        chunks = [worker(G, key) for key in keys]
    triples = tuple(t for chunk in chunks for t in chunk)
    for t in triples:
        tallies[t.case_tag] += 1
    return EnumerationReport(G, triples, tallies)


def _warm_caches(G: GroupSpec):
    # Forked workers inherit warmed lru_caches instead of re-deriving them.
    if isinstance(G, Cyclic):
        units(G.p, G.k)
    else:
        conj_class_reps(G.p)
        conjugacy_partition(G.p)


def closed_form_cyclic(p: int, k: int) -> int:
    """Number of medial quasigroups affine over Z_{p^k}, up to isomorphism."""
    p = Prime(p)
    if k < 1:
        raise ValueError("exponent k must be >= 1")
    return (
        p ** (2 * k)
        + p ** (2 * k - 2)
        - p ** (k - 1)
        - sum(p ** i for i in range(k - 1, 2 * k))
    )


def closed_form_zp2(p: int) -> int:
    """Number of medial quasigroups affine over Z_p x Z_p, up to isomorphism."""
    p = Prime(p)
    return p ** 4 - p ** 2 - p - 1


def closed_form_order_p2(p: int) -> int:
    """Number of medial quasigroups of order p^2, up to isomorphism."""
    p = Prime(p)
    return 2 * p ** 4 - p ** 3 - p ** 2 - 3 * p - 1


def factorize(n: int) -> list:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            factors.append((d, k))
        d += 1
    if n > 1:
        factors.append((n, 1))
    return factors


def count_composite(n: int) -> int:
    """Number of medial quasigroups of order n, by multiplicativity.

    Supported for n whose prime factorization has exponents <= 2 only;
    higher prime powers are an open counting problem.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    result = 1
    for p, k in factorize(n):
        if k == 1:
            result *= closed_form_cyclic(p, 1)
        elif k == 2:
            result *= closed_form_order_p2(p)
        else:
            raise ValueError(f"unknown prime-power count for {p}^{k}")
    return result


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact rational coefficients, ascending powers."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                x = "x" if i == 1 else f"x^{i}"
                body = x if mag == 1 else f"{mag} {x}"
            if not terms:
                terms.append(body if sign == "+" else f"-{body}")
            else:
                terms.append(f"{sign} {body}")
        return " ".join(terms) if terms else "0"


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def interpolate_count_polynomial(points) -> Polynomial:
    """Unique Lagrange interpolant through the points, in exact rationals."""
    points = list(points)
    if not points:
        raise ValueError("at least one point is required")
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    acc = [Fraction(0)] * len(points)
    for xi, yi in points:
        num = [Fraction(1)]
        den = Fraction(1)
        for xj in xs:
            if xj == xi:
                continue
            num = _poly_mul(num, [Fraction(-xj), Fraction(1)])
            den *= xi - xj
        scale = Fraction(yi) / den
        for i, v in enumerate(num):
            acc[i] += scale * v
    while len(acc) > 1 and acc[-1] == 0:
        acc.pop()
    return Polynomial(tuple(acc))


def group_label(G: GroupSpec) -> str:
    """Stable textual group identifier used in reports and exports."""
    if isinstance(G, Cyclic):
        return f"cyclic:p={int(G.p)},k={G.k}"
    return f"zp2:p={int(G.p)}"


def jsonl_record(G: GroupSpec, triple: RepresentativeTriple, table=None) -> dict:
    """One export record; matrices flatten row-major, elements to component lists."""
    if isinstance(G, Cyclic):
        phi, psi = triple.phi.value, triple.psi.value
        c = [triple.c]
    else:
        phi, psi = list(triple.phi.entries), list(triple.psi.entries)
        c = list(triple.c)
    record = {
        "group": group_label(G),
        "phi": phi,
        "psi": psi,
        "c": c,
        "case_tag": triple.case_tag,
    }
    if table is not None:
        record["table"] = [list(row) for row in table.rows]
    return record
