"""Brute-force ground truth for "up to isomorphism".

Isomorphism of Cayley tables is decided by backtracking over partial symbol
bijections with invariant pre-filtering (fingerprints) and per-symbol
signature pruning, plus forced propagation: once sigma is fixed on i and j
it is forced on i*j.  Nothing in this module consults the affine theory --
it works on raw tables -- so agreement with the enumerator is genuine
cross-validation, not a tautology.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .gl2 import commutes, gl2_elements, units
from .groups import Cyclic, GroupSpec
from .quasigroup import AffineForm, CayleyTable

ISO_ORDER_CAP = 16
CLASSIFY_ORDER_CAP = 9
LATIN_SCAN_CAP = 4


@dataclass(frozen=True)
class Fingerprint:
    """Cheap relabeling-invariant data used to pre-filter isomorphism tests."""

    order: int
    idempotent_count: int
    diagonal_cycle_type: tuple
    row_profile: tuple


@dataclass(frozen=True)
class IsoClass:
    canonical_member: CayleyTable
    members: int
    fingerprint: Fingerprint


def _cycle_lengths(f) -> tuple:
    """Sorted lengths of the cycles in the functional graph of f.

    For a permutation this is its cycle type; for a general map only the
    eventual cycles count, which is still a relabeling invariant.
    """
    n = len(f)
    state = [0] * n  # 0 untouched, 2 settled
    lengths = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        pos: dict = {}
        x = start
        while state[x] == 0 and x not in pos:
            pos[x] = len(path)
            path.append(x)
            x = f[x]
        if state[x] == 0:
            lengths.append(len(path) - pos[x])
        for y in path:
            state[y] = 2
    return tuple(sorted(lengths))


def fingerprint(t: CayleyTable) -> Fingerprint:
    rows = t.rows
    n = t.n
    diag = [rows[i][i] for i in range(n)]
    return Fingerprint(
        order=n,
        idempotent_count=sum(1 for i in range(n) if diag[i] == i),
        diagonal_cycle_type=_cycle_lengths(diag),
        row_profile=tuple(sorted(_cycle_lengths(row) for row in rows)),
    )


def _signatures(rows) -> list:
    """Per-symbol invariants: (row cycle type, column cycle type, idempotent?)."""
    n = len(rows)
    cols = [tuple(rows[i][j] for i in range(n)) for j in range(n)]
    return [
        (_cycle_lengths(rows[i]), _cycle_lengths(cols[i]), rows[i][i] == i)
        for i in range(n)
    ]


def _iso_search(s, t) -> bool:
    n = len(s)
    sig_s = _signatures(s)
    sig_t = _signatures(t)
    if sorted(sig_s) != sorted(sig_t):
        return False
    cand = [[v for v in range(n) if sig_t[v] == sig_s[i]] for i in range(n)]
    candset = [frozenset(c) for c in cand]
    if any(not c for c in cand):
        return False
    order = sorted(range(n), key=lambda i: len(cand[i]))

    m = [-1] * n
    used = [False] * n
    mapped: list = []

    def assign(i, v) -> bool:
        # Forced closure: whenever both factors of a product are mapped, the
        # product's image is determined and must stay injective.
        m[i] = v
        used[v] = True
        mapped.append(i)
        queue = [i]
        while queue:
            k = queue.pop()
            for j in list(mapped):
                for x, y in ((k, j), (j, k)):
                    ps = s[x][y]
                    pt = t[m[x]][m[y]]
                    pm = m[ps]
                    if pm == -1:
                        if used[pt] or pt not in candset[ps]:
                            return False
                        m[ps] = pt
                        used[pt] = True
                        mapped.append(ps)
                        queue.append(ps)
                    elif pm != pt:
                        return False
        return True

    def unwind(checkpoint):
        while len(mapped) > checkpoint:
            j = mapped.pop()
            used[m[j]] = False
            m[j] = -1

    def extend() -> bool:
        i = next((i for i in order if m[i] == -1), -1)
        if i == -1:
            return True
        for v in cand[i]:
            if used[v]:
                continue
            checkpoint = len(mapped)
            if assign(i, v) and extend():
                return True
            unwind(checkpoint)
        return False

    return extend()


def are_isomorphic(s: CayleyTable, t: CayleyTable) -> bool:
    """Whether a bijection sigma exists with sigma(s[i][j]) = t[sigma(i)][sigma(j)]."""
    if s.n != t.n:
        return False
    if s.n > ISO_ORDER_CAP:
        raise ValueError(f"order {s.n} exceeds the exhaustive cap {ISO_ORDER_CAP}")
    if s.rows == t.rows:
        return True
    if fingerprint(s) != fingerprint(t):
        return False
    return _iso_search(s.rows, t.rows)


def relabel(t: CayleyTable, perm) -> CayleyTable:
    """The isomorphic table with symbols renamed by the permutation."""
    n = t.n
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the symbols")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows[perm[i]][perm[j]] = perm[t.rows[i][j]]
    return CayleyTable(n, tuple(tuple(r) for r in rows))


def all_affine_forms(G: GroupSpec) -> list:
    """Every affine form (phi, psi, c) with commuting automorphisms, unquotiented."""
    if G.order > CLASSIFY_ORDER_CAP:
        raise ValueError(f"group of order {G.order} exceeds the cap {CLASSIFY_ORDER_CAP}")
    els = G.elements()
    forms = []
    if isinstance(G, Cyclic):
        auts = units(G.p, G.k)
        for phi in auts:
            for psi in auts:
                forms.extend(AffineForm(G, phi, psi, c) for c in els)
    else:
        auts = gl2_elements(G.p)
        for phi in auts:
            for psi in auts:
                if commutes(phi, psi):
                    forms.extend(AffineForm(G, phi, psi, c) for c in els)
    return forms


def _classify_bucket(args):
    # One fingerprint bucket: greedy scan keeping the first table of each class.
    indexed_rows = args
    classes = []  # (first_index, rows, count)
    for idx, rows in indexed_rows:
        for ci, (first, canon, count) in enumerate(classes):
            if rows == canon or _iso_search(rows, canon):
                classes[ci] = (first, canon, count + 1)
                break
        else:
            classes.append((idx, rows, 1))
    return classes


def classify(tables, jobs: int = 1) -> list:
    """Partition tables into isomorphism classes, deterministically.

    Tables are bucketed by fingerprint first; pairwise isomorphism tests run
    only within buckets.  Class order is by first occurrence in the input,
    independent of the worker count.
    """
    tables = list(tables)
    if not tables:
        return []
    n = tables[0].n
    if any(t.n != n for t in tables):
        raise ValueError("classify requires tables of a single order")
    if n > CLASSIFY_ORDER_CAP:
        raise ValueError(f"order {n} exceeds the classification cap {CLASSIFY_ORDER_CAP}")
    prints = [fingerprint(t) for t in tables]
    buckets: dict = {}
    for idx, fp in enumerate(prints):
        buckets.setdefault(fp, []).append((idx, tables[idx].rows))
    work = list(buckets.values())
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_bucket, work))
    else:
        results = [_classify_bucket(w) for w in work]
    merged = sorted(
        (first, rows, count)
        for bucket_classes in results
        for first, rows, count in bucket_classes
    )
    return [
        IsoClass(CayleyTable(n, rows), count, prints[first])
        for first, rows, count in merged
    ]


def assign_to_classes(classes, tables) -> list:
    """Index of the class each table belongs to; raises if one matches nothing."""
    result = []
    for t in tables:
        fp = fingerprint(t)
        for ci, cls in enumerate(classes):
            if cls.fingerprint == fp and are_isomorphic(t, cls.canonical_member):
                result.append(ci)
                break
        else:
            raise ValueError("table is not isomorphic to any class member")
    return result


def all_latin_squares(n: int) -> list:
    """Every Latin square of order n (exhaustive; capped at order 4)."""
    if not 1 <= n <= LATIN_SCAN_CAP:
        raise ValueError(f"Latin-square scan supports orders 1..{LATIN_SCAN_CAP}")
    perms = list(permutations(range(n)))
    squares = []
    rows: list = []
    col_used = [set() for _ in range(n)]

    def place(r):
        if r == n:
            squares.append(CayleyTable(n, tuple(rows)))
            return
        for perm in perms:
            if all(perm[j] not in col_used[j] for j in range(n)):
                rows.append(perm)
                for j in range(n):
                    col_used[j].add(perm[j])
                place(r + 1)
                rows.pop()
                for j in range(n):
                    col_used[j].discard(perm[j])

    place(0)
    return squares
