"""Affine quasigroups x*y = phi(x) + psi(y) + c and their Cayley tables.

Group elements are mapped to table indices through the group's deterministic
element order, so the table built from a given form is canonical and can be
diffed across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gl2 import Automorphism, Mat2, Unit, commutes
from .groups import Cyclic, GroupSpec


@dataclass(frozen=True)
class AffineForm:
    """A quintuple (G, +, phi, psi, c) with commuting automorphisms phi, psi."""

    group: GroupSpec
    phi: Automorphism
    psi: Automorphism
    c: object

    def __post_init__(self):
        G = self.group
        for f in (self.phi, self.psi):
            if isinstance(G, Cyclic):
                if not isinstance(f, Unit) or f.modulus != G.order:
                    raise ValueError(f"{f} does not act on {G}")
            else:
                if not isinstance(f, Mat2) or f.p != G.p:
                    raise ValueError(f"{f} does not act on {G}")
                if f.det() == 0:
                    raise ValueError(f"{f} is not an automorphism of {G}")
        if not commutes(self.phi, self.psi):
            raise ValueError("phi and psi do not commute")
        G.check(self.c)


@dataclass(frozen=True)
class CayleyTable:
    """An n x n operation table over the symbols 0 .. n-1.

    Construction validates shape and symbol range only; whether the table is
    a Latin square (i.e. a quasigroup) is a separate question answered by
    `is_latin`.
    """

    n: int
    rows: tuple

    def __post_init__(self):
        if self.n < 1 or len(self.rows) != self.n:
            raise ValueError("table shape does not match its order")
        for row in self.rows:
            if len(row) != self.n or not all(
                isinstance(v, int) and 0 <= v < self.n for v in row
            ):
                raise ValueError("table entries must be indices in [0, n)")


def _raw(f: Automorphism):
    return f.value if isinstance(f, Unit) else f


_ADD_INDEX_CACHE: dict = {}


def _add_index(G: GroupSpec) -> np.ndarray:
    """Index-level addition table of G (cached per group)."""
    table = _ADD_INDEX_CACHE.get(G)
    if table is None:
        els = G.elements()
        idx = {g: i for i, g in enumerate(els)}
        table = np.array(
            [[idx[G.add(a, b)] for b in els] for a in els], dtype=np.intp
        )
        table.setflags(write=False)
        _ADD_INDEX_CACHE[G] = table
    return table


def build_table(form: AffineForm) -> CayleyTable:
    """Cayley table of x*y = phi(x) + psi(y) + c in the group's element order."""
    G = form.group
    els = G.elements()
    idx = {g: i for i, g in enumerate(els)}
    add = _add_index(G)
    pv = np.array([idx[G.apply(_raw(form.phi), g)] for g in els], dtype=np.intp)
    qv = np.array([idx[G.apply(_raw(form.psi), g)] for g in els], dtype=np.intp)
    rows = add[add[pv[:, None], qv[None, :]], idx[form.c]]
    return CayleyTable(len(els), tuple(tuple(int(v) for v in r) for r in rows))


def is_latin(t: CayleyTable) -> bool:
    """True iff every row and every column is a permutation of 0 .. n-1."""
    a = np.asarray(t.rows, dtype=np.int16)
    want = np.arange(t.n, dtype=np.int16)
    return bool(
        (np.sort(a, axis=1) == want).all() and (np.sort(a, axis=0) == want[:, None]).all()
    )


def is_medial(t: CayleyTable) -> bool:
    """Exhaustive check of (x*y)*(u*v) == (x*u)*(y*v) over all n^4 quadruples.

    The check is the naive one, merely vectorized: L[x,y,u,v] = (x*y)*(u*v)
    is one gather, and (x*u)*(y*v) is the same gather with the middle axes
    swapped.  Nothing about the table is assumed.
    """
    n = t.n
    src = np.asarray(t.rows, dtype=np.int16)
    idx = np.asarray(t.rows, dtype=np.intp).ravel()
    L = src[idx[:, None], idx[None, :]].reshape(n, n, n, n)
    return bool((L == L.transpose(0, 2, 1, 3)).all())


def count_idempotents(t: CayleyTable) -> int:
    """Number of symbols i with i*i = i (an isomorphism invariant)."""
    return sum(1 for i in range(t.n) if t.rows[i][i] == i)


def to_text(t: CayleyTable) -> str:
    """Bit-exact text form: 'n' line, then n rows of space-separated indices."""
    lines = [str(t.n)]
    lines.extend(" ".join(str(v) for v in row) for row in t.rows)
    return "\n".join(lines) + "\n"


def tables_from_text(text: str) -> list:
    """Parse one or more concatenated text-format tables."""
    tokens = text.split()
    tables = []
    pos = 0
    while pos < len(tokens):
        try:
            n = int(tokens[pos])
        except ValueError:
            raise ValueError(f"expected a table order, got {tokens[pos]!r}")
        pos += 1
        if n < 1 or pos + n * n > len(tokens):
            raise ValueError(f"truncated table of order {n}")
        flat = [int(v) for v in tokens[pos : pos + n * n]]
        pos += n * n
        rows = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        tables.append(CayleyTable(n, rows))
    return tables
