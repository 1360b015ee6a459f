"""cup_i products on blow-up cochains.

The product on a tensor of cochain complexes comes from iterating the
diagonal ``e_i -> sum_j e_j (x) tau^j e_{i-j}``: a cup index ``i`` is split
as ``i_1 + ... + i_m`` over the ``m = n + 1`` factors, factor ``k`` receives
``cup_{i_k}``, and its arguments are swapped when ``i_1 + ... + i_{k-1}`` is
odd.  Cone factors are standard simplices with the apex last, so each
factor product is the classical interval-cut cup_i.
"""

from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass
from functools import lru_cache

from .blowup import BlowUp, Cell, GlobalSection, LocalCochain, _cells_by_degree
from .complex import interval_cuts, simplex_cup_i
from .gf2 import bits

__all__ = [
    "CupPartition",
    "diagonal_partitions",
    "factor_cup_by_cuts",
    "cup_i_cells",
    "cup_i_cells_by_partitions",
    "cup_i_local",
    "cup_i_local_by_partitions",
    "cup_i_global",
    "corrupted_cup",
]


@dataclass(frozen=True)
class CupPartition:
    parts: tuple[int, ...]
    twists: tuple[int, ...]


@lru_cache(maxsize=None)
def diagonal_partitions(i: int, m: int) -> tuple[CupPartition, ...]:
    """Weak compositions of ``i`` into ``m`` parts, lexicographic, with twist parities."""
    if i < 0 or m < 1:
        return ()
    out = []
    for cut in itertools.combinations(range(i + m - 1), m - 1):
        ends = (-1,) + cut + (i + m - 1,)
        parts = tuple(ends[k + 1] - ends[k] - 1 for k in range(m))
        twists = tuple(sum(parts[:k]) & 1 for k in range(m))
        out.append(CupPartition(parts, twists))
    out.sort(key=lambda p: p.parts)
    return tuple(out)


@lru_cache(maxsize=None)
def factor_cup_by_cuts(first: int, second: int, i: int) -> int:
    """Coefficient of ``(first | second)^`` in ``first^ cup_i second^``,
    counted by enumerating interval cuts of that face."""
    if i < 0:
        return 0
    union = first | second
    verts = list(bits(union))
    total = 0
    for _, front, back in interval_cuts(len(verts) - 1, i):
        f = sum(1 << verts[a] for a in front)
        g = sum(1 << verts[a] for a in back)
        if f == first and g == second:
            total ^= 1
    return total


# a test hook: when set, replaces the factor cup by a deliberately wrong one
_fault = {"active": False}


@contextlib.contextmanager
def corrupted_cup():
    """Temporarily break the factor cup (drops every product with a shared
    vertex count above one).  Used to check that the relation suite notices."""
    _fault["active"] = True
    try:
        yield
    finally:
        _fault["active"] = False


def _factor(first: int, second: int, i: int):
    if _fault["active"] and i > 0:
        return None
    return simplex_cup_i(first, second, i)


def cup_i_cells(f: Cell, g: Cell, i: int):
    """Product of two basis cells: a single cell or ``None``.

    Since a factor product of dual basis elements is nonzero only when the
    factor cup index equals the number of shared vertices minus one, at most
    one partition of ``i`` contributes.
    """
    parts = []
    for a, b in zip(f, g):
        shared = (a & b).bit_count()
        if not shared:
            return None
        parts.append(shared - 1)
    if sum(parts) != i:
        return None
    out = []
    twist = 0
    for a, b, ik in zip(f, g, parts):
        h = _factor(b, a, ik) if twist else _factor(a, b, ik)
        if h is None:
            return None
        out.append(h)
        twist ^= ik & 1
    return tuple(out)


def cup_i_cells_by_partitions(f: Cell, g: Cell, i: int) -> set:
    """Same product, summing over every partition with cut-enumerated factors."""
    out: set = set()
    for part in diagonal_partitions(i, len(f)):
        coeff = 1
        cell = []
        for a, b, ik, t in zip(f, g, part.parts, part.twists):
            x, y = (b, a) if t else (a, b)
            c = factor_cup_by_cuts(x, y, ik)
            if not c or (x | y).bit_count() != x.bit_count() + y.bit_count() - 1 - ik:
                coeff = 0
                break
            cell.append(x | y)
        if coeff:
            out ^= {tuple(cell)}
    return out


def _local_product(c: LocalCochain, d: LocalCochain, i: int, cellwise) -> LocalCochain:
    if c.owner != d.owner:
        raise ValueError("local cochains on different simplices")
    out: set = set()
    if i >= 0:
        for f in c.terms:
            for g in d.terms:
                h = cellwise(f, g, i)
                if h is None:
                    continue
                if isinstance(h, set):
                    out ^= h
                else:
                    out ^= {h}
    return LocalCochain(c.owner, c.blocks, frozenset(out))


def cup_i_local(c: LocalCochain, d: LocalCochain, i: int) -> LocalCochain:
    return _local_product(c, d, i, cup_i_cells)


def cup_i_local_by_partitions(c: LocalCochain, d: LocalCochain, i: int) -> LocalCochain:
    return _local_product(c, d, i, cup_i_cells_by_partitions)


def cup_i_bits(b: BlowUp, p: int, x: int, q: int, y: int, i: int) -> int:
    """Class bitset of ``x cup_i y`` for sections of degrees ``p`` and ``q``."""
    deg = p + q - i
    if i < 0 or deg < 0 or not x or not y or deg not in b.classes:
        return 0
    k = b.complex
    by_simplex: dict[str, list[tuple[int, Cell]]] = {}
    for j, (sid, h) in enumerate(b.classes[deg]):
        by_simplex.setdefault(sid, []).append((j, h))
    out = 0
    for sid, wanted in by_simplex.items():
        blocks = k[sid].blocks
        cls = b._class_of
        fs = [c for c in _cells_by_degree(blocks).get(p, ()) if (x >> cls[(sid, c)][1]) & 1]
        if not fs:
            continue
        gs = [c for c in _cells_by_degree(blocks).get(q, ()) if (y >> cls[(sid, c)][1]) & 1]
        if not gs:
            continue
        prod: set = set()
        for f in fs:
            for g in gs:
                h = cup_i_cells(f, g, i)
                if h is not None:
                    prod ^= {h}
        for j, h in wanted:
            if h in prod:
                out |= 1 << j
    return out


def cup_i_global(c: GlobalSection, d: GlobalSection, i: int) -> GlobalSection:
    """``(c cup_i d)_sigma = c_sigma cup_i d_sigma``, read off on class representatives."""
    if c.blowup is not d.blowup:
        raise ValueError("sections of different complexes")
    deg = max(c.degree + d.degree - i, 0)
    return GlobalSection(c.blowup, deg, cup_i_bits(c.blowup, c.degree, c.bits, d.degree, d.bits, i))
