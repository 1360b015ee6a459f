"""Blow-up cochains of a filtered face set and their perverse degrees.

Each regular simplex with blocks ``(j_0, ..., j_n)`` carries the tensor
product of the cochains of ``c D^{j_0}, ..., c D^{j_{n-1}}, D^{j_n}``.  A
basis element of that product is a *cell*: a tuple of nonempty vertex
masks, one per factor.  Cone factor ``k`` has vertices ``0..j_k`` followed by
the cone apex at bit ``j_k + 1`` (for ``j_k = -1`` the apex is bit 0 and the
factor is a point); the last factor has vertices ``0..j_n``.

Pulling a dual basis element back along a face map either gives the dual
of the preimage cell or zero, so the compatibility conditions defining a
global section are equalities between coordinates.  The global sections
are therefore exactly the functions that are constant on the equivalence
classes these equalities generate.  :class:`BlowUp` computes the classes
with a union-find and works in the basis of class indicators; the
extensional equalizer is still available through :func:`global_sections`
and is used as a cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .filtered import FilteredFaceSet, FilteredSimplex, Perversity, block_of_vertex
from .gf2 import BitMatrix, SubspacePresentation, bits, rank_and_kernel

__all__ = [
    "Cell",
    "LocalCochain",
    "GlobalSection",
    "BlowUp",
    "local_basis",
    "cell_degree",
    "cell_perverse_degree",
    "restrict_along_face",
    "local_coboundary",
    "global_sections",
    "coboundary_global",
    "perverse_degree",
    "intersection_subcomplex",
    "restriction_map",
    "section_from_cochain",
]

NEG_INF = -math.inf

Cell = tuple  # tuple[int, ...]: one vertex mask per factor


def factor_sizes(blocks: Sequence[int]) -> tuple[int, ...]:
    """Vertex count of each factor of the blow-up of a simplex."""
    return tuple(j + 2 for j in blocks[:-1]) + (blocks[-1] + 1,)


def apex_bit(blocks: Sequence[int], k: int) -> int:
    return blocks[k] + 1


@lru_cache(maxsize=None)
def _cells(blocks: tuple[int, ...]) -> tuple[Cell, ...]:
    per_factor = [range(1, 1 << s) for s in factor_sizes(blocks)]
    return tuple(itertools.product(*per_factor))


def cell_degree(cell: Cell) -> int:
    return sum(m.bit_count() for m in cell) - len(cell)


@lru_cache(maxsize=None)
def _cells_by_degree(blocks: tuple[int, ...]) -> dict[int, tuple[Cell, ...]]:
    out: dict[int, list] = {}
    for c in _cells(blocks):
        out.setdefault(cell_degree(c), []).append(c)
    return {k: tuple(v) for k, v in out.items()}


def local_basis(sigma: FilteredSimplex, k: int) -> list[Cell]:
    """Tensor basis of the local cochains of ``sigma`` in degree ``k``,
    lexicographic in the factor masks."""
    if not sigma.regular:
        raise ValueError(f"simplex {sigma.id!r} is not regular")
    return list(_cells_by_degree(sigma.blocks).get(k, ()))


def cell_perverse_degree(blocks: Sequence[int], cell: Cell, ell: int):
    """Depth-``ell`` perverse degree of a single basis element.

    The cone factor ``n - ell`` is restricted to its base: terms using the
    cone apex there vanish, the others keep the degree of the factors after
    it.
    """
    n = len(blocks) - 1
    b = n - ell
    if blocks[b] < 0 or (cell[b] >> apex_bit(blocks, b)) & 1:
        return NEG_INF
    return sum(m.bit_count() - 1 for m in cell[b + 1:])


def _insert_zero_bit(mask: int, t: int) -> int:
    low = mask & ((1 << t) - 1)
    return low | ((mask >> t) << (t + 1))


def _delete_bit(mask: int, t: int) -> int:
    low = mask & ((1 << t) - 1)
    return low | ((mask >> (t + 1)) << t)


def _face_position(sigma: FilteredSimplex, v: int) -> tuple[int, int]:
    return block_of_vertex(sigma.blocks, v)


def _include_cell(sigma: FilteredSimplex, v: int, cell: Cell) -> Cell:
    """Image in ``sigma`` of a cell of the face ``faces[v]``."""
    k, t = _face_position(sigma, v)
    return cell[:k] + (_insert_zero_bit(cell[k], t),) + cell[k + 1:]


def _facets(cell: Cell):
    """Cells obtained by deleting one vertex from one factor."""
    for m, mask in enumerate(cell):
        if mask & (mask - 1):
            for b in bits(mask):
                yield cell[:m] + (mask ^ (1 << b),) + cell[m + 1:]


@dataclass(frozen=True)
class LocalCochain:
    """A GF(2) combination of basis cells of one simplex."""

    owner: str
    blocks: tuple[int, ...]
    terms: frozenset

    @property
    def degree(self) -> Optional[int]:
        degs = {cell_degree(c) for c in self.terms}
        if len(degs) > 1:
            raise ValueError("mixed-degree local cochain")
        return degs.pop() if degs else None

    def __add__(self, other: "LocalCochain") -> "LocalCochain":
        if self.owner != other.owner:
            raise ValueError("local cochains on different simplices")
        return LocalCochain(self.owner, self.blocks, self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def perverse_degree(self) -> tuple:
        n = len(self.blocks) - 1
        return tuple(
            max((cell_perverse_degree(self.blocks, c, ell) for c in self.terms), default=NEG_INF)
            for ell in range(1, n + 1)
        )


def local_coboundary(c: LocalCochain) -> LocalCochain:
    sizes = factor_sizes(c.blocks)
    out: set = set()
    for cell in c.terms:
        for m, mask in enumerate(cell):
            for v in range(sizes[m]):
                if not (mask >> v) & 1:
                    out ^= {cell[:m] + (mask | (1 << v),) + cell[m + 1:]}
    return LocalCochain(c.owner, c.blocks, frozenset(out))


def restrict_along_face(c: LocalCochain, k: FilteredFaceSet, v: int) -> LocalCochain:
    """Pull ``c`` back along the face map deleting global vertex ``v`` of its owner."""
    sigma = k[c.owner]
    tau = k[sigma.faces[v]]
    if not tau.regular:
        raise ValueError("face is not regular")
    b, t = _face_position(sigma, v)
    terms = frozenset(
        cell[:b] + (_delete_bit(cell[b], t),) + cell[b + 1:]
        for cell in c.terms
        if not (cell[b] >> t) & 1
    )
    return LocalCochain(tau.id, tau.blocks, terms)


class BlowUp:
    """Global blow-up cochains of a filtered face set, in the class basis.

    ``classes[k]`` lists, for each degree-``k`` class, its representative
    cell ``(simplex id, cell)`` on a maximal regular simplex.  A section of
    degree ``k`` is a bitset over ``classes[k]``.
    """

    def __init__(self, k: FilteredFaceSet):
        self.complex = k
        self.n = k.n
        self._build_classes()
        self._delta: dict[int, BitMatrix] = {}
        self._kernel_cache: dict = {}

    # ------------------------------------------------------------ classes

    def _build_classes(self) -> None:
        k = self.complex
        regular = k.regular_ids
        index: dict[tuple[str, Cell], int] = {}
        cells: list[tuple[str, Cell]] = []
        for sid in regular:
            for c in _cells(k[sid].blocks):
                index[(sid, c)] = len(cells)
                cells.append((sid, c))
        parent = list(range(len(cells)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        is_face = set()
        for sid in regular:
            sigma = k[sid]
            for v, g in enumerate(sigma.faces):
                tau = k[g]
                if not tau.regular:
                    continue
                is_face.add(g)
                for c in _cells(tau.blocks):
                    a = find(index[(g, c)])
                    b = find(index[(sid, _include_cell(sigma, v, c))])
                    if a != b:
                        parent[max(a, b)] = min(a, b)

        self.maximal = tuple(s for s in regular if s not in is_face)
        rep_of_root: dict[int, tuple[int, int]] = {}
        self.classes: dict[int, list[tuple[str, Cell]]] = {}
        for sid in self.maximal:
            for c in _cells(k[sid].blocks):
                r = find(index[(sid, c)])
                if r not in rep_of_root:
                    d = cell_degree(c)
                    lst = self.classes.setdefault(d, [])
                    rep_of_root[r] = (d, len(lst))
                    lst.append((sid, c))
        self._class_of: dict[tuple[str, Cell], tuple[int, int]] = {}
        for x, key in enumerate(cells):
            cls = rep_of_root.get(find(x))
            if cls is None:
                raise AssertionError("a class has no member on a maximal simplex")
            self._class_of[key] = cls
        self.top_degree = max(self.classes, default=-1)
        # perverse degree of each class = max over its members
        self._class_pdeg: dict[int, list[list]] = {
            d: [[NEG_INF] * self.n for _ in lst] for d, lst in self.classes.items()
        }
        for (sid, c), (d, j) in self._class_of.items():
            row = self._class_pdeg[d][j]
            blocks = k[sid].blocks
            for ell in range(1, self.n + 1):
                row[ell - 1] = max(row[ell - 1], cell_perverse_degree(blocks, c, ell))

    def dim(self, k: int) -> int:
        """Dimension of the global sections of degree ``k``."""
        return len(self.classes.get(k, ()))

    def class_of(self, sid: str, cell: Cell) -> tuple[int, int]:
        return self._class_of[(sid, tuple(cell))]

    def cells_of_class(self, k: int, j: int) -> list[tuple[str, Cell]]:
        return [key for key, cls in self._class_of.items() if cls == (k, j)]

    def class_perverse_degree(self, k: int, j: int) -> tuple:
        return tuple(self._class_pdeg[k][j])

    # ------------------------------------------------------------ coboundary

    def delta(self, k: int) -> BitMatrix:
        """Matrix of the coboundary from degree ``k`` to ``k + 1``."""
        m = self._delta.get(k)
        if m is None:
            rows = []
            for sid, h in self.classes.get(k + 1, ()):
                r = 0
                for g in _facets(h):
                    d, j = self._class_of[(sid, g)]
                    r ^= 1 << j
                rows.append(r)
            m = BitMatrix(len(rows), self.dim(k), tuple(rows))
            self._delta[k] = m
        return m

    def coboundary_bits(self, k: int, x: int) -> int:
        return self.delta(k).matvec(x)

    # ------------------------------------------------------------ sections

    def section(self, k: int, x: int) -> "GlobalSection":
        return GlobalSection(self, k, x)

    def local(self, k: int, x: int, sid: str) -> LocalCochain:
        sigma = self.complex[sid]
        cells = _cells_by_degree(sigma.blocks).get(k, ())
        terms = frozenset(c for c in cells if (x >> self._class_of[(sid, c)][1]) & 1)
        return LocalCochain(sid, sigma.blocks, terms)

    def from_local(self, k: int, assignment: dict) -> int:
        """Class bitset of a section given on (at least) every maximal simplex.

        Raises ValueError if the assignment is not compatible.
        """
        x = 0
        for j, (sid, c) in enumerate(self.classes.get(k, ())):
            if c in assignment[sid].terms:
                x |= 1 << j
        for sid, loc in assignment.items():
            if self.local(k, x, sid).terms != loc.terms:
                raise ValueError(f"local cochains are not compatible at {sid}")
        return x

    def perverse_degree_bits(self, k: int, x: int) -> tuple:
        out = [NEG_INF] * self.n
        table = self._class_pdeg.get(k, ())
        for j in bits(x):
            for ell, v in enumerate(table[j]):
                if v > out[ell]:
                    out[ell] = v
        return tuple(out)

    # ------------------------------------------------------------ perversities

    def bad_classes(self, k: int, p: Perversity) -> int:
        """Classes of degree ``k`` whose perverse degree exceeds ``p`` somewhere."""
        if p.n != self.n:
            raise ValueError(f"perversity has {p.n} entries, complex has formal dimension {self.n}")
        out = 0
        for j, row in enumerate(self._class_pdeg.get(k, ())):
            if any(v > p(ell + 1) for ell, v in enumerate(row)):
                out |= 1 << j
        return out

    def admissible(self, k: int, x: int, p: Perversity) -> bool:
        return not (x & self.bad_classes(k, p))

    def intersection_subcomplex(self, k: int, p: Perversity) -> SubspacePresentation:
        """Sections ``c`` of degree ``k`` with ``c`` and ``dc`` both ``p``-admissible."""
        bad_k = self.bad_classes(k, p)
        bad_next = self.bad_classes(k + 1, p)
        key = ("N", k, bad_k, bad_next)
        hit = self._kernel_cache.get(key)
        if hit is None:
            d = self.delta(k)
            rows = [1 << j for j in bits(bad_k)] + [d.rows[r] for r in bits(bad_next)]
            _, hit = rank_and_kernel(BitMatrix(len(rows), self.dim(k), tuple(rows)))
            self._kernel_cache[key] = hit
        return hit

    def cocycles(self, k: int, p: Perversity) -> SubspacePresentation:
        bad_k = self.bad_classes(k, p)
        key = ("Z", k, bad_k)
        hit = self._kernel_cache.get(key)
        if hit is None:
            d = self.delta(k)
            rows = [1 << j for j in bits(bad_k)] + list(d.rows)
            _, hit = rank_and_kernel(BitMatrix(len(rows), self.dim(k), tuple(rows)))
            self._kernel_cache[key] = hit
        return hit

    def coboundaries(self, k: int, p: Perversity) -> SubspacePresentation:
        if k <= 0:
            return SubspacePresentation.zero(self.dim(k))
        prev = self.intersection_subcomplex(k - 1, p)
        d = self.delta(k - 1)
        return SubspacePresentation.span((d.matvec(x) for x in prev.basis), self.dim(k))

    # ------------------------------------------------------------ extensional view

    def extensional_index(self, k: int) -> list[tuple[str, Cell]]:
        """Coordinates of the extensional presentation: every (regular simplex, cell) pair."""
        out = []
        for sid in self.complex.regular_ids:
            out.extend((sid, c) for c in _cells_by_degree(self.complex[sid].blocks).get(k, ()))
        return out

    def to_extensional(self, k: int, x: int) -> int:
        out = 0
        for pos, key in enumerate(self.extensional_index(k)):
            if (x >> self._class_of[key][1]) & 1:
                out |= 1 << pos
        return out


@dataclass(frozen=True)
class GlobalSection:
    blowup: BlowUp
    degree: int
    bits: int

    def local(self, sid: str) -> LocalCochain:
        return self.blowup.local(self.degree, self.bits, sid)

    def __add__(self, other: "GlobalSection") -> "GlobalSection":
        if other.blowup is not self.blowup or other.degree != self.degree:
            raise ValueError("sections of different complexes or degrees")
        return GlobalSection(self.blowup, self.degree, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return bool(self.bits)

    def coboundary(self) -> "GlobalSection":
        return coboundary_global(self)

    def perverse_degree(self) -> tuple:
        return perverse_degree(self)


def global_sections(k: FilteredFaceSet, degree: int) -> tuple[list[tuple[str, Cell]], SubspacePresentation]:
    """Equalizer of the local cochains, computed directly as a kernel.

    Coordinates are every (regular simplex, cell) pair; one equation per
    face relation inside the regular part and per cell of the face.
    """
    coords = []
    for sid in k.regular_ids:
        coords.extend((sid, c) for c in _cells_by_degree(k[sid].blocks).get(degree, ()))
    pos = {key: j for j, key in enumerate(coords)}
    rows = []
    for sid in k.regular_ids:
        sigma = k[sid]
        for v, g in enumerate(sigma.faces):
            tau = k[g]
            if not tau.regular:
                continue
            for c in _cells_by_degree(tau.blocks).get(degree, ()):
                rows.append((1 << pos[(g, c)]) | (1 << pos[(sid, _include_cell(sigma, v, c))]))
    _, ker = rank_and_kernel(BitMatrix(len(rows), len(coords), tuple(rows)))
    return coords, ker


def coboundary_global(c: GlobalSection) -> GlobalSection:
    return GlobalSection(c.blowup, c.degree + 1, c.blowup.coboundary_bits(c.degree, c.bits))


def perverse_degree(c: GlobalSection) -> tuple:
    return c.blowup.perverse_degree_bits(c.degree, c.bits)


def intersection_subcomplex(b: BlowUp, p: Perversity, k: int) -> SubspacePresentation:
    return b.intersection_subcomplex(k, p)


def restriction_map(big: BlowUp, small: BlowUp):
    """Restriction of sections to a sub filtered face set, in class bits.

    Returns ``restrict(degree, x)``.
    """
    table = {
        d: [big.class_of(sid, cell)[1] for sid, cell in small.classes[d]]
        for d in small.classes
    }

    def restrict(d: int, x: int) -> int:
        out = 0
        for j, src in enumerate(table.get(d, ())):
            if (x >> src) & 1:
                out |= 1 << j
        return out

    return restrict


def section_from_cochain(b: BlowUp, f, degree: int, values: int, prefix: str = "") -> int:
    """The section of a trivially filtered complex matching a cochain of ``f``.

    Every cone factor is a point there, so a cell is just a face of its
    simplex.  ``prefix`` is prepended to ids of ``f`` to get ids of the
    filtered complex.
    """
    out = 0
    cut = len(prefix)
    for j, (sid, cell) in enumerate(b.classes.get(degree, ())):
        if any(m != 1 for m in cell[:-1]):
            raise ValueError(f"{sid} is not trivially filtered")
        face = f.face_by_vertices(sid[cut:], tuple(bits(cell[-1])))
        if (values >> f.index(face)) & 1:
            out |= 1 << j
    return out
