"""Exact linear algebra over GF(2).

Vectors are Python ints used as bitsets: bit ``j`` is coordinate ``j``.
Matrices are stored row-wise as lists of such bitsets.  Every echelon form
in this module uses the *lowest* set bit of a row as its pivot, and
"reduced" means each pivot column is zero in every other row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "SubspacePresentation",
    "QuotientSpace",
    "Reducer",
    "rref",
    "rank_and_kernel",
    "solve",
    "quotient_basis",
    "bits",
    "low_bit",
    "vector_from_bits",
    "bits_of",
]


def low_bit(v: int) -> int:
    """Index of the lowest set bit of a nonzero vector."""
    return (v & -v).bit_length() - 1


def bits(v: int):
    """Yield the indices of the set bits of ``v`` in increasing order."""
    while v:
        b = v & -v
        yield b.bit_length() - 1
        v ^= b


def bits_of(v: int, length: int) -> tuple[int, ...]:
    """Dense 0/1 tuple of a bitset."""
    return tuple((v >> j) & 1 for j in range(length))


def vector_from_bits(entries: Iterable[int]) -> int:
    v = 0
    for j, e in enumerate(entries):
        if int(e) & 1:
            v |= 1 << j
    return v


def rref(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form of a list of bitsets.

    Zero rows are dropped and the result is sorted by pivot, so two lists
    spanning the same space give identical output.
    """
    piv: dict[int, int] = {}
    for r in rows:
        for p, row in piv.items():
            if (r >> p) & 1:
                r ^= row
        if not r:
            continue
        p = low_bit(r)
        for q in list(piv):
            if (piv[q] >> p) & 1:
                piv[q] ^= r
        piv[p] = r
    return [piv[p] for p in sorted(piv)]


@dataclass(frozen=True)
class BitMatrix:
    """A dense ``nrows x ncols`` matrix over GF(2), rows packed into ints."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BitMatrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "BitMatrix":
        out = [0] * nrows
        for j, c in enumerate(cols):
            for i in bits(c):
                out[i] |= 1 << j
        return cls(nrows, len(cols), tuple(out))

    @classmethod
    def from_dense(cls, array) -> "BitMatrix":
        a = np.asarray(array, dtype=np.int64) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(a.shape[0], a.shape[1], tuple(vector_from_bits(row) for row in a))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                out[i, j] = 1
        return out

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self.rows[i] >> j) & 1

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return cols

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows, tuple(self.columns()))

    def matvec(self, x: int) -> int:
        """``m @ x`` with ``x`` a bitset over columns."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= other.rows[j]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def rank(self) -> int:
        return len(rref(self.rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "." for j in range(self.ncols))
            for r in self.rows
        )


@dataclass(frozen=True)
class SubspacePresentation:
    """A subspace of ``GF(2)^ambient_dim`` given by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> "SubspacePresentation":
        return cls(ambient_dim, tuple(rref(vectors)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspacePresentation":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspacePresentation":
        return cls(ambient_dim, tuple(1 << j for j in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(low_bit(b) for b in self.basis)

    def reduce(self, v: int) -> int:
        """Remainder of ``v`` after clearing every pivot column."""
        for b in self.basis:
            if (v >> low_bit(b)) & 1:
                v ^= b
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __contains__(self, v: int) -> bool:
        return self.contains(v)

    def issubspace(self, other: "SubspacePresentation") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "SubspacePresentation") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "SubspacePresentation") -> "SubspacePresentation":
        return SubspacePresentation.span(self.basis + other.basis, self.ambient_dim)


def rank_and_kernel(m: BitMatrix) -> tuple[int, SubspacePresentation]:
    """Rank of ``m`` and a canonical basis of ``{x : m x = 0}``."""
    reduced = rref(m.rows)
    pivots = [low_bit(r) for r in reduced]
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivots, reduced):
            if (r >> f) & 1:
                v |= 1 << p
        kernel.append(v)
    return len(reduced), SubspacePresentation.span(kernel, m.ncols)


def solve(m: BitMatrix, b: int | Sequence[int]) -> Optional[int]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent.

    The returned solution is the echelon-canonical one: every free variable
    is zero.
    """
    if not isinstance(b, int):
        if len(b) != m.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
        b = vector_from_bits(b)
    elif b >> m.nrows:
        raise ValueError("right-hand side has bits outside the row range")
    # augment each row with its right-hand side bit in column ncols
    aug = [r | (((b >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    x = 0
    for row in rref(aug):
        p = low_bit(row)
        if p == m.ncols:
            return None
        if (row >> m.ncols) & 1:
            x |= 1 << p
    return x


def quotient_basis(sub: SubspacePresentation, amb: SubspacePresentation) -> list[int]:
    """Canonical coset representatives of ``amb / sub``.

    Representatives are zero on the pivot columns of ``sub`` and of each
    other, so the output depends only on the two subspaces.
    """
    if sub.ambient_dim != amb.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    for v in sub.basis:
        if not amb.contains(v):
            raise ValueError("sub is not contained in amb")
    residues = [sub.reduce(v) for v in amb.basis]
    reps = rref(r for r in residues if r)
    return [sub.reduce(r) for r in reps]


class Reducer:
    """Incremental elimination that remembers how each row was formed.

    Every inserted vector carries a *tag* bitset; reducing a vector returns
    the remainder together with the XOR of the tags used, which is how
    coordinates with respect to a generating family are recovered.
    """

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(remainder, tag)``; the remainder has no pivot bits."""
        rest = 0
        tag = 0
        while v:
            p = low_bit(v)
            hit = self._rows.get(p)
            if hit is None:
                rest |= 1 << p
                v ^= 1 << p
            else:
                v ^= hit[0]
                tag ^= hit[1]
        return rest, tag

    def add(self, v: int, tag: int) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        rest, t = self.reduce(v)
        if not rest:
            return False
        self._rows[low_bit(rest)] = (rest, tag ^ t)
        return True


class QuotientSpace:
    """``amb / sub`` with canonical representatives and coordinate extraction."""

    def __init__(self, sub: SubspacePresentation, amb: SubspacePresentation):
        self.sub = sub
        self.amb = amb
        self.representatives: tuple[int, ...] = tuple(quotient_basis(sub, amb))
        self._reducer = Reducer()
        for b in sub.basis:
            self._reducer.add(b, 0)
        for j, r in enumerate(self.representatives):
            self._reducer.add(r, 1 << j)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, v: int) -> Optional[int]:
        """Bitset of representative indices expressing ``v`` modulo ``sub``.

        ``None`` if ``v`` is not in ``amb``.
        """
        if not self.amb.contains(v):
            return None
        rest, tag = self._reducer.reduce(v)
        assert rest == 0
        return tag

    def lift(self, coords: int) -> int:
        v = 0
        for j in bits(coords):
            v ^= self.representatives[j]
        return v
