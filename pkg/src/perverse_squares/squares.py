"""Intersection cohomology of a blow-up and its Steenrod squares.

``Sq^i`` of a class of degree ``k`` and perversity ``p`` is the class of
``z cup_{k-i} z`` for a representative cocycle ``z``.  The witness lands in
perversity ``L(p, i) = min(2p, p + i)``; every computed square checks this
bound and the cocycle condition instead of assuming them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .blowup import BlowUp
from .cupi import cup_i_bits
from .filtered import FilteredFaceSet, Perversity
from .gf2 import BitMatrix, QuotientSpace

__all__ = [
    "CohomologyPresentation",
    "SquareResult",
    "InvariantError",
    "perverse_cohomology",
    "induced_map",
    "steenrod_square",
    "square_matrix",
    "blowup_of",
]


class InvariantError(AssertionError):
    """An internal invariant failed: a bug, not bad input."""


_BLOWUPS: dict[int, tuple[FilteredFaceSet, BlowUp]] = {}


def blowup_of(k: Union[FilteredFaceSet, BlowUp]) -> BlowUp:
    """The (cached) blow-up of a filtered face set."""
    if isinstance(k, BlowUp):
        return k
    hit = _BLOWUPS.get(id(k))
    if hit is None or hit[0] is not k:
        hit = (k, BlowUp(k))
        _BLOWUPS[id(k)] = hit
    return hit[1]


class CohomologyPresentation:
    """``H^k_p`` with canonical representatives and coordinate extraction."""

    def __init__(self, b: BlowUp, p: Perversity, k: int, quotient: Optional[QuotientSpace] = None):
        self.blowup = b
        self.perversity = p
        self.degree = k
        if quotient is None:
            quotient = QuotientSpace(b.coboundaries(k, p), b.cocycles(k, p))
        self._q = quotient
        self.cocycles = quotient.amb
        self.coboundaries = quotient.sub

    @property
    def dim(self) -> int:
        return self._q.dim

    @property
    def representatives(self) -> tuple[int, ...]:
        return self._q.representatives

    def coordinates(self, z: int) -> Optional[int]:
        """Coordinates of a cocycle of ``N_p``; ``None`` if it is not one."""
        return self._q.coordinates(z)

    def lift(self, coords: int) -> int:
        return self._q.lift(coords)

    def __repr__(self) -> str:
        return f"H^{self.degree}_({self.perversity}) dim={self.dim}"


def perverse_cohomology(k, p: Perversity, degree: int) -> CohomologyPresentation:
    b = blowup_of(k)
    cache = b.__dict__.setdefault("_cohomology_cache", {})
    key = (degree, b.bad_classes(degree, p), b.bad_classes(degree - 1, p) if degree > 0 else 0)
    q = cache.get(key)
    if q is None:
        q = QuotientSpace(b.coboundaries(degree, p), b.cocycles(degree, p))
        cache[key] = q
    return CohomologyPresentation(b, p, degree, q)


def induced_map(k, p: Perversity, q: Perversity, degree: int) -> BitMatrix:
    """Matrix (rows = target basis) of ``H^degree_p -> H^degree_q`` for ``p <= q``."""
    if not p <= q:
        raise ValueError(f"perversity {p} is not <= {q}")
    src = perverse_cohomology(k, p, degree)
    dst = perverse_cohomology(k, q, degree)
    cols = []
    for z in src.representatives:
        c = dst.coordinates(z)
        if c is None:
            raise InvariantError("a p-cocycle is not a q-cocycle")
        cols.append(c)
    return BitMatrix.from_columns(cols, dst.dim)


@dataclass(frozen=True)
class SquareResult:
    source_degree: int
    source_coords: int
    i: int
    target_perversity: Perversity
    target_degree: int
    target_coords: int
    witness: int
    witness_perverse_degree: tuple
    image_in_2p: int


def steenrod_square(
    k,
    p: Perversity,
    degree: int,
    coords: int,
    i: int,
    representative: Optional[int] = None,
) -> SquareResult:
    """``Sq^i`` of the class with coordinates ``coords`` in ``H^degree_p``.

    ``representative`` overrides the canonical cocycle (it must represent
    the same class; this is how representative independence is tested).
    """
    b = blowup_of(k)
    target = p.lift(i)
    tdeg = degree + i
    nothing = (-float("inf"),) * b.n
    if i < 0 or i > degree or (coords == 0 and representative is None):
        return SquareResult(degree, coords, i, target, tdeg, 0, 0, nothing, 0)
    src = perverse_cohomology(b, p, degree)
    z = src.lift(coords) if representative is None else representative
    if representative is not None and src.coordinates(z) != coords:
        raise ValueError("representative does not represent the given class")
    w = cup_i_bits(b, degree, z, degree, z, degree - i)
    if b.coboundary_bits(tdeg, w):
        raise InvariantError(f"Sq^{i} witness is not a cocycle")
    pdeg = b.perverse_degree_bits(tdeg, w)
    for ell in range(1, b.n + 1):
        if pdeg[ell - 1] > target(ell):
            raise InvariantError(
                f"Sq^{i} witness has perverse degree {pdeg} above L(p,{i}) = {target}"
            )
    dst = perverse_cohomology(b, target, tdeg)
    tc = dst.coordinates(w)
    if tc is None:
        raise InvariantError("Sq witness is not a cocycle of the target perversity")
    img = perverse_cohomology(b, p.double(), tdeg).coordinates(w)
    if img is None:
        raise InvariantError("Sq witness is not a cocycle of perversity 2p")
    return SquareResult(degree, coords, i, target, tdeg, tc, w, pdeg, img)


def square_matrix(k, p: Perversity, degree: int, i: int) -> BitMatrix:
    """Matrix of ``Sq^i: H^degree_p -> H^{degree+i}_{L(p,i)}`` (columns = source basis)."""
    src = perverse_cohomology(k, p, degree)
    dst = perverse_cohomology(k, p.lift(i), degree + i)
    cols = [steenrod_square(k, p, degree, 1 << j, i).target_coords for j in range(src.dim)]
    return BitMatrix.from_columns(cols, dst.dim)


def class_count(k, p: Perversity) -> list[int]:
    b = blowup_of(k)
    return [perverse_cohomology(b, p, d).dim for d in range(b.top_degree + 1)]
