"""Isolated singularities: a manifold with boundary with its boundary coned off.

Two things live here.  :func:`formula_dims` evaluates the three-case
description of the intersection cohomology (absolute cohomology of ``W``
below the cut, the kernel of the boundary restriction at the cut, relative
cohomology above it) with the classical cochain code.  :class:`PullbackModel`
is a small cochain algebra inside ``N*(W)``: cochains whose boundary
restriction is unconstrained below degree ``t``, a cocycle in degree ``t``
and zero above.  Its cup_i products and squares are classical ones on
``W``, and :meth:`PullbackModel.to_blowup` maps it into the blow-up
cochains of the coned-off complex, which gives a second route to the
squares there.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .complex import Cochain, ClassicalCohomology, FaceSet, cup_i, restriction_kernel_dim, subcomplex_closure
from .filtered import FilteredFaceSet, Perversity, cone_off_boundary
from .gf2 import BitMatrix, QuotientSpace, SubspacePresentation, bits, rank_and_kernel
from .squares import blowup_of, perverse_cohomology

__all__ = ["lift_scalar", "formula_dims", "PullbackModel"]


def lift_scalar(t, i: int):
    """``min(2t, t + i)`` on a single value."""
    return min(2 * t, t + i)


def formula_dims(w: FaceSet, boundary: Iterable[str], t) -> list[int]:
    """Intersection cohomology dimensions of the coned-off ``w`` for cut ``t``."""
    bdry = sorted(subcomplex_closure(w, boundary))
    out = []
    for k in range(w.dim + 1):
        if k <= t:
            out.append(ClassicalCohomology(w, k).dim)
        elif k == t + 1:
            out.append(restriction_kernel_dim(w, bdry, k))
        else:
            out.append(ClassicalCohomology(w, k, bdry).dim)
    return out


class PullbackModel:
    """Cochains of ``w`` whose boundary restriction is truncated at degree ``t``."""

    def __init__(self, w: FaceSet, components: Sequence[Iterable[str]], t, n: Optional[int] = None):
        self.w = w
        self.components = [sorted(c) for c in components]
        self.boundary = set().union(*map(set, self.components)) if self.components else set()
        self.t = t
        self.n = w.dim if n is None else n
        self._spaces: dict[int, SubspacePresentation] = {}
        self._h: dict[int, QuotientSpace] = {}

    def _with_cut(self, t) -> "PullbackModel":
        if t == self.t:
            return self
        m = PullbackModel(self.w, self.components, t, self.n)
        if "_coned" in self.__dict__:
            m.__dict__["_coned"] = self.__dict__["_coned"]
        return m

    def _constraints(self, k: int) -> list[int]:
        w = self.w
        if k > self.t:
            return [1 << j for j, s in enumerate(w.of_dim(k)) if s in self.boundary]
        if k == self.t:
            rows = []
            for s in w.of_dim(k + 1):
                if s in self.boundary:
                    r = 0
                    for g in w.faces(s):
                        r ^= 1 << w.index(g)
                    rows.append(r)
            return rows
        return []

    def _kernel(self, k: int, rows: list[int]) -> SubspacePresentation:
        _, ker = rank_and_kernel(BitMatrix(len(rows), len(self.w.of_dim(k)), tuple(rows)))
        return ker

    def space(self, k: int) -> SubspacePresentation:
        """``P^k`` as a subspace of ``N^k(w)``."""
        hit = self._spaces.get(k)
        if hit is None:
            hit = self._kernel(k, self._constraints(k))
            self._spaces[k] = hit
        return hit

    def cohomology(self, k: int) -> QuotientSpace:
        hit = self._h.get(k)
        if hit is None:
            w = self.w
            z = self._kernel(k, self._constraints(k) + list(w.coboundary_matrix(k).rows))
            if k == 0:
                bsp = SubspacePresentation.zero(len(w.of_dim(0)))
            else:
                dp = w.coboundary_matrix(k - 1)
                bsp = SubspacePresentation.span((dp.matvec(x) for x in self.space(k - 1).basis), len(w.of_dim(k)))
            hit = QuotientSpace(bsp, z)
            self._h[k] = hit
        return hit

    def dims(self) -> list[int]:
        return [self.cohomology(k).dim for k in range(self.w.dim + 1)]

    def square(self, k: int, coords: int, i: int) -> int:
        """``Sq^i`` computed on ``w``, as coordinates in the model with cut ``L(t, i)``."""
        if i < 0 or i > k or not coords:
            return 0
        a = Cochain(self.w, k, self.cohomology(k).lift(coords))
        sq = cup_i(a, a, k - i).values
        out = self._with_cut(lift_scalar(self.t, i)).cohomology(k + i).coordinates(sq)
        if out is None:
            raise AssertionError("square left the model")
        return out

    # -------------------------------------------------------- into the blow-up

    def coned(self) -> FilteredFaceSet:
        k = self.__dict__.get("_coned")
        if k is None:
            k = cone_off_boundary(self.w, self.components, self.n)
            self.__dict__["_coned"] = k
        return k

    def perversity(self, t=None) -> Perversity:
        t = self.t if t is None else t
        return Perversity((0,) * (self.n - 1) + (t,))

    def to_blowup(self, k: int, alpha: int) -> int:
        """Blow-up section carried by the cochain ``alpha`` of ``w``.

        On a simplex of ``w`` the section is ``alpha`` itself.  On a coned
        simplex it is ``1 (x) alpha|base``: the value of ``alpha`` on the
        base face named by the last factor, when the cone factor is a single
        vertex, and zero on the edge of the cone factor.
        """
        m = self.coned()
        b = blowup_of(m)
        out = 0
        for j, (sid, cell) in enumerate(b.classes.get(k, ())):
            sigma = m[sid]
            if sigma.blocks[0] >= 0:
                if cell[0].bit_count() != 1:
                    continue
                base = m[sigma.faces[0]].id
            else:
                base = sid
            wid = base[len("w:"):]
            face = self.w.face_by_vertices(wid, tuple(bits(cell[-1])))
            if (alpha >> self.w.index(face)) & 1:
                out |= 1 << j
        return out

    def induced(self, k: int) -> BitMatrix:
        """Matrix of the map from the model's ``H^k`` to ``H^k_p`` of the coned-off complex."""
        src = self.cohomology(k)
        dst = perverse_cohomology(self.coned(), self.perversity(), k)
        cols = []
        for a in src.representatives:
            c = dst.coordinates(self.to_blowup(k, a))
            if c is None:
                raise AssertionError("image of a model cocycle is not an intersection cocycle")
            cols.append(c)
        return BitMatrix.from_columns(cols, dst.dim)
