"""
Steenrod squares of small surfaces
==================================

With every simplex put in the regular stratum, intersection cohomology is
ordinary mod 2 cohomology, whatever the perversity.  Sq^1 on H^1 is the
cup product with the first Stiefel-Whitney class, so it sees orientability.
"""

from perverse_squares import Perversity
from perverse_squares.complex import ClassicalCohomology, classical_sq
from perverse_squares.corpus import build, surface
from perverse_squares.gf2 import BitMatrix
from perverse_squares.squares import class_count, square_matrix

for name in ["torus", "klein", "rp2"]:
    f = surface(name)
    k = build("trivial", name)
    p = Perversity((0, 0))
    h1, h2 = ClassicalCohomology(f, 1), ClassicalCohomology(f, 2)
    classical = BitMatrix.from_columns([classical_sq(h1, h2, 1 << j, 1) for j in range(h1.dim)], h2.dim)
    # the two computations use different bases, so compare ranks
    print(f"{name:6s} dims {class_count(k, p)}  rank of Sq^1 on H^1: "
          f"blow-up {square_matrix(k, p, 1, 1).rank()}, classical {classical.rank()}")

# the perversity really is irrelevant here
k = build("trivial", "rp2")
for v in [-1, 0, 2, float("inf")]:
    print(v, class_count(k, Perversity((v, v))))
