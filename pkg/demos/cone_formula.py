"""
Cohomology of a cone
====================

The cone on Y has one singular point.  Its intersection cohomology keeps
H^r(Y) up to degree p(n) and kills everything above.
"""

from perverse_squares import Perversity
from perverse_squares.complex import classical_cohomology
from perverse_squares.corpus import build, surface
from perverse_squares.squares import class_count, square_matrix

for name in ["circle", "torus", "rp2"]:
    y = [h.dim for h in classical_cohomology(surface(name))]
    k = build("cone", name)
    print(f"cone({name}), H*(Y) = {y}, formal dimension {k.n}")
    for top in [-1, 0, 1, 2, 3, float("inf")]:
        p = Perversity((0,) * (k.n - 1) + (top,))
        print(f"   p(n) = {top:>4}:  {class_count(k, p)}")

# squares survive as long as source and target are below the cut

k = build("cone", "rp2")
for top in [1, 2, 3]:
    p = Perversity((0, 0, top))
    print("Sq^1 H^1 -> H^2 with p(3) =", top, square_matrix(k, p, 1, 1).to_dense().tolist())
