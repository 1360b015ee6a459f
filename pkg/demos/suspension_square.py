"""
Squares commute with suspension
===============================

Suspending RP^2 shifts its cohomology up by one.  With the zero perversity
the class coming from H^1(RP^2) sits in H^2 of the suspension, and its Sq^1
is still nonzero.
"""

from perverse_squares import Perversity
from perverse_squares.corpus import build
from perverse_squares.squares import class_count, square_matrix, steenrod_square

k = build("suspension", "rp2")
p = Perversity((0, 0, 0))
print("dims", class_count(k, p))
print("Sq^1: H^2 -> H^3", square_matrix(k, p, 2, 1).to_dense().tolist())

sq = steenrod_square(k, p, 2, 1, 1)
print("target perversity", sq.target_perversity, "witness degree", sq.witness_perverse_degree)
print("image in perversity 2p:", sq.image_in_2p)
