"""
A Moebius band with its boundary coned off
==========================================

Coning off the boundary circle of a Moebius band gives RP^2 with a marked
point.  Intersection cohomology is H*(W) below the cut, the kernel of the
boundary restriction at the cut, and H*(W, boundary) above it.  The second
half of the script computes the squares twice: once from blow-up cochains,
once inside a small cochain model on the band itself.
"""

from perverse_squares.complex import boundary_components
from perverse_squares.corpus import surface
from perverse_squares.isolated import PullbackModel, formula_dims, lift_scalar
from perverse_squares.squares import class_count, steenrod_square

w = surface("moebius")
comps = boundary_components(w)
print("boundary has", len(comps[0]), "simplices")

for t in [-1, 0, 1, 2]:
    model = PullbackModel(w, comps, t)
    k, p = model.coned(), model.perversity()
    print(f"t = {t:2d}  formula {formula_dims(w, comps[0], t)}  model {model.dims()}  blow-up {class_count(k, p)}")

# Sq^1 on H^1 at t = 0: the model square, pushed into the blow-up, against the blow-up square
model = PullbackModel(w, comps, 0)
k, p = model.coned(), model.perversity()
to_blowup = model.induced(1)
x = to_blowup.matvec(1)
direct = steenrod_square(k, p, 1, x, 1)
via_model = model._with_cut(lift_scalar(0, 1)).induced(2).matvec(model.square(1, 1, 1))
print("Sq^1 of the generator:", direct.target_coords, "via the model:", via_model)
print("witness perverse degree", direct.witness_perverse_degree, "bound", direct.target_perversity)
