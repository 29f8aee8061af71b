# An explicit diagonal form P W Q = D over the Laurent polynomial ring.
# Run: python demos/02_diagonal_form.py

# %%
from polyfrieze import build, random_dissection
from polyfrieze.normalform import diagonalize, diagonalize_trivial

d = build(5, [(2, 4), (2, 5)])
form = diagonalize(d)
for entry in form.diagonal():
    print(entry)

# %%
# P and Q are invertible: their determinants are signed monomials
print("det P =", form.det_P)
print("det Q =", form.det_Q)
print("P W Q == D:", form.product() == form.D)

# %%
# the undissected hexagon, before the final normalisation
raw = diagonalize_trivial(6, normalize=False)
print([str(e) for e in raw.diagonal()])

# %%
# a larger random example
big = random_dissection(10, seed=2)
print(big, big.type)
print("verified:", diagonalize(big).verify())
