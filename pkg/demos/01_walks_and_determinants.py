# Walk matrices of a dissected heptagon and their determinants.
# Run: python demos/01_walks_and_determinants.py

# %%
from polyfrieze import build, weight_matrix
from polyfrieze.normalform import det_expand, det_formula, smith_normal_form, theorem_display

d = build(7, [(2, 7), (3, 6), (4, 6)])
print(d)
print("pieces:", d.pieces, "type:", d.type)

# %%
# walk counts; this one is symmetric
M = weight_matrix(d, "arithmetic")
for row in M.format():
    print(" ".join(s.rjust(2) for s in row))
print("det M =", det_expand(M))

# %%
# same walks, weighted by the pieces they use (a, b, c, d for pieces 1..4)
names = {("x", 1): "a", ("x", 2): "b", ("x", 3): "c", ("x", 4): "d"}
W = weight_matrix(d, "x")
print("first row:", [p.to_str(names) for p in W.rows[0]])

# %%
# the expansion agrees with the product over pieces
det = det_expand(W)
print(len(det), "terms, equal to the product formula:", det == det_formula(d, "x"))

# %%
# integer Smith form versus the diagonal with entries d_l - 1
ints = [[int(e) for e in row] for row in M.rows]
res = smith_normal_form(ints, display=theorem_display(d.type, d.n))
print("invariant factors:", res.invariant_factors)
print("equivalent diagonal:", res.display_diagonal)
