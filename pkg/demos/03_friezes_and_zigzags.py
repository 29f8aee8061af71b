# Polynomial frieze patterns and the zig-zag description of their minors.
# Run: python demos/03_friezes_and_zigzags.py

# %%
from polyfrieze import build, build_frieze, find_zigzag, minor, minor_formula, weight_matrix

d = build(5, [(2, 4), (2, 5)])
print(build_frieze(weight_matrix(d, "arithmetic")).render())

# %%
# piece weights only; names chosen to match the usual picture
names = {("x", 1): "a", ("x", 2): "c", ("x", 3): "b"}
print(build_frieze(weight_matrix(d, "x")).render(names=names, mark_fundamental=False))

# %%
# 2x2 minors between boundary edges e_1 = (1,2) and e_3 = (3,4)
W = weight_matrix(d, "xq")
for e, f in [(1, 3), (3, 1)]:
    z = find_zigzag(d, e, f)
    print(f"d({e},{f}) =", minor(W, e, f))
    print("   zig-zag:", " -> ".join(map(str, z.sequence)), "zig pieces:", z.zig_pieces)
    print("   formula agrees:", minor(W, e, f) == minor_formula(d, e, f))

# %%
# opposite edges of a square share no vertex, so the minor vanishes
sq = build(4)
print(find_zigzag(sq, 1, 3), minor(weight_matrix(sq, "xq"), 1, 3))
