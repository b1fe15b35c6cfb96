# %% [markdown]
# Critical groups of star structures
#
# A structure on the star S_n is a list of leaf labels whose reciprocals
# add up to a whole number. Its critical group can be read off the labels.

# %%
from arithstar import DhatVector, critical_star, critical_star_oracle, critical_order
from arithstar.structures import dhat_to_structure, laplacian, validate

dhat = DhatVector([2, 3, 4, 4, 6, 9, 9, 10, 15, 18, 18])
print("d0 =", dhat.d0, " r0 =", dhat.r0, " r =", dhat.r)
print("group:", critical_star(dhat).group)

# %% The same answer from the Smith normal form of the Laplacian
print("oracle:", critical_star_oracle(dhat).group)
print("order from r alone:", critical_order(dhat))

# %% Full labelling and the balance check at every vertex
s = dhat_to_structure(dhat)
print(s.d)
print(s.r)
print(validate(s))
print(laplacian(dhat_to_structure(DhatVector([2, 3, 6]))).to_rows())

# %% Invalid labels are rejected with the exact sum
try:
    DhatVector([2, 3, 5])
except ValueError as exc:
    print(exc)
