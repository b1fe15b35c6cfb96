# %% [markdown]
# Building structures with a chosen critical group

# %%
from arithstar import DhatVector, critical_star
from arithstar.abelian import from_cyclic_orders
from arithstar.construct import (
    concatenate,
    d_a_expand,
    d_a_group_law,
    double_structure,
    embed_group,
    extremal_candidates,
    iterate_d_a,
    scale_to_d0_one,
    sylvester_prime_cyclic,
    sylvester_trivial,
)

# %% Sylvester's sequence gives trivial groups
for n in range(2, 7):
    print(n, sylvester_trivial(n))

# %% Splitting the largest entry adds a cyclic summand
base = DhatVector([2, 3, 11, 15, 110])
print(d_a_expand(base, 5), d_a_group_law(base, 5))

# %% Repeating with a = 2 grows (Z/2)^k
d = DhatVector([2, 2])
for k in range(4):
    d = iterate_d_a(d, [2])
    print(d, critical_star(d).group)

# %% Z/13 from a Sylvester prime: 13 divides 1807
big = sylvester_prime_cyclic(13, {13: 5}, length=7)
print(big.entries[-1], critical_star(big).group)

# %% Gluing two structures
print(critical_star(concatenate(DhatVector([3, 3, 7, 7, 21]), DhatVector([2, 5, 5, 10]))).group)

# %% Any finite abelian group sits inside some critical group
emb, full = embed_group([10, 10, 25, 3])
print(emb.n, full.rank, full.exponent)
scaled = scale_to_d0_one(DhatVector([1, 2, 2, 3, 3, 6, 6]))
print(scaled, critical_star(scaled).group)
print(double_structure(DhatVector([2, 3, 6])))

# %% Conjectured extremes
for n in (4, 5, 6, 7):
    ex = extremal_candidates(n)
    print(n, ex.order_candidate, ex.order, ex.cyclic_group)
