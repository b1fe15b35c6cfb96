# %% [markdown]
# Listing every structure on S_n

# %%
from collections import Counter

from arithstar import EnumSpec, count_structures, enumerate_structures

for n in range(1, 7):
    print(n, count_structures(EnumSpec(n)), count_structures(EnumSpec(n, d0_filter=1)))

# %% Distribution of the center label for n = 6
print(Counter(d.d0 for d in enumerate_structures(EnumSpec(6))))

# %% The first few, in lexicographic order
for d in enumerate_structures(EnumSpec(5, max_results=6)):
    print(d, "d0 =", d.d0)

# %% Work can be split by fixed prefixes; the pieces cover the whole list
from arithstar.enumeration import partition_work

children = partition_work(EnumSpec(6), 2)
print(len(children), "children,", sum(count_structures(c) for c in children), "structures")
