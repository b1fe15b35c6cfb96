# %% [markdown]
# All critical groups on small stars, compared with published lists

# %%
from arithstar.survey import (
    compare_fixture,
    load_fixture,
    run_survey,
    verify_count_doubling,
    verify_star_equals_complete,
)

for n in range(2, 8):
    rep = run_survey(n)
    print(n, rep.structure_count, len(rep.witnesses), rep.max_order, rep.max_order_witness)

# %% Against the group lists, with and without the one correction
for n in range(2, 7):
    rep = run_survey(n)
    print(n, compare_fixture(rep, load_fixture("group-lists", n)).summary())
print(compare_fixture(run_survey(5), load_fixture("group-lists", 5, apply_errata=False)).summary())

# %% Stars and complete graphs give the same sets
print([verify_star_equals_complete(n).ok for n in range(2, 7)])

# %% Group counts at least double from n - 1 to n
for n in range(3, 7):
    print(verify_count_doubling(n))

# %% Rank histogram for n = 6
print(run_survey(6).rank_histogram)
