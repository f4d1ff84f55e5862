"""
Row additions predicted by the cost model
=========================================

Exact integer evaluation of the four per-round counts, shown in billions
of row additions for k = 50 and 75.
"""

from mindist.cost import cost_table, render_text, cost_saved, cost_stack

table = cost_table([50, 75], [7, 10, 15, 20], s=5)
print(render_text(table))

# exact integers are available too
print()
print(render_text(cost_table([50], [7]), exact=True))

# the saved-additions count is not always below the stack count:
# with s = 5 and g = 16 every left part pays two extra XORs
for k in (30, 50, 75):
    print(k, cost_saved(k, 16, 1, 5) - cost_stack(k, 16))
