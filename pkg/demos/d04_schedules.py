"""
Splitting a round into prefix tasks
===================================

Prefixes in lex and left-lex order, their static assignment to workers,
and the message count of the dynamic scheduler.
"""

import numpy as np

from mindist.parallel import ScheduleConfig, assign_static, enumerate_prefixes, scheduled_round

for order in ("lex", "left_lex"):
    print(order, [p.indices for p in enumerate_prefixes(6, 4, 3, order)])

tasks = enumerate_prefixes(11, 4, 3)
for snake in (False, True):
    print("snake" if snake else "cyclic")
    for w, lst in enumerate(assign_static(tasks, 3, snake)):
        print("  worker", w, [p.indices for p in lst[:4]])

# one round, every schedule: same minimum, different bookkeeping
W = np.random.default_rng(0).integers(0, 2**32, (14, 2), dtype=np.uint32)
for mode in ("serial", "dynamic", "dynamic_2cm", "static_cyclic", "static_snake"):
    out = scheduled_round(W, 5, ScheduleConfig(mode=mode, workers=4))
    print(f"{mode:14s} min={out.result.min_weight}  tasks={out.tasks}  messages={out.messages}")
