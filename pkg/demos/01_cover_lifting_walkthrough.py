"""Walk through cover discovery and lifting on a 4-task toy project.

One resource of capacity 7, four tasks demanding 5, 3, 2, 4 units for
1, 1, 1, 2 time units.  We find the task sets that cannot all run at once,
strengthen one of them into a full inequality, and double-check the result
by enumerating every 0/1 point of the demand system.
"""

import numpy as np

from cumulift import (
    Cover,
    DemandSystem,
    check_validity_bruteforce,
    is_cover,
    lift_cover,
    seed_covers,
)

system = DemandSystem(
    matrix=np.array([[5, 3, 2, 4]]),
    rhs=np.array([7]),
    durations=np.array([1, 1, 1, 2]),
    task_map=(0, 1, 2, 3),
)

print("demand system: 5*x0 + 3*x1 + 2*x2 + 4*x3 <= 7")
print()

print("is {1, 2, 3} a cover?", is_cover({1, 2, 3}, [5, 3, 2, 4], 7), "(3+2+4 = 9 > 7)")
print("is {0, 2} a cover?  ", is_cover({0, 2}, [5, 3, 2, 4], 7), "(5+2 = 7, not over)")
print()

print("all seed covers, in generation order:")
for cover in seed_covers(system):
    print(f"  {set(cover.members)}  rule={cover.rule}  row={cover.source_row}")
print()

cover = Cover(members=(1, 2, 3), source_row=0)
print(f"lifting the cover {set(cover.members)}: start from x1 + x2 + x3 <= 2")


def show_step(partial, variable):
    print(f"  lifted x{variable}: coefficients now {partial.coeffs}")


inequality = lift_cover(cover, system, on_step=show_step)
print(f"result: {inequality.coeffs} <= {inequality.rhs}")
print("meaning: at most two of the four tasks can ever run in parallel")
print()

ok, counterexample = check_validity_bruteforce(inequality, system)
print("brute-force check over all 16 candidate points:", "valid" if ok else counterexample)
