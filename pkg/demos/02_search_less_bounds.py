"""Compute search-less makespan lower bounds for a benchmark-format instance.

Parses the bundled PSPLIB-style fixture, runs the full inference pipeline,
and shows where the reported bound comes from: every inferred cumulative
constraint carries a capacity bound (total work over capacity), whose
ceiling bounds the span of its tasks in any feasible schedule, with no
solver search involved.
"""

from fractions import Fraction

from cumulift import (
    InstanceFormat,
    LiftingConfig,
    ReportFormat,
    emit_report,
    parse_instance,
    run_pipeline,
    to_demand_system,
)
from cumulift.fixtures import FIXTURE_SM

instance = parse_instance(FIXTURE_SM, InstanceFormat.PSPLIB_SM, name="fixture")
system = to_demand_system(instance)
print(f"parsed {instance.name}: {instance.n_tasks} tasks "
      f"({system.n_cols} after dropping dummies), {instance.n_resources} resource(s)")

report = run_pipeline(instance, LiftingConfig())

print()
print("inferred constraints, best first:")
for idx, c in enumerate(report.constraints):
    usages = " + ".join(f"{u}*occ(t{t})" for t, u in c.usages)
    print(f"  [{idx}] {usages} <= {c.capacity}")
    print(f"      capacity bound {c.bound} -> span >= {c.bound_int}")

print()
kind, index = report.certificate
print(f"search-less lower bound: {report.searchless_lb} (certified by {kind} #{index})")
print(f"precedence-path lower bound: {report.precedence_lb}")
print(f"best original-row bound: {report.row_lb} "
      f"(the capacity-7 row gives ceil({Fraction(18, 7)}) = 3)")

print()
print("full text report:")
print(emit_report(report, ReportFormat.TEXT))
