"""A small error-ratio sweep, written to CSV.

Larger error budgets mean coarser cells and weaker guaranteed power, so the
achieved utility decays as the ratio grows. Ten seeds keep this quick; the
acceptance suite runs the full thirty-seed version.
"""

from chargesched import ExperimentConfig, ScenarioParams, run_experiment, write_csv

config = ExperimentConfig(
    schemes=("more", "random"),
    sweep_name="lambda",
    sweep_values=(0.1, 0.2, 0.3, 0.45),
    seeds=tuple(range(10)),
    scenario=ScenarioParams(),
)
records, summary = run_experiment(config)
write_csv(records, "error_sweep.csv")
print(f"wrote {len(records)} records to error_sweep.csv\n")

print(f"{'scheme':8} {'error':>6} {'mean utility':>13} {'mean stops':>11}")
for (scheme, value), means in summary.items():
    print(f"{scheme:8} {value:6.2f} {means['utility_morer']:13.3f} {means['stop_grids']:11.1f}")

print("\nThe greedy scheme keeps picking the best remaining cells as the grid")
print("coarsens; uniform random picks collapse with the per-cell power.")
