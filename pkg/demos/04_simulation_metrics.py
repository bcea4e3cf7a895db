"""Batch simulation over the balanced plan, then metrics from the log.

A dropout oracle degrades the descriptions so the run produces a mix of
wins and losses worth aggregating: success rates, attempt stats, score
histograms and the confusion matrix, all recomputed from the JSONL log.

Run: python3 demos/04_simulation_metrics.py
"""

import tempfile
from pathlib import Path

from textileguess import (
    MockEmbeddingBackend,
    OracleStrategy,
    SessionLog,
    build_embedding_store,
    build_report,
    export_report,
    load_bundled_catalog,
    plan_assignments,
    replay_log,
    simulate,
)

catalog = load_bundled_catalog()
backend = MockEmbeddingBackend(dim=256)
store = build_embedding_store(catalog, backend)

plan = plan_assignments(catalog, seed=42)
print(f"plan: {len(plan.pairs)} tasks (every sample targeted 4x, references span all categories)")

strategy = OracleStrategy(kind="token_dropout", param=0.92, seed=11)
print(f"oracle: {strategy.kind}, dropping {strategy.param:.0%} of description tokens\n")

with tempfile.TemporaryDirectory() as tmp:
    log_path = Path(tmp) / "run.jsonl"
    with SessionLog(str(log_path)) as log:
        records = simulate(plan, strategy, catalog, store, backend, log=log)

    replayed = replay_log(str(log_path))
    assert replayed == records, "log replay must reproduce the live records"

    report = build_report(records, catalog, synthetic_ratings=True)
    print(f"tasks completed: {report.total_tasks}, won {report.wins} "
          f"({report.overall_success_rate:.1%})")
    print(f"attempts: total {report.total_attempts}, "
          f"mean {report.attempts['avg_all']:.2f} per task")
    if report.validity:
        print(f"failed-attempt validity: mean {report.validity.mean:.2f} "
              f"(n={report.validity.count}, synthetic convention)")
        print("validity histogram 1..10:",
              [report.validity.histogram[i] for i in range(1, 11)])

    print("\nhardest targets (lowest success):")
    rows = sorted(report.per_textile, key=lambda r: (r["success_rate"], r["id"]))
    for row in rows[:5]:
        print(f"  id {row['id']:2d} {row['name']:20s} success {row['success_rate']:.2f}")

    out_dir = Path(tmp) / "report"
    files = export_report(report, str(out_dir))
    print("\nexported:", ", ".join(Path(f).name for f in files))
    print("confusion matrix total:", sum(sum(r) for r in report.confusion))
