"""Command line entry points.

Subcommands: catalog embed, plan, play, simulate, report, scan-corpus,
serve. Every command exits 0 on success; failures print one
machine-parsable `error: ...` line on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import gzip
import json
import sys
from dataclasses import replace

from .backends import DEFAULT_MODEL, BackendConfig, make_backend
from .catalog import (
    Catalog,
    build_embedding_store,
    load_bundled_catalog,
    load_catalog,
    load_store,
    save_store,
)
from .config import load_config
from .corpus import builtin_color_keywords, load_keyword_file, scan, textile_keywords_from
from .engine import (
    Assignment,
    ExclusionPolicy,
    SessionConfig,
    SessionState,
    judge,
    plan_assignments,
    start_session,
    submit_description,
)
from .metrics import build_report, export_report
from .sessionlog import SessionLog, replay_log
from .simulate import OracleStrategy, simulate

__all__ = ["main"]


def _load_catalog_arg(path: str | None) -> Catalog:
    if path is None:
        return load_bundled_catalog()
    with open(path, "rb") as fh:
        return load_catalog(fh)


def _add_backend_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--backend", choices=["mock", "remote"], default="mock")
    parser.add_argument("--dim", type=int, default=256, help="mock embedding dimension")
    parser.add_argument("--endpoint-url", default="")
    parser.add_argument("--model", default=DEFAULT_MODEL)
    parser.add_argument("--api-key-env", default="")


def _backend_from_args(args, store=None):
    if args.backend == "mock":
        # Match a loaded store's dimension so play/simulate queries live in
        # the same space the store was built in.
        dim = store.dim if store is not None else args.dim
        return make_backend(BackendConfig(kind="mock", mock_dim=dim))
    return make_backend(
        BackendConfig(
            kind="remote",
            endpoint_url=args.endpoint_url,
            model_name=args.model,
            api_key_env=args.api_key_env,
        )
    )


def _cmd_catalog_embed(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    backend = _backend_from_args(args)
    store = build_embedding_store(catalog, backend)
    save_store(store, args.out)
    print(f"wrote {len(store)} embeddings (dim {store.dim}, model {store.model}) to {args.out}")
    return 0


def _cmd_plan(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    plan = plan_assignments(catalog, args.seed)
    doc = {
        "seed": plan.seed,
        "pairs": [{"target_id": p.target_id, "reference_id": p.reference_id} for p in plan.pairs],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(f"wrote {len(plan.pairs)} pairs to {args.out}")
    else:
        json.dump(doc, sys.stdout, indent=1)
        print()
    return 0


def _prompt_int(prompt: str, low: int, high: int) -> int:
    while True:
        raw = input(prompt).strip()
        try:
            value = int(raw)
        except ValueError:
            print(f"enter an integer {low}-{high}")
            continue
        if low <= value <= high:
            return value
        print(f"enter an integer {low}-{high}")


def _cmd_play(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    store = load_store(args.store)
    backend = _backend_from_args(args, store=store)
    config = SessionConfig(exclusion_policy=ExclusionPolicy(args.exclusion))
    log = SessionLog(args.log) if args.log else None

    assignment = Assignment(target_id=args.target, reference_id=args.reference)
    session = start_session(assignment, store, config)
    if log:
        log.session_start(session.session_id, assignment.target_id, assignment.reference_id)
    target_name = catalog.by_id(args.target).name
    reference_name = catalog.by_id(args.reference).name
    print(f"facilitator view: target {args.target} ({target_name}), "
          f"reference {args.reference} ({reference_name})")
    print(f"participant holds reference {args.reference}; up to {config.max_attempts} attempts.")

    while session.state is SessionState.AWAITING_DESCRIPTION:
        attempt_no = len(session.attempts) + 1
        text = input(f"describe the target ({attempt_no}/{config.max_attempts}): ").strip()
        if not text:
            print("description cannot be empty")
            continue
        predicted_id, scores = submit_description(session, text, store, backend, config)
        attempt = session.attempts[-1]
        if log:
            log.attempt(session.session_id, attempt.index, text,
                        attempt.accumulated_query, predicted_id, scores)
        print(f"Are you having number {predicted_id}? ({catalog.by_id(predicted_id).name})")
        correct = input("correct? [y/n]: ").strip().lower().startswith("y")
        if correct:
            judge(session, correct=True)
            if log:
                log.judgment(session.session_id, attempt.index, True, None, None)
            print("correct — session won")
        else:
            validity = _prompt_int("validity score (1-10): ", 1, 10)
            similarity = _prompt_int("similarity score (1-10): ", 1, 10)
            judge(session, correct=False, validity=validity, similarity=similarity)
            if log:
                log.judgment(session.session_id, attempt.index, False, validity, similarity)
            if session.state is SessionState.LOST:
                print("Game Over — attempt limit reached")
            else:
                print(f"new reference textile: {predicted_id} "
                      f"({catalog.by_id(predicted_id).name})")

    outcome = "won" if session.state is SessionState.WON else "lost"
    if log:
        log.session_end(session.session_id, outcome)
        log.close()
    print(f"outcome: {outcome} after {len(session.attempts)} attempt(s)")
    return 0


def _cmd_simulate(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    store = load_store(args.store)
    backend = _backend_from_args(args, store=store)
    plan = plan_assignments(catalog, args.plan_seed)
    strategy = OracleStrategy(kind=args.strategy, param=args.param, seed=args.strategy_seed)
    config = SessionConfig(exclusion_policy=ExclusionPolicy(args.exclusion))
    with SessionLog(args.log) as log:
        records = simulate(plan, strategy, catalog, store, backend, config, log)
    wins = sum(1 for r in records if r.outcome == "won")
    print(f"simulated {len(plan.pairs)} tasks: {len(records)} completed, {wins} won; log at {args.log}")
    return 0


def _cmd_report(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    records = replay_log(args.log)
    if not records:
        print("error: log contains no completed sessions", file=sys.stderr)
        return 1
    report = build_report(records, catalog, per_attempt=not args.final_only)
    files = export_report(report, args.out)
    print(f"wrote {len(files)} report files to {args.out} "
          f"({report.total_tasks} tasks, success rate {report.overall_success_rate:.3f})")
    return 0


def _cmd_scan_corpus(args) -> int:
    if args.keywords == "colors":
        keyword_list = builtin_color_keywords()
    elif args.keywords == "textiles":
        keyword_list = textile_keywords_from(_load_catalog_arg(args.catalog))
    else:
        keyword_list = load_keyword_file(args.keywords)
    opener = gzip.open if args.input.endswith(".gz") else open
    with opener(args.input, "rb") as fh:
        result = scan(fh, keyword_list, whole_word=args.whole_word)
    doc = result.to_dict(keyword_list.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(f"wrote scan result to {args.out}")
    else:
        json.dump(doc, sys.stdout, indent=1)
        print()
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app_config = load_config(args.config)
    service = app_config.service
    host = args.host or service.host
    port = args.port if args.port is not None else service.port
    log_path = args.log or service.log_path

    catalog = _load_catalog_arg(args.catalog or service.catalog_path)
    backend = make_backend(app_config.backend)
    store_path = args.store or service.store_path
    if store_path:
        store = load_store(store_path)
        if app_config.backend.kind == "mock" and app_config.backend.mock_dim != store.dim:
            # Queries must live in the loaded store's space.
            backend = make_backend(replace(app_config.backend, mock_dim=store.dim))
    else:
        store = build_embedding_store(catalog, backend)
    app = create_app(catalog, store, backend, app_config.session, log_path)
    print(f"serving on http://{host}:{port} (log: {log_path})")
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="textileguess")
    sub = parser.add_subparsers(dest="command", required=True)

    catalog_cmd = sub.add_parser("catalog", help="catalog utilities")
    catalog_sub = catalog_cmd.add_subparsers(dest="catalog_command", required=True)
    embed = catalog_sub.add_parser("embed", help="build the embedding store cache")
    embed.add_argument("--catalog", default=None, help="catalog JSON (default: bundled)")
    embed.add_argument("--out", required=True, help="store cache output path")
    _add_backend_flags(embed)
    embed.set_defaults(func=_cmd_catalog_embed)

    plan = sub.add_parser("plan", help="build a balanced assignment plan")
    plan.add_argument("--seed", type=int, required=True)
    plan.add_argument("--catalog", default=None)
    plan.add_argument("--out", default=None)
    plan.set_defaults(func=_cmd_plan)

    play = sub.add_parser("play", help="interactive facilitator session")
    play.add_argument("--store", required=True)
    play.add_argument("--catalog", default=None)
    play.add_argument("--target", type=int, required=True)
    play.add_argument("--reference", type=int, required=True)
    play.add_argument("--log", default=None)
    play.add_argument("--exclusion", default="reference_and_prior_guesses",
                      choices=[p.value for p in ExclusionPolicy])
    _add_backend_flags(play)
    play.set_defaults(func=_cmd_play)

    sim = sub.add_parser("simulate", help="batch closed-loop simulation")
    sim.add_argument("--plan-seed", type=int, required=True)
    sim.add_argument("--strategy", default="verbatim",
                     choices=["verbatim", "truncate", "token_dropout"])
    sim.add_argument("--param", type=float, default=0.0)
    sim.add_argument("--strategy-seed", type=int, default=0)
    sim.add_argument("--store", required=True)
    sim.add_argument("--catalog", default=None)
    sim.add_argument("--log", required=True)
    sim.add_argument("--exclusion", default="reference_and_prior_guesses",
                     choices=[p.value for p in ExclusionPolicy])
    _add_backend_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    report = sub.add_parser("report", help="aggregate a session log into report files")
    report.add_argument("--log", required=True)
    report.add_argument("--out", required=True)
    report.add_argument("--catalog", default=None)
    report.add_argument("--final-only", action="store_true",
                        help="count only final attempts in the confusion matrix")
    report.set_defaults(func=_cmd_report)

    scan_cmd = sub.add_parser("scan-corpus", help="keyword-frequency scan over a text corpus")
    scan_cmd.add_argument("--input", required=True, help="plain-text or .gz corpus file")
    scan_cmd.add_argument("--keywords", required=True,
                          help="'colors', 'textiles', or a keyword file path")
    scan_cmd.add_argument("--catalog", default=None)
    scan_cmd.add_argument("--whole-word", action="store_true")
    scan_cmd.add_argument("--out", default=None)
    scan_cmd.set_defaults(func=_cmd_scan_corpus)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", default=None)
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--log", default=None)
    serve.add_argument("--catalog", default=None)
    serve.add_argument("--store", default=None)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("error: interrupted", file=sys.stderr)
        return 130
    except Exception as exc:  # one-line machine-parsable failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
