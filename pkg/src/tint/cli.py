"""Command-line entry point: run, validate, trial, fixture.

    tint run      --manifest M [--out DIR] [--threads N] [--seed U64]
                  [--beta-grid a:b:n] [--n-trials N]
    tint validate --manifest M
    tint trial    --manifest M --algorithm object|relation
                  [--policy hardmax|softmax] [--beta B] [--metric squared|absolute]
                  [--seed U64]
    tint fixture  --out DIR

Exit codes: 0 success, 1 input/validation failure, 2 runtime failure.
The TINT_LOG environment variable sets the log level (DEBUG, INFO, ...).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .category import check_functor_laws
from .errors import InputError, TintError
from .evaluation import evaluate_ensemble
from .exploration import make_trial_config, hardmax, run_trial, softmax
from .fixture import write_fixture
from .manifest import LoadedInputs, RunManifest, load_inputs, load_manifest
from .reporting import counts_csv, evaluation_csv, summary_json
from .simulation import run_sweep

log = logging.getLogger("tint")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RUNTIME = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tint",
        description="Metaphor-comprehension simulations over weighted association networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_manifest_args(p):
        p.add_argument("--manifest", required=True, help="path to the run manifest (YAML)")
        p.add_argument("--seed", type=int, default=None, help="override the master seed")

    p_run = sub.add_parser("run", help="full pipeline: load, sweep, evaluate, write results")
    add_manifest_args(p_run)
    p_run.add_argument("--out", default=None, help="override the output directory")
    p_run.add_argument("--threads", type=int, default=None, help="cap worker threads")
    p_run.add_argument("--beta-grid", default=None, help="override beta grid, 'low:high:n[:lin]'")
    p_run.add_argument("--n-trials", type=int, default=None, help="override trials per point")

    p_val = sub.add_parser("validate", help="parse and check all inputs without running")
    add_manifest_args(p_val)

    p_trial = sub.add_parser("trial", help="run one trial and print its functor and law report")
    add_manifest_args(p_trial)
    p_trial.add_argument("--algorithm", required=True, choices=["object", "relation"])
    p_trial.add_argument("--policy", default="hardmax", choices=["hardmax", "softmax"])
    p_trial.add_argument("--beta", type=float, default=None, help="inverse temperature (softmax)")
    p_trial.add_argument("--metric", default="squared", choices=["squared", "absolute"])

    p_fix = sub.add_parser("fixture", help="write the synthetic demo dataset and manifest")
    p_fix.add_argument("--out", required=True, help="directory to create the fixture in")
    return parser


def _load(args) -> tuple[RunManifest, LoadedInputs]:
    manifest = load_manifest(
        args.manifest,
        master_seed=args.seed,
        out_dir=getattr(args, "out", None),
        threads=getattr(args, "threads", None),
        beta_grid=getattr(args, "beta_grid", None),
        n_trials=getattr(args, "n_trials", None),
    )
    inputs = load_inputs(manifest)
    return manifest, inputs


def _cmd_validate(args) -> int:
    manifest, inputs = _load(args)
    if inputs.problems:
        for problem in inputs.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    n_points = len(manifest.sweep_spec().policies_for()) * len(manifest.algorithms) * len(
        manifest.metrics
    )
    print(
        f"ok: {inputs.latent.n} images, "
        f"{len(manifest.source_initials)}x{len(manifest.target_initials)} initials, "
        f"{n_points} sweep points x {manifest.n_trials} trials"
    )
    return EXIT_OK


def _cmd_run(args) -> int:
    manifest, inputs = _load(args)
    if inputs.problems:
        for problem in inputs.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    spec = manifest.sweep_spec()

    try:
        manifest.out_dir.mkdir(parents=True, exist_ok=True)
        probe = manifest.out_dir / ".write-probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as e:
        print(f"error: output directory not writable: {e}", file=sys.stderr)
        return EXIT_INPUT

    log.info("sweep: %d points x %d trials", len(spec.policies_for()), spec.n_trials)
    results = run_sweep(inputs.latent, spec, threads=manifest.threads)
    reports = [
        (config, evaluate_ensemble(ensemble, inputs.human, inputs.similarity))
        for config, ensemble in results
    ]

    out = manifest.out_dir
    (out / "counts.csv").write_text(counts_csv(results), encoding="utf-8", newline="\n")
    (out / "results.csv").write_text(evaluation_csv(reports), encoding="utf-8", newline="\n")
    (out / "summary.json").write_text(
        summary_json(results, reports), encoding="utf-8", newline="\n"
    )
    print(f"wrote {out / 'counts.csv'}")
    print(f"wrote {out / 'results.csv'}")
    print(f"wrote {out / 'summary.json'}")
    return EXIT_OK


def _cmd_trial(args) -> int:
    manifest, inputs = _load(args)
    if inputs.problems:
        for problem in inputs.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    if args.policy == "softmax":
        if args.beta is None:
            print("error: --policy softmax needs --beta", file=sys.stderr)
            return EXIT_INPUT
        policy = softmax(args.beta)
    else:
        policy = hardmax()
    seed = 0 if args.seed is None else args.seed
    config = make_trial_config(
        inputs.latent,
        algorithm=args.algorithm,
        policy=policy,
        metric=args.metric,
        source_root=manifest.source_root,
        target_root=manifest.target_root,
        source_initials=manifest.source_initials,
        target_initials=manifest.target_initials,
        rng_seed=seed,
    )
    outcome = run_trial(inputs.latent, config)
    functor = outcome.functor
    a = config.target_root.label
    b = config.source_root.label

    beta = "" if policy.beta is None else f" beta={policy.beta:g}"
    print(f"metaphor: {a!r} is {b!r}  (arrow {a!r} -> {b!r} presented)")
    print(f"algorithm={config.algorithm} policy={policy.kind}{beta} "
          f"metric={config.metric} seed={seed}")
    print(f"correspondences ({len(functor.object_map)} of {len(config.source_initials)} "
          f"source initials mapped, width {functor.width()}):")
    for bi in config.source_initials:
        corr = functor.correspondences.get(bi.id)
        if corr is None:
            continue
        detail = f"mu={corr.witness_weight:g}"
        if corr.via == "triangle":
            detail += f", d={corr.distance:g}"
        print(f"  {corr.source_initial.label!r} for {b!r} is "
              f"{corr.target_initial.label!r} for {a!r}  [{detail}]")
    unmapped = outcome.unmapped(config)
    if unmapped:
        print("unmapped: " + ", ".join(repr(im.label) for im in unmapped))
    report = check_functor_laws(functor, outcome.elicited)
    print(f"law check: {report.summary()}")
    return EXIT_OK


def _cmd_fixture(args) -> int:
    paths = write_fixture(Path(args.out))
    for name in ("survey", "interpretation", "similarity", "manifest"):
        print(f"wrote {paths[name]}")
    return EXIT_OK


def main(argv=None) -> int:
    level = os.environ.get("TINT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "validate": _cmd_validate,
        "trial": _cmd_trial,
        "fixture": _cmd_fixture,
    }
    try:
        return handlers[args.command](args)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TintError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
