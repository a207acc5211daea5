"""
Command-line entry point.

Exit codes: 0 all satisfied, 1 mathematical violation (or oracle tolerance
breach), 2 usage or input error.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import harness, reports
from . import inequalities as ineq
from .errors import ContractionError, GTLabError, MatrixFormatError
from .matcore import decode_matrix
from .randgen import GenConfig, rand_contraction_tuple, rand_hermitian, stream
from .tracefn import ContractionTuple

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
BOUND_RESIDUAL_TOL = 1e-8
DEFAULT_BETAS = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
BOUND_KINDS = ("gt-multi", "classical-gt", "interpolation", "lemma", "gt-logdiff", "gt-extended")


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GTLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"GTLAB_SEED must be an integer, got {env!r}") from None


def _run_config(args) -> harness.RunConfig:
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    if args.quad_nodes < 1:
        raise UsageError("--quad-nodes must be positive")
    for flag in ("n_max", "m_max", "k_max"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be positive")
    scale = 50.0 if args.stress else 4.0
    gen = GenConfig(
        seed=_seed(args),
        n_range=(1, args.n_max),
        m_range=(1, args.m_max),
        k_range=(1, args.k_max),
        scale=scale,
        cond_cap=getattr(args, "cond", None) or 1e3,
    )
    return harness.RunConfig(
        gen=gen,
        slack_rel=args.tol if args.tol is not None else reports.SLACK_REL,
        quad_nodes=args.quad_nodes,
        stress=args.stress,
    )


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([harness._fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _suite_document(command, seed, suites) -> dict:
    return {
        "command": command,
        "seed": seed,
        "passed": sum(s.passed for s in suites),
        "failed": sum(s.failed for s in suites),
        "suites": [s.to_dict() for s in suites],
    }


def _suite_rows(suites):
    return [(s.suite, len(s.trials), s.passed, s.failed, s.skipped, s.worst_slack) for s in suites]


def cmd_verify(args) -> int:
    cfg = _run_config(args)
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be >= 1")
    try:
        names = harness.resolve(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    seed = cfg.gen.seed
    suites = [harness.run_suite(name, args.trials, seed, cfg) for name in names]
    if args.format == "csv-summary":
        text = _csv(_suite_rows(suites), ["suite", "trials", "passed", "failed", "skipped", "worst_slack"])
    else:
        text = harness.dumps(_suite_document("verify", seed, suites)) + "\n"
    _emit(text, args.output)
    for s in suites:
        if not s.ok:
            print(f"violation in suite {s.suite} (trial {s.violation['trial_index']})", file=sys.stderr)
    return EXIT_OK if all(s.ok for s in suites) else EXIT_VIOLATION


# ---- bound ------------------------------------------------------------------

def _load_input(path: str) -> dict:
    if not path:
        raise UsageError("--input is required")
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("input must be a JSON object with keys L, H, A, B, C")
    return doc


def _matrices(doc, key, required=True):
    if key not in doc:
        if required:
            raise UsageError(f"input is missing {key!r}")
        return None
    value = doc[key]
    try:
        if isinstance(value, list):
            return [decode_matrix(v) for v in value]
        return decode_matrix(value)
    except MatrixFormatError as exc:
        raise MatrixFormatError(f"{key}: {exc}") from None


def _as_list(value, key):
    if value is None:
        return None
    if not isinstance(value, list):
        return [value]
    if not value:
        raise UsageError(f"{key!r} must not be empty")
    return value


def _tuple_from(doc, validate: bool) -> ContractionTuple:
    """Tuple from the input document; ``validate=False`` is a test hook that
    lets a non-resolving tuple through to the checker."""
    h_list = _as_list(_matrices(doc, "H"), "H")
    ct = ContractionTuple(h_list, exact=True, validate=False)
    if validate:
        shape = h_list[0].shape
        if any(h.shape != shape for h in h_list):
            raise UsageError("all H blocks must share one shape")
        res = ct.residual()
        if res > BOUND_RESIDUAL_TOL:
            raise ContractionError(f"resolution violated: ||sum H_i* H_i - I|| = {res:.6e}")
    return ct


def _evaluate_bound(kind: str, doc: dict, validate: bool) -> reports.TrialReport:
    def get(key, required=True):
        return _as_list(_matrices(doc, key, required), key)

    if kind == "classical-gt":
        return ineq.check_classical_gt(_matrices(doc, "L"), get("B")[0])
    if kind == "interpolation":
        return ineq.check_interpolation(_matrices(doc, "L"), get("A")[0], get("B")[0])
    if kind not in BOUND_KINDS:
        raise UsageError(f"unknown inequality {kind!r}; choose from {', '.join(BOUND_KINDS)}")
    ct = _tuple_from(doc, validate)
    l_term = _matrices(doc, "L", required=False)
    if kind == "gt-multi":
        return ineq.check_gt_multi(l_term, ct, get("B"))
    if kind == "lemma":
        return ineq.check_lemma_main(l_term, ct, get("A"), get("B"))
    if kind == "gt-logdiff":
        return ineq.check_gt_logdiff(ct, get("A"), get("B"))
    return ineq.check_gt_extended(ct, get("A"), get("B"), get("C"))


def cmd_bound(args) -> int:
    doc = _load_input(args.input)
    kind = "gt-multi" if args.suite in (None, "all") else args.suite
    rep = _evaluate_bound(kind, doc, validate=not args.no_validate)
    if args.tol is not None:
        rep = rep.with_rel(args.tol)
    out = {"inequality": kind, "lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack, "satisfied": rep.passed}
    _emit(harness.dumps(out) + "\n", args.output)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


# ---- oracle -----------------------------------------------------------------

def cmd_oracle(args) -> int:
    cfg = _run_config(args)
    trials = 200 if args.trials is None else args.trials
    if trials < 1:
        raise UsageError("--trials must be >= 1")
    seed = cfg.gen.seed
    suites = [harness.run_suite(name, trials, seed, cfg, abort_on_violation=False)
              for name in harness.GROUPS["oracle"]]
    summary = {
        s.suite: {
            "max_deviation": max(t.lhs for t in s.trials),
            "tolerance": s.trials[0].rhs,
            "within": s.ok,
        }
        for s in suites
    }
    doc = {"command": "oracle", "seed": seed, "cond_cap": cfg.gen.cond_cap,
           "quad_nodes": cfg.quad_nodes, "trials": trials, "summary": summary}
    if args.format == "csv-summary":
        rows = [(k, v["max_deviation"], v["tolerance"], v["within"]) for k, v in summary.items()]
        text = _csv(rows, ["check", "max_deviation", "tolerance", "within"])
    else:
        text = harness.dumps(doc) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all(s.ok for s in suites) else EXIT_VIOLATION


# ---- sweep ------------------------------------------------------------------

def _parse_betas(text: str | None) -> list[float]:
    if text is None:
        return list(DEFAULT_BETAS)
    try:
        betas = [float(b) for b in text.split(",") if b.strip()]
    except ValueError:
        raise UsageError(f"--betas must be a comma-separated list of numbers, got {text!r}") from None
    if not betas or any(not (b > 0 and np.isfinite(b)) for b in betas):
        raise UsageError("--betas must list positive finite values")
    return betas


def sweep_instance(seed: int, n: int = 3, m: int = 3, k: int = 2, scale: float = 1.0):
    """Fixed-seed instance ``(L, tuple, B_list)`` for the free-energy sweep."""
    rs = stream(seed, 0, "sweep")
    ct = rand_contraction_tuple(k, n, m, True, rs)
    l_term = rand_hermitian(m, scale, rs)
    b_list = [rand_hermitian(n, scale, rs) for _ in range(k)]
    return l_term, ct, b_list


def sweep_table(l_term, ct, b_list, betas) -> list[tuple[float, float, float, float]]:
    rows = []
    for beta in betas:
        free, bound = ineq.helmholtz_bound(l_term, ct, b_list, beta)
        rows.append((float(beta), free, bound, free - bound))
    return rows


def cmd_sweep(args) -> int:
    betas = _parse_betas(args.betas)
    if args.input:
        doc = _load_input(args.input)
        ct = _tuple_from(doc, validate=True)
        l_term = _matrices(doc, "L", required=False)
        b_list = _as_list(_matrices(doc, "B"), "B")
    else:
        l_term, ct, b_list = sweep_instance(_seed(args))
    rows = sweep_table(l_term, ct, b_list, betas)
    if args.format == "csv-summary":
        text = _csv(rows, ["beta", "free_energy", "bound", "gap"])
    else:
        doc = {"command": "sweep", "rows": [dict(zip(("beta", "free_energy", "bound", "gap"), r)) for r in rows]}
        text = harness.dumps(doc) + "\n"
    _emit(text, args.output)
    # gap >= 0 up to round-off is the inequality itself
    ok = all(r[3] >= -reports.slack_tol(r[1], r[2]) for r in rows)
    return EXIT_OK if ok else EXIT_VIOLATION


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gtlab", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--suite", default="all")
        sp.add_argument("--trials", type=int)
        sp.add_argument("--seed", type=int, help="master seed (falls back to $GTLAB_SEED, then 0)")
        sp.add_argument("--n-max", type=int, default=5)
        sp.add_argument("--m-max", type=int, default=5)
        sp.add_argument("--k-max", type=int, default=4)
        sp.add_argument("--tol", type=float, help="relative slack tolerance (default 1e-9)")
        sp.add_argument("--input")
        sp.add_argument("--output")
        sp.add_argument("--format", choices=("json", "csv-summary"), default="json")
        sp.add_argument("--stress", action="store_true", help="raise the Hermitian scale cap to 50")
        sp.add_argument("--quad-nodes", type=int, default=64)

    for name, fn, help_text in (
        ("verify", cmd_verify, "run randomized verification suites"),
        ("bound", cmd_bound, "evaluate one inequality on matrices from --input"),
        ("oracle", cmd_oracle, "cross-validate d log against quadrature and finite differences"),
        ("sweep", cmd_sweep, "free-energy bound over a grid of inverse temperatures"),
    ):
        sp = sub.add_parser(name, help=help_text)
        common(sp)
        sp.set_defaults(func=fn)
        if name == "bound":
            sp.add_argument("--no-validate", action="store_true", help=argparse.SUPPRESS)
        if name == "oracle":
            sp.add_argument("--cond", type=float, default=1e3, help="condition cap of the PD ensemble")
        if name == "sweep":
            sp.add_argument("--betas", help="comma-separated inverse temperatures")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GTLabError) as exc:
        print(f"gtlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        print(f"gtlab {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
