"""One test per acceptance criterion, each at its stated trial count and tolerance.

Every test appends a PASS/FAIL line that is printed in the pytest terminal summary.
"""

import contextlib
import io
import json
import pathlib
import sys
import time

import numpy as np
import pytest

from gtlab import cli, harness
from gtlab.matcore import encode_matrix

from conftest import ACCEPTANCE_LINES

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
sys.path.insert(0, str(FIXTURES))
import make_golden  # noqa: E402

SEED = 20240613


@contextlib.contextmanager
def criterion(number, title):
    """Record one PASS/FAIL line; the body sets ``detail`` and raises on failure."""
    box = {"detail": ""}
    try:
        yield box
    except BaseException:
        ACCEPTANCE_LINES.append(f"[FAIL] criterion {number}: {title} {box['detail']}".rstrip())
        raise
    ACCEPTANCE_LINES.append(f"[PASS] criterion {number}: {title} {box['detail']}".rstrip())


def _run(names_trials, seed=SEED):
    return {name: harness.run_suite(name, trials, seed) for name, trials in names_trials}


def _summary(suites):
    return ", ".join(f"{s.suite} {s.passed}/{len(s.trials)}" for s in suites.values())


def _all_ok(suites, counts):
    for name, s in suites.items():
        assert s.ok, f"{name}: violation {s.violation and s.violation['trial_index']}"
        assert len(s.trials) == counts[name]


def test_criterion_1_gt_multi():
    with criterion(1, "multivariate Golden-Thompson, 1000 trials, < 60 s") as box:
        cfg = harness.RunConfig()
        assert cfg.gen.n_range == (1, 5) and cfg.gen.m_range == (1, 5) and cfg.gen.k_range == (1, 4)
        assert cfg.gen.scale <= 4.0
        start = time.perf_counter()
        suite = harness.run_suite("gt-multi", 1000, SEED, cfg)
        elapsed = time.perf_counter() - start
        box["detail"] = f"({suite.passed}/1000 passed, worst slack {suite.worst_slack:.3e}, {elapsed:.2f} s)"
        assert suite.ok and len(suite.trials) == 1000
        for t in suite.trials:
            assert t.slack >= -1e-9 * (1 + abs(t.lhs) + abs(t.rhs))
        assert elapsed < 60.0


CRIT2 = {
    "lemma": 500,
    "gt-logdiff": 500,
    "gt-extended": 500,
    "interpolation": 500,
    "q-contraction": 500,
    "dq-quotient": 500,
    "quotient-phi": 500,
    "expectation": 500,
}


def test_criterion_2_inequality_family():
    with criterion(2, "lemma, log-difference, extended, interpolation, Q contraction, quotients, expectation") as box:
        suites = _run(CRIT2.items())
        box["detail"] = f"({_summary(suites)})"
        _all_ok(suites, CRIT2)
        for s in suites.values():
            for t in s.trials:
                assert t.slack >= -1e-9 * (1 + abs(t.lhs) + abs(t.rhs))


CRIT3 = {"midpoint-single": 1000, "midpoint-multi": 1000, "second-diff-single": 500, "second-diff-multi": 500}


def test_criterion_3_concavity():
    with criterion(3, "concavity probes (midpoint and second difference)") as box:
        suites = _run(CRIT3.items())
        box["detail"] = f"({_summary(suites)})"
        _all_ok(suites, CRIT3)
        for name in ("second-diff-single", "second-diff-multi"):
            for t in suites[name].trials:
                assert t.lhs <= 1e-6 * (1 + abs(t.extras["f0"]))


def test_criterion_4_block_identity():
    with criterion(4, "block-embedding identity, 200 instances, 1e-9") as box:
        suite = harness.run_suite("block-identity", 200, SEED)
        worst = max(abs(t.lhs - t.rhs) for t in suite.trials)
        box["detail"] = f"({suite.passed}/200, max deviation {worst:.2e})"
        assert suite.ok and len(suite.trials) == 200
        assert worst <= 1e-9


CRIT5 = {"oracle-quadrature": 200, "oracle-fd": 200, "oracle-inverse": 200}
CRIT5_TOL = {"oracle-quadrature": 1e-6, "oracle-fd": 1e-4, "oracle-inverse": 1e-9}


def test_criterion_5_oracles():
    with criterion(5, "Frechet log vs quadrature, finite differences, inverse identity") as box:
        suites = {n: harness.run_suite(n, c, SEED, abort_on_violation=False) for n, c in CRIT5.items()}
        worst = {n: max(t.lhs for t in s.trials) for n, s in suites.items()}
        box["detail"] = "(" + ", ".join(f"{n} max {w:.1e}" for n, w in worst.items()) + ")"
        assert suites["oracle-quadrature"].config["cond_cap"] <= 1e3
        assert suites["oracle-quadrature"].config["quad_nodes"] == 64
        _all_ok(suites, CRIT5)
        for n, w in worst.items():
            assert w <= CRIT5_TOL[n]


CRIT6 = {
    "reduce-classical": 500,
    "reduce-lemma-gt": 500,
    "reduce-lemma-logdiff": 500,
    "reduce-lemma-extended": 500,
    "commuting-logdiff": 500,
}


def test_criterion_6_reductions():
    with criterion(6, "reduction identities (1e-12 rel; commuting case 1e-9)") as box:
        suites = _run(CRIT6.items())
        box["detail"] = f"({_summary(suites)})"
        _all_ok(suites, CRIT6)
        for name, s in suites.items():
            rel = 1e-9 if name == "commuting-logdiff" else 1e-12
            for t in s.trials:
                assert abs(t.lhs - t.rhs) <= rel * max(abs(t.lhs), abs(t.rhs))


CRIT7 = {"q-positivity": 500, "q-homogeneity": 500, "q-convexity": 500}


def test_criterion_7_q_form():
    with criterion(7, "Q positivity, homogeneity, joint convexity on dims <= 8") as box:
        suites = _run(CRIT7.items())
        box["detail"] = f"({_summary(suites)})"
        _all_ok(suites, CRIT7)
        assert max(t.dims[0] for s in suites.values() for t in s.trials) <= 8
        # positivity reports carry value = -Q against bound 1e-12
        assert min(-t.lhs for t in suites["q-positivity"].trials) >= -1e-12


def _cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(argv)
    return code, out.getvalue()


def test_criterion_8_determinism():
    with criterion(8, "byte-identical verify output and generator golden files") as box:
        argv = ["verify", "--suite", "all", "--trials", "100", "--seed", "42"]
        code1, out1 = _cli(argv)
        code2, out2 = _cli(argv)
        box["detail"] = f"({len(out1)} bytes, exit {code1})"
        assert code1 == code2 == 0
        assert out1 == out2
        golden = (FIXTURES / "generator_seed42.json").read_text()
        assert harness.dumps(make_golden.generator_document()) + "\n" == golden
        assert make_golden.sweep_csv() == (FIXTURES / "sweep_seed42.csv").read_text()


def test_criterion_9_cli_contract(tmp_path, capsys):
    with criterion(9, "CLI: malformed input exits 2, injected violation exits 1") as box:
        codes = []
        bad_docs = [
            "{ not json",
            json.dumps({"H": encode_matrix(np.eye(2))}),
            json.dumps({"H": encode_matrix(np.eye(2)), "B": {"rows": 2, "cols": 2, "data": [[1, 0]]}}),
            json.dumps({"H": encode_matrix(0.5 * np.eye(2)), "B": encode_matrix(np.zeros((2, 2)))}),
        ]
        for i, text in enumerate(bad_docs):
            path = tmp_path / f"bad{i}.json"
            path.write_text(text)
            codes.append(cli.main(["bound", "--input", str(path)]))
            err = capsys.readouterr().err
            assert err.startswith("gtlab bound:")
        violation = tmp_path / "violation.json"
        violation.write_text(json.dumps({
            "H": encode_matrix(0.5 * np.eye(2)),
            "B": encode_matrix(np.zeros((2, 2))),
            "L": encode_matrix(np.zeros((2, 2))),
        }))
        injected = cli.main(["bound", "--input", str(violation), "--no-validate"])
        capsys.readouterr()
        box["detail"] = f"(malformed exits {codes}, injected violation exit {injected})"
        assert codes == [2, 2, 2, 2]
        assert injected == 1
