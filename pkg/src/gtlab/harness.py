"""
Seeded verification suites.

Every check is a trial function ``(stream, config) -> (report, inputs)``.
Trial ``i`` of check ``name`` draws from ``stream(seed, i, name)`` only, so
results do not depend on scheduling.  A violation aborts its suite and the
offending inputs are embedded in the report for replay.
"""

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import calculus, reports
from . import inequalities as ineq
from . import tracefn
from .errors import ExpOverflowError
from .matcore import encode_matrix, expm_h, logm_pd, min_eigenvalue
from .randgen import (
    GenConfig,
    Stream,
    rand_commuting_pair,
    rand_contraction_tuple,
    rand_hermitian,
    rand_invertible_contraction,
    rand_pd,
    stream,
)
from .reports import TrialReport


@dataclass(frozen=True)
class RunConfig:
    gen: GenConfig = field(default_factory=GenConfig)
    slack_rel: float = reports.SLACK_REL
    quad_nodes: int = 64
    stress: bool = False
    q_dim_max: int = 8

    def to_dict(self) -> dict:
        g = self.gen
        return {
            "n_range": list(g.n_range),
            "m_range": list(g.m_range),
            "k_range": list(g.k_range),
            "scale": g.scale,
            "cond_cap": g.cond_cap,
            "min_singular": g.min_singular,
            "slack_rel": self.slack_rel,
            "quad_nodes": self.quad_nodes,
            "stress": self.stress,
        }


Trial = Callable[[Stream, RunConfig], tuple]


@dataclass(frozen=True)
class Check:
    name: str
    trial: Trial
    default_trials: int


CHECKS: dict[str, Check] = {}


def _check(name: str, default_trials: int):
    def register(fn):
        CHECKS[name] = Check(name, fn, default_trials)
        return fn
    return register


# ---- drawing helpers -------------------------------------------------------

def _dims(rs: Stream, g: GenConfig, exact: bool = True) -> tuple[int, int, int]:
    k = rs.integers(*g.k_range)
    n = rs.integers(*g.n_range)
    m_hi = min(g.m_range[1], k * n) if exact else g.m_range[1]
    m = rs.integers(min(g.m_range[0], m_hi), m_hi)
    return n, m, k


def _herm(rs, n, cfg):
    return rand_hermitian(n, cfg.gen.scale, rs)


def _pd(rs, n, cfg):
    return rand_pd(n, cfg.gen.cond_cap, rs)


def _pd_list(rs, n, k, cfg):
    return [_pd(rs, n, cfg) for _ in range(k)]


def _general(rs, n, cfg):
    return rs.complex_gaussian(n, n)


def _tuple(rs, cfg, exact=True):
    n, m, k = _dims(rs, cfg.gen, exact)
    return rand_contraction_tuple(k, n, m, exact, rs)


def _worst(*reps: TrialReport) -> TrialReport:
    """The report closest to (or furthest past) its tolerance."""
    return min(reps, key=lambda r: (r.slack + r.tol) / max(r.tol, 1e-300))


def _pair_identity(name, rep_a, rep_b, rel, dims):
    return _worst(
        reports.identity(name, rep_a.lhs, rep_b.lhs, dims, rel=rel, side="lhs"),
        reports.identity(name, rep_a.rhs, rep_b.rhs, dims, rel=rel, side="rhs"),
    )


# ---- Q-form ----------------------------------------------------------------

def _q_dim(rs, cfg):
    return rs.integers(1, cfg.q_dim_max)


@_check("q-positivity", 500)
def _t_q_positivity(rs, cfg):
    n = _q_dim(rs, cfg)
    x, h = _pd(rs, n, cfg), _general(rs, n, cfg)
    q = calculus.q_form(x, h)
    return reports.bounded("q-positivity", -q, 1e-12, (n, n, 1)), {"x": x, "h": h}


@_check("q-homogeneity", 500)
def _t_q_homogeneity(rs, cfg):
    n = _q_dim(rs, cfg)
    x, h = _pd(rs, n, cfg), _general(rs, n, cfg)
    s = rs.uniform(low=0.1, high=10.0)
    rep = reports.identity(
        "q-homogeneity", calculus.q_form(s * x, s * h), s * calculus.q_form(x, h), (n, n, 1), rel=1e-10, s=s
    )
    return rep, {"x": x, "h": h}


@_check("q-convexity", 500)
def _t_q_convexity(rs, cfg):
    n = _q_dim(rs, cfg)
    x1, h1, x2, h2 = _pd(rs, n, cfg), _general(rs, n, cfg), _pd(rs, n, cfg), _general(rs, n, cfg)
    mid = calculus.q_form(0.5 * (x1 + x2), 0.5 * (h1 + h2))
    avg = 0.5 * (calculus.q_form(x1, h1) + calculus.q_form(x2, h2))
    rep = reports.inequality("q-convexity", mid, avg, (n, n, 1), rel=1e-10)
    return rep, {"x1": x1, "h1": h1, "x2": x2, "h2": h2}


@_check("dq-quotient", 500)
def _t_dq(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    x, h, y, k = _pd(rs, n, cfg), _general(rs, n, cfg), _pd(rs, n, cfg), _general(rs, n, cfg)
    return calculus.check_dq_inequality(x, h, y, k), {"x": x, "h": h, "y": y, "k": k}


@_check("q-contraction", 500)
def _t_q_contraction(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    x = rand_invertible_contraction(n, cfg.gen.min_singular, rs)
    a, b = _pd(rs, n, cfg), _general(rs, n, cfg)
    return ineq.check_q_contraction(x, a, b), {"X": x, "A": a, "B": b}


# ---- concavity -------------------------------------------------------------

def _spec(rs, cfg, exact=None):
    if exact is None:
        n, m, k = _dims(rs, cfg.gen, exact=False)
        exact = k * n >= m and rs.uniform() < 0.5
        ct = rand_contraction_tuple(k, n, m, exact, rs)
    else:
        ct = _tuple(rs, cfg, exact)
    return tracefn.PhiSpec(ct, _herm(rs, ct.m, cfg))


def _spec_inputs(spec):
    return {"H": list(spec.contraction.h_list), "L": spec.l_or_zero()}


@_check("midpoint-single", 1000)
def _t_mid_single(rs, cfg):
    n, m = rs.integers(*cfg.gen.n_range), rs.integers(*cfg.gen.m_range)
    h = rand_contraction_tuple(1, n, m, False, rs).h_list[0]
    p0, p1 = [_pd(rs, n, cfg)], [_pd(rs, n, cfg)]
    rep = tracefn.concavity_midpoint_probe(tracefn.single_evaluator(h), p0, p1, rel=cfg.slack_rel)
    return rep, {"H": h, "A0": p0, "A1": p1}


@_check("midpoint-multi", 1000)
def _t_mid_multi(rs, cfg):
    spec = _spec(rs, cfg)
    ct = spec.contraction
    p0, p1 = _pd_list(rs, ct.n, ct.k, cfg), _pd_list(rs, ct.n, ct.k, cfg)
    rep = tracefn.concavity_midpoint_probe(tracefn.multi_evaluator(spec), p0, p1, rel=cfg.slack_rel)
    return rep, {**_spec_inputs(spec), "A0": p0, "A1": p1}


def _direction(rs, point, cfg):
    return [rand_hermitian(a.shape[0], 0.5 * min_eigenvalue(a), rs) for a in point]


@_check("second-diff-single", 500)
def _t_d2_single(rs, cfg):
    n, m = rs.integers(*cfg.gen.n_range), rs.integers(*cfg.gen.m_range)
    h = rand_contraction_tuple(1, n, m, False, rs).h_list[0]
    point = [_pd(rs, n, cfg)]
    d = _direction(rs, point, cfg)
    rep = tracefn.concavity_second_derivative_probe(tracefn.single_evaluator(h), point, d)
    return rep, {"H": h, "A": point, "D": d}


@_check("second-diff-multi", 500)
def _t_d2_multi(rs, cfg):
    spec = _spec(rs, cfg)
    ct = spec.contraction
    point = _pd_list(rs, ct.n, ct.k, cfg)
    d = _direction(rs, point, cfg)
    rep = tracefn.concavity_second_derivative_probe(tracefn.multi_evaluator(spec), point, d)
    return rep, {**_spec_inputs(spec), "A": point, "D": d}


@_check("homogeneity", 200)
def _t_homogeneity(rs, cfg):
    spec = _spec(rs, cfg, exact=True)
    ct = spec.contraction
    a = _pd_list(rs, ct.n, ct.k, cfg)
    s = rs.uniform(low=0.1, high=10.0)
    return tracefn.check_homogeneity(spec, a, s), {**_spec_inputs(spec), "A": a}


@_check("quotient-phi", 500)
def _t_quotient_phi(rs, cfg):
    spec = _spec(rs, cfg, exact=True)
    ct = spec.contraction
    a, b = _pd_list(rs, ct.n, ct.k, cfg), _pd_list(rs, ct.n, ct.k, cfg)
    rep = calculus.check_homogeneous_convex_quotient("phi_multi", a, b, spec=spec)
    return rep, {**_spec_inputs(spec), "A": a, "B": b}


# ---- inequalities ----------------------------------------------------------

@_check("gt-multi", 1000)
def _t_gt_multi(rs, cfg):
    ct = _tuple(rs, cfg)
    l_term = _herm(rs, ct.m, cfg)
    b = [_herm(rs, ct.n, cfg) for _ in range(ct.k)]
    return ineq.check_gt_multi(l_term, ct, b), {"L": l_term, "H": list(ct.h_list), "B": b}


@_check("classical-gt", 500)
def _t_classical(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    l_term, b = _herm(rs, n, cfg), _herm(rs, n, cfg)
    return ineq.check_classical_gt(l_term, b), {"L": l_term, "B": [b]}


@_check("interpolation", 500)
def _t_interpolation(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    l_term, a, b = _herm(rs, n, cfg), _herm(rs, n, cfg), _herm(rs, n, cfg)
    return ineq.check_interpolation(l_term, a, b), {"L": l_term, "A": [a], "B": [b]}


@_check("lemma", 1000)
def _t_lemma(rs, cfg):
    ct = _tuple(rs, cfg)
    l_term = _herm(rs, ct.m, cfg)
    a, b = _pd_list(rs, ct.n, ct.k, cfg), _pd_list(rs, ct.n, ct.k, cfg)
    return ineq.check_lemma_main(l_term, ct, a, b), {"L": l_term, "H": list(ct.h_list), "A": a, "B": b}


@_check("gt-logdiff", 500)
def _t_logdiff(rs, cfg):
    ct = _tuple(rs, cfg)
    a, b = _pd_list(rs, ct.n, ct.k, cfg), _pd_list(rs, ct.n, ct.k, cfg)
    return ineq.check_gt_logdiff(ct, a, b), {"H": list(ct.h_list), "A": a, "B": b}


@_check("gt-extended", 500)
def _t_extended(rs, cfg):
    ct = _tuple(rs, cfg)
    a, b, c = (_pd_list(rs, ct.n, ct.k, cfg) for _ in range(3))
    return ineq.check_gt_extended(ct, a, b, c), {"H": list(ct.h_list), "A": a, "B": b, "C": c}


@_check("expectation", 500)
def _t_expectation(rs, cfg):
    n, m, k = _dims(rs, cfg.gen, exact=False)
    exact = k * n >= m and rs.uniform() < 0.5
    ct = rand_contraction_tuple(k, n, m, exact, rs)
    l_term = _herm(rs, m, cfg)
    count = rs.integers(2, 4)
    w = rs.uniform(count, low=0.1, high=1.0)
    w = w / w.sum()
    atoms = [(wi, [_herm(rs, n, cfg) for _ in range(k)]) for wi in w]
    w_last = 1.0 - float(sum(w[:-1]))
    atoms[-1] = (w_last, atoms[-1][1])
    dist = ineq.DiscreteDistribution(atoms)
    inputs = {"L": l_term, "H": list(ct.h_list)}
    for j, (_, t) in enumerate(atoms):
        inputs[f"atom{j}"] = t
    return ineq.check_expectation(l_term, ct, dist), inputs


@_check("block-identity", 200)
def _t_block(rs, cfg):
    ct = _tuple(rs, cfg)
    a = _pd_list(rs, ct.n, ct.k, cfg)
    return tracefn.check_block_identity(ct, a), {"H": list(ct.h_list), "A": a}


# ---- reductions ------------------------------------------------------------

@_check("reduce-classical", 500)
def _t_reduce_classical(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    l_term, b = _herm(rs, n, cfg), _herm(rs, n, cfg)
    multi = ineq.check_gt_multi(l_term, tracefn.ContractionTuple([np.eye(n)]), [b])
    classical = ineq.check_classical_gt(l_term, b)
    direct = reports.inequality("direct", classical.extras["direct_lhs"], classical.extras["direct_rhs"])
    interp = ineq.check_interpolation(l_term, b, b)
    dims = (n, n, 1)
    rep = _worst(
        _pair_identity("reduce-classical", multi, direct, 1e-12, dims),
        _pair_identity("reduce-classical", interp, direct, 1e-12, dims),
    )
    return rep, {"L": l_term, "B": [b]}


@_check("reduce-lemma-gt", 500)
def _t_reduce_lemma_gt(rs, cfg):
    ct = _tuple(rs, cfg)
    l_term = _herm(rs, ct.m, cfg)
    b = [_herm(rs, ct.n, cfg) for _ in range(ct.k)]
    eye = [np.eye(ct.n) for _ in range(ct.k)]
    lemma = ineq.check_lemma_main(l_term, ct, eye, [expm_h(x) for x in b])
    gt = ineq.check_gt_multi(l_term, ct, b)
    rep = _pair_identity("reduce-lemma-gt", lemma, gt, 1e-12, (ct.n, ct.m, ct.k))
    return rep, {"L": l_term, "H": list(ct.h_list), "B": b}


@_check("reduce-lemma-logdiff", 500)
def _t_reduce_logdiff(rs, cfg):
    ct = _tuple(rs, cfg)
    a, b = _pd_list(rs, ct.n, ct.k, cfg), _pd_list(rs, ct.n, ct.k, cfg)
    l_term = -tracefn.congruence_sum(ct.h_list, [logm_pd(x) for x in a])
    lemma = ineq.check_lemma_main(l_term, ct, a, b)
    direct = ineq.check_gt_logdiff(ct, a, b)
    rep = _pair_identity("reduce-lemma-logdiff", lemma, direct, 1e-12, (ct.n, ct.m, ct.k))
    return rep, {"H": list(ct.h_list), "A": a, "B": b}


@_check("reduce-lemma-extended", 500)
def _t_reduce_extended(rs, cfg):
    ct = _tuple(rs, cfg)
    a, b, c = (_pd_list(rs, ct.n, ct.k, cfg) for _ in range(3))
    l_term = tracefn.congruence_sum(ct.h_list, [logm_pd(z) - logm_pd(x) for z, x in zip(c, a)])
    lemma = ineq.check_lemma_main(l_term, ct, a, b)
    direct = ineq.check_gt_extended(ct, a, b, c)
    rep = _pair_identity("reduce-lemma-extended", lemma, direct, 1e-12, (ct.n, ct.m, ct.k))
    return rep, {"H": list(ct.h_list), "A": a, "B": b, "C": c}


@_check("commuting-logdiff", 500)
def _t_commuting(rs, cfg):
    ct = _tuple(rs, cfg)
    pairs = [rand_commuting_pair(ct.n, 0.5 * np.log(cfg.gen.cond_cap), rs) for _ in range(ct.k)]
    a, b = [p[0] for p in pairs], [p[1] for p in pairs]
    rep = ineq.check_gt_logdiff(ct, a, b)
    closed = ineq.commuting_logdiff_rhs(ct, a, b)
    out = reports.identity("commuting-logdiff", rep.rhs, closed, (ct.n, ct.m, ct.k), rel=1e-9)
    return out, {"H": list(ct.h_list), "A": a, "B": b}


AUGMENT_EXPONENT_CAP = 4.0


@_check("augment-l-term", 500)
def _t_augment(rs, cfg):
    ct = _tuple(rs, cfg, exact=False)
    l_term = _herm(rs, ct.m, cfg)
    # keep ||H_{k+1}^-1 L H_{k+1}^-1|| <= cap so exp followed by log stays accurate
    floor = min_eigenvalue(tracefn.augment(ct)) ** 2
    norm = max(np.linalg.norm(l_term, 2), 1e-300)
    l_term = l_term * min(1.0, AUGMENT_EXPONENT_CAP * floor / norm)
    spec = tracefn.PhiSpec(ct, l_term)
    a = _pd_list(rs, ct.n, ct.k, cfg)
    direct = tracefn.phi_multi(spec, a)
    via = tracefn.phi_augmented(spec, a)
    rep = reports.identity("augment-l-term", direct, via, (ct.n, ct.m, ct.k), rel=1e-9)
    return rep, {**_spec_inputs(spec), "A": a}


@_check("lieb-weights", 500)
def _t_lieb(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    k = rs.integers(*cfg.gen.k_range)
    p = rs.uniform(k, low=0.05, high=1.0)
    p = p / p.sum() * rs.uniform(low=0.3, high=1.0)
    ct = tracefn.ContractionTuple([np.sqrt(pi) * np.eye(n) for pi in p], exact=False)
    spec = tracefn.PhiSpec(ct, _herm(rs, n, cfg))
    a = _pd_list(rs, n, k, cfg)
    rep = reports.identity(
        "lieb-weights", tracefn.phi_multi(spec, a), tracefn.phi_scalar_weights(spec.l_term, p, a),
        (n, n, k), rel=1e-10,
    )
    return rep, {**_spec_inputs(spec), "A": a}


# ---- oracles (cmd_oracle) --------------------------------------------------

def _rel_err(a, b) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


@_check("oracle-quadrature", 200)
def _t_oracle_quad(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    a, b = _pd(rs, n, cfg), _general(rs, n, cfg)
    rule = calculus.QuadratureRule(cfg.quad_nodes)
    err = _rel_err(calculus.frechet_log_quadrature(a, b, rule), calculus.frechet_log(a, b))
    return reports.bounded("oracle-quadrature", err, calculus.QUAD_TOL, (n, n, 1)), {"A": a, "B": b}


@_check("oracle-q", 200)
def _t_oracle_q(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    x, h = _pd(rs, n, cfg), _general(rs, n, cfg)
    exact = calculus.q_form(x, h)
    quad = calculus.q_form_oracle(x, h, calculus.QuadratureRule(cfg.quad_nodes))
    err = abs(quad - exact) / max(abs(exact), 1e-300)
    return reports.bounded("oracle-q", err, calculus.QUAD_TOL, (n, n, 1)), {"x": x, "h": h}


@_check("oracle-fd", 200)
def _t_oracle_fd(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    a, b = _pd(rs, n, cfg), rand_hermitian(n, 1.0, rs)
    eps = 1e-5 * np.linalg.norm(a) / np.linalg.norm(b)
    fd = (logm_pd(a + eps * b) - logm_pd(a - eps * b)) / (2 * eps)
    err = _rel_err(fd, calculus.frechet_log(a, b))
    return reports.bounded("oracle-fd", err, 1e-4, (n, n, 1)), {"A": a, "B": b}


@_check("oracle-inverse", 200)
def _t_oracle_inverse(rs, cfg):
    n = rs.integers(*cfg.gen.n_range)
    c, d = _herm(rs, n, cfg), _herm(rs, n, cfg)
    back = calculus.frechet_log(expm_h(c), calculus.frechet_exp(c, d))
    return reports.bounded("oracle-inverse", _rel_err(back, d), 1e-9, (n, n, 1)), {"C": c, "D": d}


GROUPS: dict[str, list[str]] = {
    "q": ["q-positivity", "q-homogeneity", "q-convexity", "dq-quotient", "q-contraction"],
    "concavity": [
        "midpoint-single", "midpoint-multi", "second-diff-single", "second-diff-multi",
        "homogeneity", "quotient-phi",
    ],
    "gt-multi": ["gt-multi", "classical-gt"],
    "gt-logdiff": ["gt-logdiff"],
    "gt-extended": ["gt-extended"],
    "interpolation": ["interpolation"],
    "lemma": ["lemma"],
    "expectation": ["expectation"],
    "block-identity": ["block-identity"],
    "reductions": [
        "reduce-classical", "reduce-lemma-gt", "reduce-lemma-logdiff", "reduce-lemma-extended",
        "commuting-logdiff", "augment-l-term", "lieb-weights",
    ],
    "oracle": ["oracle-quadrature", "oracle-q", "oracle-fd", "oracle-inverse"],
}
VERIFY_GROUPS = [g for g in GROUPS if g != "oracle"]
GROUPS["all"] = [name for g in VERIFY_GROUPS for name in GROUPS[g]]


def resolve(selector: str) -> list[str]:
    """Expand a group name or check name to a list of check names."""
    if selector in GROUPS:
        return list(GROUPS[selector])
    if selector in CHECKS:
        return [selector]
    raise KeyError(f"unknown suite {selector!r}; choose from {sorted(GROUPS)} or a check name")


# ---- running ---------------------------------------------------------------

@dataclass
class SuiteReport:
    suite: str
    seed: int
    config: dict
    trials: list = field(default_factory=list)
    skipped: int = 0
    violation: dict | None = None

    @property
    def passed(self) -> int:
        return sum(1 for t in self.trials if t.passed)

    @property
    def failed(self) -> int:
        return len(self.trials) - self.passed

    @property
    def worst_slack(self) -> float:
        return min((t.slack for t in self.trials), default=0.0)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self, include_trials: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "trials": [t.to_dict() for t in self.trials] if include_trials else len(self.trials),
            "passed": self.passed,
            "failed": self.failed,
            "worst_slack": self.worst_slack,
            "seed": self.seed,
            "config": self.config,
            "skipped": self.skipped,
        }
        if self.violation is not None:
            out["violation"] = self.violation
        return out


def encode_inputs(inputs: dict) -> dict:
    out = {}
    for key, value in inputs.items():
        if isinstance(value, (list, tuple)):
            out[key] = [encode_matrix(v) for v in value]
        else:
            out[key] = encode_matrix(value)
    return out


def run_trial(name: str, index: int, seed: int, cfg: RunConfig) -> tuple[TrialReport, dict]:
    rep, inputs = CHECKS[name].trial(stream(seed, index, name), cfg)
    if cfg.slack_rel != reports.SLACK_REL:
        rep = rep.with_rel(cfg.slack_rel)
    return rep.with_trial(name, index, seed), inputs


def run_suite(name: str, trials: int | None = None, seed: int = 0,
              cfg: RunConfig | None = None, abort_on_violation: bool = True) -> SuiteReport:
    """Run `trials` seeded trials of one check."""
    cfg = cfg or RunConfig()
    count = CHECKS[name].default_trials if trials is None else trials
    if count < 1:
        raise ValueError(f"trials must be >= 1, got {count}")
    suite = SuiteReport(name, seed, {"trials": count, **cfg.to_dict()})
    for i in range(count):
        try:
            rep, inputs = run_trial(name, i, seed, cfg)
        except ExpOverflowError:
            if not cfg.stress:
                raise
            suite.skipped += 1
            continue
        suite.trials.append(rep)
        if not rep.passed and abort_on_violation:
            suite.violation = {"trial_index": i, "inputs": encode_inputs(inputs)}
            break
    return suite


def run_suites(selector: str, trials: int | None = None, seed: int = 0,
               cfg: RunConfig | None = None) -> list[SuiteReport]:
    return [run_suite(name, trials, seed, cfg) for name in resolve(selector)]


# ---- deterministic JSON ----------------------------------------------------

def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int | None = 1, _level: int = 0) -> str:
    """JSON with insertion-ordered keys and 17-significant-digit floats."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + ",".join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
