"""Reproducible experiment sweeps emitting CSV or JSON tables.

Each experiment maps a :class:`RunConfig` to an :class:`ExperimentTable`.
Measured columns go through the polynomial pipeline; oracle columns come
from :mod:`ucfourier.oracles`.  Table checks are either ``hard`` (exact
identities and proven bounds; a failure is a tolerance violation) or
``convention`` (fitted slope brackets with no proven constant; reported
but never fatal).
"""

from __future__ import annotations

import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import oracles
from .constructions import exponential, fejer, salem_g
from .errors import DomainError
from .funcspec import format_n_list, parse_function
from .multiplier import commutator, mu_upper_log
from .norms import (
    WeightSequence,
    c_norm,
    sin_log_integral,
    sobolev_half_norm,
    u_norm,
    u_norm_asym,
    variation_norm,
)
from .trigpoly import (
    TrigPoly,
    derivative,
    grid_size,
    multiply,
    modulate,
    partial_sum,
    synthesize,
)

TWO_PI = 2.0 * math.pi


@dataclass
class RunConfig:
    n_list: list[int]
    grid_factor: int = 8
    tol: float = 1e-6
    fmt: str = "csv"
    out: Optional[str] = None
    seed: int = 0
    threads: int = 1
    alpha_list: list[float] = field(default_factory=lambda: [0.0, 1.0, 2.0])
    #: largest n for which measured u-norm columns are computed
    u_cap: int = 1024
    m_spec: str = "g:32"
    #: defaults to a unit-sup random polynomial keyed by ``seed``
    f_spec: Optional[str] = None

    def __post_init__(self):
        self.n_list = [int(n) for n in self.n_list]
        if not self.n_list:
            raise DomainError("n_list is empty")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])) or self.n_list[0] < 1:
            raise DomainError("n_list must be ascending positive integers")
        if self.grid_factor < 8:
            raise DomainError("grid factor must be at least 8")
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")
        if not self.alpha_list:
            raise DomainError("alpha_list is empty")


@dataclass
class Check:
    name: str
    passed: bool
    kind: str  # "hard" or "convention"
    detail: str = ""

    def __post_init__(self):
        self.passed = bool(self.passed)


@dataclass
class ExperimentTable:
    experiment: str
    columns: list[str]
    rows: list[list]
    metadata: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    #: wall-clock seconds; kept out of CSV so that output is byte-stable
    wall_clock: float = 0.0

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def hard_failures(self) -> list[Check]:
        return [c for c in self.checks if c.kind == "hard" and not c.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# experiment: {self.experiment}\n")
        for k in sorted(self.metadata):
            buf.write(f"# {k}: {_fmt_meta(self.metadata[k])}\n")
        for c in self.checks:
            buf.write(f"# check {c.kind} {'pass' if c.passed else 'FAIL'}: {c.name}"
                      + (f" ({c.detail})" if c.detail else "") + "\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt_cell(v) for v in row) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "columns": self.columns,
            "rows": [[_json_cell(v) for v in r] for r in self.rows],
            "metadata": {k: _json_cell(v) for k, v in sorted(self.metadata.items())},
            "checks": [asdict(c) for c in self.checks],
            "wall_clock_s": self.wall_clock,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _fmt_meta(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_cell(x) for x in v)
    return _fmt_cell(v)


def _json_cell(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def fit_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of ``y`` against ``x``."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2:
        return float("nan")
    return float(np.polyfit(x, y, 1)[0])


def _map(cfg: RunConfig, func: Callable, items: Sequence):
    if cfg.threads == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(func, items))


def _require_n(cfg: RunConfig, minimum: int = 2) -> list[int]:
    bad = [n for n in cfg.n_list if n < minimum]
    if bad:
        raise DomainError(f"this experiment needs n >= {minimum}, got {bad}")
    return list(cfg.n_list)


def _bracket(name: str, value: float, lo: float, hi: float) -> Check:
    ok = bool(lo <= value <= hi)
    return Check(name, ok, "convention", f"value {value:.6g}, bracket [{lo:g}, {hi:g}]")


# -- experiments --------------------------------------------------------
def exp_salem_lemma2(cfg: RunConfig) -> ExperimentTable:
    """``|S_n(e_n g_n)(0)|`` against ``(H_n - 1)/2``."""
    ns = _require_n(cfg)

    def row(n):
        p = multiply(exponential(n), salem_g(n))
        s = partial_sum(p, n)
        pipeline = abs(synthesize(s, grid_size(s.degree, cfg.grid_factor)).samples[0])
        oracle = oracles.salem_sum(n)
        harm = (oracles.harmonic(n) - 1.0) / 2.0
        u = u_norm(modulate(salem_g(n), n), cfg.grid_factor) if n <= cfg.u_cap else None
        half_log = 0.5 * math.log(n)
        return [n, pipeline, oracle, harm, abs(pipeline - oracle), u,
                harm / half_log, None if u is None else u / half_log]

    rows = _map(cfg, row, ns)
    cols = ["n", "pipeline_Sn0", "oracle_sum", "oracle_harmonic", "abs_err",
            "u_norm_engn", "ratio_oracle_halflog", "ratio_u_halflog"]
    t = ExperimentTable("salem-lemma2", cols, rows)
    err = max(r[4] for r in rows)
    t.checks.append(Check("pipeline equals (H_n-1)/2 within 1e-10", err <= 1e-10, "hard",
                          f"max abs err {err:.3g}"))
    under = [r[0] for r in rows if r[5] is not None and r[5] < r[2] - 1e-9]
    t.checks.append(Check("u_norm(e_n g_n) >= |S_n(e_n g_n)(0)|", not under, "hard",
                          f"violations at n={under}" if under else ""))
    ratios = [r[6] for r in rows]
    t.checks.append(Check("oracle ratio increasing in n",
                          all(b > a for a, b in zip(ratios, ratios[1:])), "hard"))
    if ns[-1] == 4096:
        t.checks.append(_bracket("oracle ratio at n=4096", ratios[-1], 0.90, 1.00))
    t.metadata["final_ratio"] = ratios[-1]
    return t


def exp_gn_bounds(cfg: RunConfig) -> ExperimentTable:
    """Variation and sup norms of ``g_n`` against ``2 pi``."""
    ns = _require_n(cfg)

    def row(n):
        g = salem_g(n)
        v = variation_norm(g, cfg.tol)
        c = c_norm(g, cfg.grid_factor)
        target = fejer(n) * 0.5 - exponential(0) * 0.5
        resid = derivative(g).max_coeff_diff(target)
        return [n, v, c, TWO_PI, resid]

    rows = _map(cfg, row, ns)
    t = ExperimentTable("gn-bounds", ["n", "variation", "c_norm", "two_pi", "fejer_residual"], rows)
    t.checks.append(Check("variation <= 2pi + 1e-5", all(r[1] <= TWO_PI + 1e-5 for r in rows), "hard"))
    t.checks.append(Check("c_norm <= 2pi + 1e-6", all(r[2] <= TWO_PI + 1e-6 for r in rows), "hard"))
    res = max(r[4] for r in rows)
    t.checks.append(Check("g_n' = F_n/2 - 1/2 within 1e-12", res <= 1e-12, "hard",
                          f"max residual {res:.3g}"))
    return t


def exp_mu_en(cfg: RunConfig) -> ExperimentTable:
    """Lower and upper bounds on the multiplier norm of ``e_n``."""
    ns = _require_n(cfg)
    ns = [n for n in ns if n <= cfg.u_cap]
    if not ns:
        raise DomainError(f"no n within the u-norm cap {cfg.u_cap}")

    def row(n):
        ug = u_norm(salem_g(n), cfg.grid_factor)
        ueg = u_norm(modulate(salem_g(n), n), cfg.grid_factor)
        lower = ueg / ug
        J = sin_log_integral(n)
        upper = mu_upper_log(exponential(n))
        ln = math.log(n)
        return [n, ug, ueg, oracles.salem_sum(n), lower, J, upper, lower / ln, upper / ln]

    rows = _map(cfg, row, ns)
    cols = ["n", "u_norm_gn", "u_norm_engn", "oracle_salem_sum", "lower", "J_n", "upper",
            "lower_over_ln", "upper_over_ln"]
    t = ExperimentTable("mu-en", cols, rows)
    ok = all(r[4] <= r[6] + 1e-4 for r in rows)
    t.checks.append(Check("lower <= upper + 1e-4", ok, "hard"))
    lnn = [math.log(r[0]) for r in rows]
    s_lower = fit_slope(lnn, [r[4] for r in rows])
    s_ug = fit_slope(lnn, [math.log(r[1]) for r in rows])
    t.metadata["slope_lower_vs_ln_n"] = s_lower
    t.metadata["loglog_slope_u_norm_gn"] = s_ug
    t.checks.append(_bracket("slope of lower vs ln n", s_lower, 0.40, 0.75))
    t.checks.append(_bracket("log-log slope of u_norm(g_n)", s_ug, -0.05, 0.05))
    return t


def exp_asym(cfg: RunConfig) -> ExperimentTable:
    """Asymmetric partial sums of ``e_n g_n``.

    The bracketed ratio is ``u_norm_asym(e_n g_n) / u_norm(g_n)``; the
    quotient by ``u_norm_asym(g_n)`` is emitted alongside it.
    """
    ns = _require_n(cfg)
    ns = [n for n in ns if n <= cfg.u_cap]
    if not ns:
        raise DomainError(f"no n within the u-norm cap {cfg.u_cap}")

    def row(n):
        g = salem_g(n)
        eg = modulate(g, n)
        u, ua = u_norm(eg, cfg.grid_factor), u_norm_asym(eg, cfg.grid_factor)
        ug, uag = u_norm(g, cfg.grid_factor), u_norm_asym(g, cfg.grid_factor)
        return [n, u, ua, ug, uag, ua / ug, ua / uag]

    rows = _map(cfg, row, ns)
    cols = ["n", "u_norm_engn", "u_norm_asym_engn", "u_norm_gn", "u_norm_asym_gn",
            "ratio_by_u_norm", "ratio_by_u_norm_asym"]
    t = ExperimentTable("asym", cols, rows)
    ok = all(r[2] >= r[1] - 1e-9 for r in rows)
    t.checks.append(Check("u_norm_asym >= u_norm", ok, "hard"))
    lnn = [math.log(r[0]) for r in rows]
    s_asym = fit_slope(lnn, [r[6] for r in rows])
    s_sym = fit_slope(lnn, [r[5] for r in rows])
    t.metadata["slope_ratio_by_u_norm_asym"] = s_asym
    t.metadata["slope_ratio_by_u_norm"] = s_sym
    sub = [r for r in rows if r[0] <= 256]
    if len(sub) >= 2:
        s256 = fit_slope([math.log(r[0]) for r in sub], [r[5] for r in sub])
        t.checks.append(_bracket("slope of asymmetric ratio vs ln n, n <= 256", s256, -0.1, 0.1))
    return t


def exp_weight_threshold(cfg: RunConfig) -> ExperimentTable:
    """``R = ||e_n g_n||_U / (gamma(n) (||g_n||_V + ||g_n||_C))`` per weight power."""
    ns = _require_n(cfg)
    ns = [n for n in ns if n <= cfg.u_cap]
    if not ns:
        raise DomainError(f"no n within the u-norm cap {cfg.u_cap}")

    def base(n):
        g = salem_g(n)
        return (u_norm(modulate(g, n), cfg.grid_factor), variation_norm(g, cfg.tol),
                c_norm(g, cfg.grid_factor))

    measured = dict(zip(ns, _map(cfg, base, ns)))
    rows = []
    t = ExperimentTable("weight-threshold", ["alpha", "n", "gamma_n", "u_norm_engn",
                                             "variation_gn", "c_norm_gn", "R"], rows)
    for alpha in sorted(cfg.alpha_list):
        w = WeightSequence.log_power(alpha)
        Rs = []
        for n in ns:
            ueg, v, c = measured[n]
            gam = float(w(n))
            R = ueg / (gam * (v + c))
            Rs.append(R)
            rows.append([alpha, n, gam, ueg, v, c, R])
        if len(ns) >= 2:
            slope = fit_slope([math.log(math.log(n)) for n in ns], [math.log(r) for r in Rs])
        else:
            slope = float("nan")
        t.metadata[f"slope_alpha_{alpha:g}"] = slope
        if alpha < 1:
            t.checks.append(Check(f"alpha={alpha:g}: slope > 0", slope > 0, "convention",
                                  f"slope {slope:.6g}"))
        else:
            t.checks.append(Check(f"alpha={alpha:g}: slope <= 0.02", slope <= 0.02, "convention",
                                  f"slope {slope:.6g}"))
        if alpha > 1 and len(Rs) >= 2:
            t.checks.append(Check(f"alpha={alpha:g}: R decreases", Rs[-1] < Rs[0], "convention"))
        if alpha == 1 and 64 in ns:
            tail = [R for n, R in zip(ns, Rs) if n >= 64]
            r64 = Rs[ns.index(64)]
            t.checks.append(Check("alpha=1: max R over n >= 64 within 1.2 R(64)",
                                  max(tail) <= 1.2 * r64, "convention",
                                  f"max/R(64) = {max(tail) / r64:.4g}"))
    return t


def exp_sobolev(cfg: RunConfig) -> ExperimentTable:
    """Squared half-order Sobolev norm of ``g_n`` against a direct sum."""
    ns = _require_n(cfg)

    def row(n):
        sq = sobolev_half_norm(salem_g(n)) ** 2
        oracle = oracles.sobolev_gn_square(n)
        return [n, sq, oracle, abs(sq - oracle), sq / (0.5 * math.log(n))]

    rows = _map(cfg, row, ns)
    t = ExperimentTable("sobolev", ["n", "sobolev_sq", "oracle", "abs_err", "ratio_halflog"], rows)
    err = max(r[3] for r in rows)
    t.checks.append(Check("sobolev square equals direct sum within 1e-10", err <= 1e-10, "hard",
                          f"max abs err {err:.3g}"))
    if ns[-1] == 4096:
        t.checks.append(_bracket("ratio at n=4096", rows[-1][4], 0.80, 1.00))
    return t


def convergence_rows(m: TrigPoly, f: TrigPoly, grid_factor: int = 8) -> list[list]:
    """Per ``N``: the error of ``S_N(mf)`` and the two terms bounding it."""
    mf = multiply(m, f)
    cm = c_norm(m, grid_factor)
    rows = []
    for N in range(mf.degree + 2):
        err = c_norm(mf - partial_sum(mf, N), grid_factor)
        tail = c_norm(f - partial_sum(f, N), grid_factor)
        q = c_norm(commutator(m, f, N), grid_factor)
        rhs = cm * tail + q
        rows.append([N, err, cm * tail, q, rhs, rhs - err])
    return rows


def exp_convergence(cfg: RunConfig) -> ExperimentTable:
    """Uniform error of ``S_N(mf)`` split as ``m (f - S_N f)`` plus the commutator."""
    f_spec = cfg.f_spec or f"rand:16:{cfg.seed}:unit"
    m, f = parse_function(cfg.m_spec), parse_function(f_spec)
    rows = convergence_rows(m, f, cfg.grid_factor)
    cols = ["N", "err_mf", "cm_times_tail_f", "commutator", "chain_rhs", "slack"]
    t = ExperimentTable("convergence", cols, rows)
    t.metadata["m"] = cfg.m_spec
    t.metadata["f"] = f_spec
    deg = m.degree + f.degree
    ok = all(r[1] <= r[4] + 1e-6 for r in rows)
    t.checks.append(Check("err <= c(m) c(f - S_N f) + c(Q_N f) + 1e-6", ok, "hard"))
    tail_ok = all(r[1] <= 1e-12 for r in rows if r[0] >= deg)
    t.checks.append(Check("err vanishes for N >= deg(mf)", tail_ok, "hard"))
    return t


EXPERIMENTS: dict[str, Callable[[RunConfig], ExperimentTable]] = {
    "salem-lemma2": exp_salem_lemma2,
    "gn-bounds": exp_gn_bounds,
    "mu-en": exp_mu_en,
    "asym": exp_asym,
    "weight-threshold": exp_weight_threshold,
    "sobolev": exp_sobolev,
    "convergence": exp_convergence,
}


def run_experiment(name: str, cfg: RunConfig) -> ExperimentTable:
    if name not in EXPERIMENTS:
        raise DomainError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    start = time.perf_counter()
    table = EXPERIMENTS[name](cfg)
    table.wall_clock = time.perf_counter() - start
    table.metadata.setdefault("n_list", format_n_list(cfg.n_list))
    table.metadata["grid_factor"] = cfg.grid_factor
    table.metadata["tol"] = cfg.tol
    table.metadata["seed"] = cfg.seed
    if name == "weight-threshold":
        table.metadata["alpha_list"] = [float(a) for a in sorted(cfg.alpha_list)]
    if any(c.kind == "convention" for c in table.checks):
        table.metadata["bracket_note"] = "slope brackets are conventions, not proven constants"
    return table
