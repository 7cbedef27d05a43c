import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from ucfourier.constructions import salem_g
from ucfourier.errors import DomainError
from ucfourier.experiments import (
    EXPERIMENTS,
    Check,
    ExperimentTable,
    RunConfig,
    convergence_rows,
    fit_slope,
    run_experiment,
)
from ucfourier.funcspec import parse_function
from ucfourier.norms import c_norm
from ucfourier.trigpoly import modulate, partial_sum, partial_sum_asym, sup_norm

FIXTURE = Path(__file__).parent / "fixtures" / "oracle_sums.csv"


def _fixture():
    with FIXTURE.open() as fh:
        rows = [r for r in csv.DictReader(line for line in fh if not line.startswith("#"))]
    return {int(r["n"]): (float(r["salem_sum"]), float(r["sobolev_sq"])) for r in rows}


def _cfg(ns, **kw):
    return RunConfig(n_list=list(ns), **kw)


def test_run_config_validation():
    for kw in ({"n_list": []}, {"n_list": [4, 2]}, {"n_list": [0, 2]},
               {"n_list": [2], "grid_factor": 4}, {"n_list": [2], "tol": 0},
               {"n_list": [2], "fmt": "xml"}, {"n_list": [2], "threads": 0},
               {"n_list": [2], "alpha_list": []}):
        with pytest.raises(DomainError):
            RunConfig(**kw)
    with pytest.raises(DomainError):
        run_experiment("nope", _cfg([2]))
    with pytest.raises(DomainError):
        run_experiment("sobolev", _cfg([1, 2]))


def test_oracle_columns_match_committed_fixture():
    fx = _fixture()
    ns = sorted(fx)
    t = run_experiment("salem-lemma2", _cfg(ns, u_cap=0))
    # the fixture rounds exact rationals once; the oracle sums rounded terms
    for n, v in zip(t.column("n"), t.column("oracle_sum")):
        assert v == pytest.approx(fx[n][0], rel=4e-16)
    s = run_experiment("sobolev", _cfg(ns))
    for n, v in zip(s.column("n"), s.column("oracle")):
        assert v == pytest.approx(fx[n][1], rel=4e-16)


def test_salem_sum_rows():
    t = run_experiment("salem-lemma2", _cfg([2, 4, 8, 16], u_cap=8))
    assert t.column("pipeline_Sn0")[0] == pytest.approx(0.25, abs=1e-12)
    assert t.column("oracle_sum")[0] == 0.25
    assert t.column("u_norm_engn")[3] is None
    assert not t.hard_failures()
    assert t.column("n") == [2, 4, 8, 16]


def test_gn_bounds_rows():
    t = run_experiment("gn-bounds", _cfg([2, 4, 8]))
    assert t.column("c_norm")[0] == pytest.approx(0.5, abs=1e-12)
    assert not t.hard_failures()


def test_asym_n2_against_exhaustive_search():
    t = run_experiment("asym", _cfg([2]))
    eg = modulate(salem_g(2), 2)
    brute = max(sup_norm(partial_sum_asym(eg, N, M)) for N in range(7) for M in range(7))
    assert t.column("u_norm_asym_engn")[0] == pytest.approx(brute, rel=1e-9)
    sym = max(sup_norm(partial_sum(eg, N)) for N in range(7))
    assert t.column("u_norm_engn")[0] == pytest.approx(sym, rel=1e-9)


def test_sobolev_rows():
    t = run_experiment("sobolev", _cfg([2, 4]))
    assert t.column("sobolev_sq")[0] == pytest.approx(1 / 8, abs=1e-15)
    assert not t.hard_failures()


def test_weight_threshold_layout():
    t = run_experiment("weight-threshold", _cfg([4, 8, 16, 32, 64, 128], alpha_list=[2, 0, 1]))
    assert t.column("alpha") == [0.0] * 6 + [1.0] * 6 + [2.0] * 6
    assert t.column("gamma_n")[:6] == [1.0] * 6
    assert {"slope_alpha_0", "slope_alpha_1", "slope_alpha_2"} <= set(t.metadata)
    assert t.metadata["alpha_list"] == [0.0, 1.0, 2.0]
    assert all(c.kind == "convention" for c in t.checks)


def test_mu_en_rows():
    t = run_experiment("mu-en", _cfg([4, 8, 16]))
    for lo, up in zip(t.column("lower"), t.column("upper")):
        assert lo <= up + 1e-4
    assert "slope_lower_vs_ln_n" in t.metadata


def test_convergence_chain_and_trivial_multiplier():
    t = run_experiment("convergence", _cfg([1], m_spec="g:8", f_spec="rand:12:3:unit"))
    assert not t.hard_failures()
    assert t.metadata["f"] == "rand:12:3:unit"
    f = parse_function("rand:6:1")
    for N, err, cm_tail, q, rhs, slack in convergence_rows(parse_function("e:0"), f):
        assert err == c_norm(f - partial_sum(f, N))
        assert q == 0


@pytest.mark.parametrize("pairs", range(10))
def test_convergence_chain_fixtures(pairs):
    m = parse_function(["g:4", "g:16", "fejer:5", "dirichlet:3", "mod:2:(g:6)"][pairs % 5])
    f = parse_function(f"rand:{6 + pairs}:{pairs}:unit")
    for N, err, cm_tail, q, rhs, slack in convergence_rows(m, f):
        assert err <= rhs + 1e-6


def test_csv_layout_and_json():
    t = ExperimentTable("demo", ["n", "x", "y"], [[2, 0.1, None], [4, 1 / 3, True]],
                        metadata={"b": 1, "a": [1, 2]},
                        checks=[Check("c1", True, "hard"), Check("c2", False, "convention", "d")])
    lines = t.to_csv().splitlines()
    assert lines[0] == "# experiment: demo"
    assert lines[1:3] == ["# a: 1,2", "# b: 1"]
    assert lines[3] == "# check hard pass: c1"
    assert lines[4] == "# check convention FAIL: c2 (d)"
    assert lines[5] == "n,x,y"
    assert lines[6] == "2,0.10000000000000001,"
    assert float(lines[7].split(",")[1]) == 1 / 3
    assert t.hard_failures() == []
    d = json.loads(t.to_json())
    assert d["rows"][1] == [4, 1 / 3, True]
    assert "wall_clock_s" in d


@pytest.mark.parametrize("name", ["salem-lemma2", "asym", "weight-threshold", "convergence"])
def test_csv_is_identical_across_thread_counts(name):
    ns = [1] if name == "convergence" else [2, 4, 8, 16, 32]
    a = run_experiment(name, _cfg(ns, threads=1)).to_csv()
    b = run_experiment(name, _cfg(ns, threads=4)).to_csv()
    assert a == b
    assert "wall" not in a


def test_every_experiment_runs():
    for name in EXPERIMENTS:
        ns = [1] if name == "convergence" else [4, 8]
        t = run_experiment(name, _cfg(ns))
        assert t.rows and t.wall_clock >= 0
        assert t.metadata["seed"] == 0


def test_fit_slope():
    x = np.arange(5.0)
    assert fit_slope(x, 3 * x + 1) == pytest.approx(3.0)
    assert math.isnan(fit_slope([1.0], [2.0]))
