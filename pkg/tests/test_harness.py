import json
import os
import stat

import pytest

from qtetra import reduction
from qtetra.exactalg import IM, RatFunc, q, z
from qtetra.harness.cache import BlockCache, CacheError, CacheWarning, decode_matrix, encode_matrix, matrix_key
from qtetra.harness.cli import main, render
from qtetra.harness.reference import m22_3
from qtetra.harness.suites import (
    SUITES, ConfigError, RunConfig, parse_pair, parse_value, profile, resolve_params, run_suite,
)


@pytest.fixture(autouse=True)
def _no_cache():
    reduction.use_block_cache(None)
    yield
    reduction.use_block_cache(None)


def test_parse_value():
    assert parse_value("q^2") == q**2
    assert parse_value("-i*q") == -IM * q
    assert parse_value("(1+q)/(1-z)") == (1 + q) / (1 - z)
    assert parse_value("q^-1") == q.inverse()
    for bad in ("__import__('os')", "q.x", "2.5", "q**z"):
        with pytest.raises(ConfigError):
            parse_value(bad)


def test_parse_pair():
    assert parse_pair("2, 1") == (2, 1)
    with pytest.raises(ConfigError):
        parse_pair("1")


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "tetra", "colour": "red"})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "tetra", "params": {"max_level": 2}})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"params": {}})


def test_config_rejects_negative_cutoffs_and_bad_choices():
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "tetra", "params": {"max_charge": -1}})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "theorem", "params": {"part": "iv"}})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "tetra", "jobs": 0})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"suite": "all", "params": {"profile": "acceptance"}, "mode": "randomized"})


def test_defaults_merged():
    cfg = RunConfig.from_mapping({"suite": "closed-form", "params": {"st": "2,2"}})
    assert cfg.params == {"st": "2,2", "max_degree": 2, "z_order": 6}


def test_every_profile_task_resolves():
    for name in ("acceptance", "quick"):
        crit = profile(name)
        assert [c.number for c in crit] == list(range(1, 13))
        for c in crit:
            for suite, params in c.tasks:
                resolve_params(SUITES[suite], params)


def test_tetra_charge_zero_is_single_pass(capsys):
    assert main(["check", "tetra", "--max-charge", "0", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == 1
    (rep,) = doc["reports"]
    assert rep["summary"] == {"PASS": 1, "FAIL": 0, "SKIPPED": 0}
    assert rep["anchor"] and doc["arithmetic"]["randomized_calls"] == 0


def test_exit_code_one_on_failure(capsys):
    assert main(["check", "ybe", "--st", "1,1", "--max-degree", "1", "--printed"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_config_error_exits_before_running(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "closed-form", "--st", "1,2,3"])
    assert exc.value.code == 2


def test_emit_matrix_matches_printed(capsys):
    assert main(["emit", "matrix", "--st", "2,2", "--d", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["spec"] == [2, 2] and doc["d"] == 3
    assert decode_matrix(doc["rows"]) == m22_3()


def test_emit_latex_and_text(capsys):
    main(["emit", "ffr", "--mu", "q", "--nu", "q^2", "--format", "latex"])
    out = capsys.readouterr().out
    assert out.startswith("\\begin{pmatrix}")
    main(["emit", "quantum-r", "--kind", "a22", "--max-degree", "1", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["blocks"]) == {"0", "1"}


def test_report_formats_and_files(tmp_path, capsys):
    assert main(["check", "rlll", "--max-level", "1", "--report-dir", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "report.json").read_text())["status"] == "PASS"
    assert "overall: PASS" in (tmp_path / "report.txt").read_text()
    res = run_suite(RunConfig.from_mapping({"suite": "boundary", "params": {"cutoff": 1}}))
    tex = render(res, "latex")
    assert tex.startswith("\\begin{tabular}") and tex.count("\\\\") >= 3


def test_timings_are_opt_in():
    res = run_suite(RunConfig.from_mapping({"suite": "tetra", "params": {"max_charge": 1}}))
    assert "seconds" not in render(res, "json")
    assert "seconds" in render(res, "json", timings=True)


def test_randomized_runs_are_reproducible():
    cfg = {"suite": "closed-form", "params": {"max_degree": 1, "z_order": 3}, "mode": "randomized", "seed": 11}
    a = render(run_suite(RunConfig.from_mapping(dict(cfg))), "json")
    b = render(run_suite(RunConfig.from_mapping(dict(cfg))), "json")
    assert a == b
    doc = json.loads(a)
    assert doc["arithmetic"]["seed"] == 11 and doc["arithmetic"]["randomized_calls"] > 0


def test_parallel_run_matches_serial():
    serial = run_suite(RunConfig.from_mapping({"suite": "all", "params": {"profile": "quick"}}))
    parallel = run_suite(RunConfig.from_mapping({"suite": "all", "params": {"profile": "quick"}, "jobs": 3}))
    assert render(serial, "json") == render(parallel, "json")
    assert [c.number for c in serial.criteria] == list(range(1, 13))


def test_cache_round_trip(tmp_path):
    cache = BlockCache(tmp_path)
    M = reduction.build_M((1, 1), 2)
    key = matrix_key((1, 1), 2)
    cache.store(key, encode_matrix(M))
    assert decode_matrix(cache.load(key)) == M
    assert cache.load(matrix_key((1, 1), 3)) is None


def test_cache_corruption_warns_and_recomputes(tmp_path):
    cache = BlockCache(tmp_path)
    reduction.use_block_cache(cache)
    M = reduction.build_M((2, 2), 2)
    path = cache.path_for(matrix_key((2, 2), 2))
    doc = json.loads(path.read_text())
    doc["value"][0][0] = "1 * q^9"
    path.write_text(json.dumps(doc))
    with pytest.warns(CacheWarning):
        again = reduction.build_M((2, 2), 2)
    assert again == M
    assert decode_matrix(json.loads(path.read_text())["value"]) == M
    path.write_text("{not json")
    with pytest.warns(CacheWarning):
        assert reduction.build_M((2, 2), 2) == M


def test_cold_and_warm_runs_agree(tmp_path):
    cfg = {"suite": "theorem", "params": {"part": "i", "max_degree": 3}, "cache_dir": str(tmp_path)}
    cold = render(run_suite(RunConfig.from_mapping(dict(cfg))), "json")
    assert len(os.listdir(tmp_path)) == 4
    warm = render(run_suite(RunConfig.from_mapping(dict(cfg))), "json")
    assert cold == warm


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_cache_io_errors_surface(tmp_path):
    cache = BlockCache(tmp_path)
    tmp_path.chmod(stat.S_IRUSR | stat.S_IXUSR)
    try:
        with pytest.raises(CacheError):
            cache.store("k", [["1"]])
    finally:
        tmp_path.chmod(stat.S_IRWXU)


def test_cache_unwritable_root(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CacheError):
        BlockCache(blocker / "sub")
