import json

import pytest

from configs.registry import ProfileRegistry
from configs.schema import RunConfig
from main import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, check_plan, parse_config, run


def test_check_passes(capsys):
    assert run(["check", "defining", "--n", "1"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "defining [PASS]" in out
    assert "1/1 checks passed" in out


def test_structured_check_output(capsys):
    assert run(["check", "apow", "--max-n", "3", "--format", "structured", "--no-timing"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "PASS"
    report = data["reports"][0]
    assert report["params"] == {"max_n": 3}
    assert "elapsed_ms" not in report
    assert "details" not in report


def test_dump_keeps_details(capsys):
    assert run(["check", "apow", "--max-n", "2", "--format", "structured", "--dump"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert "a^2" in data["reports"][0]["details"]


def test_failing_check_exits_one(capsys):
    assert run(["check", "appendix-a", "--degree", "6", "--perturbed"]) == EXIT_FAIL
    assert "[FAIL]" in capsys.readouterr().out


def test_emit_seed(capsys):
    assert run(["emit", "seed", "--n", "2", "--format", "structured"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert len(data["variables"]) == 9
    assert data["d"] == [1] * 9
    assert data["D"] == [1, -1, 2, -2, 1, -1]


def test_emit_group_element(capsys):
    assert run(["emit", "group-element", "--n", "1", "--form", "fg", "--format", "structured", "--dump"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert data["form"] == "fg"
    assert len(data["matrix"]) == 2
    assert len(data["classical"]) == 2


def test_emit_leaf_text(capsys):
    assert run(["emit", "leaf", "--n", "1"]) == EXIT_PASS
    assert "classical:" in capsys.readouterr().out


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "reports" / "apow.txt"
    assert run(["check", "apow", "--max-n", "2", "--out", str(target)]) == EXIT_PASS
    assert capsys.readouterr().out == ""
    assert "apow [PASS]" in target.read_text(encoding="utf-8")


@pytest.mark.parametrize("argv", [
    ["check", "nonsense"],
    ["check", "defining", "--n", "0"],
    ["check", "defining", "--n", "9"],
    ["check", "hyper", "--x", "0.5"],
    ["check", "defining", "--rep", "sym:80"],
    ["check", "relations", "--rep", "spin:2"],
    ["emit", "group-element", "--form", "gauss"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_experimental_check_needs_flag(capsys):
    assert run(["check", "mutation-infinite"]) == EXIT_USAGE
    assert "experimental" in capsys.readouterr().err


# ---- configuration ----

def test_params_only_carry_given_flags():
    cfg = parse_config(["check", "hyper", "--max-n", "4", "--x", "3", "--x", "-5"])
    assert cfg.params_for("hyper") == {"max_n": 4, "xs": [3.0, -5.0]}
    assert cfg.params_for("leaf") == {}


def test_sl2_rep_routes_mv_fg_to_reps():
    cfg = parse_config(["check", "mv-fg", "--rep", "sym:3"])
    assert cfg.params_for("mv-fg") == {"reps": ["sym:3"]}


def test_threads_default_from_environment(monkeypatch):
    monkeypatch.setenv("QCV_THREADS", "3")
    assert RunConfig(subcommand="check", target="all").threads == 3
    monkeypatch.setenv("QCV_THREADS", "many")
    assert RunConfig(subcommand="check", target="all").threads == 1


def test_profiles():
    registry = ProfileRegistry()
    assert {"acceptance", "quick"} <= set(registry.available())
    plan = registry.load_checks("quick")
    assert plan and all(isinstance(params, dict) for _, params in plan)
    with pytest.raises(FileNotFoundError):
        registry.load("missing-profile")


def test_check_all_plan_adds_experimental():
    plain = check_plan(parse_config(["check", "all", "--quick"]))
    extended = check_plan(parse_config(["check", "all", "--quick", "--experimental"]))
    assert [name for name, _ in extended[len(plain):]] == ["mutation-infinite"]
    assert all(name != "mutation-infinite" for name, _ in plain)


def test_truncated_rep_sets_the_closed_form_size():
    cfg = parse_config(["check", "qexp-forms", "--rep", "trunc:9"])
    assert cfg.params_for("qexp-forms") == {"M": 9}
    assert parse_config(["check", "qexp-forms", "--size", "7"]).params_for("qexp-forms") == {"M": 7}


@pytest.mark.parametrize("argv", [
    ["check", "qexp-forms", "--rep", "sym:3"],
    ["check", "qexp-forms", "--rep", "trunc:9", "--size", "8"],
    ["check", "qexp-forms", "--rep", "trunc:3"],
])
def test_closed_forms_reject_other_modules(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert "ERROR" in capsys.readouterr().err


def test_closed_forms_run_on_the_given_module(capsys):
    assert run(["check", "qexp-forms", "--rep", "trunc:6", "--format", "structured", "--no-timing"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert data["reports"][0]["params"]["M"] == 6


# ---- dumps and full runs ----

def test_dump_prints_the_aligned_matrix(capsys):
    assert run(["emit", "group-element", "--n", "1", "--form", "fg", "--dump"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "pretty:" in out
    assert sum(1 for line in out.splitlines() if line.startswith("  [ ")) == 2


def test_pretty_is_only_dumped_on_request(capsys):
    assert run(["emit", "group-element", "--n", "1", "--format", "structured"]) == EXIT_PASS
    assert "pretty" not in json.loads(capsys.readouterr().out)


def test_check_all_quick_passes(capsys):
    assert run(["check", "all", "--quick", "--no-timing"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "hyper [PASS]" in out
    assert "[FAIL]" not in out
