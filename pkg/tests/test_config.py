"""JSON run-configuration parsing and validation."""

import json
from fractions import Fraction

import pytest

from qpaths.config import ModelConfig, load_config, parse_config
from qpaths.errors import ConfigError

FINITE_DOC = {
    "model": {"finite": {"sequence": [0, 2, 5], "q": "3/5"}},
    "task": {"sweeps": 5000, "seed": 7},
}

SCALED_DOC = {
    "model": {
        "scaled": {
            "segments": [[0.5, 2.0], [0.5, 2.0]],
            "jumps": [[0.5, 1.0]],
            "base": 3.0,
        }
    },
    "task": {"branch": "right", "samples": 64, "t_values": [18.0, 150.0]},
}


def test_finite_document_round_trip():
    cfg = parse_config(json.dumps(FINITE_DOC))
    assert cfg.kind == "finite"
    assert tuple(cfg.sequence) == (0, 2, 5)
    assert cfg.q == Fraction(3, 5)
    assert cfg.sweeps == 5000
    assert cfg.seed == 7
    # untouched fields keep their defaults
    assert cfg.branch == "all"
    assert cfg.samples == 400
    assert cfg.density is None and cfg.base is None


def test_scaled_document_round_trip():
    cfg = parse_config(json.dumps(SCALED_DOC))
    assert cfg.kind == "scaled"
    assert cfg.base == 3.0
    assert cfg.branch == "right"
    assert cfg.samples == 64
    assert cfg.t_values == (18.0, 150.0)
    assert cfg.density.alpha(0.25) == pytest.approx(0.5)
    assert cfg.density.alpha(0.75) == pytest.approx(2.5)
    assert cfg.sequence is None and cfg.q is None


def test_weight_forms():
    def q_of(value):
        doc = {"model": {"finite": {"sequence": [0, 1], "q": value}}}
        return parse_config(json.dumps(doc)).q

    assert q_of(2) == Fraction(2)
    # decimal literals are recovered exactly, not via binary float repr
    assert q_of(0.1) == Fraction(1, 10)
    assert q_of(2.5) == Fraction(5, 2)
    assert q_of("7/10") == Fraction(7, 10)
    root = q_of({"base": 3, "n": 30})
    assert isinstance(root, float)
    assert root == pytest.approx(3.0 ** (1.0 / 30.0), rel=1e-15)


def test_weight_rejections():
    for bad in (0, -3, 0.0, -1.5, "0/3", "x", True, [2], {"base": 0, "n": 4}):
        doc = {"model": {"finite": {"sequence": [0, 1], "q": bad}}}
        with pytest.raises(ConfigError):
            parse_config(json.dumps(doc))


def test_all_violations_reported_in_one_pass():
    doc = {
        "model": {
            "scaled": {
                "segments": [[0.4, 2.0], [0.5, 0.5]],
                "jumps": [[0.5, -1.0]],
                "base": 1.0,
            }
        },
        "task": {"branch": "middle", "samples": 1, "seed": -2, "bogus": 3},
    }
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(doc))
    text = "\n".join(info.value.problems)
    assert "sum to 1" in text  # widths 0.4 + 0.5
    assert "slope" in text  # slope 0.5 < 1
    assert "jump" in text  # negative jump height
    assert "model.scaled.base" in text  # base 1 rejected
    assert "task.branch" in text
    assert "task.samples" in text
    assert "task.seed" in text
    assert "unknown keys ['bogus']" in text
    assert len(info.value.problems) >= 8


def test_json_error_carries_position():
    with pytest.raises(ConfigError) as info:
        parse_config('{"model": {\n  "finite": }}')
    (problem,) = info.value.problems
    assert problem.startswith("line 2 column 13")


def test_structure_violations():
    with pytest.raises(ConfigError) as info:
        parse_config("[1, 2]")
    assert info.value.problems == ["top level: expected an object"]

    with pytest.raises(ConfigError) as info:
        parse_config("{}")
    assert info.value.problems == ["model: missing or not an object"]

    both = {"model": {"finite": {"sequence": [0], "q": 2}, "scaled": {}}}
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(both))
    assert any("exactly one of finite/scaled" in p for p in info.value.problems)


def test_sequence_violations():
    for bad in ([1, 2], [0, 2, 2], [0, "x"], "abc", None):
        doc = {"model": {"finite": {"sequence": bad, "q": 2}}}
        with pytest.raises(ConfigError) as info:
            parse_config(json.dumps(doc))
        assert any("sequence" in p for p in info.value.problems)


def test_branch_selector_forms():
    def branch_of(value):
        doc = {
            "model": {"finite": {"sequence": [0, 1], "q": 2}},
            "task": {"branch": value},
        }
        return parse_config(json.dumps(doc)).branch

    for good in ("all", "right", "left", "window:1", "window:12"):
        assert branch_of(good) == good
    for bad in ("window:", "window:x", "top", 3):
        with pytest.raises(ConfigError):
            branch_of(bad)


def test_load_config_reads_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(FINITE_DOC), encoding="utf-8")
    assert load_config(str(path)) == parse_config(json.dumps(FINITE_DOC))


def test_config_is_frozen():
    cfg = parse_config(json.dumps(FINITE_DOC))
    with pytest.raises(Exception):
        cfg.seed = 3
    assert isinstance(cfg, ModelConfig)
