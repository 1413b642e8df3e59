import json
from pathlib import Path

import pytest

from utils.config_loader import DEFAULTS, ConfigError, load_config_document, resolve_config


def write_doc(tmp_path, document):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(document))
    return path


def test_defaults_apply(monkeypatch):
    monkeypatch.delenv("RPQ_OUT", raising=False)
    config = resolve_config("ladder", {})
    assert config.parameters == DEFAULTS["ladder"]
    assert config.out_dir == Path("out")
    assert config.seed == 0


def test_flags_override_document(tmp_path):
    doc = write_doc(tmp_path, {"command": "ladder", "parameters": {"m": 2, "nmax": 5}, "seed": 4})
    config = resolve_config("ladder", {"nmax": 7}, doc)
    assert config.parameters["m"] == 2.0
    assert isinstance(config.parameters["m"], float)
    assert config.parameters["nmax"] == 7
    assert config.seed == 4


def test_out_resolution_order(tmp_path, monkeypatch):
    monkeypatch.setenv("RPQ_OUT", str(tmp_path / "env"))
    assert resolve_config("ladder", {}).out_dir == tmp_path / "env"
    doc = write_doc(tmp_path, {"out": str(tmp_path / "doc")})
    assert resolve_config("ladder", {}, doc).out_dir == tmp_path / "doc"
    assert resolve_config("ladder", {}, doc, out=str(tmp_path / "flag")).out_dir == tmp_path / "flag"


def test_unknown_document_key(tmp_path):
    doc = write_doc(tmp_path, {"command": "ladder", "colour": "red"})
    with pytest.raises(ConfigError, match="Unknown config key: colour"):
        load_config_document(doc)


def test_unknown_parameter(tmp_path):
    doc = write_doc(tmp_path, {"parameters": {"omega": 1.0}})
    with pytest.raises(ConfigError, match="Unknown parameter"):
        resolve_config("ladder", {}, doc)


def test_command_mismatch(tmp_path):
    doc = write_doc(tmp_path, {"command": "spectrum"})
    with pytest.raises(ConfigError):
        resolve_config("ladder", {}, doc)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config_document(path)


def test_missing_config(tmp_path):
    with pytest.raises(ConfigError, match="Config not found"):
        load_config_document(tmp_path / "nowhere" / "missing-run.json")


@pytest.mark.parametrize("command, key, value", [
    ("ladder", "convention", "eq7"),
    ("ladder", "nmax", 2.5),
    ("spectrum", "count", True),
    ("spectrum", "etas", []),
    ("spectrum", "points", "many"),
    ("plot", "csv", 3),
])
def test_invalid_values(command, key, value):
    with pytest.raises(ConfigError):
        resolve_config(command, {key: value})


def test_list_and_optional_coercion():
    config = resolve_config("spectrum", {"etas": [1, 0.5], "points": 401, "x_min": -5, "x_max": 5})
    assert config.parameters["etas"] == [1.0, 0.5]
    assert config.parameters["points"] == 401
    assert config.parameters["x_min"] == -5.0


@pytest.mark.parametrize("seed", [-1, 1.5, True])
def test_invalid_seed(seed):
    with pytest.raises(ConfigError):
        resolve_config("paths", {}, seed=seed)


def test_unknown_command():
    with pytest.raises(ConfigError):
        resolve_config("teleport", {})
