import json
import math

import numpy as np
import pytest

from vclab import graphs as gr
from vclab.certificate import (
    CONFIG_ENV,
    Certificate,
    RunConfig,
    aggregate_status,
    dumps_canonical,
    graph_digest,
)


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.solve_tol, cfg.rank_tol, cfg.tight_tol, cfg.max_iters) == (1e-9, 1e-6, 1e-6, 200)
    assert cfg.output == "json" and cfg.parallel is False
    tol = cfg.tolerances()
    assert (tol.solve, tol.rank, tol.tight, tol.max_iters) == (1e-9, 1e-6, 1e-6, 200)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"solve_tol": 0.0},
        {"solve_tol": 1e-5, "rank_tol": 1e-6},
        {"rank_tol": 1.0},
        {"max_iters": 5},
        {"max_iters": 10.5},
        {"output": "xml"},
        {"tight_tol": 0.0},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_run_config_unknown_key():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"speed": 3})


def test_run_config_from_env(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"rank_tol": 1e-5, "max_iters": 50}))
    monkeypatch.setenv(CONFIG_ENV, str(path))
    cfg = RunConfig.from_env({"max_iters": 80, "solve_tol": None})
    assert cfg.rank_tol == 1e-5 and cfg.max_iters == 80 and cfg.solve_tol == 1e-9


def test_run_config_env_must_be_object(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text("[1, 2]")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    with pytest.raises(ValueError):
        RunConfig.from_env()


def test_float_format():
    text = dumps_canonical({"x": 0.1, "y": 2.5, "z": -0.0, "k": 3})
    assert '"x": 1.000000000000e-01' in text
    assert '"y": 2.500000000000e+00' in text
    assert '"z": 0.000000000000e+00' in text
    assert '"k": 3' in text


def test_non_finite_floats():
    obj = json.loads(dumps_canonical({"a": math.nan, "b": math.inf, "c": -math.inf}))
    assert obj == {"a": "NaN", "b": "Infinity", "c": "-Infinity"}


def test_keys_sorted_and_numpy_converted():
    obj = {"b": np.float64(1.0), "a": np.array([1, 2]), "c": (np.int64(3), True), "d": {2, 1}}
    text = dumps_canonical(obj)
    assert text.index('"a"') < text.index('"b"') < text.index('"c"') < text.index('"d"')
    assert json.loads(text) == {"a": [1, 2], "b": 1.0, "c": [3, True], "d": [1, 2]}


def test_unserializable_rejected():
    with pytest.raises(TypeError):
        dumps_canonical({"x": object()})


def test_round_trip_precision():
    x = 2.0 ** 0.5
    back = json.loads(dumps_canonical([x]))[0]
    assert abs(back - x) <= 1e-12 * x


def test_aggregate_status():
    assert aggregate_status([]) == "OK"
    assert aggregate_status(["OK", "INCONCLUSIVE"]) == "INCONCLUSIVE"
    assert aggregate_status(["INCONCLUSIVE", "FAILED", "OK"]) == "FAILED"


def test_certificate_status_validated():
    with pytest.raises(ValueError):
        Certificate("chi", [], {}, {}, "MAYBE", "0")


def test_certificate_serialization_is_stable():
    c = Certificate("chi", [{"name": "g"}], RunConfig().as_dict(), {"t": 2.5}, "OK", "0.1.0")
    assert c.to_json() == c.to_json()
    obj = json.loads(c.to_json())
    assert set(obj) == {"command", "inputs", "config", "results", "status", "version", "errors"}
    assert not c.failed


def test_graph_digest_is_format_independent():
    a = gr.Graph(3, [(1, 2), (0, 1)])
    b = gr.Graph(3, [(0, 1), (2, 1)])
    assert graph_digest(a) == graph_digest(b)
    assert graph_digest(a) != graph_digest(gr.complete(3))
