"""Run configuration and deterministic JSON certificates."""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .graphs import Graph
from .tolerances import Tolerances

__all__ = [
    "CONFIG_ENV",
    "STATUSES",
    "Certificate",
    "RunConfig",
    "aggregate_status",
    "dumps_canonical",
    "graph_digest",
]

CONFIG_ENV = "VC_LAB_CONFIG"
STATUSES = ("OK", "INCONCLUSIVE", "FAILED")
FLOAT_FORMAT = "%.12e"


@dataclass(frozen=True)
class RunConfig:
    """User-facing run options.

    Attributes
    ----------
    solve_tol : float
    rank_tol : float
    tight_tol : float
    max_iters : int
    output : str
        ``"json"`` or ``"text"``.
    parallel : bool
    """

    solve_tol: float = 1e-9
    rank_tol: float = 1e-6
    tight_tol: float = 1e-6
    max_iters: int = 200
    output: str = "json"
    parallel: bool = False

    def __post_init__(self):
        if not (0.0 < self.solve_tol < self.rank_tol < 1.0):
            raise ValueError("need 0 < solve_tol < rank_tol < 1")
        if not (0.0 < self.tight_tol < 1.0):
            raise ValueError("tight_tol must lie in (0, 1)")
        if int(self.max_iters) != self.max_iters or self.max_iters < 10:
            raise ValueError("max_iters must be an integer >= 10")
        if self.output not in ("json", "text"):
            raise ValueError("output must be 'json' or 'text'")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_env(cls, overrides: dict | None = None) -> "RunConfig":
        """Defaults, then the JSON file named by ``VC_LAB_CONFIG``, then ``overrides``."""
        data: dict = {}
        path = os.environ.get(CONFIG_ENV)
        if path:
            with open(path) as fh:
                loaded = json.load(fh)
            if not isinstance(loaded, dict):
                raise ValueError(f"{CONFIG_ENV} must name a JSON object")
            data.update(loaded)
        data.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_dict(data)

    def tolerances(self) -> Tolerances:
        return Tolerances(
            solve=self.solve_tol,
            rank=self.rank_tol,
            tight=self.tight_tol,
            max_iters=int(self.max_iters),
        )

    def as_dict(self) -> dict:
        return asdict(self)


def graph_digest(G: Graph) -> str:
    """SHA-256 of the canonical JSON form of ``G`` (independent of file format)."""
    payload = json.dumps({"n": G.n, "edges": [list(e) for e in G.edge_list]}, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def _plain(obj):
    """Convert numpy scalars/arrays, tuples and sets to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [_plain(v) for v in sorted(obj)]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _format_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return FLOAT_FORMAT % x


def _emit(obj, indent: int, level: int, out: list) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = sorted(obj.items())
        for n, (k, v) in enumerate(items):
            out.append(pad + json.dumps(k) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n + 1 < len(items) else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            parts: list = []
            for v in obj:
                _emit(v, indent, level + 1, parts)
                parts.append(", ")
            out.append("[" + "".join(parts[:-1]) + "]")
            return
        out.append("[\n")
        for n, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n + 1 < len(obj) else "\n")
        out.append(end + "]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj, indent: int = 2) -> str:
    """Serialize with sorted keys and every float written as ``%.12e``."""
    out: list = []
    _emit(_plain(obj), indent, 0, out)
    return "".join(out) + "\n"


def aggregate_status(statuses) -> str:
    """``FAILED`` if any entry failed, else ``INCONCLUSIVE`` if any was, else ``OK``."""
    statuses = list(statuses)
    for s in ("FAILED", "INCONCLUSIVE"):
        if s in statuses:
            return s
    return "OK"


@dataclass
class Certificate:
    """Machine-checkable record of one command run.

    Attributes
    ----------
    command : str
    inputs : list of dict
        ``{"name", "sha256", "n", "m"}`` per input graph (or error text).
    config : dict
    results : dict
    status : str
        ``"OK"``, ``"FAILED"`` or ``"INCONCLUSIVE"``.
    version : str
    """

    command: str
    inputs: list
    config: dict
    results: dict
    status: str
    version: str
    errors: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "config": self.config,
            "results": self.results,
            "status": self.status,
            "version": self.version,
            "errors": self.errors,
        }

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())

    @property
    def failed(self) -> bool:
        return self.status == "FAILED"
