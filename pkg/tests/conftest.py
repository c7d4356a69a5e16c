from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from vclab import graphs as gr

settings.register_profile(
    "vclab", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("vclab")

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def graph_dir() -> Path:
    return DATA / "graphs"


def named_fixtures() -> dict:
    """Small graphs with known vector chromatic numbers."""
    return {
        "K2": gr.complete(2),
        "K3": gr.complete(3),
        "K4": gr.complete(4),
        "K5": gr.complete(5),
        "C4": gr.cycle(4),
        "C5": gr.cycle(5),
        "C6": gr.cycle(6),
        "C7": gr.cycle(7),
        "Petersen": gr.petersen(),
        "Q3": gr.hypercube(3),
        "K33": gr.complete_bipartite(3, 3),
        "K3+pendant": gr.k3_pendant(),
    }
