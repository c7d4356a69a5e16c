"""Numerical tolerances shared by the analysis modules."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .sdp import SolverConfig


@dataclass(frozen=True)
class Tolerances:
    """Two-tier tolerance scheme.

    Attributes
    ----------
    solve : float
        Interior-point gap and residual target.
    rank : float
        Relative eigenvalue threshold for numerical rank decisions.
    tight : float
        Absolute threshold on ``M_ij + 1`` for calling an edge tight.
    support : float
        Entries of a dual matrix above this value count as nonzero.
    cluster : float
        Eigenvalue grouping radius when forming spectral projectors.
    max_iters : int
        Interior-point iteration cap.
    """

    solve: float = 1e-9
    rank: float = 1e-6
    tight: float = 1e-6
    support: float = 1e-8
    cluster: float = 1e-7
    max_iters: int = 200

    def __post_init__(self):
        if not (0.0 < self.solve < self.rank < 1.0):
            raise ValueError("need 0 < solve < rank < 1")
        if self.max_iters < 10:
            raise ValueError("max_iters must be at least 10")
        for name in ("tight", "support", "cluster"):
            if not (0.0 < getattr(self, name) < 1.0):
                raise ValueError(f"{name} tolerance must lie in (0, 1)")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(tol=self.solve, max_iters=self.max_iters)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Tolerances()
