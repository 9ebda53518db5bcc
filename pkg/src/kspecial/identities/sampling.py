"""Seeded draws of parameters and points for identity sweeps.

Parameters are log-uniform on [0.1, 5]; ordering constraints such as
gamma > beta are met by adding a log-uniform gap.  Points are drawn as the
scaled coordinates X = kx, Y = ky, T = kt uniform on [-1/2, 1/2] and kept
only when every function argument on both sides lies within half of its
convergence radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

PARAM_LO, PARAM_HI = 0.1, 5.0
# k ranges: closed-form core identities tolerate a wider spread than series
CORE_K = (0.25, 4.0)
SERIES_K = (0.5, 2.0)
MARGIN = 0.5
MAX_TRIES = 20000


class SamplingError(RuntimeError):
    """Rejection sampling found no admissible point."""


def log_uniform(rng: np.random.Generator, lo: float = PARAM_LO, hi: float = PARAM_HI) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def scaled_coords(rng: np.random.Generator, k: float, names: str = "xyt",
                  half_width: float = MARGIN) -> dict[str, float]:
    """Coordinates with k * coordinate uniform on [-half_width, half_width]."""
    return {n: float(rng.uniform(-half_width, half_width)) / k for n in names}


def reject(rng: np.random.Generator, draw: Callable[[np.random.Generator], dict],
           accept: Callable[[dict], bool]) -> dict:
    for _ in range(MAX_TRIES):
        pt = draw(rng)
        if accept(pt):
            return pt
    raise SamplingError("no admissible point after %d draws" % MAX_TRIES)


@dataclass(frozen=True)
class Sampler:
    """Draws (params, point) for one identity.

    ``params`` maps (rng, k) to the parameter dict without k; ``point`` maps
    (rng, params) to the point dict; ``accept`` filters points given
    (params, point).  ``k_range`` is the log-uniform range of the scale.
    """

    params: Callable[[np.random.Generator, float], dict]
    point: Callable[[np.random.Generator, dict], dict]
    accept: Callable[[dict, dict], bool] = lambda p, pt: True
    k_range: tuple[float, float] = SERIES_K

    def __call__(self, rng: np.random.Generator, k: float | None = None) -> tuple[dict, dict]:
        if k is None:
            k = log_uniform(rng, *self.k_range)
        p = dict(self.params(rng, k))
        p["k"] = float(k)
        pt = reject(rng, lambda r: self.point(r, p), lambda q: self.accept(p, q))
        return p, pt


def no_point(rng, p) -> dict:
    return {}
