"""Scenario configuration shared by the experiment harness and the CLI."""

import json
from dataclasses import asdict, dataclass, fields

from .calibration import DEFAULT_SEED
from .datagen import COV_FORMS, parse_family
from .statistic import KERNELS

ESTIMATOR_CHOICES = ("plain", "taper", "hotelling")


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation cell: model, design sizes, test choice, and seeds.

    `deltas` is the location-shift grid; a singleton (0.0,) describes a size
    experiment. `draws` is the Monte-Carlo reference size M per test and
    `replications` the number R of independent data replications.
    """

    scenario_id: str
    family: str
    cov_form: str
    p: int
    n1: int
    n2: int
    deltas: tuple = (0.0,)
    kernel: str = "sign"
    estimator: str = "plain"
    beta: float = 0.25
    alpha: float = 0.05
    draws: int = 1000
    replications: int = 500
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.scenario_id:
            raise ValueError("scenario_id must be nonempty")
        parse_family(self.family)
        if self.cov_form not in COV_FORMS:
            raise ValueError(f"unknown covariance form {self.cov_form!r}; expected one of {COV_FORMS}")
        if min(self.p, self.n1, self.n2) < 1:
            raise ValueError("p, n1, and n2 must be at least 1")
        grid = tuple(float(d) for d in self.deltas)
        if not grid:
            raise ValueError("deltas must be a nonempty grid")
        if any(d < 0 for d in grid):
            raise ValueError("deltas must be nonnegative")
        object.__setattr__(self, "deltas", grid)
        if self.kernel not in KERNELS:
            raise ValueError(f"unknown kernel {self.kernel!r}; expected one of {KERNELS}")
        if self.estimator not in ESTIMATOR_CHOICES:
            raise ValueError(
                f"unknown estimator {self.estimator!r}; expected one of {ESTIMATOR_CHOICES}"
            )
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        if self.draws < 1:
            raise ValueError("draws must be at least 1")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        object.__setattr__(self, "seed", int(self.seed))


def config_to_dict(config):
    d = asdict(config)
    d["deltas"] = list(config.deltas)
    return d


def config_from_dict(payload):
    names = {f.name for f in fields(ScenarioConfig)}
    unknown = sorted(set(payload) - names)
    if unknown:
        raise ValueError(f"unknown config keys: {unknown}")
    try:
        return ScenarioConfig(**payload)
    except TypeError as err:
        raise ValueError(f"incomplete config: {err}") from err


def load_configs(path):
    """Read one scenario object or a list of them from a JSON file."""
    with open(path) as fh:
        payload = json.load(fh)
    items = payload if isinstance(payload, list) else [payload]
    return [config_from_dict(item) for item in items]
