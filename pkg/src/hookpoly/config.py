"""Numeric policy shared by every command."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

CONFIG_ENV = "HOOKPOLY_CONFIG"


@dataclass(frozen=True)
class JobConfig:
    precision_bits: int = 128
    default_tol: float = 1e-30
    enumeration_cap: int = 40
    series_trunc: int = 5000
    w0: float = 0.05
    eps: float = 0.5
    output_dir: str = "."

    def __post_init__(self):
        if int(self.precision_bits) != self.precision_bits or self.precision_bits < 64:
            raise ValueError("precision_bits must be an integer >= 64")
        for name in ("default_tol", "w0", "eps"):
            if not float(getattr(self, name)) > 0:
                raise ValueError("%s must be positive" % name)
        if self.enumeration_cap < 0 or self.series_trunc < 1:
            raise ValueError("enumeration_cap must be >= 0 and series_trunc >= 1")

    def updated(self, **kw) -> "JobConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


def _from_mapping(base: JobConfig, data: dict, source: str) -> JobConfig:
    if not isinstance(data, dict):
        raise ValueError("%s: config must be a JSON object" % source)
    known = {f.name: f.type for f in fields(JobConfig)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ValueError("%s: unknown config keys %s" % (source, ", ".join(unknown)))
    return replace(base, **data)


def load_config(path: str | None = None, env: dict | None = None) -> JobConfig:
    """Defaults, then the file named by ``$HOOKPOLY_CONFIG``, then ``path``."""
    env = os.environ if env is None else env
    cfg = JobConfig()
    for p in (env.get(CONFIG_ENV) or None, path):
        if p:
            with open(p) as fh:
                cfg = _from_mapping(cfg, json.load(fh), p)
    return cfg
