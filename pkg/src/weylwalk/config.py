"""Run configuration shared by the command-line subcommands."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

COMMANDS = ("dispersion", "orbit", "evolve", "verify")
GENERATORS = ("so3", "rotation", "boost")
ORBIT_PRESETS = (0.07, 0.2, 0.4)


@dataclass
class RunConfig:
    """Everything needed to reproduce one run.

    ``k0`` is the orbit base point and also the packet centre for ``evolve``.
    ``grid`` is the number of points per axis of the dispersion sweep and
    ``size`` the side N of the periodic lattice used by ``evolve``.
    ``samples`` is the orbit sample count, and the base sample count of
    the checks run by ``verify``.
    """

    command: str = "verify"
    walk: str = "A+"
    grid: int = 21
    k0: tuple[float, float, float] = (0.07, 0.0, 0.0)
    samples: int = 200
    generator: str = "so3"
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    region: str | None = None
    branch: int = 1
    size: int = 32
    steps: int = 50
    sigma: float = 0.05
    out: str | None = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        self.k0 = tuple(float(v) for v in self.k0)
        self.axis = tuple(float(v) for v in self.axis)
        if len(self.k0) != 3 or len(self.axis) != 3:
            raise ValueError("k0 and axis need three components")
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {', '.join(GENERATORS)}")
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["k0"] = list(self.k0)
        d["axis"] = list(self.axis)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        return cls.from_dict(json.loads(text))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path: str) -> RunConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())
