"""JSON config files for the command-line harness.

Schema (all blocks except "geometry", "kappa" and "data" are optional):

    {
      "geometry": {"R": 1.0, "center": [0.0, 0.0], "eps": 0.05},
      "kappa": 1.0,
      "data": {
        "f_outer":     [0.0],            # [mean, c1, s1, c2, s2, ...]
        "f_inclusion": [0.0, 1.0, 0.0],
        "g_outer":     [0.0],            # optional, defaults to zero
        "g_inclusion": [0.0]             # optional, defaults to zero
      },
      "sweep":  {"eps": [0.16, 0.08], "kappa": [1.0]},   # defaults to the
                                                         # geometry/kappa pair
      "solver": {"order": 32, "green_order": 64, "collocation": null,
                 "tolerance": null, "seed": 0, "workers": 1}
    }

Fourier coefficient arrays are flat [mean, c1, s1, c2, s2, ...] lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .analysis import SweepConfig
from .boundary_data import FourierData, RobinData

__all__ = ["AppConfig", "dump_config", "load_config"]


@dataclass(frozen=True)
class AppConfig:
    R: float
    center: tuple[float, float]
    eps: float
    kappa: float
    data: RobinData
    eps_list: tuple[float, ...]
    kappa_list: tuple[float, ...]
    order: int = 32
    green_order: int = 64
    n_collocation: int | None = None
    tolerance: float | None = None
    seed: int = 0
    workers: int = 1

    def sweep_config(self) -> SweepConfig:
        return SweepConfig(
            R=self.R,
            center=self.center,
            eps_list=self.eps_list,
            kappa_list=self.kappa_list,
            data=self.data,
            order=self.order,
            green_order=self.green_order,
            n_collocation=self.n_collocation,
            tolerance=self.tolerance,
            seed=self.seed,
            workers=self.workers,
        )

    def single_config(self) -> SweepConfig:
        """A one-row sweep at the geometry block's (eps, kappa)."""
        return SweepConfig(
            R=self.R,
            center=self.center,
            eps_list=(self.eps,),
            kappa_list=(self.kappa,),
            data=self.data,
            order=self.order,
            green_order=self.green_order,
            n_collocation=self.n_collocation,
            tolerance=self.tolerance,
            seed=self.seed,
            workers=1,
        )

    def to_dict(self) -> dict:
        return {
            "geometry": {
                "R": self.R,
                "center": list(self.center),
                "eps": self.eps,
            },
            "kappa": self.kappa,
            "data": {
                "f_outer": self.data.f_outer.to_list(),
                "f_inclusion": self.data.f_inclusion.to_list(),
                "g_outer": self.data.g_outer.to_list(),
                "g_inclusion": self.data.g_inclusion.to_list(),
            },
            "sweep": {"eps": list(self.eps_list), "kappa": list(self.kappa_list)},
            "solver": {
                "order": self.order,
                "green_order": self.green_order,
                "collocation": self.n_collocation,
                "tolerance": self.tolerance,
                "seed": self.seed,
                "workers": self.workers,
            },
        }


def dump_config(app: AppConfig, path) -> None:
    """Write a config back out in the documented schema."""
    with open(path, "w") as fh:
        json.dump(app.to_dict(), fh, indent=2)
        fh.write("\n")


def _fourier(block: dict, key: str, required: bool) -> FourierData:
    if key not in block:
        if required:
            raise ValueError(f"config data block is missing '{key}'")
        return FourierData(0.0)
    return FourierData.from_list(block[key])


def load_config(path) -> AppConfig:
    """Parse and validate a JSON config file."""
    with open(path) as fh:
        raw = json.load(fh)
    try:
        geo = raw["geometry"]
        R = float(geo["R"])
        center = (float(geo["center"][0]), float(geo["center"][1]))
        eps = float(geo["eps"])
        kappa = float(raw["kappa"])
        data_block = raw["data"]
    except KeyError as exc:
        raise ValueError(f"config is missing required key: {exc}") from exc
    data = RobinData(
        f_outer=_fourier(data_block, "f_outer", required=True),
        f_inclusion=_fourier(data_block, "f_inclusion", required=True),
        g_outer=_fourier(data_block, "g_outer", required=False),
        g_inclusion=_fourier(data_block, "g_inclusion", required=False),
    )
    sweep = raw.get("sweep", {})
    eps_list = tuple(float(e) for e in sweep.get("eps", [eps]))
    kappa_list = tuple(float(k) for k in sweep.get("kappa", [kappa]))
    solver = raw.get("solver", {})
    coll = solver.get("collocation")
    tol = solver.get("tolerance")
    return AppConfig(
        R=R,
        center=center,
        eps=eps,
        kappa=kappa,
        data=data,
        eps_list=eps_list,
        kappa_list=kappa_list,
        order=int(solver.get("order", 32)),
        green_order=int(solver.get("green_order", 64)),
        n_collocation=None if coll is None else int(coll),
        tolerance=None if tol is None else float(tol),
        seed=int(solver.get("seed", 0)),
        workers=int(solver.get("workers", 1)),
    )
