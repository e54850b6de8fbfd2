import os
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logging.getLogger(__name__).warning("Ignoring non-numeric %s=%r", name, raw)
        return default


def _env_int(name: str, default: int) -> int:
    return int(_env_float(name, default))


@dataclass(frozen=True)
class Settings:
    """Numerical defaults shared by every engine"""

    guard_radius: float = 1e-9
    circle_nodes: int = 256
    edge_nodes: int = 32
    area_resolution: int = 256
    probe_nodes: int = 64
    max_skip_fraction: float = 1e-3
    jet_tolerance: float = 1e-10
    quadrature_tolerance: float = 1e-8
    green_tolerance: float = 1e-7
    pompeiu_tolerance: float = 1e-3
    estimate_tolerance: float = 1e-9
    log_level: str = "WARNING"

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with the non-None overrides applied"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build settings from WORKBENCH_* environment variables"""
    defaults = Settings()
    return Settings(
        guard_radius=_env_float("WORKBENCH_GUARD_RADIUS", defaults.guard_radius),
        circle_nodes=_env_int("WORKBENCH_CIRCLE_NODES", defaults.circle_nodes),
        edge_nodes=_env_int("WORKBENCH_EDGE_NODES", defaults.edge_nodes),
        area_resolution=_env_int("WORKBENCH_AREA_RESOLUTION", defaults.area_resolution),
        probe_nodes=_env_int("WORKBENCH_PROBE_NODES", defaults.probe_nodes),
        max_skip_fraction=_env_float("WORKBENCH_MAX_SKIP_FRACTION", defaults.max_skip_fraction),
        jet_tolerance=_env_float("WORKBENCH_JET_TOLERANCE", defaults.jet_tolerance),
        quadrature_tolerance=_env_float("WORKBENCH_QUADRATURE_TOLERANCE", defaults.quadrature_tolerance),
        green_tolerance=_env_float("WORKBENCH_GREEN_TOLERANCE", defaults.green_tolerance),
        pompeiu_tolerance=_env_float("WORKBENCH_POMPEIU_TOLERANCE", defaults.pompeiu_tolerance),
        estimate_tolerance=_env_float("WORKBENCH_ESTIMATE_TOLERANCE", defaults.estimate_tolerance),
        log_level=os.getenv("WORKBENCH_LOG_LEVEL", defaults.log_level).upper(),
    )
