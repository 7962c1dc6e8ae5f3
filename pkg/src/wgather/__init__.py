"""Round-based wireless gathering: simulator, schedulers, bounds, exact solver."""

from .model import (
    Call,
    FormatError,
    GatheringError,
    HorizonError,
    Instance,
    Network,
    Packet,
    Schedule,
    ScheduleError,
    ScheduleMetrics,
    all_pairs_distances,
    compatible,
    interferes,
    validate_schedule,
)

__all__ = [
    "Call",
    "FormatError",
    "GatheringError",
    "HorizonError",
    "Instance",
    "Network",
    "Packet",
    "Schedule",
    "ScheduleError",
    "ScheduleMetrics",
    "all_pairs_distances",
    "compatible",
    "interferes",
    "validate_schedule",
]
