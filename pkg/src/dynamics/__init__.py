"""Flow updates, relocation and growth/trim of the system graph."""

from .flows import (
    bootstrap_flows,
    eligible_assets_corrected,
    split_eligible,
    split_shares,
    update_bottom_up_flows,
    update_top_down_flows,
)
from .relocation import PressureReading, RelocationSummary, pressure, relocate
from .morphology import morphology_pass, try_grow, try_trim

__all__ = [
    "bootstrap_flows",
    "eligible_assets_corrected",
    "split_eligible",
    "split_shares",
    "update_bottom_up_flows",
    "update_top_down_flows",
    "PressureReading",
    "RelocationSummary",
    "pressure",
    "relocate",
    "morphology_pass",
    "try_grow",
    "try_trim",
]
