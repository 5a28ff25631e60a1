"""Client SDK and plotting tools for the paintgrid episode bridge."""

from paintgrid_client.client import (
    OBS_LEN,
    RESET,
    SWAP_RESET,
    BridgeClient,
    ProtocolError,
    StepReply,
    encode_request,
)
from paintgrid_client.norm import normalize_observation
from paintgrid_client.plots import (
    MetricsFormatError,
    PlotReport,
    load_series,
    plot_metrics,
)

__version__ = "0.1.0"

__all__ = [
    "OBS_LEN",
    "RESET",
    "SWAP_RESET",
    "BridgeClient",
    "ProtocolError",
    "StepReply",
    "encode_request",
    "normalize_observation",
    "MetricsFormatError",
    "PlotReport",
    "load_series",
    "plot_metrics",
    "__version__",
]
