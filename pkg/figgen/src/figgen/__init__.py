"""figgen: four-panel figures from attctl simulation CSV logs."""

from .figure import (
    EXPECTED_HEADER,
    PANELS,
    EmptyInput,
    FigureSpec,
    HeaderMismatch,
    RunData,
    load_run,
    render,
)

__version__ = "0.1.0"
