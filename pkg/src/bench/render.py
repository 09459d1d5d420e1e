"""
Render benchmark tables as CSV, JSON or markdown.
"""

import json
from typing import Any, Protocol

import pandas as pd

from ..config import TIME_DISPLAY_FLOOR
from ..errors import ValidationError
from .efficiency import PARAMETERS

RENDER_FORMATS = ("csv", "json", "markdown")


class Renderable(Protocol):
    def to_frame(self) -> pd.DataFrame: ...

    def to_dict(self) -> dict: ...


def render(report: Renderable, fmt: str = "markdown") -> str:
    """
    Render a capacity table, capacity comparison or efficiency report.

    Human formats fix every float to two decimals with a '.' separator
    and no thousands grouping, and show measured times below
    TIME_DISPLAY_FLOOR as the floor. JSON keeps full precision.

    Raises:
        ValidationError: unknown format
    """
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        return display_frame(report).to_csv(index=False, float_format="%.2f", lineterminator="\n")
    if fmt == "markdown":
        return display_frame(report).to_markdown(index=False, floatfmt=".2f") + "\n"
    raise ValidationError(f"unknown format {fmt!r}; expected one of {RENDER_FORMATS}")


def format_pct(value: Any) -> str:
    """A percentage for prose, or "n/a" when undefined."""
    return "n/a" if value is None else f"{value:.2f}%"


def display_frame(report: Renderable) -> pd.DataFrame:
    """The report's frame with measured times raised to TIME_DISPLAY_FLOOR."""
    frame = report.to_frame()
    if not {"parameter", "side"} <= set(frame.columns):
        return frame
    timed = (frame["parameter"] == PARAMETERS["wall_time"][1]) & frame["side"].isin(["oltp", "warehouse"])
    for column in frame.columns.drop(["parameter", "side"]):
        frame[column] = frame[column].astype(float)
        frame.loc[timed, column] = frame.loc[timed, column].clip(lower=TIME_DISPLAY_FLOOR)
    return frame
