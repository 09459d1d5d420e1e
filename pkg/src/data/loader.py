"""
Cached benchmark runs for the dashboard.
"""

from typing import Dict, List

import pandas as pd
import streamlit as st

from ..bench.harness import BenchmarkRun, run_benchmark
from ..campus.generator import GenConfig
from ..config import DEFAULT_INLINE_THRESHOLD, DEFAULT_REPEATS, SCALE_PRESETS
from ..reports.runner import result_frame


def scale_labels() -> Dict[str, str]:
    """Preset name → label shown in the scale picker."""
    return {name: f"{name} - {preset['description']}" for name, preset in SCALE_PRESETS.items()}


@st.cache_data(show_spinner=False)
def load_benchmark(
    scale: str,
    seed: int,
    repeats: int = DEFAULT_REPEATS,
    inline_threshold: int = DEFAULT_INLINE_THRESHOLD,
) -> BenchmarkRun:
    """
    Run the full benchmark once per (scale, seed, repeats, threshold).

    Returns:
        BenchmarkRun with both databases, results and equivalence verdicts
    """
    return run_benchmark(GenConfig.preset(scale, seed=seed), repeats, inline_threshold)


def report_frames(run: BenchmarkRun, report_id: int) -> List[pd.DataFrame]:
    """Rows of one report as [oltp frame, warehouse frame]."""
    return [result_frame(result) for result in run.results[report_id]]
