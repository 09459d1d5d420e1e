# Cached pipeline runs for the dashboard
from .loader import load_benchmark, report_frames, scale_labels

__all__ = ["load_benchmark", "report_frames", "scale_labels"]
