"""
Campus Warehouse Bench - Main Application Entry Point

Generate a campus database, derive its star schema from five management
reports, load it and compare what each report costs on both sides.
"""

import streamlit as st

from src.bench.render import format_pct
from src.config import APP_ICON, APP_TITLE, DEFAULT_INLINE_THRESHOLD, DEFAULT_REPEATS
from src.data.loader import load_benchmark, report_frames, scale_labels
from src.errors import ValidationError
from src.reports.definitions import REPORTS
from src.ui.components import (
    render_footer,
    render_header,
    render_nav_bar,
    render_section_card,
    render_stats_box,
    render_verdict,
)
from src.ui.styles import inject_styles


# Page configuration
st.set_page_config(
    page_title=APP_TITLE,
    page_icon=APP_ICON,
    layout="wide",
    initial_sidebar_state="collapsed",
)


def render_settings() -> tuple:
    """Scale, seed, repeats and threshold pickers. Returns the chosen values."""
    labels = scale_labels()
    col1, col2, col3, col4 = st.columns([3, 1, 1, 1])
    with col1:
        label = st.radio("Scale:", options=list(labels.values()), horizontal=True)
        scale = next(name for name, text in labels.items() if text == label)
    with col2:
        seed = st.number_input("Seed", min_value=0, value=42, step=1)
    with col3:
        repeats = st.number_input("Repeats", min_value=1, max_value=9, value=DEFAULT_REPEATS, step=1)
    with col4:
        threshold = st.number_input("Inline ≤", min_value=0, value=DEFAULT_INLINE_THRESHOLD, step=1)
    return scale, int(seed), int(repeats), int(threshold)


def render_capacity(run) -> None:
    render_section_card("📦 Table sizes", "Record length × record count per table, with totals.")
    col1, col2 = st.columns(2)
    with col1:
        st.markdown("**Operational database**")
        st.dataframe(run.oltp_capacity.to_frame(), hide_index=True, use_container_width=True)
    with col2:
        st.markdown("**Warehouse**")
        st.dataframe(run.warehouse_capacity.to_frame(), hide_index=True, use_container_width=True)
    st.markdown("**Comparison**")
    st.dataframe(run.capacity.to_frame(), hide_index=True, use_container_width=True)


def render_efficiency(run) -> None:
    render_section_card(
        "⚡ Per-report efficiency",
        "(operational − warehouse) / warehouse × 100 for each of the six parameters.",
    )
    st.dataframe(run.efficiency.to_frame(), hide_index=True, use_container_width=True)
    st.info(f"Mean over all defined cells: {format_pct(run.efficiency.mean_efficiency)}")
    for verdict in run.verdicts.values():
        render_verdict(verdict)


def render_warehouse(run) -> None:
    render_section_card("⭐ Derived warehouse", "Fact and dimension tables after dimension elimination.")
    st.markdown(run.schema.describe())


def render_reports(run) -> None:
    options = {f"{i}. {REPORTS[i].title}": i for i in sorted(REPORTS)}
    choice = st.selectbox("Report:", options=list(options))
    report_id = options[choice]
    oltp_frame, warehouse_frame = report_frames(run, report_id)
    col1, col2 = st.columns(2)
    with col1:
        st.markdown(f"**Operational** ({len(oltp_frame)} rows)")
        st.dataframe(oltp_frame, hide_index=True, use_container_width=True)
    with col2:
        st.markdown(f"**Warehouse** ({len(warehouse_frame)} rows)")
        st.dataframe(warehouse_frame, hide_index=True, use_container_width=True)
    render_verdict(run.verdicts[report_id])


SECTION_RENDERERS = {
    "capacity": render_capacity,
    "efficiency": render_efficiency,
    "warehouse": render_warehouse,
    "reports": render_reports,
}


def main():
    """Main application entry point."""

    inject_styles()

    scale, seed, repeats, threshold = render_settings()

    try:
        with st.spinner("🔄 Generating, loading and running reports..."):
            run = load_benchmark(scale, seed, repeats, threshold)
    except ValidationError as exc:
        render_header()
        st.error(f"Could not run the benchmark: {exc}")
        render_footer()
        return

    render_header(run)
    render_stats_box(run)

    section = render_nav_bar()
    SECTION_RENDERERS[section](run)

    render_footer()


if __name__ == "__main__":
    main()
