"""
Reusable UI components for the warehouse benchmark dashboard.
"""

import streamlit as st

from ..bench.harness import BenchmarkRun
from ..bench.render import format_pct
from ..config import APP_TAGLINE, APP_TITLE, DEFAULT_THEME, THEMES
from ..reports.runner import EquivalenceVerdict
from .styles import toggle_theme

SECTIONS = {
    "capacity": "📦 Capacity",
    "efficiency": "⚡ Efficiency",
    "warehouse": "⭐ Star schema",
    "reports": "📋 Reports",
}


def get_current_theme_name() -> str:
    """Get the current theme name from session state."""
    if "theme" not in st.session_state:
        st.session_state.theme = DEFAULT_THEME
    return st.session_state.theme


def render_theme_toggle() -> None:
    """Render a theme toggle button."""
    current = get_current_theme_name()
    next_theme = "light" if current == "dark" else "dark"
    if st.button(THEMES[next_theme]["icon"], key="theme_toggle", help=f"Switch to {next_theme} mode"):
        toggle_theme()
        st.rerun()


def render_header(run: BenchmarkRun | None = None) -> None:
    """Render the hero header, with headline numbers once a run exists."""
    stats_html = ""
    if run is not None:
        capacity = run.capacity
        stats = [
            (f"{run.oltp.total_records:,}", "OLTP records"),
            (f"{run.warehouse.total_records:,}", "Warehouse records"),
            (format_pct(capacity.efficiency("total_bytes")), "Byte efficiency"),
        ]
        cells = "".join(
            f'<div class="hero-stat"><div class="hero-stat-value">{value}</div>'
            f'<div class="hero-stat-label">{label}</div></div>'
            for value, label in stats
        )
        stats_html = f'<div class="hero-stats">{cells}</div>'

    st.markdown(
        f"""
        <div class="hero-header">
            <h1>{APP_TITLE}</h1>
            <p>{APP_TAGLINE}</p>
            {stats_html}
        </div>
        """,
        unsafe_allow_html=True,
    )


def render_nav_bar() -> str:
    """Render the section selector and theme toggle. Returns the selected section key."""
    _, toggle = st.columns([6, 1])
    with toggle:
        render_theme_toggle()

    if "section" not in st.session_state:
        st.session_state.section = "capacity"

    for column, (key, label) in zip(st.columns(len(SECTIONS)), SECTIONS.items()):
        with column:
            kind = "primary" if st.session_state.section == key else "secondary"
            if st.button(label, key=f"nav_{key}", use_container_width=True, type=kind):
                st.session_state.section = key
                st.rerun()

    return st.session_state.section


def render_section_card(title: str, description: str) -> None:
    st.markdown(
        f'<div class="section-card"><h3>{title}</h3><p>{description}</p></div>',
        unsafe_allow_html=True,
    )


def render_stats_box(run: BenchmarkRun) -> None:
    """Render the one-line summary of a benchmark run."""
    mean = run.efficiency.mean_efficiency
    st.markdown(
        f"""
        <div class="stats-box">
            🎲 seed <strong>{run.config.seed}</strong> •
            <strong>{len(run.schema.tables)}</strong> warehouse tables •
            mean efficiency <strong>{format_pct(mean)}</strong>
        </div>
        """,
        unsafe_allow_html=True,
    )


def render_verdict(verdict: EquivalenceVerdict) -> None:
    if verdict.equivalent:
        text = f"✅ Report {verdict.report_id}: both backends agree"
        css = "verdict-ok"
    else:
        text = (
            f"❌ Report {verdict.report_id}: {len(verdict.only_oltp)} rows only in OLTP, "
            f"{len(verdict.only_warehouse)} only in the warehouse"
        )
        css = "verdict-bad"
    st.markdown(f'<div class="{css}">{text}</div>', unsafe_allow_html=True)


def render_footer() -> None:
    """Render the application footer."""
    st.markdown(
        """
        <div class="footer">
            Built with Streamlit and pandas<br>
            <small>Operational tables against a derived star schema, measured byte for byte</small>
        </div>
        """,
        unsafe_allow_html=True,
    )
