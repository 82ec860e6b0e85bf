"""Figure builders: tension curves, structural panels, balance, loads,
tension-vs-pieces, and board+network diagrams.

Color semantics: cold palette for human games, warm for AI; light shades for
draws, dark for decisive.  Network link colors follow the board-diagram
scheme: attack orange/red, defense turquoise/blue, control light blue/light
green by originating color, vacant controlled squares as small brownish
nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.lines import Line2D
from matplotlib.patches import Circle

from .io import (
    parse_fen_placement,
    read_curves,
    read_loads,
    read_network,
    read_survival,
    read_tvp,
)

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "tvp", "network")

COLD_DARK, COLD_LIGHT = "#1f4e9c", "#7fa8e0"  # human decisive / draw
WARM_DARK, WARM_LIGHT = "#c03a1d", "#f0a27a"  # AI decisive / draw

SERIES_STYLE = {
    "human:decisive": (COLD_DARK, "human decisive"),
    "human:draw": (COLD_LIGHT, "human draw"),
    "ai:decisive": (WARM_DARK, "AI decisive"),
    "ai:draw": (WARM_LIGHT, "AI draw"),
}

CLASS_COLOR = {"human": COLD_DARK, "ai": WARM_DARK, "synthetic": "#e8821e"}

LINK_COLORS = {
    ("attack", "white"): "#ff8c00",
    ("attack", "black"): "#d62728",
    ("defense", "white"): "#17becf",
    ("defense", "black"): "#1f4e9c",
    ("control", "white"): "#9ecbf0",
    ("control", "black"): "#9fd89f",
}


@dataclass
class FigureSpec:
    figure: str  # one of FIGURE_IDS
    inputs: dict[str, str]  # role -> path (e.g. {"curves": "out/curves.csv"})
    out: str
    dpi: int = 150
    style: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.figure not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure!r} (choose from {FIGURE_IDS})")


def _save(fig, spec: FigureSpec) -> str:
    out = Path(spec.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    # empty metadata keeps the PNG deterministic for identical inputs
    fig.savefig(out, dpi=spec.dpi, metadata={})
    plt.close(fig)
    return str(out)


def _plot_group_curves(ax, curves, band: bool = True):
    for group, (color, label) in SERIES_STYLE.items():
        pts = curves.get(group)
        if not pts:
            continue
        xs = [p.ply for p in pts]
        ys = [p.mean for p in pts]
        ax.plot(xs, ys, color=color, label=label, linewidth=1.6)
        if band:
            lo = [p.mean - p.std / max(p.n, 1) ** 0.5 for p in pts]
            hi = [p.mean + p.std / max(p.n, 1) ** 0.5 for p in pts]
            ax.fill_between(xs, lo, hi, color=color, alpha=0.18, linewidth=0)


def render_fig2(spec: FigureSpec) -> str:
    curves = read_curves(spec.inputs["curves"], "tension")
    has_survival = "survival" in spec.inputs
    ncols = 2 if has_survival else 1
    fig, axes = plt.subplots(1, ncols, figsize=(6 * ncols, 4))
    ax = axes[0] if has_survival else axes
    _plot_group_curves(ax, curves)
    ax.set_xlabel("ply")
    ax.set_ylabel("tension")
    ax.set_title("average tension during games")
    ax.legend(fontsize=8)
    if has_survival:
        surv = read_survival(spec.inputs["survival"])
        ax2 = axes[1]
        for group, pts in sorted(surv.items()):
            color = SERIES_STYLE.get(group, ("#666666", group))[0]
            ax2.plot([p for p, _ in pts], [v for _, v in pts], color=color, label=group)
        ax2.set_xlabel("ply")
        ax2.set_ylabel("% of games still running")
        ax2.set_title("survival by outcome")
        ax2.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, spec)


def render_fig3(spec: FigureSpec) -> str:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    for ax, fieldname, label in (
        (ax1, "noise_coeff", "degree noise coefficient (std/mean)"),
        (ax2, "tension_per_piece", "tension per piece"),
    ):
        curves = read_curves(spec.inputs["curves"], fieldname)
        for cls, color in CLASS_COLOR.items():
            pts = curves.get(cls)
            if not pts:
                continue
            ax.plot([p.ply for p in pts], [p.mean for p in pts], color=color, label=cls)
        ax.set_xlabel("ply")
        ax.set_ylabel(label)
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, spec)


def render_fig4(spec: FigureSpec) -> str:
    curves = read_curves(spec.inputs["curves"], "adb_weighted")
    fig, ax = plt.subplots(figsize=(6.5, 4))
    _plot_group_curves(ax, curves, band=False)
    ax.axhline(0.0, color="#999999", linewidth=0.8, linestyle=":")
    ax.set_xlabel("ply")
    ax.set_ylabel("attack-defense balance (weighted)")
    ax.set_title("surplus of attack links over defense links")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, spec)


def render_fig5(spec: FigureSpec) -> str:
    loads = read_loads(spec.inputs["loads"])
    elo_rows = [r for r in loads if r["key_type"] == "elo"]
    depth_rows = [r for r in loads if r["key_type"] == "depth"]
    ncols = 2 if depth_rows and elo_rows else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.5 * ncols, 4))
    axes = [axes] if ncols == 1 else list(axes)

    ax = axes[0]
    primary = elo_rows if elo_rows else depth_rows
    xlabel = "Elo bin" if elo_rows else "search depth"
    for row in primary:
        color = CLASS_COLOR.get(row["class"], "#444444")
        ax.errorbar(
            float(row["key"]), row["mean"], yerr=row["std"] / max(row["n"], 1) ** 0.5,
            fmt="o", color=color, capsize=3,
        )
    ax.set_xlabel(xlabel)
    ax.set_ylabel("tension load (sum to ply 150)")
    ax.set_title("tension load by group")
    handles = [
        Line2D([], [], marker="o", linestyle="", color=c, label=lbl)
        for lbl, c in CLASS_COLOR.items()
        if any(r["class"] == lbl for r in primary)
    ]
    if handles:
        ax.legend(handles=handles, fontsize=8)

    if ncols == 2:
        ax2 = axes[1]
        for row in depth_rows:
            ax2.errorbar(
                float(row["key"]), row["mean"], yerr=row["std"] / max(row["n"], 1) ** 0.5,
                fmt="o", color=CLASS_COLOR["synthetic"], capsize=3,
            )
        ax2.set_xlabel("search depth")
        ax2.set_ylabel("tension load (sum to ply 150)")
        ax2.set_title("fixed-depth self-play")
    fig.tight_layout()
    return _save(fig, spec)


def render_tvp(spec: FigureSpec) -> str:
    rows = read_tvp(spec.inputs["tvp"])
    plies = sorted({r["ply"] for r in rows})
    fig, axes = plt.subplots(1, max(len(plies), 1), figsize=(4 * max(len(plies), 1), 3.6), squeeze=False)
    for ax, ply in zip(axes[0], plies):
        for cls, color in CLASS_COLOR.items():
            sub = sorted(
                (r for r in rows if r["ply"] == ply and r["class"] == cls),
                key=lambda r: r["n_pieces"],
            )
            if not sub:
                continue
            ax.errorbar(
                [r["n_pieces"] for r in sub],
                [r["mean"] for r in sub],
                yerr=[r["std"] for r in sub],
                fmt="o-", markersize=3, linewidth=1, capsize=2, color=color, label=cls,
            )
        ax.set_title(f"ply {ply}")
        ax.set_xlabel("pieces on board")
        ax.set_ylabel("tension")
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, spec)


def _square_xy(name: str) -> tuple[float, float]:
    return "abcdefgh".index(name[0]) + 0.5, int(name[1]) - 0.5


def render_network(spec: FigureSpec) -> str:
    payload = read_network(spec.inputs["network"])
    placement = parse_fen_placement(payload["fen"])
    fig, ax = plt.subplots(figsize=(6.4, 6.4))
    for f in range(8):
        for r in range(8):
            shade = "#f0d9b5" if (f + r) % 2 else "#b58863"
            ax.add_patch(plt.Rectangle((f, r), 1, 1, facecolor=shade, edgecolor="none"))

    controlled = {e["to"] for e in payload["edges"] if e["kind"] == "control"}
    controlled |= {e["from"] for e in payload["edges"] if e["kind"] == "control"}
    for e in payload["edges"]:
        src = e.get("source", e["from"])
        side = "white" if placement.get(src, "P").isupper() else "black"
        color = LINK_COLORS[(e["kind"], side)]
        x1, y1 = _square_xy(e["from"])
        x2, y2 = _square_xy(e["to"])
        ax.plot([x1, x2], [y1, y2], color=color, linewidth=1.2 * e["weight"] + 0.4,
                alpha=0.9, zorder=2, solid_capstyle="round")

    for name, ch in placement.items():
        x, y = _square_xy(name)
        is_white = ch.isupper()
        ax.add_patch(Circle((x, y), 0.30, facecolor="#f5f5f5" if is_white else "#2a2a2a",
                            edgecolor="#1a1a1a", linewidth=1.0, zorder=3))
        ax.text(x, y, ch.upper(), ha="center", va="center", fontsize=10, zorder=4,
                color="#1a1a1a" if is_white else "#f5f5f5")
    for name in controlled:
        if name not in placement:
            x, y = _square_xy(name)
            ax.add_patch(Circle((x, y), 0.12, facecolor="#9c6b30", edgecolor="none",
                                zorder=3, alpha=0.9))

    ax.set_xlim(-0.3, 8.3)
    ax.set_ylim(-0.3, 8.3)
    ax.set_xticks([i + 0.5 for i in range(8)], list("abcdefgh"))
    ax.set_yticks([i + 0.5 for i in range(8)], [str(i + 1) for i in range(8)])
    ax.set_aspect("equal")
    for spine in ax.spines.values():
        spine.set_visible(False)
    ax.tick_params(length=0)
    fig.tight_layout()
    return _save(fig, spec)


RENDERERS = {
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "fig5": render_fig5,
    "tvp": render_tvp,
    "network": render_network,
}


def render(spec: FigureSpec) -> str:
    """Dispatch on FigureSpec.figure; returns the written image path."""
    return RENDERERS[spec.figure](spec)
