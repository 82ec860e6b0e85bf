"""Figure renderers for the chess-tension pipeline's CSV/JSON artifacts."""

__version__ = "0.1.0"

from .render import FIGURE_IDS, FigureSpec, render

__all__ = ["FIGURE_IDS", "FigureSpec", "render"]
