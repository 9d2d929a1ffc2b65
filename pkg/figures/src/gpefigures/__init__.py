"""Figure rendering for ptgpe solver CSV outputs."""

__version__ = "0.1.0"

from .render import FigureSpec, RenderInfo, SchemaMismatch, render

__all__ = ["FigureSpec", "RenderInfo", "SchemaMismatch", "render", "__version__"]
