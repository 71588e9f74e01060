from .render import FigureJob, RenderError, build_figure, load_table, main, render

__all__ = ["FigureJob", "RenderError", "build_figure", "load_table", "main", "render"]
