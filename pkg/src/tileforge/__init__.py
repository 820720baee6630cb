"""tileforge: a workbench for polyomino and Wang-tile tiling problems."""

__version__ = "0.1.0"
