"""Arc-sections of surface germs under finite linear projections."""

__version__ = "0.1.0"
