"""Strong secure equilibrium checking and synthesis for games on graphs."""

__version__ = "0.1.0"
