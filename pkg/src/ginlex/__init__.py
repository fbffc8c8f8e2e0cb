"""Generic initial ideals, lex-segment ideals and Koszul-Betti numbers."""

__version__ = "1.0.0"
