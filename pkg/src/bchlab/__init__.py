"""BCH code workbench for narrow-sense codes of length (q^m - 1)/lambda."""

__version__ = "0.1.0"
