"""Tile self-assembly simulator, intrinsic-universality compiler and simulation verifier."""
__version__ = "0.1.0"
