"""Exact projectivity analysis and birational surgery for smooth complete
toric fans: wall relations, Mori-cone data with rational-LP certificates,
star subdivisions and their inverses, the trichotomy analysis of pairs that
become projective after one curve blow-up, and suspension towers."""

from .fan import Fan, ValidationReport, Wall, picard_number, star, validate, walls

__all__ = ["Fan", "Wall", "ValidationReport", "validate", "walls", "star", "picard_number"]
