"""Exact computations with towers of diagram algebras."""
