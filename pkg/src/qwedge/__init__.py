"""Exact computations in level-1 q-Fock spaces built from q-wedges."""

__version__ = "0.1.0"
