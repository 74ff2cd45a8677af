"""Twisted dihedral group algebras, their key exchange, and the circulant attack."""

__version__ = "0.1.0"
