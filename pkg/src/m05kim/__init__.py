"""A p-adic Kim function on the moduli space M_{0,5} over Z[1/6]."""

__version__ = "0.1.0"
