"""Mordell-Tornheim and Herglotz-type functions with machine-checked identities."""
__version__ = "0.1.0"
