"""Binary self-orthogonal codes of small dimension: search and certificates."""

__version__ = "0.1.0"
