"""blbc_polar: decode binary linear block codes as pruned, shortened polar-like codes."""

__version__ = "0.1.0"
