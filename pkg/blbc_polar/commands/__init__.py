"""Commands package for the blbc-polar CLI."""
