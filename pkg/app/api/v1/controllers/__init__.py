"""API v1 controllers package."""
