"""API v1 routes package."""
