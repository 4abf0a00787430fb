"""Route modules for the JSON API."""
