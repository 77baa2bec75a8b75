"""Domain data structures."""
