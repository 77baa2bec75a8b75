"""Input parsing and report rendering."""
