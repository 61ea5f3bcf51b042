"""Good 2-list-colorings of planar graphs of girth at least 6."""
