"""Command-line entrypoints for the Condorcet domain toolkit."""
