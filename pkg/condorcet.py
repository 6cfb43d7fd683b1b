"""Compatibility wrapper for the packaged condorcet-domains CLI."""

from condorcet_domains.cli import main


if __name__ == "__main__":
    raise SystemExit(main())
