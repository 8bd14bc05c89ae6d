"""Bundled coefficient data."""

from importlib.resources import files


def path(name: str):
    """Filesystem path of a bundled data file."""
    return files(__name__) / name


def upsilon20_table():
    from ..coeffs import ingest

    with path("upsilon20_p3.txt").open(encoding="utf-8") as fh:
        return ingest(fh)
