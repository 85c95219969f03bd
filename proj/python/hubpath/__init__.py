"""k-degree shortest path queries with hub networks and hub labels."""

from ._hubpath import (
    Graph,
    IndexFormatError,
    IndexIntegrityError,
    ParseError,
    Session,
    generate,
    select_hubs,
)

ENGINES = ("bfs", "bibfs", "hn", "hl")

__all__ = [
    "ENGINES",
    "Graph",
    "IndexFormatError",
    "IndexIntegrityError",
    "ParseError",
    "Session",
    "generate",
    "select_hubs",
]
