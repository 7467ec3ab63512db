"""Exact minimizers of lambda * cut + (1 - lambda) * deviation over connected graph partitions."""

from ._districtor import *  # noqa: F401,F403
from ._districtor import DEFAULT_TOLERANCE, Graph, Norm, Partition

__version__ = "0.1.0"


def read_graph(path):
    """Parse a graph file in the 'v <id> <mass>' / 'e <a> <b> <weight>' format."""
    with open(path, encoding="utf-8") as f:
        return Graph.parse(f.read())
