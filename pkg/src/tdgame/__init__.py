"""Total domination and hypergraph transversal games."""

__version__ = "0.1.0"
