"""hashembed - compositional-code compression of node embeddings."""

__version__ = "0.1.0"
