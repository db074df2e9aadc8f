"""Wikipedia concept-annotated corpora, joint word/concept embeddings, and evaluation tools."""

__version__ = "0.1.0"
