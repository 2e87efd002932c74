"""GF(2) homology workbench for CSS codes with transversal CCZ gates from triple cup products."""

__version__ = "0.1.0"
