"""skoshub: SKOS crosswalk conversion, multi-thesaurus merging, and linked-data publishing."""

from .graph import Graph
from .terms import BlankNode, Iri, Literal, PrefixMap, Triple

__all__ = ["Graph", "Iri", "Literal", "BlankNode", "Triple", "PrefixMap"]
__version__ = "0.1.0"
