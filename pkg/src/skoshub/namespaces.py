"""Well-known vocabulary namespaces used across the toolkit."""

from .terms import Iri

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
DCT_NS = "http://purl.org/dc/terms/"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
SKOSXL_NS = "http://www.w3.org/2008/05/skos-xl#"

RDF_TYPE = Iri(RDF_NS + "type")

SKOS_CONCEPT = Iri(SKOS_NS + "Concept")
SKOS_CONCEPT_SCHEME = Iri(SKOS_NS + "ConceptScheme")
SKOS_IN_SCHEME = Iri(SKOS_NS + "inScheme")
SKOS_TOP_CONCEPT_OF = Iri(SKOS_NS + "topConceptOf")
SKOS_HAS_TOP_CONCEPT = Iri(SKOS_NS + "hasTopConcept")
SKOS_PREF_LABEL = Iri(SKOS_NS + "prefLabel")
SKOS_ALT_LABEL = Iri(SKOS_NS + "altLabel")
SKOS_HIDDEN_LABEL = Iri(SKOS_NS + "hiddenLabel")
SKOS_BROADER = Iri(SKOS_NS + "broader")
SKOS_NARROWER = Iri(SKOS_NS + "narrower")
SKOS_RELATED = Iri(SKOS_NS + "related")

SKOS_EXACT_MATCH = Iri(SKOS_NS + "exactMatch")
SKOS_CLOSE_MATCH = Iri(SKOS_NS + "closeMatch")
SKOS_BROAD_MATCH = Iri(SKOS_NS + "broadMatch")
SKOS_NARROW_MATCH = Iri(SKOS_NS + "narrowMatch")
SKOS_RELATED_MATCH = Iri(SKOS_NS + "relatedMatch")

MAPPING_PROPERTIES = frozenset(
    [
        SKOS_EXACT_MATCH,
        SKOS_CLOSE_MATCH,
        SKOS_BROAD_MATCH,
        SKOS_NARROW_MATCH,
        SKOS_RELATED_MATCH,
    ]
)

SKOSXL_PREF_LABEL = Iri(SKOSXL_NS + "prefLabel")
SKOSXL_ALT_LABEL = Iri(SKOSXL_NS + "altLabel")
SKOSXL_HIDDEN_LABEL = Iri(SKOSXL_NS + "hiddenLabel")
SKOSXL_LITERAL_FORM = Iri(SKOSXL_NS + "literalForm")

DCT_TITLE = Iri(DCT_NS + "title")

# Default extension vocabulary for combination mappings; overridable by config.
DEFAULT_EXT_NS = "http://example.org/skos-ext#"


def ext_matches_combination(ns: str) -> Iri:
    return Iri(ns + "matchesCombination")


def ext_member(ns: str) -> Iri:
    return Iri(ns + "member")


def ext_concept_combination(ns: str) -> Iri:
    return Iri(ns + "ConceptCombination")


BUILTIN_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "dct": DCT_NS,
    "skos": SKOS_NS,
    "skosxl": SKOSXL_NS,
}
