"""SKOS-level views over raw graphs, plus integrity validation.

The validator never mutates or repairs; every finding is a Diagnostic with
a stable code so downstream tests and reports can compare codes rather
than message prose.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import namespaces as ns
from .graph import Graph
from .terms import Iri, Literal, Triple


class Severity(Enum):
    ERROR = "Error"
    WARNING = "Warning"
    INFO = "Info"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    subject: Optional[Iri]
    message: str
    source_location: Optional[tuple] = None  # (file, line)

    def tsv(self) -> str:
        return "\t".join(
            [
                self.severity.value,
                self.code,
                self.subject.value if self.subject else "",
                self.message,
            ]
        )


# The closed registry: code -> (severity, trigger condition). Documented in
# the README; validate_skos and the crosswalk converter emit only these.
DIAGNOSTIC_REGISTRY = {
    "DUPLICATE_PREFLABEL": (Severity.ERROR, "two prefLabels with the same language on one concept"),
    "LABEL_CLASH": (Severity.ERROR, "same (lang, lexical) pair used as prefLabel and alt/hiddenLabel of one concept"),
    "ORPHAN_CONCEPT": (Severity.WARNING, "typed skos:Concept with no scheme membership triple"),
    "MAPPING_SAME_SCHEME": (Severity.WARNING, "SKOS mapping property between two concepts of one scheme"),
    "MAPPING_NON_CONCEPT": (Severity.ERROR, "SKOS mapping property whose subject or object is not a concept"),
    "DANGLING_MAPPING_TARGET": (Severity.INFO, "mapping object not present in any registered graph"),
    "XL_NO_LITERAL_FORM": (Severity.WARNING, "SKOS-XL label resource without a literalForm"),
    "MAPPING_GRAPH_FOREIGN_TRIPLE": (Severity.WARNING, "non-mapping predicate inside a mapping graph"),
    "NT_SYNTAX": (Severity.ERROR, "malformed N-Triples line"),
    "XWALK_SYNTAX": (Severity.ERROR, "malformed crosswalk line"),
    "XWALK_OK": (Severity.INFO, "crosswalk entry converted cleanly"),
    "XWALK_NONPREFERRED": (Severity.ERROR, "term resolves only to a non-preferred label under strict policy"),
    "XWALK_PROMOTED": (Severity.WARNING, "non-preferred term promoted to its owning concept"),
    "XWALK_AMBIGUOUS": (Severity.ERROR, "term matches multiple concepts"),
    "XWALK_AMBIGUOUS_RESOLVED": (Severity.WARNING, "ambiguous term resolved to first concept by sorted IRI"),
    "XWALK_UNRESOLVED": (Severity.ERROR, "term matches no label in the scheme"),
    "XWALK_BAD_COMBINATION": (Severity.ERROR, "invalid combination mapping (relation or duplicate members)"),
    "XWALK_NO_INVERSE": (Severity.INFO, "combination mapping has no inverse form"),
    "XWALK_SAME_SCHEME": (Severity.ERROR, "crosswalk declares the same scheme on both sides"),
}


def make_diagnostic(code: str, subject=None, message: str = "", source_location=None) -> Diagnostic:
    severity, _ = DIAGNOSTIC_REGISTRY[code]
    return Diagnostic(severity, code, subject, message, source_location)


def diagnostics_tsv(diags) -> str:
    return "".join(d.tsv() + "\n" for d in diags)


def diagnostics_json(diags) -> str:
    return json.dumps(
        [
            {
                "severity": d.severity.value,
                "code": d.code,
                "subject": d.subject.value if d.subject else None,
                "message": d.message,
                "source": list(d.source_location) if d.source_location else None,
            }
            for d in diags
        ],
        indent=2,
        ensure_ascii=False,
    )


@dataclass
class ConceptScheme:
    iri: Iri
    title: Optional[Literal] = None
    concepts: set = field(default_factory=set)


@dataclass
class Concept:
    iri: Iri
    scheme: Optional[Iri] = None
    prefLabels: dict = field(default_factory=dict)     # lang -> Literal
    altLabels: dict = field(default_factory=dict)      # lang -> [Literal]
    hiddenLabels: dict = field(default_factory=dict)   # lang -> [Literal]
    broader: set = field(default_factory=set)
    narrower: set = field(default_factory=set)
    related: set = field(default_factory=set)

    def pref_label(self, lang_pref=()) -> Optional[Literal]:
        """Best-language preferred label: first preference hit, else any."""
        for lang in lang_pref:
            lit = self.prefLabels.get(lang.lower())
            if lit is not None:
                return lit
        for lang in sorted(self.prefLabels):
            return self.prefLabels[lang]
        return None


def _scheme_members(g: Graph) -> dict:
    """concept Iri -> set of scheme Iris, from inScheme/topConceptOf/hasTopConcept."""
    members: dict = {}
    for t in g.match(p=ns.SKOS_IN_SCHEME) + g.match(p=ns.SKOS_TOP_CONCEPT_OF):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            members.setdefault(t.subject, set()).add(t.object)
    for t in g.match(p=ns.SKOS_HAS_TOP_CONCEPT):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            members.setdefault(t.object, set()).add(t.subject)
    return members


def extract_schemes(g: Graph):
    """All skos:ConceptScheme subjects with their member concepts.

    Returns (schemes, diagnostics); typed concepts missing any scheme
    membership are reported as ORPHAN_CONCEPT, not dropped silently.
    """
    diags: list[Diagnostic] = []
    schemes: dict[Iri, ConceptScheme] = {}
    for t in g.match(p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT_SCHEME):
        if isinstance(t.subject, Iri):
            title = g.first_object(t.subject, ns.DCT_TITLE)
            if not isinstance(title, Literal):
                title = None
            schemes[t.subject] = ConceptScheme(t.subject, title=title)
    members = _scheme_members(g)
    for concept, s_iris in members.items():
        for s_iri in s_iris:
            if s_iri in schemes:
                schemes[s_iri].concepts.add(concept)
    for t in g.match(p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT):
        if isinstance(t.subject, Iri) and t.subject not in members:
            diags.append(
                make_diagnostic(
                    "ORPHAN_CONCEPT",
                    subject=t.subject,
                    message="concept has no scheme membership",
                )
            )
    return sorted(schemes.values(), key=lambda s: s.iri.value), diags


_XL_TO_PLAIN = {
    ns.SKOSXL_PREF_LABEL: ns.SKOS_PREF_LABEL,
    ns.SKOSXL_ALT_LABEL: ns.SKOS_ALT_LABEL,
    ns.SKOSXL_HIDDEN_LABEL: ns.SKOS_HIDDEN_LABEL,
}


def resolve_xl_labels(g: Graph):
    """Dumb SKOS-XL labels down to plain SKOS label triples.

    Returns (augmented graph copy, diagnostics). Original XL triples are
    retained; the operation is idempotent.
    """
    out = g.copy()
    diags: list[Diagnostic] = []
    for xl_prop, plain_prop in _XL_TO_PLAIN.items():
        for t in g.match(p=xl_prop):
            forms = [
                lt.object
                for lt in g.match(s=t.object, p=ns.SKOSXL_LITERAL_FORM)
                if isinstance(lt.object, Literal)
            ]
            if not forms:
                diags.append(
                    make_diagnostic(
                        "XL_NO_LITERAL_FORM",
                        subject=t.object if isinstance(t.object, Iri) else None,
                        message="label resource of %s has no literalForm" % t.subject,
                    )
                )
                continue
            for form in forms:
                out.insert(Triple(t.subject, plain_prop, form))
    return out, diags


def extract_concept(g: Graph, iri: Iri) -> Optional[Concept]:
    """Concept view for iri, or None when nothing SKOS-shaped exists for it."""
    triples = g.match(s=iri)
    relevant = [
        t
        for t in triples
        if t.predicate.value.startswith(ns.SKOS_NS)
        or (t.predicate == ns.RDF_TYPE and t.object == ns.SKOS_CONCEPT)
    ]
    if not relevant:
        return None
    c = Concept(iri)
    schemes = sorted(_scheme_members(g).get(iri, ()), key=lambda i: i.value)
    if schemes:
        c.scheme = schemes[0]
    for t in triples:
        p, o = t.predicate, t.object
        if p == ns.SKOS_PREF_LABEL and isinstance(o, Literal):
            lang = o.lang or ""
            c.prefLabels.setdefault(lang, o)
        elif p == ns.SKOS_ALT_LABEL and isinstance(o, Literal):
            c.altLabels.setdefault(o.lang or "", []).append(o)
        elif p == ns.SKOS_HIDDEN_LABEL and isinstance(o, Literal):
            c.hiddenLabels.setdefault(o.lang or "", []).append(o)
        elif p == ns.SKOS_BROADER and isinstance(o, Iri):
            c.broader.add(o)
        elif p == ns.SKOS_NARROWER and isinstance(o, Iri):
            c.narrower.add(o)
        elif p == ns.SKOS_RELATED and isinstance(o, Iri):
            c.related.add(o)
    for lang in c.altLabels:
        c.altLabels[lang].sort(key=lambda l: l.lexical)
    for lang in c.hiddenLabels:
        c.hiddenLabels[lang].sort(key=lambda l: l.lexical)
    return c


def _is_concept(g: Graph, iri) -> bool:
    if not isinstance(iri, Iri):
        return False
    if g.match(s=iri, p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT):
        return True
    return iri in _scheme_members(g)


def validate_skos(g: Graph, external_graphs=()) -> list:
    """Integrity checks backing the conversion rules; see the registry table.

    external_graphs: additional graphs that mapping objects may legally
    live in (registered thesauri); objects found nowhere are reported as
    DANGLING_MAPPING_TARGET at Info level.
    """
    diags: list[Diagnostic] = []

    label_triples: dict[Iri, list[Triple]] = {}
    for prop in (ns.SKOS_PREF_LABEL, ns.SKOS_ALT_LABEL, ns.SKOS_HIDDEN_LABEL):
        for t in g.match(p=prop):
            if isinstance(t.subject, Iri) and isinstance(t.object, Literal):
                label_triples.setdefault(t.subject, []).append(t)

    for subject in sorted(label_triples, key=lambda i: i.value):
        prefs: dict[str, list[Literal]] = {}
        nonpref_pairs: dict[tuple, str] = {}
        for t in label_triples[subject]:
            lit = t.object
            lang = lit.lang or ""
            if t.predicate == ns.SKOS_PREF_LABEL:
                prefs.setdefault(lang, []).append(lit)
            else:
                kind = "altLabel" if t.predicate == ns.SKOS_ALT_LABEL else "hiddenLabel"
                nonpref_pairs[(lang, lit.lexical)] = kind
        for lang, lits in sorted(prefs.items()):
            if len(lits) > 1:
                diags.append(
                    make_diagnostic(
                        "DUPLICATE_PREFLABEL",
                        subject=subject,
                        message="%d prefLabels with language %r" % (len(lits), lang or "(none)"),
                    )
                )
            for lit in lits:
                kind = nonpref_pairs.get((lang, lit.lexical))
                if kind:
                    diags.append(
                        make_diagnostic(
                            "LABEL_CLASH",
                            subject=subject,
                            message='"%s"@%s is both prefLabel and %s' % (lit.lexical, lang or "", kind),
                        )
                    )

    _, orphan_diags = extract_schemes(g)
    diags.extend(orphan_diags)

    members = _scheme_members(g)
    for prop in sorted(ns.MAPPING_PROPERTIES, key=lambda i: i.value):
        for t in g.match(p=prop):
            s_ok = _is_concept(g, t.subject)
            local = prop.value[len(ns.SKOS_NS):]
            if not s_ok:
                diags.append(
                    make_diagnostic(
                        "MAPPING_NON_CONCEPT",
                        subject=t.subject if isinstance(t.subject, Iri) else None,
                        message="subject of %s is not a concept" % local,
                    )
                )
            o = t.object
            if not isinstance(o, Iri):
                diags.append(
                    make_diagnostic(
                        "MAPPING_NON_CONCEPT",
                        subject=t.subject if isinstance(t.subject, Iri) else None,
                        message="object of %s is not a resource" % local,
                    )
                )
                continue
            known_here = bool(g.match(s=o)) or o in members
            known_ext = any(eg.match(s=o) or _is_concept(eg, o) for eg in external_graphs)
            if known_here:
                if not _is_concept(g, o):
                    diags.append(
                        make_diagnostic(
                            "MAPPING_NON_CONCEPT",
                            subject=t.subject if isinstance(t.subject, Iri) else None,
                            message="object %s of %s is not a concept" % (o, local),
                        )
                    )
                elif s_ok and members.get(t.subject, set()) & members.get(o, set()):
                    diags.append(
                        make_diagnostic(
                            "MAPPING_SAME_SCHEME",
                            subject=t.subject,
                            message="%s links two concepts of one scheme" % local,
                        )
                    )
            elif known_ext:
                pass
            else:
                diags.append(
                    make_diagnostic(
                        "DANGLING_MAPPING_TARGET",
                        subject=t.subject if isinstance(t.subject, Iri) else None,
                        message="mapping object %s is not present in any registered graph" % o,
                    )
                )
    return diags
