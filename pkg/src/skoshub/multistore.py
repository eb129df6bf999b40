"""Registry of independently loaded thesaurus graphs plus mapping graphs.

Each thesaurus keeps its own named graph (simulating a separate storage
location); mapping graphs are stored apart from thesaurus graphs so the
provenance of every mapping set stays re-exportable. The store is built
during a load phase, then sealed for serving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import namespaces as ns
from .graph import Graph
from .ntriples import parse_ntriples
from .skosmodel import Concept, Diagnostic, extract_concept, make_diagnostic
from .terms import Iri, Literal, PrefixMap


class StoreError(ValueError):
    """Registration or manifest constraint violation."""


@dataclass
class ThesaurusRegistration:
    id: str
    base_iri: Iri
    graph: Graph
    prefix_map: PrefixMap = field(default_factory=PrefixMap)
    title: str = ""


@dataclass(frozen=True)
class MappingRef:
    """One row of a concept's mapping listing, for the combined views."""

    direction: str            # "outbound" | "inbound"
    property: Iri
    other: Iri                # partner concept (or combination source)
    members: Optional[tuple] = None   # combination member IRIs
    other_label: Optional[Literal] = None


class MultiStore:
    def __init__(self, ext_namespace: str = ns.DEFAULT_EXT_NS):
        self.registrations: list[ThesaurusRegistration] = []
        self.mapping_graphs: list[tuple[str, Graph]] = []
        self.ext_namespace = ext_namespace

    # --- loading -----------------------------------------------------------

    def register_thesaurus(self, reg: ThesaurusRegistration):
        for existing in self.registrations:
            if existing.id == reg.id:
                raise StoreError("duplicate thesaurus id %r" % reg.id)
            a, b = existing.base_iri.value, reg.base_iri.value
            if a.startswith(b) or b.startswith(a):
                raise StoreError(
                    "base IRI %s overlaps registered base %s" % (reg.base_iri, existing.base_iri)
                )
        reg.graph.freeze()
        self.registrations.append(reg)

    def _mapping_predicates(self) -> set:
        extra = {
            ns.ext_matches_combination(self.ext_namespace),
            ns.ext_member(self.ext_namespace),
            ns.RDF_TYPE,
        }
        return set(ns.MAPPING_PROPERTIES) | extra

    def load_mappings(self, id: str, g: Graph) -> list:
        """Store a mapping graph; dangling endpoints are kept but reported."""
        diags: list[Diagnostic] = []
        allowed = self._mapping_predicates()
        combo_type = ns.ext_concept_combination(self.ext_namespace)
        for t in g:
            if t.predicate not in allowed or (
                t.predicate == ns.RDF_TYPE and t.object != combo_type
            ):
                diags.append(
                    make_diagnostic(
                        "MAPPING_GRAPH_FOREIGN_TRIPLE",
                        subject=t.subject if isinstance(t.subject, Iri) else None,
                        message="predicate %s does not belong in a mapping graph" % t.predicate,
                    )
                )
        for t in g:
            if t.predicate not in ns.MAPPING_PROPERTIES:
                continue
            for endpoint in (t.subject, t.object):
                if isinstance(endpoint, Iri) and self.owner_of(endpoint) is None:
                    diags.append(
                        make_diagnostic(
                            "DANGLING_MAPPING_TARGET",
                            subject=endpoint,
                            message="%s is under no registered base IRI" % endpoint,
                        )
                    )
        g.freeze()
        self.mapping_graphs.append((id, g))
        return diags

    # --- lookup ------------------------------------------------------------

    def owner_of(self, iri: Iri) -> Optional[ThesaurusRegistration]:
        """Longest registered base-IRI prefix wins."""
        best = None
        for reg in self.registrations:
            if iri.value.startswith(reg.base_iri.value):
                if best is None or len(reg.base_iri.value) > len(best.base_iri.value):
                    best = reg
        return best

    def lookup(self, iri: Iri):
        """(registration id, Concept view or None), or None when no base matches."""
        reg = self.owner_of(iri)
        if reg is None:
            return None
        return reg.id, extract_concept(reg.graph, iri)

    def label_of(self, iri: Iri, lang_pref=()) -> Optional[Literal]:
        """Best-language prefLabel resolved across all registrations."""
        reg = self.owner_of(iri)
        if reg is None:
            return None
        concept = extract_concept(reg.graph, iri)
        if concept is None:
            return None
        return concept.pref_label(lang_pref)

    def _combination_members(self, node: Iri) -> tuple:
        member_prop = ns.ext_member(self.ext_namespace)
        members = []
        for _, g in self.mapping_graphs:
            for t in g.match(s=node, p=member_prop):
                if isinstance(t.object, Iri):
                    members.append(t.object)
        return tuple(sorted(set(members), key=lambda i: i.value))

    def mappings_for(self, iri: Iri, lang_pref=()) -> list:
        """Every outbound and inbound mapping touching iri, labels attached."""
        combo_prop = ns.ext_matches_combination(self.ext_namespace)
        member_prop = ns.ext_member(self.ext_namespace)
        refs: list[MappingRef] = []
        for _, g in self.mapping_graphs:
            for t in g.match(s=iri):
                if t.predicate in ns.MAPPING_PROPERTIES and isinstance(t.object, Iri):
                    refs.append(
                        MappingRef(
                            "outbound", t.predicate, t.object,
                            other_label=self.label_of(t.object, lang_pref),
                        )
                    )
                elif t.predicate == combo_prop and isinstance(t.object, Iri):
                    members = self._combination_members(t.object)
                    refs.append(MappingRef("outbound", t.predicate, t.object, members=members))
            for t in g.match(o=iri):
                if t.predicate in ns.MAPPING_PROPERTIES and isinstance(t.subject, Iri):
                    refs.append(
                        MappingRef(
                            "inbound", t.predicate, t.subject,
                            other_label=self.label_of(t.subject, lang_pref),
                        )
                    )
                elif t.predicate == member_prop and isinstance(t.subject, Iri):
                    # iri is a member of a combination node; surface the
                    # combination's source concept as the inbound partner
                    for _, g2 in self.mapping_graphs:
                        for ct in g2.match(p=combo_prop, o=t.subject):
                            if isinstance(ct.subject, Iri):
                                refs.append(
                                    MappingRef(
                                        "inbound", combo_prop, ct.subject,
                                        members=self._combination_members(t.subject),
                                        other_label=self.label_of(ct.subject, lang_pref),
                                    )
                                )
        refs.sort(key=lambda r: (r.direction, r.property.value, r.other.value))
        return refs

    def export_merged(self) -> Graph:
        """Union of all registration graphs and mapping graphs."""
        g = Graph()
        for reg in self.registrations:
            g.update(reg.graph)
        for _, mg in self.mapping_graphs:
            g.update(mg)
        return g

    def subject_triples(self, iri: Iri) -> list:
        """Triples about iri from its owning graph plus all mapping graphs."""
        out = []
        reg = self.owner_of(iri)
        if reg is not None:
            out.extend(reg.graph.match(s=iri))
        for _, g in self.mapping_graphs:
            out.extend(g.match(s=iri))
        return out

    def combined_prefix_map(self) -> PrefixMap:
        pm = PrefixMap()
        for prefix, namespace in ns.BUILTIN_PREFIXES.items():
            pm.bind(prefix, Iri(namespace))
        for reg in self.registrations:
            for prefix, namespace in reg.prefix_map:
                if pm.namespace(prefix) is None:
                    pm.bind(prefix, namespace)
        return pm


# --- manifest --------------------------------------------------------------


@dataclass
class ServiceConfig:
    listen: str = "127.0.0.1:8000"
    base_url: str = ""
    result_limit: int = 10000
    default_lang: str = "en"


def load_manifest(path):
    """Build a MultiStore (plus diagnostics and service config) from a JSON manifest.

    Schema:
      {
        "ext_namespace": "http://example.org/skos-ext#",   // optional
        "thesauri": [
          {"id": "thesoz", "title": "...", "base_iri": "http://...",
           "file": "thesoz.nt", "prefixes": {"thesoz": "http://..."}}
        ],
        "mappings": [{"id": "thesoz-stw", "file": "mappings.nt"}],
        "service": {"listen": "127.0.0.1:8000", "base_url": "",
                    "result_limit": 10000, "default_lang": "de"}
      }
    File paths are resolved relative to the manifest.
    """
    path = Path(path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise StoreError("cannot read manifest %s: %s" % (path, e))
    base_dir = path.parent
    store = MultiStore(ext_namespace=manifest.get("ext_namespace", ns.DEFAULT_EXT_NS))
    diags: list[Diagnostic] = []
    for entry in manifest.get("thesauri", []):
        try:
            nt_path = base_dir / entry["file"]
            data = nt_path.read_bytes()
        except KeyError as e:
            raise StoreError("thesaurus entry missing key %s" % e)
        except OSError as e:
            raise StoreError("cannot read %s: %s" % (entry.get("file"), e))
        graph, errors = parse_ntriples(data)
        for err in errors:
            diags.append(
                make_diagnostic(
                    "NT_SYNTAX",
                    message=err.message,
                    source_location=(str(nt_path), err.line),
                )
            )
        pm = PrefixMap()
        for prefix, namespace in entry.get("prefixes", {}).items():
            pm.bind(prefix, Iri(namespace))
        store.register_thesaurus(
            ThesaurusRegistration(
                id=entry["id"],
                base_iri=Iri(entry["base_iri"]),
                graph=graph,
                prefix_map=pm,
                title=entry.get("title", entry["id"]),
            )
        )
    for entry in manifest.get("mappings", []):
        try:
            nt_path = base_dir / entry["file"]
            data = nt_path.read_bytes()
        except KeyError as e:
            raise StoreError("mapping entry missing key %s" % e)
        except OSError as e:
            raise StoreError("cannot read %s: %s" % (entry.get("file"), e))
        graph, errors = parse_ntriples(data)
        for err in errors:
            diags.append(
                make_diagnostic(
                    "NT_SYNTAX",
                    message=err.message,
                    source_location=(str(nt_path), err.line),
                )
            )
        diags.extend(store.load_mappings(entry["id"], graph))
    svc = manifest.get("service", {})
    config = ServiceConfig(
        listen=svc.get("listen", "127.0.0.1:8000"),
        base_url=svc.get("base_url", ""),
        result_limit=int(svc.get("result_limit", 10000)),
        default_lang=svc.get("default_lang", "en"),
    )
    return store, config, diags
