"""Pubby-style linked-data frontend over a sealed MultiStore.

Resource URIs answer 303 redirects negotiated from the Accept header;
page URLs render a combined HTML view (cross-thesaurus mappings with
partner labels); data URLs serve RDF. Request handling is pure over the
sealed store, so the HTTP wrapper is a thin adapter and everything is
testable in-process.
"""

from __future__ import annotations

import html
import logging
import re
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, quote, urlsplit

from . import namespaces as ns
from .graph import Graph
from .multistore import MultiStore, ServiceConfig
from .ntriples import format_triple, serialize_ntriples
from .skosmodel import extract_concept
from .terms import Iri, Literal, TermError, Triple
from .turtle import serialize_turtle

log = logging.getLogger("skoshub.ldservice")

HTML_TYPE = "text/html"
TURTLE_TYPE = "text/turtle"
NTRIPLES_TYPE = "application/n-triples"
RDFXML_TYPE = "application/rdf+xml"

# Server preference order for tie-breaking equal q-values.
SERVER_PREFERENCE = [HTML_TYPE, TURTLE_TYPE, NTRIPLES_TYPE, RDFXML_TYPE]


@dataclass
class Response:
    status: int
    headers: dict = field(default_factory=dict)
    body: bytes = b""


def parse_accept(header: str) -> list:
    """Media ranges as (type, q) in declaration order; malformed parts skipped."""
    out = []
    for part in header.split(","):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(";")
        media = pieces[0].strip().lower()
        q = 1.0
        for param in pieces[1:]:
            param = param.strip()
            if param.startswith("q="):
                try:
                    q = float(param[2:])
                except ValueError:
                    q = 0.0
        out.append((media, max(0.0, min(q, 1.0))))
    return out


def _range_matches(media_range: str, concrete: str) -> bool:
    if media_range == "*/*":
        return True
    if media_range.endswith("/*"):
        return concrete.split("/")[0] == media_range.split("/")[0]
    return media_range == concrete


def negotiate(accept_header: Optional[str], supported: list) -> Optional[str]:
    """Best supported type per q-values; ties broken by server preference.

    None means nothing acceptable (406 territory). An absent header picks
    the server's first preference.
    """
    if accept_header is None or not accept_header.strip():
        return supported[0]
    ranges = parse_accept(accept_header)
    best = None
    for concrete in supported:
        q = None
        specificity = -1
        for media_range, rq in ranges:
            if _range_matches(media_range, concrete):
                spec = 2 if "*" not in media_range else (1 if media_range != "*/*" else 0)
                if spec > specificity:
                    specificity = spec
                    q = rq
        if q is None or q <= 0:
            continue
        rank = (q, -SERVER_PREFERENCE.index(concrete) if concrete in SERVER_PREFERENCE else -99)
        if best is None or rank > best[0]:
            best = (rank, concrete)
    return best[1] if best else None


def parse_accept_language(header: Optional[str]) -> list:
    if not header:
        return []
    tagged = []
    for i, (tag, q) in enumerate(parse_accept(header)):
        if tag != "*":
            tagged.append((-q, i, tag.lower()))
    return [tag for _, _, tag in sorted(tagged)]


@dataclass
class Description:
    focus: Iri
    outbound: list
    inbound_mappings: list
    neighbor_labels: dict  # Iri -> Literal


def describe(store: MultiStore, iri: Iri, lang_pref=()) -> Description:
    """Everything the combined page and the data views need about one IRI."""
    outbound = store.subject_triples(iri)
    inbound = store.mappings_for(iri, lang_pref)
    neighbor_labels: dict = {}
    neighbors = set()
    for t in outbound:
        if isinstance(t.object, Iri):
            neighbors.add(t.object)
    for ref in inbound:
        neighbors.add(ref.other)
        for m in ref.members or ():
            neighbors.add(m)
    for n in sorted(neighbors, key=lambda i: i.value):
        label = store.label_of(n, lang_pref)
        if label is not None:
            neighbor_labels[n] = label
    return Description(iri, outbound, inbound, neighbor_labels)


def description_graph(d: Description) -> Graph:
    """RDF view of a Description: outbound + inbound mappings + neighbor labels."""
    g = Graph()
    g.update(d.outbound)
    for ref in d.inbound_mappings:
        if ref.direction == "inbound" and ref.members is None:
            g.insert(Triple(ref.other, ref.property, d.focus))
    for neighbor, label in d.neighbor_labels.items():
        g.insert(Triple(neighbor, ns.SKOS_PREF_LABEL, label))
    return g


class LinkedDataApp:
    """Route and render requests; pure functions over the sealed store."""

    def __init__(self, store: MultiStore, config: Optional[ServiceConfig] = None):
        self.store = store
        self.config = config or ServiceConfig()

    # --- URL mapping -------------------------------------------------------

    def local_path(self, iri: Iri, kind: str) -> Optional[str]:
        reg = self.store.owner_of(iri)
        if reg is None:
            return None
        rest = iri.value[len(reg.base_iri.value):]
        return "%s/%s/%s/%s" % (self.config.base_url, reg.id, kind, quote(rest, safe="/:-_.~"))

    def page_url(self, iri: Iri) -> Optional[str]:
        return self.local_path(iri, "page")

    # --- dispatch ----------------------------------------------------------

    def handle(self, method: str, path: str, headers: Optional[dict] = None) -> Response:
        headers = {k.lower(): v for k, v in (headers or {}).items()}
        if method not in ("GET", "HEAD"):
            return Response(405, {"Content-Type": "text/plain; charset=utf-8", "Allow": "GET, HEAD"}, b"method not allowed\n")
        split = urlsplit(path)
        query = {k: v[0] for k, v in parse_qs(split.query).items()}
        segments = [s for s in split.path.split("/") if s]
        resp = self._route(segments, query, headers)
        if method == "HEAD":
            resp = Response(resp.status, dict(resp.headers), b"")
        return resp

    def _route(self, segments, query, headers) -> Response:
        if not segments:
            return self._index()
        if segments == ["query"]:
            return self._query(query, scope=None)
        reg = next((r for r in self.store.registrations if r.id == segments[0]), None)
        if reg is None:
            return self._not_found()
        if len(segments) == 2 and segments[1] == "query":
            return self._query(query, scope=reg)
        if len(segments) < 3 or segments[1] not in ("resource", "page", "data"):
            return self._not_found()
        kind = segments[1]
        rest = "/".join(segments[2:])
        iri = Iri(reg.base_iri.value + rest)
        if kind == "resource":
            return self._resource(reg, rest, iri, headers)
        if kind == "page":
            return self._page(reg, iri, query, headers)
        return self._data(reg, iri, headers)

    def _not_found(self) -> Response:
        return Response(404, {"Content-Type": "text/plain; charset=utf-8"}, b"not found\n")

    def _exists(self, iri: Iri) -> bool:
        return bool(self.store.subject_triples(iri)) or bool(self.store.mappings_for(iri))

    # --- handlers ----------------------------------------------------------

    def _resource(self, reg, rest, iri, headers) -> Response:
        if not self._exists(iri):
            return self._not_found()
        chosen = negotiate(headers.get("accept"), SERVER_PREFERENCE)
        if chosen is None:
            return Response(406, {"Content-Type": "text/plain; charset=utf-8", "Vary": "Accept"}, b"not acceptable\n")
        kind = "page" if chosen == HTML_TYPE else "data"
        location = "%s/%s/%s/%s" % (self.config.base_url, reg.id, kind, rest)
        return Response(303, {"Location": location, "Vary": "Accept"}, b"")

    def _lang_pref(self, query, headers) -> list:
        pref = []
        if "lang" in query:
            pref.append(query["lang"].lower())
        pref.extend(parse_accept_language(headers.get("accept-language")))
        if self.config.default_lang:
            pref.append(self.config.default_lang.lower())
        return pref

    def _data(self, reg, iri, headers) -> Response:
        if not self._exists(iri):
            return self._not_found()
        d = describe(self.store, iri)
        g = description_graph(d)
        chosen = negotiate(headers.get("accept"), [TURTLE_TYPE, NTRIPLES_TYPE, RDFXML_TYPE])
        if chosen is None:
            return Response(406, {"Content-Type": "text/plain; charset=utf-8", "Vary": "Accept"}, b"not acceptable\n")
        if chosen == NTRIPLES_TYPE:
            body = serialize_ntriples(g)
            ctype = NTRIPLES_TYPE
        else:
            # rdf+xml requests get Turtle with an honest Content-Type
            body = serialize_turtle(g, self.store.combined_prefix_map())
            ctype = TURTLE_TYPE
        return Response(200, {"Content-Type": ctype + "; charset=utf-8", "Vary": "Accept"}, body)

    def _page(self, reg, iri, query, headers) -> Response:
        if not self._exists(iri):
            return self._not_found()
        lang_pref = self._lang_pref(query, headers)
        d = describe(self.store, iri, lang_pref)
        body = self._render_page(reg, iri, d, lang_pref)
        return Response(
            200,
            {"Content-Type": "text/html; charset=utf-8", "Vary": "Accept, Accept-Language"},
            body.encode("utf-8"),
        )

    def _link(self, iri: Iri, label: Optional[Literal] = None) -> str:
        text = html.escape(label.lexical if label else iri.value)
        url = self.page_url(iri)
        if url is None:
            return '<a href="%s">%s</a>' % (html.escape(iri.value, quote=True), text)
        return '<a href="%s">%s</a>' % (html.escape(url, quote=True), text)

    def _render_page(self, reg, iri, d: Description, lang_pref) -> str:
        concept = extract_concept(reg.graph, iri)
        title = iri.value
        if concept is not None:
            best = concept.pref_label(lang_pref)
            if best is not None:
                title = best.lexical
        parts = [
            "<!DOCTYPE html>",
            '<html><head><meta charset="utf-8"><title>%s</title></head><body>' % html.escape(title),
            "<h1>%s</h1>" % html.escape(title),
            '<p>IRI: <code>%s</code> (%s)</p>' % (html.escape(iri.value), html.escape(reg.title or reg.id)),
        ]
        if concept is not None:
            alt = [l.lexical for langs in sorted(concept.altLabels) for l in concept.altLabels[langs]]
            if alt:
                parts.append("<p>Alternative labels: %s</p>" % html.escape(", ".join(alt)))
            for heading, iris in (
                ("Broader", concept.broader),
                ("Narrower", concept.narrower),
                ("Related", concept.related),
            ):
                if iris:
                    links = ", ".join(
                        self._link(i, d.neighbor_labels.get(i)) for i in sorted(iris, key=lambda x: x.value)
                    )
                    parts.append("<p>%s: %s</p>" % (heading, links))
        parts.append("<h2>Mappings</h2>")
        rows = []
        for ref in d.inbound_mappings:
            partner_reg = self.store.owner_of(ref.other)
            partner_title = partner_reg.title if partner_reg else ""
            prop_local = ref.property.value.rsplit("#", 1)[-1].rsplit("/", 1)[-1]
            if ref.members is not None and ref.direction == "outbound":
                member_links = ", ".join(
                    self._link(m, d.neighbor_labels.get(m) or self.store.label_of(m, lang_pref))
                    for m in ref.members
                )
                rows.append(
                    "<li>%s: combination of %s</li>" % (html.escape(prop_local), member_links)
                )
            else:
                rows.append(
                    "<li>%s (%s): %s%s</li>"
                    % (
                        html.escape(prop_local),
                        html.escape(ref.direction),
                        self._link(ref.other, ref.other_label),
                        " [%s]" % html.escape(partner_title) if partner_title else "",
                    )
                )
        if rows:
            parts.append("<ul>%s</ul>" % "".join(rows))
        else:
            parts.append("<p>No mappings recorded for this concept.</p>")
        parts.append("</body></html>")
        return "\n".join(parts)

    def _index(self) -> Response:
        items = []
        for reg in self.store.registrations:
            schemes_count = len(reg.graph.match(p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT_SCHEME))
            concept_count = len(reg.graph.match(p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT))
            items.append(
                "<li><strong>%s</strong> (%s): %d concepts, %d schemes, %d triples</li>"
                % (html.escape(reg.title or reg.id), html.escape(reg.id), concept_count, schemes_count, len(reg.graph))
            )
        mapping_items = [
            "<li>%s: %d triples</li>" % (html.escape(mid), len(g)) for mid, g in self.store.mapping_graphs
        ]
        body = (
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Thesaurus hub</title></head><body>"
            "<h1>Registered thesauri</h1><ul>%s</ul><h2>Mapping graphs</h2><ul>%s</ul>"
            "</body></html>" % ("".join(items), "".join(mapping_items))
        )
        return Response(200, {"Content-Type": "text/html; charset=utf-8"}, body.encode("utf-8"))

    # --- query endpoint ----------------------------------------------------

    def _parse_term_param(self, token: str):
        token = token.strip()
        if not token:
            raise ValueError("empty term")
        if token.startswith("<") and token.endswith(">"):
            return Iri(token[1:-1])
        if token.startswith('"'):
            m = re.match(r'^"(.*)"(?:@([A-Za-z0-9-]+)|\^\^<([^>]+)>)?$', token)
            if not m:
                raise ValueError("malformed literal token: %r" % token)
            lex, lang, dt = m.groups()
            return Literal(lex, lang=lang.lower() if lang else None, datatype=Iri(dt) if dt else None)
        expanded = self.store.combined_prefix_map().expand(token)
        if expanded is not None and not token.startswith(("http:", "https:", "urn:")):
            return expanded
        return Iri(token)

    def _query(self, query, scope) -> Response:
        try:
            s = self._parse_term_param(query["s"]) if "s" in query else None
            p = self._parse_term_param(query["p"]) if "p" in query else None
            o = self._parse_term_param(query["o"]) if "o" in query else None
            if p is not None and not isinstance(p, Iri):
                raise ValueError("predicate must be an IRI")
            if s is not None and isinstance(s, Literal):
                raise ValueError("subject cannot be a literal")
        except (ValueError, TermError) as e:
            return Response(400, {"Content-Type": "text/plain; charset=utf-8"}, ("bad term: %s\n" % e).encode("utf-8"))
        if scope is not None:
            g = scope.graph
        else:
            g = self.store.export_merged()
        results = g.match(s=s, p=p, o=o)
        limit = self.config.result_limit
        truncated = len(results) > limit
        if truncated:
            results = results[:limit]
        body = "".join(format_triple(t) + "\n" for t in results).encode("utf-8")
        headers = {"Content-Type": NTRIPLES_TYPE + "; charset=utf-8"}
        if truncated:
            headers["X-Truncated"] = "true"
        return Response(200, headers, body)


# --- HTTP wrapper ----------------------------------------------------------


def make_server(app: LinkedDataApp, host: str, port: int) -> ThreadingHTTPServer:
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def _respond(self, method):
            start = time.monotonic()
            resp = app.handle(method, self.path, dict(self.headers))
            self.send_response(resp.status)
            for k, v in resp.headers.items():
                self.send_header(k, v)
            self.send_header("Content-Length", str(len(resp.body)))
            self.end_headers()
            if method != "HEAD" and resp.body:
                self.wfile.write(resp.body)
            log.info(
                "%s %s %d %.1fms", method, self.path, resp.status, (time.monotonic() - start) * 1000
            )

        def do_GET(self):
            self._respond("GET")

        def do_HEAD(self):
            self._respond("HEAD")

        def do_POST(self):
            self._respond("POST")

        def log_message(self, *args):
            pass

    return ThreadingHTTPServer((host, port), Handler)


def serve(app: LinkedDataApp, listen: str):
    """Run the service until interrupted; logs one line per request."""
    host, _, port = listen.rpartition(":")
    server = make_server(app, host or "127.0.0.1", int(port))
    for reg in app.store.registrations:
        log.info(
            "registered %s (%s): %d concepts",
            reg.id,
            reg.title,
            len(reg.graph.match(p=ns.RDF_TYPE, o=ns.SKOS_CONCEPT)),
        )
    log.info("listening on %s", listen)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
