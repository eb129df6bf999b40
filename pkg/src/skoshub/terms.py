"""RDF term model: IRIs, literals, blank nodes, triples, prefix maps.

Terms are immutable value objects. Equality and ordering are defined on
content only, so graphs built in any insertion order serialize identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

_LANG_RE = re.compile(r"^[a-z]{2,3}(-[a-z0-9]{1,8})*$")
_BNODE_RE = re.compile(r"^[A-Za-z0-9]+$")


class TermError(ValueError):
    """Raised when a term violates its structural invariants."""


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        v = self.value
        if not v:
            raise TermError("empty IRI")
        if any(c in v for c in ' \t\r\n<>"'):
            raise TermError("IRI contains forbidden character: %r" % v)
        colon = v.find(":")
        slash = v.find("/")
        if colon < 1 or (0 <= slash < colon):
            raise TermError("IRI has no scheme component: %r" % v)

    def __str__(self):
        return self.value

    def sort_key(self):
        return (0, self.value.encode("utf-8"))


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not _BNODE_RE.match(self.label):
            raise TermError("invalid blank node label: %r" % self.label)

    def __str__(self):
        return "_:" + self.label

    def sort_key(self):
        return (1, self.label.encode("utf-8"))


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: Optional[str] = None
    datatype: Optional[Iri] = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise TermError("literal cannot carry both lang and datatype")
        if self.lang is not None:
            lowered = self.lang.lower()
            if lowered != self.lang:
                object.__setattr__(self, "lang", lowered)
            if not _LANG_RE.match(lowered):
                raise TermError("invalid language tag: %r" % self.lang)

    def __str__(self):
        if self.lang:
            return '"%s"@%s' % (self.lexical, self.lang)
        if self.datatype:
            return '"%s"^^<%s>' % (self.lexical, self.datatype.value)
        return '"%s"' % self.lexical

    def sort_key(self):
        return (
            2,
            self.lexical.encode("utf-8"),
            (self.lang or "").encode("utf-8"),
            (self.datatype.value if self.datatype else "").encode("utf-8"),
        )


Term = Union[Iri, BlankNode, Literal]
Subject = Union[Iri, BlankNode]


@dataclass(frozen=True)
class Triple:
    subject: Subject
    predicate: Iri
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TermError("literal in subject position")
        if not isinstance(self.predicate, Iri):
            raise TermError("predicate must be an IRI")

    def sort_key(self):
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())


@dataclass
class PrefixMap:
    """Ordered prefix -> namespace registry; prefixes unique, namespaces free."""

    entries: list = field(default_factory=list)

    def bind(self, prefix: str, namespace: Iri):
        for p, _ in self.entries:
            if p == prefix:
                raise TermError("duplicate prefix: %r" % prefix)
        self.entries.append((prefix, namespace))

    def namespace(self, prefix: str) -> Optional[Iri]:
        for p, ns in self.entries:
            if p == prefix:
                return ns
        return None

    def compact(self, iri: Iri):
        """Return (prefix, localname) for the longest matching namespace, or None."""
        best = None
        for p, ns in self.entries:
            if iri.value.startswith(ns.value):
                if best is None or len(ns.value) > len(best[1].value):
                    best = (p, ns)
        if best is None:
            return None
        return best[0], iri.value[len(best[1].value):]

    def expand(self, curie: str) -> Optional[Iri]:
        if ":" not in curie:
            return None
        prefix, local = curie.split(":", 1)
        ns = self.namespace(prefix)
        if ns is None:
            return None
        return Iri(ns.value + local)

    def __iter__(self):
        return iter(self.entries)
