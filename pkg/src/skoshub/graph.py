"""Indexed in-memory triple container with set semantics.

Construction is single-writer; freeze() seals the graph for shared
read-only use. All lookups return triples in canonical order.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Optional

from .terms import Iri, Term, Triple


class SealedGraphError(RuntimeError):
    """Raised on attempted mutation of a frozen graph."""


class Graph:
    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._by_s: dict = defaultdict(set)
        self._by_p: dict = defaultdict(set)
        self._by_o: dict = defaultdict(set)
        self._frozen = False
        for t in triples:
            self.insert(t)

    def insert(self, t: Triple) -> bool:
        """Add a triple; return True iff it was not already present."""
        if self._frozen:
            raise SealedGraphError("graph is sealed")
        if t in self._triples:
            return False
        self._triples.add(t)
        self._by_s[t.subject].add(t)
        self._by_p[t.predicate].add(t)
        self._by_o[t.object].add(t)
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        return sum(1 for t in triples if self.insert(t))

    def freeze(self):
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        raise TypeError("graphs are unhashable")

    def match(
        self,
        s: Optional[Term] = None,
        p: Optional[Iri] = None,
        o: Optional[Term] = None,
    ) -> list[Triple]:
        """All triples matching the bound positions, canonically ordered."""
        candidates = None
        if s is not None:
            candidates = self._by_s.get(s, set())
        if p is not None:
            byp = self._by_p.get(p, set())
            candidates = byp if candidates is None else candidates & byp
        if o is not None:
            byo = self._by_o.get(o, set())
            candidates = byo if candidates is None else candidates & byo
        if candidates is None:
            candidates = self._triples
        out = [
            t
            for t in candidates
            if (s is None or t.subject == s)
            and (p is None or t.predicate == p)
            and (o is None or t.object == o)
        ]
        out.sort(key=Triple.sort_key)
        return out

    def subjects(self) -> list:
        return sorted(self._by_s.keys(), key=lambda t: t.sort_key())

    def objects_of(self, s, p) -> list:
        return [t.object for t in self.match(s=s, p=p)]

    def first_object(self, s, p) -> Optional[Term]:
        objs = self.objects_of(s, p)
        return objs[0] if objs else None

    def copy(self) -> "Graph":
        return Graph(self._triples)

    def union(self, *others: "Graph") -> "Graph":
        g = self.copy()
        for other in others:
            g.update(other._triples)
        return g
