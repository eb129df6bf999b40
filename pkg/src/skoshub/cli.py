"""Command-line entry point: validate, convert, merge, serve, query.

Exit codes: 0 = success with no Error diagnostics; 1 = completed but
Error diagnostics were produced; 2 = could not run at all (I/O, config,
bad invocation).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import namespaces as ns
from .crosswalk import (
    AmbiguityMode,
    ConversionPolicy,
    NonPreferredMode,
    build_scheme_view,
    convert_crosswalk,
    edges_to_graph,
)

from .ldservice import LinkedDataApp, serve
from .multistore import StoreError, load_manifest
from .ntriples import format_triple, parse_ntriples, serialize_ntriples
from .skosmodel import (
    Severity,
    diagnostics_json,
    diagnostics_tsv,
    make_diagnostic,
    resolve_xl_labels,
    validate_skos,
)
from .terms import Iri, Literal, PrefixMap, TermError

EXIT_OK = 0
EXIT_DIAGNOSTIC_ERRORS = 1
EXIT_FAILURE = 2


def _emit_report(diags, json_mode: bool, out=None):
    out = out or sys.stdout
    if json_mode:
        out.write(diagnostics_json(diags) + "\n")
    else:
        out.write(diagnostics_tsv(diags))


def _has_errors(diags) -> bool:
    return any(d.severity is Severity.ERROR for d in diags)


def _read(path) -> bytes:
    return Path(path).read_bytes()


def cmd_validate(args) -> int:
    diags = []
    try:
        for path in args.files:
            g, errors = parse_ntriples(_read(path))
            for err in errors:
                diags.append(
                    make_diagnostic("NT_SYNTAX", message=err.message, source_location=(str(path), err.line))
                )
            g, xl_diags = resolve_xl_labels(g)
            diags.extend(xl_diags)
            diags.extend(validate_skos(g))
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    _emit_report(diags, args.report_json)
    return EXIT_DIAGNOSTIC_ERRORS if _has_errors(diags) else EXIT_OK


def _load_scheme_view(path):
    g, errors = parse_ntriples(_read(path))
    diags = [
        make_diagnostic("NT_SYNTAX", message=e.message, source_location=(str(path), e.line))
        for e in errors
    ]
    g, xl_diags = resolve_xl_labels(g)
    return build_scheme_view(g), diags + xl_diags


def cmd_convert(args) -> int:
    try:
        source_view, diags = _load_scheme_view(args.source)
        target_view, target_diags = _load_scheme_view(args.target)
        diags.extend(target_diags)
        crosswalk_data = _read(args.crosswalk)
    except (OSError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    policy = ConversionPolicy(
        nonpreferred_mode=NonPreferredMode(args.nonpreferred),
        ambiguity_mode=AmbiguityMode(args.ambiguity),
        emit_inverses=not args.no_inverses,
    )
    edges, conv_diags = convert_crosswalk(
        crosswalk_data,
        source_view,
        target_view,
        policy,
        ext_namespace=args.ext_namespace,
        filename=str(args.crosswalk),
    )
    diags.extend(conv_diags)
    mapping_graph = edges_to_graph(edges, ext_namespace=args.ext_namespace)
    try:
        Path(args.output).write_bytes(serialize_ntriples(mapping_graph))
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    _emit_report(diags, args.report_json)
    return EXIT_DIAGNOSTIC_ERRORS if _has_errors(diags) else EXIT_OK


def cmd_merge(args) -> int:
    try:
        store, _, diags = load_manifest(args.manifest)
        merged = store.export_merged()
        Path(args.output).write_bytes(serialize_ntriples(merged))
    except (StoreError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    _emit_report(diags, args.report_json, out=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    try:
        store, config, diags = load_manifest(args.manifest)
    except StoreError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    listen = args.listen or os.environ.get("SKOSHUB_LISTEN") or config.listen
    app = LinkedDataApp(store, config)
    try:
        serve(app, listen)
    except OSError as e:
        print("error: cannot bind %s: %s" % (listen, e), file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def _builtin_prefix_map() -> PrefixMap:
    pm = PrefixMap()
    for prefix, namespace in ns.BUILTIN_PREFIXES.items():
        pm.bind(prefix, Iri(namespace))
    return pm


def _parse_cli_term(token: str, prefixes: PrefixMap):
    token = token.strip()
    if token.startswith("<") and token.endswith(">"):
        return Iri(token[1:-1])
    if token.startswith('"'):
        import re

        m = re.match(r'^"(.*)"(?:@([A-Za-z0-9-]+)|\^\^<([^>]+)>)?$', token)
        if not m:
            raise ValueError("malformed literal: %r" % token)
        lex, lang, dt = m.groups()
        return Literal(lex, lang=lang.lower() if lang else None, datatype=Iri(dt) if dt else None)
    if not token.startswith(("http://", "https://", "urn:")):
        expanded = prefixes.expand(token)
        if expanded is not None:
            return expanded
    return Iri(token)


def cmd_query(args) -> int:
    try:
        store, _, _ = load_manifest(args.manifest)
        prefixes = store.combined_prefix_map()
        s = _parse_cli_term(args.subject, prefixes) if args.subject else None
        p = _parse_cli_term(args.predicate, prefixes) if args.predicate else None
        o = _parse_cli_term(args.object, prefixes) if args.object else None
        if p is not None and not isinstance(p, Iri):
            raise ValueError("predicate must be an IRI")
    except (StoreError, ValueError, TermError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAILURE
    for t in store.export_merged().match(s=s, p=p, o=o):
        sys.stdout.write(format_triple(t) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skoshub",
        description="Convert legacy thesaurus crosswalks to SKOS mappings, "
        "merge multiple thesauri, and publish them as linked data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate SKOS N-Triples files")
    p.add_argument("files", nargs="+", help="N-Triples files to check")
    p.add_argument("--report-json", action="store_true", help="emit the report as a JSON array")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="convert a legacy crosswalk to SKOS mapping triples")
    p.add_argument("--source", required=True, help="source thesaurus N-Triples file")
    p.add_argument("--target", required=True, help="target thesaurus N-Triples file")
    p.add_argument("--crosswalk", required=True, help="crosswalk file (tab-separated)")
    p.add_argument("--output", required=True, help="output N-Triples path for the mapping triples")
    p.add_argument(
        "--nonpreferred",
        choices=[m.value for m in NonPreferredMode],
        default=NonPreferredMode.STRICT.value,
        help="handling of terms that resolve only to alt/hidden labels",
    )
    p.add_argument(
        "--ambiguity",
        choices=[m.value for m in AmbiguityMode],
        default=AmbiguityMode.FAIL.value,
        help="handling of terms matching multiple concepts",
    )
    p.add_argument("--no-inverses", action="store_true", help="do not emit inverse mapping triples")
    p.add_argument(
        "--ext-namespace",
        default=ns.DEFAULT_EXT_NS,
        help="extension vocabulary namespace for combination mappings",
    )
    p.add_argument("--report-json", action="store_true", help="emit the report as a JSON array")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("merge", help="merge all thesauri and mappings from a manifest")
    p.add_argument("manifest", help="store manifest JSON file")
    p.add_argument("--output", required=True, help="output N-Triples path")
    p.add_argument("--report-json", action="store_true")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("serve", help="serve the manifest's store as linked data")
    p.add_argument("manifest", help="store manifest JSON file")
    p.add_argument("--listen", help="host:port (overrides manifest and SKOSHUB_LISTEN)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("query", help="single-triple-pattern query over the merged store")
    p.add_argument("manifest", help="store manifest JSON file")
    p.add_argument("--subject", "-s", help="subject IRI or CURIE")
    p.add_argument("--predicate", "-p", help="predicate IRI or CURIE")
    p.add_argument("--object", "-o", help="object IRI, CURIE, or quoted literal")
    p.set_defaults(func=cmd_query)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad invocation, matching our contract
        return int(e.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
