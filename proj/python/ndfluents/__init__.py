"""Contextual parts for RDF statements.

Every function that needs settings takes them as keywords: ``config`` is the
text of an INI file, any other keyword is a ``[general]`` key such as
``model``, ``nesting``, ``minting`` or ``predicate_mode``.
"""

from ._ndfluents import (
    AnnotatedFormatError,
    ConfigError,
    ContextualizeError,
    DecontextualizeError,
    IngestError,
    ParseError,
    QueryError,
    contextualize,
    decontextualize,
    gen_ontology,
    ingest,
    parse,
    query,
    reason,
    serialize,
    size_report,
    validate,
)

__all__ = [
    "AnnotatedFormatError",
    "ConfigError",
    "ContextualizeError",
    "DecontextualizeError",
    "IngestError",
    "ParseError",
    "QueryError",
    "contextualize",
    "decontextualize",
    "gen_ontology",
    "ingest",
    "parse",
    "query",
    "reason",
    "serialize",
    "size_report",
    "validate",
]
