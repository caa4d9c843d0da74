import os
import pathlib

import pytest

import ndfluents

DATA = pathlib.Path(os.environ.get("NDFLUENTS_TEST_DATA", pathlib.Path(__file__).parents[2] / "tests" / "data"))

PARIS = (
    "subject,predicate,object,objectType,dim1,ctx1\n"
    "http://example.org/Paris,http://example.org/capitalOf,http://example.org/France,iri,temporal,"
    "http://example.org/year508\n"
)


def test_parse_and_serialize():
    doc = "<http://a/s> <http://a/p> \"x\"@en .\n<http://a/s> <http://a/p> <http://a/o> .\n"
    triples = ndfluents.parse(doc)
    assert len(triples) == 2
    assert ("<http://a/s>", "<http://a/p>", '"x"@en') in triples
    assert ndfluents.parse(ndfluents.serialize(triples, format="ttl"), format="ttl") == triples


def test_parse_error_is_value_error():
    with pytest.raises(ndfluents.ParseError):
        ndfluents.parse("<http://a/s> <http://a/p> .\n")
    with pytest.raises(ValueError):
        ndfluents.parse("<http://a/s> <http://a/p> .\n")


def test_contextualize_round_trip():
    graph = ndfluents.contextualize(PARIS, predicate_mode="keep-base")
    assert len(ndfluents.parse(graph)) == 8
    assert ndfluents.validate(graph, predicate_mode="keep-base", same_extent=True) == []
    back = ndfluents.decontextualize(graph, predicate_mode="keep-base")
    assert back.splitlines()[1:] == PARIS.splitlines()[1:]


def test_single_context_sizes():
    sizes = {}
    for model in ("multi-context-part", "contexts-in-context", "combined-extent"):
        extra = {"nesting": ["temporal", "provenance"]} if model == "contexts-in-context" else {}
        sizes[model] = len(ndfluents.parse(ndfluents.contextualize(PARIS, model=model, **extra)))
    assert sizes["multi-context-part"] == 8
    assert sizes["contexts-in-context"] == 8
    assert sizes["combined-extent"] == 8


def test_validate_reports_missing_part_of():
    bad = (
        "<http://e/x> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
        "<http://purl.org/NET/ndfluents/4dFluents#TemporalPart> .\n"
    )
    violations = ndfluents.validate(bad)
    assert [v["kind"] for v in violations] == ["MissingPartOf"]
    assert violations[0]["resources"] == ["<http://e/x>"]


def test_reason_derives_part_of():
    derived = ndfluents.reason(ndfluents.contextualize(PARIS))
    assert (
        "<http://example.org/Paris@year508> <http://purl.org/NET/ndfluents#contextualPartOf> "
        "<http://example.org/Paris> ." in derived
    )


def test_population_query():
    nquads, bundles = ndfluents.ingest((DATA / "population.csv").read_text())
    graph = ndfluents.contextualize(nquads, bundles=bundles, predicate_mode="keep-base")
    pattern = (
        "PREFIX time: <http://www.w3.org/2006/time#>\n"
        "PREFIX dbo: <http://dbpedia.org/ontology/>\n"
        "AGG AVG ?population AS average\n"
        "GROUP ?year\n"
        "?part fd:temporalExtent ?interval .\n"
        "?interval time:year ?year .\n"
        "?part dbo:populationTotal ?population .\n"
    )
    columns, rows = ndfluents.query(graph, pattern, predicate_mode="keep-base")
    assert columns == ["year", "average"]
    assert rows[0] == ["-1000", "50000000.00"]
    assert rows[-1] == ["1800", "943333333.33"]


def test_size_report_and_ontology():
    rows = ndfluents.size_report(PARIS)
    models = {(pattern, model): n for pattern, model, n in rows}
    assert models[("reification", "-")] == 5
    modules = ndfluents.gen_ontology(model="combined-extent")
    assert "functional-extent" in modules
    assert "core" in modules


def test_bad_setting():
    with pytest.raises(ndfluents.ConfigError):
        ndfluents.contextualize(PARIS, colour="blue")
