import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermann.datum import (
    BadParameters,
    ParseError,
    UnknownKey,
    ValidationError,
    catalog,
    inverse_phase,
    parse_datum,
    positive_sector_roots,
    serialize_datum,
    validate,
)
from hermann.exact import inner

HALF = Fraction(1, 2)

# multiplicity by (phase, squared root length), frozen from the catalog
# definitions; p - q enters only the middle-length classes
SO_EVEN_MULTS = {
    (Fraction(-1, 4), 1): 2,
    (Fraction(0), 2): 2, (Fraction(0), 1): "p-q", (Fraction(0), 4): 1,
    (Fraction(1, 4), 1): 2,
    (HALF, 2): 2, (HALF, 1): "p-q",
}
SU_SP_MULTS = {
    (Fraction(-1, 4), 1): 4,
    (Fraction(0), 2): 4, (Fraction(0), 1): "2(p-q)", (Fraction(0), 4): 3,
    (Fraction(1, 4), 1): 4,
    (HALF, 2): 4, (HALF, 1): "2(p-q)", (HALF, 4): 1,
}


def _expected(table, t, norm, p, q):
    entry = table.get((t, norm))
    if entry == "p-q":
        return p - q
    if entry == "2(p-q)":
        return 2 * (p - q)
    return entry


@pytest.mark.parametrize("key,table", [("so_even", SO_EVEN_MULTS),
                                       ("su_sp", SU_SP_MULTS)])
def test_family_multiplicity_tables(key, table):
    p, q = 9, 7
    d = catalog(key, p=p, q=q)
    assert d.rank == 3
    assert d.order == 4
    assert validate(d) == ()
    seen = set()
    for alpha, t, m in positive_sector_roots(d):
        norm = inner(alpha, alpha, d.sigma.gram)
        assert m == _expected(table, t, norm, p, q), (alpha, t)
        seen.add((t, norm))
    assert seen == set(table)


def test_so_even_drops_doubled_roots_at_half_phase():
    d = catalog("so_even", p=9, q=7)
    halves = [alpha for alpha, t, _ in positive_sector_roots(d) if t == HALF]
    assert all(inner(a, a, d.sigma.gram) != 4 for a in halves)


def test_g2_datum_sectors():
    d = catalog("so8_g2")
    assert d.rank == 2
    assert d.order == 3
    assert validate(d) == ()
    phases = sorted(set(t for _, t, _ in positive_sector_roots(d)))
    assert phases == [Fraction(-1, 3), Fraction(0), Fraction(1, 3)]
    for alpha, t, m in positive_sector_roots(d):
        norm = inner(alpha, alpha, d.sigma.gram)
        if t == 0:
            assert m == 1
        else:
            assert norm == 2 and m == 1


def test_isotropy_defaults_and_overrides():
    d = catalog("isotropy", label="BC1")
    assert [m for _, _, m in positive_sector_roots(d)] == [1, 1]
    d = catalog("isotropy", label="BC1", mults={1: 4, 4: 1})
    table = {inner(a, a, d.sigma.gram): m
             for a, _, m in positive_sector_roots(d)}
    assert table == {1: 4, 4: 1}


def test_catalog_errors():
    with pytest.raises(UnknownKey):
        catalog("nope")
    with pytest.raises(BadParameters):
        catalog("so_even", p=7, q=7)
    with pytest.raises(BadParameters):
        catalog("so_even", p=9, q=6)
    with pytest.raises(BadParameters):
        catalog("so_even", p=9, q=7, extra=1)
    with pytest.raises(BadParameters):
        catalog("isotropy")
    with pytest.raises(BadParameters):
        catalog("isotropy", label="Q3")
    with pytest.raises(BadParameters):
        catalog("isotropy", label="A1", mults={1: 1, 4: 1})


@pytest.mark.parametrize("key,params", [
    ("so_even", {"p": 9, "q": 7}),
    ("su_sp", {"p": 11, "q": 5}),
    ("so8_g2", {}),
    ("isotropy", {"label": "BC2"}),
])
def test_serialize_parse_round_trip(key, params):
    d = catalog(key, **params)
    text = serialize_datum(d)
    again = parse_datum(text)
    assert again == d
    assert serialize_datum(again) == text


def test_parse_rejects_malformed_documents():
    with pytest.raises(ParseError):
        parse_datum("not json")
    with pytest.raises(ParseError):
        parse_datum("[1, 2]")
    with pytest.raises(ParseError):
        parse_datum("{}")
    doc = json.loads(serialize_datum(catalog("so8_g2")))
    doc["surprise"] = 1
    with pytest.raises(ParseError):
        parse_datum(json.dumps(doc))


def test_parse_rejects_inconsistent_phases():
    doc = json.loads(serialize_datum(catalog("so8_g2")))
    doc["order"] = 2
    with pytest.raises(ValidationError) as err:
        parse_datum(json.dumps(doc))
    assert any(v.kind == "order" for v in err.value.violations)


def test_parse_rejects_bad_phase_window():
    doc = json.loads(serialize_datum(catalog("isotropy", label="A1")))
    doc["sectors"][0]["phi"] = "3/4"
    with pytest.raises(ValidationError) as err:
        parse_datum(json.dumps(doc))
    assert any(v.kind == "phase" for v in err.value.violations)


def test_parse_rejects_non_root_vectors():
    # a stray vector joins sigma during parsing, so the axioms catch it
    doc = json.loads(serialize_datum(catalog("isotropy", label="A1")))
    doc["sectors"][0]["roots"].append({"v": [5], "m": 1})
    with pytest.raises(ValidationError) as err:
        parse_datum(json.dumps(doc))
    assert any(v.kind == "axioms" for v in err.value.violations)


def test_omitted_sector_completed_through_duality():
    base = catalog("so8_g2")
    doc = json.loads(serialize_datum(base))
    doc["sectors"] = [s for s in doc["sectors"] if s["phi"] != "-1/3"]
    assert parse_datum(json.dumps(doc)) == base


def test_inverse_phase_pins_half():
    assert inverse_phase(HALF) == HALF
    assert inverse_phase(Fraction(1, 4)) == Fraction(-1, 4)
    assert inverse_phase(Fraction(0)) == Fraction(0)


@given(st.fractions(min_value=Fraction(-1, 2), max_value=HALF,
                    max_denominator=60).filter(lambda t: t > Fraction(-1, 2)))
@settings(max_examples=80, deadline=None)
def test_inverse_phase_is_an_involution(t):
    assert inverse_phase(inverse_phase(t)) == t


def test_positive_sector_roots_is_deterministic():
    d = catalog("su_sp", p=9, q=7)
    assert tuple(positive_sector_roots(d)) == tuple(positive_sector_roots(d))
    for alpha, _, _ in positive_sector_roots(d):
        assert alpha in d.sigma.positive_roots
