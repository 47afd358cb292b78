"""Text-format parsing, error reporting and round-tripping."""

from fractions import Fraction

import pytest

from sfpa import GateKind, ParseError, parse_ft, serialize_ft
from helpers import FIG1_TEXT, fig2, make_rng, random_tree, trees_equivalent


def test_parse_fig1():
    t = parse_ft(FIG1_TEXT)
    assert len(t.basic_events()) == 3
    assert len(t) - len(t.basic_events()) == 3
    assert t.names[t.root] == "planecrash"
    assert t.probs[t.name_to_id["nofuel"]] == 0.3
    # nofuel is the shared child
    assert len(t.parents[t.name_to_id["nofuel"]]) == 2


def test_parse_single_be():
    t = parse_ft('toplevel "only";\n"only" prob=0.25;\n')
    assert len(t) == 1
    assert t.kinds[t.root] is GateKind.BE
    assert t.probs[t.root] == 0.25


def test_parse_exact_probabilities():
    t = parse_ft('toplevel "only";\n"only" prob=0.1;\n', exact=True)
    assert t.probs[t.root] == Fraction(1, 10)


def test_unquoted_names_accepted():
    t = parse_ft("toplevel top;\ntop and a b;\na prob=0.5;\nb prob=0.5;\n")
    assert set(t.names) == {"top", "a", "b"}


def test_comments_and_blank_lines():
    text = "\n// header\ntoplevel \"x\"; // trailing\n\n\"x\" prob=1;\n"
    assert len(parse_ft(text)) == 1


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('toplevel "g";\n"g" and "x";\n"g2" prob=0.5;\n', "'x'"),
        ('toplevel "g";\n"g" and "b";\n"b" prob=0.5;\n"b" prob=0.5;\n', "twice"),
        ('toplevel "b";\n"b" prob=1.5;\n', "outside"),
        ('toplevel "b";\n"b" prob=abc;\n', "bad probability"),
        ('"b" prob=0.5;\n', "no toplevel"),
        ('toplevel "a";\ntoplevel "b";\n"a" prob=1;\n"b" prob=1;\n', "already"),
        ('toplevel "g";\n"g" and;\n', "no children"),
        ('toplevel "b";\n"b" prob=0.5\n', "';'"),
        ('toplevel "b";\nwat is this;\n', "cannot parse"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_ft(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_ft('toplevel "b";\n"b" prob=2;\n')
    assert info.value.line == 2


def test_cycle_reported():
    text = (
        'toplevel "a";\n"a" and "b";\n"b" and "c";\n"c" and "b" "d";\n'
        '"d" prob=0.5;\n'
    )
    from sfpa import ValidationError

    with pytest.raises(ValidationError, match="cycle"):
        parse_ft(text)


def test_serialize_is_deterministic_and_round_trips():
    t = fig2()
    text = serialize_ft(t)
    assert text == serialize_ft(t)
    assert text.splitlines()[0] == 'toplevel "h";'
    again = parse_ft(text)
    assert trees_equivalent(t, again)


def test_round_trip_random_trees():
    rng = make_rng(41)
    for _ in range(25):
        t = random_tree(rng, max_be=6, max_gates=5, max_multiparent=3)
        again = parse_ft(serialize_ft(t))
        assert trees_equivalent(t, again)
        # serialization of the reparse is identical text
        assert serialize_ft(again) == serialize_ft(t)
