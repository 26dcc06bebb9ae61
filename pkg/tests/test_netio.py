import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randcrn.deficiency import deficiency
from randcrn.model import ZERO, Complex, Reaction, ReactionNetwork
from randcrn.netio import NetworkSyntaxError, format_network, parse_network
from randcrn.sbm import Alpha, BlockModelParams, sample_network

from conftest import FIXTURES, random_network


def test_parse_two_species_text():
    g = parse_network("0 <-> S1 + S2\nS1 + S2 -> S2\nS2 -> 0\n2 S1 <-> 2 S2")
    assert len(g.complexes) == 5
    assert len(g.reactions) == 6
    assert deficiency(g).deficiency == 1


def test_parse_rejects_identical_sides():
    with pytest.raises(NetworkSyntaxError, match="identical"):
        parse_network("S1 -> S1")


def test_identical_sides_after_canonicalization():
    with pytest.raises(NetworkSyntaxError):
        parse_network("S1 + S2 -> S2 + S1")


def test_parse_empty():
    g = parse_network("")
    assert g.is_empty() and g.n_species == 0
    assert parse_network("# only a comment\n\n").is_empty()


def test_coefficients_and_comments():
    g = parse_network("2 S1 -> S1 + S2  # dimer splits\n")
    (r,) = g.reactions
    assert r.source == Complex.of(1, 1)
    assert r.product == Complex.of(1, 2)


def test_letter_names_in_first_appearance_order():
    g = parse_network("S + E <-> SE\n")
    assert g.n_species == 3
    assert Reaction(Complex.of(1, 2), Complex.of(3)) in g.reactions


def test_declared_species_fix_order_and_count():
    g = parse_network("species A B C D\nB -> 0\n")
    assert g.n_species == 4
    assert g.reactions == {Reaction(Complex.of(2), ZERO)}


def test_undeclared_species_is_error():
    with pytest.raises(NetworkSyntaxError) as err:
        parse_network("species A B\nA + C -> B\n")
    assert (err.value.line, err.value.column) == (2, 5)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("S1 -> S2\nS1 => S2\n", 2, 4),
        ("S1 +\n", 1, 5),
        ("S1 S2 -> 0\n", 1, 4),
        ("S1 -> S2 -> S3\n", 1, 10),
        ("S1 -> 0 S2\n", 1, 9),
        ("S1 -> S2\nspecies S1 S2\n", 2, 1),
    ],
)
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(NetworkSyntaxError) as err:
        parse_network(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_format_empty():
    assert format_network(ReactionNetwork(0)) == ""


def test_format_enzyme(enzyme):
    text = format_network(enzyme)
    lines = text.splitlines()
    # four reversible pairs
    assert lines == ["0 <-> S1", "0 <-> S2", "S3 <-> S1 + S2", "S3 <-> S2 + S4"]
    assert all("<->" in line for line in lines)
    assert text.endswith("\n")


def test_format_is_sorted_and_minimal():
    g = parse_network("S2 -> 0\n2 S1 <-> 2 S2\n0 -> S1 + S2\nS1 + S2 -> S2\n")
    assert format_network(g) == "0 -> S1 + S2\nS2 -> 0\n2 S1 <-> 2 S2\nS1 + S2 -> S2\n"


def test_format_keeps_unused_trailing_species():
    g = ReactionNetwork(4, frozenset([Reaction(ZERO, Complex.of(1))]))
    text = format_network(g)
    assert text.startswith("species S1 S2 S3 S4\n")
    assert parse_network(text) == g


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.crn")), ids=lambda p: p.stem)
def test_format_is_idempotent_on_fixtures(path):
    once = format_network(parse_network(path.read_text()))
    assert format_network(parse_network(once)) == once


def test_roundtrip_random_networks(rng):
    for _ in range(300):
        g = random_network(rng, n_max=8, r_max=12, max_order=3)
        assert parse_network(format_network(g)) == g


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 15), st.floats(0.0, 0.3), st.integers(0, 2 ** 32))
def test_roundtrip_generated_networks(n, p, seed):
    g, _ = sample_network(BlockModelParams(n, p, Alpha.of(0, 0, 0, 0)), seed)
    assert parse_network(format_network(g)) == g
