import json

import pytest

from starlap import (
    build_graph,
    detect_stars,
    emit_dot,
    graph_summary,
    parse_graph_file,
    reduce_star,
    sign_bipartition,
    to_json,
    write_graph_file,
)
from starlap.errors import NonPositiveWeightError, ParseError


class TestParse:
    def test_single_edge(self):
        g = parse_graph_file("n 2\n0 1 1.0\n")
        assert g.n == 2 and g.edges == ((0, 1, 1.0),)

    def test_comments_and_blanks(self):
        text = "# header comment\n\nn 3\n# edge below\n0 1 2.5\n"
        g = parse_graph_file(text)
        assert g.edges == ((0, 1, 2.5),)

    def test_mass_lines(self):
        g = parse_graph_file("n 2\n0 1 1\nm 0 1.5\n")
        assert g.mass == (1.5, 1.0)

    def test_negative_weight_propagates(self):
        with pytest.raises(NonPositiveWeightError):
            parse_graph_file("n 2\n0 1 -1\n")

    def test_missing_header(self):
        with pytest.raises(ParseError) as err:
            parse_graph_file("0 1 1.0\n")
        assert err.value.line_number == 1

    def test_bad_edge_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_graph_file("n 2\n0 1\n")
        assert err.value.line_number == 2

    def test_mass_out_of_range(self):
        with pytest.raises(ParseError):
            parse_graph_file("n 2\n0 1 1\nm 7 2.0\n")

    def test_empty_graph(self):
        g = parse_graph_file("n 3\n")
        assert g.n == 3 and g.edges == ()


class TestWrite:
    def test_single_edge_canonical(self):
        g = build_graph(2, [(0, 1, 1.0)])
        assert write_graph_file(g) == "n 2\n0 1 1\n"

    def test_empty(self):
        assert write_graph_file(build_graph(3, [])) == "n 3\n"

    def test_reduced_masses_serialized(self, f1):
        r = reduce_star(f1, detect_stars(f1)[0], 1)
        text = write_graph_file(r.reduced)
        assert "m 0 1.5" in text and "m 1 1.5" in text

    def test_round_trip(self, f1, f2, f3, f4):
        for g in (f1, f2, f3, f4):
            assert parse_graph_file(write_graph_file(g)) == g

    def test_round_trip_with_masses(self, f1):
        r = reduce_star(f1, detect_stars(f1)[0], 2)
        assert parse_graph_file(write_graph_file(r.reduced)) == r.reduced

    def test_twelve_digit_weights(self):
        g = build_graph(2, [(0, 1, 0.123456789012)])
        assert parse_graph_file(write_graph_file(g)) == g


class TestDot:
    def test_edge_labels(self):
        g = build_graph(2, [(0, 1, 1.0)])
        assert '0 -- 1 [label="1"]' in emit_dot(g)

    def test_partition_colors(self, f4):
        dot = emit_dot(f4, sign_bipartition(f4))
        assert "0 [fillcolor=1];" in dot and "1 [fillcolor=1];" in dot
        assert "2 [fillcolor=2];" in dot and "3 [fillcolor=2];" in dot

    def test_no_partition_uncolored(self, f4):
        dot = emit_dot(f4)
        assert "fillcolor" not in dot
        assert "  2;" in dot


class TestJson:
    def test_round_trip_and_stability(self, f1):
        payload = {"summary": graph_summary(f1), "zeta": 1, "alpha": [3, 2]}
        first = to_json(payload)
        second = to_json(json.loads(first))
        assert first == second
        assert json.loads(first)["summary"]["vertices"] == 5

    def test_sorted_keys(self):
        text = to_json({"b": 1, "a": 2})
        assert text.index('"a"') < text.index('"b"')
