"""Text formats: .pbx codes, families, flip traces, error reporting."""

import pytest
from hypothesis import given, settings

from polybox.alphabet import Alphabet, STAR
from polybox.core import make_code
from polybox.catalog import example_pair, example_trace
from polybox.moves import replay
from polybox.pbxio import (
    ParseError,
    format_code,
    format_family,
    format_trace,
    format_word,
    parse_code,
    parse_family,
    parse_trace,
    parse_word,
)

from strategies import codes


class TestWords:
    def test_parse_simple(self):
        assert parse_word("ab'c") == (0, 3, 4)

    def test_round_trip(self):
        for text in ("a", "a'b'c'd", "hh'", "bbbbb"):
            assert format_word(parse_word(text)) == text

    def test_star_needs_permission(self):
        with pytest.raises(ParseError):
            parse_word("a*b")
        assert parse_word("a*b", allow_star=True) == (0, STAR, 2)

    def test_garbage_rejected(self):
        for bad in ("", "z", "a''", "'a"):
            with pytest.raises(ParseError):
                parse_word(bad)


class TestCodes:
    @given(codes(min_size=1))
    @settings(max_examples=50)
    def test_round_trip(self, data):
        _, code = data
        if not code:
            return
        parsed_alphabet, parsed = parse_code(format_code(code))
        assert parsed == code

    def test_comments_and_blank_lines(self):
        text = "# heading\n\naa\n# middle\naa'\n"
        _, code = parse_code(text)
        assert code == make_code([(0, 0), (0, 1)])

    def test_alphabet_inferred(self):
        alphabet, _ = parse_code("ac\na'c\n")
        assert alphabet == Alphabet(3)

    def test_duplicate_reported_with_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_code("aa\naa'\naa\n")

    def test_dimension_mismatch_reported(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_code("aa\na\n")

    def test_non_code_rejected(self):
        with pytest.raises(ParseError, match="dichotomous"):
            parse_code("aa\nab\n")

    def test_empty_rejected(self):
        with pytest.raises(ParseError, match="no words"):
            parse_code("# nothing here\n")


class TestFamilies:
    def test_round_trip(self):
        first, second = example_pair()
        text = format_family([first, second], header="both")
        _, family = parse_family(text)
        assert family == (first, second)

    def test_empty_rejected(self):
        with pytest.raises(ParseError):
            parse_family("---\n---\n")


class TestTraces:
    def test_bundled_trace_round_trips(self):
        trace = example_trace()
        assert parse_trace(format_trace(trace)) == trace

    def test_replay_after_round_trip(self):
        first, second = example_pair()
        trace = parse_trace(format_trace(example_trace()))
        assert replay(first, trace) == second

    def test_direction_is_one_based_in_text(self):
        line = format_trace(example_trace()[:1])
        assert line.startswith("2: ")

    def test_bad_direction_rejected(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_trace("3: aa aa' -> ac ac'\n")

    def test_mismatched_replacement_rejected(self):
        with pytest.raises(ParseError):
            parse_trace("2: aa aa' -> ac bc'\n")
