"""Lexing: token kinds, byte spans, phrase merging, and bad input."""
from __future__ import annotations

from fractions import Fraction

from psl.ast import Size
from psl.diagnostics import E_BAD_CHAR, E_BAD_WORD, E_NUMBER_RANGE
from psl.lexer import TokenKind, tokenize


def kinds(text: str) -> list[TokenKind]:
    tokens, diagnostics = tokenize(text)
    assert not diagnostics, [d.to_dict() for d in diagnostics]
    return [t.kind for t in tokens]


def test_simple_sentence():
    tokens, diagnostics = tokenize("MS on Anna.")
    assert not diagnostics
    assert [t.kind for t in tokens] == [
        TokenKind.SIZE, TokenKind.ON, TokenKind.IDENT, TokenKind.PERIOD,
    ]
    assert tokens[0].value is Size.MS
    assert tokens[2].value == "Anna"
    assert [(t.start, t.end) for t in tokens] == [(0, 2), (3, 5), (6, 10), (10, 11)]


def test_keywords_are_case_insensitive_names_keep_spelling():
    tokens, _ = tokenize("ms ON anna")
    assert [t.kind for t in tokens] == [TokenKind.SIZE, TokenKind.ON, TokenKind.IDENT]
    assert tokens[2].value == "anna"


def test_long_size_forms_merge_to_one_token():
    for text, size in [
        ("medium long shot", Size.MLS),
        ("medium shot", Size.MS),
        ("long shot", Size.LS),
        ("very long shot", Size.VLS),
        ("close-up", Size.CU),
        ("close up", Size.CU),
        ("big close-up", Size.BCU),
        ("big close up", Size.BCU),
        ("medium close-up", Size.MCU),
        ("medium close up", Size.MCU),
    ]:
        tokens, diagnostics = tokenize(text)
        assert not diagnostics
        assert len(tokens) == 1 and tokens[0].kind is TokenKind.SIZE, text
        assert tokens[0].value is size
        assert tokens[0].lexeme == text  # original spelling survives


def test_longest_phrase_wins():
    # "medium close up" must not split into "medium" + "close up"
    tokens, _ = tokenize("medium close up on Anna")
    assert tokens[0].kind is TokenKind.SIZE and tokens[0].value is Size.MCU


def test_join_phrases():
    assert kinds("Cut to") == [TokenKind.CUT_TO]
    assert kinds("Dissolve to") == [TokenKind.DISSOLVE_TO]
    assert kinds("continue to") == [TokenKind.CONTINUE_TO]


def test_phrase_fragments_are_reserved_not_names():
    tokens, diagnostics = tokenize("cut shot medium")
    assert not diagnostics
    assert all(t.kind is TokenKind.RESERVED for t in tokens)


def test_fraction_token():
    tokens, diagnostics = tokenize("at 1/3")
    assert not diagnostics
    assert tokens[1].kind is TokenKind.FRACTION
    assert tokens[1].value == Fraction(1, 3)


def test_bare_integer_is_an_error():
    tokens, diagnostics = tokenize("at 12 ")
    assert [d.code for d in diagnostics] == [E_BAD_CHAR]
    assert "expected a fraction like 1/3" in diagnostics[0].message
    assert [t.kind for t in tokens] == [TokenKind.AT]


def test_zero_denominator():
    _, diagnostics = tokenize("at 1/0")
    assert [d.code for d in diagnostics] == [E_NUMBER_RANGE]
    assert diagnostics[0].message == "fraction denominator is zero"


def test_bad_characters_merge_into_one_run():
    tokens, diagnostics = tokenize("MS @@% on")
    assert [d.code for d in diagnostics] == [E_BAD_CHAR]
    assert (diagnostics[0].span.start, diagnostics[0].span.end) == (3, 6)
    assert [t.kind for t in tokens] == [TokenKind.SIZE, TokenKind.ON]


def test_hyphenated_non_keyword_is_rejected():
    tokens, diagnostics = tokenize("Anna stage-left")
    assert [d.code for d in diagnostics] == [E_BAD_WORD]
    assert "stage-left" in diagnostics[0].message
    assert [t.kind for t in tokens] == [TokenKind.IDENT]


def test_comment_lines_are_skipped():
    with_comment = "# a note\nMS on Anna.\n"
    without = "MS on Anna.\n"
    got = [(t.kind, t.lexeme) for t in tokenize(with_comment)[0]]
    want = [(t.kind, t.lexeme) for t in tokenize(without)[0]]
    assert got == want


def test_hash_mid_line_is_a_bad_character():
    _, diagnostics = tokenize("MS # x on Anna.")
    assert any(d.code == E_BAD_CHAR for d in diagnostics)


def test_spans_are_byte_offsets_for_non_ascii():
    text = "MS on Zoé."
    tokens, diagnostics = tokenize(text)
    # "Zo" is a name, the accented letter is outside the alphabet
    assert [d.code for d in diagnostics] == [E_BAD_CHAR]
    assert (diagnostics[0].span.start, diagnostics[0].span.end) == (8, 10)
    period = tokens[-1]
    assert (period.start, period.end) == (10, 11)
    raw = text.encode("utf-8")
    for t in tokens:
        assert raw[t.start:t.end].decode("utf-8") == t.lexeme


def test_lexemes_reproduce_their_source_slice():
    text = "MCU on Anna 3/4 left, LS on Boris at 2/5, pan with Anna.\nCut to CU on Carla."
    tokens, diagnostics = tokenize(text)
    assert not diagnostics
    raw = text.encode("utf-8")
    for t in tokens:
        assert raw[t.start:t.end].decode("utf-8") == t.lexeme
    # spans come in order and never overlap
    offsets = [(t.start, t.end) for t in tokens]
    assert offsets == sorted(offsets)
    assert all(a[1] <= b[0] for a, b in zip(offsets, offsets[1:]))
