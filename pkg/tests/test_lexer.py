import pytest

from chase.diagnostics import LexError
from chase.lexer import TokenKind, tokenize


def kinds(source):
    return [t.kind for t in tokenize(source)]


def test_smallest_command():
    toks = tokenize("do(jump)")
    assert [(t.kind, t.text) for t in toks] == [
        (TokenKind.WORD, "do"),
        (TokenKind.LPAREN, "("),
        (TokenKind.WORD, "jump"),
        (TokenKind.RPAREN, ")"),
    ]


def test_task_assignment_tokens():
    toks = tokenize("task[1] = do(wave hand, handR, 3)")
    assert [t.text for t in toks] == [
        "task", "[", "1", "]", "=", "do", "(", "wave", "hand", ",", "handR", ",", "3", ")",
    ]
    assert len(toks) == 14
    numbers = [t for t in toks if t.kind is TokenKind.NUMBER]
    assert [t.text for t in numbers] == ["1", "3"]
    assert [t.text for t in toks[7:9]] == ["wave", "hand"]


def test_comment_is_dropped():
    assert [(t.kind, t.text) for t in tokenize("do(jump) # greet")] == [
        (t.kind, t.text) for t in tokenize("do(jump)")
    ]


@pytest.mark.parametrize("sep", ["\n", ";"])
def test_separators_emit_newline(sep):
    assert kinds(f"do(a){sep}do(b)").count(TokenKind.NEWLINE) == 1


def test_spans_are_one_based():
    toks = tokenize("do(x)\n  goTo(ball, walk)")
    goto = toks[5]
    assert goto.text == "goTo"
    assert (goto.span.line, goto.span.column, goto.span.length) == (2, 3, 4)


def test_decimal_numbers():
    toks = tokenize("do(x, 2.75)")
    assert [t.text for t in toks if t.kind is TokenKind.NUMBER] == ["2.75"]


def test_trailing_dot_is_not_part_of_number():
    toks = tokenize("3.x")
    assert [t.kind for t in toks] == [TokenKind.NUMBER, TokenKind.DOT, TokenKind.WORD]


def test_illegal_characters_reported_with_spans():
    with pytest.raises(LexError) as info:
        tokenize("do(jump)\ndo(@, $)")
    spans = [(d.span.line, d.span.column) for d in info.value.diagnostics]
    assert spans == [(2, 4), (2, 7)]
    assert set(info.value.codes) == {"ILLEGAL-CHAR"}


def test_separators_reproduce_source():
    source = "task[2] = goTo(ball, walk).do(wave hand, handL)\ndo(jump)"
    toks = tokenize(source)
    lines = source.split("\n")
    for t in toks:
        if t.kind is TokenKind.NEWLINE:
            continue
        line = lines[t.span.line - 1]
        assert line[t.span.column - 1 : t.span.column - 1 + t.span.length] == t.text


def test_pure():
    s = "tasks[1][2] = goTo(target, run). characterName(characterB)"
    assert tokenize(s) == tokenize(s)
