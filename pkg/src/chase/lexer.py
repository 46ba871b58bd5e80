"""Tokenizer for .chase scripts.

Whitespace other than newlines only separates tokens. ``#`` starts a comment
that runs to the end of the line. Both a newline and ``;`` produce a NEWLINE
token, which the parser treats as a statement separator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagnostics import Diagnostic, LexError, SourceSpan


class TokenKind(enum.Enum):
    WORD = "identifier-word"
    NUMBER = "number"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    DOT = "."
    EQUALS = "="
    LBRACKET = "["
    RBRACKET = "]"
    NEWLINE = "newline"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.text!r}, {self.span})"


_PUNCT = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    ".": TokenKind.DOT,
    "=": TokenKind.EQUALS,
    "[": TokenKind.LBRACKET,
    "]": TokenKind.RBRACKET,
}


def _is_word_start(ch: str) -> bool:
    return ch == "_" or (ch.isascii() and ch.isalpha())


def _is_word_char(ch: str) -> bool:
    return ch == "_" or (ch.isascii() and ch.isalnum())


def tokenize(source: str) -> list[Token]:
    """Split script text into tokens.

    Raises:
        LexError: one diagnostic per illegal character, all reported at once.
    """
    tokens: list[Token] = []
    errors: list[Diagnostic] = []
    line, col = 1, 1
    i, n = 0, len(source)

    while i < n:
        ch = source[i]
        if ch == "\n" or ch == ";":
            tokens.append(Token(TokenKind.NEWLINE, ch, SourceSpan(line, col)))
            i += 1
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        elif ch in " \t\r\f\v":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, SourceSpan(line, col)))
            i += 1
            col += 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and source[j].isascii() and source[j].isdigit():
                j += 1
            # a fractional part needs at least one digit after the dot
            if j + 1 < n and source[j] == "." and source[j + 1].isascii() and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isascii() and source[j].isdigit():
                    j += 1
            text = source[i:j]
            tokens.append(Token(TokenKind.NUMBER, text, SourceSpan(line, col, len(text))))
            col += j - i
            i = j
        elif _is_word_start(ch):
            j = i + 1
            while j < n and _is_word_char(source[j]):
                j += 1
            text = source[i:j]
            tokens.append(Token(TokenKind.WORD, text, SourceSpan(line, col, len(text))))
            col += j - i
            i = j
        else:
            errors.append(
                Diagnostic("ILLEGAL-CHAR", f"illegal character {ch!r}", SourceSpan(line, col))
            )
            i += 1
            col += 1

    if errors:
        raise LexError(errors)
    return tokens
