"""Recursive-descent parser for .chase scripts.

Grammar::

    script    := { NEWLINE } [ statement { NEWLINE { NEWLINE } statement } ] { NEWLINE }
    statement := [ arrayLhs "=" ] chain
    arrayLhs  := ("task" | "tasks") "[" INT "]" [ "[" INT "]" ]
    chain     := baseCmd { "." modifier }
    baseCmd   := verb "(" argList ")"
    modifier  := "do" "(" argList ")" | "characterName" "(" argList ")"
    argList   := arg { "," arg }
    arg       := NUMBER | WORD { WORD }

Verbs, modifiers and the task array names are case-insensitive. On an error
the parser records a diagnostic, skips to the next statement separator and
keeps going, so one run reports every broken line.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, ParseError, SourceSpan
from .lexer import Token, TokenKind, tokenize
from .nodes import (
    BARE,
    DO,
    GOTO,
    INTERACT,
    ArgValue,
    BaseCommand,
    CommandChain,
    Number,
    ScriptAst,
    Statement,
    Words,
)

_VERBS = {"do": DO, "goto": GOTO, "interactwith": INTERACT}
_ARRAY_NAMES = ("task", "tasks")


class _Abort(Exception):
    def __init__(self, code: str, message: str, span: SourceSpan) -> None:
        super().__init__(message)
        self.diagnostic = Diagnostic(code, message, span)


def _join_spans(first: SourceSpan, last: SourceSpan) -> SourceSpan:
    if first.line != last.line:
        return first
    return SourceSpan(first.line, first.column, last.column + last.length - first.column)


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at_end_of_statement(self) -> bool:
        tok = self.peek()
        return tok is None or tok.kind is TokenKind.NEWLINE

    def here(self) -> SourceSpan:
        """Span of the current token, or of the last token at end of input."""
        tok = self.peek()
        if tok is None:
            tok = self.tokens[-1]
        return tok.span

    def describe(self) -> str:
        tok = self.peek()
        if tok is None:
            return "end of input"
        if tok.kind is TokenKind.NEWLINE:
            return "end of statement"
        return repr(tok.text)

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            raise _Abort("UNEXPECTED-TOKEN", f"expected {what}, found {self.describe()}", self.here())
        return self.advance()

    def skip_statement(self) -> None:
        while not self.at_end_of_statement():
            self.pos += 1

    # -- grammar -------------------------------------------------------

    def script(self) -> ScriptAst:
        statements: list[Statement] = []
        errors: list[Diagnostic] = []
        seen_cells: set[tuple[int, ...]] = set()
        mode: str | None = None

        while self.peek() is not None:
            if self.peek().kind is TokenKind.NEWLINE:
                self.pos += 1
                continue
            try:
                stmt = self.statement()
            except _Abort as exc:
                errors.append(exc.diagnostic)
                self.skip_statement()
                continue
            if mode is None:
                mode = stmt.mode
            if stmt.mode != mode:
                errors.append(
                    Diagnostic(
                        "MIXED-MODES",
                        f"{stmt.mode} statement in a {mode} script",
                        stmt.span,
                    )
                )
                continue
            if stmt.index:
                if stmt.index in seen_cells:
                    cell = "][".join(str(i) for i in stmt.index)
                    errors.append(
                        Diagnostic("DUPLICATE-CELL", f"task cell [{cell}] assigned twice", stmt.span)
                    )
                    continue
                seen_cells.add(stmt.index)
            statements.append(stmt)

        if errors:
            raise ParseError(errors)
        return ScriptAst(tuple(statements), mode or BARE)

    def statement(self) -> Statement:
        first = self.here()
        index: tuple[int, ...] = ()
        tok = self.peek()
        nxt = self.peek(1)
        if (
            tok.kind is TokenKind.WORD
            and tok.text.lower() in _ARRAY_NAMES
            and nxt is not None
            and nxt.kind is TokenKind.LBRACKET
        ):
            index = self.array_lhs()
        chain = self.chain()
        tok = self.peek()
        if tok is not None and tok.kind is not TokenKind.NEWLINE:
            if tok.kind is TokenKind.RPAREN:
                raise _Abort("UNBALANCED-PARENS", "unmatched ')'", tok.span)
            raise _Abort("UNEXPECTED-TOKEN", f"expected end of statement, found {tok.text!r}", tok.span)
        return Statement(chain, index, first)

    def array_lhs(self) -> tuple[int, ...]:
        self.advance()
        indices: list[int] = []
        while self.peek() is not None and self.peek().kind is TokenKind.LBRACKET:
            if len(indices) == 2:
                raise _Abort("UNEXPECTED-TOKEN", "task arrays have at most two indices", self.here())
            self.advance()
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.NUMBER:
                raise _Abort("BAD-INDEX", f"expected a task index, found {self.describe()}", self.here())
            self.advance()
            if "." in tok.text or int(tok.text) < 1:
                raise _Abort("BAD-INDEX", f"task index {tok.text} is not a positive integer", tok.span)
            indices.append(int(tok.text))
            self.expect(TokenKind.RBRACKET, "']'")
        self.expect(TokenKind.EQUALS, "'='")
        return tuple(indices)

    def chain(self) -> CommandChain:
        base = self.base_command()
        overlay: BaseCommand | None = None
        character: Words | None = None
        while self.peek() is not None and self.peek().kind is TokenKind.DOT:
            self.advance()
            name = self.expect(TokenKind.WORD, "a modifier name")
            key = name.text.lower()
            if key == "do":
                if base.verb == DO:
                    raise _Abort("CHAIN-ON-DO", "a do(...) command cannot carry a concurrent action", name.span)
                if overlay is not None:
                    raise _Abort("DUPLICATE-OVERLAY", "only one concurrent do(...) per command", name.span)
                overlay = BaseCommand(DO, self.arg_list(name), name.span)
            elif key == "charactername":
                if character is not None:
                    raise _Abort("DUPLICATE-CHARACTER", "characterName given twice", name.span)
                args = self.arg_list(name)
                if len(args) != 1 or not isinstance(args[0], Words):
                    raise _Abort("BAD-ARG", "characterName takes exactly one name", name.span)
                character = args[0]
            else:
                raise _Abort("UNKNOWN-MODIFIER", f"unknown modifier {name.text!r}", name.span)
        return CommandChain(base, overlay, character, base.span)

    def base_command(self) -> BaseCommand:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.WORD:
            raise _Abort("UNEXPECTED-TOKEN", f"expected a command, found {self.describe()}", self.here())
        verb = _VERBS.get(tok.text.lower())
        if verb is None:
            raise _Abort("UNKNOWN-VERB", f"unknown command {tok.text!r}", tok.span)
        self.advance()
        return BaseCommand(verb, self.arg_list(tok), tok.span)

    def arg_list(self, owner: Token) -> tuple[ArgValue, ...]:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.LPAREN:
            raise _Abort("UNEXPECTED-TOKEN", f"expected '(' after {owner.text}, found {self.describe()}", self.here())
        lparen = self.advance()
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.RPAREN:
            raise _Abort("EMPTY-ARGS", f"{owner.text}() needs at least one argument", tok.span)
        args = [self.arg(lparen)]
        while True:
            tok = self.peek()
            if tok is None or tok.kind is TokenKind.NEWLINE:
                raise _Abort("UNBALANCED-PARENS", "'(' is never closed", lparen.span)
            if tok.kind is TokenKind.RPAREN:
                self.advance()
                return tuple(args)
            if tok.kind is TokenKind.COMMA:
                self.advance()
                args.append(self.arg(lparen))
                continue
            raise _Abort("UNEXPECTED-TOKEN", f"expected ',' or ')', found {tok.text!r}", tok.span)

    def arg(self, lparen: Token) -> ArgValue:
        parts: list[Token] = []
        while self.peek() is not None and self.peek().kind in (TokenKind.WORD, TokenKind.NUMBER):
            parts.append(self.advance())
        if not parts:
            if self.at_end_of_statement():
                raise _Abort("UNBALANCED-PARENS", "'(' is never closed", lparen.span)
            raise _Abort("UNEXPECTED-TOKEN", f"expected an argument, found {self.describe()}", self.here())
        span = _join_spans(parts[0].span, parts[-1].span)
        if parts[0].kind is TokenKind.NUMBER:
            if len(parts) > 1:
                raise _Abort("BAD-ARG", "a number argument must stand alone", span)
            return Number(float(parts[0].text), span)
        if any(p.kind is TokenKind.NUMBER for p in parts):
            raise _Abort("BAD-ARG", "words and numbers must be separated by commas", span)
        return Words(tuple(p.text for p in parts), span)


def parse(tokens: list[Token]) -> ScriptAst:
    """Parse a token list into a :class:`ScriptAst`; raises :class:`ParseError`."""
    return _Parser(tokens).script()


def parse_source(source: str) -> ScriptAst:
    return parse(tokenize(source))
