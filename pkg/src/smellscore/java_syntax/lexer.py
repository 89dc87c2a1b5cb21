"""Lossless Java lexer.

Produces a token stream that retains whitespace and comments so that the
concatenation of all lexemes reproduces the input byte for byte.  Columns are
1-based and count a tab as a single column; span ends are exclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    NUMBER = "number"
    STRING = "string"
    CHAR = "char"
    BOOL = "bool"
    NULL = "null"
    OPERATOR = "operator"
    SEPARATOR = "separator"
    LINE_COMMENT = "line_comment"
    BLOCK_COMMENT = "block_comment"
    JAVADOC = "javadoc"
    WHITESPACE = "whitespace"


COMMENT_KINDS = (TokenKind.LINE_COMMENT, TokenKind.BLOCK_COMMENT, TokenKind.JAVADOC)

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

PRIMITIVE_TYPES = frozenset("boolean byte char short int long float double".split())

# Longest first so maximal munch falls out of a linear scan.
OPERATORS = (
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::",
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>",
    "=", "+", "-", "*", "/", "%", "<", ">", "!", "~", "&", "|", "^", "?", ":",
)

SEPARATORS = frozenset("(){}[];,.@")


@dataclass(frozen=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.start_line, self.start_col, self.end_line, self.end_col)


@dataclass
class SourceFile:
    """A Java source text plus the offsets at which each line starts."""

    path: str
    text: str
    line_index: list[int] = field(default_factory=list)

    @classmethod
    def from_text(cls, path: str, text: str) -> "SourceFile":
        index = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                index.append(i + 1)
        return cls(path=path, text=text, line_index=index)

    def line_text(self, line: int) -> str:
        """Return the text of a 1-based line without its newline."""
        start = self.line_index[line - 1]
        end = self.line_index[line] - 1 if line < len(self.line_index) else len(self.text)
        return self.text[start:end].rstrip("\n")

    @property
    def line_count(self) -> int:
        return len(self.line_index)


@dataclass
class Token:
    kind: TokenKind
    lexeme: str
    span: Span
    radix: int | None = None  # numeric literals only
    suffix: str | None = None  # numeric literals only

    @property
    def is_trivia(self) -> bool:
        return self.kind is TokenKind.WHITESPACE or self.kind in COMMENT_KINDS

    def __repr__(self) -> str:  # pragma: no cover
        return f"Token({self.kind.value}, {self.lexeme!r}, {self.span.as_tuple()})"


class LexError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at ({line},{col})")
        self.message = message
        self.line = line
        self.col = col


_HEX_DIGITS = set("0123456789abcdefABCDEF_")
_NUM_SUFFIXES = set("lLfFdD")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self, count: int = 1) -> str:
        taken = self.text[self.pos : self.pos + count]
        for ch in taken:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += count
        return taken

    def mark(self) -> tuple[int, int, int]:
        return (self.pos, self.line, self.col)

    def span_from(self, mark: tuple[int, int, int]) -> Span:
        return Span(mark[1], mark[2], self.line, self.col)


def tokenize(source: SourceFile) -> list[Token]:
    """Lex a source file into a lossless token list.

    Raises LexError for an unterminated string, char, or block comment and for
    characters outside the Java lexical grammar.
    """
    sc = _Scanner(source.text)
    tokens: list[Token] = []

    while not sc.eof():
        start = sc.mark()
        ch = sc.peek()

        if ch in " \t\r\n\f":
            while not sc.eof() and sc.peek() in " \t\r\n\f":
                sc.advance()
            tokens.append(Token(TokenKind.WHITESPACE, source.text[start[0] : sc.pos], sc.span_from(start)))
            continue

        if ch == "/" and sc.peek(1) == "/":
            while not sc.eof() and sc.peek() != "\n":
                sc.advance()
            tokens.append(Token(TokenKind.LINE_COMMENT, source.text[start[0] : sc.pos], sc.span_from(start)))
            continue

        if ch == "/" and sc.peek(1) == "*":
            kind = TokenKind.JAVADOC if sc.peek(2) == "*" and sc.peek(3) != "/" else TokenKind.BLOCK_COMMENT
            sc.advance(2)
            closed = False
            while not sc.eof():
                if sc.peek() == "*" and sc.peek(1) == "/":
                    sc.advance(2)
                    closed = True
                    break
                sc.advance()
            if not closed:
                raise LexError("unterminated block comment", start[1], start[2])
            tokens.append(Token(kind, source.text[start[0] : sc.pos], sc.span_from(start)))
            continue

        if ch == '"':
            sc.advance()
            while True:
                if sc.eof() or sc.peek() == "\n":
                    raise LexError("unterminated string literal", start[1], start[2])
                c = sc.advance()
                if c == "\\":
                    if sc.eof():
                        raise LexError("unterminated string literal", start[1], start[2])
                    sc.advance()
                elif c == '"':
                    break
            tokens.append(Token(TokenKind.STRING, source.text[start[0] : sc.pos], sc.span_from(start)))
            continue

        if ch == "'":
            sc.advance()
            while True:
                if sc.eof() or sc.peek() == "\n":
                    raise LexError("unterminated char literal", start[1], start[2])
                c = sc.advance()
                if c == "\\":
                    if sc.eof():
                        raise LexError("unterminated char literal", start[1], start[2])
                    sc.advance()
                elif c == "'":
                    break
            tokens.append(Token(TokenKind.CHAR, source.text[start[0] : sc.pos], sc.span_from(start)))
            continue

        if ch.isdigit() or (ch == "." and sc.peek(1).isdigit()):
            tokens.append(_scan_number(sc, source, start))
            continue

        if ch.isalpha() or ch == "_" or ch == "$":
            while not sc.eof() and (sc.peek().isalnum() or sc.peek() in "_$"):
                sc.advance()
            word = source.text[start[0] : sc.pos]
            span = sc.span_from(start)
            if word in ("true", "false"):
                tokens.append(Token(TokenKind.BOOL, word, span))
            elif word == "null":
                tokens.append(Token(TokenKind.NULL, word, span))
            elif word in KEYWORDS:
                tokens.append(Token(TokenKind.KEYWORD, word, span))
            else:
                tokens.append(Token(TokenKind.IDENTIFIER, word, span))
            continue

        if ch in SEPARATORS:
            if ch == "." and sc.peek(1) == "." and sc.peek(2) == ".":
                sc.advance(3)
                tokens.append(Token(TokenKind.OPERATOR, "...", sc.span_from(start)))
            else:
                sc.advance()
                tokens.append(Token(TokenKind.SEPARATOR, ch, sc.span_from(start)))
            continue

        matched = False
        for op in OPERATORS:
            if source.text.startswith(op, sc.pos):
                sc.advance(len(op))
                tokens.append(Token(TokenKind.OPERATOR, op, sc.span_from(start)))
                matched = True
                break
        if matched:
            continue

        raise LexError(f"illegal character {ch!r}", start[1], start[2])

    return tokens


def _scan_number(sc: _Scanner, source: SourceFile, start: tuple[int, int, int]) -> Token:
    radix = 10
    is_float = False

    if sc.peek() == "0" and sc.peek(1) in ("x", "X"):
        radix = 16
        sc.advance(2)
        while not sc.eof() and sc.peek() in _HEX_DIGITS:
            sc.advance()
    elif sc.peek() == "0" and sc.peek(1) in ("b", "B"):
        radix = 2
        sc.advance(2)
        while not sc.eof() and sc.peek() in "01_":
            sc.advance()
    else:
        digits_before = 0
        while not sc.eof() and (sc.peek().isdigit() or sc.peek() == "_"):
            sc.advance()
            digits_before += 1
        if sc.peek() == "." and (sc.peek(1).isdigit() or digits_before):
            is_float = True
            sc.advance()
            while not sc.eof() and (sc.peek().isdigit() or sc.peek() == "_"):
                sc.advance()
        if sc.peek() in ("e", "E") and (sc.peek(1).isdigit() or (sc.peek(1) in "+-" and sc.peek(2).isdigit())):
            is_float = True
            sc.advance()
            if sc.peek() in "+-":
                sc.advance()
            while not sc.eof() and sc.peek().isdigit():
                sc.advance()
        if not is_float and digits_before > 1 and source.text[start[0]] == "0":
            body = source.text[start[0] : sc.pos]
            if all(c in "01234567_" for c in body[1:]):
                radix = 8

    suffix = None
    if sc.peek() in _NUM_SUFFIXES:
        suffix = sc.advance()
        if suffix in "fFdD":
            is_float = True

    lexeme = source.text[start[0] : sc.pos]
    if is_float:
        radix = 10
    return Token(TokenKind.NUMBER, lexeme, sc.span_from(start), radix=radix, suffix=suffix)


def significant(tokens: list[Token]) -> list[Token]:
    """Drop whitespace and comment tokens."""
    return [t for t in tokens if not t.is_trivia]
