"""Tokenizer shared by the Turtle, rule and query parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

# token kinds
IRIREF = "IRIREF"
PNAME = "PNAME"
BNODE = "BNODE"
VAR = "VAR"
STRING = "STRING"
AT = "AT"  # @prefix / @base / language tag
DTYPE = "^^"
INTEGER = "INTEGER"
DECIMAL = "DECIMAL"
DOUBLE = "DOUBLE"
NAME = "NAME"
PUNCT = "PUNCT"
EOF = "EOF"


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    value: object
    line: int
    column: int
    offset: int

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.column, self.text, self.offset)


_PN_PREFIX = r"(?:[A-Za-z][A-Za-z0-9_\-.]*[A-Za-z0-9_\-]|[A-Za-z])?"
_PN_LOCAL = r"(?:[A-Za-z0-9_:]|%[0-9A-Fa-f]{2})(?:[A-Za-z0-9_\-.:]|%[0-9A-Fa-f]{2})*"
_RE_PNAME = re.compile(rf"({_PN_PREFIX}):({_PN_LOCAL})?")
_RE_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_RE_BNODE = re.compile(r"_:([A-Za-z0-9_](?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?)")
_RE_VAR = re.compile(r"[?$]([A-Za-z0-9_]+)")
_RE_AT = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_RE_NUMBER = re.compile(
    r"[+-]?(?:(?P<dbl>(?:[0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)[eE][+-]?[0-9]+)|(?P<dec>[0-9]*\.[0-9]+)|(?P<int>[0-9]+))"
)
_RE_IRI = re.compile(r"<([^<>\"{}|^`\\\x00-\x20]*)>")
_STRING_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}

PUNCTUATION = ("->", ".", ";", ",", "[", "]", "(", ")", "{", "}", "^", "*")


class Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int) -> None:
        chunk = self.text[self.pos : self.pos + n]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = n - chunk.rfind("\n")
        else:
            self.col += n
        self.pos += n

    def _error(self, message: str, token: str = "") -> ParseError:
        return ParseError(message, self.line, self.col, token, self.pos)

    def _skip_space(self) -> None:
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c in " \t\r\n":
                self._advance(1)
            elif c == "#":
                end = text.find("\n", self.pos)
                self._advance((len(text) if end < 0 else end) - self.pos)
            else:
                break

    def tokens(self) -> list[Token]:
        out = []
        while True:
            tok = self.next()
            out.append(tok)
            if tok.kind == EOF:
                return out

    def next(self) -> Token:
        self._skip_space()
        text, pos = self.text, self.pos
        line, col = self.line, self.col
        if pos >= len(text):
            return Token(EOF, "", None, line, col, pos)

        def make(kind: str, length: int, value: object = None) -> Token:
            tok = Token(kind, text[pos : pos + length], value, line, col, pos)
            self._advance(length)
            return tok

        c = text[pos]
        if c == "<":
            m = _RE_IRI.match(text, pos)
            if not m:
                raise self._error("malformed IRI reference", c)
            iri = m.group(1)
            if ":" not in iri:
                raise self._error(f"relative IRI <{iri}> is not supported (no base resolution)", m.group(0))
            return make(IRIREF, m.end() - pos, iri)
        if c in "\"'":
            return self._string(line, col)
        if c == "_" and text.startswith("_:", pos):
            m = _RE_BNODE.match(text, pos)
            if not m:
                raise self._error("malformed blank node label", "_:")
            return make(BNODE, m.end() - pos, m.group(1))
        if c in "?$":
            m = _RE_VAR.match(text, pos)
            if not m:
                raise self._error("malformed variable", c)
            return make(VAR, m.end() - pos, m.group(1))
        if c == "@":
            m = _RE_AT.match(text, pos)
            if not m:
                raise self._error("malformed '@' keyword or language tag", c)
            return make(AT, m.end() - pos, m.group(1))
        if text.startswith("^^", pos):
            return make(DTYPE, 2)
        if c.isdigit() or (c in "+-." and pos + 1 < len(text) and (text[pos + 1].isdigit() or text[pos + 1] == ".")):
            m = _RE_NUMBER.match(text, pos)
            if m:
                kind = DOUBLE if m.group("dbl") else DECIMAL if m.group("dec") else INTEGER
                return make(kind, m.end() - pos, m.group(0))
        if c.isalpha() or c == ":":
            m = _RE_PNAME.match(text, pos)
            if m:
                prefix = m.group(1)
                local = m.group(2) or ""
                # a trailing '.' ends the statement, not the name
                stripped = local.rstrip(".")
                length = m.end() - pos - (len(local) - len(stripped))
                return make(PNAME, length, (prefix, stripped))
            m = _RE_NAME.match(text, pos)
            if m:
                return make(NAME, m.end() - pos, m.group(0))
        for p in PUNCTUATION:
            if text.startswith(p, pos):
                return make(PUNCT, len(p), p)
        raise self._error(f"unexpected character {c!r}", c)

    def _string(self, line: int, col: int) -> Token:
        text, start = self.text, self.pos
        quote = text[start]
        if text.startswith(quote * 3, start):
            raise self._error("long (triple-quoted) strings are not supported", quote * 3)
        i = start + 1
        chars = []
        while True:
            if i >= len(text):
                raise ParseError("unterminated string", line, col, text[start:i], start)
            c = text[i]
            if c == quote:
                i += 1
                break
            if c in "\r\n":
                raise ParseError("newline inside string", line, col, text[start:i], start)
            if c == "\\":
                if i + 1 >= len(text):
                    raise ParseError("unterminated escape", line, col, text[start:i], start)
                e = text[i + 1]
                if e in _STRING_ESCAPES:
                    chars.append(_STRING_ESCAPES[e])
                    i += 2
                    continue
                if e in "uU":
                    width = 4 if e == "u" else 8
                    digits = text[i + 2 : i + 2 + width]
                    if len(digits) != width or not all(d in "0123456789abcdefABCDEF" for d in digits):
                        raise ParseError("bad unicode escape", line, col, text[i : i + 2 + width], i)
                    chars.append(chr(int(digits, 16)))
                    i += 2 + width
                    continue
                raise ParseError(f"unknown escape \\{e}", line, col, text[i : i + 2], i)
            chars.append(c)
            i += 1
        tok = Token(STRING, text[start:i], "".join(chars), line, col, start)
        self._advance(i - start)
        return tok


class TokenStream:
    """Cursor over a token list with convenience expectations."""

    def __init__(self, text: str):
        self.toks = Lexer(text).tokens()
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.toks[self.i]

    def peek_at(self, k: int) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != EOF:
            self.i += 1
        return tok

    def at_punct(self, p: str) -> bool:
        tok = self.peek
        return tok.kind == PUNCT and tok.text == p

    def at_name(self, *names: str) -> bool:
        tok = self.peek
        return tok.kind == NAME and tok.text.upper() in {n.upper() for n in names}

    def expect_punct(self, p: str) -> Token:
        tok = self.peek
        if tok.kind != PUNCT or tok.text != p:
            raise tok.error(f"expected {p!r}, found {describe(tok)}")
        return self.next()


def describe(tok: Token) -> str:
    if tok.kind == EOF:
        return "end of input"
    return repr(tok.text)
