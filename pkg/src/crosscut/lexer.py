"""Tokenizer for .cc scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .nodes import SourceSpan

KEYWORDS = frozenset(
    [
        "fn",
        "let",
        "if",
        "else",
        "while",
        "return",
        "throw",
        "try",
        "catch",
        "true",
        "false",
        "nil",
        "import",
    ]
)

# Longest-first so "<=" wins over "<".
PUNCT = (
    "==",
    "!=",
    "<=",
    ">=",
    "&&",
    "||",
    "{",
    "}",
    "(",
    ")",
    "[",
    "]",
    ",",
    ";",
    ":",
    ".",
    "=",
    "+",
    "-",
    "*",
    "/",
    "%",
    "!",
    "<",
    ">",
)

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True, slots=True)
class Token:
    type: str  # "ident" | "int" | "float" | "string" | "#example" | "eof" | keyword | punct
    value: object
    line: int
    col: int
    end_line: int
    end_col: int

    def span(self, module_path):
        return SourceSpan(module_path, self.line, self.col, self.end_line, self.end_col)


def tokenize(text, module_path):
    """Returns a list of Tokens ending with an "eof" token. Raises ParseError."""
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def err(message, l, c):
        span = SourceSpan(module_path, l, c, l, c)
        raise ParseError(message, span)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue

        start_line, start_col = line, col

        if ch == "#":
            # only the #example marker starts with '#'
            if text.startswith("#example", i):
                i += 8
                col += 8
                tokens.append(Token("#example", "#example", start_line, start_col, line, col))
                continue
            err("unexpected '#'", line, col)

        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            lexeme = text[i:j]
            col += j - i
            i = j
            if is_float:
                tokens.append(Token("float", float(lexeme), start_line, start_col, line, col))
            else:
                tokens.append(Token("int", int(lexeme), start_line, start_col, line, col))
            continue

        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            col += j - i
            i = j
            ttype = word if word in KEYWORDS else "ident"
            tokens.append(Token(ttype, word, start_line, start_col, line, col))
            continue

        if ch == '"':
            j = i + 1
            c = col + 1
            parts = []
            while True:
                if j >= n or text[j] == "\n":
                    err("unterminated string literal", start_line, start_col)
                cj = text[j]
                if cj == '"':
                    j += 1
                    c += 1
                    break
                if cj == "\\":
                    if j + 1 >= n:
                        err("unterminated string literal", start_line, start_col)
                    esc = text[j + 1]
                    if esc not in _ESCAPES:
                        err(f"unknown escape '\\{esc}'", line, c)
                    parts.append(_ESCAPES[esc])
                    j += 2
                    c += 2
                    continue
                parts.append(cj)
                j += 1
                c += 1
            i = j
            col = c
            tokens.append(Token("string", "".join(parts), start_line, start_col, line, col))
            continue

        if ch == "@":
            if text.startswith("@{", i):
                i += 2
                col += 2
                tokens.append(Token("@{", "@{", start_line, start_col, line, col))
                continue
            err("expected '{' after '@'", line, col)

        for p in PUNCT:
            if text.startswith(p, i):
                i += len(p)
                col += len(p)
                tokens.append(Token(p, p, start_line, start_col, line, col))
                break
        else:
            err(f"unexpected character {ch!r}", line, col)

    tokens.append(Token("eof", None, line, col, line, col))
    return tokens
