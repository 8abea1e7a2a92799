"""Tokenizer for component (.arc) and variant/configuration (.archv) files."""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, Location, error

KEYWORDS = frozenset({
    "package", "component", "port", "in", "out", "connect", "autoconnect",
    "variationPoint", "variant", "realizes", "requires", "excludes",
    "constraint", "realizedBy", "variantConfig", "abstract", "extends", "for",
})

# longest first, so "->" and ".." win over "." and "-"
SYMBOLS = ("->", "..", "{", "}", "(", ")", "[", "]", ";", ",", ".", ":", "~")

IDENT = "IDENT"
INT = "INT"
EOF = "EOF"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, EOF, a keyword, or a symbol
    value: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of file"
        if self.kind in (IDENT, INT):
            return f"'{self.value}'"
        return f"'{self.kind}'"


def tokenize(text: str, path: str = "<memory>") -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for ch in text[i:i + k]:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += k

    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f":
            advance(1)
            continue
        if text.startswith("//", i):
            end = text.find("\n", i)
            advance((n if end < 0 else end) - i)
            continue
        if text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                diags.append(error("SYN03", "unterminated block comment", Location(path, line, col)))
                advance(n - i)
                break
            advance(end + 2 - i)
            continue
        start_line, start_col = line, col
        if ch.isascii() and ch.isalpha():
            j = i + 1
            while j < n and text[j].isascii() and text[j].isalnum():
                j += 1
            word = text[i:j]
            tokens.append(Token(word if word in KEYWORDS else IDENT, word, start_line, start_col))
            advance(j - i)
            continue
        if ch.isascii() and ch.isdigit():
            j = i + 1
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token(INT, text[i:j], start_line, start_col))
            advance(j - i)
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, start_line, start_col))
                advance(len(sym))
                break
        else:
            diags.append(error("SYN02", f"unexpected character {ch!r}", Location(path, start_line, start_col)))
            advance(1)
    tokens.append(Token(EOF, "", line, col))
    return tokens, diags
