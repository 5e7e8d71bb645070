"""Tokenizer shared by the model and formula parsers."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SourceSpan

KEYWORDS = frozenset({
    "sort", "act", "map", "eqn", "proc", "init",
    "sum", "delta", "allow", "comm", "tau",
    "true", "false", "forall", "exists", "mu", "nu", "val",
    "Bool", "Nat", "Int",
})

# longest operators first
SYMBOLS = (
    "->", "<>", "||", "&&", "=>", "!=", "==", "<=", ">=",
    "|", "!", "=", "<", ">", "+", "-", "*", ".", ",", ":", ";", "#",
    "(", ")", "{", "}", "[", "]",
)

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<nl>\n)"
    r"|(?P<comment>%[^\n]*)"
    r"|(?P<number>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)"
    r"|(?P<sym>" + "|".join(re.escape(s) for s in SYMBOLS) + r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'keyword', 'number', 'sym', 'eof'
    text: str
    span: SourceSpan

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.span})"


def tokenize(text: str, filename: str = "<input>") -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(filename, line, pos - line_start + 1, 1)
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("number", "ident", "sym"):
            if kind == "ident" and value in KEYWORDS:
                kind = "keyword"
            span = SourceSpan(filename, line, pos - line_start + 1, len(value))
            tokens.append(Token(kind, value, span))
        pos = m.end()
    tokens.append(Token("eof", "<end of input>", SourceSpan(filename, line, pos - line_start + 1, 0)))
    return tokens
