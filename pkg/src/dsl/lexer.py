"""
Lexer for theory files.

Tokens: identifiers, integers, decimals, punctuation and the `**` operator.
`#` starts a comment that runs to the end of the line. Keywords are
ordinary identifiers; the parser decides by context.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from .diagnostics import Diagnostic, SourceSpan, error


class TokenKind(Enum):
    IDENT = "identifier"
    INT = "integer"
    DECIMAL = "number"
    PUNCT = "punctuation"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def is_punct(self, text: str) -> bool:
        return self.kind == TokenKind.PUNCT and self.text == text

    def is_word(self, text: str) -> bool:
        return self.kind == TokenKind.IDENT and self.text == text


_TOKEN_RE = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<decimal>\d+\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>\*\*|[{}()\[\];:,=+\-*/^])
""", re.VERBOSE)


def tokenize(source: str) -> Tuple[List[Token], List[Diagnostic]]:
    """
    Split source into tokens, always ending with an EOF token.

    Unknown characters become diagnostics and are skipped.
    """
    tokens: List[Token] = []
    diagnostics: List[Diagnostic] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        column = pos - line_start + 1
        if m is None:
            diagnostics.append(error(SourceSpan(line, column, 1),
                                     f"unexpected character {source[pos]!r}"))
            pos += 1
            continue
        kind, text = m.lastgroup, m.group()
        span = SourceSpan(line, column, len(text))
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token(TokenKind.IDENT, text, span))
        elif kind == "int":
            tokens.append(Token(TokenKind.INT, text, span))
        elif kind == "decimal":
            tokens.append(Token(TokenKind.DECIMAL, text, span))
        elif kind == "punct":
            tokens.append(Token(TokenKind.PUNCT, text, span))
        pos = m.end()
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(line, pos - line_start + 1, 0)))
    return tokens, diagnostics
