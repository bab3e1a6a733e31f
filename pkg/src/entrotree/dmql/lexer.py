"""Tokenizer for the classification-task query language."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DmqlSyntaxError

KEYWORD = "keyword"
IDENTIFIER = "identifier"
STRING = "string"
NUMBER = "number"
PUNCT = "punct"

KEYWORDS = frozenset(
    """classify till replace attribute_values attribute values with new_attribute
    according to priority in relevance where for count from and""".split()
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<open>")
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}(),=])
    """,
    re.VERBOSE,
)
_PRIORITY_N = re.compile(r"(?i)(priority)(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int

    @property
    def value(self):
        """Keywords lowercased, strings unquoted, numbers as int/float."""
        if self.kind == KEYWORD:
            return self.lexeme.lower()
        if self.kind == STRING:
            return self.lexeme[1:-1]
        if self.kind == NUMBER:
            return float(self.lexeme) if "." in self.lexeme else int(self.lexeme)
        return self.lexeme


def tokenize(text: str) -> list[Token]:
    """Split query text into tokens; ``//`` comments and whitespace are dropped."""
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        col = pos - line_start + 1
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DmqlSyntaxError(f"illegal character {text[pos]!r}", line, col)
        kind, lexeme = m.lastgroup, m.group()
        if kind == "open":
            raise DmqlSyntaxError("unterminated string", line, col)
        if kind == "word":
            pm = _PRIORITY_N.match(lexeme)
            if pm:
                out.append(Token(KEYWORD, pm.group(1), line, col))
                out.append(Token(NUMBER, pm.group(2), line, col + len(pm.group(1))))
            elif lexeme.lower() in KEYWORDS:
                out.append(Token(KEYWORD, lexeme, line, col))
            else:
                out.append(Token(IDENTIFIER, lexeme, line, col))
        elif kind == "string":
            out.append(Token(STRING, lexeme, line, col))
        elif kind == "number":
            out.append(Token(NUMBER, lexeme, line, col))
        elif kind == "punct":
            out.append(Token(PUNCT, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    return out
