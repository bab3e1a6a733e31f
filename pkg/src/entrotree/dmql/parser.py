"""
Recursive-descent parser and pretty-printer for classification-task queries.

Grammar (keywords case-insensitive)::

    query      := "classify" ident clause*
    clause     := till | priority | relevance | leafcount | from | where
    till       := "till" ident "replace" "{" values "}" attrvalues "with" "new_attribute" ident
    priority   := "according" "to" "priority" [number] "{" ident "(" values ")" attrvalues "}"
    relevance  := "in" "relevance" "to" ident ("," ident)* ["new_attribute" (ident | "count")]
    leafcount  := ("where" | "with") "attribute" "values" "for" ident "count"
    from       := "from" ident
    where      := "where" binding ("and" binding)*
    binding    := ident "=" "{" values "}"
    attrvalues := "attribute_values" | "attribute" "values"
    values     := value ("," value)*          value := ident | string | number

A query with a ``till`` clause is a generalization task; anything else builds
a classification tree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DmqlSemanticError, DmqlSyntaxError
from .lexer import IDENTIFIER, KEYWORD, KEYWORDS, NUMBER, PUNCT, STRING, Token, tokenize

GENERALIZE = "generalize"
CLASSIFY_TREE = "classify_tree"


@dataclass(frozen=True)
class ReplaceClause:
    from_level: str
    to_level: str
    target_values: tuple
    new_attribute: str


@dataclass(frozen=True)
class PrioritySpec:
    rank: int
    attribute: str
    value_order: tuple


@dataclass(frozen=True)
class DmqlQuery:
    task: str
    target: str
    source_dataset: str
    replace_clause: ReplaceClause | None = None
    priorities: tuple = ()
    relevance: tuple = ()
    count_column: str | None = None
    leaf_count_attr: str | None = None
    bindings: tuple = ()

    @property
    def class_attribute(self) -> str | None:
        return self.relevance[0] if self.relevance else None

    @property
    def binding_map(self) -> dict:
        return dict(self.bindings)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        lines = text.split("\n")
        self.end = (len(lines), len(lines[-1]) + 1)

    # -- token plumbing -----------------------------------------------
    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def fail(self, expected, what: str | None = None):
        tok = self.peek()
        if tok is None:
            line, col = self.end
            raise DmqlSyntaxError(what or "unexpected end of input", line, col, expected)
        raise DmqlSyntaxError(what or f"unexpected {tok.kind} {tok.lexeme!r}", tok.line, tok.column, expected)

    def is_kw(self, *words, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind == KEYWORD and tok.value in words

    def keyword(self, *words) -> Token:
        if not self.is_kw(*words):
            self.fail([f"'{w}'" for w in words])
        return self._advance()

    def punct(self, ch: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != PUNCT or tok.lexeme != ch:
            self.fail([f"'{ch}'"])
        return self._advance()

    def is_punct(self, ch: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == PUNCT and tok.lexeme == ch

    def ident(self, allow_keywords=()) -> str:
        tok = self.peek()
        if tok is not None and (tok.kind == IDENTIFIER or (tok.kind == KEYWORD and tok.value in allow_keywords)):
            self._advance()
            return tok.lexeme
        self.fail(["identifier"])

    def _advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def value(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind not in (IDENTIFIER, STRING, NUMBER):
            self.fail(["identifier", "string", "number"])
        self._advance()
        return tok.value if tok.kind == STRING else tok.lexeme

    def values(self) -> tuple:
        out = [self.value()]
        while self.is_punct(","):
            self._advance()
            out.append(self.value())
        return tuple(out)

    def attrvalues(self):
        if self.is_kw("attribute_values"):
            self._advance()
        elif self.is_kw("attribute"):
            self._advance()
            self.keyword("values")
        else:
            self.fail(["'attribute_values'", "'attribute values'"])

    # -- grammar --------------------------------------------------------
    def query(self) -> DmqlQuery:
        self.keyword("classify")
        target = self.ident()
        st = {"priorities": [], "bindings": []}
        while not self.at_end():
            tok = self.peek()
            if self.is_kw("till"):
                self._once(st, "replace_clause", tok)
                st["replace_clause"] = self.till(target)
            elif self.is_kw("according"):
                st["priorities"].append((tok, self.priority()))
            elif self.is_kw("in"):
                self._once(st, "relevance", tok)
                st["relevance"], st["count_column"] = self.relevance()
            elif self.is_kw("with") or (self.is_kw("where") and self.is_kw("attribute", offset=1)):
                self._once(st, "leaf_count_attr", tok)
                st["leaf_count_attr"] = self.leafcount()
            elif self.is_kw("where"):
                st["bindings"].extend(self.where(st["bindings"]))
            elif self.is_kw("from"):
                self._once(st, "source_dataset", tok)
                self._advance()
                st["source_dataset"] = self.ident()
            else:
                self.fail(["'till'", "'according'", "'in'", "'where'", "'with'", "'from'"],
                          f"unexpected {tok.kind} {tok.lexeme!r}")
        return self._finish(target, st)

    def _once(self, st, key, tok):
        if key in st:
            raise DmqlSemanticError(f"clause '{tok.lexeme}' given twice", tok.line, tok.column)

    def till(self, target):
        self.keyword("till")
        to_level = self.ident()
        self.keyword("replace")
        self.punct("{")
        targets = self.values()
        self.punct("}")
        self.attrvalues()
        self.keyword("with")
        self.keyword("new_attribute")
        new_attr = self.ident()
        return ReplaceClause(target, to_level, targets, new_attr)

    def priority(self) -> PrioritySpec:
        self.keyword("according")
        self.keyword("to")
        self.keyword("priority")
        rank = 1
        tok = self.peek()
        if tok is not None and tok.kind == NUMBER:
            self._advance()
            if not isinstance(tok.value, int) or tok.value < 1:
                raise DmqlSemanticError(f"priority rank must be a positive integer, got {tok.lexeme}", tok.line, tok.column)
            rank = tok.value
        self.punct("{")
        attr = self.ident()
        self.punct("(")
        order = self.values()
        self.punct(")")
        self.attrvalues()
        self.punct("}")
        return PrioritySpec(rank, attr, order)

    def relevance(self):
        self.keyword("in")
        self.keyword("relevance")
        self.keyword("to")
        names = [self.ident()]
        while self.is_punct(","):
            self._advance()
            names.append(self.ident())
        count_col = None
        if self.is_kw("new_attribute"):
            self._advance()
            count_col = self.ident(allow_keywords=("count",))
        return tuple(names), count_col

    def leafcount(self) -> str:
        self.keyword("where", "with")
        self.keyword("attribute")
        self.keyword("values")
        self.keyword("for")
        attr = self.ident()
        self.keyword("count")
        return attr

    def where(self, existing):
        self.keyword("where")
        seen = {name.casefold() for name, _ in existing}
        out = [self.binding(seen)]
        while self.is_kw("and"):
            self._advance()
            out.append(self.binding(seen))
        return out

    def binding(self, seen):
        tok = self.peek()
        name = self.ident()
        if name.casefold() in seen:
            raise DmqlSemanticError(f"{name!r} bound twice", tok.line, tok.column)
        seen.add(name.casefold())
        self.punct("=")
        self.punct("{")
        vals = self.values()
        self.punct("}")
        return (name, vals)

    def _finish(self, target, st) -> DmqlQuery:
        prios = st["priorities"]
        seen = {}
        for tok, p in prios:
            if p.rank in seen:
                raise DmqlSemanticError(f"priority rank {p.rank} given twice", tok.line, tok.column)
            seen[p.rank] = p
        attrs = [p.attribute.casefold() for _, p in prios]
        if len(set(attrs)) != len(attrs):
            tok = prios[-1][0]
            raise DmqlSemanticError("an attribute appears in two priority clauses", tok.line, tok.column)
        if seen and sorted(seen) != list(range(1, len(seen) + 1)):
            tok = prios[-1][0]
            raise DmqlSemanticError(
                f"priority ranks must run 1..{len(seen)}, got {sorted(seen)}", tok.line, tok.column
            )
        line, col = self.end
        if "source_dataset" not in st:
            raise DmqlSemanticError("missing 'from' clause", line, col)
        task = GENERALIZE if "replace_clause" in st else CLASSIFY_TREE
        relevance = st.get("relevance", ())
        if task == CLASSIFY_TREE and not relevance:
            raise DmqlSemanticError("classification needs an 'in relevance to' clause", line, col)
        return DmqlQuery(
            task=task,
            target=target,
            source_dataset=st["source_dataset"],
            replace_clause=st.get("replace_clause"),
            priorities=tuple(seen[r] for r in sorted(seen)),
            relevance=relevance,
            count_column=st.get("count_column"),
            leaf_count_attr=st.get("leaf_count_attr"),
            bindings=tuple(st["bindings"]),
        )


def parse(text: str) -> DmqlQuery:
    """Parse query text; raises :class:`DmqlSyntaxError` or :class:`DmqlSemanticError` with a position."""
    p = _Parser(text)
    return p.query()


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_NUM = re.compile(r"\d+(\.\d+)?$")


def _value(v: str) -> str:
    if (_IDENT.match(v) and v.lower() not in KEYWORDS and not re.match(r"(?i)priority\d+$", v)) or _NUM.match(v):
        return v
    return f'"{v}"'


def pretty_print(q: DmqlQuery) -> str:
    """Canonical query text; parsing it gives back an equal :class:`DmqlQuery`."""
    lines = [f"classify {q.target}"]
    if q.replace_clause is not None:
        rc = q.replace_clause
        vals = ", ".join(_value(v) for v in rc.target_values)
        lines.append(f"  till {rc.to_level} replace {{{vals}}} attribute_values with new_attribute {rc.new_attribute}")
    for p in q.priorities:
        vals = ", ".join(_value(v) for v in p.value_order)
        lines.append(f"  according to priority{p.rank} {{{p.attribute}({vals}) attribute values}}")
    if q.relevance:
        rel = f"  in relevance to {', '.join(q.relevance)}"
        if q.count_column is not None:
            rel += f" new_attribute {q.count_column}"
        lines.append(rel)
    if q.leaf_count_attr is not None:
        lines.append(f"  with attribute values for {q.leaf_count_attr} count")
    lines.append(f"  from {q.source_dataset}")
    if q.bindings:
        parts = [f"{name} = {{{', '.join(_value(v) for v in vals)}}}" for name, vals in q.bindings]
        lines.append("  where " + "\n    and ".join(parts))
    return "\n".join(lines) + "\n"
