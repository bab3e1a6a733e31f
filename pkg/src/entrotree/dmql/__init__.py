"""Query language for generalization and priority-tree classification tasks."""
from .executor import Catalog, QueryResult, execute, run
from .lexer import Token, tokenize
from .parser import (
    CLASSIFY_TREE,
    GENERALIZE,
    DmqlQuery,
    PrioritySpec,
    ReplaceClause,
    parse,
    pretty_print,
)

__all__ = [
    "CLASSIFY_TREE",
    "GENERALIZE",
    "Catalog",
    "DmqlQuery",
    "PrioritySpec",
    "QueryResult",
    "ReplaceClause",
    "Token",
    "execute",
    "parse",
    "pretty_print",
    "run",
    "tokenize",
]
