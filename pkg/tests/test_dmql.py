import pytest
from hypothesis import given, strategies as st

from entrotree import data
from entrotree.dmql import parse, pretty_print, tokenize
from entrotree.dmql.lexer import IDENTIFIER, KEYWORD, NUMBER, PUNCT, STRING
from entrotree.errors import DmqlSemanticError, DmqlSyntaxError


def kinds(text):
    return [(t.kind, t.value) for t in tokenize(text)]


def test_tokenize_classify():
    assert kinds("Classify Decision_Tree") == [(KEYWORD, "classify"), (IDENTIFIER, "Decision_Tree")]


def test_tokenize_priority_number():
    assert kinds("priority2 {") == [(KEYWORD, "priority"), (NUMBER, 2), (PUNCT, "{")]


def test_tokenize_string_keeps_dots():
    assert kinds('"India.east"') == [(STRING, "India.east")]


def test_tokenize_comments_skipped():
    assert kinds("from x //leaf node(s)\n") == [(KEYWORD, "from"), (IDENTIFIER, "x")]


def test_positions_increase():
    toks = tokenize(data.example_query("5.1"))
    pos = [(t.line, t.column) for t in toks]
    assert pos == sorted(pos) and len(set(pos)) == len(pos)


@pytest.mark.parametrize("text, pos", [('"unterminated', (1, 1)), ("from x\n  @", (2, 3))])
def test_lexer_errors(text, pos):
    with pytest.raises(DmqlSyntaxError) as info:
        tokenize(text)
    assert (info.value.line, info.value.column) == pos


def test_missing_dataset_name():
    with pytest.raises(DmqlSyntaxError, match="end of input"):
        parse("classify T from")


def test_unnumbered_priority_is_rank_one():
    q = parse(data.example_query("4.1"))
    assert q.priorities[0].rank == 1


def test_priorities_sorted_by_rank():
    text = (
        "classify T according to priority2 {b(x) attribute values} "
        "according to priority1 {a(y) attribute_values} in relevance to c from d"
    )
    q = parse(text)
    assert [p.attribute for p in q.priorities] == ["a", "b"]


@pytest.mark.parametrize(
    "text, msg",
    [
        ("classify T in relevance to c", "from"),
        ("classify T from d", "relevance"),
        ("classify T according to priority3 {a(x) attribute values} in relevance to c from d", "1..1"),
        ("classify T in relevance to c in relevance to c from d", "twice"),
        ("classify T in relevance to c from d where A={x} and A={y}", "twice"),
        (
            "classify T according to priority1 {a(x) attribute values} "
            "according to priority2 {a(y) attribute values} in relevance to c from d",
            "two priority",
        ),
    ],
)
def test_semantic_errors(text, msg):
    with pytest.raises(DmqlSemanticError, match=msg):
        parse(text)


def test_syntax_error_lists_expected():
    with pytest.raises(DmqlSyntaxError) as info:
        parse("classify T according to priority {a(x) attribute values in relevance to c from d")
    assert "'}'" in info.value.expected


def test_where_and_with_spellings_agree():
    a = parse("classify T in relevance to c where attribute values for c count from d")
    b = parse("classify T in relevance to c with attribute values for c count from d")
    assert a == b and a.leaf_count_attr == "c"


def test_keywords_case_insensitive():
    assert parse("CLASSIFY T IN RELEVANCE TO c FROM d") == parse("classify T in relevance to c from d")


idents = st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True).filter(
    lambda s: not s.startswith("priority")
    and s not in {"classify", "till", "replace", "attribute_values", "attribute", "values", "with",
                  "new_attribute", "according", "to", "priority", "in", "relevance", "where", "for",
                  "count", "from", "and"}
)
values = st.lists(st.one_of(idents, st.from_regex(r"[A-Za-z]{1,4}\.[a-z]{1,4}", fullmatch=True)), min_size=1, max_size=4)


@given(idents, idents, st.lists(idents, min_size=1, max_size=3, unique=True), values, st.booleans())
def test_round_trip_property(target, source, relevance, order, with_leaf):
    text = f"classify {target} according to priority {{{relevance[0]}({', '.join(repr(v).replace(chr(39), chr(34)) for v in order)}) attribute values}}"
    text += f" in relevance to {', '.join(relevance)}"
    if with_leaf:
        text += f" with attribute values for {relevance[0]} count"
    text += f" from {source}"
    q = parse(text)
    assert parse(pretty_print(q)) == q


def test_token_respacing_property():
    for name in ("2.1", "4.1", "5.1"):
        toks = tokenize(data.example_query(name))
        text = " ".join(t.lexeme for t in toks)
        again = tokenize(text)
        assert [t.kind for t in again] == [t.kind for t in toks]
