import pytest

from entrotree.dataset import class_distribution, value_key
from entrotree.errors import HierarchyError
from entrotree.hierarchy import (
    AoiConfig,
    aoi,
    ascend,
    generalize_attribute,
    generalize_to_concepts,
    load_hierarchy,
    remove_attribute,
)


def test_region_hierarchy_levels(region_h):
    assert region_h.levels == ("Region_Data", "Country_Data", "World_Data")
    assert region_h.level_of("USA.east") == 0
    assert region_h.level_of("USA") == 1
    assert region_h.level_of("World") == 2
    assert len(region_h.values_at(0)) == 12


def test_ascend(region_h):
    assert ascend(region_h, "USA.east", 1) == "USA"
    assert ascend(region_h, "USA.east", 2) == "World"
    assert ascend(region_h, "USA.east", 9) == "World"
    assert ascend(region_h, "usa . EAST", 1) == "USA"
    assert region_h.ancestor_at("China.west", 1) == "China"
    with pytest.raises(HierarchyError):
        ascend(region_h, "Mars.north", 1)


@pytest.mark.parametrize(
    "text, msg",
    [
        ("attribute: a\nlevels: l0, l1\nx -> y\ny -> x\n", "cycle"),
        ("attribute: a\nlevels: l0, l1\nx -> y\nx -> z\n", "duplicate"),
        ("attribute: a\nlevels: l0, l1\nx -> y\nz\n", "orphan"),
        ("attribute: a\nlevels: l0\nx -> y\n", "levels deep"),
        ("levels: l0, l1\nx -> y\n", "no attribute"),
        ("attribute: a\nlevels: l0, l1\n -> y\n", "expected"),
    ],
)
def test_malformed_hierarchies(text, msg):
    with pytest.raises(HierarchyError, match=msg):
        load_hierarchy(text)


def test_generalize_region_to_country(table1, region_h):
    cfg = AoiConfig(aggregate={"family_income_per_year": "sum"})
    g = generalize_attribute(table1, "region", region_h, 4, cfg)
    assert set(g.column("region")) == {"USA", "Cuba", "India", "China"}
    assert g.total_count == 15
    assert sum(g.column("family_income_per_year")) == sum(table1.column("family_income_per_year"))
    assert class_distribution(g) == class_distribution(table1)


def test_generalize_stops_at_top(table1, region_h):
    g = generalize_attribute(table1, "region", region_h, 1)
    assert set(g.column("region")) == {"World"}


def test_generalize_uncovered_value(table1):
    h = load_hierarchy("attribute: region\nlevels: a, b\nUSA.east -> USA\n")
    with pytest.raises(HierarchyError, match="not covered"):
        generalize_attribute(table1, "region", h, 2)


def test_remove_income_from_table1(table1):
    d = remove_attribute(table1, "family_income_per_year")
    assert "family_income_per_year" not in d.names
    assert len(d) == 14  # the two Graduate school/China.west/High rows merge
    assert d.total_count == 15


def test_remove_class_refused(table1):
    with pytest.raises(HierarchyError):
        remove_attribute(table1, "income_level")


def _hand_aoi(table1):
    groups = {}
    for t, c in zip(table1.tuples, table1.counts):
        key = (value_key(t[0]), t[1].split(".")[0], t[3])
        g = groups.setdefault(key, [0, 0.0])
        g[0] += c
        g[1] += t[2]
    return groups


def test_full_aoi_matches_hand_grouping(table1, region_h):
    cfg = AoiConfig(thresholds={"region": 4}, aggregate={"family_income_per_year": "sum"})
    g = aoi(table1, [region_h], cfg)
    got = {
        (value_key(t[0]), t[1], t[3]): [c, t[2]]
        for t, c in zip(g.tuples, g.counts)
    }
    assert got == _hand_aoi(table1)
    assert len(g) == 11 and g.total_count == 15


def test_aoi_drops_numeric_without_rule(table1, region_h):
    g = aoi(table1, [region_h], AoiConfig(thresholds={"region": 4}))
    assert "family_income_per_year" not in g.names


def test_aoi_removes_attribute_without_hierarchy(table1):
    g = aoi(table1, [], AoiConfig(thresholds={"region": 4}))
    assert "region" not in g.names


def test_aoi_config_validation():
    with pytest.raises(HierarchyError):
        AoiConfig(thresholds={"a": 0})
    with pytest.raises(HierarchyError):
        AoiConfig(aggregate={"a": "mean"})


def test_generalize_to_concepts(table1, region_h):
    g = generalize_to_concepts(table1, "region", region_h, ["USA", "Cuba", "India", "China"])
    assert set(g.column("region")) == {"USA", "Cuba", "India", "China"}
    with pytest.raises(HierarchyError, match="no ancestor"):
        generalize_to_concepts(table1, "region", region_h, ["USA"], max_level=1)
