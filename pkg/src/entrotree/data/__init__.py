"""Bundled education datasets, the region hierarchy and example queries."""
from importlib import resources

from ..dataset import Dataset, load_dataset, parse_schema
from ..hierarchy import ConceptHierarchy, load_hierarchy


def _text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def path(name: str):
    """Filesystem path of a bundled file."""
    return resources.files(__name__).joinpath(name)


def _load(stem: str) -> Dataset:
    return load_dataset(_text(f"{stem}.csv"), parse_schema(_text(f"{stem}.schema")))


def table1() -> Dataset:
    """15 raw rows: education, region, family income, income level."""
    return _load("table1")


def table3() -> Dataset:
    """The 17-row edu_dataset: education, country, income level."""
    return _load("table3")


def edu_regions() -> Dataset:
    """Table 1 rows with both country and region columns."""
    return _load("edu_regions")


def region_hierarchy() -> ConceptHierarchy:
    return load_hierarchy(_text("region.hier"))


def example_query(name: str) -> str:
    """Text of ``"2.1"``, ``"4.1"`` or ``"5.1"``."""
    return _text(f"example_{name.replace('.', '_')}.dmql")
