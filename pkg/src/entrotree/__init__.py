"""
entrotree: decision-tree rule induction over generalized data.

Attribute-oriented induction compresses raw data through concept
hierarchies, information gain and the uncertainty coefficient rank
attributes, and user priorities decide which attributes a tree must test
first. Trees can be merged and height-balanced without changing any rule,
and are queried through a small classification-task language.
"""
from .dataset import (
    AttributeDescriptor,
    ClassDistribution,
    Dataset,
    class_distribution,
    load_dataset,
    merge_identical_tuples,
    parse_schema,
    read_dataset,
)
from .entropy import (
    AttributeScore,
    RelevancePolicy,
    attribute_expected_info,
    expected_info,
    info_gain,
    relevance_filter,
    score_attributes,
    uncertainty_coefficient,
)
from .errors import EntrotreeError
from .hierarchy import (
    AoiConfig,
    ConceptHierarchy,
    aoi,
    ascend,
    generalize_attribute,
    load_hierarchy,
    read_hierarchy,
    remove_attribute,
)
from .induction import (
    BASELINE,
    PRIORITY,
    InductionConfig,
    build_tree,
    drilldown_node,
    rollup_node,
    select_split,
    split_numeric,
)
from .restructure import (
    PriorityAssignment,
    balance_factor,
    height_balance,
    height_balance_priority,
    node_merge,
)
from .rules import ClassificationRule, ComparisonReport, classify_tuple, compare_trees, extract_rules
from .tree import Branch, Leaf, Split, render

__version__ = "0.1.0"
