"""
Information measures over count-weighted datasets.

All logarithms are base 2, so every entropy and gain is in bits.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, class_distribution
from .errors import DatasetError, EntrotreeError


@dataclass(frozen=True)
class AttributeScore:
    attribute: str
    expected_info: float
    gain: float
    uncertainty: float


@dataclass(frozen=True)
class RelevancePolicy:
    """Keep the ``top_n`` best attributes, or all with U >= ``threshold``."""

    top_n: int | None = None
    threshold: float | None = None

    def __post_init__(self):
        if (self.top_n is None) == (self.threshold is None):
            raise EntrotreeError("give exactly one of top_n or threshold")
        if self.top_n is not None and self.top_n < 0:
            raise EntrotreeError("top_n must be >= 0")


def expected_info(counts: Sequence[int]) -> float:
    """Entropy of a class histogram, ``-sum(c/p * log2(c/p))``.

    Zero counts contribute nothing.
    """
    c = np.asarray(counts, dtype=float)
    if c.size == 0 or np.any(c < 0):
        raise EntrotreeError("counts must be a nonempty list of nonnegative numbers")
    p = c.sum()
    if p <= 0:
        raise EntrotreeError("all-zero counts")
    q = c[c > 0] / p
    return float(-(q * np.log2(q)).sum()) + 0.0


def _histograms(d: Dataset, attr: str) -> list[list[int]]:
    ci = d.class_index
    j = d.index(attr)
    if j == ci:
        raise DatasetError(f"{attr!r} is the class attribute")
    labels = {v: k for k, v in enumerate(d.class_order)}
    parts: dict = {}
    for t, c in zip(d.tuples, d.counts):
        h = parts.setdefault(t[j], [0] * len(labels))
        h[labels[t[ci]]] += c
    return list(parts.values())


def attribute_expected_info(d: Dataset, attr: str) -> float:
    """Count-weighted mean class entropy over the partition induced by ``attr``."""
    total = d.total_count
    return sum(sum(h) / total * expected_info(h) for h in _histograms(d, attr))


def class_info(d: Dataset) -> float:
    return expected_info(list(class_distribution(d).values()))


def info_gain(d: Dataset, attr: str) -> float:
    return class_info(d) - attribute_expected_info(d, attr)


def uncertainty_coefficient(d: Dataset, attr: str) -> float:
    """Gain normalized by the class entropy; 0 when the class entropy is 0."""
    base = class_info(d)
    if base == 0.0:
        return 0.0
    return (base - attribute_expected_info(d, attr)) / base


def score_attributes(d: Dataset, attrs: Iterable[str] | None = None) -> list[AttributeScore]:
    base = class_info(d)
    out = []
    for a in d.regular_attributes() if attrs is None else attrs:
        e = attribute_expected_info(d, a)
        g = base - e
        u = 0.0 if base == 0.0 else g / base
        out.append(AttributeScore(d.attribute(a).name, e, g, u))
    return out


def relevance_filter(
    d: Dataset,
    policy: RelevancePolicy,
    protected: Iterable[str] = (),
) -> list[str]:
    """Attributes worth keeping, ordered by descending uncertainty coefficient.

    Protected attributes are kept whatever their score. Ties keep schema order.
    """
    scores = score_attributes(d)
    ranked = sorted(scores, key=lambda s: -s.uncertainty)  # stable: schema order on ties
    protected_keys = {d.attribute(p).name for p in protected}
    if policy.top_n is not None:
        keep = {s.attribute for s in ranked[: policy.top_n]}
    else:
        keep = {s.attribute for s in ranked if s.uncertainty >= policy.threshold}
    keep |= protected_keys
    return [s.attribute for s in ranked if s.attribute in keep]
