"""Benchmark objectives (facility location, weighted coverage), seeded
generators and the JSON instance file format.

Generators use NumPy's PCG64 behind SeedSequence spawning, one child
stream per matrix row / sensor, so instances are reproducible bit-for-bit
for a fixed seed regardless of platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .oracle import SubmodularOracle
from .sets import ids_from_mask, mask_from_ids


@dataclass(frozen=True)
class FacilityLocationInstance:
    n: int  # locations
    m: int  # clients
    k: int
    g: np.ndarray  # m x n benefit matrix
    seed: Optional[int] = None

    def __post_init__(self):
        _check_dims(self.n, self.m, self.k)
        if self.g.shape != (self.m, self.n):
            raise ValueError(
                f"field 'g': expected shape ({self.m}, {self.n}), got {self.g.shape}"
            )
        if np.any(self.g < 0):
            raise ValueError("field 'g': benefits must be nonnegative")

    def oracle(self) -> "FacilityLocationOracle":
        return FacilityLocationOracle(self)

    def __eq__(self, other):
        return (
            isinstance(other, FacilityLocationInstance)
            and (self.n, self.m, self.k, self.seed) == (other.n, other.m, other.k, other.seed)
            and np.array_equal(self.g, other.g)
        )


@dataclass(frozen=True)
class WeightedCoverageInstance:
    n: int  # sensors
    m: int  # items
    k: int
    cover: tuple  # n item-subset bitmasks over {1..m}
    w: np.ndarray  # m item weights
    seed: Optional[int] = None

    def __post_init__(self):
        _check_dims(self.n, self.m, self.k)
        if len(self.cover) != self.n:
            raise ValueError(f"field 'cover': expected {self.n} entries")
        item_full = (1 << self.m) - 1
        for j, cm in enumerate(self.cover):
            if cm < 0 or cm & ~item_full:
                raise ValueError(
                    f"field 'cover': sensor {j + 1} covers items outside 1..{self.m}"
                )
        if self.w.shape != (self.m,):
            raise ValueError(f"field 'weights': expected {self.m} entries")
        if np.any(self.w < 0):
            raise ValueError("field 'weights': weights must be nonnegative")

    def oracle(self) -> "WeightedCoverageOracle":
        return WeightedCoverageOracle(self)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedCoverageInstance)
            and (self.n, self.m, self.k, self.seed) == (other.n, other.m, other.k, other.seed)
            and self.cover == other.cover
            and np.array_equal(self.w, other.w)
        )


Instance = Union[FacilityLocationInstance, WeightedCoverageInstance]


def _check_dims(n: int, m: int, k: int) -> None:
    if n < 1 or m < 1:
        raise ValueError(f"dimensions must be positive, got n={n}, m={m}")
    if not 1 <= k <= n:
        raise ValueError(f"budget k={k} must satisfy 1 <= k <= n={n}")


class FacilityLocationOracle(SubmodularOracle):
    """f(S) = sum over clients of the best benefit among open facilities."""

    def __init__(self, inst: FacilityLocationInstance):
        super().__init__(inst.n)
        self.g = inst.g

    def value(self, mask: int) -> float:
        self._check_mask(mask)
        if mask == 0:
            return 0.0
        cols = [i - 1 for i in ids_from_mask(mask)]
        return float(self.g[:, cols].max(axis=1).sum())

    def gains_many(self, mask, elems):
        self._check_mask(mask)
        if mask == 0:
            best = np.zeros(self.g.shape[0])
        else:
            cols = [i - 1 for i in ids_from_mask(mask)]
            best = self.g[:, cols].max(axis=1)
        cand = [i - 1 for i in elems]
        totals = np.maximum(self.g[:, cand], best[:, None]).sum(axis=0)
        return totals - best.sum()


class WeightedCoverageOracle(SubmodularOracle):
    """f(S) = total weight of the items covered by the chosen sensors."""

    def __init__(self, inst: WeightedCoverageInstance):
        super().__init__(inst.n)
        self.cover = inst.cover
        self.w = inst.w

    def _weight(self, items_mask: int) -> float:
        total = 0.0
        w = self.w
        while items_mask:
            b = items_mask & -items_mask
            total += w[b.bit_length() - 1]
            items_mask ^= b
        return total

    def _covered(self, mask: int) -> int:
        covered = 0
        cover = self.cover
        while mask:
            b = mask & -mask
            covered |= cover[b.bit_length() - 1]
            mask ^= b
        return covered

    def value(self, mask: int) -> float:
        self._check_mask(mask)
        return self._weight(self._covered(mask))

    def gains_many(self, mask, elems):
        self._check_mask(mask)
        covered = self._covered(mask)
        return np.array(
            [self._weight(self.cover[i - 1] & ~covered) for i in elems]
        )


def loc_value(inst: FacilityLocationInstance, mask: int) -> float:
    return inst.oracle().value(mask)


def cov_value(inst: WeightedCoverageInstance, mask: int) -> float:
    return inst.oracle().value(mask)


def _row_rng(seed: int, row: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(row,)))


def gen_loc(n: int, m: int, k: int, seed: int) -> FacilityLocationInstance:
    """Facility location instance with i.i.d. uniform [0,1] benefits."""
    _check_dims(n, m, k)
    g = np.empty((m, n))
    for i in range(m):
        g[i] = _row_rng(seed, i).random(n)
    return FacilityLocationInstance(n=n, m=m, k=k, g=g, seed=seed)


def gen_cov(n: int, m: int, k: int, p_cover: float, seed: int) -> WeightedCoverageInstance:
    """Coverage instance: each sensor covers each item independently with
    probability p_cover; item weights uniform [0,1] from a separate stream."""
    _check_dims(n, m, k)
    if not 0.0 <= p_cover <= 1.0:
        raise ValueError(f"cover probability must be in [0,1], got {p_cover}")
    cover = []
    for j in range(n):
        hits = _row_rng(seed, j).random(m) < p_cover
        cover.append(mask_from_ids(i + 1 for i in np.nonzero(hits)[0]))
    # weights use the stream one past the sensor streams
    w = _row_rng(seed, n).random(m)
    return WeightedCoverageInstance(n=n, m=m, k=k, cover=tuple(cover), w=w, seed=seed)


def save(inst: Instance, path) -> None:
    doc = {"n": inst.n, "m": inst.m, "k": inst.k}
    if inst.seed is not None:
        doc["seed"] = inst.seed
    if isinstance(inst, FacilityLocationInstance):
        doc["type"] = "facility_location"
        doc["g"] = [[float(v) for v in row] for row in inst.g]
    else:
        doc["type"] = "weighted_coverage"
        doc["cover"] = [ids_from_mask(cm) for cm in inst.cover]
        doc["weights"] = [float(v) for v in inst.w]
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def load(path) -> Instance:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed instance file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("field 'type': instance file must be a JSON object")
    kind = doc.get("type")
    for name in ("n", "m", "k"):
        if not isinstance(doc.get(name), int):
            raise ValueError(f"field '{name}': missing or not an integer")
    n, m, k = doc["n"], doc["m"], doc["k"]
    seed = doc.get("seed")
    if kind == "facility_location":
        g = doc.get("g")
        if not isinstance(g, list) or len(g) != m:
            raise ValueError(f"field 'g': expected {m} rows")
        for row in g:
            if not isinstance(row, list) or len(row) != n:
                raise ValueError(f"field 'g': every row must have {n} entries")
        return FacilityLocationInstance(n=n, m=m, k=k, g=np.array(g, dtype=float), seed=seed)
    if kind == "weighted_coverage":
        cover = doc.get("cover")
        weights = doc.get("weights")
        if not isinstance(cover, list) or len(cover) != n:
            raise ValueError(f"field 'cover': expected {n} entries")
        if not isinstance(weights, list) or len(weights) != m:
            raise ValueError(f"field 'weights': expected {m} entries")
        masks = []
        for j, ids in enumerate(cover):
            if not isinstance(ids, list) or any(
                not isinstance(i, int) or not 1 <= i <= m for i in ids
            ):
                raise ValueError(
                    f"field 'cover': sensor {j + 1} must list item ids in 1..{m}"
                )
            masks.append(mask_from_ids(ids))
        return WeightedCoverageInstance(
            n=n, m=m, k=k, cover=tuple(masks), w=np.array(weights, dtype=float), seed=seed
        )
    raise ValueError(f"field 'type': unknown instance type {kind!r}")
