"""Exploratory box-counting on sampled point families.

Clouds are finite sets of exact rationals: truncations of jittered
growth-target expansions, or uniform dyadic points for calibration.  Box
membership at scale 2^-k is decided in exact integer arithmetic
(floor(x * 2^k)), so no point is ever misclassified by rounding.

The slope of log(occupied boxes) against log(1/scale) estimates the box
dimension of the sampled truncated family only; finite samples of
limsup-type sets under-resolve the covering structure, so the estimate is
not a statement about the Hausdorff dimension of the underlying set.
Every serialized summary carries CAVEAT verbatim.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .cfcore import evaluate
from .construct import EVERY_STEP, ConstructionPlan, construct_r_target
from .errors import DomainError, ScaleError
from .numutil import derived_seed

MAX_CLOUD_POINTS = 10**5

CAVEAT = (
    "box counts describe the sampled truncated family at the probed scales; "
    "they are not an estimate of the Hausdorff dimension of the underlying set"
)


@dataclass(frozen=True)
class PointCloud:
    """Finite set of exact rationals in (0, 1) with its provenance.

    precision_bits bounds the scales at which the cloud may be binned;
    duplicates records how many requested points collapsed (not fatal).
    """

    points: tuple[Fraction, ...]
    z: Fraction | None
    depth: int
    precision_bits: int
    requested: int
    duplicates: int
    seed: int

    @property
    def family(self) -> str:
        return "uniform" if self.z is None else "growth-target"


@dataclass(frozen=True)
class BoxCount:
    k: int
    count: int

    @property
    def delta(self) -> Fraction:
        return Fraction(1, 2**self.k)


@dataclass(frozen=True)
class SlopeFit:
    estimate: float
    r_squared: float
    window: tuple[int, int]


def point_cloud(
    z: Fraction,
    count: int,
    depth: int,
    seed: int,
    jitter: float = 2.0,
    mode: str = EVERY_STEP,
) -> PointCloud:
    """`count` truncated growth-target points with independent jitter seeds.

    depth is the per-point denominator digit budget.  Deterministic for a
    fixed seed; duplicate values are collapsed and reported.
    """
    if not 1 <= count <= MAX_CLOUD_POINTS:
        raise DomainError(f"count must lie in 1..{MAX_CLOUD_POINTS}, got {count}")
    values = []
    for i in range(count):
        plan = ConstructionPlan(
            z=z, mode=mode, jitter=jitter, seed=derived_seed(seed, i), max_digits=depth
        )
        values.append(evaluate(construct_r_target(plan)))
    unique = tuple(dict.fromkeys(values))
    # truncation at `depth` digits fixes each point to ~2*depth decimal places
    precision_bits = max(8, int(2 * (depth - 1) * math.log2(10)))
    return PointCloud(
        points=unique,
        z=Fraction(z),
        depth=depth,
        precision_bits=precision_bits,
        requested=count,
        duplicates=count - len(unique),
        seed=seed,
    )


def uniform_cloud(count: int, seed: int, bits: int = 64) -> PointCloud:
    """`count` uniform dyadic rationals m/2^bits (m odd), for calibration."""
    if not 1 <= count <= MAX_CLOUD_POINTS:
        raise DomainError(f"count must lie in 1..{MAX_CLOUD_POINTS}, got {count}")
    if bits < 2:
        raise DomainError(f"bits must be >= 2, got {bits}")
    rng = random.Random(seed)
    den = 1 << bits
    values = [Fraction(rng.getrandbits(bits) | 1, den) for _ in range(count)]
    unique = tuple(dict.fromkeys(values))
    return PointCloud(
        points=unique,
        z=None,
        depth=0,
        precision_bits=bits,
        requested=count,
        duplicates=count - len(unique),
        seed=seed,
    )


def box_counts(cloud: PointCloud, ks: list[int]) -> list[BoxCount]:
    """Occupied-box counts at scales 2^-k, exact rational binning."""
    out = []
    for k in ks:
        if k < 0:
            raise DomainError(f"scale exponent must be >= 0, got {k}")
        if k > cloud.precision_bits:
            raise ScaleError(
                f"scale 2^-{k} is below the cloud's certified precision (2^-{cloud.precision_bits})"
            )
        boxes = {(x.numerator << k) // x.denominator for x in cloud.points}
        out.append(BoxCount(k=k, count=len(boxes)))
    return out


def slope_fit(counts: list[BoxCount]) -> SlopeFit:
    """Least-squares slope of log(count) vs log(1/delta) over the scale window.

    Constant counts (e.g. a single-point cloud) have slope 0 by convention,
    with r^2 reported as 1.0 since the zero-slope line fits exactly.
    """
    if len(counts) < 4:
        raise DomainError(f"need at least 4 scales, got {len(counts)}")
    window = (min(c.k for c in counts), max(c.k for c in counts))
    if len({c.k for c in counts}) != len(counts):
        raise DomainError("duplicate scales in fit window")
    ys = [math.log(c.count) for c in counts]
    if len(set(ys)) == 1:
        return SlopeFit(estimate=0.0, r_squared=1.0, window=window)
    xs = [c.k * math.log(2) for c in counts]
    fit = statistics.linear_regression(xs, ys)
    r2 = statistics.correlation(xs, ys) ** 2
    return SlopeFit(estimate=fit.slope, r_squared=r2, window=window)
