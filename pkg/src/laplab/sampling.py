"""Seeded point-cloud sampling from embedded manifolds.

Supported models: the unit circle in R^D, the unit 2-sphere in R^D, and a
two-circle mixture with an exact separation gap. Optional noise replaces each
point by a uniform draw from the closed ball of radius r around it. Sampling
is pure: identical (spec, n, seed) always produces bit-identical clouds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

_MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15


def derive_stream_seed(base_seed: int, replicate_index: int) -> int:
    """Derive the 64-bit stream seed for one replicate.

    Splitmix-style finalizer applied to ``base_seed + (replicate_index + 1) *
    GOLDEN64`` mod 2^64. The multiplier is odd, so the pre-mix values are
    distinct across replicate indices and the bijective finalizer keeps them
    distinct; every piece of randomness a replicate consumes is derived from
    the returned seed.
    """
    if replicate_index < 0:
        raise ValueError("replicate_index must be nonnegative")
    z = (int(base_seed) + (replicate_index + 1) * GOLDEN64) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class ManifoldKind(str, Enum):
    CIRCLE = "circle"
    SPHERE = "sphere"
    TWO_CIRCLES = "two_circles"


@dataclass(frozen=True)
class ManifoldSpec:
    """Geometry and noise model of a sampled cloud.

    ``separation`` and ``mixture_weights`` only apply to the two-circle
    mixture. ``noise_radius = 0`` means points lie exactly on the manifold.
    """

    kind: ManifoldKind
    ambient_dim: int
    separation: float = 0.0
    mixture_weights: tuple[float, float] = (0.5, 0.5)
    noise_radius: float = 0.0

    def __post_init__(self):
        if self.ambient_dim < self.intrinsic_dim + 1:
            raise ValueError(
                f"ambient_dim must be at least intrinsic_dim + 1 "
                f"(= {self.intrinsic_dim + 1}), got {self.ambient_dim}"
            )
        if self.noise_radius < 0:
            raise ValueError("noise_radius must be nonnegative")
        if self.kind is ManifoldKind.TWO_CIRCLES:
            if self.separation < 0:
                raise ValueError("separation must be nonnegative")
            b1, b2 = self.mixture_weights
            if b1 <= 0 or b2 <= 0:
                raise ValueError("mixture weights must be strictly positive")
            if abs(b1 + b2 - 1.0) > 1e-12:
                raise ValueError("mixture weights must sum to 1 within 1e-12")

    @property
    def intrinsic_dim(self) -> int:
        return 2 if self.kind is ManifoldKind.SPHERE else 1

    @classmethod
    def circle(cls, ambient_dim: int = 2, noise_radius: float = 0.0) -> "ManifoldSpec":
        return cls(ManifoldKind.CIRCLE, ambient_dim, noise_radius=noise_radius)

    @classmethod
    def sphere(cls, ambient_dim: int = 3, noise_radius: float = 0.0) -> "ManifoldSpec":
        return cls(ManifoldKind.SPHERE, ambient_dim, noise_radius=noise_radius)

    @classmethod
    def two_circles(
        cls,
        ambient_dim: int = 2,
        separation: float = 1.0,
        mixture_weights: tuple[float, float] = (0.5, 0.5),
        noise_radius: float = 0.0,
    ) -> "ManifoldSpec":
        return cls(
            ManifoldKind.TWO_CIRCLES,
            ambient_dim,
            separation=separation,
            mixture_weights=tuple(mixture_weights),
            noise_radius=noise_radius,
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "ambient_dim": self.ambient_dim,
            "separation": self.separation,
            "mixture_weights": list(self.mixture_weights),
            "noise_radius": self.noise_radius,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ManifoldSpec":
        return cls(
            ManifoldKind(d["kind"]),
            int(d["ambient_dim"]),
            separation=float(d.get("separation", 0.0)),
            mixture_weights=tuple(d.get("mixture_weights", (0.5, 0.5))),
            noise_radius=float(d.get("noise_radius", 0.0)),
        )


@dataclass(frozen=True)
class PointCloud:
    """n points in R^D with sampling provenance.

    ``labels`` carries the ground-truth region id (0 or 1) for the two-circle
    mixture and is None otherwise.
    """

    points: np.ndarray
    labels: np.ndarray | None
    spec: ManifoldSpec
    seed: int

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]


def sample_cloud(spec: ManifoldSpec, n: int, seed: int) -> PointCloud:
    """Draw n i.i.d. points from the manifold model.

    Circle: angle uniform on [0, 2pi), point (cos, sin, 0, ..., 0). Sphere:
    normalized 3-d Gaussian in the first three coordinates. Two circles: the
    region is chosen with the mixture weights and the second circle is
    translated along the first axis by (2 + separation), so the minimal
    inter-region distance equals the separation exactly. Noise with radius
    r > 0 adds r * u^(1/D) * v with u uniform on (0,1) and v a uniform unit
    direction, i.e. a uniform draw from the closed r-ball.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = int(seed) & _MASK64
    rng = np.random.default_rng(seed)
    D = spec.ambient_dim
    pts = np.zeros((n, D))
    labels = None

    if spec.kind is ManifoldKind.CIRCLE:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        pts[:, 0] = np.cos(theta)
        pts[:, 1] = np.sin(theta)
    elif spec.kind is ManifoldKind.SPHERE:
        g = rng.standard_normal((n, 3))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        pts[:, :3] = g / norms
    elif spec.kind is ManifoldKind.TWO_CIRCLES:
        u = rng.random(n)
        labels = (u >= spec.mixture_weights[0]).astype(np.int64)
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        pts[:, 0] = np.cos(theta) + labels * (2.0 + spec.separation)
        pts[:, 1] = np.sin(theta)
    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(f"unknown manifold kind {spec.kind}")

    r = spec.noise_radius
    if r > 0:
        u = rng.random(n)
        g = rng.standard_normal((n, D))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        pts = pts + (r * u ** (1.0 / D))[:, None] * (g / norms)

    return PointCloud(points=pts, labels=labels, spec=spec, seed=seed)


def circle_angles(cloud: PointCloud) -> np.ndarray:
    """Recover the angle of each point from its first two coordinates."""
    return np.arctan2(cloud.points[:, 1], cloud.points[:, 0])


def save_cloud(cloud: PointCloud, path: str | Path) -> Path:
    """Write the cloud as headered CSV x1..xD,label plus a JSON metadata sidecar.

    Missing labels are written as -1. Floats use shortest round-trip decimals,
    so save/load is exact. Returns the sidecar path.
    """
    path = Path(path)
    D = cloud.ambient_dim
    labels = cloud.labels if cloud.labels is not None else np.full(cloud.n, -1, dtype=np.int64)
    with open(path, "w") as f:
        f.write(",".join(f"x{j + 1}" for j in range(D)) + ",label\n")
        for i in range(cloud.n):
            row = ",".join(repr(float(v)) for v in cloud.points[i])
            f.write(f"{row},{int(labels[i])}\n")
    sidecar = path.with_suffix(".meta.json")
    meta = {"spec": cloud.spec.to_dict(), "seed": int(cloud.seed)}
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return sidecar


def load_cloud(path: str | Path) -> PointCloud:
    """Read a cloud written by :func:`save_cloud` (CSV plus sidecar)."""
    path = Path(path)
    with open(path) as f:
        header = f.readline().strip().split(",")
        if header[-1] != "label" or not header[0].startswith("x"):
            raise ValueError(f"{path}: not a point-cloud CSV (header {header!r})")
        rows = [line.strip().split(",") for line in f if line.strip()]
    D = len(header) - 1
    pts = np.array([[float(v) for v in row[:D]] for row in rows], dtype=float)
    lab = np.array([int(row[D]) for row in rows], dtype=np.int64)
    labels = None if np.all(lab == -1) else lab
    meta = json.loads(path.with_suffix(".meta.json").read_text())
    return PointCloud(
        points=pts.reshape(len(rows), D),
        labels=labels,
        spec=ManifoldSpec.from_dict(meta["spec"]),
        seed=int(meta["seed"]),
    )


def min_interregion_distance(cloud: PointCloud) -> float:
    """Smallest pairwise distance between the two labelled regions."""
    if cloud.labels is None:
        raise ValueError("cloud has no region labels")
    a = cloud.points[cloud.labels == 0]
    b = cloud.points[cloud.labels == 1]
    if len(a) == 0 or len(b) == 0:
        return math.inf
    sq = (
        np.sum(a * a, axis=1)[:, None]
        + np.sum(b * b, axis=1)[None, :]
        - 2.0 * a @ b.T
    )
    return float(np.sqrt(max(np.min(sq), 0.0)))
