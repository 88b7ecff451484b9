"""Polyline geometry: Hausdorff distance and self-intersection tests."""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgument


def _as_parts(obj) -> list[np.ndarray]:
    """Normalize curves/polylines/lists of polylines to (n, 2) arrays.

    Multi-part inputs are kept as separate parts so that no phantom
    segment bridges disjoint pieces.
    """
    if hasattr(obj, "xy"):
        return [np.asarray(obj.xy(), dtype=float)]
    arr = None
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        arr = None
    if arr is not None and arr.ndim == 2 and arr.shape[1] == 2:
        return [arr]
    parts = []
    for piece in obj:
        parts.extend(_as_parts(piece))
    return parts


def _point_segment_dist(points: np.ndarray, seg_a: np.ndarray, seg_b: np.ndarray) -> np.ndarray:
    """Min distance from each point to the nearest of the given segments."""
    d = seg_b - seg_a                                  # (k, 2)
    len2 = np.einsum("ij,ij->i", d, d)                 # (k,)
    rel = points[:, None, :] - seg_a[None, :, :]       # (m, k, 2)
    proj = np.einsum("mkj,kj->mk", rel, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(len2 > 0.0, proj / len2, 0.0)
    s = np.clip(s, 0.0, 1.0)
    nearest = seg_a[None, :, :] + s[:, :, None] * d[None, :, :]
    diff = points[:, None, :] - nearest
    return np.sqrt(np.einsum("mkj,mkj->mk", diff, diff)).min(axis=1)


def _directed(parts_a: list[np.ndarray], parts_b: list[np.ndarray]) -> float:
    seg_a = []
    seg_b = []
    for p in parts_b:
        if len(p) == 1:
            seg_a.append(p)
            seg_b.append(p)
        else:
            seg_a.append(p[:-1])
            seg_b.append(p[1:])
    sa = np.concatenate(seg_a)
    sb = np.concatenate(seg_b)
    worst = 0.0
    for pts in parts_a:
        worst = max(worst, float(_point_segment_dist(pts, sa, sb).max()))
    return worst


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between polylines or sets of polylines.

    Vertices of each side are measured against the full segments of the
    other, so a sparse polyline can be compared against a densely sampled
    curve without penalty in either direction.
    """
    parts_a = [p for p in _as_parts(a) if len(p)]
    parts_b = [p for p in _as_parts(b) if len(p)]
    if not parts_a or not parts_b:
        raise InvalidArgument("Hausdorff distance needs nonempty inputs")
    return max(_directed(parts_a, parts_b), _directed(parts_b, parts_a))


def polyline_self_intersects(points) -> bool:
    """True when any two non-adjacent segments of the polyline cross."""
    pts = np.asarray(points, dtype=float)
    if len(pts) > 1:
        # Thin out points closer than 1e-9 of the figure diameter:
        # near-zero segments carry no geometry but poison the crossing
        # parameters with rounding noise.
        diam = float(np.max(pts.max(axis=0) - pts.min(axis=0)))
        tol = 1e-9 * max(diam, 1e-300)
        kept = [pts[0]]
        for p in pts[1:]:
            if max(abs(p[0] - kept[-1][0]), abs(p[1] - kept[-1][1])) > tol:
                kept.append(p)
        pts = np.asarray(kept)
    n = len(pts) - 1
    if n < 3:
        return False
    a = pts[:-1]
    b = pts[1:]
    d = b - a

    def cross(v, w):
        return v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]

    # All segment pairs (i, j), j > i + 1: proper crossing via orientation.
    i_idx, j_idx = np.triu_indices(n, k=2)
    if len(i_idx) == 0:
        return False
    p, r = a[i_idx], d[i_idx]
    q, s = a[j_idx], d[j_idx]
    denom = cross(r, s)
    # Near-parallel pairs are treated as non-crossing: with densely
    # sampled smooth arcs the crossing parameters of almost-collinear
    # segments are pure rounding noise.
    norms = np.sqrt(np.einsum("ij,ij->i", r, r) * np.einsum("ij,ij->i", s, s))
    ok = np.abs(denom) > 1e-9 * norms
    qp = q - p
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(ok, cross(qp, s) / denom, np.nan)
        u = np.where(ok, cross(qp, r) / denom, np.nan)
    eps = 1e-9
    hit = (t > eps) & (t < 1 - eps) & (u > eps) & (u < 1 - eps)
    return bool(np.any(hit))
