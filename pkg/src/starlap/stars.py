"""Detection and certification of spectra-shaping substructures.

Two structures are handled:

* star classes: maximal sets of at least two vertices sharing an identical
  open neighborhood (an independent set by construction).  When the members
  also carry identical weight vectors toward the shared neighborhood, the
  class predicts a Laplacian eigenvalue equal to the common strength with
  multiplicity at least (class size - 1), and analogous bounds for the
  signless and normalized Laplacians.

* dependent-row partitions (v1, v2, v3): vertices in v3 whose adjacency rows
  are linear combinations of the v1 rows, everything attached only into v2,
  all of v1 and v3 sharing a common strength.  Such a partition certifies the
  common strength as a Laplacian eigenvalue with multiplicity at least |v3|.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import eigen
from .errors import (
    ConditionViolatedError,
    InfeasibleSpecError,
    NoCommonStrengthError,
    UnequalWeightVectorsError,
)
from .graphs import Graph, adjacency, build_graph, laplacian, normalized_laplacian, signless_laplacian, strengths

WEIGHT_TOL = 1e-9
COEFF_EPS = 1e-12


@dataclass(frozen=True)
class MkStar:
    """A class of vertices (v1) with identical neighborhoods (v2).

    `weight_uniform` holds the common strength when all v1 vertices also share
    identical weight vectors toward v2, and None for purely structural classes.
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    weight_uniform: float | None

    @property
    def m(self) -> int:
        return len(self.v1)

    @property
    def k(self) -> int:
        return len(self.v2)

    @property
    def degree(self) -> int:
        return self.m - 1


@dataclass(frozen=True)
class StarClass:
    """Stars grouped by equal weight; degree is the summed multiplicity bound."""

    weight: float
    stars: tuple[MkStar, ...]
    degree: int


@dataclass(frozen=True)
class LDependentPartition:
    """Certified dependent-row partition with per-row combination coefficients.

    coefficients[i] maps each contributing v1 vertex j to a(j) in
    row_i = sum_j a(j) * row_j.  The definition asks for positive
    coefficients; an unconstrained least-squares fit may come back with
    small negative entries, which is recorded in `coefficients_nonnegative`
    rather than rejected.
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    v3: tuple[int, ...]
    coefficients: dict[int, dict[int, float]]
    wtilde: float
    coefficients_nonnegative: bool

    @property
    def l(self) -> int:
        return len(self.v3)


@dataclass(frozen=True)
class PredictionReport:
    """Eigenvalue/multiplicity lower bounds read off the detected structure."""

    laplacian_predictions: tuple[tuple[float, int], ...]
    signless_predictions: tuple[tuple[float, int], ...]
    normalized_prediction: tuple[float, int] | None
    ldependent_predictions: tuple[tuple[float, int], ...]


@dataclass(frozen=True)
class PredictionCheck:
    family: str
    eigenvalue: float
    predicted: int
    computed: int
    passed: bool


@dataclass(frozen=True)
class StarVerification:
    checks: tuple[PredictionCheck, ...]
    warnings: tuple[str, ...]
    passed: bool


def _class_rows(g: Graph, v1: Sequence[int], v2: Sequence[int]) -> np.ndarray:
    a = adjacency(g)
    return a[np.ix_(list(v1), list(v2))]


def _uniform_weight(rows: np.ndarray) -> float | None:
    """Common strength if all rows agree entrywise within tolerance, else None.

    Emits a warning when rows agree only within tolerance but not exactly,
    since near-equal user weights are then treated as equal.
    """
    tol = WEIGHT_TOL * max(1.0, float(rows.max()) if rows.size else 0.0)
    spread = float(np.abs(rows - rows[0]).max()) if rows.size else 0.0
    if spread > tol:
        return None
    if spread > 0.0:
        warnings.warn(
            "star weight vectors differ by less than the equality tolerance; "
            "treating them as equal",
            stacklevel=3,
        )
    return float(rows[0].sum())


def detect_stars(g: Graph) -> list[MkStar]:
    """All maximal classes of >= 2 vertices with identical open neighborhoods.

    Classes with an empty neighborhood (isolated twins) are skipped.  Output
    is ordered by the smallest vertex index in v1.
    """
    by_neighborhood: dict[frozenset[int], list[int]] = {}
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    for v in range(g.n):
        by_neighborhood.setdefault(frozenset(adj[v]), []).append(v)
    a = adjacency(g)
    stars = []
    for nbhd, members in by_neighborhood.items():
        if len(members) < 2 or not nbhd:
            continue
        v1 = tuple(sorted(members))
        v2 = tuple(sorted(nbhd))
        rows = a[np.ix_(list(v1), list(v2))]
        stars.append(MkStar(v1=v1, v2=v2, weight_uniform=_uniform_weight(rows)))
    stars.sort(key=lambda s: s.v1[0])
    return stars


def star_weight(g: Graph, s: MkStar) -> float:
    """Common strength of the star's v1 vertices.

    Raises when the v1 weight vectors differ (structural-only star).
    """
    rows = _class_rows(g, s.v1, s.v2)
    w = _uniform_weight(rows)
    if w is None:
        raise UnequalWeightVectorsError(s.v1)
    return w


def group_by_weight(stars: Sequence[MkStar], tol_rel: float = WEIGHT_TOL) -> list[StarClass]:
    """Group weight-carrying stars into classes of equal weight.

    Weights within tol_rel * max(1, w) of each other fall in one class; the
    class degree is the sum of (m - 1) over its members.
    """
    for s in stars:
        if s.weight_uniform is None:
            raise UnequalWeightVectorsError(s.v1, detail="cannot group a structural-only star")
    ordered = sorted(stars, key=lambda s: (s.weight_uniform, s.v1))
    classes: list[StarClass] = []
    bucket: list[MkStar] = []
    for s in ordered:
        if bucket and s.weight_uniform - bucket[-1].weight_uniform > tol_rel * max(
            1.0, s.weight_uniform
        ):
            classes.append(_finish_class(bucket))
            bucket = []
        bucket.append(s)
    if bucket:
        classes.append(_finish_class(bucket))
    return classes


def _finish_class(bucket: list[MkStar]) -> StarClass:
    weight = float(np.mean([s.weight_uniform for s in bucket]))
    degree = sum(s.m - 1 for s in bucket)
    return StarClass(weight=weight, stars=tuple(bucket), degree=degree)


def predict_multiplicities(g: Graph, tol_rel: float = WEIGHT_TOL) -> PredictionReport:
    """Eigenvalue lower bounds from detected stars and proportional-row groups.

    Structural-only star classes contribute nothing; dependent-row entries
    come from the proportional-row detector.
    """
    weighted = [s for s in detect_stars(g) if s.weight_uniform is not None]
    classes = group_by_weight(weighted, tol_rel=tol_rel)
    lap_preds = tuple((c.weight, c.degree) for c in classes)
    total_degree = sum(c.degree for c in classes)
    ldep = tuple((p.wtilde, p.l) for p in detect_proportional_ldependent(g))
    return PredictionReport(
        laplacian_predictions=lap_preds,
        signless_predictions=lap_preds,
        normalized_prediction=(1.0, total_degree) if total_degree > 0 else None,
        ldependent_predictions=ldep,
    )


def verify_star_predictions(g: Graph, tol_rel: float = eigen.DEFAULT_TOL) -> StarVerification:
    """Check every star-based prediction against computed multiplicities.

    With no predictions the result is a vacuous pass; structural-only stars
    are reported as warnings.
    """
    report = predict_multiplicities(g)
    structural = [s for s in detect_stars(g) if s.weight_uniform is None]
    warn = tuple(
        f"star class v1={list(s.v1)} has unequal weight vectors; no prediction emitted"
        for s in structural
    )
    checks: list[PredictionCheck] = []

    def run(family: str, matrix: np.ndarray, preds: Sequence[tuple[float, int]]):
        if not preds:
            return
        table = eigen.group_multiplicities(eigen.sym_eigen(matrix).values, tol_rel)
        for value, bound in preds:
            computed = eigen.multiplicity_at(table, value, tol_rel)
            checks.append(
                PredictionCheck(
                    family=family,
                    eigenvalue=value,
                    predicted=bound,
                    computed=computed,
                    passed=computed >= bound,
                )
            )

    run("laplacian", laplacian(g), report.laplacian_predictions)
    run("signless", signless_laplacian(g), report.signless_predictions)
    if report.normalized_prediction is not None:
        run("normalized", normalized_laplacian(g), [report.normalized_prediction])
    return StarVerification(
        checks=tuple(checks),
        warnings=warn,
        passed=all(c.passed for c in checks),
    )


def verify_ldependent(
    g: Graph,
    v1: Sequence[int],
    v2: Sequence[int],
    v3: Sequence[int],
    tol_rel: float = WEIGHT_TOL,
) -> LDependentPartition:
    """Certify a candidate (v1, v2, v3) partition and solve its coefficients.

    Checks, in order: v1/v2 mutual attachment, v1 and v3 attached only into
    v2, each v3 row reproducible as a least-squares combination of the v1
    rows (residual at most tol_rel * common strength), and finally that all
    of v1 and v3 share one strength.  Coefficient positivity is recorded,
    not enforced.
    """
    v1_t, v2_t, v3_t = tuple(sorted(v1)), tuple(sorted(v2)), tuple(sorted(v3))
    sets = (set(v1_t), set(v2_t), set(v3_t))
    if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
        raise ConditionViolatedError(0, -1, "v1, v2, v3 must be disjoint")
    a = adjacency(g)
    s = strengths(g)

    # condition 1: every v1 vertex attaches into v2 and vice versa
    for i in v1_t:
        if not any(a[i, j] > 0 for j in v2_t):
            raise ConditionViolatedError(1, i, "v1 vertex has no neighbor in v2")
    for j in v2_t:
        if not any(a[i, j] > 0 for i in v1_t):
            raise ConditionViolatedError(1, j, "v2 vertex has no neighbor in v1")

    # condition 2: v1 and v3 have neighbors only inside v2
    outside = [x for x in range(g.n) if x not in sets[1]]
    for i in list(v1_t) + list(v3_t):
        for x in outside:
            if a[i, x] > 0:
                raise ConditionViolatedError(2, i, f"edge to {x} leaves v2")

    wtilde = float(s[v1_t[0]]) if v1_t else 0.0

    # condition 3: each v3 row is a combination of the v1 rows on v2
    cols = list(v2_t)
    basis = a[np.ix_(list(v1_t), cols)]
    coefficients: dict[int, dict[int, float]] = {}
    nonnegative = True
    for i in v3_t:
        target = a[i, cols]
        coeffs, *_ = np.linalg.lstsq(basis.T, target, rcond=None)
        residual = float(np.abs(basis.T @ coeffs - target).max())
        if residual > tol_rel * max(1.0, wtilde):
            raise ConditionViolatedError(
                3, i, f"row is not a combination of v1 rows (residual {residual:.3g})"
            )
        coefficients[i] = {j: float(c) for j, c in zip(v1_t, coeffs)}
        if any(c < -COEFF_EPS for c in coeffs):
            nonnegative = False

    # common strength over v1 and v3
    bad = {
        int(i): float(s[i])
        for i in list(v1_t) + list(v3_t)
        if abs(s[i] - wtilde) > tol_rel * max(1.0, wtilde)
    }
    if bad:
        bad[int(v1_t[0])] = wtilde
        raise NoCommonStrengthError(bad)

    return LDependentPartition(
        v1=v1_t,
        v2=v2_t,
        v3=v3_t,
        coefficients=coefficients,
        wtilde=wtilde,
        coefficients_nonnegative=nonnegative,
    )


def detect_proportional_ldependent(g: Graph, tol: float = WEIGHT_TOL) -> list[LDependentPartition]:
    """Dependent-row partitions found by grouping identical adjacency rows.

    Heuristic: vertices are grouped by row direction (row / strength) and
    then by strength; a group of size >= 2 yields a partition whose v1 is the
    smallest member, v3 the rest, and v2 the neighbors of v3.  Rows that are
    proportional but carry different strengths are not a common-strength
    structure and produce nothing.  Multi-row combinations are out of scope
    for this detector; they can still be certified via verify_ldependent.
    """
    a = adjacency(g)
    s = strengths(g)
    groups: list[list[int]] = []
    reps: list[int] = []
    for v in range(g.n):
        if s[v] <= 0:
            continue
        direction = a[v] / s[v]
        placed = False
        for gi, r in enumerate(reps):
            if np.abs(direction - a[r] / s[r]).max() <= tol and abs(
                s[v] - s[r]
            ) <= tol * max(1.0, s[r]):
                groups[gi].append(v)
                placed = True
                break
        if not placed:
            groups.append([v])
            reps.append(v)
    out = []
    for members in groups:
        if len(members) < 2:
            continue
        rep = members[0]
        v3 = tuple(members[1:])
        v2 = tuple(sorted(np.nonzero(a[rep])[0].tolist()))
        out.append(
            LDependentPartition(
                v1=(rep,),
                v2=v2,
                v3=v3,
                coefficients={i: {rep: 1.0} for i in v3},
                wtilde=float(s[rep]),
                coefficients_nonnegative=True,
            )
        )
    return out


def dependence_split(
    g: Graph, vertices: Sequence[int], tol_rel: float = WEIGHT_TOL
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split equal-neighborhood vertices into independent rows and dependent rest.

    Greedy by index: a vertex joins v1 while its row increases the rank of the
    rows collected so far, otherwise it goes to v3.  Useful for turning a
    structural star class with a common strength into a candidate partition
    for verify_ldependent.
    """
    verts = sorted(vertices)
    a = adjacency(g)
    cols = sorted(set().union(*(set(np.nonzero(a[v])[0].tolist()) for v in verts)))
    v1: list[int] = []
    v3: list[int] = []
    stacked: list[np.ndarray] = []
    rank = 0
    for v in verts:
        candidate = stacked + [a[v, cols]]
        new_rank = np.linalg.matrix_rank(np.array(candidate), tol=tol_rel)
        if new_rank > rank:
            v1.append(v)
            stacked = candidate
            rank = new_rank
        else:
            v3.append(v)
    return tuple(v1), tuple(v3)


def plant_star_graph(
    seed: int,
    n: int,
    star_specs: Sequence[tuple[int, int, float]],
    background_p: float = 0.3,
) -> Graph:
    """Random graph containing the requested uniform-weight stars.

    Each spec (m, k, w) claims a disjoint block of m + k vertices: m star
    vertices attached to all k hub vertices with a shared weight vector
    summing to w.  Remaining vertices and hubs are wired with a spanning path
    plus random extra edges, never touching star vertices, so every planted
    class keeps its identical-neighborhood property.
    """
    rng = np.random.default_rng(seed)
    total = sum(m + k for m, k, _ in star_specs)
    if total > n:
        raise InfeasibleSpecError(f"star blocks need {total} vertices, only {n} available")
    for m, k, w in star_specs:
        if m < 2 or k < 1 or w <= 0:
            raise InfeasibleSpecError(f"invalid star spec (m={m}, k={k}, w={w})")

    edges: list[tuple[int, int, float]] = []
    cursor = 0
    v1_all: set[int] = set()
    v2_sets: list[set[int]] = []
    for m, k, w in star_specs:
        v1 = list(range(cursor, cursor + m))
        v2 = list(range(cursor + m, cursor + m + k))
        cursor += m + k
        v1_all.update(v1)
        v2_sets.append(set(v2))
        if k == 1:
            weights = [w]
        else:
            raw = rng.uniform(0.5, 1.5, size=k)
            weights = (raw * (w / raw.sum())).tolist()
        for i in v1:
            for j, wj in zip(v2, weights):
                edges.append((i, j, wj))

    background = [v for v in range(n) if v not in v1_all]
    existing = {(min(u, v), max(u, v)) for u, v, _ in edges}
    for a, b in zip(background, background[1:]):
        edges.append((a, b, float(rng.uniform(0.5, 1.5))))
        existing.add((min(a, b), max(a, b)))
    for i in range(len(background)):
        for j in range(i + 2, len(background)):
            u, v = background[i], background[j]
            if rng.random() < background_p and (u, v) not in existing:
                edges.append((u, v, float(rng.uniform(0.5, 1.5))))
                existing.add((u, v))

    # keep planted classes exact: no outside vertex may replicate a hub set
    neighborhoods: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v, _ in edges:
        neighborhoods[u].add(v)
        neighborhoods[v].add(u)
    for u in background:
        for v2 in v2_sets:
            if neighborhoods[u] == v2:
                targets = [x for x in background if x != u and x not in v2 and x not in neighborhoods[u]]
                if targets:
                    edges.append((u, targets[0], float(rng.uniform(0.5, 1.5))))
                    neighborhoods[u].add(targets[0])
                    neighborhoods[targets[0]].add(u)
    return build_graph(n, edges)


def plant_ldependent_graph(
    seed: int, sizes: tuple[int, int, int], wtilde: float
) -> Graph:
    """Random graph with a planted dependent-row partition of common strength.

    sizes = (|v1|, |v2|, l); vertices are laid out as v1, then v2, then v3.
    v1 rows are random positive weights over all of v2 rescaled to the common
    strength; each v3 row is a random convex combination of the v1 rows, so
    its strength matches by construction.
    """
    m1, k, l = sizes
    if m1 < 1 or k < 1 or l < 0 or wtilde <= 0:
        raise InfeasibleSpecError(f"invalid dependent-row spec (sizes={sizes}, w={wtilde})")
    rng = np.random.default_rng(seed)
    n = m1 + k + l
    v1 = list(range(m1))
    v2 = list(range(m1, m1 + k))
    v3 = list(range(m1 + k, n))
    rows = rng.uniform(0.5, 1.5, size=(m1, k))
    rows *= wtilde / rows.sum(axis=1, keepdims=True)
    edges = [(i, j, float(rows[a, b])) for a, i in enumerate(v1) for b, j in enumerate(v2)]
    for i in v3:
        coeffs = rng.uniform(0.2, 1.0, size=m1)
        coeffs /= coeffs.sum()
        combo = coeffs @ rows
        edges.extend((i, j, float(combo[b])) for b, j in enumerate(v2))
    return build_graph(n, edges)
