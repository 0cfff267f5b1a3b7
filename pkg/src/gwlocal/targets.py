"""Fixed points, invariant curves and torus weights for the three targets.

Targets are tagged by short strings:

* ``"p"``   a single projective space P^{n-1} (used for small cross-checks),
* ``"pp"``  the product P^{n-1} x P^{n-1} under the big torus ((C*)^n)^2,
* ``"gr"``  the Grassmannian Gr(2,n) under the small torus (C*)^n.

Sign convention, used consistently everywhere: the weight of the invariant
curve at the fixed point p, pointing toward the fixed point q, is
chi(p) - chi(q), where chi assigns lambda_i to the i-th coordinate point.
Equivalently the hyperplane class of factor h restricts to lambda_i^h at a
point whose factor-h index is i.  The full tangent space at a point is then

* P^{n-1} at i:           { lambda_i - lambda_m, m != i }
* product at (i, j):      factor-1 list at i plus factor-2 list at j
* Gr(2,n) at {i, j}:      { lambda_i - lambda_k, lambda_j - lambda_k, k not in {i,j} }

A global flip of every lambda is unobservable in the end results; mixing
conventions between factors is not, and the lambda-independence tests exist
to catch exactly that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

TARGET_P = "p"
TARGET_PP = "pp"
TARGET_GR = "gr"


class WrongTarget(TypeError):
    """An operation was applied to a fixed point of the wrong target."""


class GenericityFailure(ValueError):
    """A weight assignment makes some required denominator vanish."""


class PPPoint(NamedTuple):
    """Fixed point of the product target; coordinate order is significant."""

    i: int
    j: int


class GrPoint(NamedTuple):
    """Fixed point <ij> of Gr(2,n); stored with i < j."""

    i: int
    j: int


def gr_point(i: int, j: int) -> GrPoint:
    if i == j:
        raise ValueError(f"Grassmannian fixed points need two distinct indices, got {i},{j}")
    return GrPoint(min(i, j), max(i, j))


def is_diagonal(p) -> bool:
    """True for a product point (i, i) on the unstable diagonal."""
    if not isinstance(p, PPPoint):
        raise WrongTarget(f"is_diagonal expects a product fixed point, got {p!r}")
    return p.i == p.j


class InvariantEdge(NamedTuple):
    """An invariant curve between two fixed points.

    moving_factor is 1 or 2 on the product target and None otherwise.
    """

    a: object
    b: object
    moving_factor: Optional[int]


def fixed_points(target: str, n: int) -> list:
    if n < 2 or (target == TARGET_GR and n < 3):
        raise ValueError(f"target {target!r} needs a bigger n than {n}")
    if target == TARGET_P:
        return list(range(n))
    if target == TARGET_PP:
        return [PPPoint(i, j) for i in range(n) for j in range(n)]
    if target == TARGET_GR:
        return [GrPoint(i, j) for i in range(n) for j in range(i + 1, n)]
    raise ValueError(f"unknown target {target!r}")


def invariant_edges(target: str, n: int) -> List[InvariantEdge]:
    """All invariant curves; n^2 (n-1) of them on the product, 3 C(n,3) on Gr."""
    out: List[InvariantEdge] = []
    if target == TARGET_P:
        for i in range(n):
            for j in range(i + 1, n):
                out.append(InvariantEdge(i, j, None))
    elif target == TARGET_PP:
        for p in fixed_points(TARGET_PP, n):
            for m in range(p.i + 1, n):
                out.append(InvariantEdge(p, PPPoint(m, p.j), 1))
            for m in range(p.j + 1, n):
                out.append(InvariantEdge(p, PPPoint(p.i, m), 2))
    elif target == TARGET_GR:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    out.append(InvariantEdge(GrPoint(i, j), GrPoint(i, k), None))
                    out.append(InvariantEdge(GrPoint(i, j), GrPoint(j, k), None))
                    out.append(InvariantEdge(GrPoint(i, k), GrPoint(j, k), None))
    else:
        raise ValueError(f"unknown target {target!r}")
    return out


def edge_moving_data(target: str, a, b) -> Tuple[int, int, int]:
    """(moving_factor_or_0, departing index, arriving index) for edge a -> b.

    For Gr the "factor" slot is 0 and the indices are the non-shared pair.
    Raises if a, b are not joined by an invariant curve.
    """
    if target == TARGET_PP:
        if a.j == b.j and a.i != b.i:
            return 1, a.i, b.i
        if a.i == b.i and a.j != b.j:
            return 2, a.j, b.j
        raise ValueError(f"no invariant curve between {a} and {b}")
    if target == TARGET_GR:
        sa, sb = set(a), set(b)
        shared = sa & sb
        if len(shared) != 1:
            raise ValueError(f"no invariant curve between {a} and {b}")
        return 0, (sa - shared).pop(), (sb - shared).pop()
    if target == TARGET_P:
        if a == b:
            raise ValueError(f"no invariant curve between {a} and {b}")
        return 0, a, b
    raise ValueError(f"unknown target {target!r}")


# ---------------------------------------------------------------------------
# weight assignments
# ---------------------------------------------------------------------------

MODE_BIG = "big"
MODE_SMALL = "small"


@dataclass(frozen=True)
class WeightAssignment:
    """Numeric torus characters lambda_i^h, h in {1, 2}.

    In small-torus mode the two factors coincide entry by entry.  Values are
    exact rationals; genericity against a degree bound is certified at
    construction time.
    """

    mode: str
    n: int
    lam1: Tuple[Fraction, ...]
    lam2: Tuple[Fraction, ...]
    degree_bound: int = 3

    def lam(self, h: int, i: int) -> Fraction:
        return self.lam1[i] if h == 1 else self.lam2[i]

    def small(self, i: int) -> Fraction:
        if self.mode != MODE_SMALL:
            raise GenericityFailure("small-torus value requested from a big-torus assignment")
        return self.lam1[i]


def _check_factor_generic(lam: Sequence[Fraction], d_max: int) -> Optional[str]:
    n = len(lam)
    for i in range(n):
        for j in range(n):
            if i != j and lam[i] == lam[j]:
                return f"lambda_{i} = lambda_{j}"
    # interpolated edge weights (a lam_i + b lam_j)/d - lam_k
    for d in range(1, d_max + 1):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for a in range(d + 1):
                    v = a * lam[i] + (d - a) * lam[j]
                    for k in range(n):
                        if k in (i, j):
                            continue
                        if v == d * lam[k]:
                            return f"({a}l{i}+{d - a}l{j})/{d} = l{k}"
    # node-smoothing sums d2 (l_i - l_j) + d1 (l_k - l_l)
    for d1 in range(1, d_max + 1):
        for d2 in range(1, d_max + 1):
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    for k in range(n):
                        for l in range(n):
                            if k == l:
                                continue
                            if d2 * (lam[i] - lam[j]) + d1 * (lam[k] - lam[l]) == 0:
                                if (i, j, d1) != (l, k, d2):
                                    return f"flag sum ({i},{j},{d1})+({k},{l},{d2})"
    return None


def _check_cross_generic(lam1, lam2) -> Optional[str]:
    for i, x in enumerate(lam1):
        for j, y in enumerate(lam2):
            if x == y:
                return f"lambda^1_{i} = lambda^2_{j}"
    return None


def validate_generic(w: WeightAssignment) -> None:
    """Raise GenericityFailure if any denominator the pipeline can form vanishes."""
    msg = _check_factor_generic(w.lam1, w.degree_bound)
    if msg is None and w.mode == MODE_BIG:
        msg = _check_factor_generic(w.lam2, w.degree_bound) or _check_cross_generic(w.lam1, w.lam2)
    if msg is not None:
        raise GenericityFailure(f"degenerate weights: {msg}")


def weight_assignment(values: Sequence[int | Fraction], mode: str = MODE_SMALL,
                      degree_bound: int = 3) -> WeightAssignment:
    """Build and certify an assignment from explicit values.

    Small mode takes n values; big mode takes 2n (factor 1 then factor 2).
    """
    vals = tuple(Fraction(v) for v in values)
    if mode == MODE_SMALL:
        w = WeightAssignment(MODE_SMALL, len(vals), vals, vals, degree_bound)
    elif mode == MODE_BIG:
        if len(vals) % 2:
            raise ValueError("big-torus assignment needs an even number of values")
        n = len(vals) // 2
        w = WeightAssignment(MODE_BIG, n, vals[:n], vals[n:], degree_bound)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    validate_generic(w)
    return w


def sample_weights(n: int, seed: int, mode: str = MODE_SMALL,
                   degree_bound: int = 3, bound: int = 10 ** 6) -> WeightAssignment:
    """Deterministic generic weights from a seeded stream of small integers.

    Rejection-samples until the genericity certificate passes, so the result
    depends only on (n, seed, mode, degree_bound).
    """
    rng = random.Random((seed, n, mode, degree_bound))
    count = n if mode == MODE_SMALL else 2 * n
    for _ in range(1000):
        vals = [rng.randint(-bound, bound) for _ in range(count)]
        try:
            return weight_assignment(vals, mode, degree_bound)
        except GenericityFailure:
            continue
    raise GenericityFailure(f"no generic weights found for n={n}, seed={seed}")


def specialize(w: WeightAssignment,
               small_values: Optional[Sequence[int | Fraction]] = None) -> WeightAssignment:
    """Erase the factor superscripts, landing on the small torus.

    Either the big assignment already has equal factors, or an explicit small
    vector is supplied.  Idempotent on small-torus assignments.
    """
    if w.mode == MODE_SMALL and small_values is None:
        return w
    if small_values is not None:
        vals = tuple(Fraction(v) for v in small_values)
        if len(vals) != w.n:
            raise ValueError(f"expected {w.n} small-torus values, got {len(vals)}")
    elif w.lam1 == w.lam2:
        vals = w.lam1
    else:
        raise GenericityFailure(
            "big-torus factors differ; supply the small vector to specialize")
    out = WeightAssignment(MODE_SMALL, w.n, vals, vals, w.degree_bound)
    validate_generic(out)
    return out


def tangent_weights(p, w: WeightAssignment) -> List[Fraction]:
    """Weights of the target tangent space at the fixed point p."""
    if isinstance(p, GrPoint):
        lam = w.lam1  # Gr lives under the small torus; factors agree
        return [lam[a] - lam[k] for k in range(w.n) if k not in p for a in p]
    if isinstance(p, PPPoint):
        out = [w.lam1[p.i] - w.lam1[m] for m in range(w.n) if m != p.i]
        out += [w.lam2[p.j] - w.lam2[m] for m in range(w.n) if m != p.j]
        return out
    if isinstance(p, int):
        return [w.lam1[p] - w.lam1[m] for m in range(w.n) if m != p]
    raise WrongTarget(f"not a fixed point: {p!r}")
