"""Fixed-locus contributions and localization sums.

Every graph contributes  I(Gamma) * T(Gamma) / e(N_Gamma) / a_Gamma  where
I evaluates the insertions at the marked vertices, T is the equivariant
twisting class (product target only), 1/e(N_Gamma) is the inverse Euler
class of the normal bundle assembled from edge and vertex factors, and
a_Gamma = |Aut(Gamma)| * prod d_e.

The genus-zero recipe used throughout, with omega_F the tangent weight of
the edge curve at the flag F = (v, e):

* edge factor: the inverse of e(H^0(C_e, f*TX)) with the single zero
  reparametrization mode removed; concretely the familiar
  (-1)^d d^{2d} / ((d!)^2 w^{2d}) tangent-line part divided by the
  interpolated normal weights, and on a product also by the stationary
  factor's tangent weights once per edge;
* vertex factor, val + n >= 3:   c(v)^{val-1} (prod_F 1/omega_F)
  (sum_F 1/omega_F)^{val+n-3}  with c(v) = e(T_p X);
* val = 2, n = 0:  c(v) / (omega_1 + omega_2)   (node smoothing);
* val = 1, n = 1:  1;      val = 1, n = 0:  omega_F.

A subtlety drives the module's two computation paths.  An unmarked
valence-2 vertex (i,j) strung between the diagonal points (i,i) and (j,j)
by edges of equal degree has omega_1 + omega_2 = 0 identically once the two
torus factors are identified, so its graph has no finite small-torus
contribution on its own.  Such "resonant" graphs are summed over their
label-flip orbit with weights moved along a line lambda^1 = lambda + eps*c,
lambda^2 = lambda into the big torus: each orbit sum is computed as a
truncated Laurent series in eps (coefficients are exact rational functions
of t) and the eps^0 coefficient is the small-torus value.  Poles in eps must
cancel inside the orbit; the code asserts that they do.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .graphs import (FixedGraph, GraphWithSymmetry, canonical_form,
                     enumerate_graphs, flip_vertices, with_symmetry)
from .ratfunc import TF_ONE, TF_ZERO, TFunction, tf_sum
from .schubert import Partition2, schur_eval, schur_eval_monomial
from .targets import (MODE_SMALL, TARGET_GR, TARGET_P, TARGET_PP,
                      WeightAssignment, edge_moving_data, sample_weights)

DEFAULT_SEED = 123456789


class DegenerateWeights(ArithmeticError):
    """A denominator vanished for the sampled weights."""


class OracleMismatch(AssertionError):
    """The two sides of a built-in double computation disagreed."""


# ---------------------------------------------------------------------------
# truncated Laurent series in the deformation parameter (TFunction coeffs)
# ---------------------------------------------------------------------------

def _tf(x) -> TFunction:
    if isinstance(x, TFunction):
        return x
    return TFunction.from_scalar(x)


class _Series:
    """sum_k coeffs[k] * eps^(shift+k); len(coeffs) tracked coefficients.

    Coefficients below `shift` are exactly zero.  Factors built by the
    deformed weight view are exact polynomials in eps, so stripping zero
    leading coefficients before inversion is always legitimate.
    """

    __slots__ = ("shift", "coeffs")

    def __init__(self, shift: int, coeffs: Sequence[TFunction]):
        self.shift = shift
        self.coeffs = tuple(coeffs)

    @staticmethod
    def const(value, prec: int) -> "_Series":
        return _Series(0, (_tf(value),) + (TF_ZERO,) * (prec - 1))

    @staticmethod
    def linear(c0, c1, prec: int) -> "_Series":
        pad = (TF_ZERO,) * (prec - 2)
        return _Series(0, (_tf(c0), _tf(c1)) + pad)

    def _coerced(self, other) -> "_Series":
        if isinstance(other, _Series):
            return other
        return _Series.const(other, len(self.coeffs))

    def __add__(self, other):
        other = self._coerced(other)
        lo = min(self.shift, other.shift)
        hi = min(self.shift + len(self.coeffs), other.shift + len(other.coeffs))
        if hi <= lo:
            raise ArithmeticError("series addition lost all precision")
        out = []
        for k in range(lo, hi):
            a = self.coeffs[k - self.shift] if 0 <= k - self.shift < len(self.coeffs) else TF_ZERO
            b = other.coeffs[k - other.shift] if 0 <= k - other.shift < len(other.coeffs) else TF_ZERO
            out.append(a + b)
        return _Series(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return _Series(self.shift, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __rsub__(self, other):
        return self._coerced(other) + (-self)

    def __mul__(self, other):
        other = self._coerced(other)
        prec = min(len(self.coeffs), len(other.coeffs))
        out = [TF_ZERO] * prec
        for i, a in enumerate(self.coeffs[:prec]):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs[:prec - i]):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _Series(self.shift + other.shift, out)

    __rmul__ = __mul__

    def inverse(self) -> "_Series":
        k = 0
        while k < len(self.coeffs) and self.coeffs[k].is_zero():
            k += 1
        if k == len(self.coeffs):
            raise ZeroDivisionError("inverting a series that is zero to tracked order")
        unit = self.coeffs[k:]
        prec = len(unit)
        lead = unit[0]
        inv = [TF_ONE / lead]
        for j in range(1, prec):
            acc = TF_ZERO
            for i in range(1, j + 1):
                if i < len(unit) and not unit[i].is_zero():
                    acc = acc + unit[i] * inv[j - i]
            inv.append(-acc / lead)
        return _Series(-(self.shift + k), inv)

    def __truediv__(self, other):
        return self * self._coerced(other).inverse()

    def __rtruediv__(self, other):
        return self._coerced(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = _Series.const(1, len(self.coeffs))
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, power: int) -> TFunction:
        idx = power - self.shift
        if idx < 0:
            return TF_ZERO
        if idx >= len(self.coeffs):
            raise ArithmeticError(f"eps^{power} not tracked (shift {self.shift}, "
                                  f"prec {len(self.coeffs)})")
        return self.coeffs[idx]


# ---------------------------------------------------------------------------
# weight views: plain exact values, or values deformed off the small torus
# ---------------------------------------------------------------------------

class _PlainView:
    """Weights as given; scalar algebra is Fraction, twist algebra TFunction."""

    def __init__(self, w: WeightAssignment):
        self.w = w
        self._edge_cache: Dict[tuple, Fraction] = {}
        self._tan_cache: Dict[tuple, Fraction] = {}

    def lam(self, h: int, i: int):
        return self.w.lam(h, i)

    def tvar(self):
        return TFunction.variable()

    def schur(self, mu: Partition2, x1, x2):
        return schur_eval(mu, x1, x2)

    def edge_factor(self, target, n, la, lb, d):
        key = (target, la, lb, d)
        out = self._edge_cache.get(key)
        if out is None:
            out = _edge_factor_generic(self, target, n, la, lb, d)
            self._edge_cache[key] = out
        return out

    def target_tangent(self, target, n, label):
        key = (target, label)
        out = self._tan_cache.get(key)
        if out is None:
            out = _target_tangent_generic(self, target, n, label)
            self._tan_cache[key] = out
        return out


class _DeformedView:
    """Weights moved to lambda^1 = lambda + eps*c, lambda^2 = lambda.

    The direction c only needs pairwise-distinct entries; the eps^0
    coefficient of any orbit sum is direction independent.
    """

    def __init__(self, w: WeightAssignment, prec: int,
                 direction: Optional[Sequence[Fraction]] = None):
        if w.mode != MODE_SMALL:
            raise ValueError("the deformation starts from a small-torus assignment")
        c = [Fraction(i + 1) for i in range(w.n)] if direction is None else \
            [Fraction(x) for x in direction]
        base = [TFunction.from_scalar(v) for v in w.lam1]
        cdir = [TFunction.from_scalar(v) for v in c]
        self.prec = prec
        self._tab = {
            1: [_Series(0, (base[i], cdir[i]) + (TF_ZERO,) * (prec - 2))
                for i in range(w.n)],
            2: [_Series(0, (base[i],) + (TF_ZERO,) * (prec - 1))
                for i in range(w.n)],
        }

    def lam(self, h: int, i: int):
        return self._tab[h][i]

    def tvar(self):
        return _Series.const(TFunction.variable(), self.prec)

    def schur(self, mu: Partition2, x1, x2):
        return schur_eval_monomial(mu, x1, x2)

    def edge_factor(self, target, n, la, lb, d):
        return _edge_factor_generic(self, target, n, la, lb, d)

    def target_tangent(self, target, n, label):
        return _target_tangent_generic(self, target, n, label)


_PLAIN_VIEWS: Dict[WeightAssignment, _PlainView] = {}


def _view(w: WeightAssignment) -> _PlainView:
    v = _PLAIN_VIEWS.get(w)
    if v is None:
        v = _PLAIN_VIEWS[w] = _PlainView(w)
    return v


# ---------------------------------------------------------------------------
# the localization formulas, written once for both views
# ---------------------------------------------------------------------------

def _edge_factor_generic(view, target, n, la, lb, d):
    """Inverse Euler class of the map deformations along one edge."""
    lam = view.lam
    _, a, b = edge_moving_data(target, la, lb)
    if target == TARGET_PP:
        h = edge_moving_data(target, la, lb)[0]
    else:
        h = 1
    w = lam(h, a) - lam(h, b)
    out = Fraction((-1) ** d * d ** (2 * d), math.factorial(d) ** 2) / w ** (2 * d)
    if target in (TARGET_P, TARGET_PP):
        for k in range(n):
            if k in (a, b):
                continue
            lk = lam(h, k)
            for i in range(d + 1):
                out = out / ((i * lam(h, a) + (d - i) * lam(h, b)) / d - lk)
        if target == TARGET_PP:
            h2 = 3 - h
            stat = la.j if h == 1 else la.i
            ls = lam(h2, stat)
            for mm in range(n):
                if mm != stat:
                    out = out / (ls - lam(h2, mm))
    else:
        s = (set(la) & set(lb)).pop()
        ls = lam(1, s)
        for k in range(n):
            if k in (s, a, b):
                continue
            lk = lam(1, k)
            for i in range(d + 1):
                out = out / ((i * lam(1, a) + (d - i) * lam(1, b)) / d - lk)
            out = out / (ls - lk)
        for i in range(d + 1):
            out = out / (ls - (i * lam(1, a) + (d - i) * lam(1, b)) / d)
    return out


def _target_tangent_generic(view, target, n, label):
    """e(T_p X): the product of all tangent weights at the fixed point."""
    lam = view.lam
    out = Fraction(1)
    if target == TARGET_P:
        for mm in range(n):
            if mm != label:
                out = out * (lam(1, label) - lam(1, mm))
    elif target == TARGET_PP:
        for mm in range(n):
            if mm != label.i:
                out = out * (lam(1, label.i) - lam(1, mm))
            if mm != label.j:
                out = out * (lam(2, label.j) - lam(2, mm))
    else:
        for k in range(n):
            if k not in label:
                out = out * (lam(1, label.i) - lam(1, k)) * (lam(1, label.j) - lam(1, k))
    return out


def _flag_omegas(view, g: FixedGraph) -> Dict[int, list]:
    """Tangent weight of the edge curve at each flag, grouped by vertex."""
    lam = view.lam
    out: Dict[int, list] = {v: [] for v in range(g.num_vertices)}
    for (u, v, d) in g.edges:
        lu, lv = g.labels[u], g.labels[v]
        f, dep, arr = edge_moving_data(g.target, lu, lv)
        h = f if f else 1
        out[u].append((lam(h, dep) - lam(h, arr)) / d)
        out[v].append((lam(h, arr) - lam(h, dep)) / d)
    return out


def _vertex_factor_generic(view, g: FixedGraph, v: int, omegas: list):
    val = len(omegas)
    nm = g.marks_at(v)
    if val + nm <= 2:
        if val == 2:
            c = view.target_tangent(g.target, g.n, g.labels[v])
            return c / (omegas[0] + omegas[1])
        if nm == 1:
            return Fraction(1)
        return omegas[0]
    c = view.target_tangent(g.target, g.n, g.labels[v])
    out = c ** (val - 1)
    s = Fraction(0)
    for om in omegas:
        out = out / om
        s = s + 1 / om
    return out * s ** (val + nm - 3)


def _inv_euler_generic(view, g: FixedGraph):
    out = Fraction(1)
    for (u, v, d) in g.edges:
        out = out * view.edge_factor(g.target, g.n, g.labels[u], g.labels[v], d)
    omegas = _flag_omegas(view, g)
    for v in range(g.num_vertices):
        out = out * _vertex_factor_generic(view, g, v, omegas[v])
    return out


def _insertion_generic(view, g: FixedGraph, insertions):
    if len(insertions) != g.m:
        raise ValueError(f"{g.m} markings but {len(insertions)} insertions")
    out = Fraction(1)
    for k, v in enumerate(g.markings):
        lab = g.labels[v]
        ins = insertions[k]
        if g.target == TARGET_P:
            out = out * view.lam(1, lab) ** ins
        elif g.target == TARGET_PP:
            out = out * view.schur(ins, view.lam(1, lab.i), view.lam(2, lab.j))
        else:
            out = out * view.schur(ins, view.lam(1, lab.i), view.lam(1, lab.j))
    return out


def _twist_generic(view, g: FixedGraph):
    """Euler class of the index bundle of the root-system twist, dilated by t.

    With Delta_v = lambda^1 at the first coordinate minus lambda^2 at the
    second, the contribution is

        prod_v (t + Delta_v) (t - Delta_v)^(1 - val(v))
        * prod_e prod_{0<j<d_e} (t + u_j) / (t - u_j),

    u_j the interior interpolations of Delta along the degree-d_e cover.
    Both summands of the rank-2 bundle scale with weight +t, which forces a
    monic leading t^2 (no global sign) and leaves t^(2-val) at diagonal
    vertices.  For unit-degree edges the interior product is empty.
    """
    t = view.tvar()
    valences = [0] * g.num_vertices
    for (u, v, _) in g.edges:
        valences[u] += 1
        valences[v] += 1
    deltas = [view.lam(1, lab.i) - view.lam(2, lab.j) for lab in g.labels]
    out = None
    for v in range(g.num_vertices):
        factor = (t + deltas[v]) * (t - deltas[v]) ** (1 - valences[v])
        out = factor if out is None else out * factor
    for (a, b, d) in g.edges:
        for j in range(1, d):
            u = ((d - j) * deltas[a] + j * deltas[b]) / d
            out = out * (t + u) / (t - u)
    return out


def _graph_total_generic(view, gws: GraphWithSymmetry, insertions):
    g = gws.graph
    out = _inv_euler_generic(view, g) * _insertion_generic(view, g, insertions)
    if g.target == TARGET_PP:
        out = _twist_generic(view, g) * out
    return out / gws.divisor


# ---------------------------------------------------------------------------
# public per-graph operations
# ---------------------------------------------------------------------------

def inv_euler_class(g: FixedGraph, w: WeightAssignment) -> Fraction:
    """1/e(N_Gamma), the full inverse normal-bundle Euler class."""
    try:
        return _inv_euler_generic(_view(w), g)
    except ZeroDivisionError as exc:
        raise DegenerateWeights(str(exc)) from exc


def vertex_factor(g: FixedGraph, v: int, w: WeightAssignment) -> Fraction:
    view = _view(w)
    try:
        return _vertex_factor_generic(view, g, v, _flag_omegas(view, g)[v])
    except ZeroDivisionError as exc:
        raise DegenerateWeights(str(exc)) from exc


def edge_factor(g: FixedGraph, edge_index: int, w: WeightAssignment) -> Fraction:
    u, v, d = g.edges[edge_index]
    return _view(w).edge_factor(g.target, g.n, g.labels[u], g.labels[v], d)


def insertion_value(g: FixedGraph, insertions, w: WeightAssignment) -> Fraction:
    return _insertion_generic(_view(w), g, insertions)


def twist_value(g: FixedGraph, w: WeightAssignment) -> TFunction:
    if g.target != TARGET_PP:
        raise ValueError("the twisting class lives on the product target")
    return _twist_generic(_view(w), g)


def graph_total(gws: GraphWithSymmetry, insertions, w: WeightAssignment) -> TFunction:
    try:
        out = _graph_total_generic(_view(w), gws, insertions)
    except ZeroDivisionError as exc:
        raise DegenerateWeights(str(exc)) from exc
    if isinstance(out, TFunction):
        return out
    return TFunction.from_scalar(out)


# ---------------------------------------------------------------------------
# resonant graphs and their orbit sums
# ---------------------------------------------------------------------------

def resonant_vertices(g: FixedGraph, w: WeightAssignment) -> Tuple[int, ...]:
    """Unmarked valence-2 vertices whose two flag weights cancel exactly.

    Under a certified-generic small-torus assignment this happens only for a
    vertex (i,j) bridging the diagonal points (i,i) and (j,j) with equal edge
    degrees, and it makes the single-graph contribution divergent.
    """
    if g.target != TARGET_PP or w.mode != MODE_SMALL:
        return ()
    view = _view(w)
    omegas = _flag_omegas(view, g)
    out = []
    for v in range(g.num_vertices):
        if len(omegas[v]) == 2 and g.marks_at(v) == 0:
            if omegas[v][0] + omegas[v][1] == 0:
                out.append(v)
    return tuple(out)


def resonance_orbit(g: FixedGraph, res: Sequence[int]) -> List[GraphWithSymmetry]:
    """Distinct graphs obtained by flipping any subset of resonant vertices."""
    seen: Dict[bytes, FixedGraph] = {}
    for bits in range(1 << len(res)):
        subset = [res[i] for i in range(len(res)) if bits >> i & 1]
        gg = flip_vertices(g, subset)
        seen.setdefault(canonical_form(gg), gg)
    return [with_symmetry(seen[c]) for c in sorted(seen)]


def orbit_total(members: Sequence[GraphWithSymmetry], insertions,
                w: WeightAssignment,
                direction: Optional[Sequence[Fraction]] = None) -> TFunction:
    """Small-torus limit of the summed contributions of a flip orbit.

    Each member is evaluated on the deformed line; poles in the deformation
    parameter must cancel inside the orbit and the eps^0 coefficient is the
    exact answer.
    """
    counts = {len(resonant_vertices(gws.graph, w)) for gws in members}
    if len(counts) != 1:
        raise DegenerateWeights(f"orbit members disagree on resonance: {counts}")
    depth = counts.pop()
    view = _DeformedView(w, depth + 2, direction)
    acc = None
    for gws in members:
        term = _graph_total_generic(view, gws, insertions)
        acc = term if acc is None else acc + term
    for power in range(acc.shift, 0):
        coeff = acc.coefficient(power)
        if not coeff.is_zero():
            raise DegenerateWeights(
                f"uncancelled eps^{power} pole in a resonance orbit: {coeff}")
    return acc.coefficient(0)


# ---------------------------------------------------------------------------
# localization sums
# ---------------------------------------------------------------------------

class _PPTerms(NamedTuple):
    plain: List[Tuple[Tuple, int, TFunction]]  # (marking labels, m, rest)
    orbits: List[List[GraphWithSymmetry]]
    graph_count: int


_PP_TERMS_CACHE: Dict[tuple, _PPTerms] = {}
_GR_TERMS_CACHE: Dict[tuple, list] = {}


def _restrict_ok(g: FixedGraph, restrict: str) -> bool:
    if restrict == "all":
        return True
    if restrict == "U":
        return not g.touches_diagonal()
    if restrict == "D":
        return g.touches_diagonal()
    raise ValueError(f"unknown restriction {restrict!r}")


def _pp_terms(n: int, bidegree, m: int, w: WeightAssignment,
              restrict: str) -> _PPTerms:
    key = (n, tuple(bidegree), m, w, restrict)
    cached = _PP_TERMS_CACHE.get(key)
    if cached is not None:
        return cached
    view = _view(w)
    plain: List[Tuple[Tuple, int, TFunction]] = []
    orbits: List[List[GraphWithSymmetry]] = []
    seen_resonant: set = set()
    count = 0
    for gws in enumerate_graphs(TARGET_PP, n, tuple(bidegree), m):
        g = gws.graph
        if not _restrict_ok(g, restrict):
            continue
        count += 1
        res = resonant_vertices(g, w)
        if not res:
            rest = _twist_generic(view, g) * _inv_euler_generic(view, g)
            rest = rest / gws.divisor
            marks = tuple(g.labels[v] for v in g.markings)
            plain.append((marks, g.m, rest))
        else:
            c = canonical_form(g)
            if c in seen_resonant:
                continue
            orbit = resonance_orbit(g, res)
            for ogws in orbit:
                seen_resonant.add(canonical_form(ogws.graph))
            orbits.append(orbit)
    out = _PPTerms(plain, orbits, count)
    _PP_TERMS_CACHE[key] = out
    return out


def _pp_eval(terms: _PPTerms, insertions, w: WeightAssignment) -> TFunction:
    view = _view(w)

    def scalar_terms():
        for marks, m, rest in terms.plain:
            ins = Fraction(1)
            for k, lab in enumerate(marks):
                ins *= view.schur(insertions[k], view.lam(1, lab.i), view.lam(2, lab.j))
            yield rest.scale(ins)

    total = tf_sum(scalar_terms())
    for orbit in terms.orbits:
        total = total + orbit_total(orbit, insertions, w)
    return total


def _gr_terms(n: int, d: int, m: int, w: WeightAssignment) -> list:
    key = (n, d, m, w)
    cached = _GR_TERMS_CACHE.get(key)
    if cached is not None:
        return cached
    view = _view(w)
    out = []
    for gws in enumerate_graphs(TARGET_GR, n, d, m):
        g = gws.graph
        rest = _inv_euler_generic(view, g) / gws.divisor
        out.append((tuple(g.labels[v] for v in g.markings), rest))
    _GR_TERMS_CACHE[key] = out
    return out


def _gr_eval(terms: list, insertions, w: WeightAssignment) -> Fraction:
    view = _view(w)
    total = Fraction(0)
    for marks, rest in terms:
        ins = Fraction(1)
        for k, lab in enumerate(marks):
            ins *= view.schur(insertions[k], view.lam(1, lab.i), view.lam(1, lab.j))
        total += rest * ins
    return total


def _codim(insertions) -> int:
    return sum(mu.codim for mu in insertions)


def gr_vdim(n: int, d: int, m: int) -> int:
    return 2 * (n - 2) + n * d + m - 3


def pp_vdim(n: int, total_degree: int, m: int) -> int:
    return 2 * (n - 1) + n * total_degree + m - 3


def small_weights(n: int, seed: int, degree_bound: int) -> WeightAssignment:
    return sample_weights(n, seed, mode=MODE_SMALL, degree_bound=max(degree_bound, 1))


def _retry_weights(n: int, seed: int, degree_bound: int, attempt: int) -> WeightAssignment:
    return small_weights(n, seed + 1000003 * attempt, degree_bound)


def gr_invariant(n: int, d: int, insertions: Sequence[Partition2],
                 seed: int = DEFAULT_SEED,
                 weights: Optional[WeightAssignment] = None) -> Fraction:
    """Genus-zero m-pointed invariant of Gr(2,n) by fixed-point summation.

    Exceeding the virtual dimension forces the value 0 by the grading of the
    (non-equivariant) insertions; below it the fixed-point sum itself
    collapses to 0 and is computed in full.
    """
    if d < 1:
        raise ValueError("the Grassmannian pipeline needs degree >= 1")
    for mu in insertions:
        if not mu.fits_box(n):
            raise ValueError(f"partition {mu} does not fit the 2 x {n - 2} box")
    m = len(insertions)
    if _codim(insertions) > gr_vdim(n, d, m):
        return Fraction(0)
    last: Exception | None = None
    for attempt in range(5):
        w = weights if weights is not None else _retry_weights(n, seed, d, attempt)
        try:
            return _gr_eval(_gr_terms(n, d, m, w), insertions, w)
        except (DegenerateWeights, ZeroDivisionError) as exc:
            last = exc
            if weights is not None:
                raise DegenerateWeights(str(exc)) from exc
    raise DegenerateWeights(f"no usable weights after retries: {last}")


class PPInvariant(NamedTuple):
    total: TFunction
    at_zero: Fraction
    graph_count: int


def twisted_pp_invariant(n: int, bidegree, insertions: Sequence[Partition2],
                         seed: int = DEFAULT_SEED, restrict: str = "all",
                         weights: Optional[WeightAssignment] = None) -> PPInvariant:
    """Twisted invariant of the product target for one bidegree.

    Returns the full t-dependent total and its value at t=0.  The total over
    all graphs is regular at t=0; a pole here signals an implementation bug,
    not a user error.
    """
    d1, d2 = bidegree
    if d1 < 0 or d2 < 0:
        raise ValueError(f"negative bidegree {bidegree}")
    for mu in insertions:
        if not mu.fits_box(n):
            raise ValueError(f"partition {mu} does not fit the 2 x {n - 2} box")
    m = len(insertions)
    if _codim(insertions) > gr_vdim(n, d1 + d2, m):
        return PPInvariant(TF_ZERO, Fraction(0), 0)
    last: Exception | None = None
    for attempt in range(5):
        w = weights if weights is not None else _retry_weights(n, seed, d1 + d2, attempt)
        try:
            terms = _pp_terms(n, bidegree, m, w, restrict)
            total = _pp_eval(terms, insertions, w)
            return PPInvariant(total, total.eval_at_zero(), terms.graph_count)
        except (DegenerateWeights, ZeroDivisionError) as exc:
            last = exc
            if weights is not None:
                raise DegenerateWeights(str(exc)) from exc
    raise DegenerateWeights(f"no usable weights after retries: {last}")


class CorrespondenceReport(NamedTuple):
    n: int
    d: int
    insertions: tuple
    gr_value: Fraction
    pp_value: Fraction
    equal: bool
    bidegree_values: Tuple[Tuple[Tuple[int, int], Fraction], ...]


def correspondence_check(n: int, d: int, insertions: Sequence[Partition2],
                         seed: int = DEFAULT_SEED,
                         weights: Optional[WeightAssignment] = None,
                         disable_twist: bool = False) -> CorrespondenceReport:
    """Grassmannian invariant against half the bidegree sum of twisted ones.

    ``disable_twist`` is a deliberate fault hook for regression tests; it
    replaces T(Gamma) by 1 and must break the equality.
    """
    w = weights if weights is not None else small_weights(n, seed, d)
    grv = gr_invariant(n, d, insertions, seed=seed, weights=w)
    per = []
    acc = Fraction(0)
    for d1 in range(d + 1):
        if disable_twist:
            val = _pp_untwisted_value(n, (d1, d - d1), insertions, w)
        else:
            val = twisted_pp_invariant(n, (d1, d - d1), insertions,
                                       seed=seed, weights=w).at_zero
        per.append(((d1, d - d1), val))
        acc += val
    ppv = acc / 2
    return CorrespondenceReport(n, d, tuple(insertions), grv, ppv,
                                grv == ppv, tuple(per))


def _pp_untwisted_value(n, bidegree, insertions, w) -> Fraction:
    """Fault-injection path: the bidegree sum without the twisting class."""
    view = _view(w)
    total = Fraction(0)
    for gws in enumerate_graphs(TARGET_PP, n, tuple(bidegree), len(insertions)):
        g = gws.graph
        if resonant_vertices(g, w):
            continue  # divergent either way; the hook only needs to break equality
        total += (_inv_euler_generic(view, g)
                  * _insertion_generic(view, g, insertions)) / gws.divisor
    return total


class DimensionReport(NamedTuple):
    vdim_gr: int
    vdim_pp: int
    difference: int
    codim_sum: int
    matches: bool
    genus: int


def dimension_difference(k: int, genus: int) -> int:
    """Moduli dimension gap between the product and Grassmannian sides."""
    if genus == 0:
        return k * k - k
    if genus == 1:
        return 0
    raise ValueError("the twisting bundle has negative expected rank for genus >= 2")


def dimension_check(n: int, k: int, d, m: int,
                    insertions: Sequence[Partition2] = (),
                    genus: int = 0) -> DimensionReport:
    total = sum(d) if isinstance(d, (tuple, list)) else d
    if genus == 0:
        vg = k * (n - k) + n * total + m - 3
        vp = k * (n - 1) + n * total + m - 3
    else:
        vg = vp = n * total + m
    codim = _codim(insertions)
    return DimensionReport(vg, vp, dimension_difference(k, genus), codim,
                           codim == vg, genus)


def edge_bundle_oracle(d: int, c0: Fraction, cinf: Fraction) -> Fraction:
    """Euler class of H0 - H1 for L + L-dual on a line, both ways.

    Computes the interpolated weight products and the closed form
    (-1)^d c0 cinf, asserts they agree, and returns the closed form.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    c0, cinf = Fraction(c0), Fraction(cinf)
    closed = (-1) ** d * c0 * cinf
    if d == 0:
        product_side = c0 * cinf  # degenerate by convention: empty H1 product
    else:
        h0 = Fraction(1)
        for i in range(d + 1):
            h0 *= Fraction((d - i), d) * c0 + Fraction(i, d) * cinf
        h1 = Fraction((-1) ** d)
        for i in range(1, d):
            h1 *= Fraction((d - i), d) * c0 + Fraction(i, d) * cinf
        product_side = h0 / h1
    if product_side != closed:
        raise OracleMismatch(f"edge bundle mismatch: {product_side} != {closed}")
    return closed
