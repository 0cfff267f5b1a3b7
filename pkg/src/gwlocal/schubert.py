"""Two-row Schubert calculus on Gr(2,n) and its Schur-polynomial lifts.

Classes in H*(Gr(2,n)) are expanded in the Schubert basis indexed by
partitions (mu1 >= mu2 >= 0) inside the 2 x (n-2) box.  Cup products are
computed by iterated Pieri rules (multiplication by sigma_1 and by
sigma_(1,1) generates everything for two rows), integrals read off the
coefficient of the point class, and the degree-zero correspondence with
H*((P^{n-1})^2) is checked through an explicit bivariate polynomial ring.

A small quantum cohomology oracle (Bertram-style quantum Pieri plus the
Giambelli recursion) produces all 3-point genus-zero invariants without any
localization; the localization pipeline is tested against it but never
feeds it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Tuple


class InvalidDimension(ValueError):
    """Raised for targets below the minimum supported dimension."""


class Partition2(NamedTuple):
    """A partition with at most two rows, mu1 >= mu2 >= 0."""

    mu1: int
    mu2: int

    @property
    def codim(self) -> int:
        return self.mu1 + self.mu2

    def fits_box(self, n: int) -> bool:
        return 0 <= self.mu2 <= self.mu1 <= n - 2


def partition(mu1: int, mu2: int = 0) -> Partition2:
    if not (mu1 >= mu2 >= 0):
        raise ValueError(f"not a two-row partition: ({mu1},{mu2})")
    return Partition2(mu1, mu2)


def partitions_in_box(n: int) -> List[Partition2]:
    """All Schubert indices for Gr(2,n), in lexicographic order.

    There are C(n,2) of them.
    """
    if n < 3:
        raise InvalidDimension(f"Gr(2,n) needs n >= 3, got n={n}")
    return [Partition2(a, b) for a in range(n - 1) for b in range(a + 1)]


def dual_partition(mu: Partition2, n: int) -> Partition2:
    """Poincare dual index: the complement in the 2 x (n-2) box."""
    return Partition2(n - 2 - mu.mu2, n - 2 - mu.mu1)


# ---------------------------------------------------------------------------
# Schur polynomial in two variables
# ---------------------------------------------------------------------------

def schur_eval(mu: Partition2, x1: Fraction, x2: Fraction) -> Fraction:
    """S_mu(x1, x2), exact.

    Uses the bialternant quotient away from the diagonal and the closed
    monomial sum (mu1-mu2+1) * x^(mu1+mu2) on it, so no 0/0 ever forms.
    """
    a, b = mu
    if x1 == x2:
        return (a - b + 1) * x1 ** (a + b)
    return (x1 ** (a + 1) * x2 ** b - x2 ** (a + 1) * x1 ** b) / (x1 - x2)


def schur_eval_monomial(mu: Partition2, x1: Fraction, x2: Fraction) -> Fraction:
    """The same value through the monomial expansion (x1x2)^b * h_{a-b}."""
    a, b = mu
    return (x1 * x2) ** b * sum(x1 ** i * x2 ** (a - b - i) for i in range(a - b + 1))


# ---------------------------------------------------------------------------
# classical products in the Schubert basis
# ---------------------------------------------------------------------------

CohomologyVector = Dict[Partition2, int]


def _vec_add(acc: CohomologyVector, mu: Partition2, c: int) -> None:
    if c:
        acc[mu] = acc.get(mu, 0) + c
        if acc[mu] == 0:
            del acc[mu]


def _mult_sigma1(v: CohomologyVector, n: int) -> CohomologyVector:
    # Pieri: add one box, staying inside the box.
    out: CohomologyVector = {}
    for (a, b), c in v.items():
        if a + 1 <= n - 2:
            _vec_add(out, Partition2(a + 1, b), c)
        if b + 1 <= a:
            _vec_add(out, Partition2(a, b + 1), c)
    return out


def _mult_sigma11(v: CohomologyVector, n: int) -> CohomologyVector:
    # Pieri for e_2: add a vertical strip of two boxes.
    out: CohomologyVector = {}
    for (a, b), c in v.items():
        if a + 1 <= n - 2:
            _vec_add(out, Partition2(a + 1, b + 1), c)
    return out


def _mult_basis(v: CohomologyVector, mu: Partition2, n: int) -> CohomologyVector:
    """v * sigma_mu via the h-recursion h_r = e1 h_{r-1} - e2 h_{r-2}."""
    r = mu.mu1 - mu.mu2
    hs = [dict(v), _mult_sigma1(v, n)]
    for k in range(2, r + 1):
        nxt = _mult_sigma1(hs[k - 1], n)
        for key, c in _mult_sigma11(hs[k - 2], n).items():
            _vec_add(nxt, key, -c)
        hs.append(nxt)
    out = hs[r]
    for _ in range(mu.mu2):
        out = _mult_sigma11(out, n)
    return out


def classical_product(a: CohomologyVector, b: CohomologyVector, n: int) -> CohomologyVector:
    """Cup product in H*(Gr(2,n)), expanded in the Schubert basis."""
    out: CohomologyVector = {}
    for mu, c in b.items():
        for key, d in _mult_basis(a, mu, n).items():
            _vec_add(out, key, c * d)
    return out


def gr_integral(classes: Iterable[Partition2], n: int) -> int:
    """Integral over Gr(2,n) of a product of Schubert classes."""
    vec: CohomologyVector = {Partition2(0, 0): 1}
    for mu in classes:
        vec = _mult_basis(vec, mu, n)
    return vec.get(Partition2(n - 2, n - 2), 0)


# ---------------------------------------------------------------------------
# bivariate polynomials in the hyperplane classes H1, H2
# ---------------------------------------------------------------------------

Poly2 = Dict[Tuple[int, int], int]


def poly2_mul(p: Poly2, q: Poly2, cutoff: int | None = None) -> Poly2:
    """Product of integer bivariate polynomials, optionally dropping any
    monomial with an exponent >= cutoff (the truncation H_i^n = 0)."""
    out: Poly2 = {}
    for (i, j), c in p.items():
        for (k, l), d in q.items():
            a, b = i + k, j + l
            if cutoff is not None and (a >= cutoff or b >= cutoff):
                continue
            key = (a, b)
            out[key] = out.get(key, 0) + c * d
            if out[key] == 0:
                del out[key]
    return out


def schur_poly2(mu: Partition2) -> Poly2:
    """S_mu(H1, H2) as a bivariate polynomial."""
    a, b = mu
    return {(b + i, a - i): 1 for i in range(a - b + 1)}


def pp_integral(poly: Poly2, n: int) -> int:
    """Coefficient of H1^(n-1) H2^(n-1): the integral over (P^{n-1})^2."""
    return poly.get((n - 1, n - 1), 0)


class MartinReport(NamedTuple):
    lhs: int
    rhs: Fraction
    equal: bool


def martin_check(classes: List[Partition2], n: int) -> MartinReport:
    """Degree-zero correspondence of integrals (Martin's formula).

    Left side integrates over Gr(2,n); right side integrates the lifted
    product against (H1-H2)(H2-H1) over (P^{n-1})^2 and divides by 2!.
    """
    lhs = gr_integral(classes, n)
    integrand: Poly2 = {(1, 1): 2, (2, 0): -1, (0, 2): -1}  # (H1-H2)(H2-H1)
    for mu in classes:
        integrand = poly2_mul(integrand, schur_poly2(mu), cutoff=n)
    rhs = Fraction(pp_integral(integrand, n), 2)
    return MartinReport(lhs, rhs, rhs == lhs)


# ---------------------------------------------------------------------------
# quantum cohomology oracle (no localization anywhere below)
# ---------------------------------------------------------------------------

QElement = Dict[Tuple[int, Partition2], int]  # (q-degree, basis index) -> coeff


def _q_mult_sigma1(v: QElement, n: int) -> QElement:
    """Quantum Pieri for sigma_1 on Gr(2,n) (Bertram)."""
    out: QElement = {}

    def add(d, mu, c):
        key = (d, mu)
        out[key] = out.get(key, 0) + c
        if out[key] == 0:
            del out[key]

    for (d, (a, b)), c in v.items():
        if a + 1 <= n - 2:
            add(d, Partition2(a + 1, b), c)
        if b + 1 <= a:
            add(d, Partition2(a, b + 1), c)
        if a == n - 2 and b >= 1:
            add(d + 1, Partition2(b - 1, 0), c)
    return out


def _q_mult_sigma11(v: QElement, n: int) -> QElement:
    """Quantum Pieri for the column class sigma_(1,1) on Gr(2,n)."""
    out: QElement = {}
    for (d, (a, b)), c in v.items():
        if a + 1 <= n - 2:
            key = (d, Partition2(a + 1, b + 1))
        else:
            key = (d + 1, Partition2(b, 0))
        out[key] = out.get(key, 0) + c
        if out[key] == 0:
            del out[key]
    return out


def quantum_product(a: Partition2, b: Partition2, n: int) -> QElement:
    """sigma_a * sigma_b in QH*(Gr(2,n)).

    Quantum Giambelli for Grassmannians has no q-corrections, so sigma_a acts
    as e2^(mu2) h_(mu1-mu2) with h built from the two Pieri operators.
    """
    v: QElement = {(0, b): 1}
    r = a.mu1 - a.mu2
    hs = [dict(v), _q_mult_sigma1(v, n)]
    for k in range(2, r + 1):
        nxt = _q_mult_sigma1(hs[k - 1], n)
        for key, c in _q_mult_sigma11(hs[k - 2], n).items():
            nxt[key] = nxt.get(key, 0) + (-c)
            if nxt[key] == 0:
                del nxt[key]
        hs.append(nxt)
    out = hs[r]
    for _ in range(a.mu2):
        out = _q_mult_sigma11(out, n)
    return out


def three_point_invariant(a: Partition2, b: Partition2, c: Partition2,
                          d: int, n: int) -> int:
    """<sigma_a, sigma_b, sigma_c>_d from the quantum product."""
    if a.codim + b.codim + c.codim != 2 * (n - 2) + n * d:
        return 0
    return quantum_product(a, b, n).get((d, dual_partition(c, n)), 0)


def quantum_pieri_oracle(n: int, d_max: int) -> Dict[Tuple[Partition2, Partition2, Partition2, int], int]:
    """Table of all 3-point invariants of Gr(2,n) with degree <= d_max.

    Keys are (a, b, c, d) with (a, b, c) sorted; total codimension is forced
    to 2(n-2) + n*d, every other triple vanishes for dimension reasons.
    """
    if n < 3 or d_max < 0:
        raise InvalidDimension(f"need n >= 3 and d_max >= 0, got {(n, d_max)}")
    basis = partitions_in_box(n)
    table: Dict[Tuple[Partition2, Partition2, Partition2, int], int] = {}
    for d in range(d_max + 1):
        target = 2 * (n - 2) + n * d
        for a, b, c in itertools.combinations_with_replacement(basis, 3):
            if a.codim + b.codim + c.codim != target:
                continue
            table[(a, b, c, d)] = three_point_invariant(a, b, c, d, n)
    return table


def oracle_lookup(table, a: Partition2, b: Partition2, c: Partition2, d: int) -> int:
    key = tuple(sorted((a, b, c))) + (d,)
    return table.get(key, 0)
