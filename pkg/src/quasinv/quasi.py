"""Quasi-invariant algebras Q_m(W) computed degreewise from the defining
congruences.

A polynomial p is quasi-invariant of multiplicity m when, for every
reflection hyperplane H with stabilizer of order 2, the difference
s_H(p) - p is divisible by alpha_H^(2 m_H); for hyperplanes with cyclic
stabilizer of order n_H > 2 the conditions read
e_(H,-i)(p) = 0 mod alpha_H^(n_H m_(H,i)) for i = 1 .. n_H - 1, where the
e's are the character idempotents of the stabilizer.  Conditions are imposed
for all hyperplanes, not orbit representatives: a single solution need not be
W-symmetric, only the solution span is.

For groups with stabilizers of order > 2 the solution space need not be
closed under multiplication; closure is reported when checked, never assumed.
"""

from __future__ import annotations

from fractions import Fraction

from quasinv.errors import DomainError
from quasinv.groups import GroupAlgebraElement, Multiplicity, ReflectionGroup, idempotent
from quasinv.hilbert import HilbertSeries, gorenstein_shift, hilbert_from_basis
from quasinv.linalg import IncrementalSpan, in_span, nullspace, rank
from quasinv.poly import (
    Polynomial,
    adapted_substitution,
    divisibility_order,
    linear_coefficients,
    monomials_of_degree,
)

__all__ = [
    "GradedBasis",
    "FreenessCertificate",
    "CWValuedElement",
    "is_quasi_invariant",
    "quasi_basis",
    "hilbert",
    "freeness_certificate",
    "module_certificate",
    "gorenstein_shift",
    "cw_valued_basis",
    "filtration_check",
    "invariant_ring_dims",
]


class GradedBasis:
    """Degreewise bases of a graded subspace of the polynomial ring."""

    def __init__(self, group: ReflectionGroup, multiplicity, max_degree: int, layers):
        self.group = group
        self.multiplicity = multiplicity
        self.max_degree = max_degree
        self.layers = layers  # layers[d] = list of Polynomial

    def dims(self):
        return [len(layer) for layer in self.layers]

    def layer_vectors(self, d: int):
        """Coordinate vectors of the degree-d layer in the monomial basis."""
        monos = monomials_of_degree(self.group.variables, d)
        index = {m: i for i, m in enumerate(monos)}
        out = []
        for p in self.layers[d]:
            vec = [Fraction(0)] * len(monos)
            for exp, c in p.terms.items():
                vec[index[exp]] = c
            out.append(vec)
        return out

    def contains(self, p: Polynomial) -> bool:
        """Exact span membership, degree by degree."""
        if not p:
            return True
        for d in range(p.degree() + 1):
            comp = p.homogeneous_component(d)
            if not comp:
                continue
            if d > self.max_degree:
                raise DomainError(f"degree {d} exceeds computed bound {self.max_degree}")
            monos = monomials_of_degree(self.group.variables, d)
            index = {m: i for i, m in enumerate(monos)}
            vec = [Fraction(0)] * len(monos)
            for exp, c in comp.terms.items():
                vec[index[exp]] = c
            if not in_span(self.layer_vectors(d), vec):
                return False
        return True

    def closure_report(self, max_pairs: int = 40):
        """Spot-check that products of basis elements stay in the span."""
        checked = 0
        for a in range(1, self.max_degree + 1):
            for b in range(a, self.max_degree + 1 - a):
                for pa in self.layers[a][:2]:
                    for pb in self.layers[b][:2]:
                        if checked >= max_pairs:
                            return {"closed": True, "pairs_checked": checked}
                        if not self.contains(pa * pb):
                            return {
                                "closed": False,
                                "pairs_checked": checked + 1,
                                "witness_degrees": (a, b),
                            }
                        checked += 1
        return {"closed": True, "pairs_checked": checked}


class FreenessCertificate:
    """Outcome of the free-module test over the invariant ring."""

    def __init__(self, group, generators, status, hilbert_series, shift, predicted_shift,
                 failure_degree=None):
        self.group = group
        self.generators = generators  # list of (degree, Polynomial)
        self.status = status  # "free" | "not-free" | "inconclusive"
        self.rank = len(generators)
        self.hilbert = hilbert_series
        self.gorenstein_shift = shift  # None when numerator not palindromic
        self.predicted_shift = predicted_shift  # dim V - 2 sum m_alpha, Coxeter only
        self.failure_degree = failure_degree

    def generator_degrees(self):
        return [d for d, _ in self.generators]

    def __repr__(self):
        return (
            f"<FreenessCertificate {self.status}: rank {self.rank}, "
            f"H = {self.hilbert}, shift {self.gorenstein_shift}>"
        )


# -- membership -----------------------------------------------------------------


def is_quasi_invariant(group: ReflectionGroup, mult: Multiplicity, p: Polynomial) -> bool:
    """Test the defining congruences for every hyperplane directly."""
    if not mult.is_integer():
        raise DomainError(
            "half-integer multiplicities define a module, not a subalgebra; "
            "use cw_valued_basis"
        )
    if p.vars != group.variables:
        raise ValueError("polynomial not in the group's coordinate ring")
    cache: dict = {}
    for h in group.hyperplanes:
        m_h = mult.of(h)
        if h.stabilizer_order == 2:
            if m_h == 0:
                continue
            s_idx = _reflection_index(group, h)
            diff = group.act(s_idx, p) - p
            if divisibility_order(diff, h.alpha, _cache=cache) < 2 * m_h:
                return False
        else:
            for i in range(1, h.stabilizer_order):
                need = h.stabilizer_order * m_h[i - 1]
                if need == 0:
                    continue
                e = idempotent(group, h, (-i) % h.stabilizer_order)
                img = e.apply(p)
                if divisibility_order(img, h.alpha, _cache=cache) < need:
                    return False
    return True


def _reflection_index(group: ReflectionGroup, h) -> int:
    ident = group.identity_index()
    for i in group.stabilizer(h):
        if i != ident:
            return i
    raise ValueError("hyperplane without reflection")


# -- degreewise solution spaces ----------------------------------------------------


def _hyperplane_conditions(group: ReflectionGroup, mult: Multiplicity):
    """Per hyperplane: (pivot index, adapted substitution, list of
    (group algebra element, required order))."""
    out = []
    for h in group.hyperplanes:
        m_h = mult.of(h)
        images = adapted_substitution(h.alpha)
        coeffs = linear_coefficients(h.alpha)
        pivot = next(i for i, c in enumerate(coeffs) if c)
        ops = []
        if h.stabilizer_order == 2:
            if m_h:
                s_idx = _reflection_index(group, h)
                one = GroupAlgebraElement(group, {s_idx: Fraction(1), group.identity_index(): Fraction(-1)})
                ops.append((one, 2 * m_h))
        else:
            for i in range(1, h.stabilizer_order):
                need = h.stabilizer_order * m_h[i - 1]
                if need:
                    ops.append((idempotent(group, h, (-i) % h.stabilizer_order), need))
        if ops:
            out.append((h, pivot, images, ops))
    return out


def quasi_basis(group: ReflectionGroup, mult: Multiplicity, max_degree: int) -> GradedBasis:
    """Solve the congruence conditions degree by degree.

    In each degree the constraint matrix collects, for every hyperplane and
    every required vanishing order, the low-order coefficients of the
    condition polynomial in coordinates adapted to the hyperplane; the kernel
    of that matrix is the quasi-invariant layer.

    The solution span is W-stable, hence stable under the diagonal subgroup,
    so the kernel splits along the diagonal characters of the monomials and
    each block is solved separately (blocked and unblocked solves agree; the
    regression suite compares them and checks an independent brute force).
    The layer is returned sorted by leading exponent in graded-lex order.
    """
    if not mult.is_integer():
        raise DomainError("quasi_basis needs integer multiplicities")
    conditions = _hyperplane_conditions(group, mult)
    layers = []
    cache: dict = {}
    for d in range(max_degree + 1):
        monos = monomials_of_degree(group.variables, d)
        layer = []
        for block in group.monomial_blocks(monos):
            rows: dict = {}
            for ci, (h, pivot, images, ops) in enumerate(conditions):
                for oi, (op, need) in enumerate(ops):
                    for local, col in enumerate(block):
                        mono = Polynomial.monomial(group.variables, monos[col])
                        cond = op.apply(mono)
                        if not cond:
                            continue
                        adapted = cond.substitute(images, cache=cache)
                        for aexp, c in adapted.terms.items():
                            if aexp[pivot] < need:
                                key = (ci, oi, aexp)
                                row = rows.setdefault(key, [Fraction(0)] * len(block))
                                row[local] = row[local] + c
            matrix = [rows[k] for k in sorted(rows)]
            if not matrix:
                kernel = [
                    [Fraction(1) if i == j else Fraction(0) for j in range(len(block))]
                    for i in range(len(block))
                ]
            else:
                kernel = nullspace(matrix)
            for vec in kernel:
                terms = {monos[block[i]]: c for i, c in enumerate(vec) if c}
                layer.append(Polynomial(group.variables, terms))
        layer.sort(key=lambda p: min(p.terms))
        layers.append(layer)
    return GradedBasis(group, mult, max_degree, layers)


def quasi_basis_unblocked(group: ReflectionGroup, mult: Multiplicity,
                          max_degree: int) -> GradedBasis:
    """Single-matrix variant of `quasi_basis`, kept for cross-checking the
    block decomposition."""
    if not mult.is_integer():
        raise DomainError("quasi_basis needs integer multiplicities")
    conditions = _hyperplane_conditions(group, mult)
    layers = []
    cache: dict = {}
    for d in range(max_degree + 1):
        monos = monomials_of_degree(group.variables, d)
        cols = len(monos)
        rows: dict = {}
        for ci, (h, pivot, images, ops) in enumerate(conditions):
            for oi, (op, need) in enumerate(ops):
                for col, exp in enumerate(monos):
                    mono = Polynomial.monomial(group.variables, exp)
                    cond = op.apply(mono)
                    if not cond:
                        continue
                    adapted = cond.substitute(images, cache=cache)
                    for aexp, c in adapted.terms.items():
                        if aexp[pivot] < need:
                            key = (ci, oi, aexp)
                            row = rows.setdefault(key, [Fraction(0)] * cols)
                            row[col] = row[col] + c
        matrix = [rows[k] for k in sorted(rows)]
        if not matrix:
            layer = [Polynomial.monomial(group.variables, e) for e in monos]
        else:
            layer = []
            for vec in nullspace(matrix):
                terms = {monos[i]: c for i, c in enumerate(vec) if c}
                layer.append(Polynomial(group.variables, terms))
        layers.append(layer)
    return GradedBasis(group, mult, max_degree, layers)


def hilbert(group: ReflectionGroup, mult: Multiplicity, max_degree: int) -> HilbertSeries:
    basis = quasi_basis(group, mult, max_degree)
    return hilbert_from_basis(basis.dims(), group.invariant_degrees)


def invariant_ring_dims(group: ReflectionGroup, through: int):
    """Graded dimensions of the invariant ring from its degrees."""
    series = HilbertSeries([1], group.invariant_degrees, verified_through=through)
    return series.dims(through)


# -- freeness over the invariant ring ------------------------------------------------


def module_certificate(group: ReflectionGroup, basis: GradedBasis,
                       predicted_shift=None) -> FreenessCertificate:
    """Greedy minimal generators of a graded module over the invariant ring,
    with the free-module dimension count as the freeness test.

    Generators are chosen degree by degree as a basis of the layer modulo
    (positive-degree invariants) * (lower layers), extending deterministically
    in the layer's echelon order.  If the free module on the generators found
    so far ever outgrows the actual dimensions, a relation exists and the
    module is not free.

    When every vector in sight is supported on a single diagonal-character
    class the span bookkeeping runs per class on disjoint column sets (an
    exact reformulation, since spans of disjointly supported vectors
    decompose); otherwise one global elimination is used.
    """
    D = basis.max_degree
    dims = basis.dims()
    inv_dims = invariant_ring_dims(group, D)
    fund = group.fundamental_invariants
    fund_degs = [int(f.degree()) for f in fund]
    generators = []
    status = None
    failure_degree = None
    for d in range(D + 1):
        monos = monomials_of_degree(group.variables, d)
        index = {m: i for i, m in enumerate(monos)}
        sources = []
        for f, fd in zip(fund, fund_degs):
            if d - fd >= 0:
                sources.extend(f * b for b in basis.layers[d - fd])
        blocks = group.monomial_blocks(monos)
        col_block = {}
        col_local = {}
        for bi, block in enumerate(blocks):
            for pos, col in enumerate(block):
                col_block[col] = bi
                col_local[col] = pos

        def locate(p):
            bi = None
            for exp in p.terms:
                b = col_block[index[exp]]
                if bi is None:
                    bi = b
                elif b != bi:
                    return None
            return bi

        routed = [locate(p) for p in sources + basis.layers[d]]
        if all(bi is not None for bi in routed):
            spans = [IncrementalSpan(len(block)) for block in blocks]

            def add(p, bi):
                vec = [Fraction(0)] * len(blocks[bi])
                for exp, c in p.terms.items():
                    vec[col_local[index[exp]]] = c
                return spans[bi].add(vec)

            for p, bi in zip(sources, routed):
                add(p, bi)
            for p, bi in zip(basis.layers[d], routed[len(sources):]):
                if add(p, bi):
                    generators.append((d, p))
        else:
            span = IncrementalSpan(len(monos))
            for p in sources:
                span.add(_coordinate_vector(p, index))
            for p in basis.layers[d]:
                if span.add(_coordinate_vector(p, index)):
                    generators.append((d, p))
        free_dim = sum(inv_dims[d - gd] for gd, _ in generators if gd <= d)
        if free_dim != dims[d]:
            status = "not-free"
            failure_degree = d
            break
    series = hilbert_from_basis(dims, group.invariant_degrees)
    shift = gorenstein_shift(series, group.rank)
    if status is None:
        status = "free" if len(generators) == group.order else "inconclusive"
    return FreenessCertificate(
        group, generators, status, series, shift, predicted_shift, failure_degree
    )


def _coordinate_vector(p: Polynomial, index: dict):
    vec = [Fraction(0)] * len(index)
    for exp, c in p.terms.items():
        vec[index[exp]] = c
    return vec


def freeness_certificate(group: ReflectionGroup, mult: Multiplicity,
                         max_degree: int) -> FreenessCertificate:
    basis = quasi_basis(group, mult, max_degree)
    predicted = None
    if group.is_coxeter() and mult.is_integer():
        predicted = group.rank - 2 * mult.coxeter_total()
    return module_certificate(group, basis, predicted_shift=predicted)


# -- group-algebra-valued quasi-invariants in rank one --------------------------------


class CWValuedElement:
    """p * e0 + q * e1 with one-variable polynomial coefficients, where
    e0 = (1+s)/2 and e1 = (1-s)/2 in the rank-one group algebra."""

    VARS = ("x",)

    def __init__(self, p: Polynomial, q: Polynomial):
        self.p = p
        self.q = q

    @staticmethod
    def from_pair(p_coeffs: dict, q_coeffs: dict) -> "CWValuedElement":
        p = Polynomial(CWValuedElement.VARS, {(k,): c for k, c in p_coeffs.items()})
        q = Polynomial(CWValuedElement.VARS, {(k,): c for k, c in q_coeffs.items()})
        return CWValuedElement(p, q)

    def x_action(self) -> "CWValuedElement":
        x = Polynomial.variable(self.VARS, "x")
        return CWValuedElement(x * self.p, x * self.q)

    def s_action(self) -> "CWValuedElement":
        return CWValuedElement(_flip(self.p), -_flip(self.q))

    def e0_projection(self) -> "CWValuedElement":
        """Left multiplication by e0: keeps the even part on e0 and the odd
        part on e1."""
        return CWValuedElement(_even_part(self.p), _odd_part(self.q))

    def __add__(self, other):
        return CWValuedElement(self.p + other.p, self.q + other.q)

    def __eq__(self, other):
        if not isinstance(other, CWValuedElement):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __repr__(self):
        return f"({self.p})*e0 + ({self.q})*e1"


def _flip(p: Polynomial) -> Polynomial:
    return Polynomial(p.vars, {e: (c if e[0] % 2 == 0 else -c) for e, c in p.terms.items()})


def _even_part(p: Polynomial) -> Polynomial:
    return Polynomial(p.vars, {e: c for e, c in p.terms.items() if e[0] % 2 == 0})


def _odd_part(p: Polynomial) -> Polynomial:
    return Polynomial(p.vars, {e: c for e, c in p.terms.items() if e[0] % 2 == 1})


def cw_valued_basis(k, max_degree: int):
    """Degreewise basis of Q[x] e0 + Q[x] x^(2k) e1 for half-integer k >= 0.

    Layer d holds x^d e0 always and x^d e1 exactly when d >= 2k; for integer
    k = m the e0-projection reproduces the graded dimensions of Q_m.
    """
    k = Fraction(k)
    if k < 0 or (2 * k).denominator != 1:
        raise DomainError("multiplicity must be a non-negative half-integer")
    threshold = int(2 * k)
    layers = []
    for d in range(max_degree + 1):
        layer = [CWValuedElement.from_pair({d: 1}, {})]
        if d >= threshold:
            layer.append(CWValuedElement.from_pair({}, {d: 1}))
        layers.append(layer)
    return layers


# -- filtration ------------------------------------------------------------------------


def filtration_check(group: ReflectionGroup, mult_low: Multiplicity,
                     mult_high: Multiplicity, max_degree: int) -> dict:
    """Verify Q_(m') <= Q_m degreewise for m <= m', with codimensions and a
    witness for strictness, and check that intersecting over all
    multiplicities of total weight <= D cuts the filtration down to the
    invariants through degree D."""
    if not mult_low.componentwise_le(mult_high):
        raise DomainError("need componentwise m <= m'")
    low = quasi_basis(group, mult_low, max_degree)
    high = quasi_basis(group, mult_high, max_degree)
    codims = []
    witness = None
    included = True
    for d in range(max_degree + 1):
        low_vecs = low.layer_vectors(d)
        for vec in high.layer_vectors(d):
            if not in_span(low_vecs, vec):
                included = False
        codims.append(len(low.layers[d]) - len(high.layers[d]))
        if witness is None and codims[-1] > 0:
            for vec, p in zip(low_vecs, low.layers[d]):
                if not in_span(high.layer_vectors(d), vec):
                    witness = p
                    break
    inv_dims = invariant_ring_dims(group, max_degree)
    inter_dims = _intersection_dims(group, max_degree)
    return {
        "included": included,
        "codims": codims,
        "strict_witness": witness,
        "intersection_equals_invariants": inter_dims == inv_dims,
        "intersection_dims": inter_dims,
        "invariant_dims": inv_dims,
    }


def _intersection_dims(group: ReflectionGroup, D: int):
    """Graded dimensions of the intersection of all Q_m with total weight
    sum over hyperplanes of m_alpha at most D."""
    orbit_sizes: dict = {}
    orbit_nh: dict = {}
    for h in group.hyperplanes:
        orbit_sizes[h.orbit_id] = orbit_sizes.get(h.orbit_id, 0) + 1
        orbit_nh[h.orbit_id] = h.stabilizer_order
    orbit_ids = sorted(orbit_sizes)
    maximal = _maximal_weight_vectors([orbit_sizes[o] for o in orbit_ids], D)
    spans = None
    for vec in maximal:
        values = {}
        for o, m in zip(orbit_ids, vec):
            if orbit_nh[o] == 2:
                values[o] = m
            else:
                values[o] = (m,) * (orbit_nh[o] - 1)
        basis = quasi_basis(group, Multiplicity(group, values), D)
        vecs = [basis.layer_vectors(d) for d in range(D + 1)]
        if spans is None:
            spans = vecs
        else:
            spans = [_intersect_spans(a, b) for a, b in zip(spans, vecs)]
    return [len(s) for s in spans]


def _maximal_weight_vectors(sizes, D: int):
    """Componentwise-maximal integer vectors m with sum(sizes_i * m_i) <= D."""
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == len(sizes):
            out.append(tuple(prefix))
            return
        if i == len(sizes) - 1:
            rec(prefix + [budget // sizes[i]], 0)
            return
        for v in range(budget // sizes[i], -1, -1):
            rec(prefix + [v], budget - sizes[i] * v)

    rec([], D)
    # drop dominated vectors
    maximal = []
    for v in out:
        if not any(all(a <= b for a, b in zip(v, w)) and v != w for w in out):
            maximal.append(v)
    return maximal


def _intersect_spans(A, B):
    """Basis of the intersection of two row spans (each given by a basis)."""
    if not A or not B:
        return []
    n = len(A[0])
    dimsum = rank([list(a) for a in A] + [list(b) for b in B])
    # solve [A^T | -B^T] kernel; intersection vectors are A^T * (a-part)
    cols = []
    for j in range(n):
        cols.append([a[j] for a in A] + [-b[j] for b in B])
    kern = nullspace(cols) if cols else []
    vecs = []
    for k in kern:
        v = [Fraction(0)] * n
        for i, coef in enumerate(k[: len(A)]):
            if coef:
                for j in range(n):
                    v[j] += coef * A[i][j]
        if any(v):
            vecs.append(v)
    # reduce to a basis
    basis = []
    for v in vecs:
        if not in_span(basis, v):
            basis.append(v)
    assert len(basis) == len(A) + len(B) - dimsum
    return basis
