"""Graded fiber products and the algebra-level fibre-cofibre tower.

The tower step rebuilds Q_(m+1) from Q_m as the fiber product
Q_m x_(Q_m/(x^2)) k and certifies the result against the congruence solver;
it is defined for the rank-one group only, where flatness of Q_m over the
invariants makes the plain fiber product the right object.  All tower
modules work in polynomial x-degree; comparisons against presentations with
doubled (cohomological) degrees rescale explicitly.
"""

from __future__ import annotations

from fractions import Fraction

from quasinv.errors import DomainError
from quasinv.groups import Multiplicity, ReflectionGroup, parse_group
from quasinv.linalg import in_span, nullspace, rank, solve_exact
from quasinv.poly import Polynomial, monomials_of_degree
from quasinv.quasi import GradedBasis, module_certificate, quasi_basis

__all__ = [
    "GradedMap",
    "FiberProductAlgebra",
    "fiber_product_basis",
    "line_layers",
    "truncated_line_layers",
    "ganea_step",
    "ganea_tower",
    "h_t_invariants",
    "x1_algebra",
    "presentation_check",
    "fake_cohomology_ring",
]


class GradedMap:
    """A degree-preserving linear map between graded bases, stored as one
    matrix per degree (columns indexed by the source layer, rows by the
    target layer's coordinates)."""

    def __init__(self, source_layers, target_layers, variables, apply_fn):
        self.variables = variables
        self.source_layers = source_layers
        self.target_layers = target_layers
        self._apply = apply_fn
        self.matrices = []
        for d in range(min(len(source_layers), len(target_layers))):
            cols = []
            for p in source_layers[d]:
                image = apply_fn(p)
                if _deg(image) > d:
                    raise ValueError("map is not degree-preserving")
                coords = _coords(target_layers[d], image, variables, d)
                if coords is None:
                    raise ValueError("image falls outside the target layer")
                cols.append(coords)
            self.matrices.append(cols)

    def apply(self, p: Polynomial) -> Polynomial:
        return self._apply(p)

    def multiplicative_spot_check(self, pairs: int = 8) -> bool:
        """Verify f(ab) = f(a) f(b) on leading basis elements of low degrees."""
        checked = 0
        top = len(self.source_layers) - 1
        for a in range(1, top + 1):
            for b in range(a, top + 1 - a):
                for pa in self.source_layers[a][:1]:
                    for pb in self.source_layers[b][:1]:
                        if checked >= pairs:
                            return True
                        if self._apply(pa * pb) != self._apply(pa) * self._apply(pb):
                            return False
                        checked += 1
        return True


class FiberProductAlgebra:
    """Degreewise basis of {(a, b) : f(a) = g(b) in C} with componentwise
    product."""

    def __init__(self, variables, layers, dims_a, dims_b, dims_c, surjective):
        self.variables = variables
        self.layers = layers  # layers[d] = list of (Polynomial, Polynomial)
        self.dims_a = dims_a
        self.dims_b = dims_b
        self.dims_c = dims_c
        self.surjective = surjective  # per degree: (f onto, g onto)

    def dims(self):
        return [len(layer) for layer in self.layers]

    def dimension_formula_holds(self) -> bool:
        """dim = dim A + dim B - dim C in every degree where both structure
        maps are onto."""
        for d, layer in enumerate(self.layers):
            if all(self.surjective[d]):
                if len(layer) != self.dims_a[d] + self.dims_b[d] - self.dims_c[d]:
                    return False
        return True

    def contains_unit(self) -> bool:
        if not self.layers or not self.layers[0]:
            return False
        one = Polynomial.constant(self.variables, 1)
        target = _pair_vector(one, one, self.variables, 0)
        vecs = [_pair_vector(a, b, self.variables, 0) for a, b in self.layers[0]]
        return in_span(vecs, target)

    def product_in_span(self, pair1, pair2) -> bool:
        a = pair1[0] * pair2[0]
        b = pair1[1] * pair2[1]
        d = max(_deg(a), _deg(b))
        if d < 0:
            return True
        if d >= len(self.layers):
            raise DomainError("product degree exceeds computed bound")
        vecs = [_pair_vector(x, y, self.variables, d) for x, y in self.layers[d]]
        return in_span(vecs, _pair_vector(a, b, self.variables, d))


def _deg(p: Polynomial) -> int:
    d = p.degree()
    return int(d) if p else -1


def _coords(basis_polys, p: Polynomial, variables, d: int):
    """Exact coordinates of p in the given degree-d basis, or None."""
    monos = monomials_of_degree(variables, d)
    index = {m: i for i, m in enumerate(monos)}
    if not basis_polys:
        return None if p else []
    cols = []
    for q in basis_polys:
        vec = [Fraction(0)] * len(monos)
        for exp, c in q.terms.items():
            vec[index[exp]] = c
        cols.append(vec)
    target = [Fraction(0)] * len(monos)
    for exp, c in p.terms.items():
        target[index[exp]] = c
    matrix = [[col[i] for col in cols] for i in range(len(monos))]
    return solve_exact(matrix, target)


def _pair_vector(a: Polynomial, b: Polynomial, variables, d: int):
    monos = monomials_of_degree(variables, d)
    index = {m: i for i, m in enumerate(monos)}
    vec = [Fraction(0)] * (2 * len(monos))
    for exp, c in a.terms.items():
        vec[index[exp]] = c
    for exp, c in b.terms.items():
        vec[len(monos) + index[exp]] = c
    return vec


def fiber_product_basis(variables, layers_a, layers_b, layers_c, f, g,
                        max_degree: int) -> FiberProductAlgebra:
    """Equalizer of two degree-preserving maps into a common graded quotient.

    `f` and `g` are callables on polynomials.  In each degree the equalizer
    is the kernel of [F | -G] written in coordinates of the quotient basis;
    when some image fails to land in the span of the quotient basis the input
    maps were not well formed and a ValueError is raised.
    """
    layers = []
    dims_a, dims_b, dims_c, surjective = [], [], [], []
    for d in range(max_degree + 1):
        A = layers_a[d]
        B = layers_b[d]
        C = layers_c[d]
        rows_f = [_coords(C, f(a), variables, d) for a in A]
        rows_g = [_coords(C, g(b), variables, d) for b in B]
        if any(r is None for r in rows_f + rows_g):
            raise ValueError("structure map image outside the quotient basis")
        ncols = len(A) + len(B)
        matrix = []
        for ci in range(len(C)):
            row = [rf[ci] for rf in rows_f] + [-rg[ci] for rg in rows_g]
            matrix.append(row)
        if matrix:
            kernel = nullspace(matrix)
        elif ncols:
            kernel = [[Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
                      for i in range(ncols)]
        else:
            kernel = []
        layer = []
        for vec in kernel:
            a = Polynomial.zero(variables)
            for coef, p in zip(vec[: len(A)], A):
                if coef:
                    a = a + p * coef
            b = Polynomial.zero(variables)
            for coef, p in zip(vec[len(A) :], B):
                if coef:
                    b = b + p * coef
            layer.append((a, b))
        layers.append(layer)
        dims_a.append(len(A))
        dims_b.append(len(B))
        dims_c.append(len(C))
        f_onto = rank(rows_f) == len(C) if C and rows_f else not C
        g_onto = rank(rows_g) == len(C) if C and rows_g else not C
        surjective.append((f_onto, g_onto))
    return FiberProductAlgebra(variables, layers, dims_a, dims_b, dims_c, surjective)


def line_layers(variables, max_degree: int):
    """Degreewise monomial layers of the one-variable polynomial ring."""
    name = variables[0]
    x = Polynomial.variable(variables, name)
    return [[x**d] for d in range(max_degree + 1)]


def truncated_line_layers(variables, cut: int, max_degree: int):
    """Q[x]/(x^cut) with monomial representatives below the cut."""
    name = variables[0]
    x = Polynomial.variable(variables, name)
    return [[x**d] if d < cut else [] for d in range(max_degree + 1)]


def truncate_poly(p: Polynomial, cut: int) -> Polynomial:
    return Polynomial(p.vars, {e: c for e, c in p.terms.items() if sum(e) < cut})


# -- the rank-one tower ------------------------------------------------------------


def _require_a1(group: ReflectionGroup):
    if group.rank != 1 or not group.is_coxeter() or group.order != 2:
        raise DomainError(
            "the fibre-cofibre step is defined for the rank-one reflection "
            "group only; higher-rank groups do not reproduce the filtration "
            "this way"
        )


def ganea_step(group: ReflectionGroup, m: int, max_degree: int) -> dict:
    """One tower step: Q_m x_(Q_m/(x^2)) k, projected into the first factor.

    Returns the projected graded basis, certifies that it equals the
    congruence-solver basis of multiplicity m+1, and reports the fiber
    algebra Q_m/(x^2) with its total dimension.
    """
    _require_a1(group)
    q_m = quasi_basis(group, Multiplicity.constant(group, m), max_degree)
    return ganea_step_from(q_m, max_degree)


def ganea_step_from(q_m: GradedBasis, max_degree: int) -> dict:
    group = q_m.group
    _require_a1(group)
    variables = group.variables
    x = Polynomial.variable(variables, variables[0])
    x2 = x * x
    # the ideal x^2 Q_m and the 2-dimensional quotient algebra
    quot_reps = []
    ideal_spans = []
    for d in range(max_degree + 1):
        ideal = []
        if d >= 2:
            monos = monomials_of_degree(variables, d)
            index = {mm: i for i, mm in enumerate(monos)}
            for p in q_m.layers[d - 2]:
                v = [Fraction(0)] * len(monos)
                for exp, c in (x2 * p).terms.items():
                    v[index[exp]] = c
                ideal.append(v)
        ideal_spans.append(ideal)
        reps = []
        for p in q_m.layers[d]:
            vec = _mono_vector(p, variables, d)
            if not in_span(ideal, vec):
                reps.append(p)
        quot_reps.append(reps)
    fiber_total = sum(len(r) for r in quot_reps)

    def project(p: Polynomial) -> Polynomial:
        """Reduction mod x^2 Q_m: keep only the residue coordinates."""
        out = Polynomial.zero(variables)
        for d in range(max_degree + 1):
            comp = p.homogeneous_component(d)
            if not comp:
                continue
            reps = quot_reps[d]
            if not reps:
                continue
            span = ideal_spans[d]
            basis = [_mono_vector(r, variables, d) for r in reps] + span
            coords = _solve_in(basis, _mono_vector(comp, variables, d))
            for coef, r in zip(coords[: len(reps)], reps):
                if coef:
                    out = out + r * coef
        return out

    const_layers = [[Polynomial.constant(variables, 1)]] + [[] for _ in range(max_degree)]
    fp = fiber_product_basis(
        variables,
        q_m.layers,
        const_layers,
        quot_reps,
        project,
        lambda b: b,
        max_degree,
    )
    next_layers = []
    for d, layer in enumerate(fp.layers):
        polys = []
        vecs = []
        for a, _ in layer:
            v = _mono_vector(a, variables, d)
            if any(v) and not in_span(vecs, v):
                vecs.append(v)
                polys.append(a)
        next_layers.append(polys)
    projected = GradedBasis(group, None, max_degree, next_layers)
    expected = quasi_basis(group, Multiplicity.constant(group, q_m_mult(q_m) + 1), max_degree)
    certified = _same_spans(projected, expected)
    # Q_(m+1) sits inside Q_m as graded subspaces of the polynomial ring
    inclusion = GradedMap(next_layers, q_m.layers, variables, lambda p: p)
    return {
        "next_basis": projected,
        "expected_basis": expected,
        "certified": certified,
        "fiber_total_dimension": fiber_total,
        "fiber_quotient": quot_reps,
        "inclusion": inclusion,
        "fiber_product": fp,
    }


def q_m_mult(basis: GradedBasis) -> int:
    if not isinstance(basis.multiplicity, Multiplicity):
        raise DomainError("tower steps need a basis tagged with its multiplicity")
    vals = list(basis.multiplicity.values.values())
    return int(vals[0])


def _mono_vector(p: Polynomial, variables, d: int):
    monos = monomials_of_degree(variables, d)
    index = {m: i for i, m in enumerate(monos)}
    vec = [Fraction(0)] * len(monos)
    for exp, c in p.terms.items():
        vec[index[exp]] = c
    return vec


def _solve_in(basis, target):
    matrix = [[b[i] for b in basis] for i in range(len(target))]
    sol = solve_exact(matrix, target)
    if sol is None:
        raise ValueError("element outside span")
    return sol


def _same_spans(a: GradedBasis, b: GradedBasis) -> bool:
    if a.dims() != b.dims():
        return False
    for d in range(a.max_degree + 1):
        va = a.layer_vectors(d)
        for v in b.layer_vectors(d):
            if not in_span(va, v):
                return False
    return True


def ganea_tower(steps: int, max_degree: int) -> dict:
    """Iterate the tower from Q_0, certifying each stage."""
    group = parse_group("A1")
    current = quasi_basis(group, Multiplicity.constant(group, 0), max_degree)
    stages = [current]
    certified = []
    fiber_dims = []
    for m in range(steps):
        step = ganea_step(group, m, max_degree)
        certified.append(step["certified"])
        fiber_dims.append(step["fiber_total_dimension"])
        stages.append(step["next_basis"])
    strict = []
    for i in range(len(stages) - 1):
        witness_degree = 2 * i + 1  # x^(2i+1) leaves the filtration at stage i+1
        if witness_degree <= max_degree:
            strict.append(stages[i].dims() != stages[i + 1].dims())
    return {
        "stages": stages,
        "certified": certified,
        "fiber_total_dimensions": fiber_dims,
        "strict_inclusions": strict,
    }


# -- torus-side fiber product and its involution ---------------------------------------


def h_t_invariants(m: int, max_degree: int) -> dict:
    """The fiber product Q[x] x_(Q[x]/x^(2m+1)) Q[x] with the swap-and-flip
    action (p, q) -> (s(q), s(p)); its invariants match Q_m degree by degree
    and the matching is returned explicitly."""
    variables = ("x",)
    cut = 2 * m + 1
    fp = fiber_product_basis(
        variables,
        line_layers(variables, max_degree),
        line_layers(variables, max_degree),
        truncated_line_layers(variables, cut, max_degree),
        lambda p: truncate_poly(p, cut),
        lambda p: truncate_poly(p, cut),
        max_degree,
    )
    group = parse_group("A1")
    q_m = quasi_basis(group, Multiplicity.constant(group, m), max_degree)
    inv_dims = []
    iso_pairs = []
    for d, layer in enumerate(fp.layers):
        if not layer:
            inv_dims.append(0)
            continue
        # action on the pair coordinates: (p, q) -> (s(q), s(p))
        vectors = [_pair_vector(a, b, variables, d) for a, b in layer]
        acted = [
            _pair_vector(_s_flip(b), _s_flip(a), variables, d) for a, b in layer
        ]
        coords = []
        for v in acted:
            coords.append(_solve_in(vectors, v))
        n = len(layer)
        rows = []
        for i in range(n):
            rows.append([coords[j][i] - (1 if i == j else 0) for j in range(n)])
        kernel = nullspace(rows) if rows else []
        inv_dims.append(len(kernel))
        for vec in kernel:
            a = Polynomial.zero(variables)
            b = Polynomial.zero(variables)
            for coef, (pa, pb) in zip(vec, layer):
                if coef:
                    a = a + pa * coef
                    b = b + pb * coef
            iso_pairs.append((d, a, b))
    matches = inv_dims == q_m.dims()
    return {
        "fiber_dims": fp.dims(),
        "invariant_dims": inv_dims,
        "quasi_dims": q_m.dims(),
        "matches_quasi_invariants": matches,
        "invariant_pairs": iso_pairs,
        "fiber_product": fp,
    }


def _s_flip(p: Polynomial) -> Polynomial:
    return Polynomial(p.vars, {e: (c if e[0] % 2 == 0 else -c) for e, c in p.terms.items()})


# -- the first-step algebra in any rank -----------------------------------------------


def x1_layers(group: ReflectionGroup, max_degree: int) -> GradedBasis:
    """Degreewise basis of Q + <positive-degree invariants>."""
    variables = group.variables
    layers = [[Polynomial.constant(variables, 1)]]
    for d in range(1, max_degree + 1):
        monos = monomials_of_degree(variables, d)
        rows = []
        for f in group.fundamental_invariants:
            fd = int(f.degree())
            if d - fd < 0:
                continue
            for exp in monomials_of_degree(variables, d - fd):
                prod = f * Polynomial.monomial(variables, exp)
                rows.append(_mono_vector(prod, variables, d))
        basis_polys = []
        if rows:
            from quasinv.linalg import rref

            red, pivots = rref(rows)
            for row in red:
                terms = {m: c for m, c in zip(monos, row) if c}
                basis_polys.append(Polynomial(variables, terms))
        layers.append(basis_polys)
    return GradedBasis(group, None, max_degree, layers)


def x1_algebra(group: ReflectionGroup, max_degree: int):
    """The graded algebra Q + <positive-degree invariants> together with its
    module certificate over the invariant ring.  In rank one it equals Q_1;
    in higher rank the certificate comes back not-free."""
    basis = x1_layers(group, max_degree)
    cert = module_certificate(group, basis)
    return basis, cert


def coinvariant_dimension(group: ReflectionGroup, max_degree: int) -> int:
    """Total dimension of Q[V] / <positive-degree invariants> through the
    bound; equals |W| once the bound passes the top coinvariant degree."""
    basis = x1_layers(group, max_degree)
    total = 0
    for d in range(max_degree + 1):
        full = len(monomials_of_degree(group.variables, d))
        ideal = len(basis.layers[d]) if d > 0 else 0
        total += full - ideal
    return total


# -- presentations and fake cohomology --------------------------------------------------


def presentation_check(m: int, max_degree: int) -> dict:
    """Compare Q[u, v]/(u^2 - v^(2m+1)) with Q_m under u -> x^(2m+1),
    v -> x^2 (cohomological degrees are twice these x-degrees).

    Checks that the quotient's graded dimensions match Q_m and that the
    kernel of the naive evaluation is exactly the principal ideal, degreewise
    through the bound.
    """
    group = parse_group("A1")
    q_m = quasi_basis(group, Multiplicity.constant(group, m), max_degree)
    wu, wv = 2 * m + 1, 2
    dims_ok = True
    kernel_ok = True
    for d in range(max_degree + 1):
        monos = [(a, b) for a in range(d // wu + 1) for b in range(d // wv + 1)
                 if a * wu + b * wv == d]
        normal = [(a, b) for a, b in monos if a <= 1]
        if len(normal) != len(q_m.layers[d]):
            dims_ok = False
        # kernel of the naive map: all monomials hit x^d, so it is the
        # difference lattice; it must match the principal ideal in dimension
        # and reduce to zero in the normal form u^2 -> v^(2m+1)
        count = len(monos)
        ideal_count = len(
            [
                (a, b)
                for a in range((d - 2 * wu) // wu + 1)
                for b in range((d - 2 * wu) // wv + 1)
                if a * wu + b * wv == d - 2 * wu
            ]
        ) if d >= 2 * wu else 0
        kernel_dim = max(0, count - 1) if count else 0
        if kernel_dim != ideal_count and count:
            kernel_ok = False
        # normal-form reduction of the canonical kernel generators
        for i in range(1, count):
            diff = {monos[0]: Fraction(1), monos[i]: Fraction(-1)}
            reduced: dict = {}
            for (a, b), c in diff.items():
                key = (a % 2, b + (a // 2) * (2 * m + 1))
                reduced[key] = reduced.get(key, Fraction(0)) + c
            if any(reduced.values()):
                kernel_ok = False
    return {
        "dims_match": dims_ok,
        "kernel_is_principal_ideal": kernel_ok,
        "ok": dims_ok and kernel_ok,
    }


def fake_cohomology_ring(n_b: int, m: int, max_degree: int) -> dict:
    """The subring Q + N x^2 Q'_(m-1) (recursively, Q'_0 = Q[x]) as a graded
    lattice: over Q it coincides with Q_m; over Z the degree-d lattice is
    N^min(m, d//2) Z x^d on the degrees present."""
    if n_b < 1:
        raise DomainError("the invariant N_B is a positive integer")
    group = parse_group("A1")
    q_m = quasi_basis(group, Multiplicity.constant(group, m), max_degree)
    layers = []
    lattice = []
    for d in range(max_degree + 1):
        if d % 2 == 0:
            j = d // 2
            coef = n_b ** min(m, j)
            layers.append(1)
            lattice.append(coef)
        elif d >= 2 * m + 1:
            layers.append(1)
            lattice.append(n_b**m)
        else:
            layers.append(0)
            lattice.append(0)
    equal = layers == q_m.dims()
    return {
        "dims": layers,
        "lattice_coefficients": lattice,
        "equals_quasi_invariants_over_Q": equal,
        "quasi_dims": q_m.dims(),
    }
