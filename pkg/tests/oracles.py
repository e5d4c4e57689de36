"""Independent brute-force routes used to validate the main solvers.

The divisibility conditions are imposed here through directional derivatives
restricted to the hyperplane (a polynomial q is divisible by alpha^K exactly
when its first K derivatives along a transversal direction vanish on the
hyperplane), and ranks are computed by a self-contained forward elimination.
This deliberately avoids the adapted-coordinate route of the library.
"""

from fractions import Fraction

from quasinv.groups import idempotent
from quasinv.poly import Polynomial, linear_coefficients, monomials_of_degree


def derivative(p: Polynomial, var_index: int) -> Polynomial:
    terms = {}
    for exp, c in p.terms.items():
        e = exp[var_index]
        if e:
            new = list(exp)
            new[var_index] -= 1
            key = tuple(new)
            terms[key] = terms.get(key, 0) + c * e
    return Polynomial(p.vars, terms)


def directional_derivative(p: Polynomial, vector) -> Polynomial:
    acc = Polynomial.zero(p.vars)
    for i, v in enumerate(vector):
        if v:
            acc = acc + derivative(p, i) * v
    return acc


def transversal_vector(alpha: Polynomial):
    """A vector v with alpha(v) = 1."""
    coeffs = linear_coefficients(alpha)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    v = [Fraction(0)] * len(coeffs)
    c = coeffs[pivot]
    v[pivot] = Fraction(1) / c if isinstance(c, Fraction) else c.inverse()
    return v


def hyperplane_spanning_vectors(alpha: Polynomial):
    coeffs = linear_coefficients(alpha)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    c_p = coeffs[pivot]
    inv = Fraction(1) / c_p if isinstance(c_p, Fraction) else c_p.inverse()
    out = []
    for j in range(len(coeffs)):
        if j == pivot:
            continue
        v = [Fraction(0)] * len(coeffs)
        v[j] = Fraction(1)
        v[pivot] = -coeffs[j] * inv
        out.append(v)
    return out


def restrict_to_span(p: Polynomial, spanning):
    """Coefficients of p(sum_k t_k h_k) as a map t-exponent -> scalar."""
    if not spanning:
        zero_exp = (0,) * len(p.vars)
        val = p.terms.get(zero_exp)
        return {(): val} if val else {}
    out: dict = {}
    nt = len(spanning)
    for exp, c in p.terms.items():
        partial = {(0,) * nt: c}
        for i, e in enumerate(exp):
            for _ in range(e):
                nxt: dict = {}
                for texp, val in partial.items():
                    for k in range(nt):
                        h = spanning[k][i]
                        if h:
                            key = tuple(
                                t + (1 if j == k else 0) for j, t in enumerate(texp)
                            )
                            nxt[key] = nxt.get(key, 0) + val * h
                partial = nxt
        for texp, val in partial.items():
            out[texp] = out.get(texp, 0) + val
    return {k: v for k, v in out.items() if v}


def oracle_rank(rows) -> int:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        piv = rows[rank][col]
        piv_inv = Fraction(1) / piv if isinstance(piv, Fraction) else piv.inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] * piv_inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def brute_quasi_dims(group, mult, max_degree):
    """Graded dimensions of the quasi-invariants by the derivative route."""
    ops = []
    for h in group.hyperplanes:
        m_h = mult.of(h)
        v = transversal_vector(h.alpha)
        spanning = hyperplane_spanning_vectors(h.alpha)
        if h.stabilizer_order == 2:
            if m_h:
                s = _reflection(group, h)
                ops.append((lambda p, s=s: group.act(s, p) - p, 2 * m_h, v, spanning))
        else:
            for i in range(1, h.stabilizer_order):
                need = h.stabilizer_order * m_h[i - 1]
                if need:
                    e = idempotent(group, h, (-i) % h.stabilizer_order)
                    ops.append((e.apply, need, v, spanning))
    dims = []
    for d in range(max_degree + 1):
        monos = monomials_of_degree(group.variables, d)
        rows = []
        row_index: dict = {}
        for col, exp in enumerate(monos):
            mono = Polynomial.monomial(group.variables, exp)
            for oi, (op, need, v, spanning) in enumerate(ops):
                q = op(mono)
                for a in range(need):
                    coeffs = restrict_to_span(q, spanning)
                    for texp, val in coeffs.items():
                        key = (oi, a, texp)
                        if key not in row_index:
                            row_index[key] = len(rows)
                            rows.append([Fraction(0)] * len(monos))
                        rows[row_index[key]][col] = rows[row_index[key]][col] + val
                    if a + 1 < need:
                        q = directional_derivative(q, v)
        dims.append(len(monos) - oracle_rank(rows))
    return dims


def _reflection(group, h):
    ident = group.identity_index()
    for i in group.stabilizer(h):
        if i != ident:
            return i
    raise AssertionError("hyperplane without reflection")


def brute_invariant_dims(group, max_degree):
    """Invariant dimensions by averaging monomials and ranking the span."""
    dims = []
    for d in range(max_degree + 1):
        monos = monomials_of_degree(group.variables, d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for exp in monos:
            avg = group.reynolds(Polynomial.monomial(group.variables, exp))
            row = [Fraction(0)] * len(monos)
            for e, c in avg.terms.items():
                row[index[e]] = c
            rows.append(row)
        dims.append(oracle_rank(rows))
    return dims


def brute_orbit_count(group) -> int:
    """Number of hyperplane orbits by direct action on normalized forms."""
    forms = [h.alpha for h in group.hyperplanes]
    seen = set()
    orbits = 0
    for start in forms:
        if start in seen:
            continue
        orbits += 1
        frontier = [start]
        while frontier:
            f = frontier.pop()
            if f in seen:
                continue
            seen.add(f)
            for i in range(group.order):
                img = group.act(i, f)
                norm = _normalize(img)
                if norm not in seen:
                    frontier.append(norm)
    return orbits


def _normalize(alpha: Polynomial) -> Polynomial:
    coeffs = linear_coefficients(alpha)
    lead = next(c for c in coeffs if c)
    inv = Fraction(1) / lead if isinstance(lead, Fraction) else lead.inverse()
    return alpha * inv
