"""Supported reflection and pseudoreflection groups.

The group spec grammar is

    "A1" | "A1^n" | "I2(k)" (k >= 3) | "Z/l" (l >= 2) | rank-one factors
    joined with " x "

The dihedral group I2(k) acts on coordinates (z1, z2) by rotations
(z1, z2) -> (zeta^j z1, zeta^-j z2) and reflections
(z1, z2) -> (zeta^j z2, zeta^-j z1), zeta a primitive k-th root of unity,
so every matrix entry lies in Q(zeta_2k) and the reflection hyperplanes are
the kernels of alpha_j = z1 - zeta^j z2.  Linear forms are normalized so the
first nonzero coordinate coefficient is 1 (scaling-dependent outputs are
flagged as normalization-dependent at the reporting layer).

Groups are immutable after construction and safe for shared reads.
"""

from __future__ import annotations

import re
from fractions import Fraction

from quasinv.errors import ParseError
from quasinv.fields import Cyclotomic
from quasinv.poly import Polynomial


class Hyperplane:
    __slots__ = ("alpha", "stabilizer_order", "orbit_id", "index")

    def __init__(self, alpha: Polynomial, stabilizer_order: int, orbit_id: int, index: int):
        self.alpha = alpha
        self.stabilizer_order = stabilizer_order
        self.orbit_id = orbit_id
        self.index = index

    def __repr__(self):
        return f"<H{self.index}: {self.alpha} = 0, n_H={self.stabilizer_order}, orbit {self.orbit_id}>"


class ReflectionGroup:
    """A finite group generated by pseudoreflections, with its arrangement."""

    def __init__(self, spec, rank, field, variables, elements, invariant_degrees,
                 fundamental_invariants):
        self.spec = spec
        self.rank = rank
        self.field = field  # "Q" or ("zeta", n)
        self.variables = tuple(variables)
        self.elements = elements  # list of matrices (tuple of tuple rows)
        self.order = len(elements)
        self.invariant_degrees = tuple(sorted(invariant_degrees))
        self.fundamental_invariants = list(fundamental_invariants)

        self._index = {m: i for i, m in enumerate(elements)}
        if len(self._index) != len(elements):
            raise ValueError("duplicate group elements")
        self._mul_table = None
        self._inv_table = None
        self._act_images: dict = {}
        self._subs_cache: dict = {}

        self.hyperplanes = self._build_hyperplanes()
        self._verify_group_axioms()

    # -- group structure -----------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._mul_table is None:
            self._mul_table = {}
        key = (i, j)
        got = self._mul_table.get(key)
        if got is None:
            m = _mat_mul(self.elements[i], self.elements[j])
            got = self._index[m]
            self._mul_table[key] = got
        return got

    def inverse(self, i: int) -> int:
        if self._inv_table is None:
            ident = self._index[_identity(self.rank, self._one())]
            table = {}
            for a in range(self.order):
                for b in range(self.order):
                    if self.mul(a, b) == ident:
                        table[a] = b
                        break
            self._inv_table = table
        return self._inv_table[i]

    def identity_index(self) -> int:
        return self._index[_identity(self.rank, self._one())]

    def _one(self):
        if self.field == "Q":
            return Fraction(1)
        return Cyclotomic.from_rational(self.field[1], 1)

    def determinant(self, i: int):
        return _det(self.elements[i])

    # -- polynomial action ------------------------------------------------------

    def act(self, i: int, p: Polynomial) -> Polynomial:
        """The degree-preserving automorphism p -> p o w^(-1) of the
        coordinate ring, for the i-th group element."""
        if p.vars != self.variables:
            raise ValueError("polynomial not in this group's coordinate ring")
        images = self._act_images.get(i)
        if images is None:
            inv = self.elements[self.inverse(i)]
            images = {}
            for k, name in enumerate(self.variables):
                form = Polynomial.zero(self.variables)
                for j, other in enumerate(self.variables):
                    if inv[k][j]:
                        form = form + Polynomial.variable(self.variables, other) * inv[k][j]
                images[name] = form
            self._act_images[i] = images
        return p.substitute(images, cache=self._subs_cache)

    def reynolds(self, p: Polynomial) -> Polynomial:
        """Group averaging projector onto invariants."""
        acc = Polynomial.zero(self.variables)
        for i in range(self.order):
            acc = acc + self.act(i, p)
        return acc * Fraction(1, self.order)

    # -- arrangement --------------------------------------------------------------

    def _build_hyperplanes(self):
        # collect fixed hyperplanes of pseudoreflections, then W-orbits
        raw = {}  # normalized alpha -> set of element indices fixing it pointwise
        for i, m in enumerate(self.elements):
            fixed = _fixed_hyperplane(m, self.rank, self._one())
            if fixed is None:
                continue
            alpha = self._normalized_form(fixed)
            raw.setdefault(alpha, set()).add(i)
        alphas = sorted(raw, key=lambda a: a.sorted_terms().__repr__())
        # orbit decomposition by brute-force action on the forms
        orbit_of: dict = {}
        next_orbit = 0
        for a in alphas:
            if a in orbit_of:
                continue
            orbit_of[a] = next_orbit
            frontier = [a]
            while frontier:
                b = frontier.pop()
                for i in range(self.order):
                    img = self._normalized_form(self.act(i, b))
                    if img not in orbit_of:
                        orbit_of[img] = next_orbit
                        frontier.append(img)
            next_orbit += 1
        out = []
        for idx, a in enumerate(alphas):
            n_h = len(raw[a]) + 1  # stabilizer includes the identity
            out.append(Hyperplane(a, n_h, orbit_of[a], idx))
        return out

    def _normalized_form(self, alpha: Polynomial) -> Polynomial:
        # first nonzero coordinate coefficient scaled to 1
        from quasinv.poly import linear_coefficients

        coeffs = linear_coefficients(alpha)
        lead = next(c for c in coeffs if c)
        inv = Fraction(1) / lead if isinstance(lead, Fraction) else lead.inverse()
        return alpha * inv

    def orbits(self):
        out: dict = {}
        for h in self.hyperplanes:
            out.setdefault(h.orbit_id, []).append(h)
        return out

    def stabilizer(self, h: Hyperplane):
        """Indices of elements fixing the hyperplane pointwise (a cyclic group)."""
        out = []
        basis = _hyperplane_basis(h.alpha, self.variables)
        for i, m in enumerate(self.elements):
            if all(_mat_vec(m, v) == v for v in basis):
                out.append(i)
        return out

    # -- sanity ---------------------------------------------------------------------

    def _verify_group_axioms(self):
        prod = 1
        for d in self.invariant_degrees:
            prod *= d
        if prod != self.order:
            raise ValueError("invariant degrees inconsistent with group order")
        for i in range(self.order):
            for j in range(self.order):
                self.mul(i, j)  # raises KeyError via index lookup if not closed
        for h in self.hyperplanes:
            if h.stabilizer_order < 2:
                raise ValueError("hyperplane with trivial stabilizer")
        for f in self.fundamental_invariants:
            for i in range(self.order):
                if self.act(i, f) != f:
                    raise ValueError("listed fundamental invariant is not invariant")

    def is_coxeter(self) -> bool:
        return all(h.stabilizer_order == 2 for h in self.hyperplanes)

    # -- diagonal characters ------------------------------------------------

    def _diagonal_indices(self):
        if not hasattr(self, "_diag_idx"):
            zero = self._one() - self._one()
            out = []
            for i, m in enumerate(self.elements):
                if all(m[r][c] == zero for r in range(self.rank)
                       for c in range(self.rank) if r != c):
                    out.append(i)
            self._diag_idx = out
            self._diag_powers = {}
        return self._diag_idx

    def monomial_class_key(self, exp):
        """Character of a monomial under the diagonal subgroup.

        W-stable graded subspaces split along these characters, which lets
        degreewise systems be solved block by block."""
        diag = self._diagonal_indices()
        key = []
        for i in diag:
            inv = self.elements[self.inverse(i)]
            scalar = self._one()
            for k, e in enumerate(exp):
                if e:
                    scalar = scalar * self._diag_power(i, k, e, inv)
            key.append(scalar)
        return tuple(key)

    def _diag_power(self, i, k, e, inv):
        table = self._diag_powers.setdefault((i, k), [self._one()])
        while len(table) <= e:
            table.append(table[-1] * inv[k][k])
        return table[e]

    def monomial_blocks(self, exponents):
        """Partition of the exponent list into diagonal-character classes,
        as index lists ordered by first occurrence."""
        blocks: dict = {}
        for idx, exp in enumerate(exponents):
            blocks.setdefault(self.monomial_class_key(exp), []).append(idx)
        return [blocks[k] for k in sorted(blocks, key=lambda key: blocks[key][0])]

    def sum_invariant_degrees(self) -> int:
        return sum(self.invariant_degrees)

    def __repr__(self):
        return f"<ReflectionGroup {self.spec}: order {self.order}, rank {self.rank}>"


class GroupAlgebraElement:
    """Element of the group algebra: map from element index to coefficient."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: ReflectionGroup, coeffs: dict):
        self.group = group
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i, 0) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return GroupAlgebraElement(self.group, out)

    def __sub__(self, other):
        return self + GroupAlgebraElement(other.group, {i: -c for i, c in other.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return GroupAlgebraElement(self.group, {i: c * other for i, c in self.coeffs.items()})
        out: dict = {}
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                k = self.group.mul(i, j)
                s = out.get(k, 0) + ci * cj
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return GroupAlgebraElement(self.group, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def apply(self, p: Polynomial) -> Polynomial:
        acc = Polynomial.zero(self.group.variables)
        for i, c in self.coeffs.items():
            acc = acc + self.group.act(i, p) * c
        return acc

    def __repr__(self):
        return f"<GroupAlgebraElement {self.coeffs}>"


def idempotent(group: ReflectionGroup, h: Hyperplane, i: int) -> GroupAlgebraElement:
    """The i-th character idempotent of the cyclic pointwise stabilizer of a
    hyperplane, built from powers of the determinant character.  Idempotency
    and the partition of unity are verified on construction."""
    n_h = h.stabilizer_order
    if not 0 <= i < n_h:
        raise ValueError(f"character index {i} out of range for n_H = {n_h}")
    stab = group.stabilizer(h)
    if len(stab) != n_h:
        raise ValueError("stabilizer enumeration inconsistent with n_H")
    coeffs = {}
    inv_order = Fraction(1, n_h)
    for w in stab:
        det = _det(group.elements[w])
        coeffs[w] = _root_power(det, -i, n_h) * inv_order
    e = GroupAlgebraElement(group, coeffs)
    if e * e != e:
        raise ArithmeticError("constructed group algebra element is not idempotent")
    return e


def _root_power(det, k: int, n: int):
    """det^k for det an n-th root of unity."""
    k %= n
    if isinstance(det, Fraction):
        return det**k
    out = Cyclotomic.from_rational(det.n, 1)
    for _ in range(k):
        out = out * det
    return out


# -- matrices -------------------------------------------------------------------


def _identity(rank, one):
    zero = one - one
    return tuple(
        tuple(one if i == j else zero for j in range(rank)) for i in range(rank)
    )


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), start=Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(m, v):
    n = len(m)
    return tuple(sum((m[i][j] * v[j] for j in range(n)), start=Fraction(0)) for i in range(n))


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    # exact elimination for the (rare) larger product groups
    rows = [list(r) for r in m]
    det = Fraction(1)
    for col in range(n):
        sel = None
        for r in range(col, n):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            return Fraction(0)
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            det = -det
        piv = rows[col][col]
        det = det * piv
        inv = Fraction(1) / piv if isinstance(piv, Fraction) else piv.inverse()
        for r in range(col + 1, n):
            if rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def _fixed_hyperplane(m, rank, one):
    """For a pseudoreflection, the linear form cutting out its fixed
    hyperplane; None for the identity or elements without a fixed hyperplane
    of codimension one."""
    zero = one - one
    ident = _identity(rank, one)
    if m == ident:
        return None
    # rows of (m - I) span the orthogonal of the fixed space in coordinates
    diff = [[m[i][j] - ident[i][j] for j in range(rank)] for i in range(rank)]
    from quasinv.linalg import rref

    red, pivots = rref(diff)
    if len(pivots) != 1:
        return None  # fixed space not a hyperplane
    # fixed space = kernel of (m - I); codim 1 means one independent condition
    names = None
    row = red[0]
    variables = _default_variables(rank)
    poly = Polynomial.zero(variables)
    for j, c in enumerate(row):
        if c:
            poly = poly + Polynomial.variable(variables, variables[j]) * c
    return poly if poly else names


def _default_variables(rank: int):
    if rank == 1:
        return ("x",)
    if rank == 2:
        return ("z1", "z2")
    return tuple(f"x{i + 1}" for i in range(rank))


def _hyperplane_basis(alpha: Polynomial, variables):
    """Vectors spanning ker(alpha)."""
    from quasinv.poly import linear_coefficients

    coeffs = linear_coefficients(alpha)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    n = len(coeffs)
    basis = []
    c_p = coeffs[pivot]
    inv = Fraction(1) / c_p if isinstance(c_p, Fraction) else c_p.inverse()
    for j in range(n):
        if j == pivot:
            continue
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        v[pivot] = -coeffs[j] * inv
        basis.append(tuple(v))
    return basis


# -- constructors ------------------------------------------------------------------


def _a1_factor():
    return {
        "order_gen": 2,
        "kind": "A1",
    }


def _build_rank_one(kind: str, ell: int):
    """Matrices, degrees and invariants of a rank-one factor on one variable."""
    if kind == "A1":
        return [Fraction(1), Fraction(-1)], [2], 2
    # Z/l: x -> zeta_l x as a point map
    if ell == 2:
        return [Fraction(1), Fraction(-1)], [2], 2
    zeta = Cyclotomic.zeta(ell)
    scalars = []
    cur = Cyclotomic.from_rational(ell, 1)
    for _ in range(ell):
        scalars.append(cur)
        cur = cur * zeta
    return scalars, [ell], ell


def parse_group(spec: str) -> ReflectionGroup:
    """Build a supported reflection group from its spec string."""
    text = spec.strip()
    if not text:
        raise ParseError("empty group spec")
    factors = []
    for token in re.split(r"\s*x\s*", text):
        token = token.strip()
        if not token:
            raise ParseError(f"empty factor in spec {spec!r}")
        m = re.fullmatch(r"A1\^(\d+)", token)
        if m:
            n = int(m.group(1))
            if n < 1:
                raise ParseError(f"bad power in {token!r}")
            factors.extend([("A1", 2)] * n)
            continue
        if token == "A1":
            factors.append(("A1", 2))
            continue
        m = re.fullmatch(r"I2\((\d+)\)", token)
        if m:
            k = int(m.group(1))
            if k < 3:
                raise ParseError(f"I2(k) needs k >= 3, got {token!r}")
            factors.append(("I2", k))
            continue
        m = re.fullmatch(r"Z/(\d+)", token)
        if m:
            ell = int(m.group(1))
            if ell < 2:
                raise ParseError(f"Z/l needs l >= 2, got {token!r}")
            factors.append(("Z", ell))
            continue
        raise ParseError(f"unknown group token {token!r}")
    if len(factors) == 1 and factors[0][0] == "I2":
        return _build_dihedral(spec.strip(), factors[0][1])
    if any(kind == "I2" for kind, _ in factors):
        raise ParseError("products support rank-one factors only")
    return _build_product(spec.strip(), factors)


def _build_dihedral(spec: str, k: int) -> ReflectionGroup:
    n_field = 2 * k
    one = Cyclotomic.from_rational(n_field, 1)
    zero = Cyclotomic.from_rational(n_field, 0)
    zeta_k = Cyclotomic.zeta(n_field, 2)  # zeta_2k^2 is a primitive k-th root
    powers = [one]
    for _ in range(k - 1):
        powers.append(powers[-1] * zeta_k)
    elements = []
    for j in range(k):  # rotations diag(zeta^j, zeta^-j)
        elements.append(
            (
                (powers[j], zero),
                (zero, powers[(k - j) % k]),
            )
        )
    for j in range(k):  # reflections (z1, z2) -> (zeta^j z2, zeta^-j z1)
        elements.append(
            (
                (zero, powers[j]),
                (powers[(k - j) % k], zero),
            )
        )
    variables = ("z1", "z2")
    z1 = Polynomial.variable(variables, "z1")
    z2 = Polynomial.variable(variables, "z2")
    invariants = [z1 * z2, z1**k + z2**k]
    return ReflectionGroup(
        spec=spec,
        rank=2,
        field=("zeta", n_field),
        variables=variables,
        elements=elements,
        invariant_degrees=[2, k],
        fundamental_invariants=invariants,
    )


def _build_product(spec: str, factors) -> ReflectionGroup:
    rank = len(factors)
    orders = [ell for _, ell in factors]
    lcm = 1
    for kind, ell in factors:
        if kind == "Z" and ell > 2:
            lcm = _lcm(lcm, ell)
    if lcm > 2:
        field = ("zeta", lcm)
        def embed(c):
            if isinstance(c, Fraction):
                return Cyclotomic.from_rational(lcm, c)
            # re-embed zeta_l into zeta_lcm
            out = Cyclotomic.from_rational(lcm, 0)
            step = lcm // c.n
            for kpow, coord in enumerate(c.coords):
                if coord:
                    out = out + coord * Cyclotomic.zeta(lcm, kpow * step)
            return out
    else:
        field = "Q"
        def embed(c):
            return c
    scalar_lists = []
    degrees = []
    for kind, ell in factors:
        scalars, degs, _ = _build_rank_one(kind, ell)
        scalar_lists.append([embed(s) for s in scalars])
        degrees.extend(degs)
    one = Fraction(1) if field == "Q" else Cyclotomic.from_rational(field[1], 1)
    zero = one - one
    elements = []
    for combo in _cartesian(scalar_lists):
        elements.append(
            tuple(
                tuple(combo[i] if i == j else zero for j in range(rank))
                for i in range(rank)
            )
        )
    variables = _default_variables(rank)
    invariants = []
    for i, (kind, ell) in enumerate(factors):
        d = 2 if kind == "A1" or ell == 2 else ell
        v = Polynomial.variable(variables, variables[i])
        invariants.append(v**d)
    return ReflectionGroup(
        spec=spec,
        rank=rank,
        field=field,
        variables=variables,
        elements=elements,
        invariant_degrees=degrees,
        fundamental_invariants=invariants,
    )


def _cartesian(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _cartesian(lists[1:]):
            yield (head,) + tail


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


# -- multiplicity functions ---------------------------------------------------------


class Multiplicity:
    """W-invariant multiplicity data keyed on hyperplane orbits.

    Coxeter orbits (n_H = 2) take a single value, a non-negative integer or
    (in rank one only) a half-integer.  Orbits with n_H > 2 take a vector of
    n_H - 1 non-negative integers.
    """

    def __init__(self, group: ReflectionGroup, values: dict):
        self.group = group
        norm = {}
        orbit_nh = {}
        for h in group.hyperplanes:
            orbit_nh[h.orbit_id] = h.stabilizer_order
        for orbit_id, n_h in orbit_nh.items():
            if orbit_id not in values:
                raise ValueError(f"missing multiplicity for orbit {orbit_id}")
            val = values[orbit_id]
            if n_h == 2:
                val = Fraction(val)
                if val < 0:
                    raise ValueError("multiplicities must be non-negative")
                if val.denominator == 1:
                    norm[orbit_id] = int(val)
                elif val.denominator == 2 and group.rank == 1 and group.is_coxeter():
                    norm[orbit_id] = val
                else:
                    raise ValueError(
                        "half-integer multiplicities only make sense for the "
                        "rank-one Coxeter group"
                    )
            else:
                vec = tuple(int(v) for v in val)
                if len(vec) != n_h - 1 or any(v < 0 for v in vec):
                    raise ValueError(
                        f"orbit {orbit_id} needs {n_h - 1} non-negative integers"
                    )
                norm[orbit_id] = vec
        self.values = norm

    @staticmethod
    def constant(group: ReflectionGroup, m) -> "Multiplicity":
        values = {}
        for h in group.hyperplanes:
            if h.stabilizer_order == 2:
                values.setdefault(h.orbit_id, m)
            else:
                mf = Fraction(m)
                if mf.denominator != 1:
                    raise ValueError("non-Coxeter orbits need integer multiplicities")
                values.setdefault(h.orbit_id, (int(mf),) * (h.stabilizer_order - 1))
        return Multiplicity(group, values)

    def of(self, h: Hyperplane):
        return self.values[h.orbit_id]

    def is_integer(self) -> bool:
        return all(
            isinstance(v, (int, tuple)) for v in self.values.values()
        )

    def coxeter_total(self):
        """Sum of m_alpha over all hyperplanes (Coxeter data only)."""
        total = 0
        for h in self.group.hyperplanes:
            v = self.of(h)
            if isinstance(v, tuple):
                raise ValueError("total multiplicity only defined for Coxeter data")
            total += v
        return total

    def componentwise_le(self, other: "Multiplicity") -> bool:
        for orbit_id, v in self.values.items():
            w = other.values[orbit_id]
            if isinstance(v, tuple):
                if any(a > b for a, b in zip(v, w)):
                    return False
            elif v > w:
                return False
        return True

    def __repr__(self):
        return f"<Multiplicity {self.values}>"

    def __eq__(self, other):
        if not isinstance(other, Multiplicity):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(tuple(sorted((k, v) for k, v in self.values.items())))
