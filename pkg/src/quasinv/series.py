"""Truncated series in z (half-integer exponents allowed) and q.

A ZQSeries is exact: its support in z is finite and fully stored (bounded by
the recorded window), while in q only exponents below `q_order` are retained.
Operations propagate the largest q-order on which the result is exact; the
substitution z -> qz lowers it when negative z-exponents are present, because
their images fall out of the retained q-range.

z-exponents are stored as integers in w = z^(1/2), as for LaurentElement.
"""

from __future__ import annotations

from fractions import Fraction

from quasinv.errors import InconclusiveError


class ZQSeries:
    """coeffs: map (w_exponent, q_exponent) -> Fraction, q_exponent < q_order."""

    __slots__ = ("coeffs", "q_order")

    def __init__(self, coeffs=None, q_order: int = 0):
        self.q_order = q_order
        clean = {}
        if coeffs:
            for (w, s), c in coeffs.items():
                c = Fraction(c)
                if c and s < q_order:
                    clean[(int(w), int(s))] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(q_order: int) -> "ZQSeries":
        return ZQSeries({}, q_order)

    @staticmethod
    def one(q_order: int) -> "ZQSeries":
        return ZQSeries({(0, 0): 1}, q_order)

    @staticmethod
    def term(z_exp, q_exp: int, c, q_order: int) -> "ZQSeries":
        w = _as_w(z_exp)
        return ZQSeries({(w, q_exp): c}, q_order)

    @staticmethod
    def from_q_coeffs(qcoeffs, q_order: int) -> "ZQSeries":
        """Pure q-series from a coefficient list."""
        return ZQSeries({(0, s): c for s, c in enumerate(qcoeffs)}, q_order)

    # -- window bookkeeping -------------------------------------------------

    def w_window(self):
        if not self.coeffs:
            return (0, 0)
        ws = [w for (w, _) in self.coeffs]
        return (min(ws), max(ws))

    def z_window(self):
        lo, hi = self.w_window()
        return (Fraction(lo, 2), Fraction(hi, 2))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZQSeries({(0, 0): other}, self.q_order)
        N = min(self.q_order, other.q_order)
        out = {}
        for key, c in self.coeffs.items():
            if key[1] < N:
                out[key] = c
        for key, c in other.coeffs.items():
            if key[1] < N:
                s = out.get(key, Fraction(0)) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ZQSeries(out, N)

    __radd__ = __add__

    def __neg__(self):
        return ZQSeries({k: -c for k, c in self.coeffs.items()}, self.q_order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZQSeries({(0, 0): other}, self.q_order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return ZQSeries(
                {k: c * other for k, c in self.coeffs.items()}, self.q_order
            )
        N = min(self.q_order, other.q_order)
        out: dict = {}
        for (w1, s1), c1 in self.coeffs.items():
            if s1 >= N:
                continue
            for (w2, s2), c2 in other.coeffs.items():
                s = s1 + s2
                if s >= N:
                    continue
                key = (w1 + w2, s)
                v = out.get(key, Fraction(0)) + c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return ZQSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a series")
        out = ZQSeries.one(self.q_order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def truncate_q(self, N: int) -> "ZQSeries":
        return ZQSeries(self.coeffs, min(self.q_order, N))

    # -- substitutions --------------------------------------------------------

    def involution(self) -> "ZQSeries":
        """z -> 1/z.  Valid because the full z-support is stored."""
        return ZQSeries({(-w, s): c for (w, s), c in self.coeffs.items()}, self.q_order)

    def negate_z(self) -> "ZQSeries":
        """z -> -z; requires integer z-exponents."""
        out = {}
        for (w, s), c in self.coeffs.items():
            if w % 2:
                raise ValueError("z -> -z needs integer z-exponents")
            out[(w, s)] = c if (w // 2) % 2 == 0 else -c
        return ZQSeries(out, self.q_order)

    def square_z(self) -> "ZQSeries":
        """z -> z^2."""
        return ZQSeries({(2 * w, s): c for (w, s), c in self.coeffs.items()}, self.q_order)

    def mul_monomial(self, z_exp, q_exp: int) -> "ZQSeries":
        """Multiply by z^(z_exp) q^(q_exp); for q_exp >= 0 the certified
        q-order grows with the shift."""
        if q_exp < 0:
            raise ValueError("negative q-shifts are not certified")
        w = _as_w(z_exp)
        return ZQSeries(
            {(w1 + w, s + q_exp): c for (w1, s), c in self.coeffs.items()},
            self.q_order + q_exp,
        )

    def shift_q(self) -> "ZQSeries":
        """z -> qz.  The certified q-order drops by the most negative
        z-exponent, since coefficients get pushed below the cut; raises when
        the image has genuinely negative q-exponents and so leaves the
        power-series ring."""
        lo_w, _ = self.w_window()
        out = {}
        new_order = self.q_order + min(0, lo_w // 2)
        for (w, s), c in self.coeffs.items():
            if w % 2:
                raise ValueError("z -> qz needs integer z-exponents")
            s2 = s + w // 2
            if s2 < 0:
                raise ValueError("substitution z -> qz leaves the q-power-series ring")
            if s2 < new_order:
                out[(w, s2)] = c
        return ZQSeries(out, new_order)

    # -- extraction -------------------------------------------------------------

    def q_slice(self, s: int) -> dict:
        """Map w-exponent -> coefficient at q^s."""
        return {w: c for (w, s2), c in self.coeffs.items() if s2 == s}

    def coefficient(self, z_exp, q_exp: int) -> Fraction:
        return self.coeffs.get((_as_w(z_exp), q_exp), Fraction(0))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ZQSeries):
            return NotImplemented
        N = min(self.q_order, other.q_order)
        a = {k: c for k, c in self.coeffs.items() if k[1] < N}
        b = {k: c for k, c in other.coeffs.items() if k[1] < N}
        return a == b

    def agree_through(self, other: "ZQSeries", q_through: int) -> bool:
        """Coefficientwise equality for q-exponents < q_through."""
        if min(self.q_order, other.q_order) < q_through:
            raise InconclusiveError("series not certified through requested q-order")
        a = {k: c for k, c in self.coeffs.items() if k[1] < q_through}
        b = {k: c for k, c in other.coeffs.items() if k[1] < q_through}
        return a == b

    def __repr__(self):
        n = len(self.coeffs)
        lo, hi = self.z_window()
        return f"<ZQSeries {n} terms, z-window [{lo}, {hi}], exact below q^{self.q_order}>"


def _as_w(z_exp) -> int:
    w = Fraction(z_exp) * 2
    if w.denominator != 1:
        raise ValueError("z-exponents must be half-integers")
    return int(w)


def invert_q_unit(series: ZQSeries) -> ZQSeries:
    """Inverse of a pure q-series with unit constant term."""
    N = series.q_order
    a = [Fraction(0)] * N
    for (w, s), c in series.coeffs.items():
        if w != 0:
            raise ValueError("can only invert pure q-series")
        a[s] = c
    if not a or a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    inv = [Fraction(0)] * N
    inv[0] = Fraction(1) / a[0]
    for s in range(1, N):
        acc = Fraction(0)
        for j in range(1, s + 1):
            acc += a[j] * inv[s - j]
        inv[s] = -acc / a[0]
    return ZQSeries.from_q_coeffs(inv, N)
