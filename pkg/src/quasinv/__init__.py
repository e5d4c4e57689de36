"""quasinv: exact arithmetic for quasi-invariant algebras of reflection groups.

Everything is computed over exact coefficient fields (rationals or cyclotomic
extensions); there is no floating-point mode.  All types are immutable values
and all operations are pure functions, so shared concurrent reads are safe.
"""

__version__ = "0.1.0"

from quasinv.errors import DomainError, InconclusiveError, ParseError, ReconstructionError
from quasinv.fields import Cyclotomic, Rational, cyclotomic_polynomial
from quasinv.groups import Multiplicity, ReflectionGroup, idempotent, parse_group
from quasinv.hilbert import HilbertSeries, gorenstein_shift, hilbert_from_basis
from quasinv.laurent import LaurentElement
from quasinv.linalg import nullspace
from quasinv.poly import Polynomial, divisibility_order
from quasinv.quasi import (
    cw_valued_basis,
    filtration_check,
    freeness_certificate,
    hilbert,
    is_quasi_invariant,
    quasi_basis,
)
from quasinv.series import ZQSeries

__all__ = [
    "Cyclotomic",
    "DomainError",
    "HilbertSeries",
    "InconclusiveError",
    "LaurentElement",
    "Multiplicity",
    "ParseError",
    "Polynomial",
    "Rational",
    "ReconstructionError",
    "ReflectionGroup",
    "ZQSeries",
    "__version__",
    "cw_valued_basis",
    "cyclotomic_polynomial",
    "divisibility_order",
    "filtration_check",
    "freeness_certificate",
    "gorenstein_shift",
    "hilbert",
    "hilbert_from_basis",
    "idempotent",
    "is_quasi_invariant",
    "nullspace",
    "parse_group",
    "quasi_basis",
]
