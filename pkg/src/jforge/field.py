"""Field of exact multivariate rational functions, plus Laurent expansion.

A RatFunc is a reduced fraction num/den of sparse polynomials (see poly.py).
The canonical form is unique: gcd(num, den) = 1 and den is scaled to integer
coefficients with content 1 and a positive leading coefficient.  Structural
equality of canonical forms therefore decides mathematical equality, which is
what every verification step in this project ultimately relies on.

No floating point appears anywhere; coefficients are Fractions of unbounded
size.  Values are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .errors import DivisionByZero, NotExpandable, PoleError, UnboundParameter


@dataclass(frozen=True)
class Param:
    """A named formal parameter.  Names are plain identifiers like 'r'.

    The name 'eps' is conventionally reserved for contraction limit
    variables; nothing here enforces that, the contraction module does.
    """

    name: str

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ValueError(f"parameter name {self.name!r} is not an identifier")


def _pname(p) -> str:
    return p.name if isinstance(p, Param) else p


class RatFunc:
    """Immutable rational function in named parameters over Q."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: P.Poly, den: P.Poly = None, *, _reduced: bool = False):
        den = P.PONE if den is None else den
        if P.pis_zero(den):
            raise DivisionByZero("rational function with zero denominator")
        if P.pis_zero(num):
            num, den = {}, dict(P.PONE)
        elif not _reduced:
            g = P.pgcd(num, den)
            if g != P.PONE:
                num = P.pdiv_exact(num, g)
                den = P.pdiv_exact(den, g)
        if not P.pis_zero(num):
            den, scale = P.pint_normalize(den)
            if scale != 1:
                num = P.pscale(num, scale)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    # -- constructors ----------------------------------------------------
    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(P.pconst(Fraction(c)), _reduced=True)

    @staticmethod
    def var(name) -> "RatFunc":
        return RatFunc(P.pvar(_pname(name)), _reduced=True)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return P.pis_zero(self.num)

    def is_one(self) -> bool:
        return self.num == P.PONE and self.den == P.PONE

    def is_const(self) -> bool:
        return P.pis_const(self.num) and P.pis_const(self.den)

    def const_value(self) -> Fraction:
        return P.pconst_value(self.num) / P.pconst_value(self.den)

    def variables(self) -> set:
        return P.pvars(self.num) | P.pvars(self.den)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        return NotImplemented

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(P.padd(self.num, other.num), dict(self.den))
        num = P.padd(P.pmul(self.num, other.den), P.pmul(other.num, self.den))
        return RatFunc(num, P.pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(P.pneg(self.num), dict(self.den), _reduced=True)

    def __sub__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        # cross-cancel so the final gcd pass is trivial on reduced inputs
        g1 = P.pgcd(self.num, other.den)
        g2 = P.pgcd(other.num, self.den)
        n1 = self.num if g1 == P.PONE else P.pdiv_exact(self.num, g1)
        d2 = other.den if g1 == P.PONE else P.pdiv_exact(other.den, g1)
        n2 = other.num if g2 == P.PONE else P.pdiv_exact(other.num, g2)
        d1 = self.den if g2 == P.PONE else P.pdiv_exact(self.den, g2)
        return RatFunc(P.pmul(n1, n2), P.pmul(d1, d2), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(dict(self.den), dict(self.num), _reduced=True)

    def __truediv__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(P.ppow(self.num, n), P.ppow(self.den, n), _reduced=True)

    # -- structure --------------------------------------------------------
    def __eq__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((frozenset(self.num.items()), frozenset(self.den.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from .grammar import serialize

        return serialize(self)

    # -- maps ---------------------------------------------------------------
    def substitute(self, bindings: dict) -> "RatFunc":
        """Simultaneous substitution of parameters by rational functions.

        Unbound parameters stay themselves.  Raises DivisionByZero when the
        denominator collapses to zero under the substitution.
        """
        binds = {_pname(k): RatFunc._coerce(v) for k, v in bindings.items()}
        if not (self.variables() & set(binds)):
            return self
        num = _poly_substitute(self.num, binds)
        den = _poly_substitute(self.den, binds)
        if den.is_zero():
            raise DivisionByZero("substitution sends denominator to zero")
        return num / den

    def evaluate(self, values: dict) -> Fraction:
        """Evaluate at Fraction points; all parameters must be bound."""
        vals = {_pname(k): Fraction(v) for k, v in values.items()}
        missing = self.variables() - set(vals)
        if missing:
            raise UnboundParameter(f"unbound parameters: {sorted(missing)}")
        den = P.peval(self.den, vals)
        if den == 0:
            raise DivisionByZero("evaluation point is a pole")
        return P.peval(self.num, vals) / den


def _poly_substitute(p: P.Poly, binds: dict) -> RatFunc:
    total = RF_ZERO
    for m, c in p.items():
        term = RatFunc.const(c)
        for v, e in m:
            b = binds.get(v)
            term = term * (b ** e if b is not None else RatFunc(P.pvar(v, e), _reduced=True))
        total = total + term
    return total


RF_ZERO = RatFunc(P.pzero(), _reduced=True)
RF_ONE = RatFunc(dict(P.PONE), _reduced=True)


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent expansion in one variable.

    coeffs[i] is the coefficient of variable**(min_degree + i); coefficients
    are RatFunc values free of the expansion variable.  The series is exact
    through degree truncation_order inclusive.  For a nonzero series
    coeffs[0] is nonzero; the zero series has empty coeffs.
    """

    variable: str
    min_degree: int
    coeffs: tuple
    truncation_order: int

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> RatFunc:
        if k > self.truncation_order:
            raise NotExpandable(f"coefficient {k} beyond truncation {self.truncation_order}")
        i = k - self.min_degree
        if i < 0 or i >= len(self.coeffs):
            return RF_ZERO
        return self.coeffs[i]

    def pole_order(self) -> int:
        if self.is_zero() or self.min_degree >= 0:
            return 0
        return -self.min_degree


def laurent_expand(f: RatFunc, var, order: int = None) -> LaurentSeries:
    """Expand f as a Laurent series in var around 0.

    With order None the expansion runs through pole_order + 4.  When the
    requested order cuts off below the valuation, the result is the empty
    series: exact through the truncation, no visible terms.
    """
    v = _pname(var)
    if f.is_zero():
        o = 4 if order is None else order
        return LaurentSeries(v, 0, (), o)
    nu = P.as_univariate(f.num, v)
    du = P.as_univariate(f.den, v)
    a, b = min(nu), min(du)
    val = a - b
    if order is None:
        order = max(0, -val) + 4
    if order < val:
        return LaurentSeries(v, 0, (), order)
    # power series coefficients of num/den after factoring out the valuation
    nn = {i - a: RatFunc(c, _reduced=False) for i, c in nu.items()}
    dd = {j - b: RatFunc(c, _reduced=False) for j, c in du.items()}
    terms = order - val
    inv0 = dd[0].inverse()
    e: list = [None] * (terms + 1)
    e[0] = inv0
    for t in range(1, terms + 1):
        acc = RF_ZERO
        for j in range(1, t + 1):
            cj = dd.get(j)
            if cj is not None:
                acc = acc + cj * e[t - j]
        e[t] = -inv0 * acc
    coeffs = []
    for t in range(terms + 1):
        acc = RF_ZERO
        for i, ci in nn.items():
            if i <= t:
                acc = acc + ci * e[t - i]
        coeffs.append(acc)
    return LaurentSeries(v, val, tuple(coeffs), order)


def limit_at_zero(f, var=None) -> RatFunc:
    """Limit of f as the variable goes to 0.

    Accepts a LaurentSeries, or a RatFunc together with the variable name.
    Raises PoleError (with the lowest coefficients as diagnostics) when
    negative powers survive.
    """
    if isinstance(f, RatFunc):
        if var is None:
            raise NotExpandable("limit of a RatFunc needs the variable")
        f = laurent_expand(f, var)
    series: LaurentSeries = f
    if series.is_zero():
        return RF_ZERO
    if series.min_degree < 0:
        diags = []
        for i, c in enumerate(series.coeffs):
            deg = series.min_degree + i
            if deg >= 0 or len(diags) == 3:
                break
            if not c.is_zero():
                diags.append((deg, str(c)))
        if diags:
            raise PoleError(
                f"pole of order {-series.min_degree} in {series.variable}",
                diagnostics=diags,
            )
    return series.coefficient(0) if series.truncation_order >= 0 else RF_ZERO
