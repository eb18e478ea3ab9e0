"""Exact valued fields: arithmetic, valuation, residues, uniformizers.

Three concrete kinds cover every catalog entry:

* the rationals with a p-adic valuation (value group Z),
* rational functions over F_p or Q with the order-at-X valuation (Z),
* rational functions in X, Y with the lex-monomial valuation (Z^2,
  v(X) = (1,0), v(Y) = (0,1), so the maximal ideal is generated by Y).

Field elements are exact and canonical: `fractions.Fraction` for the
rationals, and reduced fractions of sparse polynomials with a monic
denominator for the function fields (so equality and hashing are
syntactic).  The polynomial plumbing is sympy's sparse rings; all
valuation-theoretic behaviour lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import GF, QQ
from sympy.polys.fields import field as _sympy_field

from .errors import ConfigError, DimensionError, NotIntegralError, ParseError
from .exprparse import Evaluator
from .ordered_group import GroupElement


# ---------------------------------------------------------------------------
# residue fields


@dataclass(frozen=True)
class FpElement:
    """Element of the prime field F_p, stored as a canonical residue."""

    val: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "val", self.val % self.p)

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise DimensionError("mixed prime fields")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else FpElement(self.val + other.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else FpElement(self.val - other.val, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else FpElement(other.val - self.val, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else FpElement(self.val * other.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.val == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.val * pow(other.val, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other / self

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == other % self.p
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __str__(self):
        return str(self.val)

    def __repr__(self):
        return f"FpElement({self.val}, {self.p})"


@dataclass(frozen=True)
class PrimeResidues:
    """Residue field F_p."""

    p: int

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def from_int(self, n: int) -> FpElement:
        return FpElement(n, self.p)

    def format(self, r) -> str:
        return str(r.val)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class RationalResidues:
    """Residue field Q (function fields over Q with a monomial valuation)."""

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def format(self, r) -> str:
        return str(r)

    def __str__(self):
        return "Q"


# ---------------------------------------------------------------------------
# function-field elements

def _monic_denominator(frac):
    """Scale a reduced sympy fraction so its denominator is monic."""
    lc = frac.denom.LC
    if lc == frac.field.domain.one:
        return frac
    return frac.field.new(frac.numer.quo_ground(lc), frac.denom.quo_ground(lc))


class FuncFieldElement:
    """Canonical rational function: reduced, monic denominator.

    Thin wrapper over a sympy FracElement; every arithmetic result is
    renormalized so equality and hashing stay syntactic.
    """

    __slots__ = ("frac",)

    def __init__(self, frac):
        self.frac = _monic_denominator(frac)

    def _unwrap(self, other):
        if isinstance(other, FuncFieldElement):
            return other.frac
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._unwrap(other)
        return NotImplemented if o is None else FuncFieldElement(self.frac + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._unwrap(other)
        return NotImplemented if o is None else FuncFieldElement(self.frac - o)

    def __rsub__(self, other):
        o = self._unwrap(other)
        return NotImplemented if o is None else FuncFieldElement(o - self.frac)

    def __mul__(self, other):
        o = self._unwrap(other)
        return NotImplemented if o is None else FuncFieldElement(self.frac * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._unwrap(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero")
        return FuncFieldElement(self.frac / o)

    def __rtruediv__(self, other):
        o = self._unwrap(other)
        if o is None:
            return NotImplemented
        if not self.frac:
            raise ZeroDivisionError("division by zero")
        return FuncFieldElement(o / self.frac)

    def __pow__(self, n: int):
        if n < 0 and not self.frac:
            raise ZeroDivisionError("zero has no negative powers")
        return FuncFieldElement(self.frac**n)

    def __neg__(self):
        return FuncFieldElement(-self.frac)

    def __eq__(self, other):
        if isinstance(other, FuncFieldElement):
            return self.frac == other.frac
        if isinstance(other, int):
            return self.frac == other
        return NotImplemented

    def __hash__(self):
        return hash(self.frac)

    def __bool__(self):
        return bool(self.frac)

    def __repr__(self):
        return f"FuncFieldElement({self.frac})"


# ---------------------------------------------------------------------------
# valued fields


class ValuedField:
    """Common surface of a field with a surjective valuation onto Z^rank."""

    rank: int

    # subclasses set: zero, one, residue_field

    def from_int(self, n: int):
        raise NotImplementedError

    def value(self, x) -> GroupElement:
        raise NotImplementedError

    def residue(self, x):
        raise NotImplementedError

    def lift(self, r):
        raise NotImplementedError

    def uniformizer_for(self, gamma: GroupElement):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def config(self) -> dict:
        raise NotImplementedError

    # shared behaviour

    def is_integral(self, x) -> bool:
        return self.value(x) >= GroupElement.zero(self.rank)

    def is_unit(self, x) -> bool:
        return self.value(x) == GroupElement.zero(self.rank)

    def in_field_filtration(self, x, gamma: GroupElement) -> bool:
        """Membership in f^v_gamma = {x : v(x) >= -gamma}."""
        return self.value(x) >= -gamma

    def maximal_ideal_generator(self):
        """Generator of m_v: the uniformizer of the smallest positive value."""
        return self.uniformizer_for(GroupElement.unit(self.rank, self.rank - 1))

    def coefficient_pool(self) -> list:
        raise NotImplementedError

    def element_pool(self) -> list:
        raise NotImplementedError


class PadicRationals(ValuedField):
    """Q with the p-adic valuation; elements are `fractions.Fraction`."""

    rank = 1

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ConfigError(f"p = {p} is not prime", "field", "p")
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.residue_field = PrimeResidues(p)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def _vp(self, n: int) -> int:
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        return v

    def value(self, x: Fraction) -> GroupElement:
        if x == 0:
            return GroupElement.infinity(1)
        return GroupElement.of(self._vp(x.numerator) - self._vp(x.denominator))

    def residue(self, x: Fraction) -> FpElement:
        v = self.value(x)
        if not v.is_infinite and v.coords[0] < 0:
            raise NotIntegralError(f"{x} has value {v} < 0")
        if v.is_infinite or v.coords[0] > 0:
            return FpElement(0, self.p)
        return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def lift(self, r: FpElement) -> Fraction:
        return Fraction(r.val)

    def uniformizer_for(self, gamma: GroupElement) -> Fraction:
        if gamma.rank != 1:
            raise DimensionError("rank-1 value group")
        return Fraction(self.p) ** gamma.coords[0]

    def format(self, x: Fraction) -> str:
        return str(x)

    def parse(self, text: str) -> Fraction:
        ev = Evaluator(lookup=_no_names, from_int=Fraction)
        return ev.eval(text)

    def describe(self) -> str:
        return f"Q with the {self.p}-adic valuation"

    def config(self) -> dict:
        return {
            "field": {"kind": "rationals", "p": str(self.p)},
            "valuation": {"kind": "p-adic"},
        }

    def coefficient_pool(self) -> list:
        p = Fraction(self.p)
        return [Fraction(0), Fraction(1), Fraction(-1), p, 1 / p, Fraction(2)]

    def element_pool(self) -> list:
        p = Fraction(self.p)
        return [
            Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
            p, 1 / p, p * p, -p, 2 * p, Fraction(3, 2), 1 / (2 * p),
        ]


def _no_names(name):
    raise KeyError(name)


class RationalFunctionField(ValuedField):
    """Rational functions over F_p or Q with a monomial valuation.

    valuation="order": one variable, order of vanishing at X = 0.
    valuation="lex":   two variables, lex-minimal exponent vector.
    """

    def __init__(self, base: int | None, variables: tuple[str, ...], valuation: str):
        if valuation == "order":
            if len(variables) != 1:
                raise ConfigError("order-at-X valuation needs one variable", "field", "vars")
            self.rank = 1
        elif valuation == "lex":
            if len(variables) != 2:
                raise ConfigError("lex-monomial valuation needs two variables", "field", "vars")
            self.rank = 2
        else:
            raise ConfigError(f"unknown valuation kind {valuation!r}", "valuation", "kind")
        self.base = base
        self.variables = tuple(variables)
        self.valuation = valuation
        if base is None:
            self._domain = QQ
            self.residue_field = RationalResidues()
        else:
            if base < 2 or any(base % d == 0 for d in range(2, int(base**0.5) + 1)):
                raise ConfigError(f"base F_{base}: {base} is not prime", "field", "base")
            self._domain = GF(base, symmetric=False)
            self.residue_field = PrimeResidues(base)
        created = _sympy_field(",".join(self.variables), self._domain, order="lex")
        self._field = created[0]
        self._gens = tuple(FuncFieldElement(g) for g in created[1:])
        self.zero = FuncFieldElement(self._field.zero)
        self.one = FuncFieldElement(self._field.one)

    def gen(self, i: int = 0) -> FuncFieldElement:
        return self._gens[i]

    def from_int(self, n: int) -> FuncFieldElement:
        return FuncFieldElement(self._field.ground_new(self._domain.convert(n)))

    def _coeff_out(self, c):
        """Domain coefficient -> residue-field element."""
        if self.base is None:
            return Fraction(int(c.numerator), int(c.denominator))
        return FpElement(int(c), self.base)

    def _min_monom(self, poly):
        return min(m for m, _ in poly.terms())

    def value(self, x: FuncFieldElement) -> GroupElement:
        if not x:
            return GroupElement.infinity(self.rank)
        n = self._min_monom(x.frac.numer)
        d = self._min_monom(x.frac.denom)
        coords = tuple(a - b for a, b in zip(n, d))
        return GroupElement(self.rank, coords)

    def residue(self, x: FuncFieldElement):
        v = self.value(x)
        zero = GroupElement.zero(self.rank)
        if not v.is_infinite and v < zero:
            raise NotIntegralError(f"{self.format(x)} has value {v} < 0")
        if v.is_infinite or v > zero:
            return self.residue_field.zero
        nm = self._min_monom(x.frac.numer)
        dm = self._min_monom(x.frac.denom)
        nc = dict(x.frac.numer.terms())[nm]
        dc = dict(x.frac.denom.terms())[dm]
        return self._coeff_out(nc) / self._coeff_out(dc)

    def lift(self, r) -> FuncFieldElement:
        if self.base is None:
            num = self._domain.convert(r.numerator) / self._domain.convert(r.denominator)
            return FuncFieldElement(self._field.ground_new(num))
        return self.from_int(r.val)

    def uniformizer_for(self, gamma: GroupElement) -> FuncFieldElement:
        if gamma.rank != self.rank:
            raise DimensionError(f"rank-{self.rank} value group")
        out = self.one
        for g, e in zip(self._gens, gamma.coords):
            if e:
                out = out * g**e
        return out

    # -- formatting ---------------------------------------------------------

    def _format_coeff(self, c) -> str:
        return str(self._coeff_out(c))

    def _format_poly(self, poly) -> str:
        terms = sorted(poly.terms(), key=lambda t: t[0], reverse=True)
        if not terms:
            return "0"
        parts = []
        for monom, coeff in terms:
            factors = []
            for var, e in zip(self.variables, monom):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            cs = self._format_coeff(coeff)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def format(self, x: FuncFieldElement) -> str:
        num = self._format_poly(x.frac.numer)
        if x.frac.denom == self._field.ring.one:
            return num
        den = self._format_poly(x.frac.denom)
        if len(x.frac.numer.terms()) > 1:
            num = f"({num})"
        if len(x.frac.denom.terms()) > 1 or not _is_monomial_str(den):
            den = f"({den})"
        return f"{num}/{den}"

    def parse(self, text: str) -> FuncFieldElement:
        names = {v: g for v, g in zip(self.variables, self._gens)}
        ev = Evaluator(lookup=names.__getitem__, from_int=self.from_int)
        return ev.eval(text)

    def describe(self) -> str:
        base = "Q" if self.base is None else f"F_{self.base}"
        vs = ",".join(self.variables)
        val = "order-at-" + self.variables[0] if self.valuation == "order" else "lex-monomial"
        return f"{base}({vs}) with the {val} valuation"

    def config(self) -> dict:
        base = "Q" if self.base is None else f"F{self.base}"
        val = "order-at-X" if self.valuation == "order" else "lex-monomial"
        return {
            "field": {
                "kind": "rational_functions",
                "base": base,
                "vars": ",".join(self.variables),
            },
            "valuation": {"kind": val},
        }

    def coefficient_pool(self) -> list:
        x = self._gens[0]
        return [self.zero, self.one, -self.one, x, self.one / x, self.one + x]

    def element_pool(self) -> list:
        x = self._gens[0]
        pool = [
            self.zero, self.one, -self.one, x, self.one / x, self.one + x,
            x * x, (self.one + x) / x, x - self.one, self.one / (self.one + x),
            self.from_int(2),
        ]
        if self.rank == 2:
            y = self._gens[1]
            pool += [y, self.one / y, x / y, x + y, x * y, x / (y * y)]
        return pool


def _is_monomial_str(s: str) -> bool:
    return "+" not in s and "-" not in s[1:] and "/" not in s


# ---------------------------------------------------------------------------
# config factory


def field_from_config(field_cfg: dict, valuation_cfg: dict) -> ValuedField:
    """Build a valued field from [field] and [valuation] config sections."""
    kind = field_cfg.get("kind")
    vkind = valuation_cfg.get("kind")
    if kind == "rationals":
        if vkind != "p-adic":
            raise ConfigError(
                f"rationals take the p-adic valuation, not {vkind!r}", "valuation", "kind"
            )
        try:
            p = int(field_cfg["p"])
        except KeyError:
            raise ConfigError("missing prime", "field", "p") from None
        except ValueError:
            raise ConfigError("prime must be an integer", "field", "p") from None
        return PadicRationals(p)
    if kind == "rational_functions":
        base_text = field_cfg.get("base", "Q")
        if base_text == "Q":
            base = None
        elif base_text.startswith("F") and base_text[1:].isdigit():
            base = int(base_text[1:])
        else:
            raise ConfigError(f"unknown base field {base_text!r}", "field", "base")
        variables = tuple(v.strip() for v in field_cfg.get("vars", "X").split(",") if v.strip())
        if vkind == "order-at-X":
            val = "order"
        elif vkind == "lex-monomial":
            val = "lex"
        else:
            raise ConfigError(f"unknown valuation kind {vkind!r}", "valuation", "kind")
        return RationalFunctionField(base, variables, val)
    raise ConfigError(f"unknown field kind {kind!r}", "field", "kind")
