"""Exact scalar arithmetic: Gaussian rationals and sparse polynomials.

Two layers:

* :class:`GaussRat` -- numbers of the form ``re + im*i`` with rational
  ``re``, ``im`` (``i`` the imaginary unit).  Backed by
  :class:`fractions.Fraction`, so everything is exact and canonical
  (lowest terms, positive denominator).

* :class:`Scalar` -- a sparse polynomial in a declared, ordered list of
  formal parameters (e.g. ``("a", "b", "c")``) with Gaussian-rational
  coefficients.  Exponent vectors are dense over the parameter list,
  which keeps term keys small and hashable.  Internally a Scalar stores
  integer coefficient pairs over one shared denominator; this keeps the
  hot loops (bracket recursions, sweep comparisons) in plain integer
  arithmetic.  No floating point is used anywhere.

Text forms (used in JSON reports and CLI/config round trips):

* GaussRat: ``"p/q"``, ``"p/q+r/s*i"``, ``"i"``, ``"-2/3*i"`` ...
* Scalar: sum of terms ``"coeff*a^e1*c^e2"``, e.g. ``"3*a + (1/2+i)*c^2"``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class UsageError(ValueError):
    """Caller violated an operation's contract (bad config, mismatched
    parameter lists, missing assignment, ...)."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class GaussRat:
    """A Gaussian rational ``re + im*i``, exact and immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("GaussRat is immutable")

    # -- arithmetic -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("GaussRat powers must be nonnegative integers")
        acc = GaussRat(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    # -- predicates / identity -------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text form --------------------------------------------------
    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            ip = "i"
        elif self.im == -1:
            ip = "-i"
        else:
            ip = f"{self.im}*i"
        if not self.re:
            return ip
        sign = "+" if (self.im > 0) else ""
        return f"{self.re}{sign}{ip}"

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        """Parse ``"p/q"`` / ``"p/q+r/s*i"`` style text."""
        s = text.strip().replace(" ", "")
        if not s:
            raise UsageError("empty GaussRat literal")
        # split into signed chunks at top level
        chunks, cur = [], ""
        for idx, ch in enumerate(s):
            if ch in "+-" and idx > 0 and s[idx - 1] not in "+-/*^eE(":
                chunks.append(cur)
                cur = ch
            else:
                cur += ch
        chunks.append(cur)
        re = Fraction(0)
        im = Fraction(0)
        for chunk in chunks:
            if not chunk or chunk in "+-":
                raise UsageError(f"malformed GaussRat literal: {text!r}")
            if chunk.endswith("i"):
                body = chunk[:-1]
                if body.endswith("*"):
                    body = body[:-1]
                if body in ("", "+"):
                    im += 1
                elif body == "-":
                    im -= 1
                else:
                    im += Fraction(body)
            else:
                re += Fraction(chunk)
        return cls(re, im)


I = GaussRat(0, 1)
ZERO = GaussRat(0)
ONE = GaussRat(1)


def _norm_terms(terms: dict, den: int):
    """Canonicalize: drop zero coefficients, make den > 0, gcd-reduce."""
    if den < 0:
        den = -den
        terms = {k: (-r, -m) for k, (r, m) in terms.items()}
    terms = {k: v for k, v in terms.items() if v[0] or v[1]}
    if not terms:
        return {}, 1
    g = den
    for r, m in terms.values():
        g = gcd(g, gcd(r, m))
        if g == 1:
            break
    if g > 1:
        terms = {k: (r // g, m // g) for k, (r, m) in terms.items()}
        den //= g
    return terms, den


class Scalar:
    """Sparse polynomial over a fixed ordered parameter list.

    ``terms`` maps dense exponent tuples to integer coefficient pairs
    ``(num_re, num_im)``; all terms share the positive denominator
    ``den``.  Instances are canonical (no zero terms, gcd-reduced) and
    treated as immutable.
    """

    __slots__ = ("params", "terms", "den")

    def __init__(self, params, terms=None, den=1):
        self.params = tuple(params)
        t, d = _norm_terms(dict(terms or {}), den)
        self.terms = t
        self.den = d

    # -- constructors ----------------------------------------------
    @classmethod
    def const(cls, params, value) -> "Scalar":
        params = tuple(params)
        if isinstance(value, str):
            value = GaussRat.parse(value)
        if isinstance(value, (int, Fraction)):
            value = GaussRat(value)
        d = _lcm(value.re.denominator, value.im.denominator)
        nre = int(value.re * d)
        nim = int(value.im * d)
        zero = (0,) * len(params)
        return cls(params, {zero: (nre, nim)}, d)

    @classmethod
    def var(cls, params, name: str) -> "Scalar":
        params = tuple(params)
        if name not in params:
            raise UsageError(f"parameter {name!r} not among declared {params}")
        e = tuple(1 if p == name else 0 for p in params)
        return cls(params, {e: (1, 0)}, 1)

    @classmethod
    def zero(cls, params) -> "Scalar":
        return cls(tuple(params), {}, 1)

    # -- helpers ----------------------------------------------------
    def _check(self, other: "Scalar"):
        if self.params != other.params:
            raise UsageError(
                f"mismatched parameter lists: {self.params} vs {other.params}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations --------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.const(self.params, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        d1, d2 = self.den, other.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        out = {k: (r * m1, m * m1) for k, (r, m) in self.terms.items()}
        for k, (r, m) in other.terms.items():
            pr, pm = out.get(k, (0, 0))
            out[k] = (pr + r * m2, pm + m * m2)
        return Scalar(self.params, out, d1 * m1)

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.params = self.params
        s.terms = {k: (-r, -m) for k, (r, m) in self.terms.items()}
        s.den = self.den
        return s

    def __sub__(self, other):
        return self + (-other if isinstance(other, Scalar) else -Scalar.const(self.params, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.const(self.params, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, (r1, m1) in self.terms.items():
            for e2, (r2, m2) in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                pr, pm = out.get(e, (0, 0))
                out[e] = (pr + r1 * r2 - m1 * m2, pm + r1 * m2 + m1 * r2)
        return Scalar(self.params, out, self.den * other.den)

    __rmul__ = __mul__

    def scale_raw(self, nre: int, nim: int, den: int = 1) -> "Scalar":
        """Multiply by the Gaussian rational ``(nre + nim*i)/den``."""
        if nim == 0:
            out = {k: (r * nre, m * nre) for k, (r, m) in self.terms.items()}
        else:
            out = {k: (r * nre - m * nim, r * nim + m * nre)
                   for k, (r, m) in self.terms.items()}
        return Scalar(self.params, out, self.den * den)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("Scalar powers must be nonnegative integers")
        acc = Scalar.const(self.params, 1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.const(self.params, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.params == other.params and self.den == other.den
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.params, self.den, frozenset(self.terms.items())))

    # -- evaluation ---------------------------------------------------
    def used_params(self):
        used = set()
        for e in self.terms:
            for name, k in zip(self.params, e):
                if k:
                    used.add(name)
        return used

    def eval(self, assignment: dict) -> GaussRat:
        """Evaluate at ``assignment`` (parameter name -> GaussRat).

        A ring homomorphism; every parameter actually appearing must be
        assigned.
        """
        vals = {}
        for name in self.used_params():
            if name not in assignment:
                raise UsageError(f"missing assignment for parameter {name!r}")
        for name, v in assignment.items():
            if isinstance(v, str):
                v = GaussRat.parse(v)
            elif isinstance(v, (int, Fraction)):
                v = GaussRat(v)
            vals[name] = v
        total = GaussRat(0)
        for e, (r, m) in self.terms.items():
            term = GaussRat(Fraction(r, self.den), Fraction(m, self.den))
            for name, k in zip(self.params, e):
                if k:
                    term = term * (vals[name] ** k if k != 1 else vals[name])
            total = total + term
        return total

    def as_gaussrat(self) -> GaussRat:
        """Constant Scalar -> GaussRat (error if non-constant)."""
        if not self.terms:
            return GaussRat(0)
        zero = (0,) * len(self.params)
        if set(self.terms) != {zero}:
            raise UsageError("Scalar is not constant")
        r, m = self.terms[zero]
        return GaussRat(Fraction(r, self.den), Fraction(m, self.den))

    # -- text form ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            r, m = self.terms[e]
            co = GaussRat(Fraction(r, self.den), Fraction(m, self.den))
            cs = str(co)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or cs.endswith("i"):
                cs = f"({cs})"
            names = [f"{p}^{k}" if k > 1 else p
                     for p, k in zip(self.params, e) if k]
            if names:
                body = "*".join(names)
                parts.append(body if cs == "1" else f"{cs}*{body}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"Scalar({self.params!r}, {self!s})"

    @classmethod
    def parse(cls, params, text: str) -> "Scalar":
        params = tuple(params)
        s = text.strip()
        if not s:
            raise UsageError("empty Scalar literal")
        # split top-level '+' (subtraction is carried inside coefficients)
        depth = 0
        chunks, cur = [], ""
        for ch in s:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "+" and depth == 0 and cur.strip() and cur.strip()[-1] not in "*^/(+-":
                chunks.append(cur)
                cur = ""
            else:
                cur += ch
        chunks.append(cur)
        total = cls.zero(params)
        for chunk in chunks:
            chunk = chunk.strip()
            if not chunk:
                raise UsageError(f"malformed Scalar literal: {text!r}")
            coeff = GaussRat(1)
            expo = [0] * len(params)
            for factor in _split_factors(chunk):
                if factor.startswith("("):
                    coeff = coeff * GaussRat.parse(factor[1:-1])
                elif factor in params or (factor.split("^")[0] in params):
                    name, _, p = factor.partition("^")
                    expo[params.index(name)] += int(p) if p else 1
                else:
                    coeff = coeff * GaussRat.parse(factor)
            term = cls.const(params, coeff) * cls(params, {tuple(expo): (1, 0)}, 1)
            total = total + term
        return total


def _split_factors(chunk: str):
    """Split a product term on top-level ``*`` (the ``*i`` of a Gaussian
    literal is glued back to its number)."""
    depth = 0
    parts, cur = [], ""
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    # re-glue "<num>", "i" pairs produced by literals like 1/2*i
    out = []
    for p in parts:
        p = p.strip()
        if p == "i" and out and out[-1] not in ("",) and _is_numeric(out[-1]):
            out[-1] = out[-1] + "*i"
        else:
            out.append(p)
    return out


def _is_numeric(tok: str) -> bool:
    try:
        Fraction(tok.strip("()"))
        return True
    except (ValueError, ZeroDivisionError):
        return False
