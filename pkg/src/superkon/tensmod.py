"""Tensor modules over the extended contact algebra.

A module is built from a 0/1 twist vector, a finite-dimensional
representation of so_N + Cz, and a weight origin ``a``.  Basis vectors
are ``prefix . v_r @ t^(a+l)`` where the prefix is an ordered product of
the unit odd operators ``D[t, xi_j]`` over a subset J (ascending), v_r
runs over the representation basis, and ``l`` is the integer weight
offset.  Text form: ``"D{1,3}.v2@l=-1"``.

Action rules:

* a function monomial ``t^k xi_I`` kills the vector unless ``I`` is
  contained in the prefix; otherwise it strips ``I`` off with sign
  ``(-1)^(tau(I, J\\I) + |I|(|I|+1)/2)`` and shifts the weight by
  ``2k + sum_{i in I}(1 - eps_i)``;

* a D-symbol on a prefix-free vector acts through the representation
  (scalar ``a + l + 2k + ck`` for the plain series, prefix creation for
  one xi, the so_N generator image for two, zero beyond);

* a D-symbol on a prefixed vector commutes past the leading prefix
  factor: ``D . (D[t,xi_j1] rest) = [D, D[t,xi_j1]] rest
  + (-1)^{|D|} D[t,xi_j1] (D . rest)``.  Two base cases keep the
  recursion well-founded: prepending ``D[t,xi_i]`` when ``i`` is below
  the whole prefix is the definition of the basis, and an odd generator
  meeting its own leading factor resolves through half its
  self-bracket.

The action never truncates; callers intersect with windows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .algebra import AlgebraConfig, AlgebraElement, bracket_ints
from .exactnum import GaussRat, Scalar, UsageError
from .grassmann import EpsilonConfig, members, tau
from .repn import SoRep, build_so2, build_so3_vm, rep_from_config


class ModBasisVec(NamedTuple):
    l: int   # weight offset (t-exponent is a + l)
    J: int   # prefix index set (bitmask)
    r: int   # representation basis index

    def text(self) -> str:
        js = ",".join(str(i) for i in members(self.J))
        return f"D{{{js}}}.v{self.r}@l={self.l}"

    @classmethod
    def parse(cls, text: str) -> "ModBasisVec":
        s = text.strip()
        try:
            pre, lpart = s.split("@l=")
            dpart, vpart = pre.split(".v")
            assert dpart.startswith("D{") and dpart.endswith("}")
            inner = dpart[2:-1]
            J = 0
            if inner:
                for tok in inner.split(","):
                    J |= 1 << (int(tok) - 1)
            return cls(int(lpart), J, int(vpart))
        except (ValueError, AssertionError) as exc:
            raise UsageError(f"bad basis vector text {text!r}") from exc

    @property
    def parity(self) -> int:
        return self.J.bit_count() & 1


class ModVec:
    """Sparse module vector; ``flipped`` is the global parity-change flag
    (coordinates and actions are untouched by it)."""

    __slots__ = ("params", "terms", "flipped")

    def __init__(self, params, terms=None, flipped=False):
        self.params = tuple(params)
        self.terms = {bv: c for bv, c in (terms or {}).items() if c}
        self.flipped = flipped

    @classmethod
    def basis(cls, params, bv: ModBasisVec, coeff=1):
        if not isinstance(coeff, Scalar):
            coeff = Scalar.const(params, coeff)
        return cls(params, {bv: coeff})

    def __add__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        if self.flipped != other.flipped:
            raise UsageError("cannot add vectors of opposite parity flag")
        out = dict(self.terms)
        for bv, c in other.terms.items():
            prev = out.get(bv)
            out[bv] = c if prev is None else prev + c
        return ModVec(self.params, out, self.flipped)

    def __neg__(self):
        return ModVec(self.params, {bv: -c for bv, c in self.terms.items()},
                      self.flipped)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        if not isinstance(coeff, Scalar):
            coeff = Scalar.const(self.params, coeff)
        return ModVec(self.params,
                      {bv: c * coeff for bv, c in self.terms.items()},
                      self.flipped)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        return (self.params == other.params and self.flipped == other.flipped
                and self.terms == other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for bv in sorted(self.terms):
            cs = str(self.terms[bv])
            if " + " in cs or "*" in cs or cs.endswith("i"):
                cs = f"({cs})"
            parts.append(bv.text() if cs == "1" else f"{cs}*{bv.text()}")
        body = " + ".join(parts)
        return f"PI[{body}]" if self.flipped else body

    def __repr__(self):
        return f"ModVec({self!s})"

    def weights(self):
        return sorted({bv.l for bv in self.terms})


def parity_change(v: ModVec) -> ModVec:
    """Same coordinates, opposite global parity flag (an involution)."""
    return ModVec(v.params, dict(v.terms), not v.flipped)


class TensorModule:
    """A weight module with the three action rules above.

    ``sector_delta`` (0 or 1) restricts the basis to the parity class
    ``(l + sum_{i in J}(1 - eps_i)) mod 2 == sector_delta``; for the
    all-ones twist the weight lattice is the even sublattice instead.
    """

    def __init__(self, cfg: EpsilonConfig, rep: SoRep, a: Scalar,
                 sector_delta: int | None = None, mutation: str | None = None):
        if cfg.N == 4:
            raise UsageError("tensor modules are not available for N=4")
        if not cfg.is_zero_one:
            raise UsageError("module twist vector must have 0/1 entries")
        if rep.N != cfg.N:
            raise UsageError(
                f"representation is for so_{rep.N}, twist vector has N={cfg.N}")
        if sector_delta not in (None, 0, 1):
            raise UsageError("sector_delta must be 0, 1, or omitted")
        if sector_delta is not None and cfg.is_ramond:
            raise UsageError("the all-ones twist has no sector split")
        self.cfg = cfg
        self.rep = rep
        if not isinstance(a, Scalar):
            a = Scalar.const(rep.params, a)
        if a.params != rep.params:
            raise UsageError("weight origin and representation use "
                             "different parameter lists")
        self.a = a
        self.params = a.params
        self.sector_delta = sector_delta
        self.mutation = mutation
        self._acfg = AlgebraConfig(cfg, central_enabled=False)
        self._one = Scalar.const(self.params, 1)
        self._memo: dict = {}

    # -- basis bookkeeping -------------------------------------------
    def in_lattice(self, bv: ModBasisVec) -> bool:
        if self.cfg.is_ramond:
            return bv.l % 2 == 0
        if self.sector_delta is not None:
            return (bv.l + self.cfg.shift_sum(bv.J)) % 2 == self.sector_delta
        return True

    def basis_at(self, l: int):
        out = []
        for J in range(1 << self.cfg.N):
            for r in range(self.rep.dim):
                bv = ModBasisVec(l, J, r)
                if self.in_lattice(bv):
                    out.append(bv)
        return sorted(out)

    def weight_shift(self, p: int, imask: int, is_d: bool = True) -> int:
        k = p - 1 if is_d else p
        return 2 * k + self.cfg.shift_sum(imask)

    # -- action ---------------------------------------------------------
    def act_function(self, k: int, imask: int, bv: ModBasisVec):
        """Monomial ``t^k xi_I`` on a basis vector -> (coeff_sign, bv) or None."""
        J = bv.J
        if imask & ~J:
            return None
        nI = imask.bit_count()
        rest = J & ~imask
        if self.mutation == "swap_tau":
            t = tau(rest, imask)
        else:
            t = tau(imask, rest)
        sign = -1 if (t + nI * (nI + 1) // 2) & 1 else 1
        newl = bv.l + 2 * k + self.cfg.shift_sum(imask)
        return sign, ModBasisVec(newl, rest, bv.r)

    def _scalar_for_plain(self, l: int, k: int) -> Scalar:
        # a + l + 2k + c k
        s = self.a + Scalar.const(self.params, l + 2 * k)
        if k:
            s = s + self.rep.z_scalar.scale_raw(k, 0)
        return s

    def act_basis_d(self, p: int, imask: int, bv: ModBasisVec) -> dict:
        """D-symbol with stored exponent ``p`` on a basis vector; returns
        a dict ModBasisVec -> Scalar."""
        key = (p, imask, bv)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        eps = self.cfg.eps
        J = bv.J
        nI = imask.bit_count()
        out: dict = {}
        if J == 0:
            k = p - 1
            if nI == 0:
                c = self._scalar_for_plain(bv.l, k)
                if c:
                    out[ModBasisVec(bv.l + 2 * k, 0, bv.r)] = c
            elif nI == 1:
                i = imask.bit_length()
                out[ModBasisVec(bv.l + 2 * k + 1 - eps[i - 1], imask, bv.r)] = \
                    self._one
            elif nI == 2:
                i, j = members(imask)
                mat = self.rep.gen[(i, j)]
                newl = bv.l + 2 * k + 2 - eps[i - 1] - eps[j - 1]
                for r2 in range(self.rep.dim):
                    c = mat[r2][bv.r]
                    if c:
                        out[ModBasisVec(newl, 0, r2)] = c
            # three or more xi factors act as zero on prefix-free vectors
        else:
            jbit = J & -J
            j1 = jbit.bit_length()
            if p == 1 and nI == 1:
                if not (J & imask) and imask < jbit:
                    # prepend: the definition of the prefix basis
                    i = imask.bit_length()
                    out[ModBasisVec(bv.l + 1 - eps[i - 1], J | imask, bv.r)] = \
                        self._one
                    self._memo[key] = out
                    return out
                if imask == jbit:
                    # odd square against its own leading factor:
                    # X = (1/2) [D, D] rest
                    i = j1
                    vec2 = ModBasisVec(bv.l - (1 - eps[i - 1]), J & ~jbit, bv.r)
                    c2, rk, rI, _ = bracket_ints(self._acfg, 1, imask, 1, imask)
                    if c2:
                        inner = self.act_basis_d(rk, rI, vec2)
                        for bv2, c in inner.items():
                            add = c.scale_raw(c2, 0, 4)
                            prev = out.get(bv2)
                            out[bv2] = add if prev is None else prev + add
                    out = {b: c for b, c in out.items() if c}
                    self._memo[key] = out
                    return out
            # general step: commute past the leading prefix factor
            vec2 = ModBasisVec(bv.l - (1 - eps[j1 - 1]), J & ~jbit, bv.r)
            c2, rk, rI, _ = bracket_ints(self._acfg, p, imask, 1, jbit)
            if c2:
                for bv2, c in self.act_basis_d(rk, rI, vec2).items():
                    add = c.scale_raw(c2, 0, 2)
                    prev = out.get(bv2)
                    out[bv2] = add if prev is None else prev + add
            neg = nI & 1
            inner = self.act_basis_d(p, imask, vec2)
            for bv2, c in inner.items():
                for bv3, c3 in self.act_basis_d(1, jbit, bv2).items():
                    add = c * c3
                    if neg:
                        add = -add
                    prev = out.get(bv3)
                    out[bv3] = add if prev is None else prev + add
        out = {b: c for b, c in out.items() if c}
        self._memo[key] = out
        return out

    def act(self, x: AlgebraElement, v: ModVec) -> ModVec:
        """Action of an algebra element (no central part) on a vector."""
        if x.has_central():
            raise UsageError("the central element does not act on tensor modules")
        out: dict = {}
        for (p, imask), cx in x.d_terms.items():
            for bv, cv in v.terms.items():
                c = cx * cv
                for bv2, c2 in self.act_basis_d(p, imask, bv).items():
                    add = c2 * c
                    prev = out.get(bv2)
                    out[bv2] = add if prev is None else prev + add
        for (k, imask), cx in x.a_terms.items():
            for bv, cv in v.terms.items():
                res = self.act_function(k, imask, bv)
                if res is None:
                    continue
                sign, bv2 = res
                add = cx * cv
                if sign < 0:
                    add = -add
                prev = out.get(bv2)
                out[bv2] = add if prev is None else prev + add
        return ModVec(self.params, out, v.flipped)

    def act_symbol(self, p: int, imask: int, v: ModVec, is_d=True) -> ModVec:
        x = (AlgebraElement.d_symbol(self.params, p, imask) if is_d
             else AlgebraElement.a_monomial(self.params, p, imask))
        return self.act(x, v)

    # -- evaluation at concrete parameters --------------------------------
    def eval_cache(self, assignment: dict) -> "EvaluatedAction":
        return EvaluatedAction(self, assignment)


class EvaluatedAction:
    """Action tables with all formal parameters evaluated.

    The hot representation is projective-integer: a vector is a dict
    ``basis -> (re, im)`` of Gaussian-integer pairs, exact up to the
    separately returned positive denominator.  Closure/rank sweeps drop
    the denominator (spans are scale-invariant); the intertwining checks
    keep it to cross-scale row pairs.
    """

    def __init__(self, module: TensorModule, assignment: dict):
        self.module = module
        self.assignment = dict(assignment)
        self._memo: dict = {}

    def table(self, p: int, imask: int, bv: ModBasisVec):
        """(den, ((bv2, (re, im)), ...)): the evaluated column of a
        D-symbol, with one shared denominator."""
        key = (p, imask, bv)
        hit = self._memo.get(key)
        if hit is None:
            pairs = []
            den = 1
            for bv2, c in self.module.act_basis_d(p, imask, bv).items():
                g = c.eval(self.assignment)
                if g:
                    d = _lcm(g.re.denominator, g.im.denominator)
                    den = _lcm(den, d)
                    pairs.append((bv2, g))
            hit = (den, tuple((bv2, (int(g.re * den), int(g.im * den)))
                              for bv2, g in pairs))
            self._memo[key] = hit
        return hit

    def act_d(self, p: int, imask: int, bv: ModBasisVec):
        den, pairs = self.table(p, imask, bv)
        return [(bv2, GaussRat(Fraction(r, den), Fraction(m, den)))
                for bv2, (r, m) in pairs]

    def act_a(self, k: int, imask: int, bv: ModBasisVec):
        res = self.module.act_function(k, imask, bv)
        if res is None:
            return []
        sign, bv2 = res
        return [(bv2, GaussRat(sign))]

    def act_vec(self, p: int, imask: int, vec: dict, is_d=True):
        """Integer-pair action; returns (den, dict) with the true image
        equal to dict/(den) relative to the input."""
        out: dict = {}
        if is_d:
            den = 1
            cols = {}
            for bv in vec:
                cols[bv] = self.table(p, imask, bv)
                den = _lcm(den, cols[bv][0])
            for bv, (r, m) in vec.items():
                d2, pairs = cols[bv]
                s = den // d2
                for bv2, (r2, m2) in pairs:
                    pr, pm = out.get(bv2, (0, 0))
                    out[bv2] = (pr + (r * r2 - m * m2) * s,
                                pm + (r * m2 + m * r2) * s)
        else:
            den = 1
            for bv, (r, m) in vec.items():
                res = self.module.act_function(p, imask, bv)
                if res is None:
                    continue
                sign, bv2 = res
                pr, pm = out.get(bv2, (0, 0))
                out[bv2] = (pr + sign * r, pm + sign * m)
        out = {bv: v for bv, v in out.items() if v != (0, 0)}
        return _qnorm(den, out)

    def eval_modvec(self, v: ModVec):
        """(den, dict of integer pairs) with true value dict/den."""
        gs = {}
        den = 1
        for bv, c in v.terms.items():
            g = c.eval(self.assignment)
            if g:
                den = _lcm(den, _lcm(g.re.denominator, g.im.denominator))
                gs[bv] = g
        return (den, {bv: (int(g.re * den), int(g.im * den))
                      for bv, g in gs.items()})


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


def _qnorm(den: int, terms: dict):
    """gcd-reduce an integer-pair vector against its denominator."""
    from math import gcd
    g = den
    for (r, m) in terms.values():
        g = gcd(g, gcd(r, m))
        if g == 1:
            return den, terms
    if g > 1:
        den //= g
        terms = {bv: (r // g, m // g) for bv, (r, m) in terms.items()}
    return den, terms


# ---------------------------------------------------------------------------
# construction from JSON-style config


def module_from_config(cfg: dict, params=("a", "b", "c")) -> TensorModule:
    params = tuple(params)
    alg = cfg.get("algebra") or {}
    if "N" not in alg or "eps" not in alg:
        raise UsageError("module config requires algebra.N and algebra.eps")
    eps_cfg = EpsilonConfig(int(alg["N"]), tuple(int(e) for e in alg["eps"]))
    if alg.get("central"):
        raise UsageError("tensor modules take the algebra without its "
                         "central element (field algebra.central)")
    rep = rep_from_config(cfg.get("rep") or {}, params)
    a = Scalar.parse(params, str(cfg.get("a", "a")))
    sector = cfg.get("sector_delta", None)
    if sector is not None:
        sector = int(sector)
    return TensorModule(eps_cfg, rep, a, sector,
                        mutation=cfg.get("mutation"))
