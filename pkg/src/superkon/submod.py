"""Named submodules of the N=2 and N=3 tensor modules, and the
intertwining-map checks between modules (sector shift, quotient maps,
and the identity control).

Submodule generators are returned as explicit vectors per weight; the
displayed spans:

* N=2, both sectors, ``b^2 + c^2 = 0``:
  ``W+ = span{ v+_l, (1/2)(a+2l) v_l - i w_l }`` (untwisted weights),
  ``W+ = span{ v+_l, (a+l) v_l - 2i w_l }`` (twisted weights), and the
  mirrored ``W-`` with the opposite imaginary sign;
* N=2 twisted, ``a=1, b=c=0``, sector 0: the single vector ``w_{-1}``;
* N=3, ``c = -m < 0``: the span of the four families u-bold, ubar-bold
  (r = 0..2m) and v-bold, w-bold (r = 0..2m+2), with out-of-range
  representation indices contributing zero.

The quotient isomorphism checks are seeded from the displayed generator
images and propagated: each new relation ``pair = (source mod submodule,
image)`` is inserted into a pivot-limited echelon, so an inconsistent
image (or a submodule vector with a nonzero image) surfaces as a
violation.  One display is corrected here: the untwisted quotient image
of ``v-_l`` must be ``-(a+2l) v_l + 2i w_l`` (twice the W+ generator);
the printed ``-2(a+2l) v_l + 2i w_l`` fails the plain-series
intertwining identically in ``k``.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .exactnum import GaussRat, Scalar, UsageError
from .grassmann import EpsilonConfig
from .linalg import Echelon, row_from_gaussrats
from .repn import build_so2, build_so3_vm
from .report import Report, Window, finish, violation
from .tables import N2Table, N3Table, TableVec, make_table
from .tensmod import ModBasisVec, ModVec, TensorModule

I_ = GaussRat(0, 1)


def _table_pick(table, kind, r, table_l) -> ModVec:
    return table.to_modvec(TableVec(kind, r, table_l))


def named_submodule(module: TensorModule, name: str, l_range) -> list:
    """Generating vectors of a named submodule, for weights in l_range."""
    if name == "Cw_minus1":
        _require(module.cfg.eps == (1, 0), "Cw_minus1 lives in the N=2 twisted sector")
        _require(module.sector_delta == 0, "Cw_minus1 lives in sector 0")
        _require(module.a == Scalar.const(module.params, 1), "Cw_minus1 requires a = 1")
        b = module.rep.gen[(1, 2)][0][0]
        _require(b.is_zero() and module.rep.z_scalar.is_zero(),
                 "Cw_minus1 requires b = c = 0")
        return [ModVec.basis(module.params, ModBasisVec(-1, 3, 0))]

    if name in ("W_plus", "W_minus"):
        _require(module.cfg.N == 2, f"{name} is an N=2 submodule")
        table = N2Table(module)
        sign = 1 if name == "W_plus" else -1
        kind = "vp" if sign > 0 else "vm"
        out = []
        for lam in l_range:
            for sym in table.syms_at_table_l(0):
                pass  # only need the lattice step below
            if table.twisted:
                tl = lam
                gens = [
                    _table_pick(table, kind, 0, tl),
                    _table_pick(table, "v", 0, tl).scale(
                        module.a + Scalar.const(module.params, lam))
                    + _table_pick(table, "w", 0, tl).scale(
                        Scalar.const(module.params, GaussRat(0, -2 * sign))),
                ]
            else:
                if lam % 2:
                    continue
                tl = lam // 2
                gens = [
                    _table_pick(table, kind, 0, tl),
                    _table_pick(table, "v", 0, tl).scale(
                        (module.a + Scalar.const(module.params, lam)).scale_raw(1, 0, 2))
                    + _table_pick(table, "w", 0, tl).scale(
                        Scalar.const(module.params, GaussRat(0, -sign))),
                ]
            out.extend(g for g in gens if not g.is_zero())
        return out

    if name == "F_prime":
        _require(module.cfg.N == 3, "F_prime is an N=3 submodule")
        table = N3Table(module)
        two_m = table.two_m
        _require(two_m > 0, "F_prime requires a nontrivial representation")
        c = module.rep.z_scalar
        _require(c == Scalar.const(module.params, Fraction(-two_m, 2)),
                 "F_prime requires the central scalar to equal minus the "
                 "representation spin")
        sh = table.sh
        a = module.a
        out = []

        def csum(l):
            # a + 2l + c(1 - e)
            return a + Scalar.const(module.params, 2 * l) + c.scale_raw(sh, 0)

        for lam in l_range:
            # family at even offsets: u-bold, w-bold; at shifted offsets:
            # ubar-bold, v-bold
            if lam % 2 == 0:
                tl = lam // 2
                for r in range(two_m + 1):
                    g = _table_pick(table, "u", r, tl).scale(
                        Scalar.const(module.params, two_m + 1 - r)) \
                        + _table_pick(table, "v", r, tl).scale(
                            csum(tl).scale_raw(0, two_m + 1 - r, 2)) \
                        + _table_pick(table, "wm", r - 1, tl).scale(
                            Scalar.const(module.params, GaussRat(0, r)))
                    if not g.is_zero():
                        out.append(g)
                for r in range(two_m + 3):
                    g = _table_pick(table, "wp", r, tl).scale(
                        Scalar.const(module.params,
                                     (two_m - r + 2) * (two_m - r + 1))) \
                        + _table_pick(table, "v", r - 1, tl).scale(
                            csum(tl) * Scalar.const(module.params,
                                                    -r * (two_m - r + 2))) \
                        + _table_pick(table, "wm", r - 2, tl).scale(
                            Scalar.const(module.params, -r * (r - 1)))
                    if not g.is_zero():
                        out.append(g)
            if (lam - sh) % 2 == 0:
                tl = (lam - sh) // 2
                for r in range(two_m + 1):
                    g = _table_pick(table, "ub", r, tl).scale(
                        Scalar.const(module.params, two_m + 1 - r)) \
                        + _table_pick(table, "w", r, tl).scale(
                            csum(tl).scale_raw(0, two_m + 1 - r, 2)) \
                        + _table_pick(table, "vm", r - 1, tl).scale(
                            csum(tl).scale_raw(0, r, 2))
                    if not g.is_zero():
                        out.append(g)
                for r in range(two_m + 3):
                    g = _table_pick(table, "vp", r, tl).scale(
                        Scalar.const(module.params,
                                     (two_m - r + 2) * (two_m - r + 1))) \
                        + _table_pick(table, "w", r - 1, tl).scale(
                            Scalar.const(module.params, -2 * r * (two_m - r + 2))) \
                        + _table_pick(table, "vm", r - 2, tl).scale(
                            Scalar.const(module.params, -r * (r - 1)))
                    if not g.is_zero():
                        out.append(g)
        return out

    raise UsageError(f"unknown submodule name {name!r}")


def _require(cond, msg):
    if not cond:
        raise UsageError(msg)


# ---------------------------------------------------------------------------
# intertwining maps

ISO_NAMES = ("sector_shift", "identity", "quotient_wplus", "quotient_wminus",
             "quotient_fprime")


def iso_target(source: TensorModule, name: str) -> TensorModule:
    """The canonical target module for a named map."""
    params = source.params
    one = Scalar.const(params, 1)
    if name == "sector_shift":
        _require(source.sector_delta == 1, "sector_shift starts in sector 1")
        return TensorModule(source.cfg, source.rep, source.a + one, 0)
    if name == "identity":
        return source
    if name in ("quotient_wplus", "quotient_wminus"):
        _require(source.cfg.N == 2, f"{name} is an N=2 map")
        c = source.rep.z_scalar
        b = source.rep.gen[(1, 2)][0][0]
        sign = 1 if name == "quotient_wplus" else -1
        want_b = (c.scale_raw(0, sign) if True else c)
        _require(b == c.scale_raw(0, sign),
                 "the quotient map requires b = i c (resp. b = -i c)")
        c2 = c + one
        rep2 = build_so2(c2.scale_raw(0, sign), c2, params)
        return TensorModule(source.cfg, rep2, source.a, source.sector_delta)
    if name == "quotient_fprime":
        _require(source.cfg.N == 3, "quotient_fprime is an N=3 map")
        two_m = source.rep.dim - 1
        _require(two_m >= 1, "quotient_fprime requires spin at least 1/2")
        _require(source.rep.z_scalar ==
                 Scalar.const(params, Fraction(-two_m, 2)),
                 "quotient_fprime requires the central scalar -m")
        sh = 1 - source.cfg.eps[0]
        rep2 = build_so3_vm(two_m - 2 if two_m >= 2 else 0,
                            Scalar.const(params, Fraction(-(two_m - 2), 2)),
                            params)
        return TensorModule(source.cfg, rep2,
                            source.a + Scalar.const(params, sh),
                            source.sector_delta)
    raise UsageError(f"unknown map name {name!r}")


def iso_check_map(source: TensorModule, name: str, w: Window,
                  params: dict | None = None,
                  target: TensorModule | None = None) -> Report:
    """Verify the intertwining relation of a named map over a window.

    Total maps (sector_shift, identity) are checked symbolically key by
    key.  Quotient maps need a concrete parameter assignment: the
    displayed seed images are propagated through every window generator
    and each relation is inserted into a pivot-limited echelon, so any
    inconsistency is reported with its witness.
    """
    t0 = time.monotonic()
    if name not in ISO_NAMES:
        raise UsageError(f"unknown map name {name!r}; pick from {ISO_NAMES}")
    if target is None:
        target = iso_target(source, name)
    if name in ("sector_shift", "identity"):
        return _check_total_map(source, target, name, w, t0)
    if params is None:
        raise UsageError(f"{name} needs a concrete parameter assignment")
    return _check_quotient_map(source, target, name, w, params, t0)


def _check_total_map(source, target, name, w, t0):
    shift = 1 if name == "sector_shift" else 0
    bad = []
    n = 0
    params = source.params
    ops = [(p, im, True) for p in range(w.k_min + 1, w.k_max + 2)
           for im in range(1 << source.cfg.N)]
    ops += [(k, im, False) for k in w.k_values()
            for im in range(1 << source.cfg.N)]

    def tmap(v: ModVec) -> ModVec:
        return ModVec(target.params,
                      {ModBasisVec(bv.l - shift, bv.J, bv.r): c
                       for bv, c in v.terms.items()}, v.flipped)

    for l in range(w.inner_l_min, w.inner_l_max + 1):
        for bv in source.basis_at(l):
            v = ModVec.basis(params, bv)
            for (p, im, is_d) in ops:
                n += 1
                lhs = tmap(source.act_symbol(p, im, v, is_d))
                rhs = target.act_symbol(p, im, tmap(v), is_d)
                if not (lhs - rhs).is_zero():
                    bad.append(violation(
                        f"op=({p},{im},{'D' if is_d else 'A'}) v={bv.text()}",
                        lhs=str(lhs), rhs=str(rhs), diff=str(lhs - rhs)))
    return finish(f"iso[{name}]", bad, n, t0)


def _quotient_seeds(source, target, name, l_range):
    """(source ModVec, target ModVec) seed pairs for a quotient map."""
    params = source.params
    if name in ("quotient_wplus", "quotient_wminus"):
        st = N2Table(source)
        tt = N2Table(target)
        sign = 1 if name == "quotient_wplus" else -1
        like = "vp" if sign > 0 else "vm"
        opp = "vm" if sign > 0 else "vp"
        seeds = []
        for lam in l_range:
            if lam % 2:
                continue
            tl = lam // 2
            seeds.append((_table_pick(st, "v", 0, tl),
                          _table_pick(tt, like, 0, tl)))
            # corrected image: -(a+2l) v + 2i*sign * w in the target
            img = _table_pick(tt, "v", 0, tl).scale(
                -(source.a + Scalar.const(params, lam))) \
                + _table_pick(tt, "w", 0, tl).scale(
                    Scalar.const(params, GaussRat(0, 2 * sign)))
            seeds.append((_table_pick(st, opp, 0, tl), img))
        return seeds
    if name == "quotient_fprime":
        st = N3Table(source)
        tt = N3Table(target)
        sh = st.sh
        seeds = []
        for lam in l_range:
            if lam % 2:
                continue
            tl = lam // 2
            # v_{0,l} -> v+_{0, l - sh} at the same actual weight
            seeds.append((_table_pick(st, "v", 0, tl),
                          _table_pick(tt, "vp", 0, tl - sh)))
        return [(s, t) for s, t in seeds if not s.is_zero()]
    raise UsageError(name)


def _check_quotient_map(source, target, name, w, params, t0):
    src_eval = source.eval_cache(params)
    tgt_eval = target.eval_cache(params)
    l_range = range(w.l_min, w.l_max + 1)
    sub_name = {"quotient_wplus": "W_plus", "quotient_wminus": "W_minus",
                "quotient_fprime": "F_prime"}[name]
    subgens = named_submodule(source, sub_name, l_range)
    shift = _weight_offset(source, target)

    scols = {l: {bv: i for i, bv in enumerate(source.basis_at(l))}
             for l in l_range}
    tcols = {l: {bv: i for i, bv in enumerate(target.basis_at(l - shift))}
             for l in l_range}
    spaces = {l: Echelon(len(scols[l]) + len(tcols[l]),
                         pivot_limit=len(scols[l])) for l in l_range}

    def weight_of(vec: dict):
        ws = {bv.l for bv in vec}
        if len(ws) > 1:
            raise UsageError("intertwining rows must be weight-homogeneous")
        return ws.pop() if ws else None

    def pair_row(l, svec, tvec):
        row = [(0, 0)] * (len(scols[l]) + len(tcols[l]))
        base = len(scols[l])
        for bv, rm in svec.items():
            row[scols[l][bv]] = rm
        for bv, rm in tvec.items():
            row[base + tcols[l][bv]] = rm
        return row

    def cross(sd, sv, td, tv):
        # true pair (sv/sd, tv/td); projectively store (sv*td, tv*sd)
        from math import gcd
        a = {bv: (r * td, m * td) for bv, (r, m) in sv.items()}
        b = {bv: (r * sd, m * sd) for bv, (r, m) in tv.items()}
        g = 0
        for (r, m) in list(a.values()) + list(b.values()):
            g = gcd(g, gcd(r, m))
            if g == 1:
                return a, b
        if g > 1:
            a = {bv: (r // g, m // g) for bv, (r, m) in a.items()}
            b = {bv: (r // g, m // g) for bv, (r, m) in b.items()}
        return a, b

    bad = []
    n = 0
    work = []
    for g in subgens:
        vec = src_eval.eval_modvec(g)[1]
        l = weight_of(vec)
        if l is None or l not in spaces:
            continue
        spaces[l].insert(pair_row(l, vec, {}))
    for s, t in _quotient_seeds(source, target, name, l_range):
        sd, sv = src_eval.eval_modvec(s)
        td, tv = tgt_eval.eval_modvec(t)
        sv, tv = cross(sd, sv, td, tv)
        l = weight_of(sv)
        if l is None or l not in spaces:
            continue
        if spaces[l].insert(pair_row(l, sv, tv)) == "new":
            work.append((l, sv, tv))
    ops = sorted((p, im) for p in range(w.k_min + 1, w.k_max + 2)
                 for im in range(1 << source.cfg.N))
    idx = 0
    while idx < len(work):
        l, sv, tv = work[idx]
        idx += 1
        for (p, im) in ops:
            d2, sv2 = src_eval.act_vec(p, im, sv)
            e2, tv2 = tgt_eval.act_vec(p, im, tv)
            sv2, tv2 = cross(d2, sv2, e2, tv2)
            l2 = weight_of(sv2)
            if l2 is None:
                if tv2:
                    l2s = weight_of(tv2) + shift
                    if l2s in spaces:
                        n += 1
                        res = spaces[l2s].insert(pair_row(l2s, {}, tv2))
                        if res == "inconsistent":
                            bad.append(violation(
                                f"op=({p},{im}) from weight {l}",
                                lhs="0", rhs=_fmt_vec(tv2),
                                diff="zero class maps to a nonzero image"))
                continue
            if l2 not in spaces:
                continue
            n += 1
            res = spaces[l2].insert(pair_row(l2, sv2, tv2))
            if res == "inconsistent":
                bad.append(violation(
                    f"op=({p},{im}) from weight {l}",
                    lhs=_fmt_vec(sv2), rhs=_fmt_vec(tv2),
                    diff="image conflicts with previously derived relations"))
            elif res == "new":
                work.append((l2, sv2, tv2))
    details = {"relations_derived": len(work)}
    return finish(f"iso[{name}]", bad, n, t0, details=details)


def _weight_offset(source, target) -> int:
    diff = target.a - source.a
    if diff.is_zero():
        return 0
    try:
        g = diff.as_gaussrat()
    except UsageError:
        raise UsageError("weight origins must differ by an integer")
    if g.im or g.re.denominator != 1:
        raise UsageError("weight origins must differ by an integer")
    return int(g.re)


def _fmt_vec(vec: dict) -> str:
    return " + ".join(f"({r}{m:+}i)*{bv.text()}"
                      for bv, (r, m) in sorted(vec.items()))
