"""The verification engine: identity sweeps, window closures, simplicity
probes, annihilation-operator searches, and intertwining checks.

Every check returns a :class:`~superkon.report.Report`; violations are in
lexicographic input order so identical configurations produce identical
reports regardless of evaluation order or worker count.  Window results
are only trusted on the inner weight range; the inner margin must cover
the largest generator weight shift (see :func:`module_window`).

Closure and rank computations run over concrete Gaussian-rational
parameter values using fraction-free elimination; identity sweeps keep
all parameters symbolic.  The simplicity probe is evidence at window
scale, never a proof, and its report says so.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from multiprocessing import get_context

from .algebra import (AlgebraConfig, AlgebraElement, a_action, apply_d,
                      bracket, bracket_basis, bracket_ints, eps_shift_map,
                      filtration_exponent, in_ideal_i, in_k_ell, phi,
                      project_k0, tm1_power_d)
from .exactnum import GaussRat, Scalar, UsageError
from .grassmann import (EpsilonConfig, SuperFunction, contact_bracket,
                        format_monomial, members, xi_mul)
from .linalg import Echelon, mat_commutator, mat_eq, mat_sub, row_from_gaussrats
from .report import FAIL, INFO, PASS, Report, Window, finish, violation
from .submod import iso_check_map, iso_target, named_submodule
from .tables import N3_SUSPECT_LINES, compare_table, make_table
from .tensmod import ModBasisVec, ModVec, TensorModule


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get("SUPERKON_THREADS")
    if requested is None:
        requested = int(cap) if cap else 1
    if cap:
        requested = min(requested, int(cap))
    return max(1, min(requested, os.cpu_count() or 1))


def module_window(k_min: int, k_max: int, module_or_n, inner_width: int = 6) -> Window:
    """Window with inner margin covering the largest generator shift."""
    n = module_or_n if isinstance(module_or_n, int) else module_or_n.cfg.N
    margin = max(abs(2 * (k_min - 1)), abs(2 * (k_max - 1)), 2) + n
    half = (inner_width + 1) // 2
    return Window(k_min, k_max, -(margin + half), margin + half, margin)


def _parity(imask: int) -> int:
    return imask.bit_count() & 1


# ---------------------------------------------------------------------------
# Jacobi sweep (integer fast path)


def _jacobi_residual(acfg: AlgebraConfig, x, y, z):
    """4x the D-part and 24x the central part of the graded Jacobi sum."""
    terms: dict = {}
    cen = 0
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        sgn = -1 if (_parity(a[1]) and _parity(c[1])) else 1
        c2, rk, rI, _ = bracket_ints(acfg, b[0], b[1], c[0], c[1])
        if not c2:
            continue
        c3, rk2, rI2, cen12 = bracket_ints(acfg, a[0], a[1], rk, rI)
        if c3:
            key = (rk2, rI2)
            terms[key] = terms.get(key, 0) + sgn * c2 * c3
        if cen12:
            cen += sgn * c2 * cen12
    terms = {k: v for k, v in terms.items() if v}
    return terms, cen


def _jacobi_chunk(args):
    acfg, syms, start, stop = args
    bad = []
    n = 0
    total = len(syms)
    for i in range(start, stop):
        x = syms[i]
        for j in range(i, total):
            y = syms[j]
            for k in range(j, total):
                z = syms[k]
                n += 1
                terms, cen = _jacobi_residual(acfg, x, y, z)
                if terms or cen:
                    parts = [f"{v}/4*D[t^{rk},m={rI}]" for (rk, rI), v in sorted(terms.items())]
                    if cen:
                        parts.append(f"{cen}/24*C")
                    bad.append(violation(f"x={x} y={y} z={z}",
                                         lhs=" + ".join(parts), rhs="0",
                                         diff=" + ".join(parts)))
    return n, bad


def check_jacobi(acfg: AlgebraConfig, w: Window, workers: int | None = None) -> Report:
    """Graded Jacobi identity over all basis triples in the window
    (unordered: the Jacobi sum of homogeneous arguments changes only by a
    global sign under permutations)."""
    t0 = time.monotonic()
    syms = [(p, im) for p in w.k_values() for im in range(1 << acfg.cfg.N)]
    nw = worker_count(workers)
    label = (f"jacobi[N={acfg.cfg.N},eps={acfg.cfg.eps},"
             f"central={acfg.central_enabled}]")
    if nw <= 1:
        n, bad = _jacobi_chunk((acfg, syms, 0, len(syms)))
        return finish(label, bad, n, t0)
    # split the outer index so late chunks (smaller inner ranges) are wider
    bounds = [round(len(syms) * (1 - (1 - f / nw) ** (1 / 3)))
              for f in range(nw + 1)]
    bounds[-1] = len(syms)
    jobs = [(acfg, syms, bounds[i], bounds[i + 1]) for i in range(nw)
            if bounds[i] < bounds[i + 1]]
    with get_context("spawn").Pool(len(jobs)) as pool:
        results = pool.map(_jacobi_chunk, jobs)
    n = sum(r[0] for r in results)
    bad = [v for r in results for v in r[1]]
    return finish(label, bad, n, t0)


# ---------------------------------------------------------------------------


def check_bracket_crosscheck(acfg: AlgebraConfig, w: Window) -> Report:
    """Structure constants against the contact bracket through f <-> D_f.
    The central term is stripped on the structure-constant side."""
    t0 = time.monotonic()
    params = ()
    cfg = acfg.cfg
    stripped = AlgebraConfig(cfg, central_enabled=False, mutation=acfg.mutation)
    syms = [(p, im) for p in w.k_values() for im in range(1 << cfg.N)]
    bad = []
    n = 0
    for x in syms:
        fx = SuperFunction.monomial(params, *x)
        for y in syms:
            n += 1
            bb = bracket_basis(stripped, x, y, params)
            cb = contact_bracket(cfg, fx, SuperFunction.monomial(params, *y))
            if bb.d_terms != dict(cb.terms):
                bad.append(violation(
                    f"x={x} y={y}",
                    lhs=str(bb),
                    rhs=" + ".join(f"D[{format_monomial(*k)}]*({c})"
                                   for k, c in sorted(cb.terms.items())),
                    diff="structure constants disagree with the contact bracket"))
    return finish(f"bracket_crosscheck[N={cfg.N},eps={cfg.eps}]", bad, n, t0)


# ---------------------------------------------------------------------------


def _ext_symbols(module: TensorModule, w: Window):
    """D-symbols and function monomials with stored exponents in the window."""
    N = module.cfg.N
    d = [(p, im, True) for p in w.k_values() for im in range(1 << N)]
    a = [(k, im, False) for k in w.k_values() for im in range(1 << N)]
    return d + a


def check_module_axioms(module: TensorModule, w: Window) -> Report:
    """The bracket compatibility, associative function action, and mixed
    compatibility identities, fully symbolic in the parameters."""
    t0 = time.monotonic()
    params = module.params
    acfg = AlgebraConfig(module.cfg)
    syms = _ext_symbols(module, w)
    vecs = [bv for l in range(w.inner_l_min, w.inner_l_max + 1)
            for bv in module.basis_at(l)]
    bad = []
    n = 0

    def elem(p, im, is_d):
        return (AlgebraElement.d_symbol(params, p, im) if is_d
                else AlgebraElement.a_monomial(params, p, im))

    for i, (p1, i1, d1) in enumerate(syms):
        x = elem(p1, i1, d1)
        for (p2, i2, d2) in syms[i:]:
            y = elem(p2, i2, d2)
            br = bracket(acfg, x, y)
            sgn = -1 if (_parity(i1) and _parity(i2)) else 1
            for bv in vecs:
                n += 1
                v = ModVec.basis(params, bv)
                yv = module.act(y, v)
                xv = module.act(x, v)
                lhs = module.act(br, v)
                rhs = module.act(x, yv) - module.act(y, xv).scale(sgn)
                if not (lhs - rhs).is_zero():
                    bad.append(violation(
                        f"bracket x=({p1},{i1},{'D' if d1 else 'A'}) "
                        f"y=({p2},{i2},{'D' if d2 else 'A'}) v={bv.text()}",
                        lhs=str(lhs), rhs=str(rhs), diff=str(lhs - rhs)))
    # associative action of the function algebra
    monos = [(k, im) for k in w.k_values() for im in range(1 << module.cfg.N)]
    for (k1, i1) in monos:
        f = elem(k1, i1, False)
        for (k2, i2) in monos:
            g = elem(k2, i2, False)
            sm = xi_mul(i1, i2)
            for bv in vecs:
                n += 1
                v = ModVec.basis(params, bv)
                lhs = module.act(f, module.act(g, v))
                if sm is None:
                    rhs = ModVec(params, {})
                else:
                    sign, union = sm
                    fg = AlgebraElement.a_monomial(params, k1 + k2, union,
                                                   Scalar.const(params, sign))
                    rhs = module.act(fg, v)
                if not (lhs - rhs).is_zero():
                    bad.append(violation(
                        f"assoc f=({k1},{i1}) g=({k2},{i2}) v={bv.text()}",
                        lhs=str(lhs), rhs=str(rhs), diff=str(lhs - rhs)))
    return finish(f"module_axioms[N={module.cfg.N},eps={module.cfg.eps},"
                  f"rep={module.rep.label},sector={module.sector_delta}]",
                  bad, n, t0)


# ---------------------------------------------------------------------------
# closure and simplicity


@dataclass
class ClosureResult:
    dims: dict            # weight -> reached dimension
    full_dims: dict       # weight -> ambient dimension
    inner: tuple          # (inner_l_min, inner_l_max)
    spaces: dict = field(repr=False, default_factory=dict)

    def inner_weights(self):
        return [l for l in sorted(self.dims)
                if self.inner[0] <= l <= self.inner[1]]

    @property
    def inner_full(self) -> bool:
        ws = self.inner_weights()
        return bool(ws) and all(self.dims[l] == self.full_dims[l] for l in ws)

    def inner_dims(self):
        return {l: self.dims[l] for l in self.inner_weights()}


def closure(module: TensorModule, seeds, w: Window, params: dict,
            include_a: bool = False, early_full: bool = False,
            ev=None) -> ClosureResult:
    """Smallest windowed invariant subspace containing the seeds.

    Applies every window generator to the current spanning set, drops
    vectors outside the weight range, and row-reduces per weight space
    until stable.  Only inner-window dimensions are truncation-free.
    An EvaluatedAction cache may be shared across calls via ``ev``.
    """
    if not seeds:
        raise UsageError("closure requires at least one seed vector")
    if ev is None:
        ev = module.eval_cache(params)
    l_range = range(w.l_min, w.l_max + 1)
    cols = {l: {bv: i for i, bv in enumerate(module.basis_at(l))}
            for l in l_range}
    cols = {l: c for l, c in cols.items() if c}
    spaces = {l: Echelon(len(c)) for l, c in cols.items()}
    ops = sorted((p, im, True) for p in w.k_values()
                 for im in range(1 << module.cfg.N))
    if include_a:
        ops += sorted((k, im, False) for k in w.k_values()
                      for im in range(1 << module.cfg.N))

    def to_row(l, vec):
        row = [(0, 0)] * len(cols[l])
        for bv, rm in vec.items():
            row[cols[l][bv]] = rm
        return row

    def weight_of(vec):
        return next(iter(vec)).l if vec else None

    def insert(vec):
        l = weight_of(vec)
        if l is None or l not in spaces:
            return False
        return spaces[l].insert(to_row(l, vec)) == "new"

    work = []
    for s in seeds:
        vec = ev.eval_modvec(s)[1] if isinstance(s, ModVec) else dict(s)
        if insert(vec):
            work.append(vec)

    def full():
        return all(spaces[l].rank == len(cols[l])
                   for l in range(w.inner_l_min, w.inner_l_max + 1)
                   if l in cols)

    idx = 0
    while idx < len(work):
        vec = work[idx]
        idx += 1
        for (p, im, is_d) in ops:
            nv = ev.act_vec(p, im, vec, is_d)[1]
            if nv and insert(nv):
                work.append(nv)
                if early_full and full():
                    idx = len(work)
                    break
    dims = {l: spaces[l].rank for l in sorted(spaces)}
    fulls = {l: len(cols[l]) for l in sorted(cols)}
    return ClosureResult(dims, fulls, (w.inner_l_min, w.inner_l_max), spaces)


def closure_report(module, seeds, w, params, include_a=False) -> Report:
    t0 = time.monotonic()
    res = closure(module, seeds, w, params, include_a)
    details = {
        "inner_dims": {str(l): d for l, d in res.inner_dims().items()},
        "full_dims": {str(l): res.full_dims[l] for l in res.inner_weights()},
        "inner_full": res.inner_full,
    }
    return finish("closure", [], sum(res.dims.values()), t0, status=INFO,
                  details=details)


def window_simplicity(module: TensorModule, w: Window, params: dict,
                      middle: int = 2) -> Report:
    """Seed every basis vector of the middle weight spaces and close up.

    Verdict ``window-simple`` when every closure fills every inner weight
    space; this is window-scale evidence consistent with simplicity, not
    a proof of it.  Otherwise the smallest invariant subspace found is
    reported.
    """
    t0 = time.monotonic()
    mids = [l for l in range(w.inner_l_min, w.inner_l_max + 1)
            if module.basis_at(l)]
    center = (w.l_min + w.l_max) // 2
    mids.sort(key=lambda l: (abs(l - center), l))
    mids = sorted(mids[:max(1, middle)])
    seeds = [(bv.text(), ModVec.basis(module.params, bv))
             for l in mids for bv in module.basis_at(l)]
    # also seed the diagonalized table basis when one exists: invariant
    # subspaces typically contain those combinations, not raw vectors
    if module.cfg.N in (2, 3):
        table = make_table(module)
        for tl in range(min(mids) - 1, max(mids) + 2):
            for sym in table.syms_at_table_l(tl):
                if table.table_sym_weight(sym) in mids:
                    v = table.to_modvec(sym)
                    if not v.is_zero():
                        seeds.append((f"{sym.kind}[r={sym.r},l={sym.l}]", v))
    worst = None
    worst_seed = None
    n = 0
    ev = module.eval_cache(params)
    seen = set()
    for label, seed in seeds:
        key = frozenset((bv, str(c)) for bv, c in seed.terms.items())
        if key in seen:
            continue
        seen.add(key)
        n += 1
        res = closure(module, [seed], w, params, early_full=True, ev=ev)
        if not res.inner_full:
            size = sum(res.inner_dims().values())
            if worst is None or size < worst[0]:
                worst = (size, res)
                worst_seed = label
    details = {"seeds": len(seeds), "middle_weights": mids,
               "note": "window-scale evidence, not a proof of simplicity"}
    if worst is None:
        details["verdict"] = "window-simple"
    else:
        details["verdict"] = "proper-invariant-subspace"
        details["smallest_seed"] = worst_seed
        details["smallest_inner_dims"] = {str(l): d for l, d in
                                          worst[1].inner_dims().items()}
        details["full_dims"] = {str(l): worst[1].full_dims[l]
                                for l in worst[1].inner_weights()}
    return finish(f"window_simplicity[N={module.cfg.N},eps={module.cfg.eps},"
                  f"rep={module.rep.label}]", [], n, t0, status=INFO,
                  details=details)


def check_submodule_closure(module: TensorModule, name: str, w: Window,
                            params: dict) -> Report:
    """Every named-submodule generator stays inside the submodule's span
    under every window generator (membership by exact elimination)."""
    t0 = time.monotonic()
    ev = module.eval_cache(params)
    l_range = range(w.l_min, w.l_max + 1)
    gens = named_submodule(module, name, l_range)
    cols = {l: {bv: i for i, bv in enumerate(module.basis_at(l))}
            for l in l_range}
    spaces = {l: Echelon(len(c)) for l, c in cols.items() if c}
    buckets: dict = {}
    for g in gens:
        vec = ev.eval_modvec(g)[1]
        if not vec:
            continue
        l = next(iter(vec)).l
        if l not in spaces:
            continue
        row = [(0, 0)] * len(cols[l])
        for bv, rm in vec.items():
            row[cols[l][bv]] = rm
        spaces[l].insert(row)
        buckets.setdefault(l, []).append(vec)
    ops = sorted((p, im) for p in w.k_values()
                 for im in range(1 << module.cfg.N))
    bad = []
    n = 0
    for l in sorted(buckets):
        if not (w.inner_l_min <= l <= w.inner_l_max):
            continue
        for vi, vec in enumerate(buckets[l]):
            for (p, im) in ops:
                nv = ev.act_vec(p, im, vec)[1]
                if not nv:
                    continue
                l2 = next(iter(nv)).l
                if l2 not in spaces:
                    continue
                n += 1
                row = [(0, 0)] * len(cols[l2])
                for bv, rm in nv.items():
                    row[cols[l2][bv]] = rm
                if not spaces[l2].contains(row):
                    bad.append(violation(
                        f"gen[{l}][{vi}] under op=({p},{im})",
                        lhs="; ".join(f"({r}+{m}i)*{bv.text()}"
                                      for bv, (r, m) in sorted(nv.items())),
                        rhs=f"span of {name} at weight {l2}",
                        diff="image leaves the submodule span"))
    return finish(f"submodule_closure[{name}]", bad, n, t0)


# ---------------------------------------------------------------------------
# annihilation operators


def check_omega(module: TensorModule, m_max: int, w: Window,
                params: dict) -> Report:
    """Minimal order of the alternating-sum annihilation operators.

    For each index set, finds the least ``m <= m_max`` with
    ``sum_i (-1)^i binom(m,i) D[t^{k-i}, xi_I] D[t^{p+i}]`` killing every
    inner-window basis vector for all ``k, p`` in the window.  ``none``
    within the bound is reported as such (status info), not as a failure.
    """
    if m_max < 1:
        raise UsageError("m_max must be at least 1")
    t0 = time.monotonic()
    ev = module.eval_cache(params)
    vecs = [bv for l in range(w.inner_l_min, w.inner_l_max + 1)
            for bv in module.basis_at(l)]
    found = {}
    n = 0
    for imask in range(1 << module.cfg.N):
        minimal = None
        for m in range(1, m_max + 1):
            binom = [1]
            for i in range(m):
                binom.append(binom[-1] * (m - i) // (i + 1))
            ok = True
            for k in w.k_values():
                for p in w.k_values():
                    for bv in vecs:
                        n += 1
                        acc: dict = {}
                        for i in range(m + 1):
                            coeff = GaussRat(binom[i] if i % 2 == 0 else -binom[i])
                            inner = ev.act_d(p + i, 0, bv)
                            for bv2, g2 in inner:
                                for bv3, g3 in ev.act_d(k - i, imask, bv2):
                                    add = g2 * g3 * coeff
                                    prev = acc.get(bv3)
                                    s = add if prev is None else prev + add
                                    acc[bv3] = s
                        if any(acc.values()):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                minimal = m
                break
        found[imask] = minimal
    details = {"minimal_m": {format_monomial(0, im) if im else "1": v
                             for im, v in sorted(found.items())},
               "m_max": m_max}
    missing = [im for im, v in found.items() if v is None]
    status = INFO
    details["all_found"] = not missing
    return finish(f"omega[N={module.cfg.N},eps={module.cfg.eps},"
                  f"rep={module.rep.label}]", [], n, t0, status=status,
                  details=details)


# ---------------------------------------------------------------------------
# filtration, automorphism, projection


def _filtration_gens(acfg: AlgebraConfig, ell: int, i_max: int):
    params = ()
    out = []
    for im in range(1 << acfg.cfg.N):
        e = filtration_exponent(ell, im.bit_count(), acfg.mutation)
        for i in range(0, i_max + 1):
            out.append(tm1_power_d(params, e, i, im))
    return out


def _ideal_gens(acfg: AlgebraConfig, i_max: int):
    params = ()
    need = {0: 2, 1: 1, 2: 1}
    out = []
    for im in range(1 << acfg.cfg.N):
        e = need.get(im.bit_count(), 0)
        for i in range(0, i_max + 1):
            out.append(tm1_power_d(params, e, i, im))
    return out


def check_filtration(acfg: AlgebraConfig, ell_max: int, w: Window) -> Report:
    """Subalgebra, ideal, and step properties of the (t-1)-adic pieces,
    on spanning generators with nonnegative exponents."""
    if ell_max < 1:
        raise UsageError("ell_max must be at least 1")
    t0 = time.monotonic()
    i_max = max(1, w.k_max)
    bad = []
    n = 0
    g0 = _filtration_gens(acfg, 0, i_max)
    g1 = _filtration_gens(acfg, 1, i_max)
    cases = [("[K0,K0] in K0", g0, g0, lambda x: in_k_ell(acfg, x, 0))]
    for ell in range(0, ell_max + 1):
        gl = _filtration_gens(acfg, ell, i_max)
        cases.append((f"[K1,K{ell}] in K{ell + 1}", g1, gl,
                      lambda x, e=ell: in_k_ell(acfg, x, e + 1)))
        if ell >= 1:
            cases.append((f"[K0,K{ell}] in K{ell}", g0, gl,
                          lambda x, e=ell: in_k_ell(acfg, x, e)))
    gi = _ideal_gens(acfg, i_max)
    cases.append(("[K0,ideal] in ideal", g0, gi,
                  lambda x: in_ideal_i(acfg, x)))
    for label, xs, ys, member in cases:
        for xi, x in enumerate(xs):
            for yi, y in enumerate(ys):
                n += 1
                br = bracket(acfg, x, y)
                if not member(br):
                    bad.append(violation(
                        f"{label} x#{xi:03d} y#{yi:03d}",
                        lhs=str(br), rhs=label,
                        diff="bracket leaves the target piece"))
    return finish(f"filtration[N={acfg.cfg.N},eps={acfg.cfg.eps}]", bad, n, t0)


def check_phi(acfg: AlgebraConfig, w: Window) -> Report:
    """The degree-shift automorphism respects brackets on all basis pairs
    (including mixed operator/function pairs)."""
    t0 = time.monotonic()
    params = ()
    N = acfg.cfg.N
    stripped = AlgebraConfig(acfg.cfg, central_enabled=False,
                             mutation=acfg.mutation)
    elems = [AlgebraElement.d_symbol(params, p, im)
             for p in w.k_values() for im in range(1 << N)]
    elems += [AlgebraElement.a_monomial(params, k, im)
              for k in w.k_values() for im in range(1 << N)]
    bad = []
    n = 0
    for i, x in enumerate(elems):
        px = phi(stripped, x)
        for y in elems[i:]:
            n += 1
            lhs = phi(stripped, bracket(stripped, x, y))
            rhs = bracket(stripped, px, phi(stripped, y))
            if not (lhs - rhs).is_zero():
                bad.append(violation(f"x={x} y={y}", lhs=str(lhs),
                                     rhs=str(rhs), diff=str(lhs - rhs)))
    return finish(f"phi[N={N},eps={acfg.cfg.eps}]", bad, n, t0)


def check_projection(acfg: AlgebraConfig, w: Window) -> Report:
    """The degree-zero projection is a bracket homomorphism onto the
    center-plus-orthogonal target, with the displayed basis images."""
    t0 = time.monotonic()
    params = ()
    N = acfg.cfg.N
    i_max = max(1, w.k_max)
    gens = _filtration_gens(acfg, 0, i_max)
    bad = []
    n = 0
    # displayed images
    zmap, zm = project_k0(acfg, AlgebraElement.d_symbol(params, 1, 0)
                          - AlgebraElement.d_symbol(params, 0, 0))
    n += 1
    if zmap != Scalar.const(params, 1) or any(x for row in zm for x in row):
        bad.append(violation("image of D[t]-D[1]", lhs=str(zmap), rhs="1"))
    for idx_i in range(1, N + 1):
        for idx_j in range(idx_i + 1, N + 1):
            n += 1
            im = (1 << (idx_i - 1)) | (1 << (idx_j - 1))
            z2, m2 = project_k0(acfg, AlgebraElement.d_symbol(params, 1, im))
            ok = z2.is_zero()
            one = Scalar.const(params, 1)
            for rr in range(N):
                for cc in range(N):
                    want = (one if (rr, cc) == (idx_j - 1, idx_i - 1)
                            else (-one if (rr, cc) == (idx_i - 1, idx_j - 1)
                                  else Scalar.zero(params)))
                    ok = ok and m2[rr][cc] == want
            if not ok:
                bad.append(violation(f"image of D[t,xi{{{idx_i},{idx_j}}}]",
                                     lhs=str(m2), rhs="E_ji - E_ij"))
    for xi, x in enumerate(gens):
        zx, mx = project_k0(acfg, x)
        for yi, y in enumerate(gens):
            n += 1
            zy, my = project_k0(acfg, y)
            zb, mb = project_k0(acfg, bracket(acfg, x, y))
            comm = mat_commutator(mx, my)
            if not (zb.is_zero() and mat_eq(mb, comm)):
                bad.append(violation(
                    f"homomorphism x#{xi:03d} y#{yi:03d}",
                    lhs=f"z={zb}; " + "; ".join(str(e) for row in mb for e in row),
                    rhs="z=0; " + "; ".join(str(e) for row in comm for e in row),
                    diff="projection of bracket disagrees with commutator"))
    return finish(f"projection[N={N},eps={acfg.cfg.eps}]", bad, n, t0)


def check_eps_shift(src: EpsilonConfig, dst: EpsilonConfig, w: Window) -> Report:
    """The exponent relabeling between twist vectors with even difference
    is a bracket homomorphism on all window pairs."""
    t0 = time.monotonic()
    params = ()
    csrc = AlgebraConfig(src)
    cdst = AlgebraConfig(dst)
    elems = [AlgebraElement.d_symbol(params, p, im)
             for p in w.k_values() for im in range(1 << src.N)]
    elems += [AlgebraElement.a_monomial(params, k, im)
              for k in w.k_values() for im in range(1 << src.N)]
    bad = []
    n = 0
    for i, x in enumerate(elems):
        for y in elems[i:]:
            n += 1
            lhs = eps_shift_map(src, dst, bracket(csrc, x, y))
            rhs = bracket(cdst, eps_shift_map(src, dst, x),
                          eps_shift_map(src, dst, y))
            if not (lhs - rhs).is_zero():
                bad.append(violation(f"x={x} y={y}", lhs=str(lhs),
                                     rhs=str(rhs), diff=str(lhs - rhs)))
    return finish(f"eps_shift[{src.eps}->{dst.eps}]", bad, n, t0)


def check_table_agreement(module: TensorModule, w: Window,
                          table_l_range=None) -> Report:
    """Generic action against the explicit table, line by line.  Any
    discrepancy is logged with the generic value (the source of truth);
    failure is declared only for discrepancies outside the known-mangled
    line set."""
    t0 = time.monotonic()
    table = make_table(module)
    if table_l_range is None:
        table_l_range = range(-1, 2)
    disc, n = compare_table(module, table, w.k_values(), table_l_range)
    bad = []
    logged = []
    for d in disc:
        entry = violation(d["inputs"], lhs=d["table"], rhs=d["generic"],
                          diff=f"line {d['line']}: table disagrees; "
                               "generic value is authoritative")
        if d["line"] in N3_SUSPECT_LINES:
            logged.append(entry)
        else:
            bad.append(entry)
    details = {"logged_known_mangled_lines": logged} if logged else {}
    return finish(f"table_agreement[N={module.cfg.N},eps={module.cfg.eps},"
                  f"rep={module.rep.label}]", bad, n, t0, details=details)
