"""Finite-dimensional inputs for tensor modules: representations of the
orthogonal algebra so_N extended by a central scalar z.

A representation is stored through the images of the antisymmetric
generators ``F_ij = E_ji - E_ij`` (for ``i < j``), as dense Scalar
matrices acting on column index = basis index; ``z`` acts as the scalar
``z_scalar`` times the identity.

Two built-in families:

* ``build_so2(b, c)`` -- the one-dimensional so_2 family, ``F_12 -> (b)``;
* ``build_so3_vm(two_m, c)`` -- the ladder family on basis
  ``v_0 .. v_{2m}`` (``two_m = 2m``), fixed by

  - ``2i F_12 v_j = 2(m - j) v_j``,
  - ``(F_13 + i F_23) v_j = j v_{j-1}``          (lowering),
  - ``(-F_13 + i F_23) v_j = (2m - j) v_{j+1}``  (raising),

  with ``v_{-1} = v_{2m+1} = 0``.

Any user-supplied generator family is accepted for general ``N``;
:func:`check_so_relations` is the gatekeeper that the commutators match
``[F_ij, F_kl] = d_il F_kj + d_jk F_li + d_ik F_jl + d_jl F_ik``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import GaussRat, Scalar, UsageError
from .linalg import mat_add, mat_commutator, mat_eq, mat_scale, mat_sub, mat_zeros
from .report import Report, finish, violation


@dataclass
class SoRep:
    N: int
    dim: int
    gen: dict              # (i, j) with i < j  ->  dim x dim Scalar matrix
    z_scalar: Scalar
    params: tuple
    label: str = ""

    def generator(self, i: int, j: int):
        """Image of ``F_ij`` for any i != j (antisymmetric in i, j)."""
        if i == j or not (1 <= i <= self.N and 1 <= j <= self.N):
            raise UsageError(f"bad generator indices ({i}, {j})")
        if i < j:
            return self.gen[(i, j)]
        return mat_scale(self.gen[(j, i)], -1)


def _const(params, x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(params, x)
    return Scalar.const(params, x)


def build_so2(b, c, params=("a", "b", "c")) -> SoRep:
    """The 1-dimensional so_2 + Cz module: ``F_12 v = b v``, ``z v = c v``."""
    params = tuple(params)
    b = _const(params, b)
    c = _const(params, c)
    return SoRep(N=2, dim=1, gen={(1, 2): [[b]]}, z_scalar=c, params=params,
                 label=f"so2(b={b},c={c})")


def build_so3_vm(two_m: int, c, params=("a", "b", "c")) -> SoRep:
    """The (2m+1)-dimensional so_3 ladder module, ``two_m = 2m >= 0``."""
    if two_m < 0:
        raise UsageError("two_m must be a nonnegative integer")
    params = tuple(params)
    c = _const(params, c)
    dim = two_m + 1
    f12 = mat_zeros(params, dim)
    f13 = mat_zeros(params, dim)
    f23 = mat_zeros(params, dim)
    for j in range(dim):
        # F_12 = diag(-i(m - j)); ladder coefficients from solving the
        # two displayed combinations for F_13 and F_23
        f12[j][j] = Scalar.const(params, GaussRat(0, Fraction(-(two_m - 2 * j), 2)))
        if j > 0:
            f13[j - 1][j] = Scalar.const(params, Fraction(j, 2))
            f23[j - 1][j] = Scalar.const(params, GaussRat(0, Fraction(-j, 2)))
        if j < two_m:
            f13[j + 1][j] = Scalar.const(params, Fraction(-(two_m - j), 2))
            f23[j + 1][j] = Scalar.const(params, GaussRat(0, Fraction(-(two_m - j), 2)))
    return SoRep(N=3, dim=dim, gen={(1, 2): f12, (1, 3): f13, (2, 3): f23},
                 z_scalar=c, params=params, label=f"so3_Vm(2m={two_m},c={c})")


def so_structure_rhs(rep: SoRep, i: int, j: int, k: int, l: int):
    """Right side of ``[F_ij, F_kl]`` in terms of generator images."""
    out = mat_zeros(rep.params, rep.dim)
    for hit, p, q in ((i == l, k, j), (j == k, l, i),
                      (i == k, j, l), (j == l, i, k)):
        if hit and p != q:
            out = mat_add(out, rep.generator(p, q))
    return out


def check_so_relations(rep: SoRep) -> Report:
    """All commutator relations of so_N as exact matrix identities."""
    t0 = time.monotonic()
    pairs = sorted(rep.gen)
    bad = []
    n = 0
    for (i, j) in pairs:
        for (k, l) in pairs:
            n += 1
            lhs = mat_commutator(rep.generator(i, j), rep.generator(k, l))
            rhs = so_structure_rhs(rep, i, j, k, l)
            if not mat_eq(lhs, rhs):
                diff = mat_sub(lhs, rhs)
                bad.append(violation(
                    f"[F_{i}{j}, F_{k}{l}]",
                    lhs="; ".join(str(x) for row in lhs for x in row),
                    rhs="; ".join(str(x) for row in rhs for x in row),
                    diff="; ".join(str(x) for row in diff for x in row)))
    return finish(f"so_relations[{rep.label}]", bad, n, t0)


def rep_from_config(cfg: dict, params=("a", "b", "c")) -> SoRep:
    """Build a representation from its JSON-style config dict."""
    params = tuple(params)
    kind = cfg.get("kind")
    if kind == "so2":
        return build_so2(Scalar.parse(params, str(cfg.get("b", "b"))),
                         Scalar.parse(params, str(cfg.get("c", "c"))), params)
    if kind == "so3_Vm":
        if "two_m" not in cfg:
            raise UsageError("so3_Vm rep config requires field 'two_m'")
        return build_so3_vm(int(cfg["two_m"]),
                            Scalar.parse(params, str(cfg.get("c", "c"))), params)
    if kind == "matrices":
        gen_cfg = cfg.get("gen")
        if not gen_cfg:
            raise UsageError("matrices rep config requires field 'gen'")
        gen = {}
        N = int(cfg.get("N", 0))
        dim = None
        for key, rows in gen_cfg.items():
            i, j = (int(x) for x in key.split(","))
            mat = [[Scalar.parse(params, str(x)) for x in row] for row in rows]
            if dim is None:
                dim = len(mat)
            if len(mat) != dim or any(len(r) != dim for r in mat):
                raise UsageError(f"gen[{key}] is not {dim}x{dim}")
            gen[(i, j)] = mat
            N = max(N, i, j)
        rep = SoRep(N=N, dim=dim, gen=gen,
                    z_scalar=Scalar.parse(params, str(cfg.get("c", "c"))),
                    params=params, label="matrices")
        rel = check_so_relations(rep)
        if not rel.ok:
            raise UsageError(
                f"supplied matrices violate the so_{N} relations: "
                f"{rel.violations[0]['inputs']}")
        return rep
    raise UsageError(f"unknown rep kind {kind!r}")
