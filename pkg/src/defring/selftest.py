"""Built-in consistency checks runnable from the CLI and the service.

These are fast internal cross-checks (symbolic worked example, exhaustive
bound sweep, a small two-oracle equivalence corpus, fibre enumeration
against the conjugation-orbit oracle); the full regression corpus lives in
the test-suite.
"""

from __future__ import annotations

from itertools import product
from typing import Dict

from . import dimension, ffalg, genmatrix, gmodules, pseudochar
from .ffalg import Field


def _check_example35() -> Dict[str, object]:
    rep = genmatrix.verify_example_3_5()
    return {"ok": bool(rep["ok"]), "detail": "symbolic worked example"}


def _check_bound_sweep() -> Dict[str, object]:
    count = 0
    for d in range(1, 7):
        for n in range(1, 6):
            for pd in dimension.partition_structures(d, n):
                assert pd.l_P + 2 * pd.n_P == d * d
                dimension.codim_gap(pd)  # raises on violation
                count += 1
            pmin = dimension.partition_stats(d, n, (d,), ((0,),))
            assert dimension.bound_ZP(pmin) == d * d + d * d * n
    return {"ok": True, "detail": f"{count} partition structures swept"}


def _check_brauer_nesbitt() -> Dict[str, object]:
    F = Field(2)
    mats = [m for m in (tuple(tuple(row) for row in cand)
                        for cand in product(product(range(2), repeat=2), repeat=2))
            if ffalg.det(F, m) != 0]
    pairs = 0
    for a in mats:
        for b in mats:
            eq = pseudochar.pseudo_equal(F, (a,), (b,))
            ss_a = gmodules.semisimplify_tuple(F, (a,)).block_tuple
            ss_b = gmodules.semisimplify_tuple(F, (b,)).block_tuple
            iso = gmodules.find_isomorphism(F, ss_a, ss_b) is not None
            if eq != iso:
                return {"ok": False,
                        "detail": f"disagreement on {a} vs {b}: {eq} vs {iso}"}
            pairs += 1
    return {"ok": True, "detail": f"{pairs} pairs of GL2(GF(2)) elements agree"}


def _check_fibre() -> Dict[str, object]:
    F3 = Field(3)
    target = ((0, 1), (2, 0))
    enum = genmatrix.fibre_enumerate(F3, 2, (target,))
    # conjugation-orbit oracle: the matched set must be the GL_2 orbit
    orbit = set()
    for rows in product(product(range(3), repeat=2), repeat=2):
        g = tuple(tuple(r) for r in rows)
        if ffalg.det(F3, g) != 0:
            orbit.add(ffalg.mat_mul(F3, ffalg.mat_mul(F3, g, target),
                                    ffalg.mat_inv(F3, g)))
    matched = {p[0] for p in enum.points}
    if matched != orbit:
        return {"ok": False,
                "detail": f"enumerated {len(matched)} points, orbit has {len(orbit)}"}
    bound = dimension.bound_fibre((2,), 0, (1,))
    if any(t > bound for t in enum.tangent_dims):
        return {"ok": False, "detail": "tangent dimension above bound"}
    trivial = genmatrix.fibre_enumerate(Field(3), 1, (((1,),),))
    if trivial.count != 1:
        return {"ok": False, "detail": "trivial 1-dim fibre is not a single point"}
    return {"ok": True,
            "detail": f"fibre = conjugation orbit with {enum.count} points, "
                      f"tangent dims {sorted(set(enum.tangent_dims))}"}


def run_selftest() -> Dict[str, object]:
    checks = {
        "example35": _check_example35,
        "bound_sweep": _check_bound_sweep,
        "brauer_nesbitt": _check_brauer_nesbitt,
        "fibre_enumeration": _check_fibre,
    }
    results = {}
    ok = True
    for name, fn in checks.items():
        try:
            res = fn()
        except Exception as exc:  # a failing check must not mask the others
            res = {"ok": False, "detail": f"raised {type(exc).__name__}: {exc}"}
        results[name] = res
        ok = ok and bool(res["ok"])
    return {"ok": ok, "checks": results}
