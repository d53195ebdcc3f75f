"""Report orchestration: closure, constituents, cohomology, bounds, components.

The report is a plain dict, fully determined by the input spec, with a
provenance entry per section naming the operation that produced it.  JSON
emission sorts keys, so the output bytes are reproducible run to run.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

from . import cohom, components, dimension, ffalg, gmodules, pseudochar
from .ffalg import Mat
from .gmodules import ResidualRep
from .schemas import InputSpec

CLASS_DATA_MAX_ORDER = 500


def _constituent_data(rep: ResidualRep):
    """Composition factors, grouped into isomorphism and twist classes."""
    F = rep.field
    ss = gmodules.semisimplify_tuple(F, rep.matrices)
    factors = list(ss.constituents)
    # group isomorphic factors
    groups: List[Tuple[Tuple[Mat, ...], int]] = []
    for fac in factors:
        for gi, (refv, mult) in enumerate(groups):
            if (len(refv[0]) == len(fac[0])
                    and gmodules.find_isomorphism(F, fac, refv) is not None):
                groups[gi] = (refv, mult + 1)
                break
        else:
            groups.append((fac, 1))
    # twist classes of the distinct factors
    ord_omega = rep.omega_order()
    p = F.p
    reps_mats = [g[0] for g in groups]
    twist_class_of = list(range(len(groups)))

    def twisted(mats: Tuple[Mat, ...], k: int) -> Tuple[Mat, ...]:
        out = []
        for m, o in zip(mats, rep.omegas):
            scalar = F.embed(pow(o, k % (p - 1) if p > 2 else 0, p)) if p > 2 else F.one
            out.append(ffalg.mat_scalar(F, scalar, m))
        return tuple(out)

    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            if twist_class_of[j] != j:
                continue
            if len(reps_mats[i][0]) != len(reps_mats[j][0]):
                continue
            for k in range(ord_omega):
                if gmodules.find_isomorphism(F, reps_mats[i],
                                             twisted(reps_mats[j], k)) is not None:
                    twist_class_of[j] = twist_class_of[i]
                    break
    classes: Dict[int, List[int]] = {}
    for idx, root in enumerate(twist_class_of):
        classes.setdefault(root, []).append(idx)
    twist_classes = sorted([sorted(v) for v in classes.values()])
    return ss, groups, twist_classes


def _partition_table(rep: ResidualRep, constituent_dims: Sequence[int],
                     groups, twist_classes) -> List[dict]:
    """Bounds for every partition of the actual constituents into blocks.

    Twist relations between blocks are taken from the computed constituent
    twist classes: two blocks can only be twist-related when they have the
    same multiset of constituent classes up to the twist relation, which at
    this block level we conservatively detect by matching sorted dimension
    content and requiring every matched constituent pair to share a twist
    class.
    """
    n = rep.local_field.n
    d = rep.d
    # expand groups into a flat constituent list with its class index
    flat_dims: List[int] = []
    flat_class: List[int] = []
    class_of_group = {}
    for ci, cls in enumerate(twist_classes):
        for gi in cls:
            class_of_group[gi] = ci
    for gi, (mats, mult) in enumerate(groups):
        for _ in range(mult):
            flat_dims.append(len(mats[0]))
            flat_class.append(class_of_group[gi])
    rows = []
    seen = set()
    for blocks in dimension.set_partitions(list(range(len(flat_dims)))):
        key = tuple(sorted(tuple(sorted((flat_dims[i], flat_class[i]) for i in b))
                           for b in blocks))
        if key in seen:
            continue
        seen.add(key)
        block_dims = tuple(sum(flat_dims[i] for i in b) for b in blocks)
        block_content = [tuple(sorted((flat_dims[i], flat_class[i]) for i in b))
                         for b in blocks]
        # blocks are twist-related when their constituent content matches
        # class for class
        r = len(blocks)
        root = list(range(r))
        for i in range(r):
            for j in range(i + 1, r):
                if block_content[i] == block_content[j] and root[j] == j:
                    root[j] = root[i]
        cls_map: Dict[int, List[int]] = {}
        for idx, rt in enumerate(root):
            cls_map.setdefault(rt, []).append(idx)
        tclasses = sorted([sorted(v) for v in cls_map.values()])
        pd = dimension.partition_stats(d, n, block_dims, tclasses)
        rows.append({
            "block_dims": list(pd.block_dims),
            "twist_classes": [list(c) for c in pd.twist_classes],
            "l_P": pd.l_P, "n_P": pd.n_P, "p_P": pd.p_P, "delta_P": pd.delta_P,
            "bound_ZP": dimension.bound_ZP(pd),
            "bound_ZPij": dimension.bound_ZPij(pd),
            "codim_gap": dimension.codim_gap(pd),
        })
    rows.sort(key=lambda row: (len(row["block_dims"]), row["block_dims"]))
    return rows


def _pseudo_class_data(rep: ResidualRep, cap: Optional[int]) -> dict:
    F = rep.field
    G = rep.image(cap=cap)
    pc = pseudochar.pseudo_of(F, rep.matrices, cap=cap)
    if G.order <= CLASS_DATA_MAX_ORDER:
        classes = ffalg.conjugacy_classes(G)
        data = []
        for cls in classes:
            rep_elt = cls[0]
            data.append({
                "class_size": len(cls),
                "witness_word": list(G.word_for(rep_elt)),
                "coeffs": list(pc.value(rep_elt)),
            })
        data.sort(key=lambda x: (x["class_size"], x["coeffs"], x["witness_word"]))
        return {"mode": "conjugacy_classes", "classes": data}
    data = [{"generator": i, "coeffs": list(pc.value(m))}
            for i, m in enumerate(rep.matrices)]
    return {"mode": "generators_only", "generators": data,
            "note": f"image order {G.order} exceeds {CLASS_DATA_MAX_ORDER}"}


def _warnings(rep: ResidualRep) -> List[str]:
    out = []
    lf = rep.local_field
    if rep.d % rep.field.p == 0:
        out.append("p divides d: the trace-zero module does not split off "
                   "the scalars")
    if rep.field.p == 2:
        out.append("p = 2: the mod-p cyclotomic character is trivial")
    if lf.mu_order > 1 and any(o != 1 for o in rep.omegas):
        out.append("mu_order > 1 declares p-power roots of unity in the base "
                   "field, which forces omega = 1; the supplied omegas are "
                   "nontrivial (run continues with supplied data)")
    return out


def report(spec: InputSpec) -> dict:
    """Full deformation report for a validated input spec."""
    rep = spec.build_rep()
    cap = spec.options.cap
    F = rep.field
    lf = rep.local_field
    d = rep.d
    n = lf.n

    image = rep.image(cap=cap)
    ss, groups, twist_classes = _constituent_data(rep)
    constituent_dims = [len(mats[0]) for mats, _ in groups]
    flat_dims = []
    for (mats, mult) in groups:
        flat_dims.extend([len(mats[0])] * mult)

    prof = cohom.profile(rep)
    comp = components.component_report(rep)
    mrs_generic, mrs_special = dimension.mrs_bound(d, n, flat_dims)
    kummer = dimension.kummer_codims(d, n, len(flat_dims))
    kummer_json = {k: (str(v) if not isinstance(v, (int, bool)) else v)
                   for k, v in kummer.items()}

    out = {
        "input": spec.model_dump(),
        "image_order": image.order,
        "constituents": {
            "dims": constituent_dims,
            "multiplicities": [mult for _, mult in groups],
            "flat_dims": flat_dims,
            "twist_classes": twist_classes,
        },
        "cohomology": prof.as_dict(),
        "expected_dims": dimension.expected_dims(d, n, lf.mu_order),
        "partition_table": _partition_table(rep, flat_dims, groups, twist_classes),
        "mrs_bound": {"generic": mrs_generic, "special": mrs_special},
        "kummer_codims": kummer_json,
        "components": comp.as_dict(),
        "pseudo_character": _pseudo_class_data(rep, cap),
        "warnings": _warnings(rep),
        "provenance": {
            "image_order": "ffalg.closure",
            "constituents": "gmodules.semisimplify_tuple + find_isomorphism",
            "cohomology": "cohom.profile",
            "expected_dims": "dimension.expected_dims",
            "partition_table": "dimension.partition_stats/bound_ZP/bound_ZPij/codim_gap",
            "mrs_bound": "dimension.mrs_bound",
            "kummer_codims": "dimension.kummer_codims",
            "components": "components.component_report",
            "pseudo_character": "pseudochar.pseudo_of",
        },
    }
    if spec.options.kummer_subgroups:
        out["kummer_irreducible"] = gmodules.kummer_irreducible(
            rep, spec.options.kummer_subgroups)
        out["provenance"]["kummer_irreducible"] = "gmodules.kummer_irreducible"
    return out


def report_json(spec: InputSpec) -> str:
    """Deterministic JSON serialisation of the report (sorted keys)."""
    return json.dumps(report(spec), sort_keys=True, indent=2) + "\n"
