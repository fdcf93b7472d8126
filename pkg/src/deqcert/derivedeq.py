"""The main equivalence engine: tilting data from a long sequence, the two
ring surjections with a common kernel, and the projective-approximation
pipeline for stable-under-Nakayama projectives.
"""

from __future__ import annotations

from .algebra import (
    ModuleRep,
    find_isomorphism,
    image_module,
    kernel_module,
    nakayama_projective,
    projective,
)
from .catideal import (
    SubcatSpec,
    end_ring,
    ideal_space,
    is_right_approximation,
    right_approximation,
)
from .category import QuotientCategory
from .complexes import (
    ChainMap,
    Complex,
    HomComplex,
    chain_map_space,
    check_thm1_conditions,
    complex_in_quotient,
    homology_dims,
    hom_total_complex,
    null_homotopic_space,
    stalk,
)
from .errors import HypothesisError, InputError, InternalConsistencyError
from .exactla import CosetSpace, LinSolver, Mat, Subspace

__all__ = [
    "TiltingData",
    "EquivCertificate",
    "build_tilting",
    "theta",
    "phi",
    "verify_theorem1",
    "nu_stable_sequence",
    "minimize_right_approximation",
]


class TiltingData:
    """The augmented complex P•, its truncation T•, and the two quotient
    categories the equivalence lives over."""

    def __init__(self, cat, q, m, spec, n, p_complex, t_complex, ym_sum, qm_sum, facts):
        self.cat = cat
        self.q = q
        self.m = m
        self.spec = spec
        self.n = n
        self.p_complex = p_complex
        self.t_complex = t_complex
        self.ym_sum = ym_sum  # Y + M with injections/projections
        self.qm_sum = qm_sum  # Q^n + M
        self.facts = facts
        self.qcat_left = QuotientCategory(
            cat, lambda a, b: ideal_space(cat, spec, a, b, "L"), label="left-ann"
        )
        self.qcat_right = QuotientCategory(
            cat, lambda a, b: ideal_space(cat, spec, a, b, "R"), label="right-ann"
        )
        self.d_tilde = p_complex.diff(n)  # Q^n + M -> Y + M


def build_tilting(q: Complex, m) -> TiltingData:
    """Adjoin the identity of m in top degrees and truncate."""
    report = check_thm1_conditions(q, m)
    if not report["ok"]:
        raise HypothesisError(
            f"homology conditions fail: {report['failing']}", witness=report
        )
    cat = q.cat
    n = report["n"]
    spec = SubcatSpec(cat, [m])
    for i in range(1, n + 1):
        spec.member(q.obj(i))
    qm_sum = spec.sum_of([q.obj(n), m])
    ym_sum = cat.direct_sum([q.obj(n + 1), m])

    objs = [q.obj(i) for i in range(0, n)] + [qm_sum.obj, ym_sum.obj]
    diffs = []
    for i in range(0, n - 1):
        diffs.append(q.diff(i))
    # into Q^n + M
    diffs.append(q.diff(n - 1).then(qm_sum.injections[0]))
    # diag(d^n, 1_m): Q^n + M -> Y + M
    d_tilde = cat.mor_from_blocks(
        qm_sum, ym_sum, [[q.diff(n), None], [None, cat.identity(m)]]
    )
    diffs.append(d_tilde)
    p_complex = Complex(cat, 0, objs, diffs)
    t_complex = Complex(cat, 0, objs[:-1], diffs[:-1], check=False)

    m_stalk = stalk(cat, m)
    facts = {
        "a": all(
            d == 0
            for i, d in homology_dims(hom_total_complex(m_stalk, p_complex)).items()
            if i != 0
        ),
        "b": all(
            d == 0
            for i, d in homology_dims(hom_total_complex(p_complex, m_stalk)).items()
            if i != -n - 1
        ),
        "c": homology_dims(hom_total_complex(stalk(cat, q.obj(0)), p_complex)).get(1, 0)
        == 0
        and homology_dims(
            hom_total_complex(p_complex, stalk(cat, ym_sum.obj))
        ).get(-n, 0)
        == 0,
    }
    if not all(facts.values()):
        raise InternalConsistencyError(
            f"transported homology facts failed: {facts}"
        )
    return TiltingData(cat, q, m, spec, n, p_complex, t_complex, ym_sum, qm_sum, facts)


def _theta_solver(t: TiltingData):
    """Linear data for solving d~ . g = f^n . d~ over End(Y+M)."""
    cached = getattr(t, "_theta_cache", None)
    if cached is not None:
        return cached
    cat = t.cat
    ym = t.ym_sum.obj
    end_ym = cat.hom(ym, ym)
    target = cat.hom(t.qm_sum.obj, ym)
    cols = [list(target.coords(t.d_tilde.then(e).payload)) for e in end_ym.basis]
    mat = Mat(
        cat.field,
        [[cols[j][i] for j in range(len(cols))] for i in range(target.dim)],
        target.dim,
        len(cols),
    )
    t._theta_cache = (end_ym, target, LinSolver(mat))
    return t._theta_cache


def theta(t: TiltingData, f: ChainMap):
    """The induced endomorphism of Y+M modulo the right annihilator."""
    cat = t.cat
    end_ym, target, solver = _theta_solver(t)
    f_top = f.component(t.n)
    if f_top is None:
        f_top = cat.zero_mor(t.qm_sum.obj, t.qm_sum.obj)
    rhs = list(target.coords(f_top.then(t.d_tilde).payload))
    sol = solver.solve(rhs)
    if sol is None:
        raise InternalConsistencyError(
            "top square not solvable although the homology facts hold"
        )
    g = end_ym.from_coords(sol[: end_ym.dim])
    return t.qcat_right.lift(g)


class _PhiData:
    def __init__(self, t: TiltingData):
        self.t_bar = complex_in_quotient(t.qcat_left, t.t_complex)
        self.hc = HomComplex(t.qcat_left, self.t_bar, self.t_bar)
        cycles, _ = chain_map_space(self.hc)
        boundaries = null_homotopic_space(self.hc)
        self.cosets = CosetSpace(cycles, boundaries)

    def vec(self, t: TiltingData, f: ChainMap):
        maps = {
            i: t.qcat_left.lift(g) for i, g in f.maps.items()
        }
        return self.hc.vec_from_maps(0, maps)


def phi(t: TiltingData, f: ChainMap):
    """Class of f in the homotopy-category endomorphism ring over C/L."""
    data = _PhiData(t)
    return data.cosets.project(data.vec(t, f))


def _end_cb_basis(t: TiltingData):
    hc = HomComplex(t.cat, t.t_complex, t.t_complex)
    cycles, basis = chain_map_space(hc)
    return hc, cycles, basis


class EquivCertificate:
    def __init__(self, ring_left, ring_right, flags, data):
        self.ring_left = ring_left  # End over C/L of m + X
        self.ring_right = ring_right  # End over C/R of Y + M
        self.flags = flags
        self.data = data

    @property
    def passed(self) -> bool:
        return all(self.flags.values())

    def as_dict(self):
        return {
            "passed": self.passed,
            "flags": dict(self.flags),
            "ring_left_dim": self.ring_left.dim,
            "ring_right_dim": self.ring_right.dim,
            "end_cb_dim": self.data.get("end_cb_dim"),
            "kernel_dim": self.data.get("kernel_dim"),
        }


def verify_theorem1(q: Complex, m, embedding_check: bool = True) -> EquivCertificate:
    """Run the full construction and verify every step numerically."""
    t = build_tilting(q, m)
    cat = t.cat
    field = cat.field
    hc, cycles, basis = _end_cb_basis(t)
    n_dim = len(basis)

    # theta on the chain-map basis
    end_ym_q = t.qcat_right.hom(t.ym_sum.obj, t.ym_sum.obj)
    theta_cols = []
    theta_classes = []
    for f in basis:
        g = theta(t, f)
        theta_classes.append(g)
        theta_cols.append(list(end_ym_q.coords(g.payload)))
    theta_mat = Mat(
        field,
        [[theta_cols[j][i] for j in range(n_dim)] for i in range(end_ym_q.dim)],
        end_ym_q.dim,
        n_dim,
    )
    theta_surjective = theta_mat.rank() == end_ym_q.dim

    # phi on the same basis
    pdata = _PhiData(t)
    phi_cols = [pdata.cosets.project(pdata.vec(t, f)) for f in basis]
    phi_dim = pdata.cosets.dim
    phi_mat = Mat(
        field,
        [[phi_cols[j][i] for j in range(n_dim)] for i in range(phi_dim)],
        phi_dim,
        n_dim,
    )
    phi_surjective = phi_mat.rank() == phi_dim

    ker_theta = Subspace.from_vectors(field, n_dim, theta_mat.kernel_basis())
    ker_phi = Subspace.from_vectors(field, n_dim, phi_mat.kernel_basis())
    kernels_equal = ker_theta == ker_phi

    # ring-homomorphism checks on all basis products
    multiplicative = True
    for i, f in enumerate(basis):
        for j, g in enumerate(basis):
            fg = f.then(g)
            lhs = theta(t, fg)
            rhs = theta_classes[i].then(theta_classes[j])
            if not lhs.eq(rhs):
                multiplicative = False
            lhs_p = pdata.cosets.project(pdata.vec(t, fg))
            prod_vec = _coset_mul(pdata, phi_cols[i], phi_cols[j])
            if lhs_p != prod_vec:
                multiplicative = False
        if not multiplicative:
            break
    ident = ChainMap(
        t.t_complex, t.t_complex, {i: cat.identity(t.t_complex.obj(i)) for i in t.t_complex.degrees()}
    )
    unital = theta(t, ident).eq(t.qcat_right.lift(cat.identity(t.ym_sum.obj)))
    ident_class = pdata.cosets.project(pdata.vec(t, ident))
    for col in phi_cols:
        if (
            _coset_mul(pdata, ident_class, col) != col
            or _coset_mul(pdata, col, ident_class) != col
        ):
            unital = False
            break

    # the two endomorphism rings
    mx_sum = cat.direct_sum([t.m, q.obj(0)])
    ring_left = end_ring(t.qcat_left, mx_sum.obj, "end over left-quotient of m+X")
    ring_right = end_ring(t.qcat_right, t.ym_sum.obj, "end over right-quotient of Y+M")
    dim_match = n_dim - len(ker_theta.basis) == ring_right.dim

    flags = {
        "theta_surjective": theta_surjective,
        "phi_surjective": phi_surjective,
        "kernels_equal": kernels_equal,
        "multiplicative": multiplicative,
        "unital": bool(unital),
        "dim_match": dim_match,
    }
    if embedding_check:
        flags["embedding_dims"] = _full_embedding_dim_check(t, mx_sum.obj)
    data = {
        "end_cb_dim": n_dim,
        "kernel_dim": len(ker_theta.basis),
        "theta_mat": theta_mat,
        "phi_mat": phi_mat,
        "facts": t.facts,
    }
    return EquivCertificate(ring_left, ring_right, flags, data)


def _coset_mul(pdata: _PhiData, u, v):
    """Multiply two homotopy classes via coset representatives."""
    fu = pdata.hc.maps_from_vec(0, pdata.cosets.lift(u))
    fv = pdata.hc.maps_from_vec(0, pdata.cosets.lift(v))
    prod = {}
    for i, a in fu.items():
        b = fv.get(i)
        if b is not None:
            prod[i] = a.then(b)
    return pdata.cosets.project(pdata.hc.vec_from_maps(0, prod))


def _full_embedding_dim_check(t: TiltingData, mx_obj) -> bool:
    """Dimension form of the full-embedding claim: Hom over the left
    quotient between the terms of T• must match Hom between their images
    under Hom(m+X, -), i.e. modules over the endomorphism ring."""
    qcat = t.qcat_left
    ring = end_ring(qcat, mx_obj, "embedding check")
    try:
        alg = ring.opposite().to_algebra()
    except InputError:
        return False
    end_space = qcat.hom(mx_obj, mx_obj)
    terms = list(t.t_complex.objs)
    mods = []
    for u in terms:
        space = qcat.hom(mx_obj, u)
        mats = {}
        for bi, e in enumerate(end_space.basis):
            mat = Mat.zeros(qcat.field, space.dim, space.dim)
            for j, b in enumerate(space.basis):
                col = space.coords(e.then(b).payload)
                for i in range(space.dim):
                    mat.data[i][j] = col[i]
            mats[alg.basis_names[bi]] = mat
        mods.append(ModuleRep.plain_rep(alg, space.dim, mats))
    mcat = alg.modcat
    for i, u in enumerate(terms):
        for j, v in enumerate(terms):
            if qcat.hom(u, v).dim != mcat.hom(mods[i], mods[j]).dim:
                return False
    return True


# -- projective-approximation pipeline -------------------------------------


def _is_surjective(f) -> bool:
    img, _ = image_module(f)
    return all(img.dims[s] == f.tgt.dims[s] for s in f.tgt.slots)


def minimize_right_approximation(cat, spec: SubcatSpec, summands, maps, target):
    """Greedily drop summand copies while the approximation property holds.

    summands[i] are subcategory generators, maps[i]: summands[i] -> target.
    Returns the reduced (summands, maps).
    """

    def assemble(idx):
        data = spec.sum_of([summands[i] for i in idx])
        out = cat.zero_mor(data.obj, target)
        for pos, i in enumerate(idx):
            out = out + data.projections[pos].then(maps[i])
        return out

    keep = list(range(len(summands)))
    changed = True
    while changed and len(keep) > 1:
        changed = False
        for drop in list(keep):
            trial = [i for i in keep if i != drop]
            if is_right_approximation(cat, spec, assemble(trial)):
                keep = trial
                changed = True
                break
    return [summands[i] for i in keep], [maps[i] for i in keep]


def _minimal_right_approx(cat, spec, target):
    summands, maps = [], []
    for g in spec.generators:
        for b in cat.hom(g, target).basis:
            summands.append(g)
            maps.append(b)
    if not summands:
        g = spec.generators[0]
        data = spec.sum_of([g])
        return data, cat.zero_mor(data.obj, target)
    summands, maps = minimize_right_approximation(cat, spec, summands, maps, target)
    data = spec.sum_of(summands)
    out = cat.zero_mor(data.obj, target)
    for proj, b in zip(data.projections, maps):
        out = out + proj.then(b)
    return data, out


def nu_stable_sequence(p: ModuleRep, y: ModuleRep, steps=None, rng=None, max_steps=16):
    """Iterated minimal right approximations 0 -> X -> P_n..P_0 -> Y -> 0.

    Requires the Nakayama transform of p to be isomorphic to p, and y to
    admit a presentation by add(p) (first two approximations surjective).
    Returns the sequence as a Complex with X in degree 0.
    """
    import random as _random

    algebra = p.algebra
    cat = algebra.modcat
    if p.proj_summands is None:
        raise HypothesisError("p is not a certified sum of projectives")
    nu_p = nakayama_projective(algebra, p)
    status, _ = find_isomorphism(p, nu_p, rng or _random.Random(0))
    if status != "yes":
        raise HypothesisError(f"projective is not stable under the Nakayama transform ({status})")
    gens = [projective(algebra, v) for v in sorted(set(p.proj_summands))]
    spec = SubcatSpec(cat, gens)

    approx_data, f0 = _minimal_right_approx(cat, spec, y)
    if not _is_surjective(f0):
        raise HypothesisError("y is not generated by add(p)")
    terms = [(approx_data.obj, f0)]  # (P_i, f_i: P_i -> previous target)
    current_f = f0
    step = 0
    while True:
        ker, incl = kernel_module(current_f)
        if steps is not None and step >= steps:
            x = ker
            x_incl = incl
            break
        if steps is None and (
            ker.total_dim == 0 or _in_add(cat, spec, ker) or step >= max_steps
        ):
            x = ker
            x_incl = incl
            break
        data, approx = _minimal_right_approx(cat, spec, ker)
        if step == 0 and not _is_surjective(approx):
            raise HypothesisError("first kernel has no surjective approximation; no presentation")
        current_f = approx.then(incl)
        terms.append((data.obj, current_f))
        step += 1

    # assemble 0 -> X -> P_n -> ... -> P_0 -> Y -> 0, X in degree 0
    objs = [x] + [obj for obj, _ in reversed(terms)] + [y]
    diffs = [x_incl] + [f for _, f in reversed(terms)]
    q = Complex(cat, 0, objs, diffs)

    # the construction makes Hom(p, -) exact along the sequence; check both
    # transported vanishing families outright
    p_stalk = stalk(cat, p)
    h1 = homology_dims(hom_total_complex(p_stalk, q))
    if any(d != 0 for d in h1.values()):
        raise InternalConsistencyError(f"Hom(p, sequence) not exact: {h1}")
    h2 = homology_dims(hom_total_complex(q, p_stalk))
    if any(d != 0 for d in h2.values()):
        raise InternalConsistencyError(f"Hom(sequence, p) not exact: {h2}")
    return q


def _in_add(cat, spec: SubcatSpec, mod: ModuleRep) -> bool:
    """Is the module a sum of generators?  Small multiplicity search."""
    if mod.total_dim == 0:
        return True
    from itertools import product as _product

    gens = spec.generators
    caps = [
        mod.total_dim // g.total_dim if g.total_dim else 0 for g in gens
    ]
    for mults in _product(*[range(c + 1) for c in caps]):
        if sum(m * g.total_dim for m, g in zip(mults, gens)) != mod.total_dim:
            continue
        if sum(mults) == 0:
            continue
        summands = [g for m, g in zip(mults, gens) for _ in range(m)]
        cand = cat.direct_sum(summands).obj
        status, _ = find_isomorphism(cand, mod, None)
        if status == "yes":
            return True
    return False
