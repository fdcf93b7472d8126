"""Annihilator ideals, approximations and endomorphism rings.

Everything here is generic over a FiniteCategory.  The subcategory is
always the additive closure of a finite list of generator objects; a
morphism factors through it iff it factors through a finite direct sum of
generators, which is the same as lying in the span of composites through
single generators.
"""

from __future__ import annotations

from .algebra import Algebra
from .category import FiniteCategory, Mor
from .errors import InputError, InternalConsistencyError
from .exactla import Mat, Subspace

__all__ = [
    "SubcatSpec",
    "random_mor",
    "ideal_space",
    "factorization_through",
    "right_approximation",
    "left_approximation",
    "is_right_approximation",
    "is_left_approximation",
    "lemma_ann_verify",
    "RingPresentation",
    "end_ring",
    "quotient_ring",
]


class SubcatSpec:
    """add(generators) inside a FiniteCategory.

    Membership is tracked structurally: generators are members, and sums
    of members registered through :meth:`member` are members.  No
    isomorphism search is attempted here.
    """

    def __init__(self, cat: FiniteCategory, generators, label="D"):
        if not generators:
            raise InputError("subcategory needs at least one generator")
        self.cat = cat
        self.generators = list(generators)
        self.label = label
        self._members = {g.key for g in generators}

    def member(self, obj):
        """Register a direct sum of members as a member."""
        self._members.add(obj.key)
        return obj

    def contains(self, obj) -> bool:
        return obj.key in self._members

    def sum_of(self, objs):
        """Direct sum of members, registered as a member."""
        for o in objs:
            if not self.contains(o):
                raise InputError("summand is not a known member of the subcategory")
        data = self.cat.direct_sum(objs)
        self.member(data.obj)
        return data


def random_mor(cat: FiniteCategory, x, y, rng) -> Mor:
    """Random element of Hom(x, y) with coefficients from the field sampler."""
    space = cat.hom(x, y)
    out = space.zero()
    for b in space.basis:
        c = cat.field.random(rng)
        if c:
            out = out + b.scale(c)
    return out


def _span_of_mors(cat, x, y, mors) -> Subspace:
    space = cat.hom(x, y)
    return Subspace.from_vectors(
        cat.field, space.dim, [list(space.coords(m.payload)) for m in mors]
    )


def factorization_through(cat, spec: SubcatSpec, x, y) -> Subspace:
    """Span of morphisms x -> y factoring through the subcategory."""
    mors = []
    for g in spec.generators:
        for u in cat.hom(x, g).basis:
            for v in cat.hom(g, y).basis:
                mors.append(u.then(v))
    return _span_of_mors(cat, x, y, mors)


def ideal_space(cat, spec: SubcatSpec, x, y, kind: str) -> Subspace:
    """The ideal's subspace of Hom(x, y) in Hom-basis coordinates.

    kind: "R" (right annihilator: every map from the subcategory into x,
    followed by f, is zero), "L" (left annihilator: f followed by every
    map from y into the subcategory is zero), "F" (factors through it),
    "I" = L & F, "J" = R & F.
    """
    if kind == "F":
        return factorization_through(cat, spec, x, y)
    if kind == "I":
        return ideal_space(cat, spec, x, y, "L").intersect(
            factorization_through(cat, spec, x, y)
        )
    if kind == "J":
        return ideal_space(cat, spec, x, y, "R").intersect(
            factorization_through(cat, spec, x, y)
        )
    if kind not in ("L", "R"):
        raise InputError(f"unknown ideal kind {kind!r}")

    space = cat.hom(x, y)
    n = space.dim
    if n == 0:
        return Subspace.zero(cat.field, 0)
    rows = []
    for g in spec.generators:
        if kind == "R":
            probes = cat.hom(g, x).basis  # h: g -> x;  f dies iff h.then(f)=0
            out_dim = cat.hom(g, y).dim
        else:
            probes = cat.hom(y, g).basis  # h: y -> g;  f dies iff f.then(h)=0
            out_dim = cat.hom(x, g).dim
        for h in probes:
            cols = []
            for f in space.basis:
                comp = h.then(f) if kind == "R" else f.then(h)
                cols.append(list(comp.coords()))
            for r in range(out_dim):
                rows.append([cols[j][r] for j in range(n)])
    if not rows:
        return Subspace.full(cat.field, n)
    mat = Mat(cat.field, rows, len(rows), n)
    vecs = mat.kernel_basis()
    return Subspace.from_vectors(cat.field, n, vecs)


# -- approximations --------------------------------------------------------


def right_approximation(cat, spec: SubcatSpec, x):
    """Universal right approximation: evaluate a Hom basis from each generator.

    Returns (sum_data, mor) where mor: sum_data.obj -> x.  The sum is
    registered as a member of the subcategory.
    """
    summands, maps = [], []
    for g in spec.generators:
        for b in cat.hom(g, x).basis:
            summands.append(g)
            maps.append(b)
    if not summands:
        # the zero approximation from a zero-multiplicity sum is awkward to
        # represent; use one generator with the zero map
        summands, maps = [spec.generators[0]], [cat.zero_mor(spec.generators[0], x)]
    data = spec.sum_of(summands)
    out = cat.zero_mor(data.obj, x)
    for proj, b in zip(data.projections, maps):
        out = out + proj.then(b)
    return data, out


def left_approximation(cat, spec: SubcatSpec, x):
    """Universal left approximation; returns (sum_data, mor: x -> sum)."""
    summands, maps = [], []
    for g in spec.generators:
        for b in cat.hom(x, g).basis:
            summands.append(g)
            maps.append(b)
    if not summands:
        summands, maps = [spec.generators[0]], [cat.zero_mor(x, spec.generators[0])]
    data = spec.sum_of(summands)
    out = cat.zero_mor(x, data.obj)
    for inj, b in zip(data.injections, maps):
        out = out + b.then(inj)
    return data, out


def is_right_approximation(cat, spec: SubcatSpec, f: Mor) -> bool:
    """Does every map generator -> target factor through f?"""
    for g in spec.generators:
        target_space = cat.hom(g, f.tgt)
        if target_space.dim == 0:
            continue
        through = [u.then(f) for u in cat.hom(g, f.src).basis]
        span = _span_of_mors(cat, g, f.tgt, through)
        if span != Subspace.full(cat.field, target_space.dim):
            return False
    return True


def is_left_approximation(cat, spec: SubcatSpec, f: Mor) -> bool:
    for g in spec.generators:
        target_space = cat.hom(f.src, g)
        if target_space.dim == 0:
            continue
        through = [f.then(u) for u in cat.hom(f.tgt, g).basis]
        span = _span_of_mors(cat, f.src, g, through)
        if span != Subspace.full(cat.field, target_space.dim):
            return False
    return True


# -- characterization checks ----------------------------------------------


def _kernel_of_postcompose(cat, f: Mor, x, y, side: str) -> Subspace:
    """side "pre": {g: x->y with f.then(g)=0, f: D->x};
    side "post": {g with g.then(f)=0, f: y->D}."""
    space = cat.hom(x, y)
    n = space.dim
    if n == 0:
        return Subspace.zero(cat.field, 0)
    rows = []
    cols = []
    for g in space.basis:
        comp = f.then(g) if side == "pre" else g.then(f)
        cols.append(list(comp.coords()))
    out_dim = len(cols[0])
    for r in range(out_dim):
        rows.append([cols[j][r] for j in range(n)])
    if not rows:
        return Subspace.full(cat.field, n)
    mat = Mat(cat.field, rows, len(rows), n)
    return Subspace.from_vectors(cat.field, n, mat.kernel_basis())


def lemma_ann_verify(cat, spec: SubcatSpec, a, b) -> dict:
    """Check the four annihilator characterizations for the pair (a, b).

    (1) with a right approximation f_a of a: R(a,b) = {g | f_a.then(g)=0};
    (2) with a left approximation f^b of b: L(a,b) = {g | g.then(f^b)=0};
    (3) if a is in the subcategory: R(a,b)=0 and L(a,b)=I(a,b);
    (4) if b is in the subcategory: L(a,b)=0 and R(a,b)=J(a,b).
    Clauses (3)/(4) are skipped when membership is not known structurally.
    """
    report = {}
    _, fa = right_approximation(cat, spec, a)
    r_direct = ideal_space(cat, spec, a, b, "R")
    report["right_char"] = r_direct == _kernel_of_postcompose(cat, fa, a, b, "pre")

    _, fb = left_approximation(cat, spec, b)
    l_direct = ideal_space(cat, spec, a, b, "L")
    report["left_char"] = l_direct == _kernel_of_postcompose(cat, fb, a, b, "post")

    if spec.contains(a):
        dim_r = len(r_direct.basis)
        report["member_source"] = dim_r == 0 and l_direct == ideal_space(
            cat, spec, a, b, "I"
        )
    else:
        report["member_source"] = None
    if spec.contains(b):
        dim_l = len(l_direct.basis)
        report["member_target"] = dim_l == 0 and r_direct == ideal_space(
            cat, spec, a, b, "J"
        )
    else:
        report["member_target"] = None
    report["ok"] = all(v is not False for v in report.values())
    return report


# -- endomorphism rings ----------------------------------------------------


class RingPresentation:
    """A finite-dimensional ring by basis labels and structure constants."""

    def __init__(self, field, labels, table, unit, provenance=""):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = table  # table[i][j] = coords of basis_i * basis_j
        self.unit = list(unit)
        self.provenance = provenance

    def to_algebra(self, check=True) -> Algebra:
        return Algebra(self.field, self.labels, self.table, self.unit, check=check)

    def opposite(self) -> "RingPresentation":
        table = [
            [self.table[j][i] for j in range(self.dim)] for i in range(self.dim)
        ]
        return RingPresentation(
            self.field, self.labels, table, self.unit, self.provenance + " (opposite)"
        )

    def mul(self, u, v):
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = f.mul(a, b)
                for k, s in enumerate(self.table[i][j]):
                    if s:
                        out[k] = f.add(out[k], f.mul(c, s))
        return out

    def describe(self):
        return {
            "dim": self.dim,
            "labels": self.labels,
            "provenance": self.provenance,
        }

    def __repr__(self):
        return f"RingPresentation(dim {self.dim}, {self.provenance})"


def end_ring(cat, obj, provenance="") -> RingPresentation:
    """End(obj) in the given category (which may already be a quotient)."""
    space = cat.hom(obj, obj)
    n = space.dim
    table = [
        [list(space.coords(space.basis[i].then(space.basis[j]).payload)) for j in range(n)]
        for i in range(n)
    ]
    unit = list(space.coords(cat.identity(obj).payload))
    return RingPresentation(
        cat.field, [f"e{i}" for i in range(n)], table, unit, provenance
    )


def quotient_ring(cat, obj, ideal: Subspace, provenance="") -> RingPresentation:
    """End(obj)/ideal, with an internal two-sidedness check on the ideal."""
    space = cat.hom(obj, obj)
    n = space.dim
    if ideal.ambient != n:
        raise InputError("ideal lives in the wrong endomorphism ring")
    for v in ideal.basis:
        u = space.from_coords(v)
        for e in space.basis:
            left = list(space.coords(e.then(u).payload))
            right = list(space.coords(u.then(e).payload))
            if not (ideal.contains(left) and ideal.contains(right)):
                raise InternalConsistencyError(
                    "subspace is not a two-sided ideal of the endomorphism ring"
                )
    full = Subspace.full(cat.field, n)
    reps = full.quotient_basis(ideal)
    d = len(reps)
    rep_mors = [space.from_coords(v) for v in reps]
    # project a coordinate vector to the quotient basis
    cols = reps + [list(v) for v in ideal.basis]
    from .exactla import LinSolver

    solver = LinSolver(
        Mat(
            cat.field,
            [[cols[j][i] for j in range(len(cols))] for i in range(n)],
            n,
            len(cols),
        )
    )

    def project(vec):
        sol = solver.solve(list(vec))
        if sol is None:
            raise InternalConsistencyError("projection failed")
        return sol[:d]

    table = [
        [
            project(space.coords(rep_mors[i].then(rep_mors[j]).payload))
            for j in range(d)
        ]
        for i in range(d)
    ]
    unit = project(space.coords(cat.identity(obj).payload))
    return RingPresentation(
        cat.field, [f"q{i}" for i in range(d)], table, unit, provenance
    )
