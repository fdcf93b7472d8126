"""Finite-dimensional algebras, quiver presentations and module categories.

Paths compose left to right: ``ab`` is "a then b", so a relation word like
``abcda`` reads as a walk through the quiver.  A representation assigns to
the arrow ``a: i -> j`` a matrix of shape dim(j) x dim(i) acting on column
vectors, and the action of a path is the reverse-order matrix product.
"""

from __future__ import annotations

from .category import DirectSumData, FiniteCategory, HomSpace, Mor, fresh_key
from .errors import InputError, NonFiniteDimensionalError
from .exactla import FieldSpec, Mat, Subspace

__all__ = [
    "Quiver",
    "Algebra",
    "ModuleRep",
    "ModuleCategory",
    "path_algebra",
    "projective",
    "simple_module",
    "regular_module",
    "hom_module",
    "kernel_module",
    "image_module",
    "radical",
    "socle",
    "top",
    "nakayama_projective",
    "find_isomorphism",
    "is_isomorphism",
    "invert",
]


class Quiver:
    """Named vertices and arrows (name, source, target)."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        self.arrows = tuple((str(n), str(s), str(t)) for (n, s, t) in arrows)
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        vset = set(self.vertices)
        for n, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise InputError(f"arrow {n} has undeclared endpoint")
        self.arrow_by_name = {a[0]: a for a in self.arrows}

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path:
    """A composable arrow word, possibly trivial (a lazy path at a vertex)."""

    __slots__ = ("arrows", "source", "target")

    def __init__(self, arrows, source, target):
        self.arrows = tuple(arrows)
        self.source = source
        self.target = target

    @property
    def length(self):
        return len(self.arrows)

    def label(self):
        return "".join(self.arrows) if self.arrows else f"e{self.source}"

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.arrows == other.arrows
            and self.source == other.source
        )

    def __hash__(self):
        return hash((self.arrows, self.source))

    def __repr__(self):
        return self.label()


class QuiverPresentation:
    def __init__(self, quiver: Quiver, relations, paths):
        self.quiver = quiver
        self.relations = tuple(tuple(r) for r in relations)
        self.paths = list(paths)  # index order = algebra basis order
        self.index = {p: i for i, p in enumerate(self.paths)}


def _contains_factor(word, factors):
    for fac in factors:
        L = len(fac)
        for i in range(len(word) - L + 1):
            if tuple(word[i : i + L]) == fac:
                return True
    return False


def path_algebra(quiver: Quiver, relations=(), field: FieldSpec | None = None) -> "Algebra":
    """The quotient of the path algebra by the given monomial relations."""
    field = field or FieldSpec.rationals()
    rels = []
    for rel in relations:
        rel = tuple(str(a) for a in rel)
        if len(rel) < 2:
            raise InputError("relation monomials must have length >= 2")
        here = None
        for name in rel:
            if name not in quiver.arrow_by_name:
                raise InputError(f"unknown arrow {name!r} in relation")
            _, s, t = quiver.arrow_by_name[name]
            if here is not None and s != here:
                raise InputError(f"relation {'.'.join(rel)} is not a composable path")
            here = t
        rels.append(rel)

    # If a relation-free path of this length exists, pumping gives infinitely
    # many (states of the factor-avoiding automaton: vertex x relation suffix).
    bound = len(quiver.vertices) * (sum(len(r) for r in rels) + 1) + 1

    paths = [Path((), v, v) for v in quiver.vertices]
    frontier = list(paths)
    while frontier:
        new = []
        for p in frontier:
            for name, s, t in quiver.arrows:
                if s != p.target:
                    continue
                word = p.arrows + (name,)
                if _contains_factor(word, rels):
                    continue
                q = Path(word, p.source, t)
                if q.length > bound:
                    raise NonFiniteDimensionalError(
                        "quiver presentation has infinitely many relation-free paths"
                    )
                new.append(q)
        paths.extend(new)
        frontier = new

    paths.sort(key=lambda p: (p.length, quiver.vertices.index(p.source), p.arrows))
    pres = QuiverPresentation(quiver, rels, paths)
    n = len(paths)
    zero_vec = [field.zero] * n
    table = []
    for p in paths:
        row = []
        for q in paths:
            vec = list(zero_vec)
            if p.target == q.source:
                word = p.arrows + q.arrows
                if not _contains_factor(word, pres.relations):
                    pq = Path(word, p.source, q.target)
                    idx = pres.index.get(pq)
                    if idx is not None:
                        vec[idx] = field.one
            row.append(vec)
        table.append(row)
    unit = list(zero_vec)
    for v in quiver.vertices:
        unit[pres.index[Path((), v, v)]] = field.one
    return Algebra(
        field, [p.label() for p in paths], table, unit, presentation=pres
    )


class Algebra:
    """A finite-dimensional algebra by basis and structure constants."""

    def __init__(self, field, basis_names, table, unit, presentation=None, check=True):
        self.field = field
        self.basis_names = list(basis_names)
        self.dim = len(self.basis_names)
        self.table = [
            [[field.coerce(x) for x in vec] for vec in row] for row in table
        ]
        self.unit = [field.coerce(x) for x in unit]
        self.presentation = presentation
        self.key = fresh_key()
        self._modcat = None
        if check:
            self._check_axioms()

    def generating_indices(self):
        """Indices of a basis subset generating the algebra unitally.

        Greedy: walk the basis, keep an element when it is outside the
        subalgebra generated so far.  Used to shrink intertwiner systems.
        """
        cached = getattr(self, "_gen_indices", None)
        if cached is not None:
            return cached
        from .exactla import Subspace

        span = Subspace.from_vectors(self.field, self.dim, [self.unit])
        gens = []
        for i in range(self.dim):
            e = self.basis_vec(i)
            if span.contains(e):
                continue
            gens.append(i)
            span = span + Subspace.from_vectors(self.field, self.dim, [e])
            while True:
                prods = [
                    self.mul_vec(list(a), list(b))
                    for a in span.basis
                    for b in span.basis
                ]
                grown = span + Subspace.from_vectors(self.field, self.dim, prods)
                if grown.dim == span.dim:
                    break
                span = grown
        self._gen_indices = gens
        return gens

    def mul_vec(self, u, v):
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

    def basis_vec(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def _check_axioms(self):
        f = self.field
        for i in range(self.dim):
            e = self.basis_vec(i)
            if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                raise InputError("unit is not a two-sided identity")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.mul_vec(ij, self.basis_vec(k))
                    right = self.mul_vec(self.basis_vec(i), self.table[j][k])
                    if left != right:
                        raise InputError(
                            f"structure constants not associative at ({i},{j},{k})"
                        )

    @property
    def modcat(self) -> "ModuleCategory":
        if self._modcat is None:
            self._modcat = ModuleCategory(self)
        return self._modcat

    def vertices(self):
        if self.presentation is None:
            raise InputError("algebra has no quiver presentation")
        return self.presentation.quiver.vertices

    def __repr__(self):
        return f"Algebra(dim {self.dim} over {self.field!r})"


class ModuleRep:
    """A module: vertex-graded spaces with arrow matrices (quiver case) or a
    single space with one action matrix per algebra basis element."""

    def __init__(self, algebra, dims, mats, kind, name="", proj_summands=None, check=True):
        self.algebra = algebra
        self.kind = kind  # "quiver" | "plain"
        self.dims = dict(dims)
        self.mats = dict(mats)
        self.name = name
        self.proj_summands = tuple(proj_summands) if proj_summands is not None else None
        self.key = fresh_key()
        if kind == "quiver":
            self.slots = list(algebra.vertices())
        else:
            self.slots = ["*"]
        self.total_dim = sum(self.dims[s] for s in self.slots)
        if check:
            self._validate()

    # -- constructors ------------------------------------------------------

    @classmethod
    def quiver_rep(cls, algebra, dims, arrow_mats, name="", proj_summands=None, check=True):
        field = algebra.field
        full_dims = {v: int(dims.get(v, 0)) for v in algebra.vertices()}
        mats = {}
        for arr_name, s, t in algebra.presentation.quiver.arrows:
            m = arrow_mats.get(arr_name)
            if m is None:
                m = Mat.zeros(field, full_dims[t], full_dims[s])
            elif not isinstance(m, Mat):
                m = Mat(field, m) if m else Mat.zeros(field, full_dims[t], full_dims[s])
            mats[arr_name] = m
        return cls(algebra, full_dims, mats, "quiver", name, proj_summands, check)

    @classmethod
    def plain_rep(cls, algebra, dim, action_mats, name="", check=True):
        return cls(algebra, {"*": int(dim)}, dict(action_mats), "plain", name, check=check)

    @classmethod
    def zero(cls, algebra):
        if algebra.presentation is not None:
            return cls.quiver_rep(algebra, {}, {}, name="0")
        z = Mat.zeros(algebra.field, 0, 0)
        return cls.plain_rep(algebra, 0, {b: z for b in algebra.basis_names}, name="0")

    # -- validation --------------------------------------------------------

    def _validate(self):
        if self.kind == "quiver":
            for name, s, t in self.algebra.presentation.quiver.arrows:
                m = self.mats[name]
                if m.shape != (self.dims[t], self.dims[s]):
                    raise InputError(
                        f"arrow {name}: matrix shape {m.shape} does not match "
                        f"({self.dims[t]}, {self.dims[s]})"
                    )
            for rel in self.algebra.presentation.relations:
                src = self.algebra.presentation.quiver.arrow_by_name[rel[0]][1]
                if not self.path_action(rel, src).is_zero():
                    raise InputError(f"relation {'.'.join(rel)} does not act as zero")
        else:
            d = self.dims["*"]
            alg = self.algebra
            for bname in alg.basis_names:
                m = self.mats.get(bname)
                if m is None or m.shape != (d, d):
                    raise InputError(f"missing or misshaped action matrix for {bname}")
            # action convention: R[x.y] = R[y]·R[x]
            ident = Mat.identity(alg.field, d)
            unit_m = self._plain_action(alg.unit)
            if unit_m != ident:
                raise InputError("unit does not act as the identity")
            for i in range(alg.dim):
                for j in range(alg.dim):
                    lhs = self._plain_action(alg.table[i][j])
                    rhs = self.mats[alg.basis_names[j]] * self.mats[alg.basis_names[i]]
                    if lhs != rhs:
                        raise InputError("action does not satisfy the structure constants")

    def _plain_action(self, vec):
        d = self.dims["*"]
        out = Mat.zeros(self.algebra.field, d, d)
        for c, bname in zip(vec, self.algebra.basis_names):
            if c:
                out = out + self.mats[bname].scale(c)
        return out

    def path_action(self, arrow_names, source_vertex) -> Mat:
        """Matrix of the path's action, dim(target) x dim(source)."""
        q = self.algebra.presentation.quiver
        here = source_vertex
        m = Mat.identity(self.algebra.field, self.dims[here])
        for name in arrow_names:
            _, s, t = q.arrow_by_name[name]
            if s != here:
                raise InputError("non-composable arrow word")
            m = self.mats[name] * m
            here = t
        return m

    def __repr__(self):
        tag = self.name or f"dims={self.dims}"
        return f"ModuleRep({tag})"


def _mod_blocks_zero(field, src: ModuleRep, tgt: ModuleRep):
    return {s: Mat.zeros(field, tgt.dims[s], src.dims[s]) for s in src.slots}


class ModuleCategory(FiniteCategory):
    """Module category of an algebra; payloads are per-slot matrices."""

    def __init__(self, algebra: Algebra):
        super().__init__(algebra.field)
        self.algebra = algebra

    def mor(self, src, tgt, blocks) -> Mor:
        payload = {}
        for s in src.slots:
            m = blocks.get(s)
            if m is None:
                m = Mat.zeros(self.field, tgt.dims[s], src.dims[s])
            elif not isinstance(m, Mat):
                m = Mat(self.field, m)
            if m.shape != (tgt.dims[s], src.dims[s]):
                raise InputError(f"block at {s} has shape {m.shape}")
            payload[s] = m
        return Mor(self, src, tgt, payload)

    # -- hooks -------------------------------------------------------------

    def _hom_space(self, x, y) -> HomSpace:
        if x.algebra is not self.algebra or y.algebra is not self.algebra:
            raise InputError("modules over a different algebra")
        if x.kind != y.kind:
            raise InputError("cannot mix quiver and plain representations")
        offsets, total = {}, 0
        for s in x.slots:
            offsets[s] = total
            total += y.dims[s] * x.dims[s]

        rows = []

        def add_constraint(a_mat, s_src, s_tgt, b_mat):
            # unknown blocks f_s; constraint a·f_{s_src} - f_{s_tgt}·b = 0
            f = self.field
            for r in range(a_mat.rows):
                for c in range(b_mat.cols):
                    row = [f.zero] * total
                    for k in range(a_mat.cols):
                        if a_mat.data[r][k]:
                            idx = offsets[s_src] + k * x.dims[s_src] + c
                            row[idx] = f.add(row[idx], a_mat.data[r][k])
                    for l in range(b_mat.rows):
                        if b_mat.data[l][c]:
                            idx = offsets[s_tgt] + r * x.dims[s_tgt] + l
                            row[idx] = f.sub(row[idx], b_mat.data[l][c])
                    rows.append(row)

        if x.kind == "quiver":
            for name, s, t in self.algebra.presentation.quiver.arrows:
                add_constraint(y.mats[name], s, t, x.mats[name])
        else:
            # intertwining an algebra-generating subset suffices
            for i in self.algebra.generating_indices():
                bname = self.algebra.basis_names[i]
                add_constraint(y.mats[bname], "*", "*", x.mats[bname])

        if total == 0:
            return HomSpace(self, x, y, [], 0)
        system = Mat(self.field, rows, len(rows), total) if rows else Mat.zeros(
            self.field, 0, total
        )
        payloads = [self._unflatten(x, y, vec) for vec in system.kernel_basis()]
        return HomSpace(self, x, y, payloads, total)

    def _unflatten(self, x, y, vec):
        blocks, pos = {}, 0
        for s in x.slots:
            r, c = y.dims[s], x.dims[s]
            blocks[s] = Mat(
                self.field,
                [[vec[pos + i * c + j] for j in range(c)] for i in range(r)]
                if r
                else [],
                r,
                c,
            )
            pos += r * c
        return blocks

    def _p_flatten(self, x, y, fp):
        out = []
        for s in x.slots:
            for row in fp[s].data:
                out.extend(row)
        return out

    def _p_compose(self, x, y, z, fp, gp):
        return {s: gp[s] * fp[s] for s in x.slots}

    def _p_add(self, fp, gp):
        return {s: fp[s] + gp[s] for s in fp}

    def _p_scale(self, c, fp):
        c = self.field.coerce(c)
        return {s: m.scale(c) for s, m in fp.items()}

    def _p_zero(self, x, y):
        return _mod_blocks_zero(self.field, x, y)

    def _p_identity(self, x):
        return {s: Mat.identity(self.field, x.dims[s]) for s in x.slots}

    def _direct_sum(self, objs) -> DirectSumData:
        if not objs:
            raise InputError("empty direct sum")
        a = self.algebra
        dims = {s: sum(o.dims[s] for o in objs) for s in objs[0].slots}
        if objs[0].kind == "quiver":
            mats = {}
            for name, s, t in a.presentation.quiver.arrows:
                big = Mat.zeros(self.field, dims[t], dims[s])
                ro = co = 0
                for o in objs:
                    m = o.mats[name]
                    for i in range(m.rows):
                        for j in range(m.cols):
                            big.data[ro + i][co + j] = m.data[i][j]
                    ro += o.dims[t]
                    co += o.dims[s]
                mats[name] = big
            prov = None
            if all(o.proj_summands is not None for o in objs):
                prov = [v for o in objs for v in o.proj_summands]
            total = ModuleRep(
                a,
                dims,
                mats,
                "quiver",
                name="(" + "+".join(o.name or "?" for o in objs) + ")",
                proj_summands=prov,
                check=False,
            )
        else:
            mats = {}
            for bname in a.basis_names:
                big = Mat.zeros(self.field, dims["*"], dims["*"])
                off = 0
                for o in objs:
                    m = o.mats[bname]
                    for i in range(m.rows):
                        for j in range(m.cols):
                            big.data[off + i][off + j] = m.data[i][j]
                    off += o.dims["*"]
                mats[bname] = big
            total = ModuleRep(a, dims, mats, "plain", check=False)

        injections, projections = [], []
        offsets = {s: 0 for s in total.slots}
        for o in objs:
            inj_blocks, proj_blocks = {}, {}
            for s in total.slots:
                inj = Mat.zeros(self.field, dims[s], o.dims[s])
                proj = Mat.zeros(self.field, o.dims[s], dims[s])
                for i in range(o.dims[s]):
                    inj.data[offsets[s] + i][i] = self.field.one
                    proj.data[i][offsets[s] + i] = self.field.one
                inj_blocks[s] = inj
                proj_blocks[s] = proj
                offsets[s] += o.dims[s]
            injections.append(Mor(self, o, total, inj_blocks))
            projections.append(Mor(self, total, o, proj_blocks))
        return DirectSumData(total, objs, injections, projections)


# -- standard modules ------------------------------------------------------


def projective(algebra: Algebra, vertex) -> ModuleRep:
    """Paths starting at the vertex, arrows acting by concatenation."""
    vertex = str(vertex)
    pres = algebra.presentation
    if pres is None:
        raise InputError("projective() needs a quiver-presented algebra")
    if vertex not in pres.quiver.vertices:
        raise InputError(f"unknown vertex {vertex!r}")
    mine = [p for p in pres.paths if p.source == vertex]
    by_slot = {v: [p for p in mine if p.target == v] for v in pres.quiver.vertices}
    pos = {p: by_slot[p.target].index(p) for p in mine}
    dims = {v: len(by_slot[v]) for v in pres.quiver.vertices}
    field = algebra.field
    mats = {}
    for name, s, t in pres.quiver.arrows:
        m = Mat.zeros(field, dims[t], dims[s])
        for p in by_slot[s]:
            word = p.arrows + (name,)
            if not _contains_factor(word, pres.relations):
                q = Path(word, p.source, t)
                m.data[pos[q]][pos[p]] = field.one
        mats[name] = m
    return ModuleRep(
        algebra, dims, mats, "quiver", name=f"P{vertex}", proj_summands=[vertex]
    )


def simple_module(algebra: Algebra, vertex) -> ModuleRep:
    vertex = str(vertex)
    return ModuleRep.quiver_rep(algebra, {vertex: 1}, {}, name=f"S{vertex}")


def regular_module(algebra: Algebra) -> DirectSumData:
    """The regular module as the direct sum of the vertex projectives."""
    cat = algebra.modcat
    return cat.direct_sum([projective(algebra, v) for v in algebra.vertices()])


# -- morphism calculus -----------------------------------------------------


def hom_module(m: ModuleRep, n: ModuleRep):
    """Basis of the Hom space as a list of Mors."""
    return m.algebra.modcat.hom(m, n).basis


def is_isomorphism(f: Mor) -> bool:
    src, tgt = f.src, f.tgt
    if any(src.dims[s] != tgt.dims[s] for s in src.slots):
        return False
    return all(
        f.payload[s].rank() == src.dims[s] for s in src.slots if src.dims[s]
    )


def invert(f: Mor) -> Mor:
    if not is_isomorphism(f):
        raise InputError("morphism is not invertible")
    cat = f.cat
    blocks = {}
    for s in f.src.slots:
        n = f.src.dims[s]
        m = f.payload[s]
        inv = Mat.zeros(cat.field, n, n)
        ident = Mat.identity(cat.field, n)
        for j in range(n):
            col = m.solve([ident.data[i][j] for i in range(n)])
            for i in range(n):
                inv.data[i][j] = col[i]
        blocks[s] = inv
    return Mor(cat, f.tgt, f.src, blocks)


def submodule(m: ModuleRep, spaces) -> tuple[ModuleRep, Mor]:
    """Sub-representation spanned by per-slot subspaces, with its inclusion."""
    cat = m.algebra.modcat
    field = m.algebra.field
    bases = {s: [list(v) for v in spaces[s].basis] for s in m.slots}
    dims = {s: len(bases[s]) for s in m.slots}

    def induced(mat, s_src, s_tgt):
        out = Mat.zeros(field, dims[s_tgt], dims[s_src])
        tgt_mat = Mat(
            field,
            [[bases[s_tgt][j][i] for j in range(dims[s_tgt])] for i in range(m.dims[s_tgt])],
            m.dims[s_tgt],
            dims[s_tgt],
        )
        for j, vec in enumerate(bases[s_src]):
            img = mat.apply(vec)
            coeff = tgt_mat.solve(img)
            if coeff is None:
                raise InputError("subspaces are not closed under the action")
            for i in range(dims[s_tgt]):
                out.data[i][j] = coeff[i]
        return out

    mats = {}
    if m.kind == "quiver":
        for name, s, t in m.algebra.presentation.quiver.arrows:
            mats[name] = induced(m.mats[name], s, t)
    else:
        for bname in m.algebra.basis_names:
            mats[bname] = induced(m.mats[bname], "*", "*")
    sub = ModuleRep(m.algebra, dims, mats, m.kind, name=f"sub({m.name})", check=False)
    incl_blocks = {
        s: Mat(
            field,
            [[bases[s][j][i] for j in range(dims[s])] for i in range(m.dims[s])],
            m.dims[s],
            dims[s],
        )
        for s in m.slots
    }
    return sub, Mor(cat, sub, m, incl_blocks)


def quotient_module(m: ModuleRep, spaces) -> tuple[ModuleRep, Mor]:
    """Quotient by an invariant family of per-slot subspaces, with projection."""
    cat = m.algebra.modcat
    field = m.algebra.field
    reps, proj_mats, dims = {}, {}, {}
    for s in m.slots:
        full = Subspace.full(field, m.dims[s])
        reps[s] = full.quotient_basis(spaces[s])
        dims[s] = len(reps[s])
        # projection: reduce mod the subspace, then express in coset reps
        cols = reps[s] + [list(v) for v in spaces[s].basis]
        solver_mat = Mat(
            field,
            [[cols[j][i] for j in range(len(cols))] for i in range(m.dims[s])],
            m.dims[s],
            len(cols),
        )
        pm = Mat.zeros(field, dims[s], m.dims[s])
        ident = Mat.identity(field, m.dims[s])
        for j in range(m.dims[s]):
            sol = solver_mat.solve([ident.data[i][j] for i in range(m.dims[s])])
            for i in range(dims[s]):
                pm.data[i][j] = sol[i]
        proj_mats[s] = pm

    def induced(mat, s_src, s_tgt):
        out = Mat.zeros(field, dims[s_tgt], dims[s_src])
        for j, vec in enumerate(reps[s_src]):
            img = proj_mats[s_tgt].apply(mat.apply(vec))
            for i in range(dims[s_tgt]):
                out.data[i][j] = img[i]
        return out

    mats = {}
    if m.kind == "quiver":
        for name, s, t in m.algebra.presentation.quiver.arrows:
            mats[name] = induced(m.mats[name], s, t)
    else:
        for bname in m.algebra.basis_names:
            mats[bname] = induced(m.mats[bname], "*", "*")
    quot = ModuleRep(m.algebra, dims, mats, m.kind, name=f"quot({m.name})", check=False)
    return quot, Mor(cat, m, quot, proj_mats)


def kernel_module(f: Mor) -> tuple[ModuleRep, Mor]:
    from .exactla import kernel as mat_kernel

    spaces = {s: mat_kernel(f.payload[s]) for s in f.src.slots}
    return submodule(f.src, spaces)


def image_module(f: Mor) -> tuple[ModuleRep, Mor]:
    field = f.cat.field
    spaces = {
        s: Subspace.from_vectors(
            field,
            f.tgt.dims[s],
            [[f.payload[s].data[i][j] for i in range(f.tgt.dims[s])] for j in range(f.src.dims[s])],
        )
        for s in f.src.slots
    }
    return submodule(f.tgt, spaces)


def _require_quiver(m: ModuleRep):
    if m.kind != "quiver":
        raise InputError("structural operations need a quiver-presented module")


def radical(m: ModuleRep) -> tuple[ModuleRep, Mor]:
    """Span of all arrow images, with its inclusion."""
    _require_quiver(m)
    field = m.algebra.field
    spaces = {s: Subspace.zero(field, m.dims[s]) for s in m.slots}
    for name, s, t in m.algebra.presentation.quiver.arrows:
        mat = m.mats[name]
        cols = [[mat.data[i][j] for i in range(mat.rows)] for j in range(mat.cols)]
        spaces[t] = spaces[t] + Subspace.from_vectors(field, m.dims[t], cols)
    return submodule(m, spaces)


def socle(m: ModuleRep) -> tuple[ModuleRep, Mor]:
    """Joint kernel of all arrow actions, with its inclusion."""
    _require_quiver(m)
    field = m.algebra.field
    spaces = {s: Subspace.full(field, m.dims[s]) for s in m.slots}
    for name, s, t in m.algebra.presentation.quiver.arrows:
        from .exactla import kernel as mat_kernel

        spaces[s] = spaces[s].intersect(mat_kernel(m.mats[name]))
    return submodule(m, spaces)


def top(m: ModuleRep) -> tuple[ModuleRep, Mor]:
    """Quotient by the radical, with its projection."""
    _require_quiver(m)
    field = m.algebra.field
    spaces = {s: Subspace.zero(field, m.dims[s]) for s in m.slots}
    for name, s, t in m.algebra.presentation.quiver.arrows:
        mat = m.mats[name]
        cols = [[mat.data[i][j] for i in range(mat.rows)] for j in range(mat.cols)]
        spaces[t] = spaces[t] + Subspace.from_vectors(field, m.dims[t], cols)
    return quotient_module(m, spaces)


def radical_layers(m: ModuleRep):
    """Tops of the radical filtration, as vertex -> dim dicts (top first)."""
    _require_quiver(m)
    layers = []
    current = m
    while current.total_dim:
        t, _ = top(current)
        layers.append({s: t.dims[s] for s in t.slots if t.dims[s]})
        current, _ = radical(current)
    return layers


def find_isomorphism(m: ModuleRep, n: ModuleRep, rng=None, tries: int = 64):
    """('yes', f) / ('no', None) / ('undecided', None).

    Sound for yes; 'no' only when dimension counts already rule an iso out.
    """
    if any(m.dims[s] != n.dims[s] for s in m.slots):
        return "no", None
    cat = m.algebra.modcat
    basis = cat.hom(m, n).basis
    if m.total_dim == 0:
        return "yes", cat.zero_mor(m, n)
    for f in basis:
        if is_isomorphism(f):
            return "yes", f
    back = cat.hom(n, m).dim
    if not basis or not back:
        return "no", None
    if rng is not None:
        field = m.algebra.field
        for _ in range(tries):
            f = cat.zero_mor(m, n)
            for b in basis:
                c = field.random(rng)
                if c:
                    f = f + b.scale(c)
            if is_isomorphism(f):
                return "yes", f
    return "undecided", None


def nakayama_projective(algebra: Algebra, p: ModuleRep) -> ModuleRep:
    """The Nakayama functor on a direct sum of indecomposable projectives:
    the dual of Hom(p, A), graded by Hom(p, P_i)."""
    if p.proj_summands is None:
        raise InputError("nakayama_projective needs a certified projective module")
    cat = algebra.modcat
    projs = {v: projective(algebra, v) for v in algebra.vertices()}
    hom_bases = {v: cat.hom(p, projs[v]).basis for v in algebra.vertices()}
    dims = {v: len(hom_bases[v]) for v in algebra.vertices()}
    mats = {}
    for name, s, t in algebra.presentation.quiver.arrows:
        # left multiplication by the arrow: P_t -> P_s
        pres = algebra.presentation
        lmul_blocks = {}
        src_paths = {
            v: [q for q in pres.paths if q.source == t and q.target == v]
            for v in algebra.vertices()
        }
        tgt_paths = {
            v: [q for q in pres.paths if q.source == s and q.target == v]
            for v in algebra.vertices()
        }
        for v in algebra.vertices():
            blk = Mat.zeros(algebra.field, len(tgt_paths[v]), len(src_paths[v]))
            for j, q in enumerate(src_paths[v]):
                word = (name,) + q.arrows
                if not _contains_factor(word, pres.relations):
                    lifted = Path(word, s, v)
                    try:
                        i = tgt_paths[v].index(lifted)
                    except ValueError:
                        continue
                    blk.data[i][j] = algebra.field.one
            lmul_blocks[v] = blk
        lmul = cat.mor(projs[t], projs[s], lmul_blocks)
        # postcompose: Hom(p, P_t) -> Hom(p, P_s); the dual runs s -> t
        hom_s = cat.hom(p, projs[s])
        bmat = Mat.zeros(algebra.field, dims[s], dims[t])
        for j, f in enumerate(hom_bases[t]):
            coords = hom_s.coords(f.then(lmul).payload)
            for i in range(dims[s]):
                bmat.data[i][j] = coords[i]
        mats[name] = bmat.transpose()
    return ModuleRep(
        algebra, dims, mats, "quiver", name=f"nu({p.name})", check=True
    )
