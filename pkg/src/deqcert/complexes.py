"""Bounded complexes over a FiniteCategory, Hom-total complexes and the
homology conditions used by the equivalence constructions.

Cochain conventions: differentials raise degree, ``d^i: X^i -> X^{i+1}``,
and ``d^i.then(d^{i+1})`` vanishes.  For the Hom-total complex of (x, y),
the degree-n term is the sum of Hom(x^m, y^{m+n}) over m, and

    (df)^m = f^m . d_y^{m+n}  -  (-1)^n  d_x^m . f^{m+1}

(left-to-right composition).  With this sign, degree-0 cycles are chain
maps and degree-0 boundaries are the null-homotopic ones.  The shift x[1]
moves x^{i+1} into degree i and negates the differentials.
"""

from __future__ import annotations

from .category import FiniteCategory, Mor, QuotientCategory, fresh_key
from .catideal import SubcatSpec, ideal_space
from .errors import InputError
from .exactla import Mat, Subspace

__all__ = [
    "Complex",
    "stalk",
    "VectComplex",
    "HomComplex",
    "hom_total_complex",
    "homology_dims",
    "ChainMap",
    "chain_map_space",
    "null_homotopic_space",
    "check_thm1_conditions",
    "self_orthogonality_check",
    "complex_in_quotient",
]


class Complex:
    """A bounded complex: objects at degrees lo..hi, differentials between."""

    def __init__(self, cat: FiniteCategory, lo: int, objs, diffs, check=True):
        self.cat = cat
        self.lo = int(lo)
        self.objs = list(objs)
        self.hi = self.lo + len(self.objs) - 1
        self.diffs = {}
        for i, d in enumerate(diffs):
            deg = self.lo + i
            if d is None:
                d = cat.zero_mor(self.objs[i], self.objs[i + 1])
            self.diffs[deg] = d
        if len(self.objs) >= 1 and len(self.diffs) != len(self.objs) - 1:
            raise InputError("need exactly one differential per consecutive pair")
        self.key = fresh_key()
        if check:
            self.validate()

    def validate(self):
        for deg, d in self.diffs.items():
            if d.src.key != self.objs[deg - self.lo].key or d.tgt.key != self.objs[
                deg - self.lo + 1
            ].key:
                raise InputError(f"differential at degree {deg} has wrong endpoints")
            nxt = self.diffs.get(deg + 1)
            if nxt is not None and not d.then(nxt).is_zero():
                raise InputError(f"d.d != 0 at degree {deg}")

    def obj(self, i):
        if self.lo <= i <= self.hi:
            return self.objs[i - self.lo]
        return None

    def diff(self, i):
        return self.diffs.get(i)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def shift(self, k: int) -> "Complex":
        """x[k]: degree i holds x^{i+k}; differentials pick up (-1)^k."""
        sign = self.cat.field.one if k % 2 == 0 else self.cat.field.neg(
            self.cat.field.one
        )
        diffs = [
            self.diffs[self.lo + i].scale(sign) for i in range(len(self.objs) - 1)
        ]
        return Complex(self.cat, self.lo - k, list(self.objs), diffs, check=False)

    def __repr__(self):
        return f"Complex([{self.lo}, {self.hi}])"


def stalk(cat: FiniteCategory, obj, degree: int = 0) -> Complex:
    return Complex(cat, degree, [obj], [], check=False)


class VectComplex:
    """Degree-indexed dimensions with matrices raising degree by one."""

    def __init__(self, field, lo: int, dims, mats):
        self.field = field
        self.lo = int(lo)
        self.dims = list(dims)
        self.hi = self.lo + len(self.dims) - 1
        self.mats = list(mats)  # mats[i]: dims[i+1] x dims[i]
        for i, m in enumerate(self.mats):
            if m.shape != (self.dims[i + 1], self.dims[i]):
                raise InputError(f"matrix {i} has shape {m.shape}")
            if i + 1 < len(self.mats):
                prod = self.mats[i + 1] * m
                if not prod.is_zero():
                    raise InputError("consecutive matrices do not compose to zero")

    def dim(self, n):
        if self.lo <= n <= self.hi:
            return self.dims[n - self.lo]
        return 0

    def mat(self, n):
        """The differential leaving degree n (zero-shaped when absent)."""
        i = n - self.lo
        if 0 <= i < len(self.mats):
            return self.mats[i]
        return Mat.zeros(self.field, self.dim(n + 1), self.dim(n))


def homology_dims(v: VectComplex) -> dict:
    out = {}
    for n in range(v.lo, v.hi + 1):
        d_out = v.mat(n)
        d_in = v.mat(n - 1)
        ker = v.dim(n) - d_out.rank()
        out[n] = ker - d_in.rank()
    return out


class HomComplex:
    """The Hom-total complex of a pair of complexes, with block structure.

    Degree-n vectors are concatenations of Hom(x^m, y^{m+n}) coordinates,
    blocks ordered by increasing m.
    """

    def __init__(self, cat: FiniteCategory, x: Complex, y: Complex):
        if x.cat is not cat or y.cat is not cat:
            raise InputError("complexes live in a different category")
        self.cat = cat
        self.x = x
        self.y = y
        self.lo = y.lo - x.hi
        self.hi = y.hi - x.lo
        self.blocks = {}  # degree -> list of (m, HomSpace)
        for n in range(self.lo, self.hi + 1):
            blocks = []
            for m in range(max(x.lo, y.lo - n), min(x.hi, y.hi - n) + 1):
                blocks.append((m, cat.hom(x.obj(m), y.obj(m + n))))
            self.blocks[n] = blocks
        dims = [self.dim(n) for n in range(self.lo, self.hi + 1)]
        mats = [self._diff_matrix(n) for n in range(self.lo, self.hi)]
        self.vect = VectComplex(cat.field, self.lo, dims, mats)

    def dim(self, n):
        return sum(h.dim for (_, h) in self.blocks.get(n, []))

    def maps_from_vec(self, n, vec) -> dict:
        """Coordinate vector of degree n -> {m: Mor(x^m, y^{m+n})}."""
        out, pos = {}, 0
        for m, h in self.blocks[n]:
            out[m] = h.from_coords(list(vec[pos : pos + h.dim]))
            pos += h.dim
        return out

    def vec_from_maps(self, n, maps) -> list:
        out = []
        for m, h in self.blocks[n]:
            f = maps.get(m)
            out.extend(h.coords(f.payload) if f is not None else [self.cat.field.zero] * h.dim)
        return out

    def apply_diff(self, n, maps) -> dict:
        """(df)^m = f^m.d_y - (-1)^n d_x.f^{m+1} from degree n to n+1."""
        field = self.cat.field
        sign = field.one if n % 2 == 0 else field.neg(field.one)
        out = {}
        for m, h in self.blocks.get(n + 1, []):
            term = Mor(self.cat, self.x.obj(m), self.y.obj(m + n + 1), self.cat._p_zero(
                self.x.obj(m), self.y.obj(m + n + 1)
            ))
            f_m = maps.get(m)
            dy = self.y.diff(m + n)
            if f_m is not None and dy is not None:
                term = term + f_m.then(dy)
            f_next = maps.get(m + 1)
            dx = self.x.diff(m)
            if f_next is not None and dx is not None:
                term = term - dx.then(f_next).scale(sign)
            out[m] = term
        return out

    def _diff_matrix(self, n) -> Mat:
        field = self.cat.field
        rows, cols = self.dim(n + 1), self.dim(n)
        out = Mat.zeros(field, rows, cols)
        j = 0
        for m, h in self.blocks[n]:
            for b in h.basis:
                img = self.apply_diff(n, {m: b})
                col = self.vec_from_maps(n + 1, img)
                for i in range(rows):
                    out.data[i][j] = col[i]
                j += 1
        return out

    def cycles(self, n) -> Subspace:
        d = self.vect.mat(n)
        if self.dim(n) == 0:
            return Subspace.zero(self.cat.field, 0)
        return Subspace.from_vectors(self.cat.field, self.dim(n), d.kernel_basis())

    def boundaries(self, n) -> Subspace:
        d = self.vect.mat(n - 1)
        cols = [[d.data[i][j] for i in range(d.rows)] for j in range(d.cols)]
        return Subspace.from_vectors(self.cat.field, self.dim(n), cols)


def hom_total_complex(x: Complex, y: Complex) -> VectComplex:
    return HomComplex(x.cat, x, y).vect


class ChainMap:
    """A degreewise family of morphisms x -> y (degree shift already folded
    into y when needed); closed under the obvious linear structure."""

    def __init__(self, x: Complex, y: Complex, maps: dict):
        self.x = x
        self.y = y
        self.maps = dict(maps)

    def component(self, i) -> Mor | None:
        return self.maps.get(i)

    def then(self, other: "ChainMap") -> "ChainMap":
        maps = {}
        for i, f in self.maps.items():
            g = other.maps.get(i)
            if g is not None:
                maps[i] = f.then(g)
        return ChainMap(self.x, other.y, maps)

    def __add__(self, other):
        maps = dict(self.maps)
        for i, g in other.maps.items():
            maps[i] = maps[i] + g if i in maps else g
        return ChainMap(self.x, self.y, maps)

    def scale(self, c):
        return ChainMap(self.x, self.y, {i: f.scale(c) for i, f in self.maps.items()})

    def is_chain_map(self) -> bool:
        for i in self.x.degrees():
            dx, dy = self.x.diff(i), self.y.diff(i)
            if dx is None or dy is None:
                continue
            f_i, f_next = self.maps.get(i), self.maps.get(i + 1)
            lhs = (
                f_i.then(dy)
                if f_i is not None
                else self.x.cat.zero_mor(self.x.obj(i), self.y.obj(i + 1))
            )
            rhs = (
                dx.then(f_next)
                if f_next is not None
                else self.x.cat.zero_mor(self.x.obj(i), self.y.obj(i + 1))
            )
            if not (lhs - rhs).is_zero():
                return False
        return True


def chain_map_space(hc: HomComplex):
    """(subspace of degree-0 cycles, list of basis ChainMaps)."""
    cyc = hc.cycles(0)
    basis = [ChainMap(hc.x, hc.y, hc.maps_from_vec(0, list(v))) for v in cyc.basis]
    return cyc, basis


def null_homotopic_space(hc: HomComplex) -> Subspace:
    return hc.boundaries(0)


def complex_in_quotient(qcat: QuotientCategory, cx: Complex) -> Complex:
    diffs = [qcat.lift(cx.diffs[cx.lo + i]) for i in range(len(cx.objs) - 1)]
    return Complex(qcat, cx.lo, list(cx.objs), diffs, check=False)


# -- hypothesis checkers ---------------------------------------------------


def check_thm1_conditions(q: Complex, m) -> dict:
    """The three homology conditions for a sequence 0->X->Q^1..Q^n->Y->0.

    q must have X in degree 0 and Y in degree n+1.
    """
    if q.lo != 0 or q.hi < 2:
        raise InputError("sequence must run from degree 0 to n+1 with n >= 1")
    n = q.hi - 1
    cat = q.cat
    m_stalk = stalk(cat, m)
    x_stalk = stalk(cat, q.obj(0))
    y_stalk = stalk(cat, q.obj(n + 1))

    h_m_q = homology_dims(hom_total_complex(m_stalk, q))
    h_q_m = homology_dims(hom_total_complex(q, m_stalk))
    h_x_q = homology_dims(hom_total_complex(x_stalk, q))
    h_q_y = homology_dims(hom_total_complex(q, y_stalk))

    failing = []
    c1 = True
    for i, d in h_m_q.items():
        if i != 0 and d != 0:
            c1 = False
            failing.append(("c1", i, d))
    c2 = True
    for i, d in h_q_m.items():
        if i != -n - 1 and d != 0:
            c2 = False
            failing.append(("c2", i, d))
    c3 = True
    if h_x_q.get(1, 0) != 0:
        c3 = False
        failing.append(("c3", 1, h_x_q.get(1, 0)))
    if h_q_y.get(-n, 0) != 0:
        c3 = False
        failing.append(("c3", -n, h_q_y.get(-n, 0)))
    return {"n": n, "c1": c1, "c2": c2, "c3": c3, "failing": failing, "ok": c1 and c2 and c3}


def self_orthogonality_check(p: Complex, spec: SubcatSpec, variant: str) -> dict:
    """Hypotheses and conclusion of the self-orthogonality lemmas.

    variant "left": p on [0, n] with p^i in the subcategory for i > 0;
    conclusion checked over C/L and C/I.  variant "right": p on [-n, 0]
    with p^i in the subcategory for i < 0; conclusion over C/R and C/J.
    """
    if variant not in ("left", "right"):
        raise InputError("variant must be 'left' or 'right'")
    cat = p.cat
    if len(spec.generators) != 1:
        m_obj = spec.sum_of(spec.generators).obj
    else:
        m_obj = spec.generators[0]
    m_stalk = stalk(cat, m_obj)
    n = p.hi - p.lo
    h_m_p = homology_dims(hom_total_complex(m_stalk, p))
    h_p_m = homology_dims(hom_total_complex(p, m_stalk))

    if variant == "left":
        hyp1 = all(d == 0 for i, d in h_m_p.items() if i not in (0, n))
        hyp2 = all(d == 0 for i, d in h_p_m.items() if i != -n)
        kinds = ("L", "I")
    else:
        hyp1 = all(d == 0 for i, d in h_m_p.items() if i != -n)
        hyp2 = all(d == 0 for i, d in h_p_m.items() if i not in (0, n))
        kinds = ("R", "J")

    conclusion = {}
    for kind in kinds:
        qcat = QuotientCategory(
            cat, lambda a, b, k=kind: ideal_space(cat, spec, a, b, k), label=kind
        )
        pq = complex_in_quotient(qcat, p)
        h_self = homology_dims(hom_total_complex(pq, pq))
        bad = {i: d for i, d in h_self.items() if i != 0 and d != 0}
        conclusion[kind] = {"self_orthogonal": not bad, "nonzero": bad}
    return {
        "hyp1": hyp1,
        "hyp2": hyp2,
        "conclusion": conclusion,
        "ok": all(c["self_orthogonal"] for c in conclusion.values()),
    }
