"""A small interface for additive categories with computable Hom spaces.

Everything downstream (ideals, approximations, complexes, the theorem
engines) is written against this interface.  A category provides, for any
pair of objects, a finite-dimensional Hom space with a distinguished basis
and exact coordinates; morphisms are opaque payloads manipulated through
the owning category.

Composition is written left to right throughout: ``f.then(g)`` is "f
followed by g".
"""

from __future__ import annotations

import itertools

from .errors import InputError, InternalConsistencyError
from .exactla import LinSolver, Mat, Subspace

_KEYS = itertools.count()


def fresh_key() -> int:
    """Unique token for object identity / Hom caching."""
    return next(_KEYS)


class Mor:
    """A morphism: source, target and a category-specific payload."""

    __slots__ = ("cat", "src", "tgt", "payload")

    def __init__(self, cat, src, tgt, payload):
        self.cat = cat
        self.src = src
        self.tgt = tgt
        self.payload = payload

    def then(self, other: "Mor") -> "Mor":
        """Composite self-then-other (left-to-right)."""
        if other.cat is not self.cat:
            raise InputError("cannot compose morphisms from different categories")
        if other.src is not self.tgt and other.src.key != self.tgt.key:
            raise InputError("composition target/source mismatch")
        return Mor(
            self.cat,
            self.src,
            other.tgt,
            self.cat._p_compose(self.src, self.tgt, other.tgt, self.payload, other.payload),
        )

    def __add__(self, other):
        self._same_homset(other)
        return Mor(
            self.cat, self.src, self.tgt, self.cat._p_add(self.payload, other.payload)
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(self.cat.field.neg(self.cat.field.one))

    def scale(self, c):
        return Mor(self.cat, self.src, self.tgt, self.cat._p_scale(c, self.payload))

    def coords(self):
        return self.cat.hom(self.src, self.tgt).coords(self.payload)

    def is_zero(self) -> bool:
        return not any(self.coords())

    def eq(self, other) -> bool:
        """Equality in the category (coordinate-level, so e.g. up to homotopy)."""
        self._same_homset(other)
        return (self - other).is_zero()

    def _same_homset(self, other):
        if (
            other.cat is not self.cat
            or other.src.key != self.src.key
            or other.tgt.key != self.tgt.key
        ):
            raise InputError("morphisms do not live in the same Hom space")

    def __repr__(self):
        return f"Mor({self.src!r} -> {self.tgt!r})"


class HomSpace:
    """A Hom space with basis, exact coordinates and a flat ambient chart.

    ``extra_flats`` are flattened generators to be quotiented away when
    taking coordinates (ideal elements, null-homotopic maps); coordinates
    of a payload are those of its class in the span of basis + extra.
    """

    def __init__(self, cat, src, tgt, basis_payloads, flat_dim, extra_flats=()):
        self.cat = cat
        self.src = src
        self.tgt = tgt
        self.flat_dim = flat_dim
        self.basis = [Mor(cat, src, tgt, p) for p in basis_payloads]
        self.dim = len(self.basis)
        flats = [cat._p_flatten(src, tgt, p) for p in basis_payloads]
        cols = flats + [list(v) for v in extra_flats]
        self._solver = LinSolver(
            Mat(
                cat.field,
                [[cols[j][i] for j in range(len(cols))] for i in range(flat_dim)],
                flat_dim,
                len(cols),
            )
        )

    def coords(self, payload):
        flat = self.cat._p_flatten(self.src, self.tgt, payload)
        sol = self._solver.solve(flat)
        if sol is None:
            raise InternalConsistencyError("morphism outside its computed Hom space")
        return tuple(sol[: self.dim])

    def from_coords(self, vec) -> Mor:
        if len(vec) != self.dim:
            raise InputError("coordinate length mismatch")
        f = self.cat.field
        out = self.zero()
        for c, b in zip(vec, self.basis):
            c = f.coerce(c)
            if c:
                out = out + b.scale(c)
        return out

    def zero(self) -> Mor:
        return Mor(self.cat, self.src, self.tgt, self.cat._p_zero(self.src, self.tgt))

    def __repr__(self):
        return f"HomSpace(dim {self.dim})"


class DirectSumData:
    """A direct sum with its canonical injections and projections."""

    __slots__ = ("obj", "summands", "injections", "projections")

    def __init__(self, obj, summands, injections, projections):
        self.obj = obj
        self.summands = list(summands)
        self.injections = list(injections)
        self.projections = list(projections)


class FiniteCategory:
    """Base class; subclasses implement the payload-level hooks."""

    def __init__(self, field):
        self.field = field
        self._hom_cache = {}
        self._sum_cache = {}

    # -- public API --------------------------------------------------------

    def hom(self, x, y) -> HomSpace:
        key = (x.key, y.key)
        space = self._hom_cache.get(key)
        if space is None:
            space = self._hom_space(x, y)
            self._hom_cache[key] = space
        return space

    def identity(self, x) -> Mor:
        return Mor(self, x, x, self._p_identity(x))

    def zero_mor(self, x, y) -> Mor:
        return Mor(self, x, y, self._p_zero(x, y))

    def direct_sum(self, objs) -> DirectSumData:
        objs = list(objs)
        key = tuple(o.key for o in objs)
        data = self._sum_cache.get(key)
        if data is None:
            data = self._direct_sum(objs)
            self._sum_cache[key] = data
        return data

    def mor_from_blocks(self, src_sum: DirectSumData, tgt_sum: DirectSumData, blocks) -> Mor:
        """Assemble src_sum.obj -> tgt_sum.obj from a matrix of component maps.

        blocks[i][j] is a Mor from src summand i to tgt summand j (or None).
        """
        out = self.zero_mor(src_sum.obj, tgt_sum.obj)
        for i, proj in enumerate(src_sum.projections):
            for j, inj in enumerate(tgt_sum.injections):
                blk = blocks[i][j]
                if blk is not None:
                    out = out + proj.then(blk).then(inj)
        return out

    # -- hooks -------------------------------------------------------------

    def _hom_space(self, x, y) -> HomSpace:
        raise NotImplementedError

    def _direct_sum(self, objs) -> DirectSumData:
        raise NotImplementedError

    def _p_compose(self, x, y, z, fp, gp):
        raise NotImplementedError

    def _p_add(self, fp, gp):
        raise NotImplementedError

    def _p_scale(self, c, fp):
        raise NotImplementedError

    def _p_zero(self, x, y):
        raise NotImplementedError

    def _p_identity(self, x):
        raise NotImplementedError

    def _p_flatten(self, x, y, fp):
        raise NotImplementedError


class QuotientCategory(FiniteCategory):
    """Same objects as the base, Hom spaces divided by an ideal.

    ``ideal_fn(x, y)`` returns the ideal's subspace in the coordinates of
    the base Hom space.  Payloads are base morphisms acting as coset
    representatives.
    """

    def __init__(self, base: FiniteCategory, ideal_fn, label="quotient"):
        super().__init__(base.field)
        self.base = base
        self.ideal_fn = ideal_fn
        self.label = label

    def _hom_space(self, x, y):
        base_hom = self.base.hom(x, y)
        full = Subspace.full(self.field, base_hom.dim)
        ideal = self.ideal_fn(x, y)
        if ideal.ambient != base_hom.dim:
            raise InternalConsistencyError("ideal subspace has wrong ambient dimension")
        reps = full.quotient_basis(ideal)
        payloads = [base_hom.from_coords(v).payload for v in reps]
        return HomSpace(
            self, x, y, payloads, base_hom.dim, extra_flats=[list(v) for v in ideal.basis]
        )

    def _direct_sum(self, objs):
        data = self.base.direct_sum(objs)
        return DirectSumData(
            data.obj,
            data.summands,
            [Mor(self, m.src, m.tgt, m.payload) for m in data.injections],
            [Mor(self, m.src, m.tgt, m.payload) for m in data.projections],
        )

    def _p_compose(self, x, y, z, fp, gp):
        return self.base._p_compose(x, y, z, fp, gp)

    def _p_add(self, fp, gp):
        return self.base._p_add(fp, gp)

    def _p_scale(self, c, fp):
        return self.base._p_scale(c, fp)

    def _p_zero(self, x, y):
        return self.base._p_zero(x, y)

    def _p_identity(self, x):
        return self.base._p_identity(x)

    def _p_flatten(self, x, y, fp):
        return list(self.base.hom(x, y).coords(fp))

    def lift(self, f: Mor) -> Mor:
        """View a base morphism in the quotient (or re-tag a quotient rep)."""
        return Mor(self, f.src, f.tgt, f.payload)
