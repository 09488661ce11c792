"""Finite-dimensional G-graded linear algebra and the pre-rigid structure of Vec_G^alpha.

Every space carries an ordered basis per degree and every map is a family of
exact matrices, one block per source degree. Blocks are stored as lists of
rows (target index) by columns (source index); absent blocks are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional

from config.logger import get_logger
from services.grading import (
    AbelianGroup,
    Bicharacter,
    GradingError,
    GroupElement,
    SignatureError,
    bicharacter_validate,
    group_inv,
    group_op,
)
from utils import linalg
from utils.scalars import Scalar, ScalarDomain

logger = get_logger(__name__)

Basis = tuple[GroupElement, int]
TensorEntry = tuple[GroupElement, int, GroupElement, int]


class ShapeError(ValueError):
    """Raised when spaces or block shapes do not match."""
    pass


class ShiftError(ValueError):
    """Raised when an operation needs a degree-preserving map."""
    pass


class ZeroDegreeDualError(ValueError):
    """Raised when the zero-degree dual is taken outside the nonnegatively graded case."""
    pass


@dataclass(frozen=True)
class GradedVectorSpace:
    group: AbelianGroup
    dims: tuple[tuple[GroupElement, int], ...] = ()

    def __post_init__(self):
        items = self.dims.items() if isinstance(self.dims, Mapping) else self.dims
        merged: dict[GroupElement, int] = {}
        for g, d in items:
            if g.group != self.group:
                raise SignatureError(f"degree {g} does not belong to {self.group}")
            if d < 0:
                raise ShapeError(f"negative dimension {d} in degree {g}")
            if d:
                merged[g] = merged.get(g, 0) + d
        object.__setattr__(self, "dims", tuple(sorted(merged.items())))

    def dim(self, g: GroupElement) -> int:
        return self._dim_map.get(g, 0)

    @property
    def _dim_map(self) -> dict[GroupElement, int]:
        return dict(self.dims)

    @property
    def degrees(self) -> list[GroupElement]:
        return [g for g, _ in self.dims]

    @property
    def total_dim(self) -> int:
        return sum(d for _, d in self.dims)

    def basis(self) -> list[Basis]:
        return [(g, i) for g, d in self.dims for i in range(d)]

    def describe(self) -> dict:
        return {"dims": {self.group.format_degree(g): d for g, d in self.dims}}


@dataclass(frozen=True, eq=False)
class GradedVector:
    space: GradedVectorSpace
    entries: dict[Basis, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {b: c for b, c in self.entries.items() if c}
        for g, i in clean:
            if not 0 <= i < self.space.dim(g):
                raise ShapeError(f"basis index ({g}, {i}) outside {self.space.describe()}")
        object.__setattr__(self, "entries", clean)

    @property
    def is_homogeneous(self) -> bool:
        return len({g for g, _ in self.entries}) <= 1

    @property
    def degree(self) -> Optional[GroupElement]:
        degrees = {g for g, _ in self.entries}
        return degrees.pop() if len(degrees) == 1 else None

    def __eq__(self, other):
        return (
            isinstance(other, GradedVector)
            and self.space == other.space
            and self.entries == other.entries
        )

    __hash__ = None


def basis_vector(space: GradedVectorSpace, b: Basis, domain: ScalarDomain) -> GradedVector:
    return GradedVector(space, {b: domain.one})


@dataclass(frozen=True)
class BraidedContext:
    """The ambient braided category Vec_G^alpha."""

    group: AbelianGroup
    alpha: Bicharacter
    domain: ScalarDomain

    def __post_init__(self):
        if self.alpha.group != self.group:
            raise SignatureError("bicharacter and context use different groups")
        report = bicharacter_validate(self.alpha)
        if not report.valid:
            raise GradingError(f"invalid bicharacter: {'; '.join(report.failures)}")

    @classmethod
    def trivial(cls, domain: ScalarDomain, group: Optional[AbelianGroup] = None) -> "BraidedContext":
        group = group or AbelianGroup()
        return cls(group, Bicharacter.trivial(group, domain), domain)

    def space(self, dims: Mapping) -> GradedVectorSpace:
        """Space from a mapping whose keys are GroupElements, coordinate tuples or degree strings."""
        converted = {}
        for key, d in dims.items():
            if isinstance(key, GroupElement):
                g = key
            elif isinstance(key, str):
                g = self.group.parse_degree(key)
            else:
                g = self.group.element(key if isinstance(key, tuple) else (key,))
            converted[g] = converted.get(g, 0) + d
        return GradedVectorSpace(self.group, tuple(converted.items()))

    @property
    def unit(self) -> GradedVectorSpace:
        return unit_space(self.group)

    def degree(self, coords) -> GroupElement:
        if isinstance(coords, str):
            return self.group.parse_degree(coords)
        return self.group.element(coords if isinstance(coords, tuple) else (coords,))


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    source: GradedVectorSpace
    target: GradedVectorSpace
    shift: GroupElement
    blocks: dict[GroupElement, list[list[Scalar]]]
    domain: ScalarDomain

    def __post_init__(self):
        if self.source.group != self.target.group or self.shift.group != self.source.group:
            raise SignatureError("map source, target and shift use different groups")
        clean = {}
        for h, block in self.blocks.items():
            rows = self.target.dim(group_op(h, self.shift))
            cols = self.source.dim(h)
            if not rows or not cols:
                if any(any(r) for r in block):
                    raise ShapeError(f"nonzero block in degree {h} between empty components")
                continue
            if len(block) != rows or any(len(r) != cols for r in block):
                raise ShapeError(
                    f"block in degree {h} must be {rows}x{cols}, got "
                    f"{len(block)}x{len(block[0]) if block else 0}"
                )
            clean[h] = [list(r) for r in block]
        object.__setattr__(self, "blocks", clean)

    def block(self, h: GroupElement) -> list[list[Scalar]]:
        if h in self.blocks:
            return self.blocks[h]
        return linalg.zeros(self.target.dim(group_op(h, self.shift)), self.source.dim(h), self.domain)

    def column(self, b: Basis) -> dict[Basis, Scalar]:
        """Image of one basis vector as a sparse vector of target basis elements."""
        h, i = b
        block = self.blocks.get(h)
        if block is None:
            return {}
        g = group_op(h, self.shift)
        return {(g, r): row[i] for r, row in enumerate(block) if row[i]}

    def apply(self, vector: GradedVector) -> GradedVector:
        if vector.space != self.source:
            raise ShapeError("vector does not live in the map's source")
        out: dict[Basis, Scalar] = {}
        for b, c in vector.entries.items():
            for t, v in self.column(b).items():
                out[t] = out.get(t, self.domain.zero) + c * v
        return GradedVector(self.target, out)

    def is_zero(self) -> bool:
        return not any(any(x for x in row) for block in self.blocks.values() for row in block)

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            return False
        return all(self.block(h) == other.block(h) for h in self.source.degrees)

    __hash__ = None

    def describe(self) -> dict:
        group = self.source.group
        return {
            "shift": group.format_degree(self.shift),
            "blocks": {
                group.format_degree(h): [[self.domain.format(x) for x in row] for row in block]
                for h, block in sorted(self.blocks.items())
            },
        }


def unit_space(group: AbelianGroup) -> GradedVectorSpace:
    return GradedVectorSpace(group, ((group.identity, 1),))


def identity_map(space: GradedVectorSpace, domain: ScalarDomain) -> GradedLinearMap:
    return GradedLinearMap(
        space,
        space,
        space.group.identity,
        {g: linalg.identity(d, domain) for g, d in space.dims},
        domain,
    )


def zero_map(source: GradedVectorSpace, target: GradedVectorSpace, domain: ScalarDomain) -> GradedLinearMap:
    return GradedLinearMap(source, target, source.group.identity, {}, domain)


def map_from_columns(
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    columns: Mapping[Basis, Mapping[Basis, Scalar]],
    domain: ScalarDomain,
) -> GradedLinearMap:
    """Degree-preserving map from the sparse images of source basis vectors."""
    blocks = {g: linalg.zeros(target.dim(g), d, domain) for g, d in source.dims if target.dim(g)}
    for (h, i), image in columns.items():
        for (g, r), c in image.items():
            if g != h:
                raise ShiftError(f"column ({h}, {i}) has a component in degree {g}")
            if c:
                blocks[h][r][i] = c
    return GradedLinearMap(source, target, source.group.identity, blocks, domain)


def compose(g: GradedLinearMap, f: GradedLinearMap) -> GradedLinearMap:
    """g o f."""
    if f.target != g.source:
        raise ShapeError(f"cannot compose: {f.target.describe()} vs {g.source.describe()}")
    shift = group_op(f.shift, g.shift)
    blocks = {}
    for h, fb in f.blocks.items():
        mid = group_op(h, f.shift)
        gb = g.blocks.get(mid)
        if gb is None:
            continue
        blocks[h] = linalg.matmul(gb, fb, len(fb), f.source.dim(h), f.domain)
    return GradedLinearMap(f.source, g.target, shift, blocks, f.domain)


def add(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    if (f.source, f.target, f.shift) != (g.source, g.target, g.shift):
        raise ShapeError("cannot add maps of different types")
    blocks = {}
    for h in f.source.degrees:
        a, b = f.block(h), g.block(h)
        blocks[h] = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return GradedLinearMap(f.source, f.target, f.shift, blocks, f.domain)


def scale(f: GradedLinearMap, c: Scalar) -> GradedLinearMap:
    blocks = {h: [[c * x for x in row] for row in block] for h, block in f.blocks.items()}
    return GradedLinearMap(f.source, f.target, f.shift, blocks, f.domain)


def inverse(f: GradedLinearMap) -> GradedLinearMap:
    if not f.shift.is_identity:
        raise ShiftError("only degree-preserving maps are inverted")
    if f.source != f.target:
        raise ShapeError("source and target dimensions differ; map is not invertible")
    blocks = {}
    for h, d in f.source.dims:
        try:
            blocks[h] = linalg.inverse(f.block(h), d, f.domain)
        except linalg.SingularMatrixError as e:
            raise ShapeError(f"block in degree {h} is singular") from e
    return GradedLinearMap(f.target, f.source, f.shift, blocks, f.domain)


def is_invertible(f: GradedLinearMap) -> bool:
    if not f.shift.is_identity or f.source != f.target:
        return False
    return all(linalg.rank(f.block(h), d) == d for h, d in f.source.dims)


@dataclass(frozen=True)
class TensorLayout:
    """Ordered basis of V (x) W: per degree g, entries (x, i, y, j) with x*y = g."""

    space: GradedVectorSpace
    entries: dict[GroupElement, list[TensorEntry]]
    position: dict[TensorEntry, int]


@lru_cache(maxsize=4096)
def tensor_layout(v: GradedVectorSpace, w: GradedVectorSpace) -> TensorLayout:
    if v.group != w.group:
        raise SignatureError("cannot tensor spaces over different groups")
    entries: dict[GroupElement, list[TensorEntry]] = {}
    for x, dx in v.dims:
        for y, dy in w.dims:
            g = group_op(x, y)
            bucket = entries.setdefault(g, [])
            bucket.extend((x, i, y, j) for i in range(dx) for j in range(dy))
    for bucket in entries.values():
        bucket.sort(key=lambda e: (e[0], e[1], e[3]))
    position = {e: k for bucket in entries.values() for k, e in enumerate(bucket)}
    space = GradedVectorSpace(v.group, tuple((g, len(b)) for g, b in entries.items()))
    return TensorLayout(space, entries, position)


def tensor_space(v: GradedVectorSpace, w: GradedVectorSpace) -> GradedVectorSpace:
    return tensor_layout(v, w).space


def tensor_basis(v: GradedVectorSpace, w: GradedVectorSpace, a: Basis, b: Basis) -> Basis:
    """Basis element of V (x) W corresponding to a (x) b."""
    entry = (a[0], a[1], b[0], b[1])
    return group_op(a[0], b[0]), tensor_layout(v, w).position[entry]


def tensor_map(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """Kronecker-block map f (x) g with shift shift(f)*shift(g)."""
    if f.domain != g.domain:
        raise ShapeError("maps over different scalar domains")
    src = tensor_layout(f.source, g.source)
    dst = tensor_layout(f.target, g.target)
    shift = group_op(f.shift, g.shift)
    blocks = {}
    for s, bucket in src.entries.items():
        t = group_op(s, shift)
        rows = dst.space.dim(t)
        if not rows:
            continue
        block = linalg.zeros(rows, len(bucket), f.domain)
        for c, (x, i, y, j) in enumerate(bucket):
            fx = f.blocks.get(x)
            gy = g.blocks.get(y)
            if fx is None or gy is None:
                continue
            x2, y2 = group_op(x, f.shift), group_op(y, g.shift)
            for i2, frow in enumerate(fx):
                a = frow[i]
                if not a:
                    continue
                for j2, grow in enumerate(gy):
                    b = grow[j]
                    if b:
                        block[dst.position[(x2, i2, y2, j2)]][c] = a * b
        blocks[s] = block
    return GradedLinearMap(src.space, dst.space, shift, blocks, f.domain)


def _monomial_map(
    source_layout: TensorLayout,
    target_layout: TensorLayout,
    rule,
    domain: ScalarDomain,
) -> GradedLinearMap:
    """Degree-preserving map sending each tensor basis entry to one scaled entry."""
    blocks = {}
    for g, bucket in source_layout.entries.items():
        block = linalg.zeros(target_layout.space.dim(g), len(bucket), domain)
        for c, entry in enumerate(bucket):
            image, coefficient = rule(entry)
            block[target_layout.position[image]][c] = coefficient
        blocks[g] = block
    group = source_layout.space.group
    return GradedLinearMap(source_layout.space, target_layout.space, group.identity, blocks, domain)


def braiding(v: GradedVectorSpace, w: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """c_{V,W}: v (x) w -> alpha(g, h) w (x) v."""
    return _monomial_map(
        tensor_layout(v, w),
        tensor_layout(w, v),
        lambda e: ((e[2], e[3], e[0], e[1]), ctx.alpha(e[0], e[2])),
        ctx.domain,
    )


def braiding_inverse(v: GradedVectorSpace, w: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """Inverse of c_{V,W}: w (x) v -> alpha(g, h)^-1 v (x) w."""
    return _monomial_map(
        tensor_layout(w, v),
        tensor_layout(v, w),
        lambda e: ((e[2], e[3], e[0], e[1]), 1 / ctx.alpha(e[2], e[0])),
        ctx.domain,
    )


def monodromy(v: GradedVectorSpace, w: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """Double braiding c_{W,V} o c_{V,W}."""
    return compose(braiding(w, v, ctx), braiding(v, w, ctx))


def dual_space(v: GradedVectorSpace) -> GradedVectorSpace:
    return GradedVectorSpace(v.group, tuple((group_inv(g), d) for g, d in v.dims))


def evaluation(v: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """ev_V: V^dual (x) V -> k, pairing dual basis vectors with primal ones."""
    layout = tensor_layout(dual_space(v), v)
    e = ctx.group.identity
    bucket = layout.entries.get(e, [])
    row = [ctx.domain.one if i == j else ctx.domain.zero for (_, i, _, j) in bucket]
    blocks = {e: [row]} if bucket else {}
    return GradedLinearMap(layout.space, unit_space(ctx.group), e, blocks, ctx.domain)


def dual_map(f: GradedLinearMap) -> GradedLinearMap:
    """f^dual: W^dual -> V^dual, g |-> g o f."""
    if not f.shift.is_identity:
        raise ShiftError("the dual is only taken of degree-preserving maps")
    source, target = dual_space(f.target), dual_space(f.source)
    blocks = {}
    for h, block in f.blocks.items():
        rows, cols = f.target.dim(h), f.source.dim(h)
        blocks[group_inv(h)] = linalg.transpose(block, rows, cols)
    return GradedLinearMap(source, target, f.shift, blocks, f.domain)


def _diagonal(v: GradedVectorSpace, coefficient, domain: ScalarDomain) -> GradedLinearMap:
    blocks = {}
    for g, d in v.dims:
        c = coefficient(g)
        block = linalg.zeros(d, d, domain)
        for i in range(d):
            block[i][i] = c
        blocks[g] = block
    return GradedLinearMap(v, dual_space(dual_space(v)), v.group.identity, blocks, domain)


def eta_map(v: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """eta_V(x)(f) = alpha(a, a)^-1 f(x) for x of degree a."""
    return _diagonal(v, lambda a: 1 / ctx.alpha(a, a), ctx.domain)


def j_map(v: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """j_V(x)(f) = alpha(a, a) f(x) for x of degree a."""
    return _diagonal(v, lambda a: ctx.alpha(a, a), ctx.domain)


def phi2(v: GradedVectorSpace, w: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """phi2(V, W): V^dual (x) W^dual -> (V (x) W)^dual, f (x) g |-> alpha(a, b) f.g."""
    src = tensor_layout(dual_space(v), dual_space(w))
    primal = tensor_layout(v, w)
    target = dual_space(primal.space)
    blocks = {}
    for g, bucket in src.entries.items():
        block = linalg.zeros(target.dim(g), len(bucket), ctx.domain)
        for c, (a, i, b, j) in enumerate(bucket):
            row = primal.position[(group_inv(a), i, group_inv(b), j)]
            block[row][c] = ctx.alpha(a, b)
        blocks[g] = block
    return GradedLinearMap(src.space, target, ctx.group.identity, blocks, ctx.domain)


def phi0(ctx: BraidedContext) -> GradedLinearMap:
    """phi0: k -> k^dual, lambda |-> lambda 1_k."""
    return identity_map(unit_space(ctx.group), ctx.domain)


def psi2(x: GradedVectorSpace, y: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """Colax comparison obtained from (phi2, eta, j) by the lax-to-colax transfer.

    The composite is (eta_X (x) eta_Y)^dual o phi2(X^dual, Y^dual)^dual o j_{X^dual (x) Y^dual};
    it equals phi2(X, Y) o monodromy(X^dual, Y^dual).
    """
    xd, yd = dual_space(x), dual_space(y)
    unit_side = j_map(tensor_space(xd, yd), ctx)
    lax_side = dual_map(phi2(xd, yd, ctx))
    counit_side = dual_map(tensor_map(eta_map(x, ctx), eta_map(y, ctx)))
    return compose(counit_side, compose(lax_side, unit_side))


def psi0(ctx: BraidedContext) -> GradedLinearMap:
    return compose(dual_map(phi0(ctx)), j_map(unit_space(ctx.group), ctx))


def curry(t: GradedLinearMap, tspace: GradedVectorSpace, x: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """The morphism u: T -> X^dual with ev_X o (u (x) X) = t."""
    layout = tensor_layout(tspace, x)
    if t.source != layout.space or t.target != unit_space(ctx.group):
        raise ShapeError("curry expects a morphism T (x) X -> k")
    if not t.shift.is_identity:
        raise ShiftError("curry expects a degree-preserving map")
    e = ctx.group.identity
    row = t.block(e)[0] if layout.space.dim(e) else []
    xd = dual_space(x)
    blocks = {}
    for a, p_dim in tspace.dims:
        q_dim = xd.dim(a)
        if not q_dim:
            continue
        ainv = group_inv(a)
        blocks[a] = [
            [row[layout.position[(a, p, ainv, q)]] for p in range(p_dim)]
            for q in range(q_dim)
        ]
    return GradedLinearMap(tspace, xd, e, blocks, ctx.domain)


def uncurry(u: GradedLinearMap, x: GradedVectorSpace, ctx: BraidedContext) -> GradedLinearMap:
    """ev_X o (u (x) X)."""
    if u.target != dual_space(x):
        raise ShapeError("uncurry expects a morphism T -> X^dual")
    return compose(evaluation(x, ctx), tensor_map(u, identity_map(x, ctx.domain)))


@dataclass(frozen=True)
class ZeroDegreeDual:
    """Dual concentrated in degree 0 for nonnegatively Z-graded spaces."""

    source: GradedVectorSpace
    space: GradedVectorSpace
    ev: GradedLinearMap
    ctx: BraidedContext

    def curry(self, t: GradedLinearMap, tspace: GradedVectorSpace) -> GradedLinearMap:
        _check_nonnegative(tspace)
        layout = tensor_layout(tspace, self.source)
        if t.source != layout.space or t.target != unit_space(self.ctx.group):
            raise ShapeError("curry expects a morphism T (x) V -> k")
        zero = self.ctx.group.identity
        blocks = {}
        if tspace.dim(zero) and self.space.dim(zero):
            row = t.block(zero)[0]
            blocks[zero] = [
                [row[layout.position[(zero, p, zero, q)]] for p in range(tspace.dim(zero))]
                for q in range(self.space.dim(zero))
            ]
        return GradedLinearMap(tspace, self.space, zero, blocks, self.ctx.domain)

    def uncurry(self, u: GradedLinearMap) -> GradedLinearMap:
        if u.target != self.space:
            raise ShapeError("uncurry expects a morphism T -> V*")
        return compose(self.ev, tensor_map(u, identity_map(self.source, self.ctx.domain)))


def _check_nonnegative(v: GradedVectorSpace) -> None:
    if v.group != AbelianGroup(free_rank=1):
        raise ZeroDegreeDualError("the zero-degree dual needs the grading group Z")
    negative = [g for g in v.degrees if g.coords[0] < 0]
    if negative:
        raise ZeroDegreeDualError(f"negative-degree support: {[str(g) for g in negative]}")


def zero_degree_dual(v: GradedVectorSpace, ctx: BraidedContext) -> ZeroDegreeDual:
    _check_nonnegative(v)
    zero = ctx.group.identity
    space = GradedVectorSpace(v.group, ((zero, v.dim(zero)),))
    layout = tensor_layout(space, v)
    blocks = {}
    bucket = layout.entries.get(zero, [])
    if bucket:
        blocks[zero] = [[ctx.domain.one if i == j else ctx.domain.zero for (_, i, _, j) in bucket]]
    ev = GradedLinearMap(layout.space, unit_space(ctx.group), zero, blocks, ctx.domain)
    return ZeroDegreeDual(v, space, ev, ctx)


def random_space(ctx: BraidedContext, rng, max_dim: int = 6, degrees: int = 3) -> GradedVectorSpace:
    """Random graded space with total dimension at most max_dim."""
    total = rng.randint(0, max_dim)
    dims: dict[GroupElement, int] = {}
    for _ in range(total):
        g = ctx.group.random_element(rng, bound=degrees)
        dims[g] = dims.get(g, 0) + 1
    return GradedVectorSpace(ctx.group, tuple(dims.items()))


def random_map(
    source: GradedVectorSpace, target: GradedVectorSpace, ctx: BraidedContext, rng
) -> GradedLinearMap:
    blocks = {}
    for g, d in source.dims:
        rows = target.dim(g)
        if rows:
            blocks[g] = [[ctx.domain.random_element(rng) for _ in range(d)] for _ in range(rows)]
    return GradedLinearMap(source, target, ctx.group.identity, blocks, ctx.domain)
