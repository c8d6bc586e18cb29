"""Multiplicative closures of matrix generators.

``semigroup_closure`` enumerates the finite semigroup of all products by
breadth-first search with exact deduplication.  ``span_closure`` computes
the smallest linear subspace containing the generators that is closed
under multiplication — the matrix algebra they generate — by fixpoint
iteration that only revisits products involving newly inserted basis
elements.  On top of those sit the nilpotency-index chain and the search
for an internal multiplicative unit.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .field import Field
from .linalg import Matrix, SpanBasis

DEFAULT_SEMIGROUP_CAP = 10 ** 6


class BudgetExceededError(RuntimeError):
    """Raised when a closure grows past the caller's element budget."""


@dataclass(frozen=True)
class GeneratorSet:
    """A nonempty list of same-shaped generator matrices over one field."""

    field: Field
    n: int
    gens: tuple[Matrix, ...]

    def __post_init__(self):
        if not 1 <= len(self.gens) <= 8:
            raise ValueError(f"need 1..8 generators, got {len(self.gens)}")
        for g in self.gens:
            if g.field != self.field or g.n != self.n:
                raise ValueError("generators must share field and size")

    @classmethod
    def from_matrices(cls, gens) -> "GeneratorSet":
        gens = tuple(gens)
        if not gens:
            raise ValueError("need at least one generator")
        return cls(gens[0].field, gens[0].n, gens)


@dataclass
class ClosureReport:
    """What the generated algebra looks like: sizes, unit, nilpotency."""

    semigroup_size: int                 # distinct nonzero products
    zero_absorbed: bool                 # zero matrix reachable as a product
    algebra_dim: int
    unit_coordinates: np.ndarray | None  # over the span basis matrices
    nil_index: int | None               # least t with A^t = 0, None if not nilpotent

    @property
    def has_unit(self) -> bool:
        return self.unit_coordinates is not None


def semigroup_closure(g: GeneratorSet, cap: int = DEFAULT_SEMIGROUP_CAP) -> list[Matrix]:
    """All distinct products of the generators, in BFS discovery order.

    The zero matrix is kept in the result when some product reaches it.
    Raises BudgetExceededError past ``cap`` elements (closure over a
    finite field always terminates, but possibly far beyond desk scale).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seen: dict[bytes, Matrix] = {}
    order: list[Matrix] = []
    frontier: deque[Matrix] = deque()
    for m in g.gens:
        key = m.data.tobytes()
        if key not in seen:
            seen[key] = m
            order.append(m)
            frontier.append(m)
    while frontier:
        m = frontier.popleft()
        for gen in g.gens:
            prod = m * gen
            key = prod.data.tobytes()
            if key in seen:
                continue
            if len(seen) >= cap:
                raise BudgetExceededError(
                    f"semigroup closure exceeded budget of {cap} elements")
            seen[key] = prod
            order.append(prod)
            frontier.append(prod)
    return order


def span_closure(g: GeneratorSet, unital: bool = False) -> SpanBasis:
    """Least multiplicatively closed subspace containing the generators.

    With ``unital=True`` the ambient identity matrix is adjoined to the
    seed; by default the span is the non-unital algebra generated by the
    matrices.
    """
    basis = SpanBasis(g.field, g.n)
    members: list[Matrix] = []
    pending: deque[Matrix] = deque()

    def feed(m: Matrix):
        if basis.insert(m):
            for other in members:
                pending.append(m * other)
                pending.append(other * m)
            pending.append(m * m)
            members.append(m)

    if unital:
        feed(Matrix.identity(g.field, g.n))
    for gen in g.gens:
        feed(gen)
    while pending:
        feed(pending.popleft())
    return basis


def nilpotency_index(basis: SpanBasis, max_t: int | None = None) -> int | None:
    """Least t with A**t = 0 for a multiplicatively closed span, else None.

    Walks the chain A >= A^2 >= A^3 >= ...; the chain is decreasing
    because the basis is closed under multiplication, so a repeated
    nonzero dimension means the algebra is not nilpotent.
    """
    if max_t is None:
        max_t = basis.dim + 2
    if basis.dim == 0:
        return 1
    gens = basis.matrices
    power = basis
    t = 1
    while t < max_t:
        nxt = SpanBasis(basis.field, basis.n)
        for p in power.matrices:
            for b in gens:
                nxt.insert(p * b)
        t += 1
        if nxt.dim == 0:
            return t
        if nxt.dim == power.dim:
            return None
        power = nxt
    return None


def find_unit(basis: SpanBasis) -> np.ndarray | None:
    """Coordinates of a two-sided unit of the algebra, or None.

    Solves e*b_i = b_i = b_i*e over the span, writing products in basis
    coordinates first so the system has basis.dim unknowns.
    """
    d = basis.dim
    if d == 0:
        return None
    f = basis.field
    mats = basis.matrices
    # left[j][i] = coords of mats[j] * mats[i]; right[j][i] = coords of mats[i] * mats[j]
    rows = []
    rhs = []
    for i in range(d):
        li = np.zeros((d, d), dtype=np.int64)
        ri = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            cl = basis.coordinates(mats[j] * mats[i])
            cr = basis.coordinates(mats[i] * mats[j])
            if cl is None or cr is None:
                raise ValueError("basis is not multiplicatively closed")
            li[j] = cl
            ri[j] = cr
        target = np.zeros(d, dtype=np.int64)
        target[i] = 1
        for k in range(d):
            rows.append(li[:, k])
            rhs.append(int(target[k]))
            rows.append(ri[:, k])
            rhs.append(int(target[k]))
    return _solve(f, np.array(rows, dtype=np.int64), np.array(rhs, dtype=np.int64))


def _solve(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of a x = b over the field, or None if inconsistent."""
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for i in range(r, rows):
            if aug[i, c]:
                sel = i
                break
        if sel is None:
            continue
        aug[[r, sel]] = aug[[sel, r]]
        aug[r] = f.np_mul(np.int64(f.inv(int(aug[r, c]))), aug[r])
        for i in range(rows):
            if i != r and aug[i, c]:
                aug[i] = f.np_sub(aug[i], f.np_mul(np.int64(int(aug[i, c])), aug[r]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i, cols]:
            return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = aug[i, cols]
    return x


def closure_report(g: GeneratorSet, unital: bool = False,
                   cap: int = DEFAULT_SEMIGROUP_CAP) -> ClosureReport:
    """Run the full closure pipeline on one generator set."""
    elems = semigroup_closure(g, cap)
    nonzero = sum(1 for m in elems if not m.is_zero())
    basis = span_closure(g, unital=unital)
    return ClosureReport(
        semigroup_size=nonzero,
        zero_absorbed=nonzero != len(elems),
        algebra_dim=basis.dim,
        unit_coordinates=find_unit(basis),
        nil_index=nilpotency_index(basis),
    )
