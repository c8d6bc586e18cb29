"""Quadratic identities X**2 = a*X + b: checking and case classification.

A :class:`IdentitySpec` fixes the pair (a, b) and the scope: whether the
identity is imposed only on the multiplicative semigroup of generator
words, or on every element of the generated algebra.  ``classify`` maps
a spec to one of the structural cases the theory admits; the checkers
test a concrete matrix algebra, exhaustively when the element count is
affordable and through an exact polarized criterion otherwise.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .closure import GeneratorSet, semigroup_closure
from .field import Field, FieldElement
from .linalg import Matrix, SpanBasis

DEFAULT_ENUM_CAP = 10 ** 7
_CHUNK = 4096


class Scope(enum.Enum):
    SEMIGROUP = "semigroup"
    ALGEBRA = "algebra"


class CaseTag(enum.Enum):
    NIL_SQUARE = "nilsquare"              # X^2 = 0, characteristic != 2
    NIL_SQUARE_CHAR2 = "nilsquare-char2"  # X^2 = 0, characteristic 2
    INVOLUTION = "involution"             # X^2 = 1 on the semigroup
    IDEMPOTENT_ALGEBRA = "idempotent-a"   # X^2 = X on the whole algebra
    IDEMPOTENT_SEMIGROUP = "idempotent-s"  # X^2 = X on the semigroup
    UNIPOTENT = "unipotent"               # X^2 = 2X - 1, characteristic != 2
    GF4_COLLAPSE = "gf4-collapse"         # X^2 = X + 1, characteristic 2
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class IdentitySpec:
    a: FieldElement
    b: FieldElement
    scope: Scope

    def __post_init__(self):
        if self.a.field != self.b.field:
            raise ValueError("a and b must come from the same field")

    @property
    def field(self) -> Field:
        return self.a.field

    def describe(self) -> str:
        f = self.field
        return f"X^2 = {f.label(self.a.value)}*X + {f.label(self.b.value)} over {f}"


@dataclass(frozen=True)
class Classification:
    tag: CaseTag
    trace: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return self.tag is not CaseTag.INCONSISTENT


def classify(spec: IdentitySpec) -> Classification:
    """Structural case of (a, b, field, scope), with the constraint trace.

    The compatibility constraints: a constant-only identity needs
    b**2 = b; a linear-only identity needs a**2 * (a - 1) = 0; with both
    coefficients nonzero, b = -1 and a**2 - a - 2 = 0 are forced, which
    over characteristic 2 leaves X^2 = X + 1 and otherwise a = 2 (the
    a = -1 branch survives only where -1 = 2, i.e. characteristic 3).
    Imposing the identity on the whole algebra additionally forces b = 0
    (the zero element) and, for a != 0, that every scalar is idempotent,
    which pins the field to GF(2).
    """
    f = spec.field
    a, b = spec.a.value, spec.b.value
    trace: list[str] = []

    if spec.scope is Scope.ALGEBRA and b != 0:
        trace.append(f"zero element: 0 != {f.label(b)}*1, so b must be 0 on the algebra")
        return Classification(CaseTag.INCONSISTENT, tuple(trace))

    if a == 0 and b == 0:
        if f.p == 2:
            trace.append("X^2 = 0 over characteristic 2")
            return Classification(CaseTag.NIL_SQUARE_CHAR2, tuple(trace))
        trace.append(f"X^2 = 0 over characteristic {f.p}")
        return Classification(CaseTag.NIL_SQUARE, tuple(trace))

    if a == 0:
        bb = f.mul(b, b)
        if bb != b:
            trace.append(f"b^2 = b violated: {f.label(b)}^2 = {f.label(bb)}")
            return Classification(CaseTag.INCONSISTENT, tuple(trace))
        trace.append("b^2 = b holds with b = 1")
        return Classification(CaseTag.INVOLUTION, tuple(trace))

    if b == 0:
        if a != 1:
            lhs = f.mul(f.mul(a, a), f.sub(a, 1))
            trace.append(f"a^2(a-1) = 0 violated: value {f.label(lhs)} for a = {f.label(a)}")
            return Classification(CaseTag.INCONSISTENT, tuple(trace))
        trace.append("a^2(a-1) = 0 holds with a = 1")
        if spec.scope is Scope.SEMIGROUP:
            return Classification(CaseTag.IDEMPOTENT_SEMIGROUP, tuple(trace))
        bad = [x for x in range(f.order) if f.mul(x, x) != x]
        if bad:
            trace.append(
                f"scaling (l^2 - l)x = 0 violated by l = {f.label(bad[0])}: field must be GF(2)")
            return Classification(CaseTag.INCONSISTENT, tuple(trace))
        trace.append("every scalar is idempotent (field is GF(2)); "
                     "characteristic 2 alone would not suffice")
        return Classification(CaseTag.IDEMPOTENT_ALGEBRA, tuple(trace))

    # both coefficients nonzero, scope is the semigroup
    if b != f.neg(1):
        trace.append(f"b = -1 violated: b = {f.label(b)}, -1 = {f.label(f.neg(1))}")
        return Classification(CaseTag.INCONSISTENT, tuple(trace))
    trace.append("b = -1 holds")
    resid = f.sub(f.sub(f.mul(a, a), a), f.from_int(2))
    if resid != 0:
        trace.append(f"a^2 - a - 2 = 0 violated: value {f.label(resid)} for a = {f.label(a)}")
        return Classification(CaseTag.INCONSISTENT, tuple(trace))
    trace.append("a^2 - a - 2 = 0 holds")
    if f.p == 2:
        trace.append("characteristic 2: X^2 = X + 1, the algebra collapses to GF(4)")
        return Classification(CaseTag.GF4_COLLAPSE, tuple(trace))
    if a == f.from_int(2):
        trace.append("a = 2")
        return Classification(CaseTag.UNIPOTENT, tuple(trace))
    trace.append("a = -1 != 2 forces 3x = 0, impossible outside characteristic 3")
    return Classification(CaseTag.INCONSISTENT, tuple(trace))


@dataclass
class CheckReport:
    holds: bool
    method: str                    # "exhaustive" | "polarized"
    elements_checked: int
    witness: Matrix | None = None
    witness_coords: np.ndarray | None = None

    def verify_witness(self, spec: IdentitySpec) -> bool:
        """Re-check that the recorded witness violates the identity."""
        if self.witness is None:
            return False
        w = self.witness
        one = Matrix.identity(w.field, w.n)
        rhs = w.scale(spec.a) + one.scale(spec.b)
        return w * w != rhs


def check_on_semigroup(g: GeneratorSet, spec: IdentitySpec,
                       cap: int = 10 ** 6) -> CheckReport:
    """Test w**2 = a*w + b*1 for every element of the generated semigroup."""
    if spec.scope is not Scope.SEMIGROUP:
        raise ValueError("spec scope must be semigroup")
    if spec.field != g.field:
        raise ValueError("spec and generators use different fields")
    one = Matrix.identity(g.field, g.n)
    checked = 0
    for w in semigroup_closure(g, cap):
        checked += 1
        if w * w != w.scale(spec.a) + one.scale(spec.b):
            return CheckReport(False, "exhaustive", checked, witness=w)
    return CheckReport(True, "exhaustive", checked)


def check_on_algebra(basis: SpanBasis, spec: IdentitySpec,
                     cap: int = DEFAULT_ENUM_CAP) -> CheckReport:
    """Test the identity on every element of the span.

    Runs the exhaustive sweep (coefficient vectors in lexicographic
    order, earliest violation reported) when the element count fits the
    cap, and otherwise the exact polarized criterion.
    """
    if spec.scope is not Scope.ALGEBRA:
        raise ValueError("spec scope must be algebra")
    if spec.field != basis.field:
        raise ValueError("spec and basis use different fields")
    q, d = basis.field.order, basis.dim
    if q ** d <= cap:
        return _check_exhaustive(basis, spec)
    return _check_polarized(basis, spec)


def _check_exhaustive(basis: SpanBasis, spec: IdentitySpec) -> CheckReport:
    f = basis.field
    q, d, n = f.order, basis.dim, basis.n
    total = q ** d
    if d == 0:
        holds = spec.b.value == 0
        zero = Matrix.zeros(f, n)
        return CheckReport(holds, "exhaustive", 1,
                           witness=None if holds else zero,
                           witness_coords=None if holds else np.zeros(0, dtype=np.int64))
    flat = np.stack([m.flat() for m in basis.matrices])          # d x n^2
    divisors = np.array([q ** (d - 1 - j) for j in range(d)], dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    a_raw, b_raw = np.int64(spec.a.value), np.int64(spec.b.value)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = (idx[:, None] // divisors[None, :]) % q         # lexicographic order
        if f.kind == "prime":
            w = (coeffs @ flat) % f.p
        else:
            w = np.zeros((len(idx), n * n), dtype=np.int64)
            for j in range(d):
                w ^= f.np_mul(coeffs[:, j][:, None], flat[j][None, :])
        w = w.reshape(-1, n, n)
        sq = f.np_matmul_batch(w, w)
        rhs = f.np_add(f.np_mul(a_raw, w), f.np_mul(b_raw, eye)[None, :, :])
        bad = np.nonzero((sq != rhs).any(axis=(1, 2)))[0]
        if bad.size:
            k = int(bad[0])
            coords = coeffs[k]
            return CheckReport(False, "exhaustive", start + k + 1,
                               witness=Matrix(f, w[k].copy()),
                               witness_coords=coords.copy())
    return CheckReport(True, "exhaustive", total)


def _check_polarized(basis: SpanBasis, spec: IdentitySpec) -> CheckReport:
    """Exact criterion: b = 0, u^2 = a*u and uv + vu = 0 on basis pairs,
    and (for a != 0) every scalar idempotent.  Equivalent to the sweep
    because (sum l_i b_i)^2 - a*sum l_i b_i reduces to
    a * sum (l_i^2 - l_i) b_i once the pair conditions hold."""
    f = basis.field
    n = basis.n
    mats = basis.matrices
    one = Matrix.identity(f, n)
    zero = Matrix.zeros(f, n)
    checked = 0

    if spec.b.value != 0:
        return CheckReport(False, "polarized", 1, witness=zero,
                           witness_coords=np.zeros(basis.dim, dtype=np.int64))
    for i, u in enumerate(mats):
        checked += 1
        if u * u != u.scale(spec.a):
            coords = np.zeros(basis.dim, dtype=np.int64)
            coords[i] = 1
            return CheckReport(False, "polarized", checked,
                               witness=u, witness_coords=coords)
    for i, u in enumerate(mats):
        for j in range(i + 1, len(mats)):
            v = mats[j]
            checked += 1
            if u * v + v * u != zero:
                coords = np.zeros(basis.dim, dtype=np.int64)
                coords[i] = coords[j] = 1
                return CheckReport(False, "polarized", checked,
                                   witness=u + v, witness_coords=coords)
    if spec.a.value != 0 and basis.dim > 0:
        for lam in range(f.order):
            checked += 1
            if f.mul(lam, lam) != lam:
                coords = np.zeros(basis.dim, dtype=np.int64)
                coords[0] = lam
                return CheckReport(False, "polarized", checked,
                                   witness=mats[0].scale(lam), witness_coords=coords)
    return CheckReport(True, "polarized", checked)
