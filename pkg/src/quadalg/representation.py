"""Structure constants and left regular representations of the quotient cases.

The representation follows the row-vector convention: row i of a
generator's matrix holds the canonical coordinates of g * basis_i, so a
row vector of coordinates is acted on from the right.  Under matrix
multiplication the images therefore compose contravariantly,
L(g) @ L(h) = L(h*g); the image algebra is anti-isomorphic to the
quotient, which preserves spans, dimensions and every identity of the
form X^2 = a*X + b.  Cases without an internal unit are represented on
their unitalization (one extra unit row), which keeps the map injective.
"""

from dataclasses import dataclass

import numpy as np

from .closure import GeneratorSet, nilpotency_index, span_closure
from .field import Field
from .fixtures import FIXTURES, Fixture
from .identity import (CaseTag, IdentitySpec, Scope, check_on_algebra,
                       check_on_semigroup)
from .linalg import Matrix, SpanBasis
from .quotient import LinComb, QuotientCase, build_case, parse_word, word_str

UNITALIZED_BY_DEFAULT = frozenset({
    CaseTag.NIL_SQUARE, CaseTag.NIL_SQUARE_CHAR2, CaseTag.IDEMPOTENT_SEMIGROUP,
})


@dataclass(frozen=True)
class StructureConstants:
    """table[i][j] is basis_i * basis_j in canonical coordinates."""

    case: QuotientCase
    table: tuple[tuple[LinComb, ...], ...]

    @property
    def dimension(self) -> int:
        return self.case.dimension


def structure_constants(case: QuotientCase) -> StructureConstants:
    if case.dimension > 64:
        raise ValueError(f"dimension {case.dimension} exceeds the supported 64")
    f = case.field
    table = tuple(
        tuple(case.multiply(LinComb.from_word(f, u), LinComb.from_word(f, v))
              for v in case.basis)
        for u in case.basis)
    return StructureConstants(case, table)


@dataclass(frozen=True)
class RegularRep:
    case: QuotientCase
    unitalized: bool
    basis_words: tuple
    basis_labels: tuple[str, ...]
    generator_labels: tuple[str, ...]
    matrices: tuple[Matrix, ...]


def left_regular_rep(sc: StructureConstants,
                     unitalize: bool | None = None) -> RegularRep:
    """Matrices of left multiplication by each generator.

    ``unitalize=None`` picks the convention that keeps the map injective:
    cases whose basis lacks a unit word and whose algebra has no internal
    unit get an extra unit coordinate.
    """
    case = sc.case
    f = case.field
    if unitalize is None:
        unitalize = case.tag in UNITALIZED_BY_DEFAULT
    if case.unital:
        unitalize = False  # basis already contains the unit word
    words = ((),) + case.basis if unitalize else case.basis
    pos = {w: i for i, w in enumerate(words)}
    d = len(words)
    mats = []
    for g in range(case.m):
        rows = np.zeros((d, d), dtype=np.int64)
        gen = case.generator(g)
        for i, w in enumerate(words):
            if w == () and not case.unital:
                prod = case.normal_form(gen)  # g * 1 in the unitalization
            else:
                prod = case.multiply(gen, LinComb.from_word(f, w))
            for word, coeff in prod._terms.items():
                rows[i, pos[word]] = coeff
        mats.append(Matrix(f, rows))
    return RegularRep(
        case=case,
        unitalized=unitalize,
        basis_words=words,
        basis_labels=tuple(word_str(w, case.m) for w in words),
        generator_labels=tuple(word_str((g,), case.m) for g in range(case.m)),
        matrices=tuple(mats),
    )


@dataclass
class CheckLine:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class FixtureReport:
    name: str
    fixture: Fixture
    checks: list[CheckLine]
    rep_mismatches: list[tuple[str, int, int, int, int]]
    algebra_dim: int
    algebra_size: int
    subspace_dim: int

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


def fixture_generators(name: str) -> GeneratorSet:
    fx = FIXTURES[name.lower()]
    field = Field.prime(fx.p)
    return GeneratorSet.from_matrices(
        Matrix.from_rows(field, rows) for _, rows in fx.matrices)


def verify_fixture(name: str, enum_cap: int = 10 ** 7) -> FixtureReport:
    """Re-run one bundled verification script end to end.

    Checks, in order: the regenerated regular representation matches the
    stored matrices entrywise; the identity holds on the scripted scope;
    commutativity / nilpotency where the script asserts them; and the
    algebra and spanning-subspace dimensions.
    """
    key = name.lower()
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {sorted(FIXTURES)}")
    fx = FIXTURES[key]
    field = Field.prime(fx.p)
    gens = fixture_generators(key)
    checks: list[CheckLine] = []

    # 1. regular representation reproduces the stored matrices bit for bit
    case = build_case(fx.tag, fx.m, field)
    rep = left_regular_rep(structure_constants(case), unitalize=fx.unitalize)
    mismatches = []
    for (label, rows), mat in zip(fx.matrices, rep.matrices):
        stored = Matrix.from_rows(field, rows)
        if stored != mat:
            diff = np.argwhere(stored.data != mat.data)
            for i, j in diff:
                mismatches.append((label, int(i), int(j),
                                   int(mat.data[i, j]), int(stored.data[i, j])))
    checks.append(CheckLine(
        "regular representation matches the stored matrices",
        not mismatches,
        "" if not mismatches else f"{len(mismatches)} differing entries"))

    # 2. the identity on the scripted scope
    spec = IdentitySpec(field.element(fx.a), field.element(fx.b), fx.scope)
    basis = span_closure(gens)
    if fx.scope is Scope.SEMIGROUP:
        report = check_on_semigroup(gens, spec)
    else:
        report = check_on_algebra(basis, spec, cap=enum_cap)
    checks.append(CheckLine(
        f"every element of {'S' if fx.scope is Scope.SEMIGROUP else 'A'} "
        f"satisfies {fx.identity_str}",
        report.holds,
        f"{report.elements_checked} elements checked ({report.method})"))

    # 3. script-specific structure checks
    if fx.check_abelian:
        abelian = all(g * h == h * g for g in gens.gens for h in gens.gens)
        checks.append(CheckLine("A is abelian", abelian))
    if fx.nil_index is not None:
        t = nilpotency_index(basis)
        checks.append(CheckLine(
            f"A is nilpotent of index {fx.nil_index}",
            t == fx.nil_index,
            f"computed index {t}"))

    # 4. dimensions
    checks.append(CheckLine(
        f"dimension of A is {fx.expected_dim}",
        basis.dim == fx.expected_dim,
        f"computed {basis.dim}"))
    sub = SpanBasis(field, gens.n)
    for token in fx.subspace:
        sub.insert(_word_matrix(gens, token, fx.m))
    checks.append(CheckLine(
        f"subspace spanned by {{{', '.join(fx.subspace)}}} has dimension {fx.expected_dim}",
        sub.dim == fx.expected_dim,
        f"computed {sub.dim}"))
    checks.append(CheckLine(
        f"quotient case {fx.tag.value} (m={fx.m}) has dimension {fx.expected_dim}",
        case.dimension == fx.expected_dim,
        f"computed {case.dimension}"))

    return FixtureReport(
        name=key,
        fixture=fx,
        checks=checks,
        rep_mismatches=mismatches,
        algebra_dim=basis.dim,
        algebra_size=field.order ** basis.dim,
        subspace_dim=sub.dim,
    )


def _word_matrix(gens: GeneratorSet, token: str, m: int) -> Matrix:
    if token == "1":
        return Matrix.identity(gens.field, gens.n)
    out = None
    for i in parse_word(token, m):
        out = gens.gens[i] if out is None else out * gens.gens[i]
    return out
