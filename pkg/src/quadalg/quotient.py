"""Relatively free algebras on m generators for each structural case.

Each case is a term-rewriting engine: ``step`` applies one leftmost
rewrite to a word, returning the replacement as a linear combination,
and ``normal_form`` drives that to a fixpoint with memoization.  The
rule priority is: collapse a square factor, then transpose an
out-of-order adjacent pair, then (where a rule exists) collapse a
sorted length-3 prefix.  Termination follows from the (length,
inversion-count) measure; confluence is certified empirically by the
idempotence, associativity and oracle-agreement tests rather than
proved.

``oracle_dimension`` is the independent cross-check: it spans all words
up to a length bound, generates the defining relations plus their
polarized and scaled consequences, saturates by one-sided word
multiplication, and row-reduces, never consulting the rewrite rules.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .field import Field, FieldElement
from .identity import CaseTag, IdentitySpec, Scope

Word = tuple[int, ...]

DEFAULT_DEGREE_CAP = 24


class IncompatibleCaseError(ValueError):
    """Case tag, generator count and field do not fit together."""


def generator_names(m: int) -> tuple[str, ...]:
    if m <= 3:
        return ("x", "y", "z")[:m]
    return tuple(f"x{i + 1}" for i in range(m))


def word_str(word: Word, m: int) -> str:
    if not word:
        return "1"
    return "".join(generator_names(m)[i] for i in word)


def parse_word(text: str, m: int) -> Word:
    """Parse a word like ``yxy`` (m <= 3) or ``x1x2x1`` into letter indices."""
    names = generator_names(m)
    out = []
    i = 0
    while i < len(text):
        for idx, name in enumerate(names):
            if text.startswith(name, i):
                out.append(idx)
                i += len(name)
                break
        else:
            raise ValueError(f"cannot read generator at {text[i:]!r}; "
                             f"expected one of {', '.join(names)}")
    return tuple(out)


class LinComb:
    """A finite linear combination of words; zero coefficients never stored."""

    __slots__ = ("field", "_terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean: dict[Word, int] = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                raw = c.value if isinstance(c, FieldElement) else field.from_int(int(c))
                if raw:
                    acc = field.add(clean.get(tuple(w), 0), raw)
                    if acc:
                        clean[tuple(w)] = acc
                    else:
                        clean.pop(tuple(w), None)
        self._terms = clean

    @classmethod
    def from_word(cls, field: Field, word: Word, coeff: int = 1) -> "LinComb":
        return cls(field, {tuple(word): coeff})

    @property
    def support(self) -> tuple[Word, ...]:
        return tuple(sorted(self._terms, key=lambda w: (len(w), w)))

    def coefficient(self, word: Word) -> FieldElement:
        return FieldElement(self.field, self._terms.get(tuple(word), 0))

    def items(self):
        for w in self.support:
            yield w, FieldElement(self.field, self._terms[w])

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LinComb") -> "LinComb":
        if other.field != self.field:
            raise ValueError("field mismatch")
        acc = dict(self._terms)
        _accumulate(self.field, acc, other._terms, 1)
        return _wrap(self.field, acc)

    def __sub__(self, other: "LinComb") -> "LinComb":
        if other.field != self.field:
            raise ValueError("field mismatch")
        acc = dict(self._terms)
        _accumulate(self.field, acc, other._terms, self.field.neg(1))
        return _wrap(self.field, acc)

    def __neg__(self) -> "LinComb":
        return self.scale(-1)

    def scale(self, c) -> "LinComb":
        raw = c.value if isinstance(c, FieldElement) else self.field.from_int(int(c))
        acc: dict[Word, int] = {}
        _accumulate(self.field, acc, self._terms, raw)
        return _wrap(self.field, acc)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash((self.field, frozenset(self._terms.items())))

    def __repr__(self):
        return f"LinComb({self.field}, {self._terms})"

    def pretty(self, m: int) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            label = self.field.label(c.value)
            if not w:
                parts.append(label)
            elif c.value == 1:
                parts.append(word_str(w, m))
            else:
                if "+" in label:
                    label = f"({label})"
                parts.append(f"{label}{word_str(w, m)}")
        return " + ".join(parts)


def _accumulate(field: Field, acc: dict, terms: dict, scalar: int):
    if not scalar:
        return
    for w, c in terms.items():
        nc = field.add(acc.get(w, 0), field.mul(scalar, c))
        if nc:
            acc[w] = nc
        else:
            acc.pop(w, None)


def _wrap(field: Field, raw: dict) -> LinComb:
    lc = LinComb.__new__(LinComb)
    lc.field = field
    lc._terms = raw
    return lc


def _increasing_words(m: int, include_empty: bool) -> tuple[Word, ...]:
    sizes = range(0 if include_empty else 1, m + 1)
    return tuple(itertools.chain.from_iterable(
        itertools.combinations(range(m), k) for k in sizes))


class QuotientCase:
    """One structural case: canonical basis plus its rewrite system."""

    tag: CaseTag
    unital = False
    scope = Scope.ALGEBRA

    def __init__(self, m: int, field: Field, degree_cap: int = DEFAULT_DEGREE_CAP):
        self.m = m
        self.field = field
        self.degree_cap = degree_cap
        self.basis: tuple[Word, ...] = self._build_basis()
        self._index = {w: i for i, w in enumerate(self.basis)}
        self._nf_cache: dict[Word, dict] = {}

    # per-case hooks -----------------------------------------------------
    def _build_basis(self) -> tuple[Word, ...]:
        raise NotImplementedError

    def step(self, w: Word) -> list[tuple[Word, int]] | None:
        """One leftmost rewrite of w, or None when w is canonical."""
        raise NotImplementedError

    def identity_coefficients(self) -> tuple[FieldElement, FieldElement]:
        """The (a, b) of the defining identity X^2 = a*X + b."""
        a, b = self._AB
        return self.field.element(a), self.field.element(b)

    # engine ---------------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.basis)

    def validate_word(self, w: Word):
        if len(w) > self.degree_cap:
            raise ValueError(f"word of length {len(w)} exceeds degree cap {self.degree_cap}")
        if not w and not self.unital:
            raise ValueError(f"the empty word is not an element of the {self.tag.value} case")
        if any(not 0 <= c < self.m for c in w):
            raise ValueError(f"letter out of range 0..{self.m - 1} in {w}")

    def nf_word(self, w: Word) -> dict:
        cached = self._nf_cache.get(w)
        if cached is not None:
            return cached
        rewrite = self.step(w)
        if rewrite is None:
            result = {w: 1}
        else:
            result: dict[Word, int] = {}
            for w2, c2 in rewrite:
                if c2:
                    _accumulate(self.field, result, self.nf_word(w2), c2)
        self._nf_cache[w] = result
        return result

    def normal_form(self, lc: LinComb) -> LinComb:
        if lc.field != self.field:
            raise ValueError("LinComb field does not match the case field")
        acc: dict[Word, int] = {}
        for w, c in lc._terms.items():
            self.validate_word(w)
            _accumulate(self.field, acc, self.nf_word(w), c)
        return _wrap(self.field, acc)

    def multiply(self, u: LinComb, v: LinComb) -> LinComb:
        if u.field != self.field or v.field != self.field:
            raise ValueError("LinComb field does not match the case field")
        acc: dict[Word, int] = {}
        for wu, cu in u._terms.items():
            self.validate_word(wu)
            for wv, cv in v._terms.items():
                word = wu + wv
                if len(word) > self.degree_cap:
                    raise ValueError(
                        f"product word of length {len(word)} exceeds degree cap")
                _accumulate(self.field, acc, self.nf_word(word),
                            self.field.mul(cu, cv))
        return _wrap(self.field, acc)

    def coords(self, lc: LinComb) -> np.ndarray:
        """Coordinates over the canonical basis; rejects non-basis support."""
        out = np.zeros(self.dimension, dtype=np.int64)
        for w, c in lc._terms.items():
            if w not in self._index:
                raise ValueError(f"{w} is not a canonical basis word; normalize first")
            out[self._index[w]] = c
        return out

    def from_coords(self, coords) -> LinComb:
        return LinComb(self.field, {w: int(c) for w, c in zip(self.basis, coords)})

    def basis_element(self, i: int) -> LinComb:
        return LinComb.from_word(self.field, self.basis[i])

    def one(self) -> LinComb:
        if not self.unital:
            raise ValueError(f"the {self.tag.value} case has no unit word")
        return LinComb.from_word(self.field, ())

    def generator(self, i: int) -> LinComb:
        return LinComb.from_word(self.field, (i,))

    def __repr__(self):
        return (f"QuotientCase({self.tag.value}, m={self.m}, {self.field}, "
                f"dim={self.dimension})")


class NilSquareCase(QuotientCase):
    """X^2 = 0 on the algebra, characteristic != 2: xy = -yx, A^3 = 0."""

    tag = CaseTag.NIL_SQUARE
    _AB = (0, 0)

    def _build_basis(self):
        return tuple((i,) for i in range(self.m)) + tuple(
            itertools.combinations(range(self.m), 2))

    def step(self, w):
        if len(w) >= 3:
            return []
        if len(w) == 2:
            i, j = w
            if i == j:
                return []
            if i > j:
                return [((j, i), self.field.neg(1))]
        return None


class NilSquareChar2Case(QuotientCase):
    """X^2 = 0 on the algebra, characteristic 2: commute, kill squares."""

    tag = CaseTag.NIL_SQUARE_CHAR2
    _AB = (0, 0)

    def _build_basis(self):
        return _increasing_words(self.m, include_empty=False)

    def step(self, w):
        for t in range(len(w) - 1):
            i, j = w[t], w[t + 1]
            if i == j:
                return []
            if i > j:
                return [(w[:t] + (j, i) + w[t + 2:], 1)]
        return None


class InvolutionCase(QuotientCase):
    """X^2 = 1 on the semigroup: commutative, every generator an involution."""

    tag = CaseTag.INVOLUTION
    unital = True
    scope = Scope.SEMIGROUP
    _AB = (0, 1)

    def _build_basis(self):
        return _increasing_words(self.m, include_empty=True)

    def step(self, w):
        for t in range(len(w) - 1):
            i, j = w[t], w[t + 1]
            if i == j:
                return [(w[:t] + w[t + 2:], 1)]
            if i > j:
                return [(w[:t] + (j, i) + w[t + 2:], 1)]
        return None


class IdempotentAlgebraCase(QuotientCase):
    """X^2 = X on the whole algebra: field GF(2), commutative, squarefree."""

    tag = CaseTag.IDEMPOTENT_ALGEBRA
    _AB = (1, 0)

    def _build_basis(self):
        return _increasing_words(self.m, include_empty=False)

    def step(self, w):
        for t in range(len(w) - 1):
            i, j = w[t], w[t + 1]
            if i == j:
                return [(w[:t] + (i,) + w[t + 2:], 1)]
            if i > j:
                return [(w[:t] + (j, i) + w[t + 2:], 1)]
        return None


class IdempotentSemigroupCase(QuotientCase):
    """X^2 = X on the semigroup, two generators: the free band quotient."""

    tag = CaseTag.IDEMPOTENT_SEMIGROUP
    scope = Scope.SEMIGROUP
    _AB = (1, 0)

    def _build_basis(self):
        return ((0,), (1,), (0, 1), (1, 0), (0, 1, 0), (1, 0, 1))

    def step(self, w):
        for t in range(len(w) - 1):
            if w[t] == w[t + 1]:
                return [(w[:t + 1] + w[t + 2:], 1)]
        for t in range(len(w) - 3):
            quad = w[t:t + 4]
            if quad in ((0, 1, 0, 1), (1, 0, 1, 0)):
                return [(w[:t] + quad[:2] + w[t + 4:], 1)]
        return None


class UnipotentCase(QuotientCase):
    """X^2 = 2X - 1 on the semigroup, characteristic != 2."""

    tag = CaseTag.UNIPOTENT
    unital = True
    scope = Scope.SEMIGROUP
    _AB = (2, -1)

    def _build_basis(self):
        return ((),) + tuple((i,) for i in range(self.m)) + tuple(
            itertools.combinations(range(self.m), 2))

    def step(self, w):
        f = self.field
        for t in range(len(w) - 1):
            i, j = w[t], w[t + 1]
            pre, post = w[:t], w[t + 2:]
            if i == j:
                return [(pre + (i,) + post, 2),
                        (pre + post, f.neg(1))]
            if i > j:
                return [(pre + (j,) + post, 2),
                        (pre + (i,) + post, 2),
                        (pre + post, f.from_int(-2)),
                        (pre + (j, i) + post, f.neg(1))]
        if len(w) >= 3:
            i, j, k = w[0], w[1], w[2]
            post = w[3:]
            neg = f.neg(1)
            return [(post, 1),
                    ((i,) + post, neg), ((j,) + post, neg), ((k,) + post, neg),
                    ((i, j) + post, 1), ((i, k) + post, 1), ((j, k) + post, 1)]
        return None


class GF4CollapseCase(QuotientCase):
    """X^2 = X + 1 on the semigroup, characteristic 2: all generators
    coincide and the algebra is a copy of GF(4)."""

    tag = CaseTag.GF4_COLLAPSE
    unital = True
    scope = Scope.SEMIGROUP
    _AB = (1, 1)

    def _build_basis(self):
        return ((), (0,))

    def step(self, w):
        if any(c != 0 for c in w):
            return [(tuple(0 for _ in w), 1)]
        if len(w) >= 2:
            return [((0,) * (len(w) - 1), 1), ((0,) * (len(w) - 2), 1)]
        return None


_CASE_CLASSES = {
    CaseTag.NIL_SQUARE: NilSquareCase,
    CaseTag.NIL_SQUARE_CHAR2: NilSquareChar2Case,
    CaseTag.INVOLUTION: InvolutionCase,
    CaseTag.IDEMPOTENT_ALGEBRA: IdempotentAlgebraCase,
    CaseTag.IDEMPOTENT_SEMIGROUP: IdempotentSemigroupCase,
    CaseTag.UNIPOTENT: UnipotentCase,
    CaseTag.GF4_COLLAPSE: GF4CollapseCase,
}


def build_case(tag: CaseTag, m: int, field: Field,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> QuotientCase:
    """Construct the relatively free algebra for a classified case."""
    if tag not in _CASE_CLASSES:
        raise IncompatibleCaseError(f"no quotient case for tag {tag}")
    if not 1 <= m <= 8:
        raise IncompatibleCaseError(f"generator count {m} out of range 1..8")
    if tag is CaseTag.IDEMPOTENT_SEMIGROUP and m != 2:
        raise IncompatibleCaseError(
            "the idempotent semigroup case is only classified for m = 2")
    if tag in (CaseTag.NIL_SQUARE, CaseTag.UNIPOTENT) and field.p == 2:
        raise IncompatibleCaseError(f"{tag.value} requires characteristic != 2")
    if tag in (CaseTag.NIL_SQUARE_CHAR2, CaseTag.GF4_COLLAPSE) and field.p != 2:
        raise IncompatibleCaseError(f"{tag.value} requires characteristic 2")
    if tag is CaseTag.IDEMPOTENT_ALGEBRA and field.order != 2:
        raise IncompatibleCaseError(
            "X^2 = X on the whole algebra forces every scalar to be idempotent, "
            "so the field must be GF(2)")
    return _CASE_CLASSES[tag](m, field, degree_cap)


def quotient_dimension(case: QuotientCase) -> int:
    return case.dimension


# ----------------------------------------------------------------------
# degree-bounded brute-force oracle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    dimension: int
    stabilized: bool
    word_count: int
    rank: int


def oracle_dimension(spec: IdentitySpec, m: int, max_len: int = 6,
                     multiplier_cap: int | None = None) -> OracleResult:
    """Dimension of the relatively free algebra, by relation saturation.

    Spans all words of length <= max_len (plus the unit word when
    b != 0), emits the defining relations w^2 - a*w - b for every word
    short enough for its square to fit, together with their polarized
    and scaled consequences for algebra scope, then saturates to a
    fixpoint: every independent relation found is re-multiplied by each
    generator on the left and right as long as the products stay inside
    the length window (and within ``multiplier_cap`` multiplications,
    when given).  The relation span is row-reduced as it grows;
    ``stabilized`` records agreement between max_len and max_len - 1.
    """
    if m > 3:
        raise ValueError("oracle supports m <= 3 (word count grows as m**L)")
    if not 2 <= max_len <= 8:
        raise ValueError("max_len must be in 2..8")
    dim = _oracle_dim(spec, m, max_len, multiplier_cap)
    prev_dim = _oracle_dim(spec, m, max_len - 1, multiplier_cap)
    return OracleResult(dimension=dim[0], stabilized=dim[0] == prev_dim[0],
                        word_count=dim[1], rank=dim[2])


def _words_up_to(m: int, max_len: int, include_empty: bool):
    if include_empty:
        yield ()
    for length in range(1, max_len + 1):
        yield from itertools.product(range(m), repeat=length)


def _oracle_dim(spec: IdentitySpec, m: int, max_len: int,
                multiplier_cap: int | None) -> tuple[int, int, int]:
    reducer, words = _oracle_reduce(spec, m, max_len, multiplier_cap)
    return len(words) - reducer.rank, len(words), reducer.rank


def _oracle_reduce(spec: IdentitySpec, m: int, max_len: int,
                   multiplier_cap: int | None):
    f = spec.field
    a_raw, b_raw = spec.a.value, spec.b.value
    include_unit = b_raw != 0
    words = list(_words_up_to(m, max_len, include_unit))
    index = {w: i for i, w in enumerate(words)}
    width = len(words)
    lengths = np.array([len(w) for w in words], dtype=np.int64)
    cap = multiplier_cap if multiplier_cap is not None else 2 * max_len

    # position maps for one-letter multiplication: j -> index of (i,)+w_j
    growable = lengths < max_len
    left_map = np.full((m, width), -1, dtype=np.int64)
    right_map = np.full((m, width), -1, dtype=np.int64)
    for j, w in enumerate(words):
        if growable[j]:
            for i in range(m):
                left_map[i, j] = index[(i,) + w]
                right_map[i, j] = index[w + (i,)]

    reducer = _make_reducer(f, width)
    queue: list[np.ndarray] = []
    seen: set = set()

    def emit(rel: dict):
        if not rel:
            return
        key = tuple(sorted((index[w], c) for w, c in rel.items()))
        if key in seen:
            return
        seen.add(key)
        row = np.zeros(width, dtype=np.int64)
        for w, c in rel.items():
            row[index[w]] = c
        queue.append(row)

    def saturated(rel: dict):
        """Emit u * rel * v for every word multiplier pair that fits."""
        if not rel:
            return
        max_support = max(len(w) for w in rel)
        for lu in range(0, min(cap, max_len - max_support) + 1):
            for u in itertools.product(range(m), repeat=lu):
                room = min(cap, max_len - max_support - lu)
                for lv in range(0, room + 1):
                    for v in itertools.product(range(m), repeat=lv):
                        if lu == 0 and lv == 0:
                            emit(rel)
                        else:
                            shifted: dict[Word, int] = {}
                            for w, c in rel.items():
                                _accumulate(f, shifted, {u + w + v: c}, 1)
                            emit(shifted)

    neg_a = f.neg(a_raw)
    neg_b = f.neg(b_raw)
    for w in words:
        if w and 2 * len(w) <= max_len:
            rel: dict[Word, int] = {}
            _accumulate(f, rel, {w + w: 1}, 1)
            if neg_a:
                _accumulate(f, rel, {w: neg_a}, 1)
            if neg_b:
                _accumulate(f, rel, {(): neg_b}, 1)
            saturated(rel)

    if spec.scope is Scope.ALGEBRA:
        nonempty = [w for w in words if w]
        if b_raw:
            # the zero element forces b = 0: b*unit lies in the ideal, and
            # shifting it covers b*w for every word
            for w in words:
                emit({w: b_raw})
        for i, u in enumerate(nonempty):
            for v in nonempty[i + 1:]:
                if len(u) + len(v) > max_len:
                    continue
                rel = {}
                _accumulate(f, rel, {u + v: 1}, 1)
                _accumulate(f, rel, {v + u: 1}, 1)
                if b_raw:
                    _accumulate(f, rel, {(): b_raw}, 1)
                saturated(rel)
        for lam in range(2, f.order):
            lam_sq = f.mul(lam, lam)
            s = f.mul(a_raw, f.sub(lam_sq, lam))
            t = f.mul(b_raw, f.sub(lam_sq, 1))
            if not s and not t:
                continue
            # single-word rows need no saturation: shifting one gives the
            # row of another word, which is emitted anyway
            for w in nonempty:
                rel = {w: s}
                if t:
                    _accumulate(f, rel, {(): t}, 1)
                emit(rel)

    for start in range(0, len(queue), 1024):
        reducer.insert_batch(queue[start:start + 1024])

    # fixpoint on top of the direct saturation: derived relations that
    # are supported on words short enough to grow are themselves
    # multiplied by every generator on both sides, until the rank stops
    # growing.  The growable part of the span is found exactly, as the
    # intersection of the relation span with the short-word coordinate
    # subspace, so consequences that only exist as combinations of
    # longer rows (commutators and the like) still propagate.
    short_cols = np.flatnonzero(lengths < max_len)
    long_cols = np.flatnonzero(lengths >= max_len)
    product_seen: set = set()
    sweeps = 0
    while sweeps < cap:
        sweeps += 1
        before = reducer.rank
        products: list[np.ndarray] = []
        for short_row in _short_members(f, reducer.rows_matrix(), short_cols, long_cols):
            support = np.flatnonzero(short_row)
            if support.size == 0:
                continue
            vals = short_row[support]
            for i in range(m):
                for mapping in (left_map, right_map):
                    targets = mapping[i, support]
                    key = (i, mapping is left_map, targets.tobytes(), vals.tobytes())
                    if key in product_seen:
                        continue
                    product_seen.add(key)
                    prod = np.zeros(width, dtype=np.int64)
                    prod[targets] = vals
                    products.append(prod)
        reducer.insert_batch(products)
        if reducer.rank == before:
            break

    return reducer, words


def _short_members(f: Field, basis: np.ndarray, short_cols: np.ndarray,
                   long_cols: np.ndarray) -> list[np.ndarray]:
    """A spanning set of the intersection of the row span with the
    subspace of rows supported on the short columns only.

    Row-reduces [long block | identity]; reduced rows whose long block
    vanished record coefficient vectors combining the input rows into
    purely short-supported relations.
    """
    rank = basis.shape[0]
    if rank == 0 or long_cols.size == 0:
        return [basis[i] for i in range(rank)]
    aug = np.concatenate([basis[:, long_cols],
                          np.eye(rank, dtype=np.int64)], axis=1)
    inner = _make_reducer(f, aug.shape[1])
    inner.insert_batch(aug)
    nlong = long_cols.size
    out = []
    for i in range(inner.rank):
        red = inner.row(i)
        if red[:nlong].any():
            continue
        coeffs = red[nlong:]
        if f.kind == "prime":
            member = (coeffs.astype(np.float64) @ basis.astype(np.float64)) % f.p
            member = member.astype(np.int64)
        else:
            member = np.zeros(basis.shape[1], dtype=np.int64)
            for j in np.flatnonzero(coeffs):
                member = f.np_add(member, f.np_mul(np.int64(int(coeffs[j])), basis[j]))
        if member[long_cols].any():
            raise AssertionError("intersection member has long support")
        out.append(member)
    return out


def _make_reducer(f: Field, width: int):
    if f.kind == "prime":
        return _PrimeReducer(f.p, width)
    return _GenericReducer(f, width)


class _PrimeReducer:
    """Incremental RREF over GF(p) with float64 rows.

    Exactness: entries stay below p <= 97 and a reduction dot product is
    bounded by width * p^2 < 2**53, so float64 arithmetic is exact and
    BLAS does the heavy lifting.  ``insert`` returns the normalized
    reduced row when it extended the span, else None.
    """

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self._buf = np.zeros((width, width))
        self._rank = 0
        self._pivots = np.zeros(width, dtype=np.intp)

    @property
    def rank(self) -> int:
        return self._rank

    def row(self, idx: int) -> np.ndarray:
        return self._buf[idx].astype(np.int64)

    def rows_matrix(self) -> np.ndarray:
        return self._buf[:self._rank].astype(np.int64)

    def insert(self, row: np.ndarray) -> np.ndarray | None:
        r = row.astype(np.float64) % self.p
        if self._rank:
            piv = self._pivots[:self._rank]
            coeffs = r[piv]
            if coeffs.any():
                r = (r - coeffs @ self._buf[:self._rank]) % self.p
        return self._insert_reduced(r)

    def insert_batch(self, rows) -> None:
        """Insert many rows at once; one GEMM reduces them against the
        current basis, then survivors are folded in one by one."""
        if not len(rows):
            return
        b = np.asarray(rows, dtype=np.float64) % self.p
        start = self._rank
        if start:
            piv = self._pivots[:start]
            coeffs = b[:, piv]
            if coeffs.any():
                b = (b - coeffs @ self._buf[:start]) % self.p
        for i in range(b.shape[0]):
            r = b[i]
            if self._rank > start:
                pivn = self._pivots[start:self._rank]
                c = r[pivn]
                if c.any():
                    r = (r - c @ self._buf[start:self._rank]) % self.p
            self._insert_reduced(r)

    def _insert_reduced(self, r: np.ndarray) -> np.ndarray | None:
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return None
        pivot = int(nz[0])
        r = (r * pow(int(r[pivot]), self.p - 2, self.p)) % self.p
        col = self._buf[:self._rank, pivot].copy()
        if col.any():
            self._buf[:self._rank] = (self._buf[:self._rank] - np.outer(col, r)) % self.p
        self._buf[self._rank] = r
        self._pivots[self._rank] = pivot
        self._rank += 1
        return r.astype(np.int64)


class _GenericReducer:
    """Per-row RREF using the field's vector kernels (GF(4) path)."""

    def __init__(self, f: Field, width: int):
        self.f = f
        self.width = width
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def row(self, idx: int) -> np.ndarray:
        return self._rows[idx].copy()

    def rows_matrix(self) -> np.ndarray:
        if not self._rows:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.stack(self._rows)

    def insert_batch(self, rows) -> None:
        for row in rows:
            self.insert(np.asarray(row, dtype=np.int64))

    def insert(self, row: np.ndarray) -> np.ndarray | None:
        f = self.f
        row = row.copy()  # entries are already canonical encodings
        for i, p in enumerate(self._pivots):
            c = int(row[p])
            if c:
                row = f.np_sub(row, f.np_mul(np.int64(c), self._rows[i]))
        nz = np.flatnonzero(row)
        if nz.size == 0:
            return None
        pivot = int(nz[0])
        row = f.np_mul(np.int64(f.inv(int(row[pivot]))), row)
        for i in range(len(self._rows)):
            c = int(self._rows[i][pivot])
            if c:
                self._rows[i] = f.np_sub(self._rows[i], f.np_mul(np.int64(c), row))
        self._rows.append(row)
        self._pivots.append(pivot)
        return row.copy()
