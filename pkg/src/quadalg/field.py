"""Exact arithmetic in GF(p) for small primes p and in GF(4).

Elements are stored as canonical integer encodings:

* prime field GF(p): the residue 0..p-1;
* GF(4): ``c0 + 2*c1`` encoding the element ``c0 + c1*w`` where the
  adjoined element satisfies ``w**2 = w + 1``.  The encodings 0, 1, 2, 3
  therefore mean 0, 1, w, w+1, in that canonical order.

A :class:`Field` provides scalar operations on raw encodings (the fast
path used by the matrix kernels) and hands out :class:`FieldElement`
wrappers for code that wants ordinary operator syntax.
"""

import numpy as np

SUPPORTED_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
    59, 61, 67, 71, 73, 79, 83, 89, 97,
)

_GF4_LABELS = ("0", "1", "w", "w+1")


class Field:
    """Descriptor plus arithmetic for GF(p), p prime <= 97, or GF(4)."""

    __slots__ = ("kind", "p", "order")

    def __init__(self, kind: str, p: int, order: int):
        self.kind = kind
        self.p = p          # characteristic
        self.order = order  # number of elements

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported field characteristic {p}: need a prime <= 97")
        return cls("prime", p, p)

    @classmethod
    def gf4(cls) -> "Field":
        return cls("gf4", 2, 4)

    # ------------------------------------------------------------------
    # identity / printing
    # ------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "GF(4)" if self.kind == "gf4" else f"GF({self.p})"

    def label(self, a: int) -> str:
        return _GF4_LABELS[a] if self.kind == "gf4" else str(a)

    # ------------------------------------------------------------------
    # scalar arithmetic on raw encodings
    # ------------------------------------------------------------------
    def from_int(self, n: int) -> int:
        """Reduce a signed integer into the field (GF(4): via n mod 2)."""
        return n % self.p if self.kind == "prime" else n % 2

    def add(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return (a + b) % self.p
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        return (-a) % self.p if self.kind == "prime" else a

    def mul(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return (a * b) % self.p
        a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
        c0 = (a0 & b0) ^ (a1 & b1)
        c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
        return c0 | (c1 << 1)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        return self.mul(a, a)  # x**3 = 1 for nonzero x in GF(4)

    def element(self, n: int) -> "FieldElement":
        return FieldElement(self, self.from_int(n))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def all_elements(self) -> list["FieldElement"]:
        """Every field element exactly once, in canonical order."""
        return [FieldElement(self, a) for a in range(self.order)]

    # ------------------------------------------------------------------
    # vectorized kernels on numpy int64 arrays of encodings
    # ------------------------------------------------------------------
    def np_reduce(self, arr) -> np.ndarray:
        """Canonicalize an array of signed integers (entrywise from_int)."""
        a = np.asarray(arr, dtype=np.int64)
        return a % self.p if self.kind == "prime" else a % 2

    def np_add(self, a, b) -> np.ndarray:
        if self.kind == "prime":
            return (a + b) % self.p
        return a ^ b

    def np_sub(self, a, b) -> np.ndarray:
        if self.kind == "prime":
            return (a - b) % self.p
        return a ^ b

    def np_neg(self, a) -> np.ndarray:
        return (-a) % self.p if self.kind == "prime" else a.copy()

    def np_mul(self, a, b) -> np.ndarray:
        if self.kind == "prime":
            return (a * b) % self.p
        a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
        c0 = (a0 & b0) ^ (a1 & b1)
        c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
        return c0 | (c1 << 1)

    def np_matmul(self, a, b) -> np.ndarray:
        """Matrix product of 2-D encoding arrays."""
        if self.kind == "prime":
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(a.shape[1]):
            out ^= self.np_mul(a[:, k:k + 1], b[k:k + 1, :])
        return out

    def np_matmul_batch(self, a, b) -> np.ndarray:
        """Batched product of (k, n, n) stacks of matrices."""
        if self.kind == "prime":
            return np.matmul(a, b) % self.p
        n = a.shape[2]
        out = np.zeros_like(a)
        for k in range(n):
            out ^= self.np_mul(a[:, :, k][:, :, None], b[:, k, :][:, None, :])
        return out


class FieldElement:
    """An element of a :class:`Field`, in canonical reduced form.

    Immutable; mixing elements of different fields raises ValueError.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}:{self.field.label(self.value)}"

    def __str__(self):
        return self.field.label(self.value)
