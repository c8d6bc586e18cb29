"""Bundled verification fixtures: seven generator families with their
expected behaviour.

Each fixture stores its generator matrices as signed integer
arrays (reduced into the field on load, e.g. -3 and 3 become 0 mod 3)
together with what the corresponding verification script asserts: the
identity and its scope, the algebra dimension, commutativity and
nilpotency where applicable, and the spanning set whose dimension is
reported.
"""

from dataclasses import dataclass

from .identity import CaseTag, Scope


@dataclass(frozen=True)
class Fixture:
    name: str
    p: int                       # field characteristic (all fixtures are prime fields)
    tag: CaseTag
    m: int
    a: int
    b: int
    scope: Scope
    unitalize: bool              # adjoin a unit row to the regular representation
    expected_dim: int
    identity_str: str
    matrices: tuple[tuple[str, tuple], ...]
    subspace: tuple[str, ...]    # words spanning the reported subspace; "1" = identity
    check_abelian: bool = False
    nil_index: int | None = None


FIXTURES: dict[str, Fixture] = {}


def _add(fx: Fixture):
    FIXTURES[fx.name] = fx


_add(Fixture(
    name="a", p=3, tag=CaseTag.NIL_SQUARE, m=2, a=0, b=0, scope=Scope.ALGEBRA,
    unitalize=True, expected_dim=3, identity_str="X^2 = 0",
    matrices=(
        ("x", ((0, 1, 0, 0),
               (0, 0, 0, 0),
               (0, 0, 0, 1),
               (0, 0, 0, 0))),
        ("y", ((0, 0, 1, 0),
               (0, 0, 0, -1),
               (0, 0, 0, 0),
               (0, 0, 0, 0))),
    ),
    subspace=("x", "y", "xy"),
    nil_index=3,
))

_add(Fixture(
    name="b", p=5, tag=CaseTag.INVOLUTION, m=2, a=0, b=1, scope=Scope.SEMIGROUP,
    unitalize=False, expected_dim=4, identity_str="X^2 = 1",
    matrices=(
        ("x", ((0, 1, 0, 0),
               (1, 0, 0, 0),
               (0, 0, 0, 1),
               (0, 0, 1, 0))),
        ("y", ((0, 0, 1, 0),
               (0, 0, 0, 1),
               (1, 0, 0, 0),
               (0, 1, 0, 0))),
    ),
    subspace=("1", "x", "y", "xy"),
))

_add(Fixture(
    name="c", p=2, tag=CaseTag.IDEMPOTENT_ALGEBRA, m=2, a=1, b=0, scope=Scope.ALGEBRA,
    unitalize=False, expected_dim=3, identity_str="X^2 = X",
    matrices=(
        ("x", ((1, 0, 0),
               (0, 0, 1),
               (0, 0, 1))),
        ("y", ((0, 0, 1),
               (0, 1, 0),
               (0, 0, 1))),
    ),
    subspace=("x", "y", "xy"),
    check_abelian=True,
))

_add(Fixture(
    name="d", p=2, tag=CaseTag.IDEMPOTENT_ALGEBRA, m=3, a=1, b=0, scope=Scope.ALGEBRA,
    unitalize=False, expected_dim=7, identity_str="X^2 = X",
    matrices=(
        ("x", ((1, 0, 0, 0, 0, 0, 0),
               (0, 0, 0, 1, 0, 0, 0),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 1, 0, 0, 0),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 0, 0, 1),
               (0, 0, 0, 0, 0, 0, 1))),
        ("y", ((0, 0, 0, 1, 0, 0, 0),
               (0, 1, 0, 0, 0, 0, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 0, 1, 0, 0, 0),
               (0, 0, 0, 0, 0, 0, 1),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 0, 0, 0, 0, 1))),
        ("z", ((0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 1, 0, 0, 0, 0),
               (0, 0, 0, 0, 0, 0, 1),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 0, 0, 0, 0, 1))),
    ),
    subspace=("x", "y", "z", "xy", "xz", "yz", "xyz"),
    check_abelian=True,
))

_add(Fixture(
    name="e", p=5, tag=CaseTag.IDEMPOTENT_SEMIGROUP, m=2, a=1, b=0, scope=Scope.SEMIGROUP,
    unitalize=True, expected_dim=6, identity_str="X^2 = X",
    matrices=(
        ("x", ((0, 1, 0, 0, 0, 0, 0),
               (0, 1, 0, 0, 0, 0, 0),
               (0, 0, 0, 1, 0, 0, 0),
               (0, 0, 0, 1, 0, 0, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, 0, 1, 0, 0, 0))),
        ("y", ((0, 0, 1, 0, 0, 0, 0),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 1, 0, 0, 0, 0),
               (0, 0, 0, 0, 0, 0, 1),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 0, 0, 1))),
    ),
    subspace=("x", "y", "xy", "yx", "xyx", "yxy"),
))

_add(Fixture(
    name="f", p=5, tag=CaseTag.UNIPOTENT, m=2, a=2, b=-1, scope=Scope.SEMIGROUP,
    unitalize=False, expected_dim=4, identity_str="X^2 = 2X - 1",
    matrices=(
        ("x", ((0, 1, 0, 0),
               (-1, 2, 0, 0),
               (0, 0, 0, 1),
               (0, 0, -1, 2))),
        ("y", ((0, 0, 1, 0),
               (-2, 2, 2, -1),
               (-1, 0, 2, 0),
               (-2, 1, 2, 0))),
    ),
    subspace=("1", "x", "y", "xy"),
))

_add(Fixture(
    name="g", p=3, tag=CaseTag.UNIPOTENT, m=3, a=2, b=-1, scope=Scope.SEMIGROUP,
    unitalize=False, expected_dim=7, identity_str="X^2 = 2X - 1",
    matrices=(
        ("x", ((0, 1, 0, 0, 0, 0, 0),
               (-1, 2, 0, 0, 0, 0, 0),
               (0, 0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 0, 1, 0),
               (0, 0, -1, 0, 2, 0, 0),
               (0, 0, 0, -1, 0, 2, 0),
               (1, -1, -1, -1, 1, 1, 1))),
        ("y", ((0, 0, 1, 0, 0, 0, 0),
               (-2, 2, 2, 0, -1, 0, 0),
               (-1, 0, 2, 0, 0, 0, 0),
               (0, 0, 0, 0, 0, 0, 1),
               (-2, 1, 2, 0, 0, 0, 0),
               (-1, 1, 1, -1, -1, 1, 1),
               (0, 0, 0, -1, 0, 0, 2))),
        ("z", ((0, 0, 0, 1, 0, 0, 0),
               (-2, 2, 0, 2, 0, -1, 0),
               (-2, 0, 2, 2, 0, 0, -1),
               (-1, 0, 0, 2, 0, 0, 0),
               (-3, 1, 1, 3, 1, -1, -1),
               (-2, 1, 0, 2, 0, 0, 0),
               (-2, 0, 1, 2, 0, 0, 0))),
    ),
    subspace=("1", "x", "y", "z", "xy", "xz", "yz"),
))
