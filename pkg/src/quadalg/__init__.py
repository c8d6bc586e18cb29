"""quadalg: associative algebras over small finite fields satisfying
quadratic identities X^2 = a*X + b.

Classification of the admissible (a, b) pairs, matrix semigroup and
algebra closures, the relatively free quotient algebra of each case with
its canonical basis and rewrite rules, structure constants and regular
representations, and a bundled suite of verification fixtures.
"""

from .closure import (BudgetExceededError, ClosureReport, GeneratorSet,
                      closure_report, find_unit, nilpotency_index,
                      semigroup_closure, span_closure)
from .field import Field, FieldElement
from .identity import (CaseTag, CheckReport, Classification, IdentitySpec,
                       Scope, check_on_algebra, check_on_semigroup, classify)
from .linalg import Matrix, SpanBasis
from .quotient import (IncompatibleCaseError, LinComb, OracleResult,
                       QuotientCase, build_case, generator_names,
                       oracle_dimension, parse_word, quotient_dimension,
                       word_str)
from .representation import (FixtureReport, RegularRep, StructureConstants,
                             fixture_generators, left_regular_rep,
                             structure_constants, verify_fixture)
from .fixtures import FIXTURES, Fixture

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "CaseTag", "CheckReport", "Classification",
    "ClosureReport", "FIXTURES", "Field", "FieldElement", "Fixture",
    "FixtureReport", "GeneratorSet", "IdentitySpec", "IncompatibleCaseError",
    "LinComb", "Matrix", "OracleResult", "QuotientCase", "RegularRep",
    "Scope", "SpanBasis", "StructureConstants", "build_case", "check_on_algebra",
    "check_on_semigroup", "classify", "closure_report", "find_unit",
    "fixture_generators", "generator_names", "left_regular_rep",
    "nilpotency_index", "oracle_dimension", "parse_word", "quotient_dimension",
    "semigroup_closure", "span_closure", "structure_constants",
    "verify_fixture", "word_str",
]
