"""Command-line front end.

Subcommands: verify (re-run a bundled fixture), closure (semigroup and
algebra closure of a generator file), check (test an identity on a
generator file), classify (structural case of an (a, b) pair), quotient
(normal forms, structure constants, regular representation, oracle
cross-check).  Exit codes: 0 all checks pass, 1 a mathematical check
failed, 2 usage, parse or internal error.

Generator files are JSON documents:

    {"field": {"p": 5}, "generators": [[[0, 1], [1, 0]], ...],
     "labels": ["x", "y"]}

with {"gf4": true} in place of {"p": ...} for GF(4); entries are signed
integers, reduced into the field on load.
"""

import argparse
import json
import sys
import time

from .closure import (BudgetExceededError, DEFAULT_SEMIGROUP_CAP,
                      GeneratorSet, closure_report, span_closure)
from .field import Field
from .fixtures import FIXTURES
from .identity import (CaseTag, DEFAULT_ENUM_CAP, IdentitySpec, Scope,
                       check_on_algebra, check_on_semigroup, classify)
from .linalg import Matrix
from .quotient import (IncompatibleCaseError, LinComb, build_case,
                       oracle_dimension, parse_word, word_str)
from .representation import left_regular_rep, structure_constants, verify_fixture


class GeneratorFileError(ValueError):
    pass


def load_generator_file(path: str) -> tuple[GeneratorSet, list[str]]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise GeneratorFileError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise GeneratorFileError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise GeneratorFileError("top level: expected an object")
    field_spec = doc.get("field")
    if not isinstance(field_spec, dict):
        raise GeneratorFileError('field: expected an object like {"p": 5} or {"gf4": true}')
    if field_spec.get("gf4"):
        field = Field.gf4()
    else:
        p = field_spec.get("p")
        if not isinstance(p, int):
            raise GeneratorFileError('field.p: expected a prime integer')
        try:
            field = Field.prime(p)
        except ValueError as e:
            raise GeneratorFileError(f"field.p: {e}") from e
    gens_spec = doc.get("generators")
    if not isinstance(gens_spec, list) or not gens_spec:
        raise GeneratorFileError("generators: expected a nonempty list of square matrices")
    if len(gens_spec) > 8:
        raise GeneratorFileError(f"generators: at most 8 supported, got {len(gens_spec)}")
    mats = []
    n = None
    for k, rows in enumerate(gens_spec):
        if not isinstance(rows, list) or not rows:
            raise GeneratorFileError(f"generators[{k}]: expected a nonempty list of rows")
        size = len(rows)
        if n is None:
            n = size
        elif size != n:
            raise GeneratorFileError(
                f"generators[{k}]: size {size} differs from the first generator's {n}")
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != size:
                raise GeneratorFileError(
                    f"generators[{k}] row {i}: expected {size} entries")
            for j, v in enumerate(row):
                if not isinstance(v, int):
                    raise GeneratorFileError(
                        f"generators[{k}] row {i} column {j}: expected an integer")
        mats.append(Matrix.from_rows(field, rows))
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != len(mats)
                or not all(isinstance(s, str) for s in labels)):
            raise GeneratorFileError("labels: expected one string per generator")
    else:
        labels = [word_str((i,), len(mats)) for i in range(len(mats))]
    return GeneratorSet.from_matrices(mats), labels


def _parse_field(args) -> Field:
    if getattr(args, "gf4", False):
        return Field.gf4()
    return Field.prime(args.char)


def _scope(name: str) -> Scope:
    return Scope.SEMIGROUP if name == "semigroup" else Scope.ALGEBRA


def _witness_doc(report):
    if report.witness is None:
        return None
    doc = {"matrix": report.witness.to_lists()}
    if report.witness_coords is not None:
        doc["coordinates"] = [int(c) for c in report.witness_coords]
    return doc


SATISFIED = "This algebra satisfies the given condition!"
NOT_SATISFIED = "This algebra does not satisfy the given condition!"


# ----------------------------------------------------------------------
# subcommands: each returns (json document, human lines, exit code)
# ----------------------------------------------------------------------

def cmd_verify(args) -> tuple[dict, list[str], int]:
    name = args.fixture.lower()
    if name not in FIXTURES:
        raise GeneratorFileError(f"unknown fixture {args.fixture!r}; choose one of a..g")
    rep = verify_fixture(name, enum_cap=args.cap if args.cap is not None else DEFAULT_ENUM_CAP)
    fx = rep.fixture
    lines = [f"Fixture {name}: field GF({fx.p}), "
             f"{fx.m} generators ({len(fx.matrices[0][1])}x{len(fx.matrices[0][1])})"]
    identity_ok = next(c.ok for c in rep.checks if "satisfies" in c.label)
    lines.append(SATISFIED if identity_ok else NOT_SATISFIED)
    lines.append(f"Size of A: {rep.algebra_size}")
    lines.append(f"Dimension of A as a vectorial space: {rep.algebra_dim}")
    lines.append(f"Dimension of the subspace generated by "
                 f"{{{', '.join(fx.subspace)}}}: {rep.subspace_dim}")
    for c in rep.checks:
        mark = "ok" if c.ok else "FAIL"
        detail = f" -- {c.detail}" if c.detail else ""
        lines.append(f"  [{mark}] {c.label}{detail}")
    for label, i, j, got, want in rep.rep_mismatches[:20]:
        lines.append(f"  mismatch in {label}[{i}][{j}]: generated {got}, stored {want}")
    lines.append(f"verify {name}: {'PASS' if rep.passed else 'FAIL'}")
    doc = {
        "command": "verify",
        "fixture": name,
        "field": f"GF({fx.p})",
        "identity": fx.identity_str,
        "scope": fx.scope.value,
        "passed": rep.passed,
        "size": rep.algebra_size,
        "dimension": rep.algebra_dim,
        "subspace_dimension": rep.subspace_dim,
        "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail}
                   for c in rep.checks],
        "mismatches": [list(mm) for mm in rep.rep_mismatches],
    }
    return doc, lines, 0 if rep.passed else 1


def cmd_closure(args) -> tuple[dict, list[str], int]:
    gens, labels = load_generator_file(args.gens)
    cap = args.cap if args.cap is not None else DEFAULT_SEMIGROUP_CAP
    rep = closure_report(gens, unital=args.unital, cap=cap)
    lines = [f"field {gens.field}, {len(gens.gens)} generators "
             f"({gens.n}x{gens.n}): {', '.join(labels)}"]
    zero_note = " (plus the zero matrix)" if rep.zero_absorbed else ""
    lines.append(f"semigroup size: {rep.semigroup_size} nonzero elements{zero_note}")
    lines.append(f"algebra dimension{' (unital closure)' if args.unital else ''}: "
                 f"{rep.algebra_dim}")
    if rep.has_unit:
        coords = ", ".join(str(int(c)) for c in rep.unit_coordinates)
        lines.append(f"unit: present, coordinates [{coords}]")
    else:
        lines.append("unit: none")
    if rep.nil_index is not None:
        lines.append(f"nilpotent of index {rep.nil_index}")
    else:
        lines.append("not nilpotent")
    doc = {
        "command": "closure",
        "field": str(gens.field),
        "n": gens.n,
        "generators": len(gens.gens),
        "labels": labels,
        "unital": bool(args.unital),
        "semigroup_size": rep.semigroup_size,
        "zero_absorbed": rep.zero_absorbed,
        "algebra_dim": rep.algebra_dim,
        "has_unit": rep.has_unit,
        "unit_coordinates": ([int(c) for c in rep.unit_coordinates]
                             if rep.has_unit else None),
        "nil_index": rep.nil_index,
    }
    return doc, lines, 0


def cmd_check(args) -> tuple[dict, list[str], int]:
    gens, _ = load_generator_file(args.gens)
    field = gens.field
    spec = IdentitySpec(field.element(args.a), field.element(args.b),
                        _scope(args.scope))
    if args.cap is not None:
        cap = args.cap
    else:
        cap = (DEFAULT_SEMIGROUP_CAP if spec.scope is Scope.SEMIGROUP
               else DEFAULT_ENUM_CAP)
    if spec.scope is Scope.SEMIGROUP:
        report = check_on_semigroup(gens, spec, cap=cap)
    else:
        basis = span_closure(gens)
        report = check_on_algebra(basis, spec, cap=cap)
    lines = [f"identity {spec.describe()}, scope {spec.scope.value}",
             f"elements checked: {report.elements_checked} ({report.method})",
             SATISFIED if report.holds else NOT_SATISFIED]
    if not report.holds and report.witness is not None:
        if report.witness_coords is not None:
            lines.append("witness coordinates: "
                         f"[{', '.join(str(int(c)) for c in report.witness_coords)}]")
        lines.append(f"witness matrix: {report.witness.to_lists()}")
    doc = {
        "command": "check",
        "field": str(field),
        "a": field.element(args.a).value,
        "b": field.element(args.b).value,
        "scope": spec.scope.value,
        "holds": report.holds,
        "method": report.method,
        "elements_checked": report.elements_checked,
        "witness": _witness_doc(report),
    }
    return doc, lines, 0 if report.holds else 1


def cmd_classify(args) -> tuple[dict, list[str], int]:
    field = _parse_field(args)
    spec = IdentitySpec(field.element(args.a), field.element(args.b),
                        _scope(args.scope))
    result = classify(spec)
    lines = [f"identity {spec.describe()}, scope {spec.scope.value}",
             f"case: {result.tag.value}"]
    for t in result.trace:
        lines.append(f"  constraint: {t}")
    doc = {
        "command": "classify",
        "field": str(field),
        "a": spec.a.value,
        "b": spec.b.value,
        "scope": spec.scope.value,
        "tag": result.tag.value,
        "consistent": result.consistent,
        "trace": list(result.trace),
    }
    if not result.consistent:
        return doc, lines, 1
    try:
        case = build_case(result.tag, args.m, field)
    except IncompatibleCaseError as e:
        lines.append(f"no canonical basis for m = {args.m}: {e}")
        doc["m"] = args.m
        doc["dimension"] = None
        return doc, lines, 0
    basis_words = [word_str(w, case.m) for w in case.basis]
    preview = ", ".join(basis_words[:12]) + (", ..." if len(basis_words) > 12 else "")
    lines.append(f"canonical basis (m = {args.m}): {preview}")
    lines.append(f"dimension: {case.dimension}")
    doc["m"] = args.m
    doc["dimension"] = case.dimension
    doc["basis"] = basis_words
    return doc, lines, 0


def cmd_quotient(args) -> tuple[dict, list[str], int]:
    field = _parse_field(args)
    if args.case:
        tag = CaseTag(args.case)
    else:
        if args.a is None or args.b is None or args.scope is None:
            raise GeneratorFileError(
                "quotient needs either --case or all of --a/--b/--scope")
        spec = IdentitySpec(field.element(args.a), field.element(args.b),
                            _scope(args.scope))
        result = classify(spec)
        if not result.consistent:
            lines = [f"identity {spec.describe()} is inconsistent:"]
            lines += [f"  constraint: {t}" for t in result.trace]
            return ({"command": "quotient", "tag": "inconsistent",
                     "trace": list(result.trace)}, lines, 1)
        tag = result.tag
    case = build_case(tag, args.m, field)
    basis_words = [word_str(w, case.m) for w in case.basis]
    a, b = case.identity_coefficients()
    lines = [f"case {tag.value} over {field}, m = {case.m}, "
             f"identity X^2 = {a}*X + {b}",
             f"basis ({case.dimension}): {', '.join(basis_words)}"]
    doc = {
        "command": "quotient",
        "tag": tag.value,
        "field": str(field),
        "m": case.m,
        "dimension": case.dimension,
        "basis": basis_words,
    }
    code = 0

    if args.nf:
        word = parse_word(args.nf, case.m)
        nf = case.normal_form(LinComb.from_word(field, word))
        lines.append(f"nf({args.nf}) = {nf.pretty(case.m)}")
        doc["nf"] = {"input": args.nf, "result": nf.pretty(case.m),
                     "coordinates": [int(c) for c in case.coords(nf)]}
    if args.table:
        sc = structure_constants(case)
        table_lines = []
        table_doc = []
        for i, u in enumerate(case.basis):
            for j, v in enumerate(case.basis):
                prod = sc.table[i][j]
                table_lines.append(
                    f"{word_str(u, case.m)} * {word_str(v, case.m)} = "
                    f"{prod.pretty(case.m)}")
                table_doc.append({
                    "left": word_str(u, case.m),
                    "right": word_str(v, case.m),
                    "product": prod.pretty(case.m),
                    "coordinates": [int(c) for c in case.coords(prod)],
                })
        lines.append("structure constants:")
        lines += ["  " + t for t in table_lines]
        doc["table"] = table_doc
    if args.repr:
        rep = left_regular_rep(structure_constants(case))
        lines.append(f"left regular representation on basis "
                     f"{{{', '.join(rep.basis_labels)}}}"
                     + (" (unitalized)" if rep.unitalized else ""))
        doc_mats = {}
        for label, mat in zip(rep.generator_labels, rep.matrices):
            lines.append(f"{label} =")
            for row in mat.to_lists():
                lines.append("  [" + ", ".join(str(v) for v in row) + "]")
            doc_mats[label] = mat.to_lists()
        doc["repr"] = {"basis": list(rep.basis_labels),
                       "unitalized": rep.unitalized,
                       "matrices": doc_mats}
    if args.oracle:
        spec = IdentitySpec(a, b, case.scope)
        res = oracle_dimension(spec, case.m, args.oracle)
        agree = res.dimension == case.dimension
        lines.append(f"oracle dimension (L={args.oracle}): {res.dimension}, "
                     f"stabilized: {'yes' if res.stabilized else 'no'}; "
                     f"quotient dimension: {case.dimension}; "
                     f"agreement: {'yes' if agree else 'NO'}")
        doc["oracle"] = {"max_len": args.oracle, "dimension": res.dimension,
                         "stabilized": res.stabilized,
                         "word_count": res.word_count, "rank": res.rank,
                         "agrees": agree}
        if not agree:
            code = 1
    return doc, lines, code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadalg",
        description="Associative algebras over small finite fields satisfying "
                    "quadratic identities X^2 = a*X + b")
    parser.add_argument("--json", action="store_true",
                        help="emit one JSON document instead of text")
    parser.add_argument("--timings", action="store_true",
                        help="include elapsed wall-clock time in the report")
    parser.add_argument("--cap", type=int, default=None, metavar="N",
                        help="enumeration budget override")
    parser.add_argument("--seed", type=int, default=None, metavar="N",
                        help="seed echoed into reports (reserved for "
                             "randomized subcommands)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="re-run a bundled verification fixture")
    p.add_argument("fixture", choices=sorted(FIXTURES) + [s.upper() for s in sorted(FIXTURES)],
                   help="fixture name, a..g")

    p = sub.add_parser("closure", help="closures of a generator file")
    p.add_argument("--gens", required=True, metavar="FILE")
    p.add_argument("--unital", action="store_true",
                   help="adjoin the identity matrix to the span seed")

    p = sub.add_parser("check", help="test X^2 = a*X + b on a generator file")
    p.add_argument("--gens", required=True, metavar="FILE")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--scope", choices=["semigroup", "algebra"], required=True)

    p = sub.add_parser("classify", help="structural case of an (a, b) pair")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--char", type=int, help="prime field characteristic")
    grp.add_argument("--gf4", action="store_true", help="use GF(4)")
    p.add_argument("--scope", choices=["semigroup", "algebra"], required=True)
    p.add_argument("--m", type=int, default=2, help="generator count (default 2)")

    p = sub.add_parser("quotient",
                       help="canonical quotient algebra: normal forms, tables, "
                            "representations, oracle cross-check")
    p.add_argument("--case", choices=[t.value for t in CaseTag
                                      if t is not CaseTag.INCONSISTENT])
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--scope", choices=["semigroup", "algebra"])
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--char", type=int, help="prime field characteristic")
    grp.add_argument("--gf4", action="store_true", help="use GF(4)")
    p.add_argument("--m", type=int, default=2, help="generator count (default 2)")
    p.add_argument("--nf", metavar="WORD",
                   help="print the normal form of a word like yxy or x1x2")
    p.add_argument("--table", action="store_true",
                   help="print the structure-constant table")
    p.add_argument("--repr", action="store_true",
                   help="print the left regular representation matrices")
    p.add_argument("--oracle", type=int, metavar="L",
                   help="cross-check the dimension with the brute-force "
                        "oracle at word length L")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "closure": cmd_closure,
    "check": cmd_check,
    "classify": cmd_classify,
    "quotient": cmd_quotient,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        doc, lines, code = COMMANDS[args.command](args)
    except (GeneratorFileError, IncompatibleCaseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - started
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.timings:
        doc["timings"] = {"total_s": round(elapsed, 6)}
        lines.append(f"elapsed: {elapsed:.3f}s")
    doc["exit_code"] = code
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
