"""Batch command-line front-end.

Subcommands: ``present``, ``correlator``, ``pairing``, ``check``, ``limit``,
``gb``.  Every command reads a JSON job via ``--input`` and writes either
pretty text (default) or JSON (``--format json``) to stdout or ``--output``.
Text and JSON are rendered from the same data dictionary, so they carry the
same values, and fixed inputs produce byte-identical outputs.

Exit codes: 0 success, 1 check failure, 2 input or parse error, 3 degenerate
algebra.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .expr import ParseError, parse_poly, render
from .frobenius import (
    TraceDegenerateError,
    closure_check,
    frobenius_check,
    gram_matrix,
    three_point,
)
from .groebner import buchberger, IdealPresentation, normal_form
from .jobs import (
    Job,
    JobError,
    build_frobenius,
    build_matrix,
    build_presentation,
    build_quotient,
    build_toric,
    load_job,
    query_payload,
)
from .poly import INSTANTON, Polynomial, block_order
from .rings import (
    DegeneratePresentationError,
    classical_cohomology_products,
    presentations_isomorphic_by_renaming,
    quantum_cohomology_products,
    quotient_algebra,
    substitute,
)
from .toric import check_bundle_regularity, check_omalous, validate_deformation


def _variety_text(job: Job) -> str:
    return " x ".join(f"P^{n}" for n in job.dims)


def _monomial_string(table, exps) -> str:
    return render(Polynomial.monomial(table, exps))


def _fraction_string(value: Fraction) -> str:
    return str(value)


def _presentation_data(job: Job, presentation, qa) -> dict:
    table = presentation.table
    return {
        "command": "present",
        "variety": _variety_text(job),
        "ring": job.ring,
        "description": presentation.description,
        "variables": [
            {"name": v.name, "degree": v.degree, "block": v.block}
            for v in table.entries
        ],
        "relations": [render(r) for r in presentation.relations],
        "module_basis": [_monomial_string(table, m) for m in qa.module_basis],
        "graded_dimensions": list(qa.graded_dimensions()),
    }


def _presentation_text(data: dict) -> str:
    lines = [f"presentation: {data['description']}"]
    lines.append(
        "variables: "
        + ", ".join(
            f"{v['name']} (degree {v['degree']}, {v['block']})"
            for v in data["variables"]
        )
    )
    lines.append("relations:")
    for r in data["relations"]:
        lines.append(f"  {r}")
    lines.append("module basis: " + ", ".join(data["module_basis"]))
    lines.append(
        "graded dimensions: " + " ".join(str(d) for d in data["graded_dimensions"])
    )
    return "\n".join(lines) + "\n"


def run_present(job: Job) -> tuple[dict, int]:
    presentation = build_presentation(job)
    qa = quotient_algebra(presentation)
    return _presentation_data(job, presentation, qa), 0


def _correlator_inputs(job: Job, exprs) -> list[str]:
    if exprs:
        if len(exprs) != 3:
            raise JobError("correlator needs exactly three expressions")
        return list(exprs)
    payload = query_payload(job, "correlator")
    if payload is None or "inputs" not in payload:
        raise JobError(
            "correlator needs three expressions, as arguments or in a queries entry"
        )
    inputs = payload["inputs"]
    if not isinstance(inputs, list) or len(inputs) != 3 or any(
        not isinstance(s, str) for s in inputs
    ):
        raise JobError("correlator queries entry must list three expression strings")
    return list(inputs)


def run_correlator(job: Job, exprs) -> tuple[dict, int]:
    texts = _correlator_inputs(job, exprs)
    qa = build_quotient(job)
    table = qa.presentation.table
    fa = build_frobenius(job, qa)
    parsed = [parse_poly(t, table) for t in texts]
    result = three_point(fa, *parsed)
    instanton = table.indices_in(INSTANTON)
    rows = []
    for m, c in sorted(result.value.terms, key=lambda t: (sum(t[0]), t[0])):
        rows.append(
            {
                "beta": [m[i] for i in instanton],
                "coefficient": _fraction_string(c),
            }
        )
    data = {
        "command": "correlator",
        "variety": _variety_text(job),
        "ring": job.ring,
        "inputs": [render(p) for p in parsed],
        "value": render(result.value),
        "instanton_variables": [table.entries[i].name for i in instanton],
        "coefficients": rows,
    }
    return data, 0


def _correlator_text(data: dict) -> str:
    lines = [f"correlator <{', '.join(data['inputs'])}>"]
    lines.append(f"value: {data['value']}")
    if data["coefficients"]:
        lines.append(
            "coefficients by instanton degree ("
            + ", ".join(data["instanton_variables"])
            + "):"
        )
        for row in data["coefficients"]:
            beta = ", ".join(str(b) for b in row["beta"])
            lines.append(f"  beta ({beta}): {row['coefficient']}")
    return "\n".join(lines) + "\n"


def run_pairing(job: Job) -> tuple[dict, int]:
    qa = build_quotient(job)
    table = qa.presentation.table
    fa = build_frobenius(job, qa)
    gram = gram_matrix(fa)
    constant = gram.determinant.coefficient(table.unit_monomial())
    data = {
        "command": "pairing",
        "variety": _variety_text(job),
        "ring": job.ring,
        "basis": [_monomial_string(table, m) for m in gram.basis],
        "matrix": [[render(e) for e in row] for row in gram.entries],
        "determinant": render(gram.determinant),
        "determinant_constant_term": _fraction_string(constant),
        "nondegenerate": gram.nondegenerate,
    }
    return data, 0


def _pairing_text(data: dict) -> str:
    lines = ["pairing matrix on module basis: " + ", ".join(data["basis"])]
    for row in data["matrix"]:
        lines.append("  [" + ", ".join(row) + "]")
    lines.append(f"determinant: {data['determinant']}")
    lines.append(f"constant term: {data['determinant_constant_term']}")
    lines.append("nondegenerate: " + ("yes" if data["nondegenerate"] else "no"))
    return "\n".join(lines) + "\n"


def run_check(job: Job) -> tuple[dict, int]:
    checks = []
    toric = build_toric(job)
    matrix = build_matrix(job)
    omalous = None
    if matrix is not None:
        violations = validate_deformation(matrix)
        checks.append(
            {
                "name": "deformation_validation",
                "passed": not violations,
                "details": [
                    f"row {r} column {c}: {reason}" for r, c, reason in violations
                ],
            }
        )
        regular = not violations and check_bundle_regularity(matrix)
        checks.append(
            {
                "name": "bundle_regularity",
                "passed": regular,
                "details": [],
            }
        )
        if not violations:
            omalous = check_omalous(toric, matrix)
    else:
        omalous = check_omalous(toric, job.twist_classes)
    if omalous is None:
        checks.append(
            {
                "name": "omalous",
                "passed": False,
                "details": ["skipped: invalid deformation matrix"],
            }
        )
    else:
        checks.append(
            {
                "name": "omalous",
                "passed": omalous.ok,
                "details": [
                    f"bundle c1: {render(omalous.bundle_chern.c1)}",
                    f"tangent c1: {render(omalous.tangent_chern.c1)}",
                    f"bundle c2: {render(omalous.bundle_chern.c2)}",
                    f"tangent c2: {render(omalous.tangent_chern.c2)}",
                ],
            }
        )
    qa = build_quotient(job)
    fa = build_frobenius(job, qa)
    report = frobenius_check(fa)
    checks.append(
        {
            "name": "frobenius",
            "passed": report.ok,
            "details": list(
                report.symmetry_failures
                + report.compatibility_failures
                + report.unit_failures
                + report.grading_failures
            ),
        }
    )
    checks.append(
        {
            "name": "closure",
            "passed": closure_check(fa),
            "details": [],
        }
    )
    gram = gram_matrix(fa)
    constant = gram.determinant.coefficient(qa.presentation.table.unit_monomial())
    checks.append(
        {
            "name": "gram_nondegenerate",
            "passed": gram.nondegenerate,
            "details": [f"determinant constant term: {_fraction_string(constant)}"],
        }
    )
    all_passed = all(c["passed"] for c in checks)
    data = {
        "command": "check",
        "variety": _variety_text(job),
        "ring": job.ring,
        "bundle": job.bundle_type,
        "checks": checks,
        "all_passed": all_passed,
    }
    return data, 0 if all_passed else 1


def _check_text(data: dict) -> str:
    lines = [f"checks for {data['variety']} ({data['ring']} ring, {data['bundle']} bundle):"]
    for check in data["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        lines.append(f"  {check['name']}: {status}")
        for detail in check["details"]:
            lines.append(f"    {detail}")
    lines.append("all passed: " + ("yes" if data["all_passed"] else "no"))
    return "\n".join(lines) + "\n"


def _limit_mode(job: Job, mode) -> str:
    if mode:
        return mode
    payload = query_payload(job, "limit")
    if payload is not None and payload.get("mode") in ("classical", "undeform"):
        return payload["mode"]
    raise JobError("limit needs a mode: classical or undeform")


def run_limit(job: Job, mode) -> tuple[dict, int]:
    mode = _limit_mode(job, mode)
    presentation = build_presentation(job)
    if mode == "classical":
        instanton_names = [
            v.name for v in presentation.table.entries if v.block == INSTANTON
        ]
        limited = substitute(presentation, {n: 0 for n in instanton_names})
        qa = quotient_algebra(limited)
        if job.ring == "quantum":
            target = classical_cohomology_products(job.dims)
            renaming: dict = {}
            isomorphic = presentations_isomorphic_by_renaming(limited, target, renaming)
            target_description = target.description
        elif job.ring == "classical":
            target = classical_cohomology_products(job.dims)
            renaming = {}
            isomorphic = presentations_isomorphic_by_renaming(limited, target, renaming)
            target_description = target.description
        else:
            target_description = None
            renaming = {}
            isomorphic = None
    else:
        if job.ring != "qsc":
            raise JobError("limit mode undeform requires the qsc ring")
        limited = presentation
        qa = quotient_algebra(limited)
        target = quantum_cohomology_products([1, 1])
        renaming = {"psi": "H1", "psit": "H2"}
        isomorphic = presentations_isomorphic_by_renaming(limited, target, renaming)
        target_description = target.description
    data = {
        "command": "limit",
        "mode": mode,
        "source": presentation.description,
        "result_description": limited.description,
        "relations": [render(r) for r in limited.relations],
        "graded_dimensions": list(qa.graded_dimensions()),
        "target": target_description,
        "renaming": renaming,
        "isomorphic": isomorphic,
    }
    return data, 0


def _limit_text(data: dict) -> str:
    lines = [f"limit ({data['mode']}) of {data['source']}"]
    lines.append("relations:")
    for r in data["relations"]:
        lines.append(f"  {r}")
    lines.append(
        "graded dimensions: " + " ".join(str(d) for d in data["graded_dimensions"])
    )
    if data["target"] is None:
        lines.append("target: none")
    else:
        lines.append(f"target: {data['target']}")
        if data["renaming"]:
            pairs = ", ".join(f"{a} -> {b}" for a, b in sorted(data["renaming"].items()))
            lines.append(f"renaming: {pairs}")
        lines.append("isomorphic: " + ("yes" if data["isomorphic"] else "no"))
    return "\n".join(lines) + "\n"


def run_gb(job: Job) -> tuple[dict, int]:
    presentation = build_presentation(job)
    order = block_order(presentation.table)
    if presentation.relations:
        gb = buchberger(
            IdealPresentation(presentation.table, presentation.relations, order)
        )
        elements = [render(g) for g in gb.elements]
    else:
        elements = []
    data = {
        "command": "gb",
        "variety": _variety_text(job),
        "ring": job.ring,
        "description": presentation.description,
        "order": "block",
        "basis": elements,
    }
    return data, 0


def _gb_text(data: dict) -> str:
    lines = [f"reduced Groebner basis ({data['order']} order) of {data['description']}:"]
    for g in data["basis"]:
        lines.append(f"  {g}")
    return "\n".join(lines) + "\n"


_TEXT_RENDERERS = {
    "present": _presentation_text,
    "correlator": _correlator_text,
    "pairing": _pairing_text,
    "check": _check_text,
    "limit": _limit_text,
    "gb": _gb_text,
}


def render_output(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    return _TEXT_RENDERERS[data["command"]](data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcohom",
        description="Exact quantum cohomology and quantum sheaf cohomology rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="path to a JSON job file")
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )
        p.add_argument("--output", help="write output to this file instead of stdout")

    common(sub.add_parser("present", help="render the ring presentation"))
    p_corr = sub.add_parser("correlator", help="three-point correlator")
    common(p_corr)
    p_corr.add_argument("exprs", nargs="*", help="three polynomial expressions")
    common(sub.add_parser("pairing", help="Gram matrix of the trace pairing"))
    common(sub.add_parser("check", help="bundle and Frobenius validity checks"))
    p_limit = sub.add_parser("limit", help="classical or undeformation limit")
    common(p_limit)
    p_limit.add_argument(
        "mode", nargs="?", choices=("classical", "undeform"), help="limit mode"
    )
    common(sub.add_parser("gb", help="reduced Groebner basis of the relations"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = load_job(args.input)
        if args.command == "present":
            data, code = run_present(job)
        elif args.command == "correlator":
            data, code = run_correlator(job, args.exprs)
        elif args.command == "pairing":
            data, code = run_pairing(job)
        elif args.command == "check":
            data, code = run_check(job)
        elif args.command == "limit":
            data, code = run_limit(job, args.mode)
        else:
            data, code = run_gb(job)
    except (DegeneratePresentationError, TraceDegenerateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (JobError, ParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = render_output(data, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
