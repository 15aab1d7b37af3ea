"""Job descriptions: the JSON input document and its assembly into objects.

A job selects a variety (product of projective spaces), a ring flavor
(classical, quantum, or quantum sheaf cohomology), a bundle (the tangent
bundle, a tangent deformation of P^1 x P^1, or a plain list of line-bundle
twists), an optional trace normalization, and optional command payloads
under ``queries``.  Rationals are written as strings ``"a"`` or ``"a/b"``
(plain integers are also exact and accepted); floats are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .expr import parse_poly
from .frobenius import FrobeniusAlgebra, make_frobenius
from .poly import Polynomial
from .rings import (
    QuotientAlgebra,
    RingPresentation,
    classical_cohomology_products,
    qsc_presentation_p1p1,
    quantum_cohomology_products,
    quotient_algebra,
)
from .toric import (
    DeformationMatrix,
    ToricData,
    euler_matrix_default,
    p1p1_deformation,
    product_projective_toric,
)

RINGS = ("classical", "quantum", "qsc")
BUNDLES = ("tangent", "tangent_deformation_p1p1", "twist_list")


class JobError(ValueError):
    """Malformed or inconsistent job description."""


def parse_rational(value, label: str) -> Fraction:
    """Exact rational from a string "a" or "a/b", or a JSON integer."""
    if isinstance(value, bool):
        raise JobError(f"{label} must be a rational string or integer")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise JobError(f"{label} is not a rational: {value!r} ({e})") from None
    raise JobError(
        f"{label} must be a rational string or integer, not {type(value).__name__}"
    )


def _rational_list(values, count: int | None, label: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise JobError(f"{label} must be a list")
    if count is not None and len(values) != count:
        raise JobError(f"{label} must have {count} entries")
    return tuple(parse_rational(v, f"{label}[{i}]") for i, v in enumerate(values))


@dataclass(frozen=True)
class Job:
    dims: tuple[int, ...]
    ring: str
    bundle_type: str
    epsilon: tuple[Fraction, ...] = ()
    gamma: tuple[Fraction, ...] = ()
    twist_classes: tuple[tuple[Fraction, ...], ...] = ()
    trace_reference: str | None = None
    trace_value: Fraction | None = None
    queries: tuple[Mapping, ...] = field(default_factory=tuple)


def job_from_dict(doc) -> Job:
    if not isinstance(doc, dict):
        raise JobError("job document must be a JSON object")
    variety = doc.get("variety")
    if not isinstance(variety, dict) or variety.get("type") != "product_projective":
        raise JobError('variety must be {"type": "product_projective", "dims": [...]}')
    dims = variety.get("dims")
    if (
        not isinstance(dims, list)
        or not dims
        or any(not isinstance(n, int) or isinstance(n, bool) or n < 1 for n in dims)
    ):
        raise JobError("variety dims must be a nonempty list of positive integers")
    dims = tuple(dims)

    ring = doc.get("ring", "quantum")
    if ring not in RINGS:
        raise JobError(f"ring must be one of {RINGS}")

    bundle = doc.get("bundle", {"type": "tangent"})
    if not isinstance(bundle, dict) or bundle.get("type") not in BUNDLES:
        raise JobError(f"bundle type must be one of {BUNDLES}")
    bundle_type = bundle["type"]
    epsilon: tuple[Fraction, ...] = ()
    gamma: tuple[Fraction, ...] = ()
    twist_classes: tuple[tuple[Fraction, ...], ...] = ()
    if bundle_type == "tangent_deformation_p1p1":
        if dims != (1, 1):
            raise JobError("tangent_deformation_p1p1 requires variety dims [1, 1]")
        epsilon = _rational_list(bundle.get("epsilon"), 3, "bundle epsilon")
        gamma = _rational_list(bundle.get("gamma"), 3, "bundle gamma")
    elif bundle_type == "twist_list":
        classes = bundle.get("classes")
        if not isinstance(classes, list) or not classes:
            raise JobError("twist_list bundle requires a nonempty classes list")
        twist_classes = tuple(
            _rational_list(row, len(dims), f"bundle classes[{i}]")
            for i, row in enumerate(classes)
        )

    if ring == "qsc" and (dims != (1, 1) or bundle_type != "tangent_deformation_p1p1"):
        raise JobError(
            "qsc ring requires variety dims [1, 1] and a tangent_deformation_p1p1 bundle"
        )

    trace_reference = None
    trace_value = None
    trace = doc.get("trace")
    if trace is not None:
        if not isinstance(trace, dict) or "reference" not in trace or "value" not in trace:
            raise JobError('trace must be {"reference": "...", "value": "..."}')
        if not isinstance(trace["reference"], str):
            raise JobError("trace reference must be an expression string")
        trace_reference = trace["reference"]
        trace_value = parse_rational(trace["value"], "trace value")

    queries = doc.get("queries", [])
    if not isinstance(queries, list) or any(not isinstance(p, dict) for p in queries):
        raise JobError("queries must be a list of objects")

    return Job(
        dims=dims,
        ring=ring,
        bundle_type=bundle_type,
        epsilon=epsilon,
        gamma=gamma,
        twist_classes=twist_classes,
        trace_reference=trace_reference,
        trace_value=trace_value,
        queries=tuple(queries),
    )


def load_job(path: str) -> Job:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as e:
            raise JobError(f"input is not valid JSON: {e}") from None
    return job_from_dict(doc)


def query_payload(job: Job, command: str) -> Mapping | None:
    """First queries entry for the given command, if any."""
    for payload in job.queries:
        if payload.get("command") == command:
            return payload
    return None


def build_presentation(job: Job) -> RingPresentation:
    if job.ring == "classical":
        return classical_cohomology_products(job.dims)
    if job.ring == "quantum":
        return quantum_cohomology_products(job.dims)
    return qsc_presentation_p1p1(job.epsilon, job.gamma)


def build_quotient(job: Job) -> QuotientAlgebra:
    return quotient_algebra(build_presentation(job))


def default_trace(job: Job, presentation: RingPresentation) -> tuple[Polynomial, Fraction]:
    """Normalization used when the job does not name one.

    Products of projective spaces: tr of the top cell (the product of
    H_i^(n_i)) is 1.  Tangent deformations of P^1 x P^1: tr(psi*psit) = 1.
    """
    if job.ring == "qsc":
        text = "psi*psit"
    else:
        names = (
            ["H"] if len(job.dims) == 1 else [f"H{i + 1}" for i in range(len(job.dims))]
        )
        text = "*".join(f"{n}^{d}" if d > 1 else n for n, d in zip(names, job.dims))
    return parse_poly(text, presentation.table), Fraction(1)


def build_frobenius(job: Job, qa: QuotientAlgebra | None = None) -> FrobeniusAlgebra:
    if qa is None:
        qa = build_quotient(job)
    presentation = qa.presentation
    if job.trace_reference is not None:
        reference = parse_poly(job.trace_reference, presentation.table)
        value = job.trace_value
    else:
        reference, value = default_trace(job, presentation)
    return make_frobenius(qa, reference, value)


def build_toric(job: Job) -> ToricData:
    return product_projective_toric(job.dims)


def build_matrix(job: Job) -> DeformationMatrix | None:
    """Deformation matrix of the job's bundle; None for a twist list."""
    if job.bundle_type == "tangent":
        return euler_matrix_default(build_toric(job))
    if job.bundle_type == "tangent_deformation_p1p1":
        return p1p1_deformation(job.epsilon, job.gamma)
    return None
