"""Toric data for products of projective spaces and tangent-bundle deformations.

A toric variety is recorded through its homogeneous coordinates, the grading
matrix of divisor classes (one row per coordinate, one column per Picard
class), its primitive collections, and the generators of the irrelevant
ideal.  Deformations of the tangent bundle are square-free matrices over the
coordinate ring, read as maps in an Euler-type sequence; validity requires
every entry to be homogeneous of the class of its row coordinate.  The
degeneracy locus of a deformation is controlled by the ideal of maximal
minors, and the bundle condition asks that every irrelevant generator lies in
its radical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import IdealPresentation, buchberger, normal_form, radical_member
from .poly import (
    GENERATOR,
    Polynomial,
    Scalar,
    VariableTable,
    block_order,
    degrevlex,
)
from .rings import RingPresentation, stanley_reisner_ring


@dataclass(frozen=True)
class ToricData:
    """Combinatorial record of a toric variety.

    ``grading_matrix`` rows give the divisor class of each coordinate;
    ``irrelevant_generators`` are monomials in the coordinates, stored as
    exponent vectors over :attr:`coordinate_table`.
    """

    coordinates: tuple[str, ...]
    picard_rank: int
    grading_matrix: tuple[tuple[Fraction, ...], ...]
    primitive_collections: tuple[tuple[str, ...], ...]
    irrelevant_generators: tuple[tuple[int, ...], ...]

    @property
    def coordinate_table(self) -> VariableTable:
        return VariableTable.make((n, 1, GENERATOR) for n in self.coordinates)


@dataclass(frozen=True)
class DeformationMatrix:
    """Square-free matrix over the coordinate ring, one row per coordinate."""

    toric: ToricData
    entries: tuple[tuple[Polynomial, ...], ...]


@dataclass(frozen=True)
class ChernData:
    """First and second Chern classes in the Stanley-Reisner presentation."""

    presentation: RingPresentation
    c1: Polynomial
    c2: Polynomial


@dataclass(frozen=True)
class OmalousReport:
    """Outcome of the anomaly-cancellation comparison against the tangent bundle."""

    bundle_chern: ChernData
    tangent_chern: ChernData
    c1_matches: bool
    c2_matches: bool

    @property
    def ok(self) -> bool:
        return self.c1_matches and self.c2_matches


def product_projective_toric(dims: Sequence[int]) -> ToricData:
    """Toric data of P^(n1) x ... x P^(nr).

    Coordinates are x0, x1, ... grouped by factor; each factor's coordinate
    set is a primitive collection; the irrelevant ideal is generated by the
    products picking one coordinate from each factor.
    """
    dims = tuple(dims)
    if not dims or any(not isinstance(n, int) or n < 1 for n in dims):
        raise ValueError("dims must be a nonempty list of positive integers")
    rank = len(dims)
    coordinates: list[str] = []
    groups: list[list[str]] = []
    for n in dims:
        group = [f"x{len(coordinates) + i}" for i in range(n + 1)]
        coordinates.extend(group)
        groups.append(group)
    rows = []
    for factor, group in enumerate(groups):
        for _ in group:
            rows.append(
                tuple(Fraction(1 if j == factor else 0) for j in range(rank))
            )
    index = {name: i for i, name in enumerate(coordinates)}
    irrelevant = []
    for pick in itertools.product(*groups):
        exps = [0] * len(coordinates)
        for name in pick:
            exps[index[name]] = 1
        irrelevant.append(tuple(exps))
    return ToricData(
        coordinates=tuple(coordinates),
        picard_rank=rank,
        grading_matrix=tuple(rows),
        primitive_collections=tuple(tuple(g) for g in groups),
        irrelevant_generators=tuple(irrelevant),
    )


def euler_matrix_default(toric: ToricData) -> DeformationMatrix:
    """Undeformed Euler-sequence matrix: block diagonal, entry x_rho in the
    column of the factor containing rho."""
    table = toric.coordinate_table
    rank = toric.picard_rank
    zero = Polynomial.zero(table)
    rows = []
    for i, name in enumerate(toric.coordinates):
        row = [zero] * rank
        column = _class_column(toric, i)
        row[column] = Polynomial.variable(table, name)
        rows.append(tuple(row))
    return DeformationMatrix(toric, tuple(rows))


def _class_column(toric: ToricData, coordinate_index: int) -> int:
    """Column of the unit class of a coordinate; rows of product families are
    unit vectors."""
    row = toric.grading_matrix[coordinate_index]
    nonzero = [j for j, c in enumerate(row) if c]
    if len(nonzero) != 1 or row[nonzero[0]] != 1:
        raise ValueError("coordinate class is not a unit vector")
    return nonzero[0]


def p1p1_deformation(
    eps: Sequence[Scalar], gam: Sequence[Scalar]
) -> DeformationMatrix:
    """Six-parameter tangent deformation of P^1 x P^1.

    Rows over (x0, x1, x2, x3)::

        (x0,                 eps1*x0 + eps2*x1)
        (x1,                 eps3*x0          )
        (gam1*x2 + gam2*x3,  x2               )
        (gam3*x2,            x3               )
    """
    eps = tuple(Fraction(v) for v in eps)
    gam = tuple(Fraction(v) for v in gam)
    if len(eps) != 3 or len(gam) != 3:
        raise ValueError("eps and gam must each have three entries")
    toric = product_projective_toric([1, 1])
    table = toric.coordinate_table
    x0 = Polynomial.variable(table, "x0")
    x1 = Polynomial.variable(table, "x1")
    x2 = Polynomial.variable(table, "x2")
    x3 = Polynomial.variable(table, "x3")
    rows = (
        (x0, eps[0] * x0 + eps[1] * x1),
        (x1, eps[2] * x0),
        (gam[0] * x2 + gam[1] * x3, x2),
        (gam[2] * x2, x3),
    )
    return DeformationMatrix(toric, rows)


def _multidegree(toric: ToricData, exps) -> tuple[Fraction, ...]:
    """Divisor class of a coordinate monomial: sum of row classes weighted by
    exponents."""
    rank = toric.picard_rank
    out = [Fraction(0)] * rank
    for i, e in enumerate(exps):
        if e:
            for j in range(rank):
                out[j] += e * toric.grading_matrix[i][j]
    return tuple(out)


def validate_deformation(matrix: DeformationMatrix) -> list[tuple[int, int, str]]:
    """Well-formedness violations of a deformation matrix; empty means valid.

    Checks the shape (one row per coordinate, picard_rank columns), the
    shared coordinate table, and that every nonzero entry is homogeneous of
    the divisor class of its row coordinate.
    """
    toric = matrix.toric
    table = toric.coordinate_table
    violations: list[tuple[int, int, str]] = []
    if len(matrix.entries) != len(toric.coordinates):
        return [(-1, -1, "matrix must have one row per coordinate")]
    for i, row in enumerate(matrix.entries):
        if len(row) != toric.picard_rank:
            violations.append((i, -1, "row must have picard_rank entries"))
            continue
        expected = _multidegree(
            toric, tuple(1 if k == i else 0 for k in range(len(toric.coordinates)))
        )
        for j, entry in enumerate(row):
            if entry.table != table:
                violations.append((i, j, "entry over a different coordinate table"))
                continue
            if entry.is_zero():
                continue
            classes = {_multidegree(toric, m) for m, _ in entry.terms}
            if len(classes) != 1 or next(iter(classes)) != expected:
                violations.append(
                    (i, j, "entry is not homogeneous of the row coordinate class")
                )
    return violations


def minors_ideal(matrix: DeformationMatrix) -> IdealPresentation:
    """Ideal of maximal (picard_rank-sized) minors of the deformation matrix.

    Row subsets are enumerated in lexicographic order; identically zero
    minors are dropped, duplicates are kept.
    """
    toric = matrix.toric
    table = toric.coordinate_table
    rank = toric.picard_rank
    generators = []
    for rows in itertools.combinations(range(len(toric.coordinates)), rank):
        sub = [
            [matrix.entries[r][c] for c in range(rank)] for r in rows
        ]
        minor = _determinant(table, sub)
        if not minor.is_zero():
            generators.append(minor)
    return IdealPresentation(table, tuple(generators), degrevlex(table))


def _determinant(table, rows) -> Polynomial:
    n = len(rows)
    if n == 0:
        return Polynomial.constant(table, 1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Polynomial.zero(table)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = rows[0][j] * _determinant(table, minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def check_bundle_regularity(matrix: DeformationMatrix) -> bool:
    """Does the matrix define a bundle off the irrelevant locus?

    True when every irrelevant generator lies in the radical of the ideal of
    maximal minors, so the degeneracy locus is contained in the irrelevant
    locus.  The matrix must validate first.
    """
    violations = validate_deformation(matrix)
    if violations:
        raise ValueError(f"invalid deformation matrix: {violations[0][2]}")
    toric = matrix.toric
    table = toric.coordinate_table
    ideal = minors_ideal(matrix)
    for exps in toric.irrelevant_generators:
        if not radical_member(Polynomial.monomial(table, exps), ideal):
            return False
    return True


def _class_polynomials(
    presentation: RingPresentation, classes: Sequence[Sequence[Scalar]]
) -> list[Polynomial]:
    table = presentation.table
    rank = len(table)
    out = []
    for row in classes:
        row = tuple(Fraction(v) for v in row)
        if len(row) != rank:
            raise ValueError("class vector length must equal the Picard rank")
        out.append(
            Polynomial.from_terms(
                table,
                [
                    (tuple(1 if j == k else 0 for j in range(rank)), c)
                    for k, c in enumerate(row)
                    if c
                ],
            )
        )
    return out


def chern_of_twisted_sum(
    toric: ToricData, twists: Sequence[Sequence[Scalar]] | None = None
) -> ChernData:
    """c1 and c2 of a direct sum of line bundles, reduced in the
    Stanley-Reisner ring.

    With ``twists`` omitted the summands are the coordinate classes, the
    Euler-sequence presentation of the tangent bundle.  The total class is
    the product of (1 + class) over the summands; c1 and c2 are its degree
    one and two parts after normal-form reduction.
    """
    presentation = stanley_reisner_ring(toric)
    if twists is None:
        twists = toric.grading_matrix
    classes = _class_polynomials(presentation, twists)
    table = presentation.table
    order = block_order(table)
    gb = buchberger(IdealPresentation(table, presentation.relations, order))
    total = Polynomial.constant(table, 1)
    for cls in classes:
        total = total * (Polynomial.constant(table, 1) + cls)
    reduced = normal_form(total, gb.elements, order)
    degrees = table.degrees
    c1_terms = []
    c2_terms = []
    for m, c in reduced.terms:
        d = sum(e * w for e, w in zip(m, degrees))
        if d == 1:
            c1_terms.append((m, c))
        elif d == 2:
            c2_terms.append((m, c))
    return ChernData(
        presentation,
        Polynomial.from_terms(table, c1_terms),
        Polynomial.from_terms(table, c2_terms),
    )


def check_omalous(
    toric: ToricData,
    bundle: DeformationMatrix | Sequence[Sequence[Scalar]],
) -> OmalousReport:
    """Anomaly-freeness of a bundle against the tangent bundle.

    Requires c2(bundle) = c2(tangent) and c1(bundle) equal to the sum of the
    coordinate classes.  A deformation matrix is validated and contributes
    the coordinate classes themselves (deformations do not move the twists);
    a twist list contributes its own classes.
    """
    tangent = chern_of_twisted_sum(toric)
    if isinstance(bundle, DeformationMatrix):
        if bundle.toric != toric:
            raise ValueError("deformation matrix belongs to a different toric variety")
        violations = validate_deformation(bundle)
        if violations:
            raise ValueError(f"invalid deformation matrix: {violations[0][2]}")
        bundle_chern = chern_of_twisted_sum(toric)
    else:
        bundle_chern = chern_of_twisted_sum(toric, bundle)
    return OmalousReport(
        bundle_chern=bundle_chern,
        tangent_chern=tangent,
        c1_matches=bundle_chern.c1 == tangent.c1,
        c2_matches=bundle_chern.c2 == tangent.c2,
    )
