"""Trace functionals, pairings and correlators on quotient algebras.

The trace is fixed by a single normalization: the user names a homogeneous
reference element of top degree and its trace value.  Reducing the reference
and setting the instanton variables to zero must leave a nonzero multiple of
the unique top-degree staircase monomial; the trace of that monomial is then
derived from the requested value and every other staircase monomial of lower
degree traces to zero.  Instanton monomials pass through the trace as
factors, so traces, pairings and three-point functions are polynomials in the
instanton variables with exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import GENERATOR, INSTANTON, Polynomial, Scalar, monomial_mul
from .rings import QuotientAlgebra


class TraceDegenerateError(ValueError):
    """The requested normalization does not determine a trace."""


@dataclass(frozen=True)
class TraceFunctional:
    """Linear functional determined by one top-degree normalization."""

    reference_element: Polynomial
    reference_value: Fraction
    top_degree: int
    top_monomial: tuple
    top_coefficient: Fraction  # derived trace of the top staircase monomial


@dataclass(frozen=True)
class FrobeniusAlgebra:
    algebra: QuotientAlgebra
    trace: TraceFunctional


@dataclass(frozen=True)
class CorrelatorResult:
    """Three-point value: a polynomial supported on the instanton variables."""

    value: Polynomial

    def __post_init__(self) -> None:
        table = self.value.table
        gen = set(table.indices_in(GENERATOR))
        for m, _ in self.value.terms:
            if any(e and i in gen for i, e in enumerate(m)):
                raise ValueError("correlator value must not involve generator variables")


@dataclass(frozen=True)
class GramMatrix:
    """Pairing matrix on the module basis, with its exact determinant."""

    basis: tuple[tuple, ...]
    entries: tuple[tuple[Polynomial, ...], ...]
    determinant: Polynomial
    nondegenerate: bool  # nonzero constant term of the determinant


@dataclass(frozen=True)
class FrobeniusReport:
    """Failure lists for the Frobenius axioms; empty lists mean all hold."""

    symmetry_failures: tuple[str, ...]
    compatibility_failures: tuple[str, ...]
    unit_failures: tuple[str, ...]
    grading_failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (
            self.symmetry_failures
            or self.compatibility_failures
            or self.unit_failures
            or self.grading_failures
        )


def _split_generator(table, exps):
    """Split an exponent vector into its generator part and the rest."""
    gen = set(table.indices_in(GENERATOR))
    gen_part = tuple(e if i in gen else 0 for i, e in enumerate(exps))
    rest = tuple(0 if i in gen else e for i, e in enumerate(exps))
    return gen_part, rest


def make_frobenius(
    qa: QuotientAlgebra, reference_element: Polynomial, reference_value: Scalar
) -> FrobeniusAlgebra:
    """Derive the trace from one normalization tr(reference) = value.

    The reference must be homogeneous of the top staircase degree.  Raises
    :class:`TraceDegenerateError` when the top-degree staircase component is
    not one-dimensional or the reduced reference vanishes at q = 0.
    """
    table = qa.presentation.table
    if reference_element.table != table:
        raise ValueError("reference element over a different table")
    value = Fraction(reference_value)
    degrees = qa.basis_degrees()
    top = max(degrees)
    if reference_element.graded_degree() != top:
        raise ValueError(
            f"reference element must be homogeneous of top degree {top}"
        )
    top_monomials = [m for m, d in zip(qa.module_basis, degrees) if d == top]
    if len(top_monomials) != 1:
        raise TraceDegenerateError(
            "trace degenerate: top-degree staircase component is not one-dimensional"
        )
    top_monomial = top_monomials[0]
    reduced = qa.reduce(reference_element)
    classical = Fraction(0)
    for m, c in reduced.terms:
        gen_part, rest = _split_generator(table, m)
        if any(rest):
            continue
        if gen_part != top_monomial:
            raise TraceDegenerateError(
                "trace degenerate: reference reduces outside the top staircase monomial"
            )
        classical += c
    if not classical:
        raise TraceDegenerateError(
            "trace degenerate: reference vanishes at q = 0"
        )
    trace = TraceFunctional(
        reference_element=reference_element,
        reference_value=value,
        top_degree=top,
        top_monomial=top_monomial,
        top_coefficient=value / classical,
    )
    return FrobeniusAlgebra(qa, trace)


def trace(fa: FrobeniusAlgebra, x: Polynomial) -> Polynomial:
    """Trace of x: instanton-variable polynomial, linear over q-monomials."""
    table = fa.algebra.presentation.table
    reduced = fa.algebra.reduce(x)
    out = []
    for m, c in reduced.terms:
        gen_part, rest = _split_generator(table, m)
        if gen_part == fa.trace.top_monomial:
            out.append((rest, c * fa.trace.top_coefficient))
    return Polynomial.from_terms(table, out)


def quantum_product(fa: FrobeniusAlgebra, a: Polynomial, b: Polynomial) -> Polynomial:
    """Product in the quotient algebra: the normal form of a*b."""
    return fa.algebra.reduce(a * b)


def pairing(fa: FrobeniusAlgebra, a: Polynomial, b: Polynomial) -> Polynomial:
    """tr(a*b), a polynomial in the instanton variables."""
    return trace(fa, a * b)


def three_point(
    fa: FrobeniusAlgebra, a: Polynomial, b: Polynomial, c: Polynomial
) -> CorrelatorResult:
    """Three-point correlator tr(a*b*c)."""
    return CorrelatorResult(trace(fa, a * b * c))


def instanton_coefficient(result: CorrelatorResult, beta: Sequence[int]) -> Fraction:
    """Coefficient of q^beta; beta indexes the instanton variables in order."""
    table = result.value.table
    instanton = table.indices_in(INSTANTON)
    beta = tuple(beta)
    if len(beta) != len(instanton):
        raise ValueError(
            f"beta must have {len(instanton)} entries, one per instanton variable"
        )
    target = [0] * len(table)
    for i, e in zip(instanton, beta):
        target[i] = e
    return result.value.coefficient(tuple(target))


def _basis_polynomial(fa: FrobeniusAlgebra, exps) -> Polynomial:
    return Polynomial.monomial(fa.algebra.presentation.table, exps)


def gram_matrix(fa: FrobeniusAlgebra) -> GramMatrix:
    """Pairing matrix over the module basis with its exact determinant.

    Nondegeneracy is judged by the constant term of the determinant (its value
    with all instanton variables at zero).
    """
    basis = fa.algebra.module_basis
    table = fa.algebra.presentation.table
    polys = [_basis_polynomial(fa, m) for m in basis]
    entries = tuple(
        tuple(pairing(fa, polys[i], polys[j]) for j in range(len(basis)))
        for i in range(len(basis))
    )
    det = _poly_determinant(table, entries)
    constant = det.coefficient(table.unit_monomial())
    return GramMatrix(basis, entries, det, bool(constant))


def _poly_determinant(table, rows) -> Polynomial:
    """Exact determinant of a polynomial matrix by subset dynamic programming.

    dp[mask] is the determinant of the submatrix on the first popcount(mask)
    rows and the column set mask, built one row at a time with sign-tracked
    Laplace expansion.
    """
    n = len(rows)
    if n == 0:
        return Polynomial.constant(table, 1)
    dp = {0: Polynomial.constant(table, 1)}
    for r in range(n):
        nxt: dict[int, Polynomial] = {}
        for mask, sub in dp.items():
            if sub.is_zero():
                continue
            # sign of placing column j: parity of used columns above j,
            # the inversions the new row introduces
            sign = 1
            for j in range(n - 1, -1, -1):
                bit = 1 << j
                if mask & bit:
                    sign = -sign
                    continue
                entry = rows[r][j]
                if not entry.is_zero():
                    term = sub * entry
                    if sign < 0:
                        term = -term
                    new_mask = mask | bit
                    if new_mask in nxt:
                        nxt[new_mask] = nxt[new_mask] + term
                    else:
                        nxt[new_mask] = term
        dp = nxt
        if not dp:
            return Polynomial.zero(table)
    return dp.get((1 << n) - 1, Polynomial.zero(table))


def frobenius_check(fa: FrobeniusAlgebra) -> FrobeniusReport:
    """Verify the Frobenius axioms on every module basis pair and triple.

    Checks pairing symmetry, compatibility tr((a*b)*c) = tr(a*(b*c)), the
    unit law tr(1*x) = tr(x), and vanishing of the trace on basis monomials
    below the top degree.
    """
    basis = fa.algebra.module_basis
    polys = [_basis_polynomial(fa, m) for m in basis]
    names = [str(p) for p in polys]
    degrees = fa.algebra.basis_degrees()

    symmetry = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if pairing(fa, polys[i], polys[j]) != pairing(fa, polys[j], polys[i]):
                symmetry.append(f"pairing({names[i]}, {names[j]}) not symmetric")

    compatibility = []
    for i in range(len(basis)):
        for j in range(len(basis)):
            for k in range(len(basis)):
                left = trace(fa, quantum_product(fa, polys[i], polys[j]) * polys[k])
                right = trace(fa, polys[i] * quantum_product(fa, polys[j], polys[k]))
                if left != right:
                    compatibility.append(
                        f"tr(({names[i]}*{names[j]})*{names[k]}) != "
                        f"tr({names[i]}*({names[j]}*{names[k]}))"
                    )

    one = Polynomial.constant(fa.algebra.presentation.table, 1)
    unit = []
    for i in range(len(basis)):
        if trace(fa, one * polys[i]) != trace(fa, polys[i]):
            unit.append(f"tr(1*{names[i]}) != tr({names[i]})")

    grading = []
    for i, d in enumerate(degrees):
        if d != fa.trace.top_degree and not trace(fa, polys[i]).is_zero():
            grading.append(f"tr({names[i]}) nonzero below top degree")

    return FrobeniusReport(
        tuple(symmetry), tuple(compatibility), tuple(unit), tuple(grading)
    )


def closure_check(fa: FrobeniusAlgebra) -> bool:
    """Every product of basis monomials reduces into the staircase span.

    The normal form of each pairwise product must be supported on module
    basis monomials with instanton-only coefficient monomials attached.
    """
    table = fa.algebra.presentation.table
    basis = set(fa.algebra.module_basis)
    for ma in fa.algebra.module_basis:
        for mb in fa.algebra.module_basis:
            product = Polynomial.monomial(table, monomial_mul(ma, mb))
            reduced = fa.algebra.reduce(product)
            for m, _ in reduced.terms:
                gen_part, _ = _split_generator(table, m)
                if gen_part not in basis:
                    return False
    return True
