"""Numerical verification of resolvent bounds for power-bounded matrices.

For an ``n x n`` matrix ``T`` with ``sup_k ||T^k|| = C`` and ``|lam| >= 1``::

    ||R(lam, T)|| dist(lam, sigma(T)) <= C (5 pi/3 + 2 sqrt 2) n^{3/2}.

The package evaluates both sides on seeded matrix families, rebuilds the
function-theoretic certificate behind the bound (Malmquist basis of the model
space, kernel projection, Wiener and Hardy norms), bounds the quotient norm
by l1 minimisation, and searches for large ratios.
"""

from . import blaschke, bounds, function_space, malmquist, matrix_ops, oracle, reporting, search
from .blaschke import BlaschkeFactor, BlaschkeProduct
from .bounds import (
    bound_table,
    classical_bound,
    crossover_distance,
    finite_certificate,
    hilbert_reference,
    lower_reference,
    theorem_bound,
    theorem_constant,
)
from .errors import (
    BoundViolation,
    ConditioningError,
    DivergenceError,
    DomainError,
    InvalidInputError,
    PrecisionError,
    ResolventBoundsError,
    SingularityError,
)
from .function_space import TaylorSeries, cauchy_kernel, hardy_norm, wiener_norm
from .malmquist import MalmquistBasis, build_basis, derivative_terms, project_kernel, wiener_upper_bound
from .matrix_ops import MatrixOperator, boundary_reduce, from_spectrum, power_bound, resolvent_norm, resolvent_ratio
from .oracle import compare_with_construction, quotient_problem, solve_quotient
from .reporting import BoundReport, basis_check, run_verification, verify_instance
from .search import SearchConfig, SearchRecord, contraction_search
from .search import search as extremal_search
from .spectrum import Spectrum

__version__ = "0.1.0"
