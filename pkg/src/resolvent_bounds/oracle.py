"""Upper bounds on the quotient norm ``||1/(lam - z)||_{W/BW}`` by l1 minimisation.

Among polynomials of degree ``N`` that interpolate ``1/(lam - z)`` on the
spectrum (derivatives included for repeated points) we look for one of small
coefficient l1 norm.  Any feasible polynomial is an upper bound on the
quotient norm, which is all the oracle claims.

The solver is ADMM for basis pursuit: an exact projection onto the affine
constraint set (QR of the row-normalised confluent Vandermonde matrix,
computed once) alternates with complex soft-thresholding.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .errors import ConditioningError, InvalidInputError
from .function_space import wiener_norm
from .spectrum import CIRCLE_TOL, Spectrum

MAX_CONDITION = 1e12


@dataclass(frozen=True)
class QuotientProblem:
    lam: complex
    sigma: Spectrum
    degree: int
    constraints: Tuple[Tuple[complex, int, complex], ...]

    @property
    def n(self):
        return len(self.constraints)

    def matrix(self):
        """Confluent Vandermonde matrix: row ``(p, r)`` holds ``d^r/dz^r z^m`` at ``p``."""
        m = np.arange(self.degree + 1)
        rows = []
        for p, r, _ in self.constraints:
            falling = np.ones(self.degree + 1)
            for i in range(r):
                falling *= m - i
            powers = np.zeros(self.degree + 1, dtype=complex)
            powers[r:] = p ** np.arange(self.degree + 1 - r)
            rows.append(falling * powers)
        return np.array(rows)

    def targets(self):
        return np.array([t for _, _, t in self.constraints])


def quotient_problem(sigma, lam, degree=256):
    """Interpolation problem for ``1/(lam - z)`` on ``sigma``.

    The target for point ``p`` and order ``r`` is ``r! (lam - p)^-(r+1)``.
    """
    if not isinstance(sigma, Spectrum):
        sigma = Spectrum(sigma)
    lam = complex(lam)
    if abs(lam) < 1.0 - CIRCLE_TOL:
        raise InvalidInputError(f"need |lambda| >= 1, got {lam}")
    if degree < sigma.n:
        raise InvalidInputError(f"degree {degree} is below the number of constraints {sigma.n}")
    cons = []
    for p, mult in sigma.multiplicities():
        for r in range(mult):
            cons.append((p, r, math.factorial(r) / (lam - p) ** (r + 1)))
    return QuotientProblem(lam, sigma, int(degree), tuple(cons))


class OracleSolution(NamedTuple):
    value: float
    coefficients: np.ndarray
    residual: float
    iterations: int
    condition: float


def _soft(v, t):
    mag = np.abs(v)
    return v * np.maximum(1.0 - t / np.maximum(mag, 1e-300), 0.0)


def _closest_cluster(sigma):
    pts = [p for p, _ in sigma.multiplicities()]
    best = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = abs(pts[i] - pts[j])
            if best is None or d < best[0]:
                best = (d, (pts[i], pts[j]))
    return best[1] if best else tuple(pts)


def solve_quotient(problem, max_iters=20000, tol=1e-8, step=1.0, x0=None):
    """Feasible polynomial of small Wiener norm for ``problem``.

    Parameters
    ----------
    problem : QuotientProblem
    max_iters : int
    tol : float
        Stopping tolerance on the ADMM primal and dual changes, relative to
        the size of the least-norm solution.
    step : float
        Soft-threshold level in units of that size.
    x0 : array_like, optional
        Starting coefficients (zero-padded or truncated to the degree).  Its
        projection is a candidate too, so a warm start can only help.

    Returns
    -------
    OracleSolution
        ``value`` is the l1 norm of the best feasible iterate found.

    Raises
    ------
    ConditioningError
        If the row-normalised constraint matrix has condition number above
        ``1e12``; the closest pair of distinct points is attached.
    """
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    a = problem.matrix()
    b = problem.targets()
    row_norms = np.linalg.norm(a, axis=1)
    a_s = a / row_norms[:, None]
    b_s = b / row_norms
    sv = np.linalg.svd(a_s, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > MAX_CONDITION:
        cluster = _closest_cluster(problem.sigma)
        raise ConditioningError(
            f"constraint matrix condition {cond:.3g} exceeds {MAX_CONDITION:g}; "
            f"closest points {cluster}",
            cluster=cluster,
            condition=cond,
        )
    q, r = np.linalg.qr(a_s.conj().T)
    y0 = np.linalg.solve(r.conj().T, b_s)

    def project(x):
        return x - q @ (q.conj().T @ x - y0)

    x = q @ y0
    scale = float(np.max(np.abs(x))) or 1.0
    thresh = step * scale
    best_x, best_v = x, float(np.sum(np.abs(x)))
    if x0 is not None:
        w = np.zeros(problem.degree + 1, dtype=complex)
        x0 = np.asarray(x0, dtype=complex)[: w.size]
        w[: x0.size] = x0
        w = project(w)
        v = float(np.sum(np.abs(w)))
        if v < best_v:
            best_x, best_v = w, v
        x = w
    z = x.copy()
    u = np.zeros_like(x)
    it = 0
    for it in range(1, max_iters + 1):
        x = project(z - u)
        z_prev = z
        z = _soft(x + u, thresh)
        u = u + x - z
        for cand in (x, project(z)):
            v = float(np.sum(np.abs(cand)))
            if v < best_v:
                best_x, best_v = cand, v
        if np.max(np.abs(x - z)) < tol * scale and np.max(np.abs(z - z_prev)) < tol * scale:
            break
    residual = float(np.max(np.abs(a @ best_x - b)))
    best_x.setflags(write=False)
    return OracleSolution(best_v, best_x, residual, it, cond)


class Comparison(NamedTuple):
    oracle: float
    construction: float
    gap: float


def compare_with_construction(problem, projection, solution=None, **solver_kw):
    """Oracle value next to the Wiener norm of the kernel projection.

    The projection is one feasible point of the infinite-degree problem, so
    ``gap = construction - oracle`` should be nonnegative up to solver and
    truncation error.
    """
    same_lam = complex(projection.query) == complex(problem.lam)
    if not same_lam or projection.spectrum != problem.sigma:
        raise InvalidInputError("projection and problem refer to different (lambda, sigma)")
    if solution is None:
        solution = solve_quotient(problem, **solver_kw)
    construction = wiener_norm(projection.function).value
    return Comparison(solution.value, construction, construction - solution.value)

