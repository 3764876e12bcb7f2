"""Analytic functions on the unit disk as truncated Taylor series.

A :class:`TaylorSeries` stores the coefficients ``c_0..c_N`` together with a
geometric envelope ``|c_m| <= A * rho**m`` valid for every ``m > N``.  The
envelope is what turns truncated sums into certified quantities: the Wiener
norm of the discarded tail is at most ``A * rho**(N+1) / (1 - rho)``.

``decay_rate == 0`` marks an exact polynomial (no tail at all).

Arithmetic keeps the envelope valid.  When two genuinely infinite series are
combined the product coefficients pick up a polynomial factor ``(m + 1)``,
which no constant can absorb at the same rate, so the rate is nudged towards
one by :func:`_inflate` and the constant absorbs ``max_m (m+1) q**m``.
"""

from typing import NamedTuple

import numpy as np

from .errors import DomainError

DEFAULT_DEGREE = 4096
DEFAULT_SAMPLES = 8192

_EDGE_SLACK = 1e-12
# Positive decay rates are raised to at least this value.  A larger rate never
# invalidates an envelope, and it keeps r**-j weights of short polynomials finite.
RATE_FLOOR = 0.05


class Bounded(NamedTuple):
    """A computed value and a certified bound on the neglected part."""

    value: float
    error: float


class TaylorSeries:
    """Truncated power series with a certified geometric tail.

    Parameters
    ----------
    coeffs : array_like of complex
        Stored coefficients ``c_0..c_N``.
    decay_rate : float
        Rate ``rho`` in ``[0, 1)``; ``0`` means the series is a polynomial.
    tail_constant : float
        Constant ``A >= 0`` with ``|c_m| <= A rho**m`` for ``m > N``.
    """

    __slots__ = ("coeffs", "decay_rate", "tail_constant")

    def __init__(self, coeffs, decay_rate=0.0, tail_constant=0.0):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        decay_rate = float(decay_rate)
        if 0.0 < decay_rate < RATE_FLOOR:
            decay_rate = RATE_FLOOR
        tail_constant = float(tail_constant)
        if not 0.0 <= decay_rate < 1.0:
            raise DomainError(f"decay rate must lie in [0, 1), got {decay_rate}")
        if tail_constant < 0 or np.isnan(tail_constant):
            raise DomainError(f"tail constant must be nonnegative, got {tail_constant}")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "decay_rate", decay_rate)
        object.__setattr__(self, "tail_constant", tail_constant if decay_rate > 0 else 0.0)

    def __setattr__(self, name, value):
        raise AttributeError("TaylorSeries is immutable")

    def __repr__(self):
        return (
            f"TaylorSeries(degree={self.degree}, decay_rate={self.decay_rate:.6g}, "
            f"tail_constant={self.tail_constant:.6g})"
        )

    @property
    def degree(self):
        return self.coeffs.size - 1

    @property
    def exact(self):
        """True when the stored coefficients are the whole function."""
        return self.decay_rate == 0.0

    def wiener_tail(self):
        """Bound on ``sum_{m > N} |c_m|``."""
        if self.exact:
            return 0.0
        rho = self.decay_rate
        if np.isinf(self.tail_constant):
            return np.inf
        return self.tail_constant * rho ** (self.degree + 1) / (1.0 - rho)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(self, -1.0)


def polynomial(coeffs):
    """Exact polynomial ``sum_m coeffs[m] z**m``."""
    return TaylorSeries(coeffs)


def monomial(power, degree=None):
    """The series of ``z**power`` (padded with zeros up to ``degree``)."""
    size = max(power, degree if degree is not None else power) + 1
    c = np.zeros(size, dtype=complex)
    c[power] = 1.0
    return TaylorSeries(c)


def zero_series(degree=0):
    return TaylorSeries(np.zeros(degree + 1, dtype=complex))


def cauchy_kernel(w, degree=DEFAULT_DEGREE):
    """Reproducing kernel ``k_w(z) = 1 / (1 - conj(w) z)`` of the Hardy space.

    Raises
    ------
    DomainError
        If ``|w| >= 1``.
    """
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError(f"kernel point must lie in the open unit disk, got {w}")
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    coeffs = np.conj(w) ** np.arange(degree + 1)
    if w == 0:
        coeffs = np.zeros(degree + 1, dtype=complex)
        coeffs[0] = 1.0
    return TaylorSeries(coeffs, max(abs(w), RATE_FLOOR) if w != 0 else 0.0, 1.0)


def _check_disk_point(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + _EDGE_SLACK):
        raise DomainError("evaluation point outside the closed unit disk")
    return z


def evaluate(f, z):
    """Horner evaluation of the stored coefficients at ``z`` (``|z| <= 1``).

    Accepts a scalar or an array of points.  The truncation error is bounded
    by :func:`evaluation_error`.
    """
    zz = _check_disk_point(z)
    vals = np.polyval(f.coeffs[::-1], zz)
    if np.ndim(z) == 0:
        return complex(vals)
    return vals


def evaluation_error(f, z):
    """Bound on ``|f(z) - evaluate(f, z)|`` coming from the tail."""
    r = abs(complex(z))
    if f.exact:
        return 0.0
    q = f.decay_rate * r
    return f.tail_constant * q ** (f.degree + 1) / (1.0 - q)


def differentiate(f):
    """Derivative series: ``c'_m = (m + 1) c_{m+1}``."""
    n = f.degree
    if n == 0:
        return TaylorSeries([0.0], f.decay_rate, 0.0) if not f.exact else zero_series()
    coeffs = f.coeffs[1:] * np.arange(1, n + 1)
    if f.exact:
        return TaylorSeries(coeffs)
    r = f.decay_rate
    r_new = _inflate(r)
    # |(m+1) c_{m+1}| <= E r (m+1) r**m <= E r K r_new**m
    const = _envelope(f, r) * r * _growth(r / r_new)
    return TaylorSeries(coeffs, r_new, const)


def wiener_norm(f):
    """``sum |c_m|`` over stored coefficients, with the tail as error bar."""
    return Bounded(float(np.sum(np.abs(f.coeffs))), f.wiener_tail())


def boundary_values(f, samples=DEFAULT_SAMPLES):
    """Values of the stored series at the ``samples``-th roots of unity.

    Coefficients are folded modulo ``samples`` first, which is exact for the
    truncated series whatever its degree.
    """
    c = f.coeffs
    if c.size > samples:
        pad = (-c.size) % samples
        c = np.concatenate([c, np.zeros(pad, dtype=complex)]).reshape(-1, samples).sum(axis=0)
    return np.fft.ifft(c, n=samples) * samples


def hardy_norm(f, p, samples=DEFAULT_SAMPLES):
    """Hardy-space norm of ``f`` for ``p`` in {1, 2}.

    ``p = 2`` uses Parseval on the coefficients; ``p = 1`` averages ``|f|``
    over ``samples`` equispaced points of the circle (periodic trapezoid).
    """
    if p == 2:
        return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))
    if p != 1:
        raise DomainError(f"only p = 1 or p = 2 are supported, got {p}")
    if samples < 256 or samples & (samples - 1):
        raise DomainError(f"samples must be a power of two >= 256, got {samples}")
    return float(np.mean(np.abs(boundary_values(f, samples))))


def inner_product(f, g):
    """Hardy-space inner product ``(f, g) = sum f_m conj(g_m)``."""
    m = min(f.coeffs.size, g.coeffs.size)
    return complex(np.vdot(g.coeffs[:m], f.coeffs[:m]))


def scale(f, c):
    c = complex(c)
    return TaylorSeries(f.coeffs * c, f.decay_rate, f.tail_constant * abs(c))


def resize(f, degree):
    """Pad (or truncate) the stored coefficients to ``degree``.

    Truncating a polynomial turns the dropped coefficients into a tail.
    """
    c = f.coeffs
    if degree >= f.degree:
        out = np.zeros(degree + 1, dtype=complex)
        out[: c.size] = c
        return TaylorSeries(out, f.decay_rate, f.tail_constant)
    kept = c[: degree + 1]
    dropped = c[degree + 1 :]
    if f.exact:
        if not np.any(dropped):
            return TaylorSeries(kept)
        r = 0.5
        return TaylorSeries(kept, r, _envelope(TaylorSeries(c), r))
    return TaylorSeries(kept, f.decay_rate, _envelope(f, f.decay_rate))


def add(f, g):
    """Sum of two series.  The result keeps the smaller truncation degree."""
    if f.exact and g.exact:
        n = max(f.degree, g.degree)
        out = np.zeros(n + 1, dtype=complex)
        out[: f.coeffs.size] += f.coeffs
        out[: g.coeffs.size] += g.coeffs
        return TaylorSeries(out)
    inexact = [h for h in (f, g) if not h.exact]
    n = min(h.degree for h in inexact)
    r = max(h.decay_rate for h in inexact)
    out = np.zeros(n + 1, dtype=complex)
    for h in (f, g):
        m = min(h.coeffs.size, n + 1)
        out[:m] += h.coeffs[:m]
    const = _envelope(f, r) + _envelope(g, r)
    return TaylorSeries(out, r, const)


def multiply(f, g):
    """Cauchy product.

    Exact polynomials do not limit the degree; two infinite series give a
    product truncated at the smaller of their degrees.
    """
    if f.exact and g.exact:
        return TaylorSeries(np.convolve(f.coeffs, g.coeffs))
    if f.exact or g.exact:
        p, h = (f, g) if f.exact else (g, f)
        n = h.degree
        coeffs = np.convolve(h.coeffs, p.coeffs)[: n + 1]
        r = h.decay_rate
        const = _envelope(h, r) * _poly_weight(p.coeffs, r)
        return TaylorSeries(coeffs, r, const)
    n = min(f.degree, g.degree)
    coeffs = np.convolve(f.coeffs[: n + 1], g.coeffs[: n + 1])[: n + 1]
    r, r_new, const = _product_envelope(f, g)
    return TaylorSeries(coeffs, r_new, const)


def mul_kernel(f, w, degree=None):
    """``f(z) / (1 - conj(w) z)`` through the recurrence ``u_m = c_m + conj(w) u_{m-1}``.

    Same result as ``multiply(f, cauchy_kernel(w, ...))`` at O(N) cost.
    ``degree`` is only used when ``f`` is a polynomial.
    """
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError(f"kernel point must lie in the open unit disk, got {w}")
    if w == 0:
        return f
    if f.exact:
        n = degree if degree is not None else DEFAULT_DEGREE
        n = max(n, f.degree)
    else:
        n = f.degree
    c = np.zeros(n + 1, dtype=complex)
    m = min(f.coeffs.size, n + 1)
    c[:m] = f.coeffs[:m]
    u = _first_order_filter(c, np.conj(w))
    r_w = max(abs(w), RATE_FLOOR)
    if f.exact:
        const = _poly_weight(f.coeffs, r_w)
        return TaylorSeries(u, r_w, const)
    _, r_new, const = _product_envelope(f, cauchy_kernel(w, 0))
    return TaylorSeries(u, r_new, const)


def deflate(f, root):
    """Quotient ``f(z) / (z - root)`` for ``|root| < 1``, assuming ``f(root) = 0``.

    Runs the synthetic-division recurrence ``q_{m-1} = c_m + root q_m`` from
    the top coefficient down, which is stable inside the disk.
    """
    root = complex(root)
    if abs(root) >= 1.0:
        raise DomainError(f"root must lie in the open unit disk, got {root}")
    c = f.coeffs
    n = c.size - 1
    if n == 0:
        return zero_series() if f.exact else TaylorSeries([0.0], f.decay_rate, 0.0)
    q = _first_order_filter(c[:0:-1], root)[::-1]
    if f.exact:
        return TaylorSeries(q)
    r = f.decay_rate
    const = _envelope(f, r) * r / (1.0 - r * abs(root))
    return TaylorSeries(q, r, const)


def _first_order_filter(x, a):
    """y_m = x_m + a y_{m-1}, computed with scipy's IIR filter."""
    from scipy.signal import lfilter

    return lfilter([1.0], [1.0, -a], np.asarray(x, dtype=complex))


def _inflate(r):
    return r + (1.0 - r) / 32.0


def _growth(q):
    """max over m >= 0 of (m + 1) q**m, for 0 <= q < 1."""
    if q <= 0.0:
        return 1.0
    peak = -1.0 / np.log(q) - 1.0
    cands = {0, int(np.floor(peak)), int(np.ceil(peak))}
    return max((m + 1) * q**m for m in cands if m >= 0)


_TINY = np.finfo(float).tiny


def _log_ratio_max(coeffs, r):
    """max_k log|c_k| - k log r over stored coefficients (or -inf).

    Subnormal magnitudes are skipped: they are underflow residue of the
    recurrences, carry no relative accuracy, and would otherwise blow the
    envelope up by ``r**-N``.
    """
    mag = np.abs(coeffs)
    nz = np.nonzero(mag >= _TINY)[0]
    if nz.size == 0:
        return -np.inf
    return float(np.max(np.log(mag[nz]) - nz * np.log(r)))


def _envelope(f, r):
    """Smallest E with |c_m| <= E r**m for every m >= 0 (stored and tail)."""
    if r <= 0.0:
        # only meaningful for constants
        return float(np.max(np.abs(f.coeffs)))
    e = np.exp(_log_ratio_max(f.coeffs, r))
    if not f.exact:
        e = max(e, f.tail_constant)
    return float(e)


def _poly_weight(p, r):
    """sum_j |p_j| r**-j, the factor a polynomial multiplier costs an envelope."""
    mag = np.abs(p)
    nz = np.nonzero(mag)[0]
    if nz.size == 0:
        return 0.0
    if r <= 0.0:
        return float(mag[0]) if nz.max() == 0 else np.inf
    return float(np.sum(np.exp(np.log(mag[nz]) - nz * np.log(r))))


def _product_envelope(f, g):
    r = max(f.decay_rate, g.decay_rate)
    r_new = _inflate(r)
    const = _envelope(f, r) * _envelope(g, r) * _growth(r / r_new)
    return r, r_new, const
