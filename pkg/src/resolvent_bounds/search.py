"""Randomised search for large ``||R(lam, T)|| dist(lam, sigma) / C(T)``.

Each restart draws a spectrum and a family parameter from its own random
stream (derived from ``(seed, restart)``), maximises the ratio over ``lam`` on
the unit circle, then improves the matrix parameters by accept-on-improvement
coordinate steps.  Restart 0 is always the family's anchor instance: the zero
spectrum with coupling 1 (the nilpotent Jordan block for ``jordan``).

Restricting ``lam`` to the circle is justified by the scaling identities of
:func:`resolvent_bounds.matrix_ops.boundary_reduce`; ``full_plane`` also
samples ``1 < |lam| <= 4`` as a check.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import bounds
from . import matrix_ops as mo
from .errors import BoundViolation, InvalidInputError, ResolventBoundsError
from .spectrum import Spectrum

logger = logging.getLogger(__name__)

FAMILIES = ("diagonal", "jordan", "similarity")

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SLACK = 1e-6


@dataclass(frozen=True)
class SearchConfig:
    n: int
    family: str = "jordan"
    norm_kind: object = 2
    restarts: int = 8
    local_steps: int = 4
    seed: int = 0
    lambda_grid: int = 256
    max_modulus: float = 0.9
    coupling_range: Tuple[float, float] = (0.0, 2.0)
    conditioning_range: Tuple[float, float] = (1.0, 100.0)
    step: float = 0.25
    golden_iters: int = 40
    full_plane: bool = False
    contraction: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n}")
        if self.family not in FAMILIES:
            raise InvalidInputError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.restarts < 1:
            raise InvalidInputError("restarts must be >= 1")
        if self.lambda_grid < 64:
            raise InvalidInputError("lambda_grid must be >= 64")
        if self.local_steps < 0:
            raise InvalidInputError("local_steps must be >= 0")
        if not 0.0 <= self.max_modulus < 1.0:
            raise InvalidInputError("max_modulus must lie in [0, 1)")
        object.__setattr__(self, "norm_kind", mo.parse_norm_kind(self.norm_kind))
        if self.contraction and self.norm_kind != 2:
            raise InvalidInputError("contraction search requires the Euclidean norm")

    def to_dict(self):
        d = asdict(self)
        d["norm_kind"] = mo.norm_label(self.norm_kind)
        d["coupling_range"] = list(self.coupling_range)
        d["conditioning_range"] = list(self.conditioning_range)
        return d


@dataclass
class SearchRecord:
    best_ratio: float
    witness: Optional[dict]
    per_restart_bests: List[float]
    config_echo: dict
    certified_C: bool
    evaluations: int = 0
    uncertified: int = 0
    failures: int = 0
    best_uncertified_ratio: Optional[float] = None
    reference: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


@dataclass
class _Params:
    moduli: np.ndarray
    angles: np.ndarray
    family_param: float
    sim_seed: int


def _draw(config, rng, anchor):
    n = config.n
    sim_seed = int(rng.integers(2**32))
    if anchor:
        moduli, angles = np.zeros(n), np.zeros(n)
        fam = 1.0 if config.family != "similarity" else 10.0
    else:
        moduli = rng.uniform(0.0, config.max_modulus, n)
        angles = rng.uniform(0.0, 2.0 * math.pi, n)
        if config.family == "similarity":
            lo, hi = config.conditioning_range
            fam = float(math.exp(rng.uniform(math.log(lo), math.log(hi))))
        else:
            fam = float(rng.uniform(*config.coupling_range))
    return _Params(moduli, angles, fam, sim_seed)


def build_instance(config, params):
    """Matrix for a parameter set, rescaled to a contraction if requested."""
    sigma = Spectrum(params.moduli * np.exp(1j * params.angles), modulus_cap=1.0 - 1e-12)
    if config.family == "similarity":
        T = mo.from_spectrum(
            sigma,
            "similarity",
            config.norm_kind,
            conditioning=max(params.family_param, 1.0),
            seed=params.sim_seed,
        )
    elif config.family == "jordan":
        T = mo.from_spectrum(sigma, "jordan", config.norm_kind, coupling=params.family_param)
    else:
        T = mo.from_spectrum(sigma, "diagonal", config.norm_kind)
    if config.contraction:
        nrm = float(mo.operator_norm(T.entries, 2))
        if nrm > 1.0:
            T = T.scaled(1.0 / nrm, {"contraction_rescaled": True})
    return T


def _ratio_fn(T, power):
    def f(lam):
        return float(mo.ratios(T, [lam], power)[0])

    return f


def maximize_on_circle(T, power, grid=256, golden_iters=40, full_plane=False):
    """Grid scan of the circle, then golden-section refinement of the angle.

    Returns ``(best_ratio, best_lambda)``; ties on the grid go to the
    smallest angle.
    """
    theta = 2.0 * math.pi * np.arange(grid) / grid
    lams = np.exp(1j * theta)
    vals = mo.ratios(T, lams, power)
    top = float(np.max(vals))
    k = int(np.argmax(vals >= top - 1e-12 * top))
    best, best_lam = float(vals[k]), complex(lams[k])
    h = 2.0 * math.pi / grid
    a, b = theta[k] - h, theta[k] + h
    f = _ratio_fn(T, power)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(np.exp(1j * c)), f(np.exp(1j * d))
    for _ in range(golden_iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(np.exp(1j * c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(np.exp(1j * d))
    for t, v in ((c, fc), (d, fd)):
        if v > best * (1.0 + 1e-12):
            best, best_lam = v, complex(np.exp(1j * t))
    if full_plane:
        radii = np.linspace(1.0, 4.0, 13)[1:]
        pts = (radii[:, None] * lams[None, :: max(1, grid // 64)]).ravel()
        vals = mo.ratios(T, pts, power)
        j = int(np.argmax(vals))
        if vals[j] > best * (1.0 + 1e-12):
            best, best_lam = float(vals[j]), complex(pts[j])
    return best, best_lam


class _Evaluator:
    def __init__(self, config):
        self.config = config
        self.evaluations = 0
        self.uncertified = 0
        self.failures = 0
        self.ceiling = bounds.theorem_bound(config.n, 1.0) + _SLACK
        self.contraction_ceiling = (
            bounds.hilbert_reference(config.n) + _SLACK if config.contraction else None
        )

    def __call__(self, params):
        """``(ratio, lam, T, certified)`` or ``None`` when the instance fails numerically."""
        cfg = self.config
        self.evaluations += 1
        try:
            T = build_instance(cfg, params)
            power = mo.power_bound(T)
            ratio, lam = maximize_on_circle(T, power, cfg.lambda_grid, cfg.golden_iters, cfg.full_plane)
        except (ResolventBoundsError, np.linalg.LinAlgError) as exc:
            self.failures += 1
            logger.warning("skipping instance %s: %s", params, exc)
            return None
        if not power.certified:
            self.uncertified += 1
            return ratio, lam, T, False
        if ratio > self.ceiling or (self.contraction_ceiling and ratio > self.contraction_ceiling):
            dump = {"ratio": ratio, "lambda": [lam.real, lam.imag], "provenance": T.provenance,
                    "entries": T.entries.tolist(), "C": power.value}
            raise BoundViolation(f"ratio {ratio} exceeds the proven ceiling", dump)
        return ratio, lam, T, True


def _local_search(config, params, evaluate, start):
    best = start
    step = config.step
    n = config.n
    for _ in range(config.local_steps):
        improved = False
        for idx in range(2 * n + 1):
            for sign in (1.0, -1.0):
                trial = _Params(params.moduli.copy(), params.angles.copy(), params.family_param, params.sim_seed)
                if idx < n:
                    trial.moduli[idx] = min(trial.moduli[idx] * math.exp(sign * step), config.max_modulus)
                elif idx < 2 * n:
                    trial.angles[idx - n] += sign * step
                else:
                    trial.family_param *= math.exp(sign * step)
                out = evaluate(trial)
                if out is not None and out[3] and out[0] > best[0]:
                    params, best, improved = trial, out, True
        if not improved:
            step /= 2.0
    return best


def search(config):
    """Run all restarts and merge by maximum (ties to the lowest restart index)."""
    evaluate = _Evaluator(config)
    best = None
    best_unc = None
    per_restart = []
    for restart in range(config.restarts):
        rng = np.random.default_rng([config.seed, restart])
        params = _draw(config, rng, anchor=restart == 0)
        out = evaluate(params)
        if out is not None and not out[3]:
            best_unc = out[0] if best_unc is None else max(best_unc, out[0])
            out = None
        if out is None:
            per_restart.append(float("nan"))
            continue
        out = _local_search(config, params, evaluate, out)
        per_restart.append(out[0])
        if best is None or out[0] > best[0]:
            best = out
    reference = {
        "theorem_bound": bounds.theorem_bound(config.n, 1.0),
        "lower_reference": bounds.lower_reference(config.n),
    }
    if config.contraction:
        reference["hilbert_reference"] = bounds.hilbert_reference(config.n)
    if best is None:
        witness, ratio, cert = None, float("nan"), False
    else:
        ratio, lam, T, cert = best
        witness = {"provenance": T.provenance, "lambda": {"re": lam.real, "im": lam.imag}}
    return SearchRecord(
        best_ratio=ratio,
        witness=witness,
        per_restart_bests=per_restart,
        config_echo=config.to_dict(),
        certified_C=cert,
        evaluations=evaluate.evaluations,
        uncertified=evaluate.uncertified,
        failures=evaluate.failures,
        best_uncertified_ratio=best_unc,
        reference=reference,
    )


def contraction_search(config):
    """:func:`search` over Hilbert-space contractions (``||T||_2 <= 1``, so ``C = 1``)."""
    if config.norm_kind != 2:
        raise InvalidInputError("contraction search requires the Euclidean norm")
    if not config.contraction:
        config = SearchConfig(**{**config.__dict__, "contraction": True})
    return search(config)
