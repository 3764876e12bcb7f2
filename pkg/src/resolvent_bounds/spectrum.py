"""Ordered spectra inside the unit disk."""

import numpy as np

from .errors import DomainError, PrecisionError

DEFAULT_MODULUS_CAP = 0.95
# |lam| >= 1 - CIRCLE_TOL counts as |lam| >= 1 (exp(1j t) can round inside the disk)
CIRCLE_TOL = 1e-12


class Spectrum:
    """Eigenvalues counted with multiplicity, sorted by nondecreasing modulus.

    Sorting is stable, so points of equal modulus keep their input order.

    Raises
    ------
    DomainError
        If a point lies on or outside the unit circle.
    PrecisionError
        If a point exceeds ``modulus_cap`` (tail bounds become useless).
    """

    __slots__ = ("points", "modulus_cap")

    def __init__(self, points, modulus_cap=DEFAULT_MODULUS_CAP):
        pts = np.array(points, dtype=complex).ravel()
        if pts.size == 0:
            raise DomainError("a spectrum needs at least one point")
        mods = np.abs(pts)
        if np.any(~np.isfinite(pts)):
            raise DomainError("spectrum contains non-finite values")
        if np.any(mods >= 1.0):
            bad = pts[np.argmax(mods)]
            raise DomainError(f"eigenvalue {bad} is not inside the open unit disk")
        if np.any(mods > modulus_cap):
            bad = pts[np.argmax(mods)]
            raise PrecisionError(
                f"eigenvalue {bad} has modulus {abs(bad):.6g} above the modulus cap {modulus_cap}"
            )
        pts = pts[np.argsort(mods, kind="stable")]
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "modulus_cap", float(modulus_cap))

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    @classmethod
    def zeros(cls, n, modulus_cap=DEFAULT_MODULUS_CAP):
        return cls(np.zeros(n), modulus_cap)

    @classmethod
    def random(cls, n, rng, max_modulus=0.9, modulus_cap=DEFAULT_MODULUS_CAP):
        """Points with modulus uniform on [0, max_modulus] and uniform angle."""
        r = rng.uniform(0.0, max_modulus, size=n)
        t = rng.uniform(0.0, 2.0 * np.pi, size=n)
        return cls(r * np.exp(1j * t), modulus_cap)

    @property
    def n(self):
        return self.points.size

    def __len__(self):
        return self.points.size

    def __iter__(self):
        return iter(complex(p) for p in self.points)

    def __getitem__(self, k):
        return complex(self.points[k])

    def __eq__(self, other):
        return isinstance(other, Spectrum) and np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash(self.points.tobytes())

    def __repr__(self):
        return f"Spectrum({self.points.tolist()!r})"

    @property
    def max_modulus(self):
        return float(np.max(np.abs(self.points)))

    def multiplicities(self):
        """Distinct points with their multiplicity, in first-occurrence order."""
        out = []
        for p in self.points:
            for item in out:
                if item[0] == p:
                    item[1] += 1
                    break
            else:
                out.append([complex(p), 1])
        return [(p, m) for p, m in out]

    def distance(self, lam):
        """min_j |lam - lambda_j|."""
        return float(np.min(np.abs(complex(lam) - self.points)))

    def scaled(self, factor, modulus_cap=None):
        cap = self.modulus_cap if modulus_cap is None else modulus_cap
        return Spectrum(self.points * factor, cap)
