"""Spectral radius and eigenvectors of square matrices."""

from __future__ import annotations

from dataclasses import dataclass

from tropopt.errors import ZeroSpectralRadius
from tropopt.semifield import BOTTOM, Scalar
from tropopt.tropalg import TropMatrix, plus_closure, require_square, trace


@dataclass(frozen=True)
class SpectrumReport:
    """The spectral radius and a generator whose columns span its eigenvectors.

    Every ``x = eigen_generator u`` with ``u`` regular satisfies ``Ax = radius x``.
    """

    radius: Scalar
    eigen_generator: TropMatrix


def spectral_radius(a: TropMatrix) -> Scalar:
    """``lambda = tr(A) + tr^(1/2)(A^2) + ... + tr^(1/n)(A^n)``."""
    n = require_square(a)
    sf = a.sf
    radius = BOTTOM
    power = a
    for m in range(1, n + 1):
        radius = sf.add(radius, sf.root(trace(power), m))
        if m < n:
            power = power.mul(a)
    return radius


def eigenvectors(a: TropMatrix) -> SpectrumReport:
    """All eigenvectors of the spectral radius as ``(lambda^-1 A)+ u``."""
    radius = spectral_radius(a)
    if radius.is_bottom:
        raise ZeroSpectralRadius("lambda > 0", "the spectral radius is zero")
    normalized = a.scale(a.sf.inverse(radius))
    return SpectrumReport(radius=radius, eigen_generator=plus_closure(normalized))
