"""Characteristic-number arithmetic: expected dimension and a-priori bounds.

All arithmetic on topological data is exact (integers / rationals); a
dimension formula that does not evaluate to an integer signals inconsistent
input data and raises instead of rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "TopologicalDatum",
    "BoundInputs",
    "InconsistentTopologyError",
    "p1_su",
    "expected_dimension",
    "weitzenbock_constant",
    "spinor_sup_bound",
    "curvature_l2_bound",
]


class InconsistentTopologyError(ValueError):
    """The dimension formula evaluated to a non-integer."""


@dataclass(frozen=True)
class TopologicalDatum:
    """Evaluated characteristic numbers feeding the dimension formula.

    ``c1e_sq`` etc. are the pairings with the fundamental class; ``sign`` is
    the signature of the intersection form.
    """

    n: int
    c1e_sq: int = 0
    c2e: int = 0
    c1l_c1e: int = 0
    c1l_sq: int = 0
    b1: int = 0
    b2plus: int = 0
    sign: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank must be >= 1")
        if self.b1 < 0 or self.b2plus < 0:
            raise ValueError("Betti numbers must be nonnegative")


def p1_su(n: int, c1e_sq: int, c2e: int) -> int:
    """First Pontryagin number of su(E): ``(n-1) c1(E)^2 - 2n c2(E)``.

    Derived once from ``p1(su(E)) = -c2(su(E) (x) C) = -c2(End E)`` and the
    Chern-character expansion of End(E) = E (x) E*; the test suite re-derives
    it symbolically.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    return (n - 1) * c1e_sq - 2 * n * c2e


def expected_dimension(t: TopologicalDatum) -> int:
    """Expected dimension of the monopole moduli space for the datum ``t``.

    The ASD part ``-2 p1(su E) - n^2 (b2+ - b1 + 1)`` plus the index of the
    twisted Dirac operator.  Raises `InconsistentTopologyError` when the
    rational total is not an integer.
    """
    d = (
        Fraction(-2 * p1_su(t.n, t.c1e_sq, t.c2e))
        - Fraction(t.n * t.n * (t.b2plus - t.b1 + 1))
        - Fraction(t.n, 4) * t.sign
        + Fraction(t.c1e_sq - 2 * t.c2e + t.c1l_c1e)
        + Fraction(t.n, 4) * t.c1l_sq
    )
    if d.denominator != 1:
        raise InconsistentTopologyError(
            f"dimension formula gives {d}, not an integer; topological data inconsistent"
        )
    return int(d)


@dataclass(frozen=True)
class BoundInputs:
    """Geometric sups/infs entering the a-priori bounds."""

    scalar_curvature_min: float
    trFB_plus_sup: float
    eta_sup: float
    volume: float
    properness_c: float

    def __post_init__(self):
        if self.volume <= 0.0:
            raise ValueError("volume must be positive")
        if self.properness_c <= 0.0:
            raise ValueError("properness constant must be positive")
        if self.trFB_plus_sup < 0.0 or self.eta_sup < 0.0:
            raise ValueError("sup norms must be nonnegative")


def weitzenbock_constant(b: BoundInputs) -> float:
    """The constant K = max(-s/4 + |tr F_B^+|/2 + |eta|) over the manifold."""
    return -b.scalar_curvature_min / 4.0 + b.trFB_plus_sup / 2.0 + b.eta_sup


def spinor_sup_bound(b: BoundInputs) -> float:
    """Uniform C^0 bound: ``max |psi|^2 <= max(0, K / c^2)``.

    A negative K means only configurations with vanishing spinor can solve
    the equations; the bound is then 0.
    """
    k = weitzenbock_constant(b)
    return max(0.0, k / b.properness_c**2)


def curvature_l2_bound(c_upper: float, b: BoundInputs) -> float:
    """Upper bound for ``||F^+||_{L^2}^2``.

    ``c_upper`` is the universal constant with ``|mu_tau(psi)| <= C |psi|^2``
    (sup of the quadratic map over the unit sphere).
    """
    if c_upper < 0.0:
        raise ValueError("C must be nonnegative")
    k_plus = max(0.0, weitzenbock_constant(b))
    return (c_upper * k_plus / (2.0 * b.properness_c**2) + b.eta_sup) ** 2 * b.volume
