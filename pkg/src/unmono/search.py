"""Seeded estimators for the extremal constants of the quadratic spinor map.

Each estimator is two-phase: uniform sampling on the relevant domain in fixed
chunks (so that a larger sample budget extends, rather than reshuffles, the
stream of a given seed), followed by projected gradient descent with
backtracking from the best candidates.  All randomness comes from the single
64-bit seed; results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fiber import brace_tau, mu_norm_sq

__all__ = [
    "SearchBudget",
    "properness_constant",
    "mu_upper_constant",
    "identity_obstruction",
]

_CHUNK = 1 << 16


@dataclass(frozen=True)
class SearchBudget:
    """Sampling / descent configuration for the extremal-constant searches."""

    samples: int = 200_000
    descent_starts: int = 10
    descent_steps: int = 400

    def __post_init__(self):
        if self.samples < 1 or self.descent_starts < 0 or self.descent_steps < 0:
            raise ValueError("invalid search budget")


DEFAULT_BUDGET = SearchBudget()


def _check_tau(tau, open_at_zero=False):
    lo_ok = tau > 0.0 if open_at_zero else tau >= 0.0
    if not (lo_ok and tau <= 1.0):
        raise ValueError(f"tau out of range: {tau}")


def _sample_chunks(rng, n, total):
    done = 0
    while done < total:
        m = min(_CHUNK, total - done)
        z = rng.standard_normal((m, 4 * n))
        a = z[:, : 2 * n : 2] + 1j * z[:, 1 : 2 * n : 2]
        b = z[:, 2 * n :: 2] + 1j * z[:, 2 * n + 1 :: 2]
        yield a, b
        done += m


def _mu_ratio_grad(a, b, tau):
    """Wirtinger gradient of |mu_tau(psi)|^2 (psi on the unit sphere handled
    by the caller).  Uses the closed form in u=|a|^2, v=|b|^2, w=|<b,a>|^2."""
    n = a.shape[-1]
    u = np.vdot(a, a).real
    v = np.vdot(b, b).real
    t = np.vdot(b, a)
    w = (t * np.conj(t)).real
    k = (1.0 - tau * tau) / n
    fu = u - k * (u - v) + 2.0 * v
    fv = v + k * (u - v) + 2.0 * u
    fw = -1.0 - 2.0 * k
    ga = fu * a + fw * t * b
    gb = fv * b + fw * np.conj(t) * a
    return ga, gb


def _sphere_descent(a, b, tau, steps):
    """Projected descent of |mu_tau|^2 on the unit sphere of C^2 (x) C^n."""
    scale = np.sqrt(np.vdot(a, a).real + np.vdot(b, b).real)
    if scale == 0.0:
        return 0.0
    a = a / scale
    b = b / scale
    f = float(mu_norm_sq(a, b, tau))
    step = 0.5
    for _ in range(steps):
        ga, gb = _mu_ratio_grad(a, b, tau)
        radial = np.vdot(a, ga).real + np.vdot(b, gb).real
        ga = ga - radial * a
        gb = gb - radial * b
        gnorm_sq = np.vdot(ga, ga).real + np.vdot(gb, gb).real
        if gnorm_sq < 1e-30:
            break
        improved = False
        while step > 1e-18:
            na = a - step * ga
            nb = b - step * gb
            norm = np.sqrt(np.vdot(na, na).real + np.vdot(nb, nb).real)
            na /= norm
            nb /= norm
            nf = float(mu_norm_sq(na, nb, tau))
            if nf < f - 1e-4 * step * gnorm_sq:
                a, b, f = na, nb, nf
                step = min(step * 1.5, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return f


def properness_constant(
    n: int,
    tau: float,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> float:
    """Estimate ``inf { |mu_tau(psi)| : |psi| = 1 }`` for rank n.

    Strictly positive for n > 1; for n = 1 the map degenerates to
    ``tau/sqrt(2)`` on the unit sphere.  Deterministic for a fixed seed, and
    nonincreasing in the sample budget under the same seed (chunked prefix
    sampling).
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    _check_tau(tau)
    budget = budget or DEFAULT_BUDGET
    rng = np.random.default_rng(seed)

    best_val = np.inf
    candidates = []  # (value, alpha, beta), kept small
    keep = max(budget.descent_starts, 1)
    for a, b in _sample_chunks(rng, n, budget.samples):
        norm_sq = (
            np.einsum("ij,ij->i", np.conj(a), a).real
            + np.einsum("ij,ij->i", np.conj(b), b).real
        )
        vals = mu_norm_sq(a, b, tau) / norm_sq**2
        order = np.argsort(vals)[:keep]
        for i in order:
            candidates.append((float(vals[i]), a[i].copy(), b[i].copy()))
        candidates.sort(key=lambda c: c[0])
        del candidates[keep:]
        best_val = min(best_val, float(vals[order[0]]))

    if budget.descent_steps > 0:
        for _, a0, b0 in candidates[: budget.descent_starts]:
            best_val = min(best_val, _sphere_descent(a0, b0, tau, budget.descent_steps))
    return float(np.sqrt(max(best_val, 0.0)))


def mu_upper_constant(
    n: int,
    tau: float,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> float:
    """Estimate ``sup { |mu_tau(psi)| : |psi| = 1 }`` (the constant C in the
    curvature L^2 bound).  Same sampling scheme as `properness_constant`,
    with ascent instead of descent."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    _check_tau(tau)
    budget = budget or DEFAULT_BUDGET
    rng = np.random.default_rng(seed)

    best_val = 0.0
    candidates = []
    keep = max(budget.descent_starts, 1)
    for a, b in _sample_chunks(rng, n, budget.samples):
        norm_sq = (
            np.einsum("ij,ij->i", np.conj(a), a).real
            + np.einsum("ij,ij->i", np.conj(b), b).real
        )
        vals = mu_norm_sq(a, b, tau) / norm_sq**2
        order = np.argsort(vals)[-keep:]
        for i in order:
            candidates.append((float(vals[i]), a[i].copy(), b[i].copy()))
        candidates.sort(key=lambda c: -c[0])
        del candidates[keep:]
        best_val = max(best_val, float(vals[order[-1]]))

    # Ascent = descent of the negated objective; reuse the sphere stepper on
    # -f by flipping the gradient sign inline.
    if budget.descent_steps > 0:
        for _, a0, b0 in candidates[: budget.descent_starts]:
            best_val = max(best_val, _sphere_ascent(a0, b0, tau, budget.descent_steps))
    return float(np.sqrt(best_val))


def _sphere_ascent(a, b, tau, steps):
    scale = np.sqrt(np.vdot(a, a).real + np.vdot(b, b).real)
    a = a / scale
    b = b / scale
    f = float(mu_norm_sq(a, b, tau))
    step = 0.5
    for _ in range(steps):
        ga, gb = _mu_ratio_grad(a, b, tau)
        radial = np.vdot(a, ga).real + np.vdot(b, gb).real
        ga = ga - radial * a
        gb = gb - radial * b
        gnorm_sq = np.vdot(ga, ga).real + np.vdot(gb, gb).real
        if gnorm_sq < 1e-30:
            break
        improved = False
        while step > 1e-18:
            na = a + step * ga
            nb = b + step * gb
            norm = np.sqrt(np.vdot(na, na).real + np.vdot(nb, nb).real)
            na /= norm
            nb /= norm
            nf = float(mu_norm_sq(na, nb, tau))
            if nf > f + 1e-4 * step * gnorm_sq:
                a, b, f = na, nb, nf
                step = min(step * 1.5, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return f


def _obstruction_value_and_grads(a, b, tau, n):
    t = brace_tau(np.outer(b, np.conj(a)), tau)
    t[np.diag_indices(n)] -= 1.0
    f = float(np.vdot(t, t).real)
    tb = brace_tau(t, tau)  # brace is self-adjoint: <T, {X}_tau> = <{T}_tau, X>
    ga = tb.conj().T @ b
    gb = tb @ a
    return f, ga, gb


def identity_obstruction(
    n: int,
    tau: float,
    z: complex,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> float:
    """Estimate ``inf_{a, b} | {b a*}_tau - z id |`` (Hilbert-Schmidt).

    The infimum scales linearly in |z| (the brace image is a cone), vanishes
    for z = 0 or n = 1, and is strictly positive for n >= 2 and z != 0: no
    brace of a rank-one product can be a nonzero multiple of the identity.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    _check_tau(tau, open_at_zero=True)
    budget = budget or DEFAULT_BUDGET
    z = complex(z)
    if z == 0:
        return 0.0
    rng = np.random.default_rng(seed)

    # Homogeneity: solve at z = 1 and rescale.  (A phase on z is absorbed by
    # rotating beta.)
    best = float(n)  # a, b = 0 gives |{0}_tau - id| = sqrt(n)
    candidates = []
    keep = max(budget.descent_starts, 1)
    for a, b in _sample_chunks(rng, n, budget.samples):
        t = np.einsum("ki,kj->kij", b, np.conj(a))
        t = brace_tau(t, tau)
        t[:, np.arange(n), np.arange(n)] -= 1.0
        vals = np.einsum("kij,kij->k", np.conj(t), t).real
        order = np.argsort(vals)[:keep]
        for i in order:
            candidates.append((float(vals[i]), a[i].copy(), b[i].copy()))
        candidates.sort(key=lambda c: c[0])
        del candidates[keep:]
        best = min(best, float(vals[order[0]]))

    if budget.descent_steps > 0:
        for _, a0, b0 in candidates[: budget.descent_starts]:
            best = min(best, _obstruction_descent(a0, b0, tau, n, budget.descent_steps))
    return abs(z) * float(np.sqrt(max(best, 0.0)))


def _obstruction_descent(a, b, tau, n, steps):
    f, ga, gb = _obstruction_value_and_grads(a, b, tau, n)
    step = 0.25
    for _ in range(steps):
        gnorm_sq = np.vdot(ga, ga).real + np.vdot(gb, gb).real
        if gnorm_sq < 1e-30:
            break
        improved = False
        while step > 1e-18:
            na = a - step * ga
            nb = b - step * gb
            nf, nga, ngb = _obstruction_value_and_grads(na, nb, tau, n)
            if nf < f - 1e-4 * step * gnorm_sq:
                a, b, f, ga, gb = na, nb, nf, nga, ngb
                step = min(step * 1.5, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return f
