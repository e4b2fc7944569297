import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unmono import fiber
from unmono.fiber import (
    BlockEndomorphism,
    SelfDualFormFiber,
    TwistedSpinorFiber,
    brace_tau,
    decoupling_pairing,
    gamma_selfdual,
    mu,
    mu_blocks,
    mu_kahler_blocks,
    mu_norm_sq,
    mu_pairing,
    project_trace,
    project_traceless,
    zero_divisor_defect,
)

RNG = np.random.default_rng(20260810)


def random_vec(n, rng=RNG):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_spinor(n, rng=RNG):
    return TwistedSpinorFiber(random_vec(n, rng), random_vec(n, rng))


def sl2_gln_projection_oracle(m: np.ndarray, n: int) -> np.ndarray:
    """Orthogonal projection of a 2n x 2n matrix onto sl(C^2) (x) gl(C^n),
    by expansion in an explicit orthonormal basis.  Independent of the block
    formulas under test."""
    sl2 = [
        np.array([[1, 0], [0, -1]], dtype=complex) / np.sqrt(2),
        np.array([[0, 1], [0, 0]], dtype=complex),
        np.array([[0, 0], [1, 0]], dtype=complex),
    ]
    out = np.zeros_like(m)
    for s in sl2:
        for i in range(n):
            for j in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1.0
                b = np.kron(s, e)
                out += np.vdot(b, m) * b
    return out


# ---------------------------------------------------------------------------
# projections and braces


def test_projection_identity_case():
    f = np.eye(2, dtype=complex)
    assert np.allclose(project_traceless(f), 0.0)
    assert np.allclose(project_trace(f), f)


def test_projection_traceless_case():
    f = np.diag([1.0, -1.0]).astype(complex)
    assert np.allclose(project_traceless(f), f)
    assert np.allclose(project_trace(f), 0.0)


def test_projection_hs_orthogonality():
    f = random_vec(9).reshape(3, 3)
    p, q = project_traceless(f), project_trace(f)
    assert abs(np.vdot(p, q)) < 1e-12
    assert np.allclose(p + q, f, atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projection_algebra(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(20):
        f = random_vec(n * n, rng).reshape(n, n)
        p, q = project_traceless, project_trace
        assert np.allclose(p(p(f)), p(f), atol=1e-12)
        assert np.allclose(q(q(f)), q(f), atol=1e-12)
        assert np.allclose(p(q(f)), 0.0, atol=1e-12)
        assert np.allclose(p(f) + q(f), f, atol=1e-12)


def test_brace_tau_values():
    assert np.allclose(brace_tau(np.eye(2, dtype=complex), 0.0), 0.0)
    assert np.allclose(brace_tau(np.eye(2, dtype=complex), 1.0), np.eye(2))
    # by hand: (f)_0 = diag(1,-1), (tau/n) tr f = 0.5, f = diag(2, 0)
    got = brace_tau(np.diag([2.0, 0.0]).astype(complex), 0.5)
    assert np.allclose(got, np.diag([1.5, -0.5]))


# ---------------------------------------------------------------------------
# quadratic map


def test_mu_zero_spinor():
    psi = TwistedSpinorFiber(np.zeros(2), np.zeros(2))
    assert mu(psi, psi, 1.0).hs_norm() == 0.0


def test_mu_rank_one_n1():
    # n=1, tau=1, psi = e_+: trace-free projection of diag(1, 0)
    psi = TwistedSpinorFiber([1.0], [0.0])
    m = mu(psi, psi, 1.0)
    assert np.allclose(m.blocks[0, 0], [[0.5]])
    assert np.allclose(m.blocks[1, 1], [[-0.5]])
    assert np.allclose(m.blocks[0, 1], 0.0)
    assert np.allclose(m.blocks[1, 0], 0.0)
    assert abs(m.hs_norm() - 1.0 / np.sqrt(2)) < 1e-15


def test_mu_rank_mismatch():
    with pytest.raises(ValueError):
        mu(TwistedSpinorFiber([1.0], [0.0]), random_spinor(2), 1.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mu_tau1_is_sl2_projection(n):
    rng = np.random.default_rng(7 + n)
    for _ in range(5):
        psi = random_spinor(n, rng)
        m = np.outer(psi.as_vector(), np.conj(psi.as_vector()))
        want = sl2_gln_projection_oracle(m, n)
        got = mu(psi, psi, 1.0).as_matrix()
        assert np.max(np.abs(got - want)) < 1e-12


@pytest.mark.parametrize("tau", [0.0, 0.37, 1.0])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_mu_matches_kahler_blocks(n, tau):
    rng = np.random.default_rng(50 + n)
    psi = random_spinor(n, rng)
    a = mu(psi, psi, tau).blocks
    b = mu_kahler_blocks(psi.alpha, psi.beta, tau).blocks
    assert np.max(np.abs(a - b)) < 1e-12


def test_mu_kahler_hand_value():
    m = mu_kahler_blocks(np.array([1.0 + 0j]), np.array([0.0 + 0j]), 1.0)
    assert np.allclose(m.as_matrix(), np.diag([0.5, -0.5]))


def test_mu_hermitian_and_spin_traceless():
    psi = random_spinor(3)
    for tau in (0.0, 0.5, 1.0):
        m = mu(psi, psi, tau)
        mm = m.as_matrix()
        assert np.max(np.abs(mm - mm.conj().T)) < 1e-12
        assert np.max(np.abs(m.spin_trace())) < 1e-12


def test_mu_equivariance_under_unitaries():
    rng = np.random.default_rng(3)
    n = 3
    for tau in (0.0, 0.6, 1.0):
        psi = random_spinor(n, rng)
        u, _ = np.linalg.qr(random_vec(n * n, rng).reshape(n, n))
        rotated = TwistedSpinorFiber(u @ psi.alpha, u @ psi.beta)
        lhs = mu(rotated, rotated, tau).as_matrix()
        big_u = np.kron(np.eye(2), u)
        rhs = big_u @ mu(psi, psi, tau).as_matrix() @ big_u.conj().T
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_mu_norm_closed_form_matches_blocks():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 4):
        for tau in (0.0, 0.3, 1.0):
            a = random_vec(n, rng)
            b = random_vec(n, rng)
            explicit = np.linalg.norm(mu_kahler_blocks(a, b, tau).blocks) ** 2
            closed = mu_norm_sq(a, b, tau)
            assert abs(explicit - closed) < 1e-10 * max(1.0, explicit)


def test_mu_pairing_matches_explicit():
    rng = np.random.default_rng(12)
    n = 2
    for tau in (0.0, 0.4, 1.0):
        psi = random_spinor(n, rng)
        v = psi.as_vector()
        m = mu(psi, psi, tau).as_matrix()
        explicit = np.vdot(v, m @ v).real
        assert abs(explicit - float(mu_pairing(psi.alpha, psi.beta, tau))) < 1e-10


def test_mu_monotone_in_tau():
    rng = np.random.default_rng(13)
    a, b = random_vec(3, rng), random_vec(3, rng)
    assert mu_norm_sq(a, b, 0.0) <= mu_norm_sq(a, b, 0.5) + 1e-12
    assert mu_norm_sq(a, b, 0.5) <= mu_norm_sq(a, b, 1.0) + 1e-12


# ---------------------------------------------------------------------------
# zero divisors and the decoupling pairing


def test_zero_divisor_examples():
    e1 = np.array([1.0, 0.0], dtype=complex)
    e2 = np.array([0.0, 1.0], dtype=complex)
    assert abs(zero_divisor_defect(e1, e2) - 1.0) < 1e-14
    assert abs(zero_divisor_defect(e1, e1) - np.sqrt(0.5)) < 1e-14
    assert zero_divisor_defect(random_vec(2), np.zeros(2)) == 0.0


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=5),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_zero_divisor_identity_exact(n, seed):
    rng = np.random.default_rng(seed)
    a = random_vec(n, rng)
    b = random_vec(n, rng)
    lhs = zero_divisor_defect(a, b) ** 2
    u = np.vdot(a, a).real
    v = np.vdot(b, b).real
    w = abs(np.vdot(b, a)) ** 2
    rhs = u * v - w / n
    scale = max(1.0, u * v)
    assert abs(lhs - rhs) < 1e-12 * scale
    assert lhs >= (1.0 - 1.0 / n) * u * v - 1e-12 * scale


def test_decoupling_examples():
    e1 = np.array([1.0, 0.0], dtype=complex)
    e2 = np.array([0.0, 1.0], dtype=complex)
    assert abs(decoupling_pairing(e1, e2, 0.7) - 1.0) < 1e-14  # orthogonal
    assert abs(decoupling_pairing(e1, e1, 0.0) - 0.5) < 1e-14
    assert decoupling_pairing(random_vec(3), np.zeros(3), 0.3) == 0.0


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=5),
    tau=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_decoupling_pairing_bounds(n, tau, seed):
    rng = np.random.default_rng(seed)
    a, b = random_vec(n, rng), random_vec(n, rng)
    u = np.vdot(a, a).real
    v = np.vdot(b, b).real
    w = abs(np.vdot(a, b)) ** 2
    got = decoupling_pairing(a, b, tau)
    want = u * v - (1.0 - tau) / n * w
    scale = max(1.0, u * v)
    assert abs(got - want) < 1e-12 * scale
    assert (1.0 - (1.0 - tau) / n) * u * v - 1e-12 * scale <= got <= u * v + 1e-12 * scale


# ---------------------------------------------------------------------------
# Clifford action of self-dual forms


def test_gamma_zero():
    assert np.allclose(gamma_selfdual(SelfDualFormFiber(0, 0, 0)), 0.0)


def test_gamma_kahler_form():
    # eta = i*omega: contraction value 2i, printed value 4*diag(2, -2)
    g = gamma_selfdual(SelfDualFormFiber(2j, 0, 0))
    assert np.allclose(g, np.diag([8.0, -8.0]))


def test_gamma_02_component():
    # eta = dzbar1^dzbar2 - dz1^dz2 (imaginary-valued): off-diagonal +-8
    eta = SelfDualFormFiber(0.0, -1.0, 1.0)
    assert eta.is_imaginary_valued()
    g = gamma_selfdual(eta)
    assert np.allclose(g, np.array([[0.0, 8.0], [8.0, 0.0]]))
    # |gamma| = 4 |eta| on the (2,0)+(0,2) sector
    assert abs(np.linalg.norm(g) - 4.0 * np.sqrt(eta.norm_sq())) < 1e-12


def test_gamma_traceless_hermitian_on_imaginary_forms():
    rng = np.random.default_rng(9)
    for _ in range(10):
        c20 = complex(rng.standard_normal(), rng.standard_normal())
        eta = SelfDualFormFiber(1j * rng.standard_normal(), c20, -np.conj(c20))
        g = gamma_selfdual(eta)
        assert abs(np.trace(g)) < 1e-14
        assert np.max(np.abs(g - g.conj().T)) < 1e-14


def test_gamma_agrees_with_pauli_extension_sectorwise():
    """The residual convention vs. the Clifford extension of the Pauli frame.

    gamma_nat(dx_mu ^ dx_nu) := -gamma_mu* gamma_nu extends the 1-form action;
    the adopted self-dual convention equals 4*gamma_nat on the C*omega sector
    and 2*gamma_nat on the (2,0)+(0,2) sector.  This pins the conversion used
    by the Weitzenboeck check.
    """
    g = fiber.GAMMAS

    def gamma_nat(fcomps):
        out = np.zeros((2, 2), dtype=complex)
        for (i, j), m in fcomps.items():
            out += m * (-(g[i].conj().T @ g[j]))
        return out

    # omega_1 = dx1^dx2 + dx3^dx4 (the Kaehler form): c11 = 2
    nat = gamma_nat({(0, 1): 1.0, (2, 3): 1.0})
    assert np.allclose(gamma_selfdual(SelfDualFormFiber(2.0, 0, 0)), 4.0 * nat)
    # omega_2 = dx1^dx3 + dx4^dx2: c20 = c02 = 1/2
    nat = gamma_nat({(0, 2): 1.0, (1, 3): -1.0})
    assert np.allclose(gamma_selfdual(SelfDualFormFiber(0.0, 0.5, 0.5)), 2.0 * nat)
    # omega_3 = dx1^dx4 + dx2^dx3: c20 = -i/2, c02 = i/2
    nat = gamma_nat({(0, 3): 1.0, (1, 2): 1.0})
    assert np.allclose(gamma_selfdual(SelfDualFormFiber(0.0, -0.5j, 0.5j)), 2.0 * nat)


def test_gammas_clifford_relations():
    g = fiber.GAMMAS
    for i in range(4):
        for j in range(4):
            acomm = g[i].conj().T @ g[j] + g[j].conj().T @ g[i]
            assert np.allclose(acomm, 2.0 * np.eye(2) * (i == j), atol=1e-14)


# ---------------------------------------------------------------------------
# block endomorphism container


def test_block_endomorphism_roundtrip_and_ops():
    rng = np.random.default_rng(21)
    n = 3
    m = random_vec(4 * n * n, rng).reshape(2 * n, 2 * n)
    b = BlockEndomorphism.from_matrix(m)
    assert np.allclose(b.as_matrix(), m)
    assert abs(b.hs_norm() - np.linalg.norm(m)) < 1e-12
    assert np.allclose(b.adjoint().as_matrix(), m.conj().T)
    assert abs(b.trace() - np.trace(m)) < 1e-12
    assert abs(np.trace(b.traceless().as_matrix())) < 1e-12
    m2 = random_vec(4 * n * n, rng).reshape(2 * n, 2 * n)
    b2 = BlockEndomorphism.from_matrix(m2)
    assert np.allclose((b @ b2).as_matrix(), m @ m2, atol=1e-12)
