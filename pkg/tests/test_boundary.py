"""Reflection matrices, open transfer families, boundary symmetry, Casimir."""

import cmath

import numpy as np
import pytest

import spinchain as sc
from spinchain import boundary, lax

MU = 0.3
Q = cmath.exp(1j * MU)
XI = 0.5
KAPPA = 0.27


def rand_pairs(count, seed=7, imag=0.4):
    rng = np.random.default_rng(seed)
    return [
        tuple(rng.uniform(-1.5, 1.5, 2) + 1j * rng.uniform(-imag, imag, 2))
        for _ in range(count)
    ]


def test_k_gz_dvgr_entries_and_origin():
    lam = 0.37 - 0.11j
    kh = sc.mat(sc.k_gz_dvgr(XI, KAPPA, "homogeneous")(lam))
    off = KAPPA * cmath.sinh(2 * lam)
    assert kh[0, 0] == pytest.approx(cmath.sinh(-lam + 1j * XI) * cmath.exp(lam))
    assert kh[1, 1] == pytest.approx(cmath.sinh(lam + 1j * XI) * cmath.exp(-lam))
    assert kh[0, 1] == pytest.approx(off) and kh[1, 0] == pytest.approx(off)
    kp = sc.mat(sc.k_gz_dvgr(XI, KAPPA, "principal")(lam))
    assert kp[0, 0] == pytest.approx(cmath.sinh(-lam + 1j * XI))
    assert kp[1, 1] == pytest.approx(cmath.sinh(lam + 1j * XI))
    assert kp[0, 1] == pytest.approx(off)
    for grad in ("homogeneous", "principal"):
        k0 = sc.mat(sc.k_gz_dvgr(XI, KAPPA, grad)(0.0))
        assert sc.rel_norm(k0, cmath.sinh(1j * XI) * np.eye(2)) < 1e-14
    with pytest.raises(ValueError):
        sc.k_gz_dvgr(XI, KAPPA, "diagonal")


def test_k_blob_structure():
    kb = sc.k_blob(MU, 0.7, 0.4)
    Qb = complex(kb.params["Q"])
    assert abs(Qb - 1j * cmath.exp(1j * MU * 0.7)) < 1e-14
    # at the origin the idempotent direction drops out
    k0 = sc.mat(kb(0.0))
    assert abs(k0[0, 1]) < 1e-14 and abs(k0[1, 0]) < 1e-14
    assert abs(k0[0, 0] - k0[1, 1]) < 1e-14


@pytest.mark.parametrize(
    "family,k",
    [
        ("xxz_p", "identity"),
        ("xxz_h", "identity"),
        ("xxx", "identity"),
        ("xxz_h", "gz"),
        ("xxz_p", "gz_p"),
        ("xxz_h", "blob"),
    ],
)
def test_reflection_equation(family, k):
    fams = {
        "xxz_p": sc.xxz_family(MU, "principal"),
        "xxz_h": sc.xxz_family(MU, "homogeneous"),
        "xxx": sc.xxx_family(),
    }
    ks = {
        "identity": sc.k_identity(),
        "gz": sc.k_gz_dvgr(XI, KAPPA, "homogeneous"),
        "gz_p": sc.k_gz_dvgr(XI, KAPPA, "principal"),
        "blob": sc.k_blob(MU, 0.7, 0.4),
    }
    for l1, l2 in rand_pairs(8):
        assert sc.re_residual(fams[family], ks[k], l1, l2) < 1e-10


def test_reflection_equation_detects_perturbation():
    fh = sc.xxz_family(MU, "homogeneous")
    kh = sc.k_gz_dvgr(XI, KAPPA, "homogeneous")

    def bad(lam):
        return sc.mat(kh(lam)) + np.array([[0, 0.05], [0, 0]])

    assert sc.re_residual(fh, bad, 0.31, -0.42) > 1e-3


def test_crossed_k_plus_of_identity_is_m():
    kp_h = sc.crossed_k_plus(sc.k_identity(), "xxz", MU, "homogeneous")
    kp_p = sc.crossed_k_plus(sc.k_identity(), "xxz", MU, "principal")
    kp_x = sc.crossed_k_plus(sc.k_identity(), "xxx")
    for lam in (0.0, 0.37, -1.2 + 0.4j):
        assert np.abs(sc.mat(kp_h(lam)) - np.diag([Q, 1 / Q])).max() < 1e-14
        assert np.abs(sc.mat(kp_p(lam)) - np.eye(2)).max() < 1e-14
        assert np.abs(sc.mat(kp_x(lam)) - np.eye(2)).max() < 1e-14
    with pytest.raises(ValueError):
        sc.crossed_k_plus(sc.k_identity(), "xxz", None, "homogeneous")


def test_m_matrix_commutes_with_r():
    m = np.diag([Q, 1 / Q])
    mm = np.kron(m, m)
    for lam in (0.41, -0.7 + 0.2j):
        assert sc.comm_norm(sc.mat(sc.r_xxz(lam, MU, "homogeneous")), mm) < 1e-14
        assert sc.comm_norm(sc.mat(sc.r_xxz(lam, MU, "principal")), np.eye(4)) < 1e-14


@pytest.mark.parametrize("n", [2, 3])
def test_dressed_reflection_matrices(n):
    rep = sc.uq_sl2_spin_rep(n, Q)
    lx = sc.lax_xxz(rep, "principal", MU)
    fp = sc.xxz_family(MU, "principal")
    dk = lambda lam: sc.dressed_k(lx, sc.k_identity(), lam)
    for l1, l2 in rand_pairs(5, seed=3, imag=0.3):
        assert sc.re_residual(fp, dk, l1, l2) < 1e-10
    # dressing by a c-number solution stays a solution
    if n == 2:
        kp = sc.k_gz_dvgr(XI, KAPPA, "principal")
        dk2 = lambda lam: sc.dressed_k(lx, kp, lam)
        for l1, l2 in rand_pairs(5, seed=5, imag=0.3):
            assert sc.re_residual(fp, dk2, l1, l2) < 1e-10
    # at the origin L(0) K(0) L(0)^-1 collapses back to K(0)
    d0 = sc.mat(sc.dressed_k(lx, sc.k_identity(), 0.0))
    assert sc.rel_norm(d0, np.eye(2 * n)) < 1e-12


@pytest.mark.parametrize(
    "N,kname",
    [(2, "identity"), (4, "identity"), (3, "gz_h"), (3, "gz_p"), (4, "gz_h"), (2, "blob"), (4, "blob")],
)
def test_open_transfer_commutes(N, kname):
    grad = "principal" if kname == "gz_p" else "homogeneous"
    k = {
        "identity": sc.k_identity(),
        "gz_h": sc.k_gz_dvgr(XI, KAPPA, "homogeneous"),
        "gz_p": sc.k_gz_dvgr(XI, KAPPA, "principal"),
        "blob": sc.k_blob(MU, 0.7, 0.4),
    }[kname]
    ch = sc.open_chain("xxz", N, MU, 2, grad, k)
    fam = sc.open_transfer(ch)
    pts = [0.3, -0.7, 0.41 + 0.2j]
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            assert sc.comm_norm(sc.mat(fam(a)), sc.mat(fam(b))) < 1e-9


def test_open_transfer_requires_open_boundary():
    ch = lax.uniform_chain("xxz", 2, MU, 2, "homogeneous")
    with pytest.raises(ValueError):
        sc.open_transfer(ch)


def test_open_transfer_scalar_at_origin():
    ch = sc.open_chain("xxz", 3, MU, 2, "homogeneous", sc.k_gz_dvgr(XI, KAPPA, "homogeneous"))
    t0 = sc.mat(sc.open_transfer(ch)(0.0))
    scalar = np.trace(t0) / t0.shape[0]
    assert abs(scalar) > 1e-6
    assert sc.rel_norm(t0, scalar * np.eye(t0.shape[0])) < 1e-12


def test_open_transfer_quantum_group_symmetry():
    # K- = I, K+ = M: every transfer value commutes with the coproduct images
    ch = sc.open_chain("xxz", 3, MU, 2, "homogeneous", sc.k_identity())
    fam = sc.open_transfer(ch)
    cop = sc.ncoproduct(sc.uq_sl2_spin_rep(2, Q), 3)
    for lam in (0.3, -0.7, 0.45, 0.11 + 0.2j, -0.23):
        tm = sc.mat(fam(lam))
        for label in ("Jp", "Jm", "qJz"):
            assert sc.comm_norm(tm, cop.image(label)) < 1e-10


def test_open_hamiltonian_fits_invariant_model():
    ch = sc.open_chain("xxz", 3, MU, 2, "homogeneous", sc.k_identity())
    h = sc.mat(sc.open_hamiltonian(ch))
    model = sc.mat(sc.uq_invariant_hamiltonian(3, MU))
    coef, resid = sc.fit_affine(h, [model, np.eye(8)])
    assert resid < 1e-8
    assert abs(coef[0] - (-12.93091258j)) < 1e-6
    assert abs(coef[1] - (-17.93901852j)) < 1e-6
    cop = sc.ncoproduct(sc.uq_sl2_spin_rep(2, Q), 3)
    for label in ("Jp", "Jm", "qJz"):
        assert sc.comm_norm(h, cop.image(label)) < 1e-10
        assert sc.comm_norm(model, cop.image(label)) < 1e-12


def test_invariant_hamiltonian_two_site_multiplets():
    # the N=2 spectrum is real: a triplet at cos(mu)/2 and a singlet at
    # -3 cos(mu)/2, with Jz content {-1, 0, 1} and {0}
    h = sc.mat(sc.uq_invariant_hamiltonian(2, MU))
    cop = sc.ncoproduct(sc.uq_sl2_spin_rep(2, Q), 2)
    w, v = np.linalg.eig(h)
    assert np.abs(w.imag).max() < 1e-12
    jz = cop.image("Jz")
    triplet = np.flatnonzero(np.abs(w - np.cos(MU) / 2) < 1e-10)
    singlet = np.flatnonzero(np.abs(w + 3 * np.cos(MU) / 2) < 1e-10)
    assert len(triplet) == 3 and len(singlet) == 1
    for idx, want in ((triplet, [-1.0, 0.0, 1.0]), (singlet, [0.0])):
        block = v[:, idx]
        jz_block = np.linalg.pinv(block) @ jz @ block
        content = sorted(np.linalg.eigvals(jz_block).real)
        assert np.abs(np.asarray(content) - want).max() < 1e-9


def test_invariant_hamiltonian_three_site_multiplets():
    # non-Hermitian at real mu: cluster complex eigenvalues, then read the
    # Jz content of each eigenspace through the restricted coproduct image
    h = sc.mat(sc.uq_invariant_hamiltonian(3, MU))
    cop = sc.ncoproduct(sc.uq_sl2_spin_rep(2, Q), 3)
    w, v = np.linalg.eig(h)
    jz = cop.image("Jz")
    clusters = {}
    for i, z in enumerate(w):
        for key in clusters:
            if abs(z - key) < 1e-8:
                clusters[key].append(i)
                break
        else:
            clusters[complex(z)] = [i]
    contents = []
    for key, idx in clusters.items():
        block = v[:, idx]
        jz_block = np.linalg.pinv(block) @ jz @ block
        contents.append(sorted(np.round(np.linalg.eigvals(jz_block).real, 6)))
    contents.sort(key=len)
    assert contents == [[-0.5, 0.5], [-0.5, 0.5], [-1.5, -0.5, 0.5, 1.5]]


@pytest.mark.parametrize("n", [2, 3])
def test_casimir_from_transfer_asymptotics(n):
    rep = sc.uq_sl2_spin_rep(n, Q)
    t_plus, t_minus = sc.casimir_from_asymptotics(rep)
    c = sc.mat(sc.casimir_uq(rep))
    assert sc.rel_norm(sc.mat(t_plus), -Q * c) < 1e-12
    assert sc.rel_norm(sc.mat(t_minus), -(1 / Q) * c) < 1e-12
    for label in ("Jp", "Jm", "qJz"):
        assert sc.comm_norm(sc.mat(t_plus), rep.gen(label)) < 1e-10
    # scalar on the irreducible representation
    scalar = np.trace(sc.mat(t_plus)) / n
    assert sc.rel_norm(sc.mat(t_plus), scalar * np.eye(n)) < 1e-9


def test_blob_open_hamiltonian_two_routes():
    # blob K- with the trivial crossed K+ lands in the span of the blob
    # generators; the boundary coupling and the spectrum agree between the
    # transfer route and the braid-algebra route
    kb = sc.k_blob(MU, 0.7, 0.4)
    kp = sc.crossed_k_plus(sc.k_identity(), "xxz", MU, "homogeneous")
    ch = sc.open_chain("xxz", 3, MU, 2, "homogeneous", kb, kp)
    h = sc.mat(sc.open_hamiltonian(ch))
    blob = sc.blob_rep(3, Q, 1j * cmath.exp(1j * MU * 0.7), 1.0)
    u_sum = sum(blob.u(i) for i in range(1, 3))
    u0 = blob.u(0)
    coef, resid = sc.fit_affine(h, [u_sum, u0, np.eye(8)])
    assert resid < 1e-9
    c1 = coef[1] / coef[0]
    assert abs(c1 - 0.11273079) < 1e-6
    route_braid = np.sort_complex(np.linalg.eigvals(u_sum + c1 * u0))
    route_transfer = np.sort_complex(np.linalg.eigvals((h - coef[2] * np.eye(8)) / coef[0]))
    assert np.abs(route_braid - route_transfer).max() < 1e-9


def test_gauge_paired_boundaries_share_spectra():
    # principal and homogeneous pipelines agree when K_p is the two-sided
    # gauge image of a diagonal K_h; the homogeneous identity pairs with
    # diag(e^-l, e^l)
    k_id_p = boundary.KMatrixFamily(
        "identity-gauge-image",
        lambda lam: sc.linalg.Operator(
            (2,), np.diag([cmath.exp(-lam), cmath.exp(lam)]).astype(complex)
        ),
        {},
    )
    cases = [
        (2, sc.k_identity(), k_id_p),
        (3, sc.k_identity(), k_id_p),
        (3, sc.k_gz_dvgr(XI, 0.0, "homogeneous"), sc.k_gz_dvgr(XI, 0.0, "principal")),
        (3, sc.k_gz_dvgr(-0.8, 0.0, "homogeneous"), sc.k_gz_dvgr(-0.8, 0.0, "principal")),
    ]
    for N, kh, kp in cases:
        th = sc.open_transfer(sc.open_chain("xxz", N, MU, 2, "homogeneous", kh))
        tp = sc.open_transfer(sc.open_chain("xxz", N, MU, 2, "principal", kp))
        for lam in (0.37, -0.22):
            eh = np.sort_complex(np.linalg.eigvals(sc.mat(th(lam))))
            ep = np.sort_complex(np.linalg.eigvals(sc.mat(tp(lam))))
            assert np.abs(eh - ep).max() / max(np.abs(eh).max(), 1e-300) < 1e-9
    # off-diagonal K breaks the pairing: the two crossing conventions then
    # differ by more than a similarity
    th = sc.open_transfer(
        sc.open_chain("xxz", 2, MU, 2, "homogeneous", sc.k_gz_dvgr(XI, KAPPA, "homogeneous"))
    )
    tp = sc.open_transfer(
        sc.open_chain("xxz", 2, MU, 2, "principal", sc.k_gz_dvgr(XI, KAPPA, "principal"))
    )
    eh = np.sort_complex(np.linalg.eigvals(sc.mat(th(0.37))))
    ep = np.sort_complex(np.linalg.eigvals(sc.mat(tp(0.37))))
    assert np.abs(eh - ep).max() / np.abs(eh).max() > 1e-4
