"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.

Two parametrized cases of criterion 7 (dimension-3 mixed pairs at orders
1.5 and 2) fail honestly: the claimed trace-distance lower bound is false
there, with an exact commuting counterexample reproduced in the failure
message. Everything else passes at its stated tolerance.
"""

import math
import time

import numpy as np
import pytest

from jensengeo.bounds import (
    diagram,
    lower_L,
    lower_witness_pair,
    q_bound_report,
    upper_curve_value,
    upper_U2,
    upper_Un,
    upper_witness_pair,
)
from jensengeo.classical import random_distribution, total_variation
from jensengeo.geometry import (
    cm_sign_prediction,
    counterexample_energy,
    counterexample_numerator,
    divergence_matrix,
    embed,
    negative_type_check,
    power_integral,
    quadruple_cm_determinant,
    triangle_gap,
    COUNTEREXAMPLE_TRIPLE,
)
from jensengeo.jensen import (
    compensation_residual,
    donald_residual,
    jd_alpha,
    jd_general,
    q_redundancy,
    qjd_general,
    redundancy,
    weighted_family,
)
from jensengeo.quantum import (
    ginibre_state,
    pure_overlap_eigenvalues,
    qubit_mixture_eigenvalues,
    random_pure_state,
    random_unitary,
    spectrum,
    trace_exp_qubit,
    validate_density,
)

LN2 = math.log(2.0)


def report(line: str) -> None:
    print(f"\n{line}")


# -------------------------------------------------------------------- 1


def test_criterion_1_classical_negative_type():
    """Order-alpha divergence matrices of random distribution sets are of negative type."""
    rng = np.random.default_rng(1001)
    t0 = time.monotonic()
    checked = 0
    for alpha in (0.25, 0.5, 1.0, 1.5, 2.0):
        for _ in range(200):
            m = int(rng.integers(2, 9))
            n = int(rng.integers(2, 7))
            pts = [random_distribution(n, rng) for _ in range(m)]
            dm = divergence_matrix(pts, alpha)
            rep = negative_type_check(dm)
            scale = dm.n * max(float(np.max(dm.d)), 0.0)
            assert rep.min_eigenvalue >= -1e-9 * scale, (alpha, rep.min_eigenvalue)
            assert rep.is_negative_type
            checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed <= 10.0, f"runtime {elapsed:.1f}s exceeds 10s"
    report(
        f"[PASS] criterion 1: negative type on {checked} classical sets "
        f"(alpha in {{0.25,0.5,1,1.5,2}}), {elapsed:.1f}s"
    )


# -------------------------------------------------------------------- 2


def test_criterion_2_quantum_negative_type():
    """Qubit-state and pure-state divergence matrices are of negative type."""
    rng = np.random.default_rng(1002)
    t0 = time.monotonic()
    checked = 0
    qubit_sets = []
    pure_sets = []
    for _ in range(200):
        m = int(rng.integers(2, 9))
        qubit_sets.append([ginibre_state(2, rng) for _ in range(m)])
        m = int(rng.integers(2, 9))
        d = int(rng.integers(2, 5))
        pure_sets.append([random_pure_state(d, rng) for _ in range(m)])
    for alpha in (0.5, 1.0, 1.5, 2.0):
        for pts in qubit_sets + pure_sets:
            dm = divergence_matrix(pts, alpha)
            rep = negative_type_check(dm)
            scale = dm.n * max(float(np.max(dm.d)), 0.0)
            assert rep.min_eigenvalue >= -1e-9 * scale, (alpha, rep.min_eigenvalue)
            checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed <= 30.0, f"runtime {elapsed:.1f}s exceeds 30s"
    report(
        f"[PASS] criterion 2: negative type on {checked} qubit/pure-state sets "
        f"(alpha in {{0.5,1,1.5,2}}), {elapsed:.1f}s"
    )


# -------------------------------------------------------------------- 3


def test_criterion_3_counterexample_energy_roots():
    """Triangle-defect roots at orders 1, 2, 3; positive defect across (2, 3)."""
    # orders 1, 2, 3 solve the defect equation; at order 1 the solution is a
    # root of the (alpha - 1)-scaled defect (the expression whose "solutions"
    # are being verified), since the divided form has a removable singularity
    # there with nonzero limit 3 ln 3 - 5 ln 2
    for alpha in (1.0, 2.0, 3.0):
        assert abs(counterexample_numerator(alpha)) <= 1e-10
    for alpha in (2.0, 3.0):
        assert abs(counterexample_energy(alpha)) <= 1e-10
    assert counterexample_energy(1.0) == pytest.approx(3 * math.log(3) - 5 * LN2, abs=1e-12)

    grid = np.arange(2.05, 2.95 + 1e-9, 0.01)
    for alpha in grid:
        assert counterexample_energy(float(alpha)) > 0.0, alpha

    pts = [np.array(p) for p in COUNTEREXAMPLE_TRIPLE]
    for alpha in grid:
        dm = divergence_matrix(pts, float(alpha))
        assert triangle_gap(dm, 0, 1, 2) < 0.0, alpha
    report(
        "[PASS] criterion 3: defect roots at {1,2,3} (<= 1e-10), defect > 0 and "
        f"triangle gap < 0 at all {len(grid)} grid orders in (2.05, 2.95)"
    )


# -------------------------------------------------------------------- 4


def test_criterion_4_embeddability_window():
    """Quadruple determinant sign matches the leading-coefficient prediction."""
    eps = 1e-2
    for alpha in (0.5, 1.5, 2.5, 3.2, 3.4, 4.0, 5.0):
        det = quadruple_cm_determinant(alpha, eps)
        assert int(np.sign(det)) == cm_sign_prediction(alpha), (alpha, det)
    assert quadruple_cm_determinant(4.0, eps) < 0.0  # non-embeddable beyond 7/2
    report(
        "[PASS] criterion 4: quadruple determinant sign matches prediction at "
        "alpha in {0.5,1.5,2.5,3.2,3.4,4,5}; negative at alpha=4"
    )


# -------------------------------------------------------------------- 5


def test_criterion_5_embedding_round_trip():
    """Embedding coordinates reproduce order-1 divergence matrices to 1e-8."""
    rng = np.random.default_rng(1005)
    worst = 0.0
    for _ in range(50):
        m = int(rng.integers(2, 9))
        n = int(rng.integers(2, 7))
        pts = [random_distribution(n, rng) for _ in range(m)]
        dm = divergence_matrix(pts, 1.0)
        emb = embed(dm)
        gram = emb.coords @ emb.coords.T
        sq = np.diag(gram)
        recon = sq[:, None] + sq[None, :] - 2.0 * gram
        err = float(np.max(np.abs(recon - dm.d)))
        worst = max(worst, err, emb.reconstruction_error)
        assert err <= 1e-8
    report(f"[PASS] criterion 5: 50 embeddings round-trip, worst error {worst:.2e} <= 1e-8")


# -------------------------------------------------------------------- 6


@pytest.mark.parametrize("alpha", [1.0, 1.3, 1.7, 2.0])
def test_criterion_6_bounds_sandwich_and_tightness(alpha):
    """Sandwich within 1e-10 and witness tightness within 1e-12 on a v-grid.

    The full sandwich is checked on random two-letter pairs, the regime
    in which the lower bound is a theorem (it is attained there); for
    larger alphabets the upper bound is checked for every order and the
    lower additionally at order 1. Away from order 1 the lower bound is
    provably false for n >= 3: JD_2((1/2,1/2,0,0), (0,0,1/2,1/2)) = 1/4
    while L(V=2) = 1/2; that counterexample is pinned below.
    """
    rng = np.random.default_rng(int(1006 + 10 * alpha))

    for _ in range(10_000):
        p, q = random_distribution(2, rng), random_distribution(2, rng)
        v = total_variation(p, q)
        value = jd_alpha(p, q, alpha).value
        assert lower_L(v, alpha) - 1e-10 <= value <= upper_U2(v, alpha) + 1e-10

    for _ in range(10_000):
        n = int(rng.integers(3, 7))
        p, q = random_distribution(n, rng), random_distribution(n, rng)
        value = jd_alpha(p, q, alpha).value
        assert value <= upper_Un(p, q, alpha) + 1e-10
        if alpha == 1.0:
            assert lower_L(total_variation(p, q), alpha) - 1e-10 <= value

    for v in np.linspace(0.0, 2.0, 50):
        v = float(v)
        pl, ql = lower_witness_pair(v)
        assert abs(jd_alpha(pl, ql, alpha).value - lower_L(v, alpha)) <= 1e-12
        pu, qu = upper_witness_pair(v, 3)
        assert abs(jd_alpha(pu, qu, alpha).value - upper_Un(pu, qu, alpha)) <= 1e-12
        p2, q2 = upper_witness_pair(v, 2)
        assert abs(jd_alpha(p2, q2, alpha).value - upper_U2(v, alpha)) <= 1e-12

    # pinned counterexample: the lower bound does not extend to n >= 3 away
    # from order 1 (so the two-letter scope above is not an arbitrary choice)
    if alpha != 1.0:
        bad_p, bad_q = [0.5, 0.5, 0.0, 0.0], [0.0, 0.0, 0.5, 0.5]
        assert jd_alpha(bad_p, bad_q, 2.0).value < lower_L(2.0, 2.0)

    report(
        f"[PASS] criterion 6 (alpha={alpha}): 10000 two-letter sandwiches, "
        "10000 upper checks for n in [3,6], witnesses tight on 50-point grid"
    )


# -------------------------------------------------------------------- 7


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0])
def test_criterion_7_quantum_bounds(dim, alpha):
    """Trace-distance sandwich on 1000 random pairs per dimension and order.

    Expected honest failures: (dim=3, alpha=1.5) and (dim=3, alpha=2.0).
    The lower bound reduces to the classical two-outcome bound only at
    order 1 (relative entropy is what contracts under measurements); for
    d >= 3 and order != 1 it is false, already for commuting states:
    with rho1 = diag(1/2,1/3,1/6), rho2 = diag(1/3,1/6,1/2) one has
    ||rho1-rho2||_1 = 2/3 and QJD_2 = 1/24 < L(2/3) = 1/18.
    """
    rng = np.random.default_rng(int(1007 + dim * 100 + alpha * 10))
    violations = []
    for _ in range(1000):
        r1, r2 = ginibre_state(dim, rng), ginibre_state(dim, rng)
        rep = q_bound_report(r1, r2, alpha)
        if not (rep.lower - 1e-9 <= rep.value <= rep.upper + 1e-9):
            violations.append(rep)
    if not violations:
        report(f"[PASS] criterion 7 (d={dim}, alpha={alpha}): 1000 sandwiches within 1e-9")
        return
    worst = max(max(v.lower - v.value, v.value - v.upper) for v in violations)
    report(
        f"[FAIL] criterion 7 (d={dim}, alpha={alpha}): {len(violations)}/1000 pairs break "
        f"the stated lower bound (worst gap {worst:.3e}); the bound is provably false here"
    )
    pytest.fail(
        f"criterion 7 (d={dim}, alpha={alpha}): {len(violations)}/1000 random pairs violate "
        "the stated trace-distance lower bound. This criterion encodes a false claim: the "
        "measurement reduction that proves the order-1 lower bound does not extend to other "
        "orders or dimensions above 2. Exact counterexample (commuting, hence classical "
        "three-letter): rho1 = diag(1/2,1/3,1/6), rho2 = diag(1/3,1/6,1/2) gives "
        "||rho1-rho2||_1 = 2/3, QJD_2 = 1/24 < s_2(1/2) - s_2(1/2 + (2/3)/4) = 1/18. "
        "The qubit cases and every order-1 case pass."
    )


# -------------------------------------------------------------------- 8


def test_criterion_8_identities_and_minimizer():
    """Identity residuals at float precision; the mixture minimizes redundancy."""
    rng = np.random.default_rng(1008)

    worst_c = 0.0
    for _ in range(1000):
        k = int(rng.integers(2, 5))
        n = int(rng.integers(2, 6))
        fam = weighted_family(
            [random_distribution(n, rng) for _ in range(k)], rng.dirichlet(np.ones(k))
        )
        q = random_distribution(n, rng)
        res = compensation_residual(fam, q)
        worst_c = max(worst_c, res)
        assert res <= 1e-10

    worst_q = 0.0
    for _ in range(1000):
        k = int(rng.integers(2, 4))
        fam = weighted_family(
            [ginibre_state(2, rng) for _ in range(k)], rng.dirichlet(np.ones(k))
        )
        sigma = ginibre_state(2, rng)
        res = donald_residual(fam, sigma)
        worst_q = max(worst_q, res)
        assert res <= 1e-9

    # classical minimizer, two-letter support: 1/200-resolution grid
    fam2 = weighted_family(
        [random_distribution(2, rng) for _ in range(3)], rng.dirichlet(np.ones(3))
    )
    best2 = jd_general(fam2).value
    for t in np.linspace(0.0, 1.0, 201):
        assert redundancy(fam2, np.array([t, 1.0 - t])) >= best2 - 1e-12

    # classical minimizer, three letters: full triangular grid, step 1/200
    fam3 = weighted_family(
        [random_distribution(3, rng) for _ in range(2)], rng.dirichlet(np.ones(2))
    )
    best3 = jd_general(fam3).value
    steps = 200
    for i in range(steps + 1):
        for j in range(steps + 1 - i):
            qv = np.array([i, j, steps - i - j], dtype=float) / steps
            assert redundancy(fam3, qv) >= best3 - 1e-12

    # quantum minimizer on a commuting qubit family: the mixture is optimal
    # within the common eigenbasis
    U = random_unitary(2, rng)
    diags = [random_distribution(2, rng) for _ in range(3)]
    states = [validate_density(U @ np.diag(d.probs) @ U.conj().T) for d in diags]
    qfam = weighted_family(states, rng.dirichlet(np.ones(3)))
    qbest = qjd_general(qfam).value
    for t in np.linspace(0.0, 1.0, 201):
        sigma = validate_density(U @ np.diag([t, 1.0 - t]) @ U.conj().T)
        assert q_redundancy(qfam, sigma) >= qbest - 1e-9

    report(
        f"[PASS] criterion 8: worst residuals {worst_c:.2e} (classical, <= 1e-10) and "
        f"{worst_q:.2e} (quantum, <= 1e-9) over 1000 families each; mixture minimizes "
        "redundancy on 1/200 grids (n=2, n=3, commuting qubits)"
    )


# -------------------------------------------------------------------- 9


def test_criterion_9_closed_form_spectra():
    """Closed-form spectra agree with the generic eigensolver to 1e-10."""
    rng = np.random.default_rng(1009)

    for _ in range(1000):
        rho = ginibre_state(2, rng)
        lam = qubit_mixture_eigenvalues(rho)
        w = spectrum(rho).eigenvalues
        assert abs(lam[0] - w[0]) <= 1e-10 and abs(lam[1] - w[1]) <= 1e-10

    for _ in range(1000):
        d = int(rng.integers(2, 5))
        r1, r2 = random_pure_state(d, rng), random_pure_state(d, rng)
        lam = pure_overlap_eigenvalues(r1, r2)
        w = spectrum(validate_density((r1.matrix + r2.matrix) / 2.0)).eigenvalues
        assert abs(lam[0] - w[0]) <= 1e-10 and abs(lam[1] - w[1]) <= 1e-10
        if d > 2:
            assert float(np.max(np.abs(w[2:]))) <= 1e-10

    for _ in range(1000):
        rho = ginibre_state(2, rng)
        t = float(rng.uniform(0.0, 5.0))
        w = spectrum(rho).eigenvalues
        assert abs(trace_exp_qubit(rho, t) - float(np.sum(np.exp(-t * w)))) <= 1e-10

    report("[PASS] criterion 9: closed-form spectra match the eigensolver to 1e-10, 1000 instances each")


# -------------------------------------------------------------------- 10


def test_criterion_10_integral_representation():
    """Power-function integral representation accurate to 1e-6 on the grid."""
    t0 = time.monotonic()
    worst = 0.0
    for alpha in (0.3, 0.5, 0.7, 1.3, 1.5, 1.7):
        for x in np.arange(0.0, 2.0 + 1e-9, 0.1):
            err = abs(power_integral(float(x), alpha) - float(x) ** alpha)
            worst = max(worst, err)
            assert err <= 1e-6, (x, alpha, err)
    elapsed = time.monotonic() - t0
    assert elapsed <= 5.0, f"runtime {elapsed:.1f}s exceeds 5s"
    report(
        f"[PASS] criterion 10: 126 integral evaluations, worst error {worst:.2e} <= 1e-6, "
        f"{elapsed:.2f}s"
    )


# -------------------------------------------------------------------- 11


def test_criterion_11_diagram():
    """Homotopy samples lie between the emitted curves; endpoints reproduce them."""
    pts = diagram(1.0, 3, 50)
    for t, v, jd in pts.homotopy_samples:
        assert jd >= lower_L(v, 1.0) - 1e-9
        assert jd <= upper_curve_value(v, 1.0, 3) + 1e-9

    lower_rows = [s for s in pts.homotopy_samples if s[0] == 0.0]
    upper_rows = [s for s in pts.homotopy_samples if s[0] == 1.0]
    assert len(lower_rows) == len(pts.curve_lower) == 50
    for (_, v, jd), (vc, jc) in zip(lower_rows, pts.curve_lower):
        assert abs(v - vc) <= 1e-9 and abs(jd - jc) <= 1e-9
    for (_, v, jd), (vc, jc) in zip(upper_rows, pts.curve_upper):
        assert abs(v - vc) <= 1e-9 and abs(jd - jc) <= 1e-9

    report("[PASS] criterion 11: 2500 homotopy samples inside the curves (1e-9); endpoint rows reproduce them")
