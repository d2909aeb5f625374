import numpy as np
import pytest

from cohbreak.channels import (
    dephasing_channel,
    gad_channel,
    identity_channel,
    kron_channel,
    unitary_channel,
)
from cohbreak.coherence import c_l1
from cohbreak.concentration import (
    ConcentrationReport,
    apply_batch,
    contraction_check,
    corollary_bound,
    estimate_mean_coherence,
    levy_bound,
    lipschitz_scaled_l1,
    run_concentration_experiment,
    wilson_interval,
)
from cohbreak.errors import InvalidDimensionError, ParameterOutOfRangeError
from cohbreak.linalg import trace_distance
from cohbreak.states import haar_random_kets
from conftest import HADAMARD, random_density_matrix


def test_levy_bound_at_zero_epsilon():
    assert levy_bound(10, 0.0, 1.0, 1.0) == 2.0


def test_levy_bound_frozen_value():
    # direct evaluation of 2 exp(-1000 * 0.01 / (18 pi^3 ln 2))
    assert abs(levy_bound(1000, 0.1, 1.0, 1.0) - 1.948963444979266) < 1e-12


def test_levy_bound_monotonicity():
    for d in (4, 16, 256):
        assert levy_bound(2 * d, 0.3, 1.0, 1.0) < levy_bound(d, 0.3, 1.0, 1.0)
    for eps in (0.1, 0.3, 0.6):
        assert levy_bound(64, eps + 0.1, 1.0, 1.0) < levy_bound(64, eps, 1.0, 1.0)


def test_levy_bound_validation():
    with pytest.raises(ParameterOutOfRangeError):
        levy_bound(8, -0.1, 1.0, 1.0)
    with pytest.raises(ParameterOutOfRangeError):
        levy_bound(8, 0.1, 0.0, 1.0)


def test_corollary_bound_at_zero_epsilon():
    assert corollary_bound(16, 0.0, 1.0) == 2.0


def test_corollary_bound_frozen_values():
    # direct evaluations of 2 exp(-(d-1)^2 eps^2 / (18 pi^3 d ln 2)) at d=4096
    assert abs(corollary_bound(4096, 0.05, 1.0) - 1.9477798770279797) < 1e-12
    assert abs(corollary_bound(4096, 0.5, 1.0) - 0.14191160160733265) < 1e-12
    assert corollary_bound(4096, 0.5, 1.0) < 0.2


def test_corollary_equals_levy_at_scaled_lipschitz_constant():
    for d in (2, 3, 8, 64, 1024):
        for eps in (0.01, 0.1, 0.5, 1.0):
            a = levy_bound(d, eps, lipschitz_scaled_l1(d), 1.0)
            b = corollary_bound(d, eps, 1.0)
            assert abs(a - b) < 1e-12


def test_lipschitz_constant_values():
    assert lipschitz_scaled_l1(2) == 2.0
    assert abs(lipschitz_scaled_l1(10**6) - 1.0) < 1e-5
    with pytest.raises(InvalidDimensionError):
        lipschitz_scaled_l1(1)


def test_scaled_l1_lipschitz_inequality_on_samples():
    rng = np.random.default_rng(0)
    d = 3
    bound = lipschitz_scaled_l1(d)
    for _ in range(500):
        rho = random_density_matrix(d, rng)
        sigma = random_density_matrix(d, rng)
        lhs = abs(c_l1(rho) - c_l1(sigma)) / (d - 1)
        assert lhs <= bound * trace_distance(rho, sigma) + 1e-10


def test_wilson_interval_brackets_the_estimate():
    lo, hi = wilson_interval(10, 100)
    assert 0.0 <= lo <= 0.1 <= hi <= 1.0
    lo, hi = wilson_interval(0, 100)
    assert lo == 0.0 and hi > 0.0


def test_mean_coherence_of_dephasing_is_zero():
    mean, stderr = estimate_mean_coherence(dephasing_channel(2), 500, seed=1)
    assert mean == 0.0 and stderr == 0.0


def test_mean_coherence_of_qubit_identity_matches_quarter_pi():
    mean, stderr = estimate_mean_coherence(identity_channel(2), 100_000, seed=2)
    assert abs(mean - np.pi / 4) < 3 * stderr


def test_mean_coherence_is_deterministic_and_seed_consistent():
    a = estimate_mean_coherence(identity_channel(3), 20_000, seed=3)
    b = estimate_mean_coherence(identity_channel(3), 20_000, seed=3)
    assert a == b
    c = estimate_mean_coherence(identity_channel(3), 20_000, seed=4)
    se = np.hypot(a[1], c[1])
    assert abs(a[0] - c[0]) < 5 * se


def test_apply_batch_matches_kron_oracle():
    gad = gad_channel(0.7, 1.0)
    full = kron_channel(kron_channel(gad, gad), gad)
    rng = np.random.default_rng(5)
    kets = haar_random_kets(8, 16, rng)
    rhos = np.einsum("bi,bj->bij", kets, kets.conj())
    fast = apply_batch([gad, gad, gad], rhos)
    from cohbreak.channels import apply

    naive = np.stack([apply(full, rho) for rho in rhos])
    assert np.abs(fast - naive).max() < 1e-12


def test_apply_batch_heterogeneous_factors():
    gad = gad_channel(0.6, 0.2)
    delta3 = dephasing_channel(3)
    full = kron_channel(gad, delta3)
    rng = np.random.default_rng(6)
    kets = haar_random_kets(6, 8, rng)
    rhos = np.einsum("bi,bj->bij", kets, kets.conj())
    fast = apply_batch([gad, delta3], rhos)
    from cohbreak.channels import apply

    naive = np.stack([apply(full, rho) for rho in rhos])
    assert np.abs(fast - naive).max() < 1e-12


def test_experiment_report_invariants():
    report = run_concentration_experiment(
        identity_channel(8), d=8, samples=2000, epsilons=[0.05, 0.2, 0.5], seed=7
    )
    assert report.dim == 8 and report.samples == 2000
    for tail, (lo, hi), levy, coro in zip(
        report.tails, report.tail_wilson, report.levy_bounds, report.corollary_bounds
    ):
        assert 0.0 <= tail <= 1.0
        assert lo <= tail <= hi
        assert levy >= 0.0 and coro >= 0.0
        assert abs(levy - coro) < 1e-12
    assert report.epsilons == [0.05, 0.2, 0.5]


def test_experiment_dephasing_has_zero_tails():
    report = run_concentration_experiment(
        dephasing_channel(4), d=4, samples=1000, epsilons=[0.01, 0.1], seed=8
    )
    assert report.mean_c_l1 == 0.0
    assert report.tails == [0.0, 0.0]


def test_experiment_tails_shrink_with_dimension():
    tails = {}
    for d in (8, 64):
        report = run_concentration_experiment(
            identity_channel(d), d=d, samples=10_000, epsilons=[0.05], seed=9
        )
        tails[d] = report.tails[0]
    assert tails[64] < tails[8]


def test_experiment_tails_below_nonvacuous_bounds():
    report = run_concentration_experiment(
        identity_channel(16), d=16, samples=5000, epsilons=[0.05, 0.2, 0.5, 0.9], seed=10
    )
    for tail, bound, n in zip(report.tails, report.corollary_bounds, [5000] * 4):
        if bound < 1.0:
            sigma = np.sqrt(tail * (1 - tail) / n)
            assert tail - 3 * sigma <= bound


def test_experiment_validation():
    with pytest.raises(ParameterOutOfRangeError):
        run_concentration_experiment(identity_channel(4), d=4, samples=100,
                                     epsilons=[], seed=0)
    with pytest.raises(ParameterOutOfRangeError):
        run_concentration_experiment(identity_channel(4), d=8, samples=100,
                                     epsilons=[0.1], seed=0)


def test_report_round_trip():
    report = run_concentration_experiment(
        identity_channel(4), d=4, samples=500, epsilons=[0.1], seed=11
    )
    back = ConcentrationReport.from_dict(report.to_dict())
    assert back.to_dict() == report.to_dict()


def test_contraction_of_unitary_channel_is_one():
    ratio = contraction_check(unitary_channel(HADAMARD), samples=50, seed=12)
    assert abs(ratio - 1.0) < 1e-10


def test_contraction_of_noisy_channels_is_below_one():
    for channel in (dephasing_channel(2), gad_channel(0.7, 1.0)):
        ratio = contraction_check(channel, samples=100, seed=13)
        assert ratio <= 1.0 + 1e-9


def test_coherence_difference_chain_inequality():
    # |C(Phi(psi)) - C(Phi(phi))| / (d-1) <= 2 (d/(d-1)) eta ||psi - phi||_2
    rng = np.random.default_rng(14)
    d = 4
    channel = gad_channel(0.6, 0.4)
    channel4 = kron_channel(channel, channel)
    eta = contraction_check(channel4, samples=100, seed=15)
    kets = haar_random_kets(d, 400, rng)
    from cohbreak.channels import apply

    for i in range(200):
        psi, phi = kets[2 * i], kets[2 * i + 1]
        out_a = apply(channel4, np.outer(psi, psi.conj()))
        out_b = apply(channel4, np.outer(phi, phi.conj()))
        lhs = abs(c_l1(out_a) - c_l1(out_b)) / (d - 1)
        rhs = 2.0 * lipschitz_scaled_l1(d) * eta * np.linalg.norm(psi - phi)
        assert lhs <= rhs + 1e-10
