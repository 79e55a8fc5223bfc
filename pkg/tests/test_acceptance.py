"""Acceptance gate: reference values and property suites, one line per criterion.

Run with -s to see the [PASS]/[FAIL] lines as they are produced; each
criterion prints exactly one line either way.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from dimerdecay.analysis import estimate_eta, estimate_eta_limit, find_alpha_minimum
from dimerdecay.dynamics import (
    EvolutionParams,
    OneExcitationState,
    analytic_evolve,
    from_site_basis,
    numeric_evolve,
    to_site_basis,
)
from dimerdecay.excitons import DimerParams, exciton_frame, su2_identity_check
from dimerdecay.rates import attenuation_factor, bose_occupation, helix_attenuation
from dimerdecay.units import thermal_energy

FMO = DimerParams(
    omega1=60.0, omega2=-60.0, j12=-96.0, lambda1=35.0, eta_abs=0.71, theta=0.0
)

THETAS = (0.0, 0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, math.pi)


@contextmanager
def criterion(capsys, number, text):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"[FAIL] criterion {number}: {text}")
        raise
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        print(f"[PASS] criterion {number}: {text} ({elapsed:.2f} s)")


def supnorm(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def test_criterion_1_attenuation_minima(capsys):
    refs = [
        (1.64, 13.2),
        (1.68, 10.4),
        (1.80, 5.26),
        (2.05, 2.10),
        (2.24, 1.33),
    ]
    with criterion(capsys, 1, "1/alpha minima at five phases, ±0.01 / ±0.5%"):
        t0 = time.perf_counter()
        minima = [find_alpha_minimum(FMO, th) for th in THETAS]
        elapsed = time.perf_counter() - t0
        for (eta, inv), (ref_eta, ref_inv) in zip(minima, refs):
            assert eta == pytest.approx(ref_eta, abs=0.01)
            assert inv == pytest.approx(ref_inv, rel=0.005)
        assert elapsed < 1.0
        # the sign of the coupling does not move the minima
        flipped = DimerParams(60.0, -60.0, 96.0, 35.0, 0.71, 0.0)
        for th, (eta, inv) in zip(THETAS, minima):
            assert find_alpha_minimum(flipped, th) == (eta, inv)


def test_criterion_2_eta_estimates(capsys):
    ref_eta = [0.71, 0.63, 0.53, 0.47, 0.45]
    ref_lam2 = [102.0, 80.0, 45.0, 19.0, 11.0]
    with criterion(capsys, 2, "|eta| and lambda2 at lifetime ratio 22, ±0.01 / ±1"):
        t0 = time.perf_counter()
        estimates = [estimate_eta(FMO, th, 22.0) for th in THETAS]
        elapsed = time.perf_counter() - t0
        for est, re, rl in zip(estimates, ref_eta, ref_lam2):
            assert est.eta_abs == pytest.approx(re, abs=0.01)
            assert est.lambda2 == pytest.approx(rl, abs=1.0)
        assert elapsed < 1.0


def test_criterion_3_limit_inversion(capsys):
    with criterion(capsys, 3, "weak-coupling inversion at ratio 14 gives 10.7 ± 0.05"):
        assert estimate_eta_limit(200.0, 5.0, 14.0) == pytest.approx(10.7, abs=0.05)


def test_criterion_4_chain_lattice(capsys):
    with criterion(capsys, 4, "chain-lattice 1/alpha is 36.6 ± 0.2"):
        alpha = helix_attenuation(4.5, 4000.0, 7.8)
        assert 1.0 / alpha == pytest.approx(36.6, abs=0.2)


def test_criterion_5_sweep_shape(capsys):
    from dataclasses import replace

    with criterion(
        capsys, 5, "each phase curve unimodal; larger cos(theta) lies higher for |eta| <= 1"
    ):
        grid = np.linspace(0.2, 5.0, 200)
        curves = []
        for th in THETAS:
            curve = np.array(
                [
                    1.0 / attenuation_factor(replace(FMO, eta_abs=float(x), theta=th))
                    for x in grid
                ]
            )
            curves.append(curve)
            k = int(np.argmin(curve))
            assert 0 < k < len(curve) - 1
            assert np.all(np.diff(curve[: k + 1]) < 0.0)
            assert np.all(np.diff(curve[k:]) > 0.0)
        # cos(theta) decreases along THETAS, so the curves must be ordered
        low = grid <= 1.0
        for upper, lower in zip(curves, curves[1:]):
            assert np.all(upper[low] > lower[low])


def test_criterion_6_propagator_cross_validation(capsys):
    with criterion(
        capsys, 6, "numeric propagator within 1e-8 of closed forms at 100/500/2000 fs"
    ):
        frame = exciton_frame(FMO)
        p = EvolutionParams(
            gamma=1.0 / 1100.0,
            nbar0=bose_occupation(frame.omega0, 300.0),
            omega_plus=frame.omega_plus,
            omega_minus=frame.omega_minus,
            phi0=frame.phi0,
        )
        superposition = OneExcitationState(
            rho=np.array(
                [[0, 0, 0], [0, 0.5, 0.5], [0, 0.5, 0.5]], dtype=complex
            ),
            basis="exciton",
        )
        initial = [
            from_site_basis(OneExcitationState.pure(1, "site"), p.phi0),
            OneExcitationState.pure(1),
            superposition,
        ]
        checkpoints = (100.0, 500.0, 2000.0)
        t0 = time.perf_counter()
        worst = 0.0
        for s0 in initial:
            current, reached = s0, 0.0
            for t in checkpoints:
                current = numeric_evolve(current, t - reached, 0.01, p)
                reached = t
                ref = analytic_evolve(s0, t, p)
                worst = max(worst, supnorm(current.rho, ref.rho))
        elapsed = time.perf_counter() - t0
        assert worst <= 1e-8
        assert elapsed < 10.0


def draw_state(rng):
    while True:
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = a @ a.conj().T
        rho /= rho.trace().real
        if rho[0, 0].real <= 0.5:
            return OneExcitationState(rho=rho, basis="exciton")


def draw_excited_state(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    block = a @ a.conj().T
    block /= block.trace().real
    rho = np.zeros((3, 3), dtype=complex)
    rho[1:, 1:] = block
    return OneExcitationState(rho=rho, basis="exciton")


def draw_params(rng):
    temperature = rng.uniform(77.0, 300.0)
    omega0 = rng.uniform(0.5, 3.0) * thermal_energy(temperature)
    mean = rng.uniform(-200.0, 200.0)
    return (
        EvolutionParams(
            gamma=10.0 ** rng.uniform(-4.0, -2.0),
            nbar0=bose_occupation(omega0, temperature),
            omega_plus=mean + 0.5 * omega0,
            omega_minus=mean - 0.5 * omega0,
            phi0=rng.uniform(-0.5 * math.pi, 0.5 * math.pi),
        ),
        temperature,
        omega0,
    )


def test_criterion_7_evolution_invariants(capsys):
    with criterion(
        capsys, 7, "trace/Hermiticity/positivity/semigroup/balance over 100 draws"
    ):
        rng = np.random.default_rng(20260819)
        for draw in range(100):
            p, temperature, omega0 = draw_params(rng)
            s = draw_state(rng)
            t1, t2 = rng.uniform(5.0, 30.0, size=2)

            evolved = analytic_evolve(s, t1, p)
            r = evolved.rho
            assert abs(r.trace() - 1.0) <= 1e-12
            assert supnorm(r, r.conj().T) <= 1e-12
            assert float(np.linalg.eigvalsh(r).min()) >= -1e-10

            split = analytic_evolve(evolved, t2, p)
            joined = analytic_evolve(s, t1 + t2, p)
            assert supnorm(split.rho, joined.rho) <= 1e-12

            relaxed = analytic_evolve(s, 20.0 / p.gamma, p)
            boltzmann = math.exp(-omega0 / thermal_energy(temperature))
            assert relaxed.rho11 / relaxed.rho22 == pytest.approx(
                boltzmann, rel=1e-6
            )

            settled = to_site_basis(
                analytic_evolve(draw_excited_state(rng), 40.0 / p.gamma, p),
                p.phi0,
            )
            target = math.sin(p.phi0) / (2.0 * (1.0 + 2.0 * p.nbar0))
            assert settled.rho12.real == pytest.approx(target, abs=1e-6)
            assert abs(settled.rho12.imag) <= 1e-6

            if draw % 10 == 0:
                stepped = numeric_evolve(s, 50.0, 0.01, p)
                rn = stepped.rho
                assert abs(rn.trace() - 1.0) <= 1e-12
                assert supnorm(rn, rn.conj().T) <= 1e-12
                assert float(np.linalg.eigvalsh(rn).min()) >= -1e-10


def test_criterion_8_rotation_identities(capsys):
    with criterion(
        capsys, 8, "rotation identities ≤ 1e-12 for 100 angles; frame diagonalizes"
    ):
        rng = np.random.default_rng(4253)
        for phi in rng.uniform(-2.0 * math.pi, 2.0 * math.pi, size=100):
            residuals = su2_identity_check(float(phi))
            assert max(residuals.values()) <= 1e-12

        dimers = [FMO]
        for _ in range(20):
            w1, w2 = np.sort(rng.uniform(-300.0, 300.0, size=2))[::-1]
            dimers.append(
                DimerParams(
                    omega1=float(w1),
                    omega2=float(w2 - 1.0),
                    j12=float(rng.uniform(1.0, 200.0) * rng.choice([-1.0, 1.0])),
                    lambda1=float(rng.uniform(0.0, 100.0)),
                    eta_abs=float(rng.uniform(0.0, 3.0)),
                    theta=float(rng.uniform(-math.pi, math.pi)),
                )
            )
        for d in dimers:
            frame = exciton_frame(d)
            residuals = su2_identity_check(
                frame.phi0,
                omega1p=frame.omega1p,
                omega2p=frame.omega2p,
                j12=d.j12,
            )
            scale = max(abs(frame.omega_plus), abs(frame.omega_minus))
            assert residuals["hamiltonian_offdiag"] <= 1e-12 * scale
            assert residuals["hamiltonian_diag"] <= 1e-12 * scale
