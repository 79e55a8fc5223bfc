"""One-excitation dynamics of the dissipative exciton pair.

The density matrix lives on the three states {|e0>, |e1>, |e2>}: the
vacuum and the upper/lower excitons.  The generator splits into a
commutator with H = diag(0, omega_plus, omega_minus) (angular units)
and a dissipator with jump operators L+ = |e1><e2| (phonon absorption,
rate gamma*nbar0) and L- = |e2><e1| (emission, rate gamma*(nbar0+1)).
The vacuum row and column are untouched by the dissipator: the vacuum
population is carried along only so the generator stays a single
trace-preserving linear map.

Closed-form solutions, with G = gamma*(1 + 2*nbar0) and P = 1 - rho00:

    rho00(t) = rho00(0)
    rho01(t) = rho01(0) exp(-gamma(1+nbar0) t/2) exp(+i omega_plus t)
    rho02(t) = rho02(0) exp(-gamma nbar0 t/2)    exp(+i omega_minus t)
    rho11(t) = rho11(0) exp(-G t) + nbar0 P/(1+2 nbar0) (1 - exp(-G t))
    rho22(t) = 1 - rho00 - rho11(t)
    rho12(t) = rho12(0) exp(-G t/2) exp(-i omega0 t)

The vacuum-coherence phases rotate at the exciton frequencies
omega_plus and omega_minus (the natural reading on this subspace; bare
site frequencies never appear in the diagonal frame).  The numerical
propagator integrates the same generator with a classical fixed-step
fourth-order scheme and shares no code with the closed forms, so the
two paths cross-validate each other.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .excitons import DimerParams, exciton_frame
from .rates import BathSpec, attenuation_factor, bose_occupation, decay_constant, renormalized_frequencies
from .units import wavenumber_to_angular

__all__ = [
    "StepSizeError",
    "OneExcitationState",
    "EvolutionParams",
    "analytic_evolve",
    "numeric_evolve",
    "to_site_basis",
    "from_site_basis",
    "lindblad_generator",
    "write_trajectory_csv",
    "TRAJECTORY_CSV_HEADER",
]

BASES = ("exciton", "site")

TRAJECTORY_CSV_HEADER = (
    "t_fs",
    "rho00",
    "rho11",
    "rho22",
    "re_rho01",
    "im_rho01",
    "re_rho02",
    "im_rho02",
    "re_rho12",
    "im_rho12",
)


class StepSizeError(ValueError):
    """Integration step too coarse for the fastest system timescale."""


@dataclass(frozen=True, eq=False)
class OneExcitationState:
    """Density matrix on {|e0>,|e1>,|e2>} (exciton) or {|0>,|1>,|2>} (site).

    Index 0 is the shared vacuum; indices 1, 2 are the two excitons or
    the two sites depending on the basis tag.  Validated on
    construction: Hermitian to 1e-12, unit trace to 1e-12, smallest
    eigenvalue >= -1e-10.
    """

    rho: np.ndarray
    basis: str

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {self.basis!r}")
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (3, 3):
            raise ValueError(f"rho must be 3x3, got shape {rho.shape}")
        if not np.all(np.isfinite(rho.view(float))):
            raise ValueError("rho must be finite")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("rho must be Hermitian to 1e-12")
        trace = rho.trace()
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"rho must have unit trace to 1e-12, got {trace}")
        eigmin = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
        if eigmin < -1e-10:
            raise ValueError(f"rho must be positive semidefinite, eigmin={eigmin}")
        rho = rho.copy()
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def pure(cls, index: int, basis: str = "exciton") -> "OneExcitationState":
        """Pure state on one basis vector: 0 vacuum, 1 and 2 excited."""
        if index not in (0, 1, 2):
            raise ValueError(f"index must be 0, 1 or 2, got {index}")
        rho = np.zeros((3, 3), dtype=complex)
        rho[index, index] = 1.0
        return cls(rho=rho, basis=basis)

    @classmethod
    def equilibrium(cls, nbar0: float, rho00: float = 0.0) -> "OneExcitationState":
        """Fixed point of the dissipative dynamics in the exciton basis.

        diag(rho00, nbar0*s, (nbar0+1)*s) with s = (1-rho00)/(1+2*nbar0).
        """
        if nbar0 < 0.0:
            raise ValueError(f"nbar0 must be >= 0, got {nbar0}")
        if not 0.0 <= rho00 <= 1.0:
            raise ValueError(f"rho00 must lie in [0, 1], got {rho00}")
        s = (1.0 - rho00) / (1.0 + 2.0 * nbar0)
        rho = np.diag([rho00, nbar0 * s, (nbar0 + 1.0) * s]).astype(complex)
        return cls(rho=rho, basis="exciton")

    # named components (upper triangle; conjugates are implied)
    @property
    def rho00(self) -> float:
        return float(self.rho[0, 0].real)

    @property
    def rho11(self) -> float:
        return float(self.rho[1, 1].real)

    @property
    def rho22(self) -> float:
        return float(self.rho[2, 2].real)

    @property
    def rho01(self) -> complex:
        return complex(self.rho[0, 1])

    @property
    def rho02(self) -> complex:
        return complex(self.rho[0, 2])

    @property
    def rho12(self) -> complex:
        return complex(self.rho[1, 2])


@dataclass(frozen=True)
class EvolutionParams:
    """Parameters of the exciton-frame generator.

    gamma in fs^-1, nbar0 dimensionless, omega_plus/omega_minus in
    cm^-1 (converted to angular frequency only inside phase factors),
    phi0 in radians for site-basis conversion of the results.
    """

    gamma: float
    nbar0: float
    omega_plus: float
    omega_minus: float
    phi0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("gamma", "nbar0", "omega_plus", "omega_minus", "phi0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0 fs^-1, got {self.gamma}")
        if self.nbar0 < 0.0:
            raise ValueError(f"nbar0 must be >= 0, got {self.nbar0}")

    @property
    def omega0(self) -> float:
        """Exciton splitting omega_plus - omega_minus in cm^-1."""
        return self.omega_plus - self.omega_minus

    @classmethod
    def for_dimer(
        cls, p: DimerParams, bath: BathSpec, renormalize: bool = False
    ) -> "EvolutionParams":
        """Assemble evolution parameters from dimer and bath inputs.

        renormalize=True applies the discrete-mode frequency shifts to
        omega_plus/omega_minus; they are off by default (they do not
        affect populations, only unitary phases).
        """
        frame = exciton_frame(p)
        plus, minus = frame.omega_plus, frame.omega_minus
        if renormalize and bath.modes:
            plus, minus = renormalized_frequencies(plus, minus, bath.modes, bath.temperature)
        gamma = decay_constant(attenuation_factor(p), bath.gamma_d)
        nbar0 = bose_occupation(frame.omega0, bath.temperature)
        return cls(
            gamma=gamma,
            nbar0=nbar0,
            omega_plus=plus,
            omega_minus=minus,
            phi0=frame.phi0,
        )


def analytic_evolve(
    state: OneExcitationState, t: float, p: EvolutionParams
) -> OneExcitationState:
    """Propagate an exciton-basis state by the closed-form solutions."""
    if state.basis != "exciton":
        raise ValueError("analytic_evolve requires an exciton-basis state")
    if t < 0.0 or not math.isfinite(t):
        raise ValueError(f"t must be >= 0 fs, got {t}")

    g_pop = p.gamma * (1.0 + 2.0 * p.nbar0)
    wp = wavenumber_to_angular(p.omega_plus)
    wm = wavenumber_to_angular(p.omega_minus)

    r = state.rho
    rho00 = r[0, 0].real
    decay = math.exp(-g_pop * t)
    eq11 = p.nbar0 * (1.0 - rho00) / (1.0 + 2.0 * p.nbar0)
    rho11 = r[1, 1].real * decay + eq11 * (1.0 - decay)
    rho22 = 1.0 - rho00 - rho11
    rho01 = r[0, 1] * math.exp(-0.5 * p.gamma * (1.0 + p.nbar0) * t) * cmath.exp(1j * wp * t)
    rho02 = r[0, 2] * math.exp(-0.5 * p.gamma * p.nbar0 * t) * cmath.exp(1j * wm * t)
    rho12 = r[1, 2] * math.exp(-0.5 * g_pop * t) * cmath.exp(-1j * (wp - wm) * t)

    out = np.array(
        [
            [rho00, rho01, rho02],
            [rho01.conjugate(), rho11, rho12],
            [rho02.conjugate(), rho12.conjugate(), rho22],
        ],
        dtype=complex,
    )
    return OneExcitationState(rho=out, basis="exciton")


def _embedding(phi0: float) -> np.ndarray:
    """3x3 orthogonal map T with rho_site = T rho_exciton T^T."""
    c, s = math.cos(0.5 * phi0), math.sin(0.5 * phi0)
    return np.array(
        [[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]], dtype=complex
    )


def to_site_basis(state: OneExcitationState, phi0: float) -> OneExcitationState:
    """Rotate an exciton-basis state to the site basis.

    Exact unitary conjugation, so the spectrum is preserved; for states
    with no vacuum weight the components reduce to the familiar
    half-angle combinations, e.g. rho11_site = 1/2 +
    (rho11_exc - 1/2) cos(phi0) + Re(rho12_exc) sin(phi0).
    """
    if state.basis != "exciton":
        raise ValueError("to_site_basis requires an exciton-basis state")
    t = _embedding(phi0)
    return OneExcitationState(rho=t @ state.rho @ t.T, basis="site")


def from_site_basis(state: OneExcitationState, phi0: float) -> OneExcitationState:
    """Inverse of :func:`to_site_basis`."""
    if state.basis != "site":
        raise ValueError("from_site_basis requires a site-basis state")
    t = _embedding(phi0)
    return OneExcitationState(rho=t.T @ state.rho @ t, basis="exciton")


def lindblad_generator(p: EvolutionParams):
    """Action rho -> d(rho)/dt of the exciton-frame generator.

    Returns a function mapping a 3x3 complex array to the time
    derivative: commutator with diag(0, omega_plus, omega_minus) in
    angular units plus the two-jump dissipator.  Trace-free by
    construction; the vacuum block is touched only through coherences.
    """
    h = np.diag(
        [0.0, wavenumber_to_angular(p.omega_plus), wavenumber_to_angular(p.omega_minus)]
    ).astype(complex)
    l_up = np.zeros((3, 3), dtype=complex)
    l_up[1, 2] = 1.0  # |e1><e2|: absorption, e2 -> e1
    l_dn = l_up.conj().T  # |e2><e1|: emission, e1 -> e2
    rate_up = p.gamma * p.nbar0
    rate_dn = p.gamma * (p.nbar0 + 1.0)
    n_up = l_dn @ l_up  # |e2><e2|
    n_dn = l_up @ l_dn  # |e1><e1|

    def act(rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        out = -1j * (h @ rho - rho @ h)
        out += rate_up * (l_up @ rho @ l_dn - 0.5 * (n_up @ rho + rho @ n_up))
        out += rate_dn * (l_dn @ rho @ l_up - 0.5 * (n_dn @ rho + rho @ n_dn))
        return out

    return act


def _generator_matrix(p: EvolutionParams) -> np.ndarray:
    """9x9 matrix of the generator acting on row-major flattened rho."""
    act = lindblad_generator(p)
    m = np.zeros((9, 9), dtype=complex)
    basis = np.zeros(9, dtype=complex)
    for k in range(9):
        basis[:] = 0.0
        basis[k] = 1.0
        m[:, k] = act(basis.reshape(3, 3)).reshape(9)
    return m


# row-major index permutation realizing the matrix transpose on a flat vector
_TRANSPOSE_PERM = np.array([0, 3, 6, 1, 4, 7, 2, 5, 8])


def numeric_evolve(
    state: OneExcitationState, t: float, dt: float, p: EvolutionParams
) -> OneExcitationState:
    """Propagate by classical fixed-step 4th-order integration.

    Serves as an independent cross-check of :func:`analytic_evolve`;
    the step must resolve the fastest timescale, dt <= 0.1 * min over
    the relaxation time and the unitary phase periods.  The state is
    re-Hermitized every step to suppress round-off drift; positivity is
    checked on the final state, not enforced along the way.
    """
    if state.basis != "exciton":
        raise ValueError("numeric_evolve requires an exciton-basis state")
    if t < 0.0 or not math.isfinite(t):
        raise ValueError(f"t must be >= 0 fs, got {t}")
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0 fs, got {dt}")

    rates = [p.gamma * (1.0 + 2.0 * p.nbar0)]
    rates.append(abs(wavenumber_to_angular(p.omega_plus)))
    rates.append(abs(wavenumber_to_angular(p.omega_minus)))
    fastest = max(rates)
    if fastest > 0.0 and dt > 0.1 / fastest:
        raise StepSizeError(
            f"dt = {dt} fs exceeds 0.1/max(rate) = {0.1 / fastest:.6g} fs; "
            f"the fastest timescale would be under-resolved"
        )

    if t == 0.0:
        return OneExcitationState(rho=state.rho, basis="exciton")

    n_steps = max(1, math.ceil(t / dt - 1e-9))
    h = t / n_steps
    hm = h * _generator_matrix(p)
    eye = np.eye(9, dtype=complex)
    # increment matrix of the classical 4-stage scheme for a linear
    # autonomous system: hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24, exactly
    # the k1..k4 combination collapsed onto rho' = M rho.  Applied as
    # y += D y rather than y = (I + D) y: keeping the identity out of
    # the matvec keeps the per-step round-off unbiased, so conserved
    # quantities only random-walk at machine precision
    incr = hm @ (eye + hm @ (eye / 2.0 + hm @ (eye / 6.0 + hm / 24.0)))

    y = state.rho.reshape(9).astype(complex)
    for _ in range(n_steps):
        y = y + incr @ y
        y = 0.5 * (y + y[_TRANSPOSE_PERM].conj())
    return OneExcitationState(rho=y.reshape(3, 3), basis="exciton")


def write_trajectory_csv(
    fh: IO[str],
    times: Sequence[float],
    states: Sequence[OneExcitationState],
    extra_header: Sequence[str] = (),
    extra_rows: Sequence[Sequence[float]] | None = None,
) -> None:
    """Emit a time series of states as CSV.

    Columns: t_fs, the three populations, then Re/Im of the three
    independent coherences (upper triangle), optionally followed by
    extra columns supplied by the caller.  Values at 9 significant
    digits, LF line endings.
    """
    if len(times) != len(states):
        raise ValueError("times and states must have equal length")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(list(TRAJECTORY_CSV_HEADER) + list(extra_header))
    for i, (t, st) in enumerate(zip(times, states)):
        row = [
            t,
            st.rho00,
            st.rho11,
            st.rho22,
            st.rho01.real,
            st.rho01.imag,
            st.rho02.real,
            st.rho02.imag,
            st.rho12.real,
            st.rho12.imag,
        ]
        if extra_rows is not None:
            row.extend(extra_rows[i])
        writer.writerow([f"{v + 0.0:.9g}" for v in row])
