"""Time evolution in the truncated winding basis, plus density and dipole
analysis of superposition states.

Evolution runs in the interaction picture: the state is expanded on the ring
eigenfunctions including their energy phases, so the equations of motion
contain only the coupling beats (differences of drive and transition
frequencies), never the bare optical carrier.  ``evolve`` assembles the
coupling term list once and hands the stepping to the compiled kernel in
``_kernels``.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .beam import BeamDrive, azimuthal_component
from .constants import CONSTANTS, Constants
from .coupling import matrix_element_terms
from .errors import NotTwoLevel, StepSizeUnderflow
from .ring import DEFAULT_N_MAX, RingParams, level_angular_frequency

_SUPPORT_TOL = 1e-12
TOL_RANGE = (1e-13, 1e-6)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes c_n over windings n in [-n_max, n_max].

    The coefficient vector is unit-normalized (the macroscopic pair count
    enters only through density/dipole operations).  ``norm_tol`` is the
    accepted deviation of sum |c_n|^2 from 1; evolved states carry the norm
    drift allowance of the integration that produced them.
    """

    n_max: int
    amplitudes: np.ndarray
    reference_time: float = 0.0
    norm_tol: float = 1e-9

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 * self.n_max + 1,):
            raise ValueError(
                f"amplitudes must have shape ({2 * self.n_max + 1},), got {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > self.norm_tol:
            raise ValueError(f"state not normalized: sum |c_n|^2 = {norm}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_levels(cls, levels: Dict[int, complex], n_max: int = DEFAULT_N_MAX,
                    reference_time: float = 0.0) -> "StateVector":
        """Build a state from a {winding: amplitude} mapping (normalized)."""
        amps = np.zeros(2 * n_max + 1, dtype=complex)
        for n, c in levels.items():
            if abs(n) > n_max:
                raise ValueError(f"level {n} outside basis |n| <= {n_max}")
            amps[n + n_max] = c
        norm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
        if norm == 0.0:
            raise ValueError("at least one amplitude must be nonzero")
        return cls(n_max=n_max, amplitudes=amps / norm,
                   reference_time=reference_time)

    def amplitude(self, n: int) -> complex:
        if abs(n) > self.n_max:
            raise ValueError(f"level {n} outside basis |n| <= {self.n_max}")
        return complex(self.amplitudes[n + self.n_max])

    def population(self, n: int) -> float:
        return abs(self.amplitude(n)) ** 2

    @property
    def levels(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled evolution: times, states, per-level populations, norms."""

    times: np.ndarray
    states: Tuple[StateVector, ...]
    populations: np.ndarray     # shape (n_samples, 2 n_max + 1)
    norms: np.ndarray           # raw sum |c_n|^2 at each sample
    n_steps: int = 0

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("sample times must be strictly increasing")

    def population_of(self, n: int) -> np.ndarray:
        n_max = self.states[0].n_max
        if abs(n) > n_max:
            raise ValueError(f"level {n} outside basis |n| <= {n_max}")
        return self.populations[:, n + n_max]


def _build_term_arrays(drive, params, n_max, constants):
    rows, cols, camps, nus = [], [], [], []
    for m in range(-n_max, n_max + 1):
        for n in range(-n_max, n_max + 1):
            for term in matrix_element_terms(m, n, drive, params,
                                             n_max=n_max, constants=constants):
                rows.append(m + n_max)
                cols.append(n + n_max)
                camps.append(-1j * term.amplitude / constants.hbar)
                nus.append(term.beat)
    return (np.asarray(rows, dtype=np.int64),
            np.asarray(cols, dtype=np.int64),
            np.asarray(camps, dtype=np.complex128),
            np.asarray(nus, dtype=np.float64))


def evolve(initial: StateVector, drive: BeamDrive, params: RingParams,
           t_final: float, tol: float = 1e-9, mode: str = "full",
           sample_times: Optional[Sequence[float]] = None,
           n_samples: int = 201, rwa_cutoff: Optional[float] = None,
           constants: Constants = CONSTANTS) -> Trajectory:
    """Integrate the driven state over a duration ``t_final``.

    Parameters
    ----------
    mode : {"full", "rwa"}
        "full" keeps every coupling term including static level shifts;
        "rwa" keeps only terms whose beat magnitude is below the cutoff
        (drive frequency / 10 unless ``rwa_cutoff`` overrides it).
    tol : float
        Accumulated local-error budget for the whole run; the norm drift
        stays below 10 * tol.
    sample_times : sequence of float, optional
        Absolute times (within the run span) at which to record the state;
        defaults to ``n_samples`` equispaced points.

    Raises
    ------
    StepSizeUnderflow
        If the controller cannot meet the tolerance with a representable
        step (stiff or ill-conditioned input).
    """
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise ValueError(f"tol must lie in [{TOL_RANGE[0]}, {TOL_RANGE[1]}]")
    if t_final <= 0.0:
        raise ValueError("t_final must be positive")
    if mode not in ("full", "rwa"):
        raise ValueError("mode must be 'full' or 'rwa'")

    t0 = initial.reference_time
    if sample_times is None:
        times = t0 + np.linspace(0.0, t_final, n_samples)
    else:
        times = np.asarray(sample_times, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("sample_times must be a non-empty 1-d sequence")
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("sample_times must be strictly increasing")
        if times[0] < t0 or times[-1] > t0 + t_final * (1.0 + 1e-12):
            raise ValueError("sample_times must lie within the run span")

    harmonic = azimuthal_component(drive)
    rows, cols, camps, nus = _build_term_arrays(harmonic, params,
                                                initial.n_max, constants)
    if mode == "rwa":
        cutoff = drive.omega / 10.0 if rwa_cutoff is None else rwa_cutoff
        keep = np.abs(nus) < cutoff
        rows, cols, camps, nus = rows[keep], cols[keep], camps[keep], nus[keep]

    amps0 = np.asarray(initial.amplitudes, dtype=np.complex128)
    out, n_steps, status = _kernels.integrate(
        amps0, float(t0), times, rows, cols, camps, nus, float(tol),
        float(t_final))
    if status == 1:
        raise StepSizeUnderflow(
            f"step size underflow after {n_steps} steps (tol={tol})")
    if status == 2:
        raise StepSizeUnderflow(
            f"step budget exhausted after {n_steps} steps (tol={tol})")

    norm_tol = max(1e-9, 10.0 * tol)
    states = tuple(
        StateVector(n_max=initial.n_max, amplitudes=out[i],
                    reference_time=float(times[i]), norm_tol=norm_tol)
        for i in range(times.size)
    )
    populations = np.abs(out) ** 2
    norms = populations.sum(axis=1)
    return Trajectory(times=times, states=states, populations=populations,
                      norms=norms, n_steps=int(n_steps))


def density_profile(state: StateVector, params: RingParams, phi, t: float,
                    constants: Constants = CONSTANTS):
    """Cooper-pair density per radian of arc at angle ``phi`` and time ``t``.

    N* |sum_n c_n exp(-i(n phi + omega_n t))|^2 / (2 pi); integrates over a
    full turn to the total pair count.
    """
    phi = np.asarray(phi, dtype=float)
    psi = np.zeros(phi.shape, dtype=complex)
    for n in range(-state.n_max, state.n_max + 1):
        c = state.amplitudes[n + state.n_max]
        if c == 0:
            continue
        omega_n = level_angular_frequency(n, params, constants)
        psi += c * np.exp(-1j * (n * phi + omega_n * t))
    dens = params.n_pairs * np.abs(psi) ** 2 / (2.0 * math.pi)
    return float(dens) if dens.ndim == 0 else dens


def dipole_moment(state: StateVector, params: RingParams, t: float,
                  n_points: int = 512,
                  constants: Constants = CONSTANTS) -> np.ndarray:
    """In-plane electric dipole (d_x, d_y) in C m, by quadrature.

    q* r * integral of density(phi) (cos phi, sin phi) dphi over one turn;
    the periodic trapezoidal rule is exact for these band-limited profiles.
    """
    phi = np.arange(n_points) * (2.0 * math.pi / n_points)
    dens = density_profile(state, params, phi, t, constants)
    w = 2.0 * math.pi / n_points
    scale = constants.cooper_charge * params.design.radius * w
    return np.array([scale * float(np.sum(dens * np.cos(phi))),
                     scale * float(np.sum(dens * np.sin(phi)))])


def pattern_rotation_check(state: StateVector, params: RingParams, dt: float,
                           n_points: int = 100, rtol: float = 1e-10,
                           constants: Constants = CONSTANTS) -> float:
    """Angular velocity of the rigid density pattern of a two-level state.

    For support on levels n1 != n2 the density depends on phi and t only
    through (n2 - n1) phi + (omega_{n2} - omega_{n1}) t, so the whole pattern
    rotates rigidly at omega_{n2,n1} / (n2 - n1) (invariant under swapping
    the two levels).  The rigidity is verified pointwise before returning:
    density(phi, t + dt) must match density(phi + v dt, t) at ``n_points``
    angles to ``rtol`` of the pattern scale.

    Raises
    ------
    NotTwoLevel
        If the state is not supported on exactly two levels.
    """
    support = [n for n in range(-state.n_max, state.n_max + 1)
               if abs(state.amplitudes[n + state.n_max]) > _SUPPORT_TOL]
    if len(support) != 2:
        raise NotTwoLevel(
            f"state supported on {len(support)} levels, need exactly 2")
    n1, n2 = support
    omega1 = level_angular_frequency(n1, params, constants)
    omega2 = level_angular_frequency(n2, params, constants)
    velocity = (omega2 - omega1) / (n2 - n1)

    t0 = state.reference_time
    phi = np.arange(n_points) * (2.0 * math.pi / n_points)
    later = density_profile(state, params, phi, t0 + dt, constants)
    shifted = density_profile(state, params, phi + velocity * dt, t0, constants)
    scale = float(np.max(np.abs(later)))
    dev = float(np.max(np.abs(later - shifted)))
    if dev > rtol * max(scale, 1e-300):
        raise RuntimeError(
            f"density pattern is not rigid: deviation {dev:.3e} at scale {scale:.3e}")
    return velocity
