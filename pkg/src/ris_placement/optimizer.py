"""Capacity optimization: water-filling, per-element phase updates, and the
multi-start alternating driver.

The joint problem, maximizing log2 det(I + H Q H^H / sigma^2) over the
transmit covariance Q (trace <= P, PSD) and the panel's unit-magnitude
transmission coefficients, is solved by block coordinate ascent:

* given the phases, the optimal covariance follows from the SVD of the
  effective channel and water-filling over its streams;
* given the covariance and all other phases, each coefficient has a closed
  form: with the covariance whitened into the transmit-side link, the
  objective as a function of one coefficient beta is
  log2(|1 + beta*psi|^2 - const), maximized by beta = exp(-1j*arg(psi)).

Both half-steps can only increase the objective, so the driver's recorded
trace is non-decreasing. Multi-start: draw L random phase profiles, keep the
best after a covariance solve, then alternate until the relative objective
increase falls below the threshold.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "WaterfillResult",
    "PhaseStepContext",
    "AltOptConfig",
    "AltOptResult",
    "waterfill",
    "capacity_given_covariance",
    "phase_step_context",
    "optimize_single_phase",
    "sweep_all_phases",
    "alternating_optimize",
]

# Singular values below RANK_CUTOFF times the largest are treated as zero.
RANK_CUTOFF = 1e-12


@dataclass(frozen=True)
class WaterfillResult:
    """Water-filling solution for one channel matrix.

    ``singular_values`` are the retained (descending) channel singular
    values, ``powers`` the per-stream allocations in watts (zeros included),
    ``water_level`` the common level in watts that active streams fill to,
    ``capacity`` in bits/s/Hz, ``covariance`` the (N_t, N_t) optimal transmit
    covariance, ``rank`` the number of retained streams and ``dof`` the
    number of streams with nonzero power.
    """

    singular_values: np.ndarray
    powers: np.ndarray
    water_level: float
    capacity: float
    covariance: np.ndarray
    rank: int
    dof: int


@dataclass
class PhaseStepContext:
    """Working state shared by the per-element phase updates of one pass.

    ``ris_to_rx`` holds the receive-side columns, ``tx_whitened`` the
    covariance-whitened transmit-side rows, ``beta`` the current profile and
    ``total`` the running cascade ris_to_rx @ diag(beta) @ tx_whitened, kept
    incrementally as elements are updated.
    """

    ris_to_rx: np.ndarray    # (N_r, W)
    tx_whitened: np.ndarray  # (W, N_t); row w is the whitened tx-side row of element w
    beta: np.ndarray         # (W,)
    total: np.ndarray        # (N_r, N_t)


@dataclass(frozen=True)
class AltOptConfig:
    """Settings of the alternating-optimization driver.

    ``starts`` random initializations are drawn, ``threshold`` is the
    relative objective increase below which iteration stops, and
    ``max_iterations`` caps the outer loop as a safety net.
    """

    starts: int = 100
    threshold: float = 1e-5
    max_iterations: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError(f"starts must be >= 1, got {self.starts}")
        if self.threshold <= 0:
            raise ValueError(f"threshold must be > 0, got {self.threshold}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class AltOptResult:
    """Outcome of one alternating-optimization run.

    ``trace`` records the objective after every half-step (phase pass,
    covariance solve), starting with the best initial profile's capacity;
    it is non-decreasing. ``converged`` is "converged" when the relative
    increase fell below the threshold and "cap" when the iteration limit
    was reached first.
    """

    beta: np.ndarray
    waterfill: WaterfillResult
    trace: np.ndarray
    converged: str
    iterations: int
    best_start: int


def waterfill(channel: np.ndarray, total_power: float, noise_power: float) -> WaterfillResult:
    """Capacity-optimal power allocation over the channel's singular modes.

    Parameters
    ----------
    channel : complex channel matrix (N_r, N_t).
    total_power : transmit power budget in watts (>= 0).
    noise_power : receiver noise power in watts (> 0).

    The allocation is exact: streams are sorted by singular value and the
    unique active prefix whose closed-form water level keeps all its powers
    positive is selected (no bisection). The returned covariance is
    V diag(powers) V^H over the retained right singular vectors.
    """
    if total_power < 0:
        raise ValueError(f"total_power must be >= 0, got {total_power}")
    if noise_power <= 0:
        raise ValueError(f"noise_power must be > 0, got {noise_power}")
    channel = np.asarray(channel, dtype=complex)
    n_tx = channel.shape[1]

    if not np.any(channel):
        return WaterfillResult(
            singular_values=np.empty(0),
            powers=np.empty(0),
            water_level=0.0,
            capacity=0.0,
            covariance=np.zeros((n_tx, n_tx), dtype=complex),
            rank=0,
            dof=0,
        )

    _, sigma, vh = np.linalg.svd(channel, full_matrices=False)
    keep = sigma >= RANK_CUTOFF * sigma[0]
    sigma = sigma[keep]
    basis = vh[keep].conj().T  # (N_t, rank)
    rank = sigma.size
    noise_over_gain = noise_power / sigma**2  # ascending, since sigma is descending

    powers = np.zeros(rank)
    if total_power == 0:
        level = noise_over_gain[0]
    else:
        for active in range(rank, 0, -1):
            level = (total_power + noise_over_gain[:active].sum()) / active
            if level > noise_over_gain[active - 1]:
                break
        powers[:active] = level - noise_over_gain[:active]

    covariance = (basis * powers) @ basis.conj().T
    capacity = float(np.sum(np.log2(1.0 + sigma**2 * powers / noise_power)))
    return WaterfillResult(
        singular_values=sigma,
        powers=powers,
        water_level=float(level),
        capacity=capacity,
        covariance=covariance,
        rank=rank,
        dof=int(np.count_nonzero(powers > 0)),
    )


def capacity_given_covariance(channel: np.ndarray, covariance: np.ndarray,
                              noise_power: float) -> float:
    """log2 det(I + H Q H^H / noise_power) in bits/s/Hz.

    ``covariance`` must be Hermitian PSD; the determinant is evaluated via a
    Cholesky factorization of the (Hermitian positive definite) argument.
    """
    if noise_power <= 0:
        raise ValueError(f"noise_power must be > 0, got {noise_power}")
    covariance = np.asarray(covariance, dtype=complex)
    herm = 0.5 * (covariance + covariance.conj().T)
    eigenvalues = np.linalg.eigvalsh(herm)
    trace = float(np.trace(herm).real)
    if eigenvalues.min() < -1e-9 * trace:
        raise ValueError(
            f"covariance is not PSD: min eigenvalue {eigenvalues.min():.3e} vs trace {trace:.3e}"
        )
    channel = np.asarray(channel, dtype=complex)
    gram = np.eye(channel.shape[0], dtype=complex) + channel @ herm @ channel.conj().T / noise_power
    gram = 0.5 * (gram + gram.conj().T)
    factor = np.linalg.cholesky(gram)
    return float(2.0 * np.sum(np.log2(np.diagonal(factor).real)))


def _whiten_tx(tx_to_ris: np.ndarray, covariance: np.ndarray) -> np.ndarray:
    """Fold the covariance's square root into the transmit-side link."""
    herm = 0.5 * (covariance + covariance.conj().T)
    eigenvalues, vectors = np.linalg.eigh(herm)
    floor = 1e-14 * max(float(np.trace(herm).real), 0.0)
    eigenvalues = np.where(eigenvalues < floor, 0.0, eigenvalues)
    return (tx_to_ris @ vectors) * np.sqrt(eigenvalues)


def phase_step_context(ris_to_rx: np.ndarray, tx_to_ris: np.ndarray,
                       covariance: np.ndarray, beta: np.ndarray) -> PhaseStepContext:
    """Assemble the working state for a pass of per-element phase updates."""
    beta = np.asarray(beta, dtype=complex).copy()
    tx_whitened = _whiten_tx(np.asarray(tx_to_ris, complex), covariance)
    total = (ris_to_rx * beta) @ tx_whitened
    return PhaseStepContext(ris_to_rx, tx_whitened, beta, total)


def optimize_single_phase(ctx: PhaseStepContext, w: int, noise_power: float) -> complex:
    """Best unit-magnitude coefficient for element ``w``, all else fixed.

    Let M be the cascade without element w, r its receive column and t' its
    whitened transmit row. The objective is log2 det of
    I + (M + beta*r*t'^H)(...)^H / noise_power, whose dependence on beta
    reduces to |1 + beta*psi|^2 with
    psi = t'^H M^H X^{-1} r / noise_power and
    X = I + (M M^H + |t'|^2 r r^H) / noise_power. The maximizer is
    exp(-1j*arg(psi)); when psi vanishes the objective is flat and 1 is
    returned. Since the coupling matrix r t'^H M^H / noise_power is rank
    one, psi equals its lone nonzero generalized eigenvalue and is computed
    with a single linear solve.
    """
    r = ctx.ris_to_rx[:, w]
    t_row = ctx.tx_whitened[w]
    partial = ctx.total - ctx.beta[w] * np.outer(r, t_row)
    n_rx = r.size
    x = np.eye(n_rx, dtype=complex) + (
        partial @ partial.conj().T
        + np.real(np.vdot(t_row, t_row)) * np.outer(r, r.conj())
    ) / noise_power
    v = partial @ t_row.conj()
    z = np.linalg.solve(x, r)
    psi = np.vdot(v, z) / noise_power
    eps = 1e-15 * (1.0 + np.linalg.norm(v) * np.linalg.norm(z) / noise_power)
    if abs(psi) <= eps:
        return 1.0 + 0.0j
    return complex(np.exp(-1j * np.angle(psi)))


def sweep_all_phases(ris_to_rx: np.ndarray, tx_to_ris: np.ndarray,
                     covariance: np.ndarray, beta: np.ndarray,
                     noise_power: float) -> np.ndarray:
    """One full pass of per-element phase updates, in ascending element order.

    The cascade is maintained incrementally (subtract the old rank-one term,
    add the new one). Returns the updated profile; the objective is
    non-decreasing across the pass.
    """
    ctx = phase_step_context(ris_to_rx, tx_to_ris, covariance, beta)
    for w in range(ctx.beta.size):
        new = optimize_single_phase(ctx, w, noise_power)
        ctx.total += (new - ctx.beta[w]) * np.outer(ctx.ris_to_rx[:, w], ctx.tx_whitened[w])
        ctx.beta[w] = new
    return ctx.beta


def alternating_optimize(tx_to_ris: np.ndarray, ris_to_rx: np.ndarray,
                         total_power: float, noise_power: float,
                         config: AltOptConfig) -> AltOptResult:
    """Jointly optimize the phase profile and transmit covariance.

    Draws ``config.starts`` random profiles (phases uniform on [0, 2*pi),
    from a seeded PCG64 generator so runs are reproducible), keeps the one
    with the highest water-filling capacity (ties: lowest index), then
    alternates full phase passes with covariance solves until the relative
    capacity increase drops below ``config.threshold`` or the iteration cap
    is reached (flagged "cap" in the result).
    """
    tx_to_ris = np.asarray(tx_to_ris, dtype=complex)
    ris_to_rx = np.asarray(ris_to_rx, dtype=complex)
    n_elements = tx_to_ris.shape[0]

    rng = np.random.default_rng(config.seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(config.starts, n_elements))
    profiles = np.exp(1j * phases)
    start_capacities = np.array([
        waterfill((ris_to_rx * profiles[i]) @ tx_to_ris, total_power, noise_power).capacity
        for i in range(config.starts)
    ])
    best_start = int(np.argmax(start_capacities))

    beta = profiles[best_start]
    solution = waterfill((ris_to_rx * beta) @ tx_to_ris, total_power, noise_power)
    trace = [solution.capacity]

    converged = "cap"
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        previous = solution.capacity
        beta = sweep_all_phases(ris_to_rx, tx_to_ris, solution.covariance, beta, noise_power)
        effective = (ris_to_rx * beta) @ tx_to_ris
        trace.append(capacity_given_covariance(effective, solution.covariance, noise_power))
        solution = waterfill(effective, total_power, noise_power)
        trace.append(solution.capacity)
        gain = (solution.capacity - previous) / max(previous, math.ulp(0.0))
        if gain < config.threshold:
            converged = "converged"
            break

    return AltOptResult(
        beta=beta,
        waterfill=solution,
        trace=np.array(trace),
        converged=converged,
        iterations=iterations,
        best_start=best_start,
    )
