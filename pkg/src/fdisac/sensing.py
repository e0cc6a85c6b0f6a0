"""Target parameter estimators: MUSIC DoA, delay-Doppler quotient, periodogram.

The estimation chain works on the RF-chain-domain snapshots collected over
the P x Q OFDM grid:

  1. sample covariance of the snapshots,
  2. MUSIC pseudo-spectrum over an angle grid for the K directions,
  3. per-target reference signal g = a_rx(theta) a_tx(theta)^H x,
  4. element-wise quotient z(p, q) between the antenna-domain RX signal and g,
  5. 2-D periodogram of z; the peak bin (n*, m*) quantizes delay and Doppler:
     tau = n*/(P*df), f_D = m*/(Q*T_s).
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from scipy.signal import find_peaks

from .arrays import ula_response, ula_response_matrix
from .beamforming import AnalogBeamformer
from .channels import SPEED_OF_LIGHT, Waveform
from .errors import EstimationFailureError

__all__ = [
    "MusicResult",
    "DelayDopplerMap",
    "SensingEstimate",
    "angle_grid",
    "sample_covariance",
    "music_doas",
    "reference_signal",
    "reference_signal_grid",
    "delay_doppler_quotient",
    "delay_doppler_map",
    "periodogram_peak",
    "recover_parameters",
]

# Quotient entries with |g| below this fraction of the grid maximum are skipped.
DIVISION_GUARD_REL = 1e-8


@dataclass(frozen=True)
class MusicResult:
    """MUSIC pseudo-spectrum over the angle grid and the K strongest peaks."""

    spectrum: np.ndarray
    doas_deg: list
    grid_step_deg: float
    grid_deg: np.ndarray


@dataclass(frozen=True)
class DelayDopplerMap:
    """Periodogram magnitude over (n, m) with the Doppler axis in signed order.

    Column j of ``magnitude`` corresponds to m = j - Q//2; the peak indices
    are the row-major argmax (ties resolved toward smaller n, then smaller m).
    """

    magnitude: np.ndarray
    peak_n: int
    peak_m: int


@dataclass(frozen=True)
class SensingEstimate:
    """Recovered parameters for one target."""

    doa_deg: float
    delay_s: float
    doppler_hz: float
    range_m: float
    velocity_mps: float
    bin_n: int
    bin_m: int

    @classmethod
    def from_bins(cls, doa_deg: float, n_star: int, m_star: int, wf: Waveform):
        delay, doppler, rng_m, vel = recover_parameters(n_star, m_star, wf)
        return cls(
            doa_deg=float(doa_deg),
            delay_s=delay,
            doppler_hz=doppler,
            range_m=rng_m,
            velocity_mps=vel,
            bin_n=int(n_star),
            bin_m=int(m_star),
        )


def angle_grid(grid_step_deg: float) -> np.ndarray:
    """Uniform scan grid over [-90, 90] degrees, endpoints included."""
    if grid_step_deg <= 0:
        raise ValueError(f"grid step must be positive, got {grid_step_deg}")
    n = int(round(180.0 / grid_step_deg)) + 1
    return np.linspace(-90.0, 90.0, n)


def sample_covariance(snapshots) -> np.ndarray:
    """(1/n) * sum of y y^H over the snapshot rows. Hermitian PSD by construction."""
    y = np.asarray(snapshots, dtype=complex)
    if y.ndim == 1:
        y = y[None, :]
    if y.ndim != 2 or y.shape[0] < 1:
        raise ValueError("need at least one snapshot of uniform length")
    r = (y.T @ y.conj()) / y.shape[0]
    return (r + r.conj().T) / 2.0


def music_doas(
    r: np.ndarray,
    k: int,
    grid_step_deg: float,
    array_size: int,
    manifold: np.ndarray | None = None,
) -> MusicResult:
    """MUSIC direction estimates from a covariance matrix.

    The noise subspace is spanned by the eigenvectors of the ``array_size - k``
    smallest eigenvalues; the pseudo-spectrum is ||b||^2 / ||E_n^H b||^2 swept
    over the angle grid. ``manifold`` optionally replaces the default ULA
    response with an (array_size x n_grid) matrix of effective steering
    vectors, one column per :func:`angle_grid` point (needed when the
    covariance lives behind an analog combiner). Returns the k largest peaks
    sorted ascending; raises :class:`EstimationFailureError` carrying the
    partial result when fewer than k local maxima exist.
    """
    r = np.asarray(r, dtype=complex)
    if r.shape != (array_size, array_size):
        raise ValueError(f"covariance shape {r.shape} != ({array_size}, {array_size})")
    if k < 1:
        raise ValueError(f"need at least one source, got k={k}")
    if k >= array_size:
        raise ValueError(f"MUSIC requires k < array size, got k={k}, size={array_size}")
    scale = np.abs(r).max()
    if not np.allclose(r, r.conj().T, rtol=1e-8, atol=1e-10 * max(scale, 1e-300)):
        raise ValueError("covariance matrix must be Hermitian")
    eigvals, eigvecs = np.linalg.eigh(r)
    if eigvals[0] < -1e-8 * max(eigvals[-1], 1e-300):
        raise ValueError("covariance matrix must be positive semi-definite")
    noise_basis = eigvecs[:, : array_size - k]

    grid = angle_grid(grid_step_deg)
    if manifold is None:
        manifold = ula_response_matrix(array_size, grid)
    else:
        manifold = np.asarray(manifold, dtype=complex)
        if manifold.shape != (array_size, grid.size):
            raise ValueError(
                f"manifold shape {manifold.shape} != ({array_size}, {grid.size})"
            )
    gain = np.sum(np.abs(manifold) ** 2, axis=0)
    leak = np.sum(np.abs(noise_basis.conj().T @ manifold) ** 2, axis=0)
    floor = max(gain.max(), 1e-300) * 1e-30
    spectrum = gain / np.maximum(leak, floor)

    if spectrum.max() - spectrum.min() <= 1e-9 * spectrum.max():
        # flat to numerical precision: no directional information
        partial = MusicResult(
            spectrum=spectrum, doas_deg=[], grid_step_deg=grid_step_deg, grid_deg=grid
        )
        raise EstimationFailureError("pseudo-spectrum is flat", partial=partial)
    peaks, _ = find_peaks(spectrum)
    if peaks.size < k:
        found = sorted(float(grid[i]) for i in peaks[np.argsort(spectrum[peaks])[::-1]])
        partial = MusicResult(
            spectrum=spectrum, doas_deg=found, grid_step_deg=grid_step_deg, grid_deg=grid
        )
        raise EstimationFailureError(
            f"found {peaks.size} spectrum peaks, needed {k}", partial=partial
        )
    top = peaks[np.argsort(spectrum[peaks])[::-1][:k]]
    doas = sorted(float(grid[i]) for i in top)
    return MusicResult(
        spectrum=spectrum, doas_deg=doas, grid_step_deg=grid_step_deg, grid_deg=grid
    )


def reference_signal(theta_hat_deg: float, x: np.ndarray, m_b: int) -> np.ndarray:
    """Reference echo in the direction theta_hat: a_rx(theta) (a_tx(theta)^H x)."""
    x = np.asarray(x, dtype=complex)
    a_rx = ula_response(m_b, theta_hat_deg)
    a_tx = ula_response(x.shape[0], theta_hat_deg)
    return a_rx * (a_tx.conj() @ x)


def reference_signal_grid(theta_hat_deg: float, x_grid: np.ndarray, m_b: int) -> np.ndarray:
    """Vectorized :func:`reference_signal` over a stack of TX vectors.

    ``x_grid`` has shape (n_b, n_cells); the result has shape (n_cells, m_b).
    """
    x_grid = np.asarray(x_grid, dtype=complex)
    a_rx = ula_response(m_b, theta_hat_deg)
    a_tx = ula_response(x_grid.shape[0], theta_hat_deg)
    return np.outer(a_tx.conj() @ x_grid, a_rx)


def delay_doppler_quotient(
    y_grid: np.ndarray,
    g_grid: np.ndarray,
    w_rf: AnalogBeamformer,
    guard_rel: float = DIVISION_GUARD_REL,
):
    """Antenna-averaged quotient z(p, q) between the RX signal and the reference.

    ``y_grid`` holds RF-chain-domain snapshots, shape (P, Q, m_rf);
    ``g_grid`` holds the antenna-domain reference, shape (P, Q, m_b). The RX
    snapshots are re-expanded to the antenna domain through the block-diagonal
    analog combiner before the element-wise division. Reference entries with
    |g| below ``guard_rel * max|g|`` are excluded from the average; cells where
    every antenna is excluded are set to 0 and flagged.

    Returns ``(z, excluded)`` with z of shape (P, Q) and a boolean mask of the
    flagged cells.
    """
    y = np.asarray(y_grid, dtype=complex)
    g = np.asarray(g_grid, dtype=complex)
    if y.ndim != 3 or g.ndim != 3 or y.shape[:2] != g.shape[:2]:
        raise ValueError(f"grid shapes {y.shape} and {g.shape} are inconsistent")
    if y.shape[2] != w_rf.n_chains or g.shape[2] != w_rf.n_antennas:
        raise ValueError("grid depths do not match the analog combiner dimensions")
    expanded = np.einsum("ij,pqj->pqi", w_rf.assembled, y)
    mag = np.abs(g)
    keep = mag >= guard_rel * max(mag.max(), 1e-300)
    safe_g = np.where(keep, g, 1.0)
    terms = np.where(keep, expanded / safe_g, 0.0)
    counts = keep.sum(axis=2)
    z = terms.sum(axis=2) / np.maximum(counts, 1)
    excluded = counts == 0
    z[excluded] = 0.0
    return z, excluded


def delay_doppler_map(z: np.ndarray) -> DelayDopplerMap:
    """2-D periodogram of the quotient grid.

    A DFT runs over the symbol axis (Doppler) and an inverse DFT over the
    subcarrier axis (delay); the Doppler axis is then shifted to the signed
    index range [-Q/2, Q/2 - 1].
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.size == 0:
        raise ValueError("quotient grid must be a non-empty P x Q matrix")
    p_count = z.shape[0]
    q_count = z.shape[1]
    transform = np.fft.ifft(np.fft.fft(z, axis=1), axis=0) * p_count
    magnitude = np.abs(np.fft.fftshift(transform, axes=1)) ** 2
    flat = int(np.argmax(magnitude))
    peak_n, col = divmod(flat, q_count)
    return DelayDopplerMap(magnitude=magnitude, peak_n=peak_n, peak_m=col - q_count // 2)


def periodogram_peak(z: np.ndarray) -> tuple[int, int]:
    """Argmax bin (n*, m*) of the delay-Doppler periodogram."""
    dd = delay_doppler_map(z)
    return dd.peak_n, dd.peak_m


def recover_parameters(n_star: int, m_star: int, wf: Waveform):
    """Map peak bins to (delay_s, doppler_hz, range_m, velocity_mps)."""
    delay = n_star / (wf.n_subcarriers * wf.subcarrier_spacing_hz)
    doppler = m_star / (wf.n_symbols * wf.symbol_duration_s)
    range_m = SPEED_OF_LIGHT * delay / 2.0
    velocity = SPEED_OF_LIGHT * doppler / (2.0 * wf.carrier_hz)
    return delay, doppler, range_m, velocity
