"""Joint A/D beamformer design for the full-duplex ISAC base station.

The design runs as an ordered sequence of sub-problems:

  1. user-side combiner and uplink precoder from SVDs of the estimated
     downlink/uplink channels,
  2. per-chain codebook search for the TX analog beamformer (radar gain),
  3. per-chain codebook ratio search for the RX analog beamformer (radar gain
     over SI leakage),
  4. canceller construction from the compressed SI estimate,
  5. TX digital precoder: constrained least squares toward the SVD-ideal
     downlink target with a per-RX-chain SI leakage cap. The single-RX-chain
     case has a closed form via Lagrangian duality; the general case is solved
     with a projected-gradient method,
  6. per-column power normalization,
  7. uplink digital combiner: null-space projection away from the radar
     interference subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import Codebook, dft_codebook, ula_response
from .beamforming import AnalogBeamformer, assemble_analog, tx_power
from .cancellers import CancellerPair, build_cancellers
from .errors import (
    DegenerateCombinerError,
    InfeasibleResultError,
    NumericalFailureError,
)

__all__ = [
    "EstimatedChannels",
    "HybridBeamformers",
    "build_estimated_channels",
    "select_tx_analog",
    "select_rx_analog",
    "lagrangian_tx_precoder",
    "numeric_tx_precoder",
    "power_normalize",
    "nsp_rx_combiner",
    "mss_rx_combiner",
    "user_beamformers",
    "run_algorithm1",
]

_RATIO_GUARD = 1e-12  # regularizes the RX ratio search denominator
_RANK_TOL_REL = 1e-10  # singular values below this fraction of the largest are noise


@dataclass(frozen=True)
class EstimatedChannels:
    """Channel knowledge available to the optimizer.

    The radar estimate decomposes as h_rad_hat = h_rad_int_hat + the uplink
    user's steering outer product (the user is the last active target);
    ``h_bb_hat`` is the uncompressed SI channel estimate.
    """

    h_rad_hat: np.ndarray
    h_rad_int_hat: np.ndarray
    h_dl_hat: np.ndarray
    h_ul_hat: np.ndarray
    h_bb_hat: np.ndarray


def build_estimated_channels(
    scatterer_doas_deg,
    other_doas_deg,
    ul_doa_deg: float,
    h_bb_hat: np.ndarray,
    m_b: int,
    n_b: int,
    m_u: int,
    n_u: int,
) -> EstimatedChannels:
    """Reconstruct channel estimates from estimated directions.

    Scatterer directions feed the downlink estimate; scatterers plus the other
    passive targets form the radar interference estimate; the uplink direction
    adds the final radar term and defines the uplink estimate. Gains are not
    estimated, so every term is a unit-gain steering outer product.
    """

    def steer_outer(rx_size, tx_size, angle):
        return np.outer(ula_response(rx_size, angle), ula_response(tx_size, angle).conj())

    h_dl = np.zeros((m_u, n_b), dtype=complex)
    for ang in scatterer_doas_deg:
        h_dl += steer_outer(m_u, n_b, ang)
    h_int = np.zeros((m_b, n_b), dtype=complex)
    for ang in list(scatterer_doas_deg) + list(other_doas_deg):
        h_int += steer_outer(m_b, n_b, ang)
    h_rad = h_int + steer_outer(m_b, n_b, ul_doa_deg)
    h_ul = steer_outer(m_b, n_u, ul_doa_deg)
    return EstimatedChannels(
        h_rad_hat=h_rad,
        h_rad_int_hat=h_int,
        h_dl_hat=h_dl,
        h_ul_hat=h_ul,
        h_bb_hat=np.asarray(h_bb_hat, dtype=complex),
    )


@dataclass(frozen=True)
class HybridBeamformers:
    """Full beamformer solution for one slot."""

    v_b_rf: AnalogBeamformer
    v_b_bb: np.ndarray
    w_b_rf: AnalogBeamformer
    w_b_bb: np.ndarray
    w_u: np.ndarray
    v_u_bb: np.ndarray
    cancellers: CancellerPair

    def validate(self, p_b_watts: float, p_u_watts: float) -> None:
        """Assert the power and normalization invariants."""
        pw = tx_power(self.v_b_rf, self.v_b_bb)
        if pw > p_b_watts + 1e-9:
            raise ValueError(f"TX power {pw} exceeds budget {p_b_watts}")
        ul_pw = float(np.linalg.norm(self.v_u_bb) ** 2)
        if ul_pw > p_u_watts + 1e-12:
            raise ValueError(f"UL power {ul_pw} exceeds budget {p_u_watts}")
        col_norms = np.linalg.norm(self.w_b_bb, axis=0)
        if np.abs(col_norms - 1.0).max() > 1e-9:
            raise ValueError("UL combiner columns must have unit norm")


def _fix_phase(m: np.ndarray) -> np.ndarray:
    """Rotate each column so its first significant entry is real positive."""
    m = np.array(m, dtype=complex, copy=True)
    for c in range(m.shape[1]):
        col = m[:, c]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        idx = int(np.argmax(mags > 1e-12 * top))
        m[:, c] = col * (col[idx].conj() / np.abs(col[idx]))
    return m


def select_tx_analog(h_rad_hat: np.ndarray, cb: Codebook, n_rf: int) -> AnalogBeamformer:
    """Per-chain codebook search maximizing the radar channel gain.

    The Frobenius objective ||H V_rf||^2 decomposes over the block-diagonal
    columns, so each chain's beam is chosen independently as
    argmax_v ||H[:, block_i] v||^2. Ties resolve to the lowest codebook index.
    """
    h = np.asarray(h_rad_hat, dtype=complex)
    n_a = cb.n_elems
    if h.shape[1] != n_rf * n_a:
        raise ValueError(
            f"channel has {h.shape[1]} TX columns, expected {n_rf} chains x {n_a}"
        )
    chosen = []
    indices = []
    for i in range(n_rf):
        block = h[:, i * n_a : (i + 1) * n_a]
        scores = np.linalg.norm(block @ cb.vectors.T, axis=0) ** 2
        best = int(np.argmax(scores))
        indices.append(best)
        chosen.append(cb.vectors[best])
    return assemble_analog(np.array(chosen), codebook_indices=tuple(indices))


def select_rx_analog(
    h_rad_hat: np.ndarray,
    h_bb_hat: np.ndarray,
    v_b_rf: AnalogBeamformer,
    cb: Codebook,
) -> AnalogBeamformer:
    """Per-chain codebook ratio search: radar return over SI leakage.

    Chain j maximizes its own contribution ratio n_j(w) / (d_j(w) + eps) where
    n_j and d_j are the row-block-j terms of ||W^H H_rad V_rf||^2 and
    ||W^H H_si V_rf||^2. Exact for a single RX chain; a tractable
    per-chain decomposition otherwise.
    """
    radar_eff = np.asarray(h_rad_hat, dtype=complex) @ v_b_rf.assembled
    si_eff = np.asarray(h_bb_hat, dtype=complex) @ v_b_rf.assembled
    m_a = cb.n_elems
    if radar_eff.shape[0] % m_a != 0:
        raise ValueError(
            f"channel has {radar_eff.shape[0]} RX rows, not a multiple of {m_a}"
        )
    m_rf = radar_eff.shape[0] // m_a
    chosen = []
    indices = []
    conj_cb = cb.vectors.conj()
    for j in range(m_rf):
        rows = slice(j * m_a, (j + 1) * m_a)
        num = np.linalg.norm(conj_cb @ radar_eff[rows], axis=1) ** 2
        den = np.linalg.norm(conj_cb @ si_eff[rows], axis=1) ** 2
        best = int(np.argmax(num / (den + _RATIO_GUARD)))
        indices.append(best)
        chosen.append(cb.vectors[best])
    return assemble_analog(np.array(chosen), codebook_indices=tuple(indices))


def lagrangian_tx_precoder(
    h_dl_eff: np.ndarray,
    t1: np.ndarray,
    lambda_b_watts: float,
    g_target: np.ndarray,
    ridge: float = 0.0,
) -> np.ndarray:
    """Closed-form TX digital precoder for a single RX RF chain.

    Solves  min ||H V - G||_F^2  s.t.  ||V^H t1||^2 <= lambda_b  via the dual:
    the stationarity condition gives V(z) = (H^H H + z t1 t1^H)^{-1} H^H G and
    the Sherman-Morrison identity reduces the constraint to
    ||V(0)^H t1|| / (1 + z s) = sqrt(lambda_b) with s = t1^H (H^H H)^{-1} t1,
    so the multiplier is

        z* = max(||V_ls^H t1|| / sqrt(lambda_b) - 1, 0) / s,

    where V_ls is the unconstrained least-squares solution. The clamp covers
    the inactive-constraint case (z* = 0, V = V_ls). ``ridge`` stabilizes the
    normal matrix when H^H H is singular.
    """
    h = np.asarray(h_dl_eff, dtype=complex)
    t1 = np.asarray(t1, dtype=complex).reshape(-1)
    g = np.asarray(g_target, dtype=complex)
    if t1.shape[0] != h.shape[1]:
        raise ValueError(f"leakage row length {t1.shape[0]} != {h.shape[1]} TX chains")
    if lambda_b_watts <= 0 and np.linalg.norm(t1) > 0:
        raise ValueError(f"leakage threshold must be positive, got {lambda_b_watts}")
    normal = h.conj().T @ h + ridge * np.eye(h.shape[1])
    rhs = h.conj().T @ g
    try:
        v_ls = np.linalg.solve(normal, rhs)
        if np.linalg.norm(t1) == 0.0 or np.isinf(lambda_b_watts):
            zeta = 0.0
            v = v_ls
        else:
            s_quad = float(np.real(t1.conj() @ np.linalg.solve(normal, t1)))
            active = np.linalg.norm(t1.conj() @ v_ls) / np.sqrt(lambda_b_watts)
            zeta = max(active - 1.0, 0.0) / s_quad
            v = np.linalg.solve(normal + zeta * np.outer(t1, t1.conj()), rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            "normal matrix is singular; pass a positive ridge"
        ) from exc
    if not np.all(np.isfinite(v)):
        raise NumericalFailureError("precoder solve produced non-finite values; increase ridge")
    return v


def _project_leakage(v: np.ndarray, t_rows: np.ndarray, lam: float, max_sweeps: int = 60):
    """Dykstra projection of V onto the intersection of ||V^H t_r||^2 <= lam."""
    n_rows = t_rows.shape[0]
    norms2 = np.linalg.norm(t_rows, axis=1) ** 2
    if n_rows == 1:
        t = t_rows[0]
        if norms2[0] == 0.0:
            return v
        a = t.conj() @ v
        s2 = float(np.linalg.norm(a) ** 2)
        if s2 <= lam:
            return v
        return v + np.outer(t, a) * ((np.sqrt(lam / s2) - 1.0) / norms2[0])
    x = v
    corrections = [np.zeros_like(v) for _ in range(n_rows)]
    for _ in range(max_sweeps):
        for r in range(n_rows):
            y = x + corrections[r]
            t = t_rows[r]
            if norms2[r] == 0.0:
                proj = y
            else:
                a = t.conj() @ y
                s2 = float(np.linalg.norm(a) ** 2)
                if s2 <= lam:
                    proj = y
                else:
                    proj = y + np.outer(t, a) * ((np.sqrt(lam / s2) - 1.0) / norms2[r])
            corrections[r] = y - proj
            x = proj
        vals = np.linalg.norm(t_rows.conj() @ x, axis=1) ** 2
        if vals.max() <= lam * (1.0 + 1e-12):
            break
    return x


def _dual_coordinate_warm_start(
    normal: np.ndarray, rhs: np.ndarray, t_rows: np.ndarray, lam: float
) -> np.ndarray | None:
    """Near-optimal starting point via exact cyclic ascent on the multipliers.

    Fixing all other multipliers, the optimal value for constraint r has the
    same Sherman-Morrison closed form as the single-constraint problem, so a
    few sweeps land on the KKT point. Returns None when the normal matrix is
    singular (the caller falls back to the plain projected start).
    """
    n_rows = t_rows.shape[0]
    zeta = np.zeros(n_rows)

    def min_norm_solve(mat, b):
        # rank-safe: keeps the iterate free of near-null-space junk when the
        # normal matrix is singular (rank-deficient downlink estimates)
        return np.linalg.lstsq(mat, b, rcond=None)[0]

    try:
        for _ in range(300):
            delta = 0.0
            for r in range(n_rows):
                t = t_rows[r]
                if np.linalg.norm(t) == 0.0:
                    continue
                a_r = normal + (t_rows.T * zeta) @ t_rows.conj() - zeta[r] * np.outer(
                    t, t.conj()
                )
                v_r0 = min_norm_solve(a_r, rhs)
                s_r = float(np.real(t.conj() @ min_norm_solve(a_r, t)))
                if s_r <= 0.0:
                    zeta[r] = 0.0
                    continue
                val = float(np.linalg.norm(t.conj() @ v_r0))
                new = max(val / np.sqrt(lam) - 1.0, 0.0) / s_r
                delta = max(delta, abs(new - zeta[r]) / max(new, zeta[r], 1e-30))
                zeta[r] = new
            if delta < 1e-13:
                break
        system = normal + (t_rows.T * zeta) @ t_rows.conj()
        return min_norm_solve(system, rhs)
    except np.linalg.LinAlgError:
        return None


def numeric_tx_precoder(
    h_dl_eff: np.ndarray,
    t_rows,
    lambda_b_watts: float,
    g_target: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 20000,
    return_info: bool = False,
):
    """Projected-gradient solver for the leakage-constrained TX precoder.

    Minimizes ||H V - G||_F^2 subject to ||V^H t_r||^2 <= lambda_b for every
    row r of the post-analog-cancellation SI matrix. The iteration starts from
    the projected least-squares point and alternates a 1/L gradient step with
    a (Dykstra) projection onto the constraint intersection, which keeps every
    iterate feasible and the objective monotonically non-increasing. Stops
    when the prox-gradient residual falls below ``tol`` (relative to
    ||H^H G||). ``lambda_b_watts = inf`` returns the plain least-squares
    solution.

    Raises :class:`InfeasibleResultError` carrying the last iterate if the
    final point somehow violates the constraints beyond tolerance.
    """
    h = np.asarray(h_dl_eff, dtype=complex)
    g = np.asarray(g_target, dtype=complex)
    t_rows = np.atleast_2d(np.asarray(t_rows, dtype=complex))
    if t_rows.shape[1] != h.shape[1]:
        raise ValueError(f"leakage rows length {t_rows.shape[1]} != {h.shape[1]} TX chains")
    if np.isinf(lambda_b_watts):
        v = np.linalg.lstsq(h, g, rcond=None)[0]
        return (v, {"objective": [float(np.linalg.norm(h @ v - g) ** 2)], "iterations": 0}) if return_info else v
    if lambda_b_watts <= 0:
        raise ValueError(f"leakage threshold must be positive, got {lambda_b_watts}")

    normal = h.conj().T @ h
    rhs = h.conj().T @ g
    lip = 2.0 * float(np.linalg.eigvalsh(normal)[-1]) if normal.size else 0.0
    start = _dual_coordinate_warm_start(normal, rhs, t_rows, lambda_b_watts)
    if start is None:
        start = np.linalg.lstsq(h, g, rcond=None)[0]
    v = _project_leakage(start, t_rows, lambda_b_watts)
    if lip <= 0.0:
        return (v, {"objective": [0.0], "iterations": 0}) if return_info else v
    step = 1.0 / lip
    scale = max(float(np.linalg.norm(rhs)), 1e-30)

    def objective(x):
        return float(np.linalg.norm(h @ x - g) ** 2)

    trace = [objective(v)]
    iterations = 0
    for iterations in range(1, max_iter + 1):
        grad = 2.0 * (normal @ v - rhs)
        v_next = _project_leakage(v - step * grad, t_rows, lambda_b_watts)
        f_next = objective(v_next)
        if f_next > trace[-1]:
            # no descent left within the projection tolerance: converged
            break
        residual = lip * float(np.linalg.norm(v_next - v))
        v = v_next
        trace.append(f_next)
        if residual <= tol * scale:
            break

    vals = np.linalg.norm(t_rows.conj() @ v, axis=1) ** 2
    worst = vals.max() / lambda_b_watts if lambda_b_watts > 0 else 0.0
    if worst > 1.0 + 1e-6:
        raise InfeasibleResultError(
            f"constraints violated by factor {worst:.3e} after {iterations} iterations",
            last_iterate=v,
        )
    if worst > 1.0:
        v = v * np.sqrt(1.0 / worst) * (1.0 - 1e-15)
    if return_info:
        return v, {"objective": trace, "iterations": iterations}
    return v


def power_normalize(v_rf: AnalogBeamformer, v_bb: np.ndarray, p_b_watts: float) -> np.ndarray:
    """Rescale precoder columns whose radiated power exceeds ``p_b_watts``.

    Column c of V_rf @ V_bb with squared norm above the budget is brought back
    to exactly the budget by scaling column c of V_bb; compliant columns are
    left untouched (the input is returned unchanged when nothing violates).
    """
    v_bb = np.asarray(v_bb, dtype=complex)
    col_power = np.linalg.norm(v_rf.assembled @ v_bb, axis=0) ** 2
    violating = col_power > p_b_watts
    if not violating.any():
        return v_bb
    factors = np.ones(v_bb.shape[1])
    factors[violating] = np.sqrt(p_b_watts / col_power[violating])
    return v_bb * factors[None, :]


def nsp_rx_combiner(
    h_ul_eff: np.ndarray, h_rad_int_eff: np.ndarray, n_streams: int
) -> np.ndarray:
    """Uplink digital combiner constrained to null the radar interference.

    The candidate X holds the top ``n_streams`` left singular vectors of the
    effective uplink channel; projecting X onto the orthogonal complement of
    the interference column space, W = (I - A^H (A A^H)^+ A) X with
    A = h_rad_int_eff^H, zeroes W^H h_rad_int_eff exactly. The pseudo-inverse
    (rank tolerance 1e-10 relative) keeps rank-deficient interference, e.g.
    repeated target directions, well behaved. Columns are normalized to unit
    norm; if the projector annihilates a column the uplink direction lies
    inside the interference span and :class:`DegenerateCombinerError` is
    raised.
    """
    h_ul = np.asarray(h_ul_eff, dtype=complex)
    h_int = np.asarray(h_rad_int_eff, dtype=complex)
    if h_ul.shape[0] != h_int.shape[0]:
        raise ValueError("uplink and interference channels disagree on RX chains")
    u, _, _ = np.linalg.svd(h_ul, full_matrices=False)
    if n_streams < 1 or n_streams > u.shape[1]:
        raise ValueError(f"cannot extract {n_streams} streams from shape {h_ul.shape}")
    x = _fix_phase(u[:, :n_streams])

    sing_u, sing_vals, _ = np.linalg.svd(h_int, full_matrices=False)
    if sing_vals.size and sing_vals[0] > 0:
        rank = int(np.sum(sing_vals > _RANK_TOL_REL * sing_vals[0]))
    else:
        rank = 0
    basis = sing_u[:, :rank]
    w = x - basis @ (basis.conj().T @ x)
    norms = np.linalg.norm(w, axis=0)
    if np.any(norms < 1e-9):
        raise DegenerateCombinerError(
            "uplink direction lies inside the radar interference span"
        )
    return w / norms[None, :]


def mss_rx_combiner(h_ul_eff: np.ndarray, n_streams: int) -> np.ndarray:
    """Baseline combiner: top left singular vectors, no interference nulling."""
    h_ul = np.asarray(h_ul_eff, dtype=complex)
    u, _, _ = np.linalg.svd(h_ul, full_matrices=False)
    if n_streams < 1 or n_streams > u.shape[1]:
        raise ValueError(f"cannot extract {n_streams} streams from shape {h_ul.shape}")
    return _fix_phase(u[:, :n_streams])


def user_beamformers(
    h_dl_hat: np.ndarray, h_ul_hat: np.ndarray, st: int, p_u_watts: float
):
    """DL user combiner (top st left singular vectors) and UL precoder.

    The uplink precoder is the first right singular vector of the uplink
    estimate scaled so ||v||^2 equals the uplink power budget.
    """
    h_dl = np.asarray(h_dl_hat, dtype=complex)
    h_ul = np.asarray(h_ul_hat, dtype=complex)
    u, _, _ = np.linalg.svd(h_dl, full_matrices=False)
    if st < 1 or st > u.shape[1]:
        raise ValueError(f"cannot extract {st} streams from shape {h_dl.shape}")
    w_u = _fix_phase(u[:, :st])
    _, _, vh = np.linalg.svd(h_ul, full_matrices=False)
    v_u = _fix_phase(vh[0].conj()[:, None])[:, 0] * np.sqrt(p_u_watts)
    return w_u, v_u


def run_algorithm1(est: EstimatedChannels, cfg) -> HybridBeamformers:
    """Execute the full beamformer design from estimated channels.

    ``cfg`` is a :class:`~fdisac.config.ScenarioConfig`. Steps run in order
    (user beamformers, TX analog, RX analog, channel compression, cancellers,
    TX digital precoder with the closed form when there is a single RX chain,
    power normalization, NSP combiner); sub-operation failures are re-raised
    with the failing step named.
    """
    st = cfg.n_streams
    p_b = cfg.p_b_watts
    p_u = cfg.p_u_watts
    lam = cfg.lambda_b_watts

    step = "user beamformers"
    try:
        w_u, v_u = user_beamformers(est.h_dl_hat, est.h_ul_hat, st, p_u)

        step = "TX analog codebook search"
        cb_tx = dft_codebook(cfg.tx_antennas_per_rf, cfg.codebook_bits)
        v_rf = select_tx_analog(est.h_rad_hat, cb_tx, cfg.tx_rf_chains)

        step = "RX analog codebook search"
        cb_rx = dft_codebook(cfg.rx_antennas_per_rf, cfg.codebook_bits)
        w_rf = select_rx_analog(est.h_rad_hat, est.h_bb_hat, v_rf, cb_rx)

        step = "channel compression"
        h_tilde_hat = w_rf.assembled.conj().T @ est.h_bb_hat @ v_rf.assembled
        h_dl_eff = est.h_dl_hat @ v_rf.assembled

        step = "canceller construction"
        cancellers = build_cancellers(h_tilde_hat, cfg.analog_taps)
        # Conjugated rows of the post-analog-canceller SI matrix: with
        # t_r = conj(row_r), the constrained quantity ||V^H t_r||^2 equals the
        # physical per-chain residual ||row_r @ V||^2 that reaches the ADC.
        leak_rows = h_tilde_hat + cancellers.analog
        leak_vecs = leak_rows.conj()

        step = "TX digital precoder"
        _, _, vh = np.linalg.svd(h_dl_eff, full_matrices=False)
        v_right = _fix_phase(vh.conj().T[:, :st])
        g_target = h_dl_eff @ v_right * np.sqrt(p_b / st)
        if cfg.rx_rf_chains == 1:
            ridge = 1e-10 * float(
                np.real(np.trace(h_dl_eff.conj().T @ h_dl_eff))
            ) / h_dl_eff.shape[1]
            v_bb = lagrangian_tx_precoder(h_dl_eff, leak_vecs[0], lam, g_target, ridge)
        else:
            v_bb = numeric_tx_precoder(
                h_dl_eff, leak_vecs, lam, g_target, tol=1e-8, max_iter=4000
            )

        step = "power normalization"
        v_bb = power_normalize(v_rf, v_bb, p_b)
        total = tx_power(v_rf, v_bb)
        if total > p_b:
            v_bb = v_bb * np.sqrt(p_b / total) * (1.0 - 1e-15)
        leak_vals = np.linalg.norm(leak_rows @ v_bb, axis=1) ** 2
        worst = leak_vals.max() / lam if np.isfinite(lam) and lam > 0 else 0.0
        if worst > 1.0:
            v_bb = v_bb * np.sqrt(1.0 / worst) * (1.0 - 1e-15)

        step = "NSP combiner"
        h_ul_eff = w_rf.assembled.conj().T @ est.h_ul_hat
        h_int_eff = w_rf.assembled.conj().T @ est.h_rad_int_hat
        if cfg.rx_rf_chains == 1:
            # a single RX chain leaves no null space to project into; the
            # non-nulling singular-vector combiner is the only choice
            w_bb = mss_rx_combiner(h_ul_eff, n_streams=1)
        else:
            w_bb = nsp_rx_combiner(h_ul_eff, h_int_eff, n_streams=1)
    except Exception as exc:
        exc.args = (f"beamformer design failed at step '{step}': {exc}",)
        raise

    return HybridBeamformers(
        v_b_rf=v_rf,
        v_b_bb=v_bb,
        w_b_rf=w_rf,
        w_b_bb=w_bb,
        w_u=w_u,
        v_u_bb=v_u,
        cancellers=cancellers,
    )
