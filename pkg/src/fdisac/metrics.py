"""SINR and achievable-rate evaluation for the radar, downlink and uplink links.

The SI residual terms use the true compressed channel together with the
estimate-derived cancellers, so imperfect channel knowledge leaves a nonzero
residual in the denominators. Rates map through log2(1 + sinr).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .optimizer import EstimatedChannels, HybridBeamformers

__all__ = ["LinkMetrics", "radar_sinr", "dl_snr", "ul_sinr", "ideal_dl_rate"]


@dataclass(frozen=True)
class LinkMetrics:
    """Linear SINRs and spectral efficiencies for one scenario evaluation."""

    gamma_rad: float
    gamma_dl: float
    gamma_ul: float
    rate_dl: float
    rate_ul: float

    @classmethod
    def from_sinrs(cls, gamma_rad: float, gamma_dl: float, gamma_ul: float):
        return cls(
            gamma_rad=gamma_rad,
            gamma_dl=gamma_dl,
            gamma_ul=gamma_ul,
            rate_dl=float(np.log2(1.0 + gamma_dl)),
            rate_ul=float(np.log2(1.0 + gamma_ul)),
        )


def _si_residual(bf: HybridBeamformers, true_h_tilde: np.ndarray) -> np.ndarray:
    return (
        np.asarray(true_h_tilde, dtype=complex)
        + bf.cancellers.analog
        + bf.cancellers.digital
    ) @ bf.v_b_bb


def radar_sinr(
    bf: HybridBeamformers,
    est: EstimatedChannels,
    true_h_tilde: np.ndarray,
    sigma_b2: float,
) -> float:
    """Sensing-echo SINR.

    Numerator: ||W_rf^H H_rad_hat V_rf V_bb||_F^2. Denominator: post-canceller
    SI power plus ||W_rf||_F^2 * sigma_b^2.
    """
    if sigma_b2 <= 0:
        raise ValueError(f"noise power must be positive, got {sigma_b2}")
    w_rf = bf.w_b_rf.assembled
    sig = w_rf.conj().T @ est.h_rad_hat @ bf.v_b_rf.assembled @ bf.v_b_bb
    num = float(np.linalg.norm(sig) ** 2)
    den = float(np.linalg.norm(_si_residual(bf, true_h_tilde)) ** 2)
    den += float(np.linalg.norm(w_rf) ** 2) * sigma_b2
    return num / den


def dl_snr(bf: HybridBeamformers, h_dl: np.ndarray, sigma_u2: float) -> float:
    """Downlink SNR ||W_u^H H_dl V_rf V_bb||_F^2 / (||W_u||^2 sigma_u^2)."""
    if sigma_u2 <= 0:
        raise ValueError(f"noise power must be positive, got {sigma_u2}")
    sig = bf.w_u.conj().T @ np.asarray(h_dl, dtype=complex) @ bf.v_b_rf.assembled @ bf.v_b_bb
    den = float(np.linalg.norm(bf.w_u) ** 2) * sigma_u2
    return float(np.linalg.norm(sig) ** 2) / den


def ul_sinr(
    bf: HybridBeamformers,
    est: EstimatedChannels,
    true_h_tilde: np.ndarray,
    sigma_b2: float,
) -> float:
    """Uplink SINR after the digital combiner.

    The downlink echo off the radar targets interferes with uplink reception,
    so the denominator collects the combined radar term, the post-canceller SI
    residual and the noise floor.
    """
    if sigma_b2 <= 0:
        raise ValueError(f"noise power must be positive, got {sigma_b2}")
    w_eff = bf.w_b_rf.assembled @ bf.w_b_bb  # (m_b, n_streams)
    sig = w_eff.conj().T @ est.h_ul_hat @ bf.v_u_bb
    num = float(np.linalg.norm(sig) ** 2)
    radar_leak = w_eff.conj().T @ est.h_rad_hat @ bf.v_b_rf.assembled @ bf.v_b_bb
    si_leak = bf.w_b_bb.conj().T @ _si_residual(bf, true_h_tilde)
    den = (
        float(np.linalg.norm(radar_leak) ** 2)
        + float(np.linalg.norm(si_leak) ** 2)
        + sigma_b2
    )
    return num / den


def ideal_dl_rate(h_dl: np.ndarray, p_b: float, sigma_u2: float, st: int) -> float:
    """Rate of the unconstrained fully digital design, equal power per stream.

    SVD waterlevel-free baseline: sum over the top ``st`` singular values of
    log2(1 + (p_b/st) * s_i^2 / sigma_u^2).
    """
    if st < 1:
        raise ValueError(f"need at least one stream, got {st}")
    if sigma_u2 <= 0:
        raise ValueError(f"noise power must be positive, got {sigma_u2}")
    if p_b < 0:
        raise ValueError(f"power budget cannot be negative, got {p_b}")
    sv = np.linalg.svd(np.asarray(h_dl, dtype=complex), compute_uv=False)
    top = sv[:st]
    return float(np.sum(np.log2(1.0 + (p_b / st) * top**2 / sigma_u2)))
