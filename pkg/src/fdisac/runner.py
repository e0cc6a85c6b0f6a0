"""End-to-end experiment orchestration.

One trial follows the two-slot protocol: slot 1 transmits with a fixed
spread-beam configuration and runs the sensing chain (MUSIC directions first,
then one delay-Doppler dwell per detected direction with the RX chains
repointed at it); the estimated directions feed the beamformer design used in
slot 2, whose link metrics are then evaluated against the true channels. Trials are statistically
independent (each gets its own spawned generator), so results do not depend
on execution order and a fixed seed reproduces a report byte for byte.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .arrays import Codebook, dft_codebook, ula_response, ula_response_matrix
from .beamforming import AnalogBeamformer, assemble_analog, tx_power
from .cancellers import analog_residual_power_per_chain, build_cancellers
from .channels import TargetParams, Waveform, gen_dl_channel, gen_si_channel, gen_ul_channel, perturb_estimate, PathParams
from .config import ScenarioConfig
from .metrics import LinkMetrics, dl_snr, ideal_dl_rate, radar_sinr, ul_sinr
from .optimizer import (
    build_estimated_channels,
    lagrangian_tx_precoder,
    mss_rx_combiner,
    run_algorithm1,
)
from .sensing import (
    SensingEstimate,
    angle_grid,
    delay_doppler_map,
    delay_doppler_quotient,
    music_doas,
    reference_signal_grid,
    sample_covariance,
)

__all__ = [
    "RunReport",
    "run_scenario",
    "sweep",
    "validate_suite",
    "synthesize_rx_snapshots",
    "SWEEP_VARIABLES",
]

# Canonical sweep names mapped onto config fields.
SWEEP_VARIABLES = {
    "p_b_dbm": "tx_power_dbm",
    "p_u_dbm": "ul_tx_power_dbm",
    "n_taps": "analog_taps",
    "tx_power_dbm": "tx_power_dbm",
    "ul_tx_power_dbm": "ul_tx_power_dbm",
    "analog_taps": "analog_taps",
}


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonify(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


@dataclass
class RunReport:
    """Everything one scenario or sweep produced.

    ``wall_clock_s`` is kept in memory only; serialization drops it so that
    repeated runs under the same seed stay byte identical.
    """

    config: dict
    seed: int
    trials: list
    aggregate: dict
    range_angle: dict | None = None
    range_velocity: dict | None = None
    rate_rows: list | None = None
    wall_clock_s: float | None = None

    def to_json(self, indent: int = 2) -> str:
        payload = {
            "config": _jsonify(self.config),
            "seed": self.seed,
            "trials": _jsonify(self.trials),
            "aggregate": _jsonify(self.aggregate),
            "range_angle": _jsonify(self.range_angle),
            "range_velocity": _jsonify(self.range_velocity),
            "rate_rows": _jsonify(self.rate_rows),
        }
        return json.dumps(payload, indent=indent, sort_keys=True)


def spread_analog(n_chains: int, cb: Codebook) -> AnalogBeamformer:
    """Deterministic slot-1 analog setting: chains fan out across the codebook.

    Distinct per-chain beams keep the RF-domain manifold unambiguous for the
    direction scan and illuminate the whole angular sector. Alternate chains
    are offset by one codebook step so the subarray null lattices of the
    chains never align: a uniformly spread on-grid assignment would leave
    exact blind directions on the critically sampled beam grid.
    """
    size = len(cb)
    idx = tuple(
        (((2 * i + 1) * size) // (2 * n_chains) + (i % 2)) % size
        for i in range(n_chains)
    )
    return assemble_analog(cb.vectors[list(idx)], codebook_indices=idx)


def synthesize_rx_snapshots(
    radar_targets: Sequence[TargetParams],
    h_ul: np.ndarray,
    si_residual: np.ndarray,
    wf: Waveform,
    v_rf: AnalogBeamformer,
    v_bb: np.ndarray,
    v_u: np.ndarray,
    w_rf: AnalogBeamformer,
    sym_b: np.ndarray,
    sym_u: np.ndarray,
    noise_rf: np.ndarray,
):
    """RF-chain-domain snapshots over the whole OFDM grid.

    Grid cells are flattened as ``cell = p * Q + q``. ``si_residual`` is the
    post-canceller matrix (H_tilde + C + D) @ V_bb so the SI term reduces to a
    product with the symbol block. Returns ``(y_rf, x_b)`` with shapes
    (m_rf, P*Q) and (n_b, P*Q).
    """
    m_b = h_ul.shape[0]
    n_b = v_rf.n_antennas
    x_b = v_rf.assembled @ (v_bb @ sym_b)
    w_h = w_rf.assembled.conj().T
    y = w_h @ (h_ul @ np.outer(v_u, sym_u))
    y = y + si_residual @ sym_b
    p_idx = np.repeat(np.arange(wf.n_subcarriers), wf.n_symbols)
    q_idx = np.tile(np.arange(wf.n_symbols), wf.n_subcarriers)
    for t in radar_targets:
        phase = np.exp(
            2j
            * np.pi
            * (
                q_idx * wf.symbol_duration_s * t.doppler_hz(wf.carrier_hz)
                - p_idx * t.delay_s * wf.subcarrier_spacing_hz
            )
        )
        a_rx = ula_response(m_b, t.angle_deg)
        a_tx = ula_response(n_b, t.angle_deg)
        y = y + np.outer(w_h @ a_rx, t.gain * phase * (a_tx.conj() @ x_b))
    return y + noise_rf, x_b


def _match_doas(est_doas: Sequence[float], true_angles: Sequence[float]) -> np.ndarray:
    """Assign estimated directions to the configured objects (one to one)."""
    cost = np.abs(np.subtract.outer(np.asarray(est_doas), np.asarray(true_angles)))
    rows, cols = linear_sum_assignment(cost)
    matched = np.empty(len(true_angles))
    matched[cols] = np.asarray(est_doas)[rows]
    return matched


def pointed_analog(n_chains: int, cb: Codebook, angle_deg: float) -> AnalogBeamformer:
    """Every chain on the codebook beam with the highest gain toward ``angle_deg``."""
    gains = np.abs(cb.vectors.conj() @ ula_response(cb.n_elems, angle_deg))
    idx = int(np.argmax(gains))
    return assemble_analog(
        np.tile(cb.vectors[idx], (n_chains, 1)), codebook_indices=(idx,) * n_chains
    )


def _run_trial(cfg: ScenarioConfig, rng: np.random.Generator, manifold: np.ndarray,
               v_rf0: AnalogBeamformer, w_rf0: AnalogBeamformer,
               cb_tx: Codebook, cb_rx: Codebook):
    wf = cfg.waveform()
    n_b, m_b = cfg.n_tx_antennas, cfg.n_rx_antennas
    m_u, n_u = cfg.dl_user_antennas, cfg.ul_user_antennas
    st = cfg.n_streams
    k = cfg.k_targets
    specs = cfg.all_target_specs()
    n_cells = wf.n_subcarriers * wf.n_symbols

    # Channel realization. Gains default to unit magnitude with random phase.
    dl_phases = np.exp(2j * np.pi * rng.random(len(cfg.dl_scatterers)))
    radar_phases = np.exp(2j * np.pi * rng.random(k))
    beta = np.exp(2j * np.pi * rng.random())
    targets = [
        TargetParams(gain=radar_phases[i], angle_deg=s.angle_deg,
                     range_m=s.range_m, velocity_mps=s.velocity_mps)
        for i, s in enumerate(specs)
    ]
    dl_paths = [
        PathParams(gain=dl_phases[i], angle_deg=s.angle_deg)
        for i, s in enumerate(cfg.dl_scatterers)
    ]
    h_dl_true = gen_dl_channel(dl_paths, m_u, n_b)
    h_ul_true = gen_ul_channel(PathParams(gain=beta, angle_deg=cfg.ul_user.angle_deg), m_b, n_u)
    h_si_true = gen_si_channel(m_b, n_b, cfg.si_kappa_db, cfg.si_pathloss_db, rng)
    h_si_hat = perturb_estimate(h_si_true, cfg.csi_nmse_db, rng)

    # Slot 1: spread beams, identity-like digital precoder, random UL direction.
    v_bb0 = np.eye(cfg.tx_rf_chains, dtype=complex)[:, :st] * np.sqrt(cfg.p_b_watts / st)
    raw = rng.standard_normal(n_u) + 1j * rng.standard_normal(n_u)
    v_u0 = raw / np.linalg.norm(raw) * np.sqrt(cfg.p_u_watts)
    h_tilde_hat0 = w_rf0.assembled.conj().T @ h_si_hat @ v_rf0.assembled
    h_tilde_true0 = w_rf0.assembled.conj().T @ h_si_true @ v_rf0.assembled
    canc0 = build_cancellers(h_tilde_hat0, cfg.analog_taps)
    si_residual0 = (h_tilde_true0 + canc0.analog + canc0.digital) @ v_bb0

    sym_b = (rng.standard_normal((st, n_cells)) + 1j * rng.standard_normal((st, n_cells))) / np.sqrt(2)
    sym_u = (rng.standard_normal(n_cells) + 1j * rng.standard_normal(n_cells)) / np.sqrt(2)
    sigma_b = np.sqrt(cfg.sigma_b2_watts)
    noise_rf = sigma_b * (
        rng.standard_normal((cfg.rx_rf_chains, n_cells))
        + 1j * rng.standard_normal((cfg.rx_rf_chains, n_cells))
    ) / np.sqrt(2)

    y_rf, x_b = synthesize_rx_snapshots(
        targets, h_ul_true, si_residual0, wf, v_rf0, v_bb0, v_u0, w_rf0,
        sym_b, sym_u, noise_rf,
    )

    # Sensing: directions first, then per-target delay-Doppler.
    cov = sample_covariance(y_rf.T)
    music = music_doas(cov, k, cfg.music_grid_step_deg, cfg.rx_rf_chains, manifold=manifold)
    true_angles = [s.angle_deg for s in specs]
    matched = _match_doas(music.doas_deg, true_angles)

    sensing_rows = []
    dd_maps = []
    for i, spec in enumerate(specs):
        # Dedicated dwell per detected direction: TX and RX chains repoint to
        # the nearest codebook beam, which restores full array gain for this
        # target and pushes the others into the subarray sidelobes.
        v_k = pointed_analog(cfg.tx_rf_chains, cb_tx, matched[i])
        w_k = pointed_analog(cfg.rx_rf_chains, cb_rx, matched[i])
        h_tilde_hat_k = w_k.assembled.conj().T @ h_si_hat @ v_k.assembled
        h_tilde_true_k = w_k.assembled.conj().T @ h_si_true @ v_k.assembled
        canc_k = build_cancellers(h_tilde_hat_k, cfg.analog_taps)
        resid_k = (h_tilde_true_k + canc_k.analog + canc_k.digital) @ v_bb0
        y_k, x_k = synthesize_rx_snapshots(
            targets, h_ul_true, resid_k, wf, v_k, v_bb0, v_u0, w_k,
            sym_b, sym_u, noise_rf,
        )
        y_grid_k = np.ascontiguousarray(y_k.T).reshape(
            wf.n_subcarriers, wf.n_symbols, -1
        )
        g_grid = reference_signal_grid(matched[i], x_k, m_b).reshape(
            wf.n_subcarriers, wf.n_symbols, m_b
        )
        z, _ = delay_doppler_quotient(y_grid_k, g_grid, w_k)
        dd = delay_doppler_map(z)
        est_i = SensingEstimate.from_bins(matched[i], dd.peak_n, dd.peak_m, wf)
        dd_maps.append(dd.magnitude)
        sensing_rows.append(
            {
                "true_angle_deg": spec.angle_deg,
                "true_range_m": spec.range_m,
                "true_velocity_mps": spec.velocity_mps,
                "doa_deg": est_i.doa_deg,
                "range_m": est_i.range_m,
                "velocity_mps": est_i.velocity_mps,
                "delay_s": est_i.delay_s,
                "doppler_hz": est_i.doppler_hz,
                "bin_n": est_i.bin_n,
                "bin_m": est_i.bin_m,
                "doa_error_deg": abs(est_i.doa_deg - spec.angle_deg),
                "range_error_m": abs(est_i.range_m - spec.range_m),
                "velocity_error_mps": abs(est_i.velocity_mps - spec.velocity_mps),
            }
        )

    # Slot 2: design beamformers from the estimates, evaluate on true channels.
    n_scatter = len(cfg.dl_scatterers)
    est = build_estimated_channels(
        scatterer_doas_deg=matched[:n_scatter],
        other_doas_deg=matched[n_scatter : k - 1],
        ul_doa_deg=matched[k - 1],
        h_bb_hat=h_si_hat,
        m_b=m_b,
        n_b=n_b,
        m_u=m_u,
        n_u=n_u,
    )
    bf = run_algorithm1(est, cfg)
    bf.validate(cfg.p_b_watts, cfg.p_u_watts)

    h_tilde_true = bf.w_b_rf.assembled.conj().T @ h_si_true @ bf.v_b_rf.assembled
    gamma_rad = radar_sinr(bf, est, h_tilde_true, cfg.sigma_b2_watts)
    gamma_dl = dl_snr(bf, h_dl_true, cfg.sigma_u2_watts)
    gamma_ul = ul_sinr(bf, est, h_tilde_true, cfg.sigma_b2_watts)
    h_ul_eff = bf.w_b_rf.assembled.conj().T @ est.h_ul_hat
    bf_mss = replace(bf, w_b_bb=mss_rx_combiner(h_ul_eff, 1))
    gamma_ul_mss = ul_sinr(bf_mss, est, h_tilde_true, cfg.sigma_b2_watts)
    link = LinkMetrics.from_sinrs(gamma_rad, gamma_dl, gamma_ul)

    residual = analog_residual_power_per_chain(
        h_tilde_true, bf.cancellers.analog, bf.v_b_bb
    )
    h_int_eff = bf.w_b_rf.assembled.conj().T @ est.h_rad_int_hat
    int_norm = np.linalg.norm(h_int_eff)
    nulling = float(np.linalg.norm(bf.w_b_bb.conj().T @ h_int_eff) / int_norm) if int_norm > 0 else 0.0

    return {
        "sensing": sensing_rows,
        "metrics": {
            "gamma_rad": link.gamma_rad,
            "gamma_dl": link.gamma_dl,
            "gamma_ul_nsp": link.gamma_ul,
            "gamma_ul_mss": gamma_ul_mss,
            "rate_dl": link.rate_dl,
            "rate_ul_nsp": link.rate_ul,
            "rate_ul_mss": float(np.log2(1.0 + gamma_ul_mss)),
            "rate_dl_ideal": ideal_dl_rate(h_dl_true, cfg.p_b_watts, cfg.sigma_u2_watts, st),
        },
        "tx_power_w": tx_power(bf.v_b_rf, bf.v_b_bb),
        "ul_power_w": float(np.linalg.norm(bf.v_u_bb) ** 2),
        "analog_residual_w": residual.tolist(),
        "nsp_nulling_ratio": nulling,
    }, dd_maps


def _aggregate(trials: list) -> dict:
    ok = [t for t in trials if "error" not in t]
    agg = {"n_trials": len(trials), "n_failed": len(trials) - len(ok)}
    if not ok:
        return agg
    for key in (
        "gamma_rad", "gamma_dl", "gamma_ul_nsp", "gamma_ul_mss",
        "rate_dl", "rate_ul_nsp", "rate_ul_mss", "rate_dl_ideal",
    ):
        agg[f"mean_{key}"] = float(np.mean([t["metrics"][key] for t in ok]))
    agg["max_analog_residual_w"] = float(np.max([max(t["analog_residual_w"]) for t in ok]))
    agg["max_nsp_nulling_ratio"] = float(np.max([t["nsp_nulling_ratio"] for t in ok]))
    agg["max_doa_error_deg"] = float(
        np.max([row["doa_error_deg"] for t in ok for row in t["sensing"]])
    )
    agg["max_range_error_m"] = float(
        np.max([row["range_error_m"] for t in ok for row in t["sensing"]])
    )
    return agg


def run_scenario(cfg: ScenarioConfig) -> RunReport:
    """Run ``cfg.trials`` independent trials and aggregate the results.

    A failing trial is recorded under an ``error`` key instead of aborting the
    run; only a run where every trial failed raises.
    """
    start = time.perf_counter()
    wf = cfg.waveform()
    cb_tx = dft_codebook(cfg.tx_antennas_per_rf, cfg.codebook_bits)
    cb_rx = dft_codebook(cfg.rx_antennas_per_rf, cfg.codebook_bits)
    v_rf0 = spread_analog(cfg.tx_rf_chains, cb_tx)
    w_rf0 = spread_analog(cfg.rx_rf_chains, cb_rx)
    grid = angle_grid(cfg.music_grid_step_deg)
    manifold = w_rf0.assembled.conj().T @ ula_response_matrix(cfg.n_rx_antennas, grid)

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    trials = []
    map_stack = []
    profile_stack = []
    angle_stack = []
    for trial_seed in seeds:
        rng = np.random.default_rng(trial_seed)
        try:
            trial, dd_maps = _run_trial(cfg, rng, manifold, v_rf0, w_rf0, cb_tx, cb_rx)
        except Exception as exc:  # recorded, not fatal
            trials.append({"error": f"{type(exc).__name__}: {exc}"})
            continue
        trials.append(trial)
        normed = [m / m.max() if m.max() > 0 else m for m in dd_maps]
        map_stack.append(np.sum(normed, axis=0))
        profile_stack.append(np.array([m.max(axis=1) for m in normed]))
        angle_stack.append([row["doa_deg"] for row in trial["sensing"]])

    if not any("error" not in t for t in trials):
        raise RuntimeError(f"all {cfg.trials} trials failed; first: {trials[0]['error']}")

    ranges = [n * wf.range_bin_m for n in range(wf.n_subcarriers)]
    velocities = [
        (m - wf.n_symbols // 2) * wf.velocity_bin_mps for m in range(wf.n_symbols)
    ]
    mean_profiles = np.mean(profile_stack, axis=0)
    range_angle = {
        "angles_deg": np.mean(angle_stack, axis=0).tolist(),
        "ranges_m": ranges,
        "profiles": [
            (row / row.max() if row.max() > 0 else row).tolist() for row in mean_profiles
        ],
    }
    range_velocity = {
        "ranges_m": ranges,
        "velocities_mps": velocities,
        "magnitude": np.mean(map_stack, axis=0).tolist(),
    }
    return RunReport(
        config=cfg.to_dict(),
        seed=cfg.seed,
        trials=trials,
        aggregate=_aggregate(trials),
        range_angle=range_angle,
        range_velocity=range_velocity,
        wall_clock_s=time.perf_counter() - start,
    )


def sweep(cfg: ScenarioConfig, variable: str, values: Sequence) -> RunReport:
    """Re-run the scenario for each value of the sweep variable.

    Every point reuses the same seed so channel realizations are paired across
    values. Emits one aggregated rate row per value.
    """
    if variable not in SWEEP_VARIABLES:
        raise ValueError(f"unknown sweep variable '{variable}', expected one of {sorted(set(SWEEP_VARIABLES))}")
    if not values:
        raise ValueError("sweep needs at least one value")
    field_name = SWEEP_VARIABLES[variable]
    start = time.perf_counter()
    rows = []
    trials = []
    for value in values:
        if field_name == "analog_taps":
            value = int(value)
        point_cfg = cfg.with_overrides(**{field_name: value})
        report = run_scenario(point_cfg)
        agg = report.aggregate
        rows.append(
            {
                "sweep_value": value,
                "rate_dl": agg.get("mean_rate_dl"),
                "rate_ideal": agg.get("mean_rate_dl_ideal"),
                "rate_ul_nsp": agg.get("mean_rate_ul_nsp"),
                "rate_ul_mss": agg.get("mean_rate_ul_mss"),
                "gamma_rad": agg.get("mean_gamma_rad"),
            }
        )
        trials.append({"sweep_value": value, "aggregate": agg})
    return RunReport(
        config=cfg.to_dict(),
        seed=cfg.seed,
        trials=trials,
        aggregate={"variable": variable, "n_points": len(values)},
        rate_rows=rows,
        wall_clock_s=time.perf_counter() - start,
    )


def validate_suite(cfg: ScenarioConfig) -> tuple[dict, bool]:
    """Deterministic invariant suite; returns (report dict, all passed).

    Checks power budgets, the per-chain analog SI residual against the ADC
    threshold, NSP nulling depth, DL rate against the unconstrained baseline,
    KKT conditions of the closed-form precoder on synthetic single-RX-chain
    instances, run-to-run byte determinism, and finiteness of every output.
    """
    report = run_scenario(cfg)
    ok_trials = [t for t in report.trials if "error" not in t]
    checks = []

    def add(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    add("all_trials_completed", len(ok_trials) == len(report.trials),
        f"{len(ok_trials)}/{len(report.trials)} trials")

    worst_tx = max(t["tx_power_w"] for t in ok_trials)
    add("tx_power_budget", worst_tx <= cfg.p_b_watts * (1 + 1e-9),
        f"max {worst_tx:.6e} W vs budget {cfg.p_b_watts:.6e} W")

    worst_ul = max(t["ul_power_w"] for t in ok_trials)
    add("ul_power_budget", worst_ul <= cfg.p_u_watts * (1 + 1e-9),
        f"max {worst_ul:.6e} W vs budget {cfg.p_u_watts:.6e} W")

    worst_resid = max(max(t["analog_residual_w"]) for t in ok_trials)
    add("analog_si_residual", worst_resid <= cfg.lambda_b_watts,
        f"max {worst_resid:.6e} W vs threshold {cfg.lambda_b_watts:.6e} W")

    worst_null = max(t["nsp_nulling_ratio"] for t in ok_trials)
    add("nsp_nulling", worst_null <= 1e-9, f"max ratio {worst_null:.3e}")

    dl_ok = all(
        t["metrics"]["rate_dl"] <= t["metrics"]["rate_dl_ideal"] * (1 + 1e-9) + 1e-12
        for t in ok_trials
    )
    add("dl_rate_vs_ideal", dl_ok, "proposed <= ideal on every trial")

    kkt_worst = _kkt_spot_checks(cfg.seed)
    add("kkt_closed_form", kkt_worst <= 1e-6, f"worst scaled residual {kkt_worst:.3e}")

    rerun = run_scenario(cfg)
    add("determinism", report.to_json() == rerun.to_json(), "byte-identical rerun")

    finite = all(
        np.isfinite(v) for v in report.aggregate.values() if isinstance(v, float)
    )
    add("finite_outputs", finite, "all aggregate values finite")

    payload = {
        "config": _jsonify(cfg.to_dict()),
        "seed": cfg.seed,
        "checks": checks,
        "aggregate": _jsonify(report.aggregate),
    }
    return payload, all(c["passed"] for c in checks)


def _kkt_spot_checks(seed: int, n_instances: int = 20) -> float:
    """Worst KKT residual of the closed-form precoder over random instances."""
    rng = np.random.default_rng([seed, 7151])
    worst = 0.0
    for _ in range(n_instances):
        m_u, n_rf, st = 5, 5, 3
        h = (rng.standard_normal((m_u, n_rf)) + 1j * rng.standard_normal((m_u, n_rf))) / np.sqrt(2)
        t1 = (rng.standard_normal(n_rf) + 1j * rng.standard_normal(n_rf)) * 0.05
        lam = 1e-3
        _, _, vh = np.linalg.svd(h, full_matrices=False)
        g = h @ vh.conj().T[:, :st]
        v = lagrangian_tx_precoder(h, t1, lam, g)
        normal = h.conj().T @ h
        val = float(np.linalg.norm(t1.conj() @ v) ** 2)
        feas = max(val / lam - 1.0, 0.0)
        grad = normal @ v - h.conj().T @ g
        v_ls = np.linalg.solve(normal, h.conj().T @ g)
        active = np.linalg.norm(t1.conj() @ v_ls) > np.sqrt(lam)
        zeta = 0.0
        if active:
            s_quad = float(np.real(t1.conj() @ np.linalg.solve(normal, t1)))
            zeta = (np.linalg.norm(t1.conj() @ v_ls) / np.sqrt(lam) - 1.0) / s_quad
        stationarity = np.linalg.norm(grad + zeta * np.outer(t1, t1.conj()) @ v)
        stationarity /= max(np.linalg.norm(h.conj().T @ g), 1e-30)
        slackness = abs(zeta * (val - lam)) / lam
        worst = max(worst, feas, stationarity, slackness)
    return worst
