"""Monte-Carlo estimate of the secrecy outage probability from the channel model.

Nothing here uses the gamma approximation of the RIS sum: every hop is drawn
from its alpha-mu law, the reflecting elements are co-phased (so the cascaded
amplitudes add coherently), and the SNRs are formed directly:

* destination SIR ``(avg_snr_d / beta_d) (sum_k theta_k phi_k)^2 / sum_i gamma_i``
* direct eavesdroppers ``gamma_q = avg_snr_e * |h_q|^2`` (power alpha-mu)
* RIS eavesdroppers ``(avg_snr_E / beta_E) (sum_p theta_p phi_pq)^2``; the
  source-to-RIS hop ``theta_p`` is common to all ``q`` and, when the
  destination's RIS is used, equal to the destination's ``theta_k``.

Colluding eavesdroppers add their SNRs, non-colluding ones are represented by
the largest.

``Fidelity.MODEL`` instead samples the approximate laws the closed forms are
built on (gamma-fitted RIS sums, aggregated interference, fitted colluding
sum); comparing it with ``Fidelity.CHANNEL`` separates approximation error
from evaluation error.

Trials are split into fixed-size chunks, each with its own child of a
``SeedSequence``, so results depend only on ``(seed, trials, chunk)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import Case, Scenario, SystemConfig
from .errors import ParameterDomainError
from .fading import AlphaMuParams, alpha_mu_sample
from .ris_channel import RisLinkParams, fit_colluding_sum
from .sop import Method, SopEstimate

__all__ = [
    "Mode",
    "Fidelity",
    "ChannelSample",
    "draw_sample",
    "realize_snrs",
    "sample_model_snrs",
    "count_outages",
    "estimate_sop",
    "estimate_both",
    "wilson_interval",
]

DEFAULT_CHUNK = 1 << 17
MIN_TRIALS = 10_000


class Mode(str, enum.Enum):
    EXACT = "exact"  # 1 + gamma_D < psi (1 + gamma_E)
    LOWER_BOUND = "lower_bound"  # gamma_D < psi gamma_E


class Fidelity(str, enum.Enum):
    CHANNEL = "channel"  # per-element, per-link simulation
    MODEL = "model"  # the approximate laws used by the analysis


@dataclass
class ChannelSample:
    """A batch of channel realisations (leading axis = trial).

    ``theta_k``/``phi_k`` have shape ``(n, N_d)``; ``theta_p`` ``(n, N_E)``;
    ``phi_pq`` ``(n, N_E, L)``; ``h_sq`` ``(n, L)`` and ``h_id`` ``(n, M)`` are
    unit-mean power gains of the direct eavesdropper and interferer links.
    The RIS-eavesdropper arrays are ``None`` for direct interception.
    """

    theta_k: np.ndarray
    phi_k: np.ndarray
    h_id: np.ndarray
    h_sq: np.ndarray | None = None
    theta_p: np.ndarray | None = None
    phi_pq: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.theta_k.shape[0]


def draw_sample(cfg: SystemConfig, rng: np.random.Generator, n: int = 1) -> ChannelSample:
    """Independent draws of every link in ``cfg`` for ``n`` trials."""
    theta_k = alpha_mu_sample(cfg.hop_s, rng, (n, cfg.n_d))
    phi_k = alpha_mu_sample(cfg.hop_r, rng, (n, cfg.n_d))
    h_id = alpha_mu_sample(AlphaMuParams(cfg.alpha_i, cfg.mu_i, 1.0), rng, (n, cfg.m_interferers))
    while True:  # the interference sum is a.s. positive; resample the null set anyway
        bad = ~(h_id.sum(axis=1) > 0)
        if not bad.any():
            break
        h_id[bad] = alpha_mu_sample(AlphaMuParams(cfg.alpha_i, cfg.mu_i, 1.0), rng, (int(bad.sum()), cfg.m_interferers))
    sample = ChannelSample(theta_k, phi_k, h_id)
    if cfg.scenario is Scenario.DIRECT:
        sample.h_sq = alpha_mu_sample(AlphaMuParams(cfg.alpha_e, cfg.mu_e, 1.0), rng, (n, cfg.l_eves))
    else:
        n_e = cfg.n_e_effective
        if cfg.scenario is Scenario.SHARED_RIS:
            sample.theta_p = theta_k
        else:
            sample.theta_p = alpha_mu_sample(cfg.hop_s, rng, (n, n_e))
        sample.phi_pq = alpha_mu_sample(cfg.hop_r, rng, (n, n_e, cfg.l_eves))
    return sample


def realize_snrs(s: ChannelSample, cfg: SystemConfig) -> tuple[np.ndarray, np.ndarray]:
    """``(gamma_D, gamma_E)`` per trial."""
    cascade = np.sum(s.theta_k * s.phi_k, axis=1)
    gamma_i = cfg.avg_snr_i * np.sum(s.h_id, axis=1)
    gamma_d = (cfg.avg_snr_d / cfg.beta_d) * cascade**2 / gamma_i
    if cfg.scenario is Scenario.DIRECT:
        per_eve = cfg.avg_snr_e * s.h_sq
    else:
        link = cfg.eve_ris_link()
        amp = np.einsum("np,npq->nq", s.theta_p, s.phi_pq)
        per_eve = (link.avg_snr / link.beta) * amp**2
    gamma_e = per_eve.sum(axis=1) if cfg.case is Case.COLLUDING else per_eve.max(axis=1)
    return gamma_d, gamma_e


def _ris_snr(link: RisLinkParams, rng: np.random.Generator, size) -> np.ndarray:
    y = link.fit.scale * rng.standard_gamma(link.fit.shape, size=size)
    return link.snr_scale * y * y


def sample_model_snrs(cfg: SystemConfig, rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(gamma_D, gamma_E)`` drawn from the laws the closed forms assume."""
    gamma_d = _ris_snr(cfg.dest_link(), rng, n)
    ip = cfg.interference()
    gamma_i = alpha_mu_sample(AlphaMuParams(cfg.alpha_i, ip.aggregate_mu, ip.aggregate_scale), rng, n)
    L = cfg.l_eves
    if cfg.scenario is Scenario.DIRECT:
        if cfg.case is Case.COLLUDING:
            om = L ** (1.0 / cfg.alpha_e) * cfg.avg_snr_e
            gamma_e = alpha_mu_sample(AlphaMuParams(cfg.alpha_e, L * cfg.mu_e, om), rng, n)
        else:
            gamma_e = alpha_mu_sample(AlphaMuParams(cfg.alpha_e, cfg.mu_e, cfg.avg_snr_e), rng, (n, L)).max(axis=1)
    else:
        link = cfg.eve_ris_link()
        if cfg.case is Case.COLLUDING:
            gamma_e = _ris_snr(fit_colluding_sum(link, L), rng, n)
        else:
            rounded = RisLinkParams(link.fit.rounded(), link.beta, link.avg_snr)
            gamma_e = _ris_snr(rounded, rng, (n, L)).max(axis=1)
    return gamma_d / gamma_i, gamma_e


def count_outages(gamma_d: np.ndarray, gamma_e: np.ndarray, psi: float) -> tuple[int, int]:
    """Number of ``(exact, lower-bound)`` outage events."""
    exact = int(np.count_nonzero(1.0 + gamma_d < psi * (1.0 + gamma_e)))
    lower = int(np.count_nonzero(gamma_d < psi * gamma_e))
    return exact, lower


def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval ``(centre, half_width)`` for ``k`` successes in ``n``."""
    p = k / n
    denom = 1.0 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return centre, half


def _estimate(k: int, n: int, mode: Mode, chunks: int, fidelity: Fidelity) -> SopEstimate:
    p = k / n
    _, half = wilson_interval(k, n)
    return SopEstimate(
        p,
        Method.MONTE_CARLO,
        half,
        f"mode={mode.value} fidelity={fidelity.value} outages={k} trials={n} chunks={chunks}",
        standard_error=math.sqrt(p * (1.0 - p) / n),
        trials=n,
    )


def estimate_both(
    cfg: SystemConfig,
    trials: int = 1_000_000,
    seed: int | None = 0,
    *,
    chunk: int = DEFAULT_CHUNK,
    fidelity: Fidelity | str = Fidelity.CHANNEL,
) -> dict[Mode, SopEstimate]:
    """Exact and lower-bound SOP from the same channel draws."""
    fidelity = Fidelity(fidelity)
    if trials < MIN_TRIALS:
        raise ParameterDomainError(f"trials must be >= {MIN_TRIALS}")
    n_chunks = -(-trials // chunk)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    psi = cfg.target.psi
    k_exact = k_lower = 0
    for i, ss in enumerate(streams):
        n = min(chunk, trials - i * chunk)
        rng = np.random.default_rng(ss)
        if fidelity is Fidelity.CHANNEL:
            gd, ge = realize_snrs(draw_sample(cfg, rng, n), cfg)
        else:
            gd, ge = sample_model_snrs(cfg, rng, n)
        e, lo = count_outages(gd, ge, psi)
        k_exact += e
        k_lower += lo
    return {
        Mode.EXACT: _estimate(k_exact, trials, Mode.EXACT, n_chunks, fidelity),
        Mode.LOWER_BOUND: _estimate(k_lower, trials, Mode.LOWER_BOUND, n_chunks, fidelity),
    }


def estimate_sop(
    cfg: SystemConfig,
    trials: int = 1_000_000,
    mode: Mode | str = Mode.LOWER_BOUND,
    seed: int | None = 0,
    *,
    chunk: int = DEFAULT_CHUNK,
    fidelity: Fidelity | str = Fidelity.CHANNEL,
) -> SopEstimate:
    """Empirical SOP with the Wilson half-width as ``uncertainty``."""
    return estimate_both(cfg, trials, seed, chunk=chunk, fidelity=fidelity)[Mode(mode)]
