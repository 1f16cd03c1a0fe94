"""Monte Carlo codeword-error-rate harness and analysis helpers.

Reproducibility contract: trial t of a run with master seed s is built from
a fixed block of 196 uniform doubles drawn from a counter-based stream
(Philox keyed by s, counter 49*t, 4 doubles per counter step). Every trial
owns its block regardless of how trials are batched or spread over threads,
so results are bit-identical for any batch size or thread count. Normals come
from Box-Muller on those uniforms because the library normal generator does
not consume a fixed number of draws per sample.

Per-trial block layout (all uniforms in [0, 1)):
  [0]        carrier phase, theta = 2 pi u
  [1]        amplitude, 1.0 fixed or 0.5 + 1.5 u when amp_random
  [2:66]     data symbol indices (first l_max - L slots used)
  [66:194]   64 Box-Muller pairs -> complex noise samples
  [194:196]  reserved
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .decoders import NOISE_VAR_FLOOR, DecoderConfig, batch_metrics, codebook_tables
from .modem_channel import data_constellation, pi2bpsk_map, snr_to_noise_var
from .plh_code import ModCodTable, PlhCodebook

TRIAL_DOUBLES = 196
_PHILOX_DOUBLES_PER_COUNTER = 4
TRIAL_COUNTER_STRIDE = TRIAL_DOUBLES // _PHILOX_DOUBLES_PER_COUNTER  # 49 blocks

# Pilot frames for blind noise-variance estimation live in a counter region
# far above any reachable data-trial index, on the same keyed stream.
_PILOT_COUNTER_BASE = 1 << 128
PILOT_FRAMES = 1024

DEFAULT_BATCH_SIZE = 8192

RESULTS_CSV_HEADER = (
    "modcod,decoder,param_name,param_value,esn0_db,trials,errors,cer,ci_lo,ci_hi,seed"
)


class BracketingError(RuntimeError):
    """The SNR search window does not straddle the target error rate."""


def wilson_interval(errors: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% at z=1.96)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= errors <= trials:
        raise ValueError("errors must lie in 0..trials")
    p = errors / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (p + z2n / 2.0) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials)) / denom
    # Wilson contains the point estimate by construction; min/max only clean
    # up float dust at p = 0 or 1 where the edge equals p exactly.
    return min(max(0.0, center - half), p), max(min(1.0, center + half), p)


@dataclass(frozen=True)
class CerEstimate:
    trials: int
    errors: int
    cer: float
    ci95_lo: float
    ci95_hi: float

    def __post_init__(self):
        if not 0 <= self.errors <= self.trials:
            raise ValueError("errors must lie in 0..trials")
        if not self.ci95_lo <= self.cer <= self.ci95_hi:
            raise ValueError("point estimate must lie inside its interval")

    @classmethod
    def from_counts(cls, errors: int, trials: int) -> "CerEstimate":
        lo, hi = wilson_interval(errors, trials)
        return cls(trials=trials, errors=errors, cer=errors / trials, ci95_lo=lo, ci95_hi=hi)


class TrialEngine:
    """Vectorized transmit+decode for one (ModCod, decoder, Es/N0) point.

    The standard decoder both transmits and decodes on the fixed full-length
    codebook; the variable-length decoders use the real codebook on both
    sides. Es/N0 is referenced to unit amplitude: noise stays at the nominal
    variance even when amp_random scatters the per-frame amplitude.
    """

    def __init__(
        self,
        codebook: PlhCodebook,
        table: ModCodTable,
        modcod_id: int,
        decoder: DecoderConfig,
        esn0_db: float,
        master_seed: int,
        *,
        amp_random: bool = False,
        fixed_codebook: PlhCodebook | None = None,
    ):
        if decoder.kind == "standard":
            if fixed_codebook is None:
                raise ValueError("standard decoding requires fixed_codebook")
            book = fixed_codebook
        else:
            book = codebook
        self.decoder = decoder
        self.master_seed = int(master_seed)
        self.amp_random = amp_random
        self.tables = codebook_tables(book)
        entry = book.entry(modcod_id)
        self.modcod_id = modcod_id
        self.l_max = book.l_max
        if self.l_max > 64:
            raise ValueError("trial layout reserves 64 data and 64 noise slots")
        self.length = entry.length
        self.header = pi2bpsk_map(entry.bits)
        mc = table.entry(modcod_id)
        self.m = mc.m
        self.constellation = data_constellation(mc.m)
        self.noise_var = snr_to_noise_var(esn0_db, 1.0)
        self.sigma = math.sqrt(self.noise_var)
        self._pilot_noise_var_cache: float | None = None
        if decoder.kind == "strategy2" and decoder.noise_var_source == "estimated":
            self._pilot_noise_var_cache = self.pilot_noise_var()

    def _uniforms(self, start_trial: int, count: int, counter_base: int = 0) -> np.ndarray:
        bitgen = np.random.Philox(
            key=self.master_seed, counter=counter_base + TRIAL_COUNTER_STRIDE * start_trial
        )
        return np.random.Generator(bitgen).random((count, TRIAL_DOUBLES))

    def frames(self, start_trial: int, count: int, counter_base: int = 0) -> np.ndarray:
        """Received frames for trials [start_trial, start_trial + count)."""
        u = self._uniforms(start_trial, count, counter_base)
        theta = 2.0 * np.pi * u[:, 0]
        if self.amp_random:
            amp = 0.5 + 1.5 * u[:, 1]
        else:
            amp = np.ones(count)
        c = np.empty((count, self.l_max), dtype=np.complex128)
        c[:, : self.length] = self.header
        delta = self.l_max - self.length
        if delta:
            idx = np.floor(u[:, 2 : 2 + delta] * self.m).astype(np.int64)
            c[:, self.length :] = self.constellation[idx]
        ua = u[:, 66 : 66 + 2 * self.l_max : 2]
        ub = u[:, 67 : 67 + 2 * self.l_max : 2]
        radius = self.sigma * np.sqrt(-2.0 * np.log1p(-ua))
        w = radius * np.exp(2j * np.pi * ub)
        return (amp[:, None] * c + w) * np.exp(1j * theta)[:, None]

    def pilot_noise_var(self) -> float:
        """Blind long-run noise-variance estimate from a reserved pilot block.

        Pools second/fourth moments over PILOT_FRAMES frames drawn from the
        pilot counter region of the same stream (no truth enters; only
        received samples). Pooling mimics a receiver tracking the variance
        over many frames: the per-frame moment estimator's 30-40% spread
        would otherwise randomly inflate the beta/sigma^2 tail weight and
        dominate the full-length ModCods' error rate.
        """
        pilots = self.frames(0, PILOT_FRAMES, counter_base=_PILOT_COUNTER_BASE)
        p = np.abs(pilots) ** 2
        m2 = float(p.mean())
        m4 = float((p**2).mean())
        s = math.sqrt(max(2.0 * m2 * m2 - m4, 0.0))
        return max((m2 - s) / 2.0, NOISE_VAR_FLOOR)

    def decode_ids(self, frames: np.ndarray) -> np.ndarray:
        """Decoded ModCod id per frame (first index wins metric ties)."""
        if self.decoder.kind == "strategy2":
            if self.decoder.noise_var_source == "known":
                nv = self.noise_var
            else:
                nv = self._pilot_noise_var_cache
            metrics = batch_metrics(self.tables, frames, self.decoder, nv)
        else:
            metrics = batch_metrics(self.tables, frames, self.decoder)
        return self.tables.modcod_ids[np.argmax(metrics, axis=1)]

    def count_errors(self, start_trial: int, count: int) -> int:
        decoded = self.decode_ids(self.frames(start_trial, count))
        return int(np.count_nonzero(decoded != self.modcod_id))


def run_cer(
    codebook: PlhCodebook,
    table: ModCodTable,
    modcod_id: int,
    decoder: DecoderConfig,
    esn0_db: float,
    trials: int,
    master_seed: int,
    *,
    amp_random: bool = False,
    fixed_codebook: PlhCodebook | None = None,
    batch_size: int = DEFAULT_BATCH_SIZE,
    threads: int = 1,
) -> CerEstimate:
    """Estimate the codeword error rate at one operating point.

    An error is any decoded ModCod id different from the transmitted one.
    Identical (seed, trials) pairs give identical counts for every batch_size
    and thread count; growing `trials` extends the same trial sequence.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    engine = TrialEngine(
        codebook,
        table,
        modcod_id,
        decoder,
        esn0_db,
        master_seed,
        amp_random=amp_random,
        fixed_codebook=fixed_codebook,
    )
    spans = [
        (start, min(batch_size, trials - start)) for start in range(0, trials, batch_size)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            errors = sum(pool.map(lambda s: engine.count_errors(*s), spans))
    else:
        errors = sum(engine.count_errors(*s) for s in spans)
    return CerEstimate.from_counts(errors, trials)


# ---------------------------------------------------------------------------
# sweeps and the results CSV


@dataclass(frozen=True)
class SweepPoint:
    modcod: int
    decoder: str
    param_name: str
    param_value: float | None
    esn0_db: float
    estimate: CerEstimate
    seed: int

    def csv_row(self) -> str:
        pv = "" if self.param_value is None else f"{self.param_value:.10g}"
        e = self.estimate
        return (
            f"{self.modcod},{self.decoder},{self.param_name},{pv},"
            f"{self.esn0_db:.10g},{e.trials},{e.errors},{e.cer:.10g},"
            f"{e.ci95_lo:.10g},{e.ci95_hi:.10g},{self.seed}"
        )


def _point_seed(master_seed: int, *indices: int) -> int:
    ss = np.random.SeedSequence((int(master_seed), *[int(i) for i in indices]))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _sweep_point_seed(
    master_seed: int, modcod_id: int, dec: DecoderConfig, esn0_db: float
) -> int:
    # Seed from the point's identity, not its grid position, so a point's
    # result survives reordering or subsetting of the sweep grids. The float
    # fields use the same .10g rendering as the results CSV.
    pv = "" if dec.param_value is None else f"{dec.param_value:.10g}"
    token = "|".join(
        (
            str(int(modcod_id)),
            dec.kind,
            dec.param_name or "",
            pv,
            dec.noise_var_source,
            dec.simple_mode,
            f"{esn0_db:.10g}",
        )
    )
    digest = hashlib.blake2b(token.encode(), digest_size=16).digest()
    words = (int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))
    return _point_seed(master_seed, *words)


def sweep(
    codebook: PlhCodebook,
    table: ModCodTable,
    modcod_ids: Sequence[int],
    decoders: Sequence[DecoderConfig],
    esn0_grid: Sequence[float],
    trials: int,
    master_seed: int,
    *,
    amp_random: bool = False,
    fixed_codebook: PlhCodebook | None = None,
    threads: int = 1,
) -> list[SweepPoint]:
    """CER over the cross product of ModCods, decoder configs, and Es/N0.

    Each point gets its own child seed derived from the master seed and the
    point's identity (ModCod, decoder settings, Es/N0), so rearranging or
    subsetting the grids never changes any individual point's result.
    """
    points: list[SweepPoint] = []
    for modcod_id in modcod_ids:
        for dec in decoders:
            for esn0 in esn0_grid:
                seed = _sweep_point_seed(master_seed, modcod_id, dec, esn0)
                est = run_cer(
                    codebook,
                    table,
                    modcod_id,
                    dec,
                    esn0,
                    trials,
                    seed,
                    amp_random=amp_random,
                    fixed_codebook=fixed_codebook,
                    threads=threads,
                )
                points.append(
                    SweepPoint(
                        modcod=modcod_id,
                        decoder=dec.kind,
                        param_name=dec.param_name,
                        param_value=dec.param_value,
                        esn0_db=esn0,
                        estimate=est,
                        seed=seed,
                    )
                )
    return points


def write_results_csv(points: Sequence[SweepPoint], path: str | Path) -> None:
    lines = [RESULTS_CSV_HEADER, *[p.csv_row() for p in points]]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# SNR at a target error rate


def find_snr_at_cer(
    codebook: PlhCodebook,
    table: ModCodTable,
    modcod_id: int,
    decoder: DecoderConfig,
    target_cer: float,
    window_db: tuple[float, float],
    master_seed: int,
    *,
    resolution_db: float = 0.05,
    trials_start: int = 10_000,
    trials_cap: int = 1_000_000,
    amp_random: bool = False,
    fixed_codebook: PlhCodebook | None = None,
    threads: int = 1,
) -> float:
    """Bisect for the Es/N0 where the CER crosses target_cer.

    Each probe starts at trials_start trials and quadruples while its Wilson
    interval still straddles the target, up to trials_cap; a probe that still
    straddles at the cap is classified by its point estimate. Probe seeds are
    derived from the master seed and the probed SNR (milli-dB), so the search
    path cannot decorrelate the estimates. Raises BracketingError unless the
    window's low edge is above the target rate and the high edge below.
    """
    if not 0.0 < target_cer < 1.0:
        raise ValueError("target_cer must be in (0, 1)")
    lo, hi = window_db
    if not lo < hi:
        raise ValueError("window_db must satisfy lo < hi")
    if resolution_db <= 0:
        raise ValueError("resolution_db must be positive")

    def probe(esn0: float) -> tuple[bool, CerEstimate]:
        """True if the CER at esn0 is above target."""
        seed = _point_seed(master_seed, 10_000_000 + int(round(esn0 * 1000)))
        trials = trials_start
        while True:
            est = run_cer(
                codebook,
                table,
                modcod_id,
                decoder,
                esn0,
                trials,
                seed,
                amp_random=amp_random,
                fixed_codebook=fixed_codebook,
                threads=threads,
            )
            if est.ci95_lo > target_cer:
                return True, est
            if est.ci95_hi < target_cer:
                return False, est
            if trials >= trials_cap:
                return est.cer >= target_cer, est
            trials = min(trials * 4, trials_cap)

    above_lo, est_lo = probe(lo)
    if not above_lo:
        raise BracketingError(
            f"CER {est_lo.cer:.3g} at window low edge {lo:g} dB is not above target {target_cer:g}"
        )
    above_hi, est_hi = probe(hi)
    if above_hi:
        raise BracketingError(
            f"CER {est_hi.cer:.3g} at window high edge {hi:g} dB is not below target {target_cer:g}"
        )
    while hi - lo > resolution_db:
        mid = 0.5 * (lo + hi)
        above, _ = probe(mid)
        if above:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# SNR gap to the FEC operating threshold


@dataclass(frozen=True)
class GapResult:
    modcod_id: int
    decoder: DecoderConfig
    target_cer: float
    snr_at_target_db: float
    ldpc_threshold_db: float

    @property
    def gap_db(self) -> float:
        return self.snr_at_target_db - self.ldpc_threshold_db

    def json_dict(self) -> dict:
        return {
            "modcod": self.modcod_id,
            "decoder": self.decoder.kind,
            "param_name": self.decoder.param_name,
            "param_value": self.decoder.param_value,
            "noise_var_source": self.decoder.noise_var_source,
            "target_cer": self.target_cer,
            "snr_at_target_db": round(self.snr_at_target_db, 6),
            "ldpc_threshold_db": self.ldpc_threshold_db,
            "gap_db": round(self.gap_db, 6),
        }


def gap_analysis(
    codebook: PlhCodebook,
    table: ModCodTable,
    modcod_ids: Sequence[int],
    decoder: DecoderConfig,
    target_cer: float,
    master_seed: int,
    *,
    window_rel_db: tuple[float, float] = (-9.0, 1.5),
    resolution_db: float = 0.05,
    trials_start: int = 10_000,
    trials_cap: int = 1_000_000,
    amp_random: bool = False,
    fixed_codebook: PlhCodebook | None = None,
    threads: int = 1,
) -> list[GapResult]:
    """SNR margin between header decoding and FEC operation, per ModCod.

    A negative gap means the header already meets target_cer below the FEC
    threshold, i.e. the header is not the bottleneck. The search window for
    each ModCod is its threshold shifted by window_rel_db.
    """
    results = []
    for modcod_id in modcod_ids:
        thr = table.entry(modcod_id).threshold_db
        snr = find_snr_at_cer(
            codebook,
            table,
            modcod_id,
            decoder,
            target_cer,
            (thr + window_rel_db[0], thr + window_rel_db[1]),
            master_seed,
            resolution_db=resolution_db,
            trials_start=trials_start,
            trials_cap=trials_cap,
            amp_random=amp_random,
            fixed_codebook=fixed_codebook,
            threads=threads,
        )
        results.append(
            GapResult(
                modcod_id=modcod_id,
                decoder=decoder,
                target_cer=target_cer,
                snr_at_target_db=snr,
                ldpc_threshold_db=thr,
            )
        )
    return results


def write_gap_json(results: Sequence[GapResult], path: str | Path) -> None:
    payload = [r.json_dict() for r in results]
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# analytic per-frame operation counts


@dataclass(frozen=True)
class OpCounts:
    additions: int
    multiplications: int
    lut_accesses: int

    def json_dict(self) -> dict:
        return {
            "additions": self.additions,
            "multiplications": self.multiplications,
            "lut_accesses": self.lut_accesses,
        }


@dataclass(frozen=True)
class ComplexityReport:
    l_max: int
    l_bar: int
    standard: OpCounts
    strategy1: OpCounts
    strategy2: OpCounts

    def json_dict(self) -> dict:
        return {
            "l_max": self.l_max,
            "l_bar": self.l_bar,
            "standard": self.standard.json_dict(),
            "strategy1": self.strategy1.json_dict(),
            "strategy2": self.strategy2.json_dict(),
        }

    def text_table(self) -> str:
        rows = [
            ("standard", self.standard),
            ("strategy1", self.strategy1),
            ("strategy2", self.strategy2),
        ]
        lines = [f"{'decoder':<10} {'additions':>9} {'multiplications':>15} {'lut_accesses':>12}"]
        for name, ops in rows:
            lines.append(
                f"{name:<10} {ops.additions:>9} {ops.multiplications:>15} {ops.lut_accesses:>12}"
            )
        return "\n".join(lines)


def complexity_report(codebook: PlhCodebook) -> ComplexityReport:
    """Per-codeword metric cost of each decoder, in real operations.

    Costs follow the usual accounting for one metric evaluation: a length-L
    complex correlation against unit-modulus symbols costs 2L - 1 real
    additions, |.| costs 2 multiplications and a square-root lookup. The
    simple/strategy1 decoders average over the codeword-length distribution
    (l_bar, the mean length rounded up); strategy2 always touches all l_max
    samples but reuses the running tail energy, trading additions for the
    2(l_max - l_bar) multiplications of the weighted tail term.
    """
    l_max = codebook.l_max
    l_bar = math.ceil(codebook.expected_length())
    return ComplexityReport(
        l_max=l_max,
        l_bar=l_bar,
        standard=OpCounts(2 * l_max - 1, 2, 1),
        strategy1=OpCounts(2 * l_bar - 1, 2, 0),
        strategy2=OpCounts(2 * l_max - 4, 2 * (l_max - l_bar), 1),
    )
