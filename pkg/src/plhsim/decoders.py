"""Noncoherent header decoders.

All four receivers rank ModCod hypotheses by functions of |sum r_k c_k*|,
which is invariant to the unknown channel phase. They differ in how they
handle variable codeword length:

- standard: every ModCod gets a full-length codeword (fixed codebook), so
  plain |correlation| is fair.
- simple: correlates each hypothesis over its own length only; biased toward
  long codewords since |corr| grows with length even off-codeword.
- strategy 1: normalizes |corr|^2 by L^alpha to undo the length bias.
- strategy 2: adds the energy of the samples past the hypothesized header,
  weighted by beta/sigma^2, so short-header hypotheses get credit for the
  data tail they imply.

The batch entry points operate on (B, l_max) sample matrices; the
single-frame functions wrap them with B=1. Keeping one metric implementation
means the Monte Carlo engine and the public API cannot drift apart.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .modem_channel import ModulatedCodeword, pi2bpsk_map
from .plh_code import Bits, PlhCodebook

NOISE_VAR_FLOOR = 1e-12
_MIN_ESTIMATE_SAMPLES = 16

DecoderKind = Literal["standard", "simple", "strategy1", "strategy2"]
SimpleMode = Literal["own_length", "zero_padded"]
NoiseVarSource = Literal["known", "estimated"]


@dataclass(frozen=True)
class DecoderConfig:
    """A decoder choice plus its parameters, as used by the harness and CLI."""

    kind: DecoderKind
    alpha: float | None = None
    beta: float | None = None
    noise_var_source: NoiseVarSource = "known"
    simple_mode: SimpleMode = "own_length"

    def __post_init__(self):
        if self.kind not in ("standard", "simple", "strategy1", "strategy2"):
            raise ValueError(f"unknown decoder kind {self.kind!r}")
        if self.noise_var_source not in ("known", "estimated"):
            raise ValueError(f"unknown noise_var_source {self.noise_var_source!r}")
        if self.simple_mode not in ("own_length", "zero_padded"):
            raise ValueError(f"unknown simple_mode {self.simple_mode!r}")
        if self.kind == "strategy1":
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("strategy1 requires alpha > 0")
        elif self.alpha is not None:
            raise ValueError(f"alpha is not a parameter of {self.kind}")
        if self.kind == "strategy2":
            if self.beta is None or self.beta < 0:
                raise ValueError("strategy2 requires beta >= 0")
        elif self.beta is not None:
            raise ValueError(f"beta is not a parameter of {self.kind}")

    @property
    def param_name(self) -> str:
        return {"strategy1": "alpha", "strategy2": "beta"}.get(self.kind, "")

    @property
    def param_value(self) -> float | None:
        if self.kind == "strategy1":
            return self.alpha
        if self.kind == "strategy2":
            return self.beta
        return None


@dataclass(frozen=True)
class DecodeResult:
    modcod_id: int
    length_hat: int
    codeword_hat: Bits
    amplitude_hat: float
    metric: float

    def __post_init__(self):
        if not math.isfinite(self.metric) or not math.isfinite(self.amplitude_hat):
            raise ValueError("decode produced a non-finite metric or amplitude")


def correlate(r: np.ndarray, c: ModulatedCodeword, upto: int) -> complex:
    """sum_{k<upto} r_k conj(c_k)."""
    if upto < 1 or upto > min(len(r), len(c)):
        raise ValueError(f"upto={upto} outside 1..min(len(r), len(c))")
    return complex(np.vdot(c[:upto], r[:upto]))


class _CodebookTables:
    """Decoder-side view of a codebook: conjugated symbol matrices and lengths.

    conj is zero-padded past each word's own length, so R @ conj.T yields the
    own-length correlations for the whole book in one matmul. conj_zp holds
    the zero-bit-padded variant used by decode_simple's zero_padded mode.
    """

    def __init__(self, codebook: PlhCodebook):
        n, l_max = codebook.n, codebook.l_max
        self.l_max = l_max
        self.modcod_ids = np.array([e.modcod_id for e in codebook.entries])
        self.lengths = np.array([e.length for e in codebook.entries])
        self.bits = [e.bits for e in codebook.entries]
        self.conj = np.zeros((n, l_max), dtype=np.complex128)
        self.conj_zp = np.zeros((n, l_max), dtype=np.complex128)
        for i, e in enumerate(codebook.entries):
            self.conj[i, : e.length] = np.conj(pi2bpsk_map(e.bits))
            padded = np.zeros(l_max, dtype=np.uint8)
            padded[: e.length] = e.bits
            self.conj_zp[i] = np.conj(pi2bpsk_map(padded))


_TABLE_CACHE: "weakref.WeakKeyDictionary[PlhCodebook, _CodebookTables]" = (
    weakref.WeakKeyDictionary()
)


def codebook_tables(codebook: PlhCodebook) -> _CodebookTables:
    tables = _TABLE_CACHE.get(codebook)
    if tables is None:
        tables = _CodebookTables(codebook)
        _TABLE_CACHE[codebook] = tables
    return tables


def _check_frames(tables: _CodebookTables, frames: np.ndarray) -> np.ndarray:
    frames = np.asarray(frames, dtype=np.complex128)
    if frames.ndim != 2 or frames.shape[1] != tables.l_max:
        raise ValueError(f"frames must be (batch, {tables.l_max}) samples")
    return frames


def batch_correlations(tables: _CodebookTables, frames: np.ndarray) -> np.ndarray:
    """|own-length correlation| per frame and codebook entry, shape (B, N)."""
    return np.abs(_check_frames(tables, frames) @ tables.conj.T)


def batch_tail_energies(tables: _CodebookTables, frames: np.ndarray) -> np.ndarray:
    """sum_{k >= L_i} |r_k|^2 per frame and entry, shape (B, N)."""
    frames = _check_frames(tables, frames)
    cum = np.cumsum(np.abs(frames) ** 2, axis=1)
    return cum[:, -1:] - cum[:, tables.lengths - 1]


def estimate_noise_var_batch(frames: np.ndarray) -> np.ndarray:
    """Blind per-frame noise variance via second and fourth moments.

    For a constant-modulus-dominated frame, S = sqrt(max(2 M2^2 - M4, 0))
    estimates the signal power and (M2 - S)/2 the per-component noise
    variance; floored at NOISE_VAR_FLOOR to keep metric weights finite.
    """
    frames = np.asarray(frames, dtype=np.complex128)
    if frames.ndim != 2 or frames.shape[1] < _MIN_ESTIMATE_SAMPLES:
        raise ValueError(f"need at least {_MIN_ESTIMATE_SAMPLES} samples per frame")
    p = np.abs(frames) ** 2
    m2 = p.mean(axis=1)
    m4 = (p**2).mean(axis=1)
    s = np.sqrt(np.maximum(2.0 * m2**2 - m4, 0.0))
    return np.maximum((m2 - s) / 2.0, NOISE_VAR_FLOOR)


def estimate_noise_var(r: np.ndarray) -> float:
    r = np.asarray(r, dtype=np.complex128).ravel()
    if r.size < _MIN_ESTIMATE_SAMPLES:
        raise ValueError(f"need at least {_MIN_ESTIMATE_SAMPLES} samples")
    return float(estimate_noise_var_batch(r[None, :])[0])


def batch_metrics(
    tables: _CodebookTables,
    frames: np.ndarray,
    config: DecoderConfig,
    noise_var: float | np.ndarray | None = None,
) -> np.ndarray:
    """Metric matrix (B, N) for any decoder kind.

    For strategy2, noise_var may be a scalar (known at the receiver) or a
    per-frame vector; if omitted it is estimated blindly per frame.
    """
    if config.kind == "standard":
        if np.any(tables.lengths != tables.l_max):
            raise ValueError("standard decoder needs a fixed full-length codebook")
        return batch_correlations(tables, frames)
    if config.kind == "simple":
        if config.simple_mode == "zero_padded":
            return np.abs(_check_frames(tables, frames) @ tables.conj_zp.T)
        return batch_correlations(tables, frames)
    corr = batch_correlations(tables, frames)
    if config.kind == "strategy1":
        return corr**2 / tables.lengths.astype(np.float64) ** config.alpha
    # strategy2
    tails = batch_tail_energies(tables, frames)
    if noise_var is None:
        noise_var = estimate_noise_var_batch(frames)
    nv = np.asarray(noise_var, dtype=np.float64)
    if np.any(nv <= 0):
        raise ValueError("noise_var must be positive")
    return corr + (config.beta / nv).reshape(-1, 1) * tails


def _result(
    tables: _CodebookTables,
    frames: np.ndarray,
    kind: DecoderKind,
    metrics: np.ndarray,
    noise_var: float | np.ndarray | None,
    simple_mode: SimpleMode = "own_length",
) -> DecodeResult:
    idx = int(np.argmax(metrics[0]))
    length_hat = int(tables.lengths[idx])
    corr = float(batch_correlations(tables, frames)[0, idx])
    if kind == "standard":
        amp = corr / tables.l_max
    elif kind == "simple":
        window = tables.l_max if simple_mode == "zero_padded" else length_hat
        amp = float(metrics[0, idx]) / window
    elif kind == "strategy1":
        amp = corr / length_hat
    else:
        nv = estimate_noise_var_batch(frames) if noise_var is None else noise_var
        nv0 = float(np.asarray(nv, dtype=np.float64).ravel()[0])
        tail = float(batch_tail_energies(tables, frames)[0, idx])
        amp = (corr + tail / (8.0 * math.pi * nv0)) / tables.l_max
    return DecodeResult(
        modcod_id=int(tables.modcod_ids[idx]),
        length_hat=length_hat,
        codeword_hat=tables.bits[idx],
        amplitude_hat=amp,
        metric=float(metrics[0, idx]),
    )


def _decode_one(
    r: np.ndarray,
    codebook: PlhCodebook,
    config: DecoderConfig,
    noise_var: float | None = None,
) -> DecodeResult:
    tables = codebook_tables(codebook)
    frames = np.asarray(r, dtype=np.complex128).reshape(1, -1)
    metrics = batch_metrics(tables, frames, config, noise_var)
    return _result(tables, frames, config.kind, metrics, noise_var, config.simple_mode)


def decode_standard(r: np.ndarray, fixed_codebook: PlhCodebook) -> DecodeResult:
    """Max |correlation| over a codebook whose words all span the full frame."""
    return _decode_one(r, fixed_codebook, DecoderConfig(kind="standard"))


def decode_simple(
    r: np.ndarray, codebook: PlhCodebook, mode: SimpleMode = "own_length"
) -> DecodeResult:
    """Max unnormalized |correlation|, each hypothesis over its own window."""
    return _decode_one(r, codebook, DecoderConfig(kind="simple", simple_mode=mode))


def decode_strategy1(r: np.ndarray, codebook: PlhCodebook, alpha: float) -> DecodeResult:
    """Max |corr|^2 / L^alpha. alpha=0 degenerates to the simple decoder;
    allowed here for comparison runs even though configured runs keep it > 0."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    tables = codebook_tables(codebook)
    frames = np.asarray(r, dtype=np.complex128).reshape(1, -1)
    corr = batch_correlations(tables, frames)
    metrics = corr**2 / tables.lengths.astype(np.float64) ** alpha
    return _result(tables, frames, "strategy1", metrics, None)


def decode_strategy2(
    r: np.ndarray, codebook: PlhCodebook, beta: float, noise_var: float
) -> DecodeResult:
    """Max |corr| + (beta/sigma^2) * tail energy past the hypothesized header."""
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")
    return _decode_one(
        r, codebook, DecoderConfig(kind="strategy2", beta=beta), noise_var=noise_var
    )


def decode(
    r: np.ndarray,
    codebook: PlhCodebook,
    config: DecoderConfig,
    *,
    noise_var: float | None = None,
    fixed_codebook: PlhCodebook | None = None,
) -> DecodeResult:
    """Dispatch on config.kind; the single-frame twin of the batch engine."""
    if config.kind == "standard":
        if fixed_codebook is None:
            raise ValueError("standard decoding requires fixed_codebook")
        return decode_standard(r, fixed_codebook)
    if config.kind == "strategy2":
        if config.noise_var_source == "known":
            if noise_var is None:
                raise ValueError("noise_var_source='known' requires noise_var")
            return decode_strategy2(r, codebook, config.beta, noise_var)
        return _decode_one(r, codebook, config, noise_var=None)
    return _decode_one(r, codebook, config)
