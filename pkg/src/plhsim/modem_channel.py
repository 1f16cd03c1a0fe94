"""Header modulation, data-symbol fill, and the noncoherent AWGN channel.

Frames are always l_max samples long: a pi/2-BPSK header of the ModCod's own
length followed by random data symbols from that ModCod's constellation. The
channel applies an unknown amplitude and a phase rotation that is constant
over the frame, plus circular complex AWGN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .plh_code import Bits, ModCodTable, PlhCodebook, as_bits

ModulatedCodeword = NDArray[np.complex128]

# Default APSK ring-radius ratios (outer/innermost), keyed by order.
APSK_RING_RATIOS: dict[int, tuple[float, ...]] = {
    16: (3.15,),
    32: (2.84, 5.27),
}


def pi2bpsk_map(bits: Bits) -> ModulatedCodeword:
    """pi/2-BPSK: {0,1} -> {+1,-1}, odd-indexed symbols rotated onto the
    imaginary axis. Values are exact (+/-1, +/-1j), not trig approximations."""
    bits = as_bits(bits)
    signs = 1.0 - 2.0 * bits.astype(np.float64)
    out = signs.astype(np.complex128)
    out[1::2] *= 1j
    return out


def _ring_sizes(m: int) -> list[int]:
    # Standard layouts for the common APSK orders; otherwise 4, 12, 20, ...
    # rings with the outermost absorbing any remainder.
    if m == 16:
        return [4, 12]
    if m == 32:
        return [4, 12, 16]
    sizes = []
    total = 0
    n = 4
    while total + n <= m:
        sizes.append(n)
        total += n
        n += 8
    if not sizes:
        raise ValueError(f"order {m} too small for ring layout")
    sizes[-1] += m - total
    return sizes


def data_constellation(m: int, ring_ratios: tuple[float, ...] | None = None) -> np.ndarray:
    """Unit-mean-energy constellation of order m.

    m=2 is BPSK, 4/8 are PSK with a pi/m offset, 16/32 are APSK with the
    usual 4+12(+16) rings, and larger orders use generic 4+12+20+... rings
    with integer-spaced radii. Ring ratios are relative to the innermost
    ring and may be overridden.
    """
    if m < 2 or (m & (m - 1)) != 0:
        raise ValueError("m must be a power of two >= 2")
    if m == 2:
        return np.array([1.0 + 0j, -1.0 + 0j])
    if m in (4, 8):
        k = np.arange(m)
        return np.exp(1j * (np.pi / m + 2 * np.pi * k / m))
    sizes = _ring_sizes(m)
    if ring_ratios is None:
        ring_ratios = APSK_RING_RATIOS.get(m, tuple(float(i) for i in range(2, len(sizes) + 1)))
    if len(ring_ratios) != len(sizes) - 1:
        raise ValueError(f"order {m} needs {len(sizes) - 1} ring ratios, got {len(ring_ratios)}")
    radii = np.array([1.0, *ring_ratios])
    if np.any(np.diff(radii) <= 0):
        raise ValueError("ring ratios must be increasing")
    points = []
    for r, n in zip(radii, sizes):
        k = np.arange(n)
        points.append(r * np.exp(1j * (np.pi / n + 2 * np.pi * k / n)))
    const = np.concatenate(points)
    return const / math.sqrt(float(np.mean(np.abs(const) ** 2)))


def snr_to_noise_var(esn0_db: float, amplitude: float) -> float:
    """Per-component noise variance for a target Es/N0 in dB.

    Es = amplitude^2 per symbol and N0 = 2 sigma^2, so
    sigma^2 = amplitude^2 / (2 * 10^(esn0_db/10)).
    """
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    return amplitude**2 / (2.0 * 10.0 ** (esn0_db / 10.0))


@dataclass(frozen=True)
class ChannelParams:
    """Unknown-at-the-receiver channel state for one frame."""

    amplitude: float
    phase: float
    noise_var: float

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError("amplitude must be positive")
        if self.noise_var < 0:
            raise ValueError("noise_var must be >= 0")
        object.__setattr__(self, "phase", float(self.phase) % (2.0 * math.pi))


@dataclass(frozen=True)
class TransmitTruth:
    modcod_id: int
    length: int
    params: ChannelParams


@dataclass(frozen=True)
class ReceivedFrame:
    samples: np.ndarray
    truth: TransmitTruth


def transmit(
    codebook: PlhCodebook,
    table: ModCodTable,
    modcod_id: int,
    params: ChannelParams,
    rng: np.random.Generator,
) -> ReceivedFrame:
    """One received frame: r = (A c + w) e^{j theta}.

    c is the pi/2-BPSK header followed by uniform data symbols drawn from the
    ModCod's constellation; w is circular complex AWGN with per-component
    variance noise_var. Draw order is fixed (data indices, then noise real
    rows, then imaginary) so that replaying the rng with a different phase
    yields the exact rotated frame. Rotating the noise with the signal leaves
    the noise law unchanged.
    """
    entry = codebook.entry(modcod_id)
    mc = table.entry(modcod_id)
    l_max = codebook.l_max
    const = data_constellation(mc.m)
    c = np.empty(l_max, dtype=np.complex128)
    c[: entry.length] = pi2bpsk_map(entry.bits)
    delta = l_max - entry.length
    if delta:
        c[entry.length :] = const[rng.integers(0, mc.m, size=delta)]
    noise = rng.standard_normal((2, l_max))
    w = math.sqrt(params.noise_var) * (noise[0] + 1j * noise[1])
    r = (params.amplitude * c + w) * np.exp(1j * params.phase)
    return ReceivedFrame(
        samples=r,
        truth=TransmitTruth(modcod_id=modcod_id, length=entry.length, params=params),
    )
