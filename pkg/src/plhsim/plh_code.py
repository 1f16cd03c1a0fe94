"""Variable-length physical-layer header codes.

Greedy generator-matrix construction for binary codes whose codewords stay
separable under noncoherent (phase-unaware) detection, plus the codebook and
ModCod bookkeeping that the simulator and decoders consume.

The noncoherent distance between two words is min(d_H, V - d_H): a receiver
that only sees |correlation| cannot tell a codeword from its complement, so
complements are distance zero no matter how far apart they are in Hamming
terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np
from numpy.typing import NDArray
from scipy.special import erfc

Bits = NDArray[np.uint8]

# Seed for the shipped header-code designs. Changing it changes every frozen
# distance below, so treat it as part of the artifact.
DEFAULT_DESIGN_SEED = 7

CODEBOOK_MAGIC = "# plh-codebook v1"
GENMATRIX_MAGIC = "# plh-genmatrix v1"
MODCOD_CSV_HEADER = "modcod_id,m,threshold_db,plh_length,synthetic"


class CodeDesignError(RuntimeError):
    """Raised when the greedy search cannot reach the requested distance."""


# ---------------------------------------------------------------------------
# bit packing helpers


def as_bits(values: Iterable[int] | np.ndarray) -> Bits:
    """Coerce a 0/1 sequence to a flat uint8 array, rejecting anything else."""
    arr = np.asarray(values, dtype=np.uint8).ravel()
    if arr.size == 0:
        raise ValueError("empty bit vector")
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bit vector entries must be 0 or 1")
    return arr


def bits_from_int(value: int, width: int) -> Bits:
    """MSB-first binary expansion of `value` into `width` bits."""
    if width <= 0:
        raise ValueError("width must be positive")
    if value < 0 or value >= (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_hex(bits: Bits) -> str:
    """Pack bits MSB-first into a left-aligned hex string of ceil(L/4) digits.

    Trailing pad bits inside the last digit are zero.
    """
    bits = as_bits(bits)
    n_digits = -(-bits.size // 4)
    padded = np.zeros(4 * n_digits, dtype=np.uint8)
    padded[: bits.size] = bits
    digits = padded.reshape(-1, 4) @ np.array([8, 4, 2, 1], dtype=np.uint8)
    return "".join(f"{d:x}" for d in digits)


def hex_to_bits(text: str, length: int) -> Bits:
    """Inverse of bits_to_hex for a known codeword length."""
    if length <= 0:
        raise ValueError("length must be positive")
    n_digits = -(-length // 4)
    if len(text) != n_digits:
        raise ValueError(f"expected {n_digits} hex digits for length {length}, got {len(text)}")
    value = int(text, 16)
    full = bits_from_int(value, 4 * n_digits)
    if np.any(full[length:]):
        raise ValueError("nonzero pad bits in packed codeword")
    return full[:length]


# ---------------------------------------------------------------------------
# distances


def hamming_distance(a: Bits, b: Bits) -> int:
    a = as_bits(a)
    b = as_bits(b)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return int(np.count_nonzero(a != b))


def noncoherent_distance(a: Bits, b: Bits) -> int:
    """min(d_H(a, b), V - d_H(a, b)): complements collapse to distance 0."""
    a = as_bits(a)
    d = hamming_distance(a, b)
    return min(d, a.size - d)


def code_min_distance(codewords: Iterable[Bits], mode: str = "noncoherent") -> int:
    """Minimum pairwise distance over a codeword set, exhaustively.

    All words must share one length; mode is "noncoherent" or "hamming".
    """
    words = [as_bits(w) for w in codewords]
    if len(words) < 2:
        raise ValueError("need at least two codewords")
    if mode not in ("noncoherent", "hamming"):
        raise ValueError(f"unknown mode {mode!r}")
    sizes = {w.size for w in words}
    if len(sizes) != 1:
        raise ValueError("codewords must share one length")
    dist = noncoherent_distance if mode == "noncoherent" else hamming_distance
    best = words[0].size + 1
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            best = min(best, dist(words[i], words[j]))
    return best


# ---------------------------------------------------------------------------
# distance target from the union bound


def error_bound(k: int, dmin: int, esn0_db: float, b_factor: float = 1.0) -> float:
    """Union bound on codeword error for a 2^k-word code of distance dmin.

    P_E <= (2^k - 1) * (1/2) * erfc(sqrt(B * dmin * Es/N0)); B is 1 for BPSK
    headers and 1/2 for QPSK ones.
    """
    if k < 1 or dmin < 0:
        raise ValueError("k must be >= 1 and dmin >= 0")
    if b_factor <= 0:
        raise ValueError("b_factor must be positive")
    esn0 = 10.0 ** (esn0_db / 10.0)
    return ((1 << k) - 1) * 0.5 * erfc(math.sqrt(b_factor * dmin * esn0))


def required_dmin(k: int, target_cer: float, esn0_db: float, b_factor: float = 1.0) -> int:
    """Smallest dmin whose union bound meets target_cer at the given Es/N0."""
    if not 0.0 < target_cer < 1.0:
        raise ValueError("target_cer must be in (0, 1)")
    d = 1
    while error_bound(k, d, esn0_db, b_factor) > target_cer:
        d += 1
        if d > 100_000:
            raise ValueError("no attainable dmin below 100000; check inputs")
    return d


# ---------------------------------------------------------------------------
# generator matrices


def _gf2_rank(rows: np.ndarray) -> int:
    m = rows.copy().astype(np.uint8)
    rank = 0
    n_rows, n_cols = m.shape
    col = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(n_rows):
            if r != rank and m[r, col]:
                m[r] ^= m[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


@dataclass(frozen=True)
class GeneratorMatrix:
    """K x V binary generator matrix with distinct columns and full row rank."""

    k: int
    v: int
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.uint8)
        object.__setattr__(self, "rows", rows)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if rows.shape != (self.k, self.v):
            raise ValueError(f"rows shape {rows.shape} != ({self.k}, {self.v})")
        if not np.all((rows == 0) | (rows == 1)):
            raise ValueError("matrix entries must be 0 or 1")
        if self.v < self.k:
            raise ValueError("v must be >= k")
        cols = {tuple(rows[:, j]) for j in range(self.v)}
        if len(cols) != self.v:
            raise ValueError("columns must be distinct")
        if _gf2_rank(rows) != self.k:
            raise ValueError("rows must be linearly independent over GF(2)")

    def column_ints(self) -> list[int]:
        """Columns as MSB-first integers (row 0 is the MSB)."""
        weights = 1 << np.arange(self.k - 1, -1, -1)
        return [int(w) for w in weights @ self.rows]


def encode(g: GeneratorMatrix, message: Bits) -> Bits:
    """message (k bits) times G over GF(2), yielding a v-bit codeword."""
    message = as_bits(message)
    if message.size != g.k:
        raise ValueError(f"message length {message.size} != k={g.k}")
    return ((message.astype(np.int64) @ g.rows) % 2).astype(np.uint8)


@dataclass(frozen=True)
class CodeDesignSpec:
    """Inputs for the target-stopping greedy construction."""

    k: int
    target_dmin: int
    max_length: int = 512
    seed: int = DEFAULT_DESIGN_SEED

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.target_dmin < 1:
            raise ValueError("target_dmin must be >= 1")
        if self.max_length < self.k:
            raise ValueError("max_length must be >= k")


def _inner_product_table(k: int) -> np.ndarray:
    """ip[m, c] = parity(popcount(m & c)) for messages m >= 1 and all columns c.

    Row index is m - 1. Appending column c to the matrix adds ip[m-1, c] to
    the Hamming weight of message m's codeword, which is all the greedy needs.
    """
    msgs = np.arange(1, 1 << k, dtype=np.uint32)[:, None]
    cols = np.arange(1 << k, dtype=np.uint32)[None, :]
    return (np.bitwise_count(msgs & cols) & 1).astype(np.int32)


def _columns_to_matrix(k: int, columns: list[int]) -> GeneratorMatrix:
    rows = np.zeros((k, len(columns)), dtype=np.uint8)
    for j, c in enumerate(columns):
        for i in range(k):
            rows[i, j] = (c >> (k - 1 - i)) & 1
    return GeneratorMatrix(k=k, v=len(columns), rows=rows)


def _greedy_columns(
    k: int,
    seed: int,
    stop: "callable",
) -> tuple[list[int], int]:
    """Grow columns greedily, maximizing noncoherent d_min at every step.

    Starts from the K identity columns so the rank invariant holds by
    construction. Candidate columns are all 2^k patterns (the all-zero column
    included: it raises d_min whenever the complement term V - d_H binds) not
    yet used. Ties are broken uniformly at random with the given seed.
    `stop(v, dmin)` ends the loop; returns (columns, dmin).
    """
    rng = np.random.default_rng(seed)
    ip = _inner_product_table(k)
    columns = [1 << (k - 1 - i) for i in range(k)]
    used = set(columns)
    # Hamming weight of every nonzero message's codeword under current columns.
    w = ip[:, columns].sum(axis=1)
    v = k
    dmin = int(np.minimum(w, v - w).min())
    while not stop(v, dmin):
        cands = np.array([c for c in range(1 << k) if c not in used], dtype=np.int64)
        if cands.size == 0:
            break
        new_w = w[:, None] + ip[:, cands]
        cand_d = np.minimum(new_w, (v + 1) - new_w).min(axis=0)
        best = int(cand_d.max())
        pool = cands[cand_d == best]
        pick = int(pool[rng.integers(pool.size)])
        columns.append(pick)
        used.add(pick)
        w = w + ip[:, pick]
        v += 1
        dmin = best
    return columns, dmin


def design_code(spec: CodeDesignSpec) -> GeneratorMatrix:
    """Shortest greedy code of noncoherent d_min >= spec.target_dmin.

    Raises CodeDesignError if the target is still unmet when the length cap
    or the 2^k distinct-column supply runs out.
    """
    cap = min(spec.max_length, 1 << spec.k)
    columns, dmin = _greedy_columns(
        spec.k, spec.seed, stop=lambda v, d: d >= spec.target_dmin or v >= cap
    )
    if dmin < spec.target_dmin:
        raise CodeDesignError(
            f"reached v={len(columns)} with noncoherent dmin={dmin} < target {spec.target_dmin}"
        )
    return _columns_to_matrix(spec.k, columns)


def design_fixed_length(k: int, length: int, seed: int = DEFAULT_DESIGN_SEED) -> tuple[GeneratorMatrix, int]:
    """Greedy code of exactly `length` columns; returns (matrix, achieved dmin)."""
    if length < k:
        raise ValueError("length must be >= k")
    if length > (1 << k):
        raise ValueError(f"length {length} exceeds the 2^{k} distinct-column supply")
    columns, dmin = _greedy_columns(k, seed, stop=lambda v, d: v >= length)
    return _columns_to_matrix(k, columns), dmin


# ---------------------------------------------------------------------------
# ModCod table


@dataclass(frozen=True)
class ModCodEntry:
    modcod_id: int
    m: int
    threshold_db: float
    plh_length: int
    synthetic: bool = False

    def __post_init__(self):
        if self.modcod_id < 1:
            raise ValueError("modcod_id must be >= 1")
        if self.m < 2 or (self.m & (self.m - 1)) != 0:
            raise ValueError("constellation order m must be a power of two >= 2")
        if self.plh_length < 1:
            raise ValueError("plh_length must be >= 1")


@dataclass(frozen=True)
class ModCodTable:
    """Per-ModCod operating data: data order M, FEC threshold, header length."""

    entries: tuple[ModCodEntry, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("table must not be empty")
        ids = [e.modcod_id for e in entries]
        if ids != list(range(1, len(entries) + 1)):
            raise ValueError("modcod ids must be 1..N in order")

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, modcod_id: int) -> ModCodEntry:
        if not 1 <= modcod_id <= self.n:
            raise KeyError(f"modcod_id {modcod_id} outside 1..{self.n}")
        return self.entries[modcod_id - 1]

    def lengths(self) -> list[int]:
        """Distinct header lengths, ascending."""
        return sorted({e.plh_length for e in self.entries})

    def min_threshold(self, plh_length: int) -> float:
        """Lowest FEC threshold among ModCods sharing this header length."""
        vals = [e.threshold_db for e in self.entries if e.plh_length == plh_length]
        if not vals:
            raise KeyError(f"no ModCod uses header length {plh_length}")
        return min(vals)


def default_modcod_table() -> ModCodTable:
    """39-entry table: four anchored ModCods plus synthetic fill.

    Anchors: id 1 (QPSK, -2.85 dB, 64-bit header), 2 (QPSK, -2.03, 58),
    3 (QPSK, 0.22, 48), 6 (8PSK, 5.13, 26). Ids 4-5 fill the 48-bit class and
    7-39 the 26-bit class with evenly spaced thresholds and order ramping by
    threshold; those are marked synthetic.
    """
    entries: list[ModCodEntry] = [
        ModCodEntry(1, 4, -2.85, 64),
        ModCodEntry(2, 4, -2.03, 58),
        ModCodEntry(3, 4, 0.22, 48),
    ]
    mid48 = np.linspace(0.22, 4.73, 4)[1:3]
    for i, t in enumerate(mid48):
        entries.append(ModCodEntry(4 + i, 4, round(float(t), 2), 48, synthetic=True))
    entries.append(ModCodEntry(6, 8, 5.13, 26))
    tail = np.linspace(5.13, 19.57, 34)[1:]
    for i, t in enumerate(tail):
        t = round(float(t), 2)
        if t < 9.0:
            m = 8
        elif t < 11.5:
            m = 16
        elif t < 13.5:
            m = 32
        elif t < 16.0:
            m = 64
        else:
            m = 128
        entries.append(ModCodEntry(7 + i, m, t, 26, synthetic=True))
    return ModCodTable(entries=tuple(entries))


# ---------------------------------------------------------------------------
# codebooks


@dataclass(frozen=True)
class CodebookEntry:
    modcod_id: int
    length: int
    bits: Bits

    def __post_init__(self):
        object.__setattr__(self, "bits", as_bits(self.bits))
        if self.bits.size != self.length:
            raise ValueError(f"bits length {self.bits.size} != declared {self.length}")


@dataclass(eq=False)
class PlhCodebook:
    """Per-ModCod header codewords plus the length distribution they induce.

    Entries are kept sorted by modcod_id; counts/probs are keyed by length.
    Identity-hashed (eq=False) so decoders can cache derived tables per
    codebook object.
    """

    entries: tuple[CodebookEntry, ...]
    n: int = field(init=False)
    lengths: tuple[int, ...] = field(init=False)
    counts: dict[int, int] = field(init=False)
    probs: dict[int, float] = field(init=False)

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: e.modcod_id))
        if not entries:
            raise ValueError("codebook must not be empty")
        ids = [e.modcod_id for e in entries]
        if ids != list(range(1, len(entries) + 1)):
            raise ValueError("codebook must cover modcod ids 1..N exactly")
        self.entries = entries
        self.n = len(entries)
        lengths = sorted({e.length for e in entries})
        self.lengths = tuple(lengths)
        self.counts = {L: sum(1 for e in entries if e.length == L) for L in lengths}
        self.probs = {L: self.counts[L] / self.n for L in lengths}
        self._check_distances()

    def _check_distances(self):
        # Words of equal length must stay separable under |correlation|:
        # reject duplicate or complementary pairs within a length class.
        for L in self.lengths:
            words = [e.bits for e in self.entries if e.length == L]
            if len(words) > 1 and code_min_distance(words, mode="noncoherent") < 1:
                raise ValueError(
                    f"length-{L} class contains a duplicate or complement codeword pair"
                )

    @property
    def l_max(self) -> int:
        return self.lengths[-1]

    def entry(self, modcod_id: int) -> CodebookEntry:
        if not 1 <= modcod_id <= self.n:
            raise KeyError(f"modcod_id {modcod_id} outside 1..{self.n}")
        return self.entries[modcod_id - 1]

    def expected_length(self) -> float:
        """Mean header length under a uniform ModCod prior."""
        return sum(self.probs[L] * L for L in self.lengths)


def build_codebook(
    table: ModCodTable, matrices: dict[int, GeneratorMatrix]
) -> PlhCodebook:
    """Assign codewords: the j-th ModCod of a length class (ascending id,
    j = 1, 2, ...) encodes the k-bit binary expansion of j with that class's
    matrix. Message 0 is never used: the all-zero codeword modulates to the
    same symbol pattern at every length, which would give different-length
    classes a maximal shared prefix and defeat length discrimination."""
    entries: list[CodebookEntry] = []
    for L in table.lengths():
        if L not in matrices:
            raise ValueError(f"no generator matrix supplied for length {L}")
        g = matrices[L]
        if g.v != L:
            raise ValueError(f"matrix for length {L} has v={g.v}")
        ids = [e.modcod_id for e in table.entries if e.plh_length == L]
        if len(ids) > (1 << g.k) - 1:
            raise ValueError(
                f"length-{L} class holds {len(ids)} ModCods but k={g.k} admits "
                f"{(1 << g.k) - 1} nonzero messages"
            )
        for j, modcod_id in enumerate(sorted(ids), start=1):
            word = encode(g, bits_from_int(j, g.k))
            entries.append(CodebookEntry(modcod_id=modcod_id, length=L, bits=word))
    return PlhCodebook(entries=tuple(entries))


def build_fixed_codebook(g: GeneratorMatrix, n_modcods: int) -> PlhCodebook:
    """Single-length codebook: ModCod j gets the v-bit word of message j."""
    if n_modcods < 1:
        raise ValueError("n_modcods must be >= 1")
    if n_modcods > (1 << g.k) - 1:
        raise ValueError(f"{n_modcods} ModCods exceed the {(1 << g.k) - 1} nonzero messages")
    entries = [
        CodebookEntry(modcod_id=j, length=g.v, bits=encode(g, bits_from_int(j, g.k)))
        for j in range(1, n_modcods + 1)
    ]
    return PlhCodebook(entries=tuple(entries))


class LengthDesign(NamedTuple):
    matrix: GeneratorMatrix
    achieved_dmin: int
    target_dmin: int


def design_codebook_matrices(
    table: ModCodTable,
    k: int = 6,
    target_cer: float = 1e-5,
    b_factor: float = 1.0,
    seed: int = DEFAULT_DESIGN_SEED,
) -> dict[int, LengthDesign]:
    """One fixed-length greedy design per header length in the table.

    The distance target for a length class comes from the union bound at the
    class's lowest FEC threshold. Raises CodeDesignError if any achieved
    distance falls short.
    """
    out: dict[int, LengthDesign] = {}
    for L in table.lengths():
        target = required_dmin(k, target_cer, table.min_threshold(L), b_factor)
        child_seed = int(np.random.SeedSequence((seed, L)).generate_state(1)[0])
        g, achieved = design_fixed_length(k, L, seed=child_seed)
        if achieved < target:
            raise CodeDesignError(
                f"length {L}: achieved dmin {achieved} < bound target {target}"
            )
        out[L] = LengthDesign(matrix=g, achieved_dmin=achieved, target_dmin=target)
    return out


@dataclass(frozen=True)
class DefaultDesign:
    """The shipped design: table, per-length matrices, both codebooks."""

    table: ModCodTable
    designs: dict[int, LengthDesign]
    codebook: PlhCodebook
    fixed_codebook: PlhCodebook


_DEFAULT_DESIGN_CACHE: dict[int, DefaultDesign] = {}


def default_design(seed: int = DEFAULT_DESIGN_SEED) -> DefaultDesign:
    """Build (and cache) the default 39-ModCod design end to end."""
    if seed not in _DEFAULT_DESIGN_CACHE:
        table = default_modcod_table()
        designs = design_codebook_matrices(table, seed=seed)
        codebook = build_codebook(table, {L: d.matrix for L, d in designs.items()})
        l_max = max(designs)
        fixed = build_fixed_codebook(designs[l_max].matrix, table.n)
        _DEFAULT_DESIGN_CACHE[seed] = DefaultDesign(
            table=table, designs=designs, codebook=codebook, fixed_codebook=fixed
        )
    return _DEFAULT_DESIGN_CACHE[seed]


# ---------------------------------------------------------------------------
# file formats


def write_codebook(codebook: PlhCodebook, path: str | Path) -> None:
    lines = [f"{CODEBOOK_MAGIC} N={codebook.n}"]
    for e in codebook.entries:
        lines.append(f"{e.modcod_id},{e.length},{bits_to_hex(e.bits)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_codebook(path: str | Path) -> PlhCodebook:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(CODEBOOK_MAGIC):
        raise ValueError(f"missing codebook header line {CODEBOOK_MAGIC!r}")
    try:
        n = int(lines[0].split("N=")[1])
    except (IndexError, ValueError) as exc:
        raise ValueError("malformed codebook header") from exc
    entries = []
    for ln in lines[1:]:
        mc, length, hexword = ln.split(",")
        entries.append(
            CodebookEntry(
                modcod_id=int(mc), length=int(length), bits=hex_to_bits(hexword, int(length))
            )
        )
    if len(entries) != n:
        raise ValueError(f"header declares N={n} but file holds {len(entries)} rows")
    return PlhCodebook(entries=tuple(entries))


def write_genmatrix(g: GeneratorMatrix, path: str | Path) -> None:
    lines = [f"{GENMATRIX_MAGIC} K={g.k} V={g.v}"]
    for i in range(g.k):
        lines.append("".join(str(int(b)) for b in g.rows[i]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_genmatrix(path: str | Path) -> GeneratorMatrix:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(GENMATRIX_MAGIC):
        raise ValueError(f"missing genmatrix header line {GENMATRIX_MAGIC!r}")
    try:
        parts = dict(tok.split("=") for tok in lines[0][len(GENMATRIX_MAGIC):].split())
        k, v = int(parts["K"]), int(parts["V"])
    except (KeyError, ValueError) as exc:
        raise ValueError("malformed genmatrix header") from exc
    if len(lines) - 1 != k:
        raise ValueError(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = np.array([[int(ch) for ch in ln] for ln in lines[1:]], dtype=np.uint8)
    if rows.shape != (k, v):
        raise ValueError(f"row lengths do not match V={v}")
    return GeneratorMatrix(k=k, v=v, rows=rows)


def write_modcod_table(table: ModCodTable, path: str | Path) -> None:
    lines = [MODCOD_CSV_HEADER]
    for e in table.entries:
        lines.append(
            f"{e.modcod_id},{e.m},{e.threshold_db:.10g},{e.plh_length},"
            f"{'true' if e.synthetic else 'false'}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_modcod_table(path: str | Path) -> ModCodTable:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != MODCOD_CSV_HEADER:
        raise ValueError(f"missing ModCod table header {MODCOD_CSV_HEADER!r}")
    entries = []
    for ln in lines[1:]:
        mc, m, thr, length, synth = ln.split(",")
        if synth not in ("true", "false"):
            raise ValueError(f"synthetic flag must be true/false, got {synth!r}")
        entries.append(
            ModCodEntry(
                modcod_id=int(mc),
                m=int(m),
                threshold_db=float(thr),
                plh_length=int(length),
                synthetic=synth == "true",
            )
        )
    return ModCodTable(entries=tuple(entries))
