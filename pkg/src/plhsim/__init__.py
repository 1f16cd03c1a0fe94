"""Variable-length physical-layer header codes under noncoherent detection.

Design greedy header codes, modulate them with pi/2-BPSK, push frames
through a phase/amplitude-uncertain AWGN channel, and compare four decoding
strategies by Monte Carlo codeword error rate and analytic complexity.
"""

from .plh_code import (
    DEFAULT_DESIGN_SEED,
    Bits,
    CodebookEntry,
    CodeDesignError,
    CodeDesignSpec,
    DefaultDesign,
    GeneratorMatrix,
    LengthDesign,
    ModCodEntry,
    ModCodTable,
    PlhCodebook,
    as_bits,
    bits_from_int,
    bits_to_hex,
    build_codebook,
    build_fixed_codebook,
    code_min_distance,
    default_design,
    default_modcod_table,
    design_code,
    design_codebook_matrices,
    design_fixed_length,
    encode,
    error_bound,
    hamming_distance,
    hex_to_bits,
    noncoherent_distance,
    read_codebook,
    read_genmatrix,
    read_modcod_table,
    required_dmin,
    write_codebook,
    write_genmatrix,
    write_modcod_table,
)
from .modem_channel import (
    ChannelParams,
    ModulatedCodeword,
    ReceivedFrame,
    TransmitTruth,
    data_constellation,
    pi2bpsk_map,
    snr_to_noise_var,
    transmit,
)
from .decoders import (
    DecodeResult,
    DecoderConfig,
    correlate,
    decode,
    decode_simple,
    decode_standard,
    decode_strategy1,
    decode_strategy2,
    estimate_noise_var,
)
from .sim_harness import (
    BracketingError,
    CerEstimate,
    ComplexityReport,
    GapResult,
    OpCounts,
    SweepPoint,
    TrialEngine,
    complexity_report,
    find_snr_at_cer,
    gap_analysis,
    run_cer,
    sweep,
    wilson_interval,
    write_gap_json,
    write_results_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
