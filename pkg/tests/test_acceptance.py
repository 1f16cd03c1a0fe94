"""Acceptance gate: one test per release criterion.

Each test prints "[ACCEPTANCE] <criterion>: PASS" once its assertions hold,
so the verbose run reads as a checklist. Statistical operating points (SNRs,
trial counts, seeds) were calibrated once so the asserted orderings hold with
confidence-interval separation, then frozen here.
"""

import math

import numpy as np
import pytest

from plhsim import (
    ChannelParams,
    CodeDesignSpec,
    DecoderConfig,
    bits_from_int,
    code_min_distance,
    complexity_report,
    decode,
    design_code,
    encode,
    gap_analysis,
    pi2bpsk_map,
    required_dmin,
    run_cer,
    snr_to_noise_var,
    transmit,
)
from plhsim.cli import main as cli_main
from plhsim.decoders import batch_metrics, codebook_tables


def _report(name: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS", flush=True)


def _frames(design, rng, count, esn0_db, book=None):
    book = book or design.codebook
    out = []
    for _ in range(count):
        mc = int(rng.choice((1, 2, 3, 6)))
        params = ChannelParams(
            amplitude=float(0.5 + 1.5 * rng.random()),
            phase=float(2 * np.pi * rng.random()),
            noise_var=snr_to_noise_var(esn0_db, 1.0),
        )
        out.append(transmit(book, design.table, mc, params, rng).samples)
    return np.stack(out)


# ---------------------------------------------------------------------------


def test_bound_fixes_minimum_distance_for_the_longest_header():
    # 64-bit class, lowest operating Es/N0, target error 1e-5, BPSK factor 1.
    assert required_dmin(6, 1e-5, -2.85, 1.0) == 26
    _report("union bound distance requirement")


def test_greedy_design_reaches_distance_26_within_70_bits():
    g = design_code(CodeDesignSpec(k=6, target_dmin=26))
    assert g.v <= 70
    words = [encode(g, bits_from_int(m, 6)) for m in range(64)]
    assert code_min_distance(words, mode="noncoherent") >= 26
    _report(f"greedy design: v={g.v} <= 70 with exhaustive dmin >= 26")


def test_codebook_reproduces_the_length_distribution(design):
    book = design.codebook
    assert sorted(book.lengths) == [26, 48, 58, 64]
    assert book.counts == {64: 1, 58: 1, 48: 3, 26: 34}
    assert {L: round(p, 4) for L, p in book.probs.items()} == {
        64: 0.0256,
        58: 0.0256,
        48: 0.0769,
        26: 0.8718,
    }
    assert 29.4 <= book.expected_length() <= 29.6
    _report("codebook length statistics")


def test_complexity_table_reference_counts(design):
    rep = complexity_report(design.codebook)
    got = {
        "standard": (rep.standard.additions, rep.standard.multiplications, rep.standard.lut_accesses),
        "strategy1": (rep.strategy1.additions, rep.strategy1.multiplications, rep.strategy1.lut_accesses),
        "strategy2": (rep.strategy2.additions, rep.strategy2.multiplications, rep.strategy2.lut_accesses),
    }
    assert got == {
        "standard": (127, 2, 1),
        "strategy1": (59, 2, 0),
        "strategy2": (124, 68, 1),
    }
    _report("complexity operation counts")


def test_decisions_survive_phase_rotation_and_scaling(design):
    rng = np.random.default_rng(104)
    frames = _frames(design, rng, 1000, esn0_db=0.0)
    fixed_frames = _frames(design, rng, 1000, esn0_db=0.0, book=design.fixed_codebook)
    tables = codebook_tables(design.codebook)
    fixed_tables = codebook_tables(design.fixed_codebook)
    nv = snr_to_noise_var(0.0, 1.0)
    phi = np.exp(1.234j)
    configs = [
        (tables, frames, DecoderConfig(kind="simple"), None),
        (tables, frames, DecoderConfig(kind="strategy1", alpha=0.5), None),
        (tables, frames, DecoderConfig(kind="strategy2", beta=0.2), nv),
        (fixed_tables, fixed_frames, DecoderConfig(kind="standard"), None),
    ]
    for tb, fr, cfg, noise in configs:
        base = np.argmax(batch_metrics(tb, fr, cfg, noise), axis=1)
        rot = np.argmax(batch_metrics(tb, fr * phi, cfg, noise), axis=1)
        assert np.array_equal(base, rot), cfg.kind
    s1 = DecoderConfig(kind="strategy1", alpha=0.5)
    base = np.argmax(batch_metrics(tables, frames, s1), axis=1)
    scaled = np.argmax(batch_metrics(tables, 2.5 * frames, s1), axis=1)
    assert np.array_equal(base, scaled)
    _report("phase/scale invariance over 1000 frames")


def test_selected_metrics_match_naive_reevaluation(design):
    rng = np.random.default_rng(105)
    frames = _frames(design, rng, 1000, esn0_db=0.0)
    tables = codebook_tables(design.codebook)
    nv = snr_to_noise_var(0.0, 1.0)
    entries = design.codebook.entries
    symbols = [pi2bpsk_map(e.bits) for e in entries]
    alpha, beta = 0.5, 0.2
    cases = {
        "simple": batch_metrics(tables, frames, DecoderConfig(kind="simple")),
        "strategy1": batch_metrics(tables, frames, DecoderConfig(kind="strategy1", alpha=alpha)),
        "strategy2": batch_metrics(tables, frames, DecoderConfig(kind="strategy2", beta=beta), nv),
    }
    for kind, metrics in cases.items():
        winners = np.argmax(metrics, axis=1)
        for b in range(frames.shape[0]):
            r = frames[b]
            naive = []
            for e, c in zip(entries, symbols):
                corr = abs(np.vdot(c, r[: e.length]))
                if kind == "simple":
                    naive.append(corr)
                elif kind == "strategy1":
                    naive.append(corr**2 / e.length**alpha)
                else:
                    naive.append(corr + beta / nv * float(np.sum(np.abs(r[e.length :]) ** 2)))
            i = int(np.argmax(naive))
            assert i == winners[b]
            assert metrics[b, i] == pytest.approx(naive[i], rel=1e-12, abs=1e-12)
    fixed_frames = _frames(design, rng, 100, esn0_db=0.0, book=design.fixed_codebook)
    fixed_tables = codebook_tables(design.fixed_codebook)
    std = batch_metrics(fixed_tables, fixed_frames, DecoderConfig(kind="standard"))
    fixed_symbols = [pi2bpsk_map(e.bits) for e in design.fixed_codebook.entries]
    for b in range(fixed_frames.shape[0]):
        naive = [abs(np.vdot(c, fixed_frames[b])) for c in fixed_symbols]
        i = int(np.argmax(naive))
        assert std[b].max() == pytest.approx(naive[i], rel=1e-12)
    _report("naive metric re-evaluation to 1e-12")


def test_alpha_trend_flips_between_longest_and_shortest_headers(design):
    # Calibrated: at 2e5 trials the ModCod-1 CER rises monotonically with
    # alpha (0.00056 -> 0.00657 at -6 dB) while the ModCod-6 CER falls
    # (0.0150 -> 0.0002 at +1 dB); extreme-alpha intervals do not overlap.
    alphas = (0.3, 0.5, 0.7, 1.0)
    longest = [
        run_cer(design.codebook, design.table, 1, DecoderConfig(kind="strategy1", alpha=a),
                -6.0, 200_000, 101)
        for a in alphas
    ]
    shortest = [
        run_cer(design.codebook, design.table, 6, DecoderConfig(kind="strategy1", alpha=a),
                1.0, 200_000, 102)
        for a in alphas
    ]
    assert all(a.cer < b.cer for a, b in zip(longest, longest[1:]))
    assert all(a.cer > b.cer for a, b in zip(shortest, shortest[1:]))
    assert longest[-1].ci95_lo > longest[0].ci95_hi
    assert shortest[0].ci95_lo > shortest[-1].ci95_hi
    _report("alpha trend with separated extreme intervals")


def test_gaps_are_negative_for_all_tuned_decoders(design):
    modcods = [1, 2, 3, 6]
    decoders = [
        DecoderConfig(kind="strategy1", alpha=0.5),
        DecoderConfig(kind="strategy1", alpha=0.7),
        DecoderConfig(kind="strategy2", beta=0.2),
    ]
    all_gaps = {}
    for dec in decoders:
        results = gap_analysis(
            design.codebook, design.table, modcods, dec, target_cer=1e-3, master_seed=2026
        )
        for r in results:
            key = (dec.kind, dec.param_value, r.modcod_id)
            all_gaps[key] = r.gap_db
            assert r.gap_db < 0.0, key
    assert all_gaps[("strategy2", 0.2, 6)] < -3.0
    _report("negative decoding gaps at the 1e-3 operating point")


def test_estimated_variance_matches_known_variance_performance(design):
    known = DecoderConfig(kind="strategy2", beta=0.2)
    estimated = DecoderConfig(kind="strategy2", beta=0.2, noise_var_source="estimated")
    grids = {1: ([-7.0, -6.0, -5.0, -4.0, -3.0], 106), 6: ([-2.0, -1.0, 0.0, 1.0, 2.0], 107)}
    for mc, (grid, seed) in grids.items():
        for esn0 in grid:
            a = run_cer(design.codebook, design.table, mc, known, esn0, 50_000, seed)
            b = run_cer(design.codebook, design.table, mc, estimated, esn0, 50_000, seed)
            overlap = a.ci95_lo <= b.ci95_hi and b.ci95_lo <= a.ci95_hi
            assert overlap, (mc, esn0, a.cer, b.cer)
    _report("known/estimated noise variance parity on both SNR grids")


def test_simple_receiver_trails_strategy1_by_an_order_of_magnitude(design):
    simple = run_cer(
        design.codebook, design.table, 6, DecoderConfig(kind="simple"), 5.13, 200_000, 103
    )
    tuned = run_cer(
        design.codebook, design.table, 6, DecoderConfig(kind="strategy1", alpha=0.7),
        5.13, 200_000, 103,
    )
    assert simple.cer >= 10.0 * max(tuned.cer, 1.0 / 200_000)
    _report("simple receiver at least 10x worse at the shortest-header threshold")


def test_publication_depth_search_is_gated_behind_deep_flag(capsys):
    # The 1e-5-target searches need 1e7-1e8 trials per probe; they stay out
    # of this suite and are reachable only by explicit opt-in.
    code = cli_main([
        "gap", "--modcods", "6", "--decoder", "strategy2", "--beta", "0.2",
        "--out", "unused.json", "--dump-config",
    ])
    default_dump = capsys.readouterr().out.splitlines()
    assert code == 0
    assert "deep=false" in default_dump
    code = cli_main([
        "gap", "--modcods", "6", "--decoder", "strategy2", "--beta", "0.2",
        "--deep", "--out", "unused.json", "--dump-config",
    ])
    deep_dump = capsys.readouterr().out.splitlines()
    assert code == 0
    assert "deep=true" in deep_dump
    _report("deep-search mode present and off by default")
