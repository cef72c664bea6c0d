"""randef command-line interface.

Exit codes: 0 success, 1 domain error, 2 usage error. Every subcommand
supports --json; JSON output is a stable envelope carrying the schema
version, the command name, the echoed parameters and the result.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import conjunction as conj
from . import lotto, observer, report
from .errors import RandefError
from .models import ModelDescription, QuantizedPMF
from .stepcode import (
    CODEBOOK,
    BitString,
    CodecParams,
    baseline_bits,
    compressed_length,
    decode,
    deficiency,
    encode,
    validate_sequence,
)

SCHEMA_VERSION = "1"


def _envelope(command: str, params: dict, result: dict) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "result": result,
        },
        sort_keys=True,
    )


def _error_envelope(command: str, params: dict, exc: RandefError) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        },
        sort_keys=True,
    )


def _parse_sequence(text: str) -> tuple[int, ...]:
    # accepted in any order, normalized ascending
    return tuple(sorted(int(f) for f in text.split(",")))


def _enum_budget() -> int:
    raw = os.environ.get("RANDEF_BUDGET")
    return int(raw) if raw else lotto.DEFAULT_ENUM_BUDGET


# --- subcommand handlers; each returns (params_echo, result_dict, plain_text) ---


def _cmd_codec(args):
    rows = CODEBOOK.rows()
    lines = ["symbol,length,bits"] + [f"{s},{l},{b}" for s, l, b in rows]
    result = {"table": [{"symbol": s, "length": l, "bits": b} for s, l, b in rows]}
    return {"dump": True}, result, "\n".join(lines)


def _cmd_encode(args):
    seq = _parse_sequence(args.sequence)
    bits = encode(seq)
    result = {"sequence": list(seq), "bit_len": len(bits), "bits_hex": bits.to_hex()}
    plain = f"bits={len(bits)} hex={bits.to_hex()}"
    return {"sequence": list(seq)}, result, plain


def _cmd_decode(args):
    bits = BitString.from_hex(args.bits_hex, args.bit_len)
    seq = decode(bits)
    result = {"sequence": list(seq)}
    return (
        {"bits_hex": args.bits_hex, "bit_len": args.bit_len},
        result,
        ",".join(str(n) for n in seq),
    )


def _cmd_score(args):
    seq = _parse_sequence(args.sequence)
    bits = compressed_length(seq)
    base = baseline_bits()
    result = {
        "sequence": list(seq),
        "compressed_bits": bits,
        "baseline_bits": base,
        "deficiency_bits": base - bits,
    }
    plain = f"bits={bits} baseline={base:.3f} deficiency={base - bits:+.3f}"
    return {"sequence": list(seq)}, result, plain


def _cmd_stats(args):
    corpus = lotto.load_corpus(args.corpus)
    stats = lotto.corpus_stats(corpus)
    if args.figure:
        report.save_histogram_figure(stats.histogram, args.figure,
                                     title="Corpus compressed bit lengths")
    plain = (
        f"count={stats.count} mean={stats.mean_bits:.2f} mode={stats.mode_bits} "
        f"min={stats.min_bits} max={stats.max_bits}"
    )
    return {"corpus": args.corpus}, stats.to_json(), plain


def _cmd_enumerate(args):
    params = CodecParams(args.pool, args.draws)
    summary = lotto.enumerate_all(params, budget=_enum_budget())
    if args.histogram:
        with open(args.histogram, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bits", "count"])
            for bits in sorted(summary.histogram):
                writer.writerow([bits, summary.histogram[bits]])
    if args.figure:
        report.save_histogram_figure(summary.histogram, args.figure,
                                     title=f"All {summary.count} sequences")
    result = {
        "count": summary.count,
        "min_bits": summary.min_bits,
        "max_bits": summary.max_bits,
        "argmin_seq": list(summary.argmin_seq),
        "argmax_seq": list(summary.argmax_seq),
        "min_is_unique": summary.min_is_unique,
        "mean_bits": summary.mean_bits,
        "histogram": {str(k): v for k, v in sorted(summary.histogram.items())},
    }
    plain = (
        f"count={summary.count} min={summary.min_bits} max={summary.max_bits} "
        f"mean={summary.mean_bits:.3f} unique_min={summary.min_is_unique}"
    )
    return {"pool": args.pool, "draws": args.draws}, result, plain


def _cmd_distractors(args):
    bands = [lotto.BitBand.parse(b) for b in args.bands.split(",")]
    seqs = lotto.generate_distractors(bands, args.seed)
    rows = [
        {
            "band": f"{band.lo}-{band.hi}",
            "sequence": list(seq),
            "bits": compressed_length(seq),
        }
        for band, seq in zip(bands, seqs)
    ]
    lines = ["band,sequence,bits"] + [
        f"{r['band']},{' '.join(str(n) for n in r['sequence'])},{r['bits']}" for r in rows
    ]
    return (
        {"bands": args.bands, "seed": args.seed},
        {"distractors": rows},
        "\n".join(lines),
    )


def _cmd_rank(args):
    with open(args.sequences) as fh:
        candidates = [_parse_sequence(line) for line in fh if line.strip()]
    result = lotto.rank_candidates(candidates)
    if args.figure:
        report.save_rank_figure(result.items, args.figure)
    lines = ["rank,sequence,bits"] + [
        f"{rank},{' '.join(str(n) for n in seq)},{bits}" for seq, bits, rank in result.items
    ]
    lines.append(f"pearson_r={result.pearson_r:.4f} spearman_rho={result.spearman_rho:.4f}")
    return {"sequences": args.sequences}, result.to_json(), "\n".join(lines)


def _cmd_observe(args):
    with open(args.config) as fh:
        cfg = json.load(fh)
    source = QuantizedPMF.load(cfg["source_model"])
    family = observer.CandidateFamily.from_json(cfg.get("family", {}))
    if "initial_model" in cfg:
        initial_model = ModelDescription.of(QuantizedPMF.load(cfg["initial_model"]))
    else:
        initial_model = None
    state = observer.ObserverState.initial(
        family, cfg["alpha"], model=initial_model, patience=int(cfg.get("patience", 1))
    )
    records = observer.run_scenario(
        source, state, int(cfg["n_steps"]), int(cfg["obs_len"]), int(cfg["seed"])
    )
    if args.ledger:
        observer.write_ledger_csv(records, args.ledger)
    if args.figure:
        report.save_ledger_figure(records, args.figure)
    rows = observer.ledger_rows(records)
    lines = [",".join(observer.LEDGER_FIELDS)] + [
        ",".join(str(r[f]) for f in observer.LEDGER_FIELDS) for r in rows
    ]
    return {"config": args.config}, {"ledger": rows}, "\n".join(lines)


def _cmd_conjunction(args):
    p = QuantizedPMF.load(args.model)
    params_echo = {
        "model": args.model,
        "alpha": args.alpha,
        "seed": args.seed,
        "n": args.n,
        "scan": args.scan,
    }
    if args.scan:
        rows = conj.scan(p, args.alpha, args.scan, args.seed, args.seeds_per_n)
        if args.figure:
            report.save_scan_figure(rows, args.figure)
        lines = ["n,fraction_all_true"] + [f"{n},{f}" for n, f in rows]
        result = {"scan": [{"n": n, "fraction_all_true": f} for n, f in rows]}
        return params_echo, result, "\n".join(lines)
    if args.n is None:
        raise RandefError("either --n or --scan is required")
    witness = conj.build_witness(p, args.alpha, args.n, args.seed)
    wj = witness.to_json()
    plain = (
        f"s={witness.s} l={witness.l} y_typical={witness.y_typical} "
        f"x_surprising={witness.x_surprising} prob_order_ok={witness.prob_order_ok}"
    )
    return params_echo, wj, plain


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randef",
        description="Compression-based subjective probability toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(handler=handler)
        sp.add_argument("--json", action="store_true", help="emit a JSON envelope")
        return sp

    sp = add("codec", _cmd_codec, "dump the canonical codebook")
    sp.add_argument("--dump", action="store_true", help="emit the codebook table (CSV)")

    sp = add("encode", _cmd_encode, "encode a sequence to bits")
    sp.add_argument("sequence", help="six comma-separated numbers, any order")

    sp = add("decode", _cmd_decode, "decode a hex bitstring back to a sequence")
    sp.add_argument("bits_hex")
    sp.add_argument("bit_len", type=int)

    sp = add("score", _cmd_score, "compressed bits, baseline and deficiency")
    sp.add_argument("sequence")

    sp = add("stats", _cmd_stats, "statistics over a draw corpus CSV")
    sp.add_argument("corpus")
    sp.add_argument("--figure", help="write a histogram figure (PNG)")

    sp = add("enumerate", _cmd_enumerate, "exhaustively enumerate the sequence space")
    sp.add_argument("--pool", type=int, default=45)
    sp.add_argument("--draws", type=int, default=6)
    sp.add_argument("--histogram", help="write the bit-length histogram CSV")
    sp.add_argument("--figure", help="write a histogram figure (PNG)")

    sp = add("distractors", _cmd_distractors, "generate band-constrained sequences")
    sp.add_argument("--bands", default="15-18,19-22,23-26,27-29")
    sp.add_argument("--seed", type=int, required=True)

    sp = add("rank", _cmd_rank, "rank candidate sequences by compressed bits")
    sp.add_argument("sequences", help="file with one comma-separated sequence per line")
    sp.add_argument("--figure", help="write a rank/bits figure (PNG)")

    sp = add("observe", _cmd_observe, "run a seeded observer scenario")
    sp.add_argument("--config", required=True, help="scenario JSON")
    sp.add_argument("--ledger", help="write the update ledger CSV")
    sp.add_argument("--figure", help="write a ledger figure (PNG)")

    sp = add("conjunction", _cmd_conjunction, "build or scan conjunction witnesses")
    sp.add_argument("--model", required=True, help="model JSON file")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--scan", type=int, help="scan n = 1..N, emit CSV")
    sp.add_argument("--seeds-per-n", type=int, default=10)
    sp.add_argument("--figure", help="write a scan figure (PNG)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params_echo, result, plain = args.handler(args)
    except RandefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "json", False):
            print(_error_envelope(args.command, {}, exc))
        return 1
    if args.json:
        print(_envelope(args.command, params_echo, result))
    else:
        print(plain)
    return 0


if __name__ == "__main__":
    sys.exit(main())
