"""``msrcode`` command line.

Machine-readable results go to stdout as JSON; a one-line human summary
goes to stderr.  Exit codes: 0 ok, 2 usage or parameter error, 3 data or
corruption error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .codec import codec_for
from .errors import (
    DataError,
    MsrError,
    ParameterError,
    RepairInvariantError,
    RhoNotFoundError,
    SingularMatrixError,
)
from .mds import DEFAULT_MAX_SUBSETS, check_mds, degree_bound, subset_count
from .params import derive_params
from .repair import repair_codeword_node
from .specfile import CodeSpec, generate_spec
from .storage import decode_files, encode_file, repair_shard

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_VERIFY = 4


class VerificationFailure(MsrError):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _node_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated node indices, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _load_spec(args) -> CodeSpec:
    return CodeSpec.read(args.spec)


def _self_test(spec: CodeSpec, seed: int) -> None:
    """Encode one seeded stripe and repair node 1; cheap sanity check before writing."""
    pc = spec.build()
    p = spec.params
    rng = np.random.default_rng(seed)
    cw = codec_for(pc).encode_stripes(pc.field.random(rng, (1, p.k * p.alpha)))[0]
    repaired, _ = repair_codeword_node(cw, 1, range(2, p.d + 2), pc)
    if not np.array_equal(repaired, cw[0]):
        raise VerificationFailure("self-test repair did not reproduce node 1")


def cmd_params(args) -> int:
    p = derive_params(args.n, args.k, args.d)
    doc = {"n": p.n, "k": p.k, "d": p.d, **p.to_dict(),
           "degenerate": p.degenerate,
           "repair_symbols": p.repair_bandwidth,
           "naive_symbols": p.naive_bandwidth,
           "mds_subsets": subset_count(p),
           "degree_bound": degree_bound(p)}
    _emit(doc)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = generate_spec(args.n, args.k, args.d, args.field, max_subsets=args.max_subsets)
    _self_test(spec, args.seed)
    text = spec.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    esc = " (escalated from GF(2^8))" if spec.search and spec.search["escalated"] else ""
    _note(f"gen: ({spec.n},{spec.k},{spec.d}) rho={spec.rho} over GF(2^{spec.field_width}){esc}")
    return EXIT_OK


def cmd_encode(args) -> int:
    spec = _load_spec(args)
    data = Path(args.input).read_bytes()
    paths = encode_file(spec, data, args.out)
    _emit({"shards": [str(p) for p in paths], "length": len(data)})
    _note(f"encode: {len(data)} bytes -> {len(paths)} shards in {args.out}")
    return EXIT_OK


def cmd_decode(args) -> int:
    spec = _load_spec(args)
    data = decode_files(spec, args.shards, args.nodes)
    Path(args.out).write_bytes(data)
    _note(f"decode: wrote {len(data)} bytes to {args.out}")
    return EXIT_OK


def cmd_repair(args) -> int:
    spec = _load_spec(args)
    result = repair_shard(spec, args.shards, args.failed, args.helpers, args.out)
    doc = result.report.to_dict()
    doc["disk_bytes_read"] = {str(j): b for j, b in sorted(result.disk_bytes_read.items())}
    doc["shard"] = str(result.path)
    _emit(doc)
    _note(
        f"repair: node {args.failed} rebuilt from {len(args.helpers)} helpers, "
        f"{result.report.bytes_downloaded} bytes vs {result.report.naive_bytes} naive"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _load_spec(args)
    p = spec.params
    total = subset_count(p)
    if total > args.max_subsets:
        _note(f"verify: refusing, C({p.n},{p.n - p.k}) = {total} exceeds budget {args.max_subsets}")
        return EXIT_USAGE
    report = check_mds(spec.build())
    _emit(report.to_dict())
    _note(f"verify: is_mds={report.is_mds} over {report.subsets_checked} subsets")
    return EXIT_OK if report.is_mds else EXIT_VERIFY


def cmd_simulate(args) -> int:
    if args.spec:
        spec = _load_spec(args)
    elif None not in (args.n, args.k, args.d):
        spec = generate_spec(args.n, args.k, args.d, args.field)
    else:
        raise ParameterError("simulate needs --spec or --n/--k/--d")
    pc = spec.build()
    p = spec.params
    codec = codec_for(pc)
    rng = np.random.default_rng(args.seed)
    exact = 0
    downloads = []
    for _ in range(args.trials):
        cw = codec.encode_stripes(pc.field.random(rng, (1, p.k * p.alpha)))[0]
        failed = int(rng.integers(1, p.n + 1))
        others = [j for j in range(1, p.n + 1) if j != failed]
        helpers = sorted(int(h) for h in rng.choice(others, size=p.d, replace=False))
        repaired, report = repair_codeword_node(cw, failed, helpers, pc)
        exact += bool(np.array_equal(repaired, cw[failed - 1]))
        downloads.append(report.symbols_downloaded)
    doc = {
        "n": p.n, "k": p.k, "d": p.d,
        "trials": args.trials,
        "seed": args.seed,
        "exact_repairs": exact,
        "symbols_downloaded": {
            "min": min(downloads),
            "max": max(downloads),
            "mean": sum(downloads) / len(downloads),
        },
        "expected_symbols": p.repair_bandwidth,
        "naive_symbols": p.naive_bandwidth,
        "ratio": p.naive_bandwidth / p.repair_bandwidth,
    }
    _emit(doc)
    _note(f"simulate: {exact}/{args.trials} exact repairs, {p.repair_bandwidth} symbols each")
    ok = exact == args.trials and set(downloads) == {p.repair_bandwidth}
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msrcode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def nkd(sp, required=True):
        sp.add_argument("--n", type=int, required=required, help="number of nodes")
        sp.add_argument("--k", type=int, required=required, help="number of data nodes")
        sp.add_argument("--d", type=int, required=required, help="number of helpers per repair")

    sp = sub.add_parser("params", help="print derived code parameters")
    nkd(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("gen", help="search rho and write a certified code spec")
    nkd(sp)
    sp.add_argument("--field", type=int, choices=(8, 16), default=8, help="initial field width")
    sp.add_argument("--seed", type=int, default=0, help="seed for the post-generation self-test")
    sp.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
    sp.add_argument("--out", help="spec path (default: stdout)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("encode", help="shard a file into n shard files")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", required=True, help="output shard directory")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="rebuild a file from at least k shards")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--shards", required=True, help="shard directory")
    sp.add_argument("--nodes", type=_node_list, help="use only these nodes, e.g. 1,3")
    sp.add_argument("--out", required=True, help="output file")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("repair", help="regenerate one shard from d helpers")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--shards", required=True, help="shard directory")
    sp.add_argument("--failed", type=int, required=True)
    sp.add_argument("--helpers", type=_node_list, required=True, help="e.g. 2,3,4")
    sp.add_argument("--out", help="output shard path (default: in the shard directory)")
    sp.set_defaults(func=cmd_repair)

    sp = sub.add_parser("verify", help="exhaustively certify the MDS property")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="random single-node failures with bandwidth stats")
    sp.add_argument("--spec")
    nkd(sp, required=False)
    sp.add_argument("--field", type=int, choices=(8, 16), default=8)
    sp.add_argument("--trials", type=_positive, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ParameterError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        _note(f"error: {exc}")
        return EXIT_DATA
    except (RhoNotFoundError, SingularMatrixError, RepairInvariantError, VerificationFailure) as exc:
        _note(f"verification failed: {exc}")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
