"""Command line entry point: ``dualcanon <command> ...``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 spectrum or order
outside the supported range, 4 ``similar --check`` found the pair not similar.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import pipeline, serialization
from .errors import DimensionMismatch, IrrationalSpectrum, ParseError, UnsupportedOrder
from .mu_canon import mu_canonical, mu_similar_witness, unitary_canonical
from .spectral_split import spectral_split

log = logging.getLogger("dualcanon")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SPECTRUM = 3
EXIT_NOT_SIMILAR = 4


def _witness_doc(w):
    return serialization.dual_to_doc(w.D) if w is not None else None


def cmd_canon(args) -> int:
    A = serialization.load_dual(args.file)
    cf = pipeline.canonical_small(A)
    out = {
        "family": cf.family.value,
        "matrix": serialization.dual_to_doc(cf.matrix),
        "witness": _witness_doc(cf.witness),
    }
    print(serialization.dumps(out))
    return EXIT_OK


def cmd_similar(args) -> int:
    A = serialization.load_dual(args.file_a)
    B = serialization.load_dual(args.file_b)
    seed = pipeline.default_seed() if args.seed is None else args.seed
    log.info("similar: seed %d, trials %d", seed, args.trials)
    res = pipeline.similar(A, B, trials=args.trials, seed=seed, method=args.method)
    out = {
        "verdict": res.verdict.value,
        "method": res.method,
        "trials": res.trials,
        "seed": seed,
        "witness": _witness_doc(res.witness),
    }
    print(serialization.dumps(out))
    if args.check and res.verdict is not pipeline.Verdict.SIMILAR:
        return EXIT_NOT_SIMILAR
    return EXIT_OK


def cmd_split(args) -> int:
    A = serialization.load_dual(args.file)
    blocks, w = spectral_split(A)
    out = {
        "blocks": [
            {"eigenvalue": str(b.eigenvalue), "size": b.size, "block": serialization.dual_to_doc(b.block)}
            for b in blocks
        ],
        "witness": _witness_doc(w),
    }
    print(serialization.dumps(out))
    return EXIT_OK


def cmd_mucanon(args) -> int:
    A = serialization.load_kmatrix(args.file)
    U, _ = unitary_canonical(A)
    R, w = mu_canonical(A)
    out = {
        "canonical": serialization.kmatrix_to_doc(R),
        "C": serialization.kmatrix_to_doc(w.C),
        "Ctilde": serialization.kmatrix_to_doc(w.Ctilde),
        "unitary": serialization.kmatrix_to_doc(U),
    }
    print(serialization.dumps(out))
    return EXIT_OK


def cmd_oracle(args) -> int:
    A = serialization.load_kmatrix(args.file_a)
    B = serialization.load_kmatrix(args.file_b)
    w = mu_similar_witness(A, B)
    out = {"mu_similar": w is not None}
    if w is not None:
        out["C"] = serialization.kmatrix_to_doc(w.C)
        out["Ctilde"] = serialization.kmatrix_to_doc(w.Ctilde)
    print(serialization.dumps(out))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    A = serialization.load_dual(args.file)
    seed = pipeline.default_seed() if args.seed is None else args.seed
    log.info("fuzz: seed %d", seed)
    print(serialization.dumps(serialization.dual_to_doc(pipeline.fuzz_conjugate(A, seed))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualcanon", description="Similarity canonical forms over the dual numbers.")
    p.add_argument("-v", "--verbose", action="store_true", help="log seeds and progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("canon", help="canonical form of an order 2 or 3 matrix")
    c.add_argument("file")
    c.set_defaults(func=cmd_canon)

    s = sub.add_parser("similar", help="decide similarity of two matrices")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--trials", type=int, default=64)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--method", choices=("auto", "canonical", "linear"), default="auto")
    s.add_argument("--check", action="store_true", help="exit with status 4 unless SIMILAR")
    s.set_defaults(func=cmd_similar)

    sp = sub.add_parser("split", help="block split along the classical spectrum")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_split)

    m = sub.add_parser("mucanon", help="mu-canonical form of a rational matrix")
    m.add_argument("file")
    m.set_defaults(func=cmd_mucanon)

    o = sub.add_parser("oracle", help="mu-similarity of two rational matrices")
    o.add_argument("file_a")
    o.add_argument("file_b")
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fuzz", help="conjugate by a seeded random invertible matrix")
    f.add_argument("file")
    f.add_argument("--seed", type=int, default=None)
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        return args.func(args)
    except (ParseError, DimensionMismatch, OSError) as e:
        print(f"dualcanon: input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (IrrationalSpectrum, UnsupportedOrder) as e:
        print(f"dualcanon: {e}", file=sys.stderr)
        return EXIT_SPECTRUM


if __name__ == "__main__":
    sys.exit(main())
