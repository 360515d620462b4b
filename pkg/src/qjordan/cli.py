"""Command-line surface: construction, verification and reports.

Machine-readable JSON goes to stdout (or --out); human summaries go to
stderr.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .haction import verify_decomposition
from .qcombinatorics import is_prime, verify_identities
from .scheme import (
    EigenStructureError,
    check_theorem_jg,
    eigentable,
    grassmann_graph,
    johnson_graph,
    laplacian_spectrum,
    matrix_tree_oracle,
    johnson_rooted_tree_formula,
    rooted_tree_count,
)
from .sjb import construct_sjb, sjb_from_json, sjb_to_json, verify_sjb

USAGE_ERROR = 2
VERIFY_ERROR = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int | None = None
    n: int | None = None
    m: int | None = None
    out: str | None = None
    verify_mode: str = "spot"
    threads: int = 1
    oracle: bool = False
    path: str | None = None


def _default_threads() -> int:
    env = os.environ.get("QJORDAN_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qjordan",
        description="Exact symmetric Jordan bases of subspace lattices over F_q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_qn(p, with_m=False):
        p.add_argument("--q", type=int, required=True, help="field order (prime)")
        p.add_argument("--n", type=int, required=True, help="ambient dimension")
        if with_m:
            p.add_argument("--m", type=int, required=True, help="subspace dimension (m <= n/2)")

    p = sub.add_parser("construct", help="build a symmetric Jordan basis")
    add_qn(p)
    p.add_argument("--out", help="write the basis JSON here instead of stdout")
    p.add_argument(
        "--verify",
        choices=("full", "spot", "none"),
        default="spot",
        help="verification mode after construction (default: spot)",
    )
    p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker cap (accepted for configuration; execution is sequential)",
    )

    p = sub.add_parser("verify", help="fully verify a basis JSON file")
    p.add_argument("path", help="basis file produced by construct")

    p = sub.add_parser("decompose", help="verify the lattice decomposition at level n")
    add_qn(p)

    p = sub.add_parser("scheme", help="eigenvalue table and Laplacian spectrum")
    add_qn(p, with_m=True)

    p = sub.add_parser("trees", help="rooted spanning trees of the Grassmann graph")
    add_qn(p, with_m=True)
    p.add_argument(
        "--oracle",
        action="store_true",
        help="also run the exact matrix-tree determinant and compare",
    )

    p = sub.add_parser("johnson", help="Johnson-graph tree counts and identity check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("identities", help="q-binomial and Galois-number identity checks")
    add_qn(p)

    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, separators=(",", ":")) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_q(q: int) -> str | None:
    if not is_prime(q):
        return f"q must be prime, got {q}"
    return None


def cmd_construct(cfg: RunConfig) -> int:
    basis = construct_sjb(cfg.n, cfg.q)
    _emit(sjb_to_json(basis), cfg.out)
    print(
        f"constructed basis for q={cfg.q}, n={cfg.n}: "
        f"{basis.vector_count} vectors in {len(basis.chains)} chains",
        file=sys.stderr,
    )
    if cfg.verify_mode == "none":
        return 0
    report = verify_sjb(basis, mode=cfg.verify_mode)
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok else VERIFY_ERROR


def cmd_verify(cfg: RunConfig) -> int:
    with open(cfg.path, "r", encoding="utf-8") as fh:
        basis = sjb_from_json(json.load(fh))
    report = verify_sjb(basis, mode="full")
    _emit(report.to_json(), None)
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok else VERIFY_ERROR


def cmd_decompose(cfg: RunConfig) -> int:
    report = verify_decomposition(cfg.n, cfg.q)
    _emit(report.to_json(), None)
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok else VERIFY_ERROR


def cmd_scheme(cfg: RunConfig) -> int:
    basis = construct_sjb(cfg.n, cfg.q)
    report = verify_sjb(basis, mode="spot")
    if not report.ok:
        print(report.summary(), file=sys.stderr)
        return VERIFY_ERROR
    try:
        rows = eigentable(cfg.n, cfg.m, basis)
    except EigenStructureError as exc:
        print(f"eigenstructure failure: {exc}", file=sys.stderr)
        return VERIFY_ERROR
    payload = {
        "q": cfg.q,
        "n": cfg.n,
        "m": cfg.m,
        "eigentable": [
            {"start_rank": r.start_rank, "eigenvalues": list(r.eigenvalues)}
            for r in rows
        ],
        "laplacian_spectrum": [
            [eig, mult] for eig, mult in laplacian_spectrum(cfg.n, cfg.m, cfg.q)
        ],
    }
    _emit(payload, None)
    return 0


def cmd_trees(cfg: RunConfig) -> int:
    formula = rooted_tree_count(cfg.n, cfg.m, cfg.q)
    oracle = match = None
    if cfg.oracle:
        oracle = matrix_tree_oracle(*grassmann_graph(cfg.q, cfg.n, cfg.m))
        match = oracle == formula
    payload = {
        "q": cfg.q,
        "n": cfg.n,
        "m": cfg.m,
        "formula": str(formula),
        "oracle": None if oracle is None else str(oracle),
        "match": match,
    }
    _emit(payload, None)
    if cfg.oracle:
        print(f"formula {formula} vs oracle {oracle}", file=sys.stderr)
    return 0 if match in (None, True) else VERIFY_ERROR


def cmd_johnson(cfg: RunConfig) -> int:
    formula = johnson_rooted_tree_formula(cfg.n, cfg.m)
    oracle = matrix_tree_oracle(*johnson_graph(cfg.n, cfg.m))
    ok_jg = check_theorem_jg(cfg.n, cfg.m)
    payload = {
        "n": cfg.n,
        "m": cfg.m,
        "tree_formula": str(formula),
        "tree_oracle": str(oracle),
        "match": formula == oracle,
        "theorem_jg": ok_jg,
    }
    _emit(payload, None)
    return 0 if payload["match"] and ok_jg else VERIFY_ERROR


def cmd_identities(cfg: RunConfig) -> int:
    report = verify_identities(cfg.n, cfg.q)
    _emit(report.to_json(), None)
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok else VERIFY_ERROR


def run(cfg: RunConfig) -> int:
    if cfg.q is not None:
        msg = _check_q(cfg.q)
        if msg:
            return _usage_error(msg)
    if cfg.n is not None and cfg.n < 0:
        return _usage_error(f"n must be >= 0, got {cfg.n}")
    if cfg.m is not None and cfg.n is not None and not 0 <= 2 * cfg.m <= cfg.n:
        return _usage_error(f"m must satisfy 0 <= m <= n/2, got m={cfg.m}, n={cfg.n}")
    if cfg.command == "identities" and cfg.n < 1:
        return _usage_error("identities needs n >= 1")
    if cfg.command == "decompose" and cfg.n < 1:
        return _usage_error("decompose needs n >= 1")
    handlers = {
        "construct": cmd_construct,
        "verify": cmd_verify,
        "decompose": cmd_decompose,
        "scheme": cmd_scheme,
        "trees": cmd_trees,
        "johnson": cmd_johnson,
        "identities": cmd_identities,
    }
    return handlers[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        q=getattr(args, "q", None),
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        out=getattr(args, "out", None),
        verify_mode=getattr(args, "verify", "spot"),
        threads=getattr(args, "threads", None) or _default_threads(),
        oracle=getattr(args, "oracle", False),
        path=getattr(args, "path", None),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
