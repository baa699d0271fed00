"""Command-line entry point: ``ghzlab {verify,sample,overlap,lhv}``.

Exit codes: 0 when the report passes, 2 for invalid parameters, 3 when a
check fails or an internal consistency error is raised.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ._limits import ConstructionError, ParameterError
from .report import dumps, run_lhv, run_overlap, run_sample, run_verify

log = logging.getLogger("ghzlab")

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_CHECK = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAMS, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghzlab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--d", type=int, required=True, help="local dimension")
        p.add_argument("--n", type=int, default=3, help="number of parties (odd, >= 3)")
        p.add_argument("--out", type=Path, help="write the report here instead of stdout")
        p.add_argument("--figdir", type=Path, help="also render PNG figures into this directory")

    p = sub.add_parser("verify", help="full concurrency / LHV / dimensionality run")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="processes for the LHV search")

    p = sub.add_parser("sample", help="sample joint outcomes for a choice of local settings")
    common(p)
    p.add_argument("--settings", required=True, help="one X or Y per party, e.g. XYY")
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("overlap", help="X/Y eigenbasis overlaps and irreducibility")
    common(p)

    p = sub.add_parser("lhv", help="decide the local-realism constraint system")
    common(p)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _run(args):
    if args.command == "verify":
        return run_verify(args.d, args.n, tol=args.tol, seed=args.seed, workers=args.workers)
    if args.command == "sample":
        return run_sample(args.d, args.n, args.settings, args.shots, args.seed)
    if args.command == "overlap":
        return run_overlap(args.d, args.n)
    return run_lhv(args.d, args.n, workers=args.workers)


def _figures(command: str, report, figdir: Path) -> list[Path]:
    from . import plotting

    stem = f"{command}_d{report.d}_N{report.N}"
    if command == "verify":
        from .report import run_overlap as _ov

        return [
            plotting.plot_verification(report, figdir / f"{stem}.png"),
            plotting.plot_overlaps(_ov(report.d, report.N), figdir / f"{stem}_overlaps.png"),
        ]
    if command == "sample":
        return [plotting.plot_counts(report, figdir / f"{stem}_{report.settings}.png")]
    if command == "overlap":
        return [plotting.plot_overlaps(report, figdir / f"{stem}.png")]
    return [plotting.plot_lhv(report, figdir / f"{stem}.png")]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        report = _run(args)
    except ParameterError as exc:
        print(f"ghzlab: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except ConstructionError as exc:
        print(f"ghzlab: internal check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK

    text = dumps(report)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
        log.info("report written to %s", args.out)
    if args.figdir is not None:
        for path in _figures(args.command, report, args.figdir):
            log.info("figure written to %s", path)
    return EXIT_OK if report.passed else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
