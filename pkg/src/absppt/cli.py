"""Command-line front end.

Exit codes: 0 success / ABS_PPT / no violation, 1 NOT_ABS_PPT / violation
found, 2 bad input or usage, 3 counterexample requested for an ABS_PPT
spectrum.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .core import Spectrum, partial_transpose, validate_spectrum
from .errors import AbsPPTError
from .lmi import (
    TOL_DEFAULT,
    certify_abs_ppt,
    closed_form_p2_value,
    lambda_matrix,
    lmi_p3,
    symmetrized,
)
from .oracle import build_counterexample, random_falsify
from .orderings import OrderingPair, enumerate_sigma, p_max

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NO_COUNTEREXAMPLE = 0, 1, 2, 3


@dataclass
class CheckReport:
    status: str
    margin: float
    tol: float
    threshold: float
    boundary: bool
    failing_pair: dict | None
    witness_x: list[float] | None
    pair_margins: list[float]
    input: dict
    version: str = __version__

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(**d)


def parse_dims(text: str) -> tuple[int, int]:
    try:
        n, m = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise AbsPPTError(f"bad --dims {text!r}; expected NxM", "BAD_DIMS") from None
    return n, m


def load_spectrum(args) -> Spectrum:
    sources = [s for s in (args.spectrum, args.csv, args.json) if s is not None]
    if len(sources) != 1:
        raise AbsPPTError("give exactly one of --spectrum, --csv, --json", "BAD_SOURCE")
    dims = parse_dims(args.dims) if args.dims else None
    if args.json is not None:
        with open(args.json) as fh:
            doc = json.load(fh)
        raw = doc["eigenvalues"]
        if dims is None:
            dims = int(doc["n"]), int(doc["m"])
        elif dims != (int(doc.get("n", dims[0])), int(doc.get("m", dims[1]))):
            raise AbsPPTError("--dims disagrees with the JSON file", "BAD_DIMS")
    elif args.csv is not None:
        with open(args.csv, newline="") as fh:
            raw = [float(row[0]) for row in csv.reader(fh) if row and row[0].strip()]
    else:
        raw = [float(v) for v in args.spectrum.split(",") if v.strip()]
    if dims is None:
        raise AbsPPTError("--dims is required", "BAD_DIMS")
    return validate_spectrum(raw, *dims)


def make_report(s: Spectrum, tol: float) -> CheckReport:
    v = certify_abs_ppt(s, tol)
    return CheckReport(
        status=v.status,
        margin=v.margin,
        tol=v.tol,
        threshold=v.threshold,
        boundary=v.boundary,
        failing_pair=v.failing_pair.to_dict() if v.failing_pair else None,
        witness_x=v.witness_x.tolist() if v.witness_x is not None else None,
        pair_margins=list(v.pair_margins),
        input={"n": s.n, "m": s.m, "eigenvalues": list(s.values)},
    )


def _human_check(s: Spectrum, report: CheckReport) -> str:
    lines = [
        f"dims {s.n}x{s.m}  p={s.p}  pairs={len(report.pair_margins)}",
        f"status: {report.status}" + ("  (boundary)" if report.boundary else ""),
        f"margin: {report.margin:.6g}  (threshold {report.threshold:.3g})",
    ]
    if report.failing_pair is not None:
        pair = OrderingPair.from_dict(report.failing_pair)
        S = symmetrized(lambda_matrix(s, pair))
        lines.append("failing L + L^T:")
        lines += ["  " + "  ".join(f"{v: .6g}" for v in row) for row in S]
        lines.append("witness x: " + ", ".join(f"{v:.6g}" for v in report.witness_x))
    if s.p == 2:
        lines.append(f"closed form slack lam_N-1 + 2 sqrt(lam_N lam_N-2) - lam_1 = "
                     f"{closed_form_p2_value(s):.6g}")
    elif s.p == 3:
        a, b = lmi_p3(s)
        lines.append("3x3 LMI min eigenvalues: "
                     f"{np.linalg.eigvalsh(a)[0]:.6g}, {np.linalg.eigvalsh(b)[0]:.6g}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    s = load_spectrum(args)
    report = make_report(s, args.tol)
    print(report.to_json() if args.format == "json" else _human_check(s, report))
    return EXIT_OK if report.status == "ABS_PPT" else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    limit = p_max()
    if args.p < 1 or args.p > limit:
        raise AbsPPTError(f"p={args.p} outside 1..{limit}", "P_TOO_LARGE")
    print(json.dumps(enumerate_sigma(args.p).to_dict(), indent=2))
    return EXIT_OK


def complex_rows(M) -> list:
    M = np.asarray(M, dtype=complex)
    if M.ndim == 1:
        return [[float(v.real), float(v.imag)] for v in M]
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def from_complex_rows(data) -> np.ndarray:
    a = np.asarray(data, dtype=float)
    return a[..., 0] + 1j * a[..., 1]


def counterexample_document(s: Spectrum, tol: float = TOL_DEFAULT) -> dict | None:
    v = certify_abs_ppt(s, tol)
    if v.abs_ppt:
        return None
    w = build_counterexample(s, v.failing_pair, v.witness_x)
    return {
        "n": s.n,
        "m": s.m,
        "eigenvalues": list(s.values),
        "M": complex_rows(w.M),
        "b": complex_rows(w.b),
        "value": w.value,
        "pair": w.pair.to_dict(),
        "x": w.x.tolist(),
    }


def verify_counterexample_document(doc: dict) -> float:
    """Recompute ``b* PT(M) b`` from a saved document."""
    M = from_complex_rows(doc["M"])
    b = from_complex_rows(doc["b"])
    return float(np.real(b.conj() @ partial_transpose(M, doc["n"], doc["m"]) @ b))


def cmd_counterexample(args) -> int:
    s = load_spectrum(args)
    doc = counterexample_document(s, args.tol)
    if doc is None:
        print("spectrum is ABS_PPT; no counterexample exists", file=sys.stderr)
        return EXIT_NO_COUNTEREXAMPLE
    text = json.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}  value={doc['value']:.6g}")
    else:
        print(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    s = load_spectrum(args)
    if s.dim > 64:
        raise AbsPPTError("oracle is limited to nm <= 64", "TOO_LARGE")
    if args.trials < 0:
        raise AbsPPTError("--trials must be non-negative", "BAD_TRIALS")
    hit = random_falsify(s, args.trials, args.seed, args.tol)
    report = {
        "trials": args.trials,
        "seed": args.seed,
        "violation": hit is not None,
        "trial_index": hit.trial if hit else None,
        "min_eigenvalue": hit.min_eigenvalue if hit else None,
    }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    elif hit:
        print(f"violation at trial {hit.trial} (seed {args.seed}): "
              f"min eigenvalue of PT = {hit.min_eigenvalue:.6g}")
    else:
        print(f"no violation in {args.trials} trials (seed {args.seed})")
    return EXIT_VIOLATION if hit else EXIT_OK


def _add_input(sp):
    sp.add_argument("--dims", help="factor dimensions as NxM")
    sp.add_argument("--spectrum", help="comma-separated eigenvalues")
    sp.add_argument("--csv", help="file with one eigenvalue per line")
    sp.add_argument("--json", help='file {"n": .., "m": .., "eigenvalues": [..]}')
    sp.add_argument("--tol", type=float, default=TOL_DEFAULT,
                    help="tolerance relative to the largest eigenvalue")
    sp.add_argument("--format", choices=("human", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absppt",
        description="Decide from a spectrum whether a PSD operator is PPT "
                    "under every NxM tensor decomposition.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="certify or refute absolute PPT")
    _add_input(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("enumerate", help="list the realizable ordering pairs for p")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("counterexample", help="write an explicit non-PPT matrix")
    _add_input(sp)
    sp.add_argument("--out", help="output JSON path (stdout if omitted)")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("oracle", help="Haar-random falsification search")
    _add_input(sp)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AbsPPTError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
