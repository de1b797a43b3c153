"""Command-line front door.

Results go to stdout, one machine-parseable record per line (tab
separated); progress goes to stderr.  Exit status: 0 on success / a true
answer, 1 on a found counterexample / a false answer, 2 on usage errors.
Output for fixed arguments is byte-identical across runs; `--jobs k`
fans range work out to processes and merges deterministically.
"""

from __future__ import annotations

import argparse
import os
import sys
from multiprocessing import Pool

from . import certify, pipelines, report, universality
from .errors import CertificateError, PipelineFailure
from .sums import SumForm, parse_sum
from .ternary import DICKSON_FORMS, dickson_member, excluded_set_bruteforce

USAGE_ERROR = 2


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _parse_form(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected a,b,c got {text!r}")
    a, b, c = (int(p) for p in parts)
    if min(a, b, c) < 1:
        raise ValueError("form coefficients must be positive")
    return a, b, c


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="polysum",
        description="witnesses, certificates and desk-scale scans for "
                    "sums of generalized polygonal numbers",
    )
    default_jobs = int(os.environ.get("POLYSUM_JOBS", "1"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witness", help="construct indices (and a certificate) for one n")
    p.add_argument("--sum", required=True, help="e.g. p5+2p5+6p5 or 3*p3+p5+p7")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--over", choices=("Z", "N"), default="Z")
    p.add_argument("--cert", help="write the certificate JSON here")

    p = sub.add_parser("check-range", help="scan representability of every n <= max")
    p.add_argument("--sum", required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--over", choices=("Z", "N"), default="Z")
    p.add_argument("--witnesses", choices=("table", "pipeline"), default="table")
    p.add_argument("--jobs", type=int, default=default_jobs)
    p.add_argument("--figures", help="directory for report figures")

    p = sub.add_parser("excluded", help="excluded set of a diagonal ternary form")
    p.add_argument("--form", required=True, help="a,b,c")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--figures")

    p = sub.add_parser("dickson", help="closed-form excluded-set membership")
    p.add_argument("--form", required=True, help="one of 1,1,3 / 1,2,3 / 1,3,3")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("filter", help="pairs (b,c) surviving a counterexample scan")
    p.add_argument("--b-max", type=int, default=10)
    p.add_argument("--c-max", type=int, default=10)
    p.add_argument("--max", type=int, default=10000)
    p.add_argument("--figures")

    p = sub.add_parser("conjecture", help="scan the 14 conjectured pairs")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--figures")

    p = sub.add_parser("certify-range", help="witness+verify every n in a range")
    p.add_argument("--sum", required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--end", type=int, required=True, help="inclusive")
    p.add_argument("--out", help="directory for certificate files (omit to verify only)")
    p.add_argument("--jobs", type=int, default=default_jobs)
    p.add_argument("--figures")

    p = sub.add_parser("verify-cert", help="verify a certificate file")
    p.add_argument("--file", required=True)

    return parser.parse_args(argv)


def _cmd_witness(args) -> int:
    sum_form = parse_sum(args.sum, args.over)
    rep, cert = pipelines.witness_for_sum(sum_form, args.n)
    if args.cert:
        certify.write_certificate(cert, args.cert)
    print(f"{args.n}\t{rep.x}\t{rep.y}\t{rep.z}")
    return 0


def _cmd_check_range(args) -> int:
    sum_form = parse_sum(args.sum, args.over)
    if args.witnesses == "pipeline":
        rep = _certified_scan(sum_form, 0, args.max, args.jobs, None, args.figures)
        if rep is None:
            print(f"{sum_form}\t{args.over}\t{args.max}\tok\tpipeline")
            return 0
        print(f"{sum_form}\t{args.over}\t{args.max}\tfail:{rep}\tpipeline")
        return 1
    _progress(f"scanning {sum_form} over {args.over} up to {args.max}")
    result = universality.check_range(sum_form, args.max)
    if args.figures:
        path = report.save_scan_figure([result], args.max, args.figures,
                                       name=f"check-{sum_form}.png")
        _progress(f"figure written to {path}")
    outcome = "ok" if result.ok else f"fail:{result.first_failure}"
    print(f"{sum_form}\t{args.over}\t{args.max}\t{outcome}\t{result.witness_source}")
    return 0 if result.ok else 1


def _cmd_excluded(args) -> int:
    form = _parse_form(args.form)
    excluded = excluded_set_bruteforce(form, args.max)
    for n in excluded:
        print(n)
    if args.figures:
        path = report.save_excluded_figure(form, args.max, excluded, args.figures)
        _progress(f"figure written to {path}")
    return 0


def _cmd_dickson(args) -> int:
    form = _parse_form(args.form)
    if form not in DICKSON_FORMS:
        raise ValueError(f"no closed-form excluded set for {args.form}")
    member = dickson_member(form, args.n)
    print("true" if member else "false")
    return 0 if member else 1


def _cmd_filter(args) -> int:
    survivors = universality.theorem10_filter(args.b_max, args.c_max, args.max)
    for b, c in survivors:
        print(f"{b}\t{c}")
    if args.figures:
        keep = set(survivors)
        counterex = {}
        for b in range(1, args.b_max + 1):
            for c in range(b, args.c_max + 1):
                if (b, c) not in keep:
                    counterex[(b, c)] = universality.find_counterexample(
                        SumForm(((1, 5), (b, 5), (c, 5))), args.max)
        path = report.save_filter_figure(args.b_max, args.c_max, args.max,
                                         survivors, counterex, args.figures)
        _progress(f"figure written to {path}")
    return 0


def _cmd_conjecture(args) -> int:
    reports = universality.conjecture10_check(args.max)
    all_ok = True
    for (b, c), rep in reports.items():
        outcome = "ok" if rep.ok else f"fail:{rep.first_failure}"
        print(f"{b}\t{c}\t{args.max}\t{outcome}")
        all_ok = all_ok and rep.ok
    if args.figures:
        path = report.save_scan_figure(list(reports.values()), args.max, args.figures,
                                       name="conjecture.png")
        _progress(f"figure written to {path}")
    return 0 if all_ok else 1


def _certify_chunk(task):
    sum_text, start, end, out_dir = task
    sum_form = parse_sum(sum_text)
    pipelines.warm_caches(sum_form, end)
    sizes = []
    for n in range(start, end + 1):
        rep, cert = pipelines.witness_for_sum(sum_form, n)
        result = certify.verify(cert)
        if not result:
            return n, result.reason, sizes
        if out_dir:
            certify.write_certificate(cert, os.path.join(out_dir, f"{sum_form}-n{n}.json"))
        sizes.append(max(abs(rep.x), abs(rep.y), abs(rep.z)))
    return None, None, sizes


def _certified_scan(sum_form, start, end, jobs, out_dir, figures):
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    count = end - start + 1
    jobs = max(1, min(jobs, count))
    if jobs == 1:
        chunks = [(str(sum_form), start, end, out_dir)]
        results = [_certify_chunk(chunks[0])]
    else:
        size = (count + jobs - 1) // jobs
        chunks = [(str(sum_form), lo, min(lo + size - 1, end), out_dir)
                  for lo in range(start, end + 1, size)]
        with Pool(jobs) as pool:
            results = pool.map(_certify_chunk, chunks)
    sizes = []
    for bad_n, reason, chunk_sizes in results:
        if bad_n is not None:
            _progress(f"certificate failed at n={bad_n}: {reason}")
            return bad_n
        sizes.extend(chunk_sizes)
    if figures:
        path = report.save_witness_size_figure(str(sum_form), range(start, end + 1),
                                               sizes, figures)
        _progress(f"figure written to {path}")
    return None


def _cmd_certify_range(args) -> int:
    sum_form = parse_sum(args.sum)
    if args.end < args.start:
        raise ValueError("--end must be >= --start")
    bad = _certified_scan(sum_form, args.start, args.end, args.jobs, args.out, args.figures)
    total = args.end - args.start + 1
    if bad is None:
        print(f"{sum_form}\t{args.start}\t{args.end}\tcertified\t{total}")
        return 0
    print(f"{sum_form}\t{args.start}\t{args.end}\tfailed-at\t{bad}")
    return 1


def _cmd_verify_cert(args) -> int:
    with open(args.file, encoding="ascii") as fh:
        cert = certify.from_json(fh.read())
    result = certify.verify(cert)
    if result:
        print("valid")
        return 0
    print(f"invalid\t{result.reason}")
    return 1


_COMMANDS = {
    "witness": _cmd_witness,
    "check-range": _cmd_check_range,
    "excluded": _cmd_excluded,
    "dickson": _cmd_dickson,
    "filter": _cmd_filter,
    "conjecture": _cmd_conjecture,
    "certify-range": _cmd_certify_range,
    "verify-cert": _cmd_verify_cert,
}


def main(argv=None) -> int:
    try:
        args = _parse_args(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code not in (0,) else 0
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, CertificateError, OSError) as exc:
        _progress(f"error: {exc}")
        return USAGE_ERROR
    except PipelineFailure as exc:
        _progress(f"pipeline failure (this is a bug): {exc}")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
