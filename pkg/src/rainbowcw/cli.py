"""Command-line interface.

Every command validates its inputs, runs on one seeded random generator, and
embeds a reproducible manifest in each output: rerunning with an equal
manifest produces byte-identical output.  Files are written atomically
(temp file, then rename).  All failures exit nonzero with a structured
message on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from dataclasses import dataclass
from math import comb

from . import __version__
from .complexes import koszul_betti
from .cwposet import export_poset, face_poset, is_cw_poset
from .determinantal import (
    PureComplex,
    alexander_dual_complex,
    initial_ideal_maximal_minors,
    random_pure_complex,
    random_term_order,
    rainbow_dfi,
)
from .eagon_northcott import sparse_eagon_northcott
from .errors import ParseError, RainbowError, SizeCap
from .gfp import DEFAULT_PRIME
from .ideals import MonomialIdeal
from .monomials import format_monomial, parse_monomial
from .polarization import certify_polarization, find_free_sequence, free_vertices
from .strands import rainbow_linear_strand
from .termorders import TermOrder, diagonal_order

MAX_N, MAX_M, MAX_CHOOSE = 4, 8, 70


@dataclass
class RunManifest:
    command: str
    n: int | None = None
    m: int | None = None
    order: dict | None = None
    prime: int = DEFAULT_PRIME
    input_facets: list | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "tool": "rainbowcw",
            "version": __version__,
            "command": self.command,
            "n": self.n,
            "m": self.m,
            "order": self.order,
            "prime": self.prime,
            "input_facets": self.input_facets,
            "seed": self.seed,
        }


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rainbowcw-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(payload: dict, manifest: RunManifest, out: str | None) -> None:
    payload = dict(payload)
    payload["manifest"] = manifest.to_json()
    _emit(json.dumps(payload, indent=2, sort_keys=True), out)


def _emit_csv(header: list[str], rows: list[list], manifest: RunManifest, out: str | None) -> None:
    import csv
    import io

    buffer = io.StringIO()
    buffer.write("# manifest: " + json.dumps(manifest.to_json(), sort_keys=True) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buffer.getvalue(), out)


def _check_size(n: int, m: int, force: bool) -> None:
    if n < 1 or m < n:
        raise RainbowError(f"need 1 <= n <= m, got n={n}, m={m}")
    if n > MAX_N or m > MAX_M or comb(m, n) > MAX_CHOOSE:
        if not force:
            raise SizeCap(
                f"size {n}x{m} exceeds the default caps (n<={MAX_N}, m<={MAX_M}, "
                f"C(m,n)<={MAX_CHOOSE}); pass --force to override"
            )
        print(f"warning: {n}x{m} exceeds the desk-scale caps", file=sys.stderr)


def _prime(args) -> int:
    env = os.environ.get("RAINBOW_PRIME")
    if env:
        return int(env)
    return args.prime


def _load_order(args, n: int, m: int) -> TermOrder:
    if getattr(args, "order_file", None):
        with open(args.order_file) as handle:
            try:
                order = TermOrder.from_json(json.load(handle))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ParseError(f"bad term-order file: {exc}") from exc
        if (order.n, order.m) != (n, m):
            raise RainbowError(f"order file is {order.n}x{order.m}, expected {n}x{m}")
        return order
    return diagonal_order(n, m)


def _load_pure_complex(path: str) -> PureComplex:
    with open(path) as handle:
        try:
            return PureComplex.from_json(json.load(handle))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad complex file: {exc}") from exc


def _delta_from_args(args) -> PureComplex:
    if getattr(args, "delta_file", None):
        delta = _load_pure_complex(args.delta_file)
    elif getattr(args, "dual_file", None):
        delta = alexander_dual_complex(_load_pure_complex(args.dual_file))
    else:
        raise RainbowError("one of --delta-file / --dual-file is required")
    if getattr(args, "delete", None):
        drop = {tuple(sorted(int(x) for x in spec.split(","))) for spec in args.delete}
        delta = PureComplex(delta.n, delta.m, delta.facets - drop)
    return delta


def _ideal_json(ideal: MonomialIdeal) -> list[str]:
    return [format_monomial(g) for g in ideal.gens]


# -- subcommands ----------------------------------------------------------------


def cmd_initial_ideal(args) -> int:
    _check_size(args.n, args.m, args.force)
    order = _load_order(args, args.n, args.m)
    ideal = initial_ideal_maximal_minors(order)
    manifest = RunManifest("initial-ideal", args.n, args.m, order.to_json(), _prime(args))
    _emit_json({"generators": _ideal_json(ideal)}, manifest, args.output)
    return 0


def cmd_sparse_en(args) -> int:
    _check_size(args.n, args.m, args.force)
    order = _load_order(args, args.n, args.m)
    p = _prime(args)
    cx = sparse_eagon_northcott(order)
    manifest = RunManifest("sparse-en", args.n, args.m, order.to_json(), p)
    if args.export == "dot":
        _emit(export_poset(face_poset(cx), "DOT"), args.output)
        return 0
    payload: dict = {"complex": cx.to_json(), "ranks": list(cx.ranks())}
    if args.certify_cw:
        poset = face_poset(cx)
        key = lambda label: order.sort_key(poset.mdegs[label])
        payload["cw_certificate"] = is_cw_poset(poset, p=p, atom_key=key).to_json()
        payload["is_resolution"] = cx.is_resolution(p)
    _emit_json(payload, manifest, args.output)
    return 0


def cmd_strand(args) -> int:
    delta = _delta_from_args(args)
    _check_size(delta.n, delta.m, args.force)
    order = _load_order(args, delta.n, delta.m)
    p = _prime(args)
    strand = rainbow_linear_strand(delta, order)
    rain = rainbow_dfi(delta, order)
    table = koszul_betti(rain, p=p) if not rain.is_zero() else None
    manifest = RunManifest(
        "strand", delta.n, delta.m, order.to_json(), p, [list(f) for f in delta.sorted_facets()]
    )
    if args.betti_csv:
        rows = table.to_csv_rows() if table else []
        _emit_csv(["i", "j", "alpha", "rank"], [list(r) for r in rows], manifest, args.betti_csv)
    payload = {
        "complex": strand.to_json(),
        "ranks": list(strand.ranks()),
        "betti_total": list(table.total_vector()) if table else [1],
    }
    _emit_json(payload, manifest, args.output)
    return 0


def cmd_betti(args) -> int:
    with open(args.ideal_file) as handle:
        try:
            gens = [parse_monomial(s) for s in json.load(handle)]
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad ideal file: {exc}") from exc
    ideal = MonomialIdeal(gens)
    p = _prime(args)
    table = koszul_betti(ideal, p=p)
    manifest = RunManifest("betti", prime=p)
    _emit_csv(
        ["i", "j", "alpha", "rank"],
        [list(r) for r in table.to_csv_rows()],
        manifest,
        args.output,
    )
    return 0


def cmd_free_seq(args) -> int:
    dual = _load_pure_complex(args.dual_file)
    _check_size(dual.n, dual.m, args.force)
    order = _load_order(args, dual.n, dual.m)
    cx = sparse_eagon_northcott(order)
    from .determinantal import initial_minor

    targets = [format_monomial(initial_minor(order, f)) for f in dual.sorted_facets()]
    report = find_free_sequence(cx, targets)
    manifest = RunManifest(
        "free-seq", dual.n, dual.m, order.to_json(), _prime(args),
        [list(f) for f in dual.sorted_facets()],
    )
    _emit_json(report.to_json(), manifest, args.output)
    return 0


def cmd_polarize(args) -> int:
    delta = _delta_from_args(args)
    _check_size(delta.n, delta.m, args.force)
    order = _load_order(args, delta.n, delta.m)
    report = certify_polarization(delta, order, max_degree=args.max_degree)
    manifest = RunManifest(
        "polarize", delta.n, delta.m, order.to_json(), _prime(args),
        [list(f) for f in delta.sorted_facets()],
    )
    if args.summary_csv:
        from .determinantal import initial_minor

        dual = alexander_dual_complex(delta)
        cx = sparse_eagon_northcott(order)
        targets = [format_monomial(initial_minor(order, f)) for f in dual.sorted_facets()]
        free = find_free_sequence(cx, targets).found
        _emit_csv(
            ["n", "m", "r", "linear", "free_seq", "polarization", "power_of_max"],
            [[report.n, report.m, report.r, int(report.linear), int(free),
              int(report.certified), int(report.is_power_of_maximal)]],
            manifest,
            args.summary_csv,
        )
    _emit_json(report.to_json(), manifest, args.output)
    return 0


def cmd_cw_check(args) -> int:
    _check_size(args.n, args.m, args.force)
    order = _load_order(args, args.n, args.m)
    p = _prime(args)
    cx = sparse_eagon_northcott(order)
    poset = face_poset(cx)
    key = lambda label: order.sort_key(poset.mdegs[label])
    cert = is_cw_poset(poset, p=p, atom_key=key)
    manifest = RunManifest("cw-check", args.n, args.m, order.to_json(), p)
    _emit_json(
        {"certificate": cert.to_json(), "ranks": list(cx.ranks())}, manifest, args.output
    )
    return 0


def cmd_experiment(args) -> int:
    _check_size(args.n, args.m, args.force)
    rng = random.Random(args.seed)
    p = _prime(args)
    n, m = args.n, args.m
    manifest = RunManifest(args.mode, n, m, None, p, seed=args.seed)
    rows: list[list] = []
    if args.mode == "free-seq-necessity":
        # Does linear resolution force a free sequence on the dual facets?
        # Tabulated only; no overlap hypothesis is imposed.
        header = ["sample", "n", "m", "r", "linear", "free_seq"]
        for k in range(args.samples):
            dual = random_pure_complex(n, m, rng, rng.randint(0, comb(m, n)))
            delta = alexander_dual_complex(dual)
            order = random_term_order(n, m, rng) if args.random_orders else diagonal_order(n, m)
            rain = rainbow_dfi(delta, order)
            if rain.is_zero():
                continue
            table = koszul_betti(rain, p=p)
            linear = table.rows_present() <= {0, n - 1}
            cx = sparse_eagon_northcott(order)
            from .determinantal import initial_minor

            targets = [format_monomial(initial_minor(order, f)) for f in dual.sorted_facets()]
            free = find_free_sequence(cx, targets).found
            rows.append([k, n, m, len(dual), int(linear), int(free)])
    elif args.mode == "free-vertex-orders":
        # For the given facets, how often does a random order make them all
        # free vertices of the supporting complex?
        header = ["sample", "n", "m", "targets", "all_free"]
        targets = [tuple(sorted(int(x) for x in spec.split(","))) for spec in args.targets]
        if not targets:
            raise RainbowError("--targets is required for free-vertex-orders")
        for k in range(args.samples):
            order = random_term_order(n, m, rng)
            cx = sparse_eagon_northcott(order)
            poset = face_poset(cx)
            free = free_vertices(poset)
            from .determinantal import initial_minor

            labels = [format_monomial(initial_minor(order, f)) for f in targets]
            rows.append(
                [k, n, m, ";".join(",".join(map(str, t)) for t in targets),
                 int(all(l in free for l in labels))]
            )
    else:
        raise RainbowError(f"unknown experiment mode {args.mode!r}")
    _emit_csv(header, rows, manifest, args.output)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowcw",
        description="Sparse Eagon-Northcott complexes, CW certificates, rainbow "
        "DFI strands, and polarizations",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, size: bool = True) -> None:
        if size:
            p.add_argument("-n", type=int, required=True)
            p.add_argument("-m", type=int, required=True)
        p.add_argument("--order-file", help="term order JSON (default: diagonal order)")
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
        p.add_argument("--force", action="store_true", help="override the size caps")
        p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = sub.add_parser("initial-ideal", help="initial ideal of maximal minors")
    common(p)
    p.set_defaults(func=cmd_initial_ideal)

    p = sub.add_parser("sparse-en", help="sparse Eagon-Northcott complex")
    common(p)
    p.add_argument("--export", choices=["json", "dot"], default="json")
    p.add_argument("--certify-cw", action="store_true")
    p.set_defaults(func=cmd_sparse_en)

    p = sub.add_parser("strand", help="linear strand of a rainbow DFI")
    common(p, size=False)
    p.add_argument("--delta-file", help="pure complex JSON for Delta")
    p.add_argument("--dual-file", help="pure complex JSON for the dual of Delta")
    p.add_argument("--delete", action="append", default=[],
                   help="facet 'c1,c2,...' to delete from Delta (repeatable)")
    p.add_argument("--betti-csv", help="also write the Betti oracle table as CSV")
    p.set_defaults(func=cmd_strand)

    p = sub.add_parser("betti", help="Koszul-homology Betti table of a monomial ideal")
    common(p, size=False)
    p.add_argument("--ideal-file", required=True, help="JSON array of monomial strings")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("free-seq", help="search a free sequence for dual facets")
    common(p, size=False)
    p.add_argument("--dual-file", required=True)
    p.set_defaults(func=cmd_free_seq)

    p = sub.add_parser("polarize", help="certify the dual as a polarization")
    common(p, size=False)
    p.add_argument("--delta-file")
    p.add_argument("--dual-file")
    p.add_argument("--delete", action="append", default=[])
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--summary-csv", help="also write the one-row CSV summary")
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("cw-check", help="CW-poset certificate of the sparse complex")
    common(p)
    p.set_defaults(func=cmd_cw_check)

    p = sub.add_parser("experiment", help="randomized exploratory sweeps (tabulates only)")
    common(p)
    p.add_argument("--mode", choices=["free-seq-necessity", "free-vertex-orders"], required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-orders", action="store_true")
    p.add_argument("--targets", action="append", default=[],
                   help="facet 'c1,c2,...' (repeatable; free-vertex-orders mode)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RainbowError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
