"""Command-line surface: encode/collect/repair round-trips on shard
containers, design generation, bound and trade-off queries, the repair
delay sweep, and the locality layer.

Every subcommand is deterministic for fixed flags (randomized paths take
``--seed``), so runs are reproducible byte for byte.  Exit status: 0 on
success, 1 on a domain error (infeasible parameters, wrong file size,
failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import difflib
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import designs
from .bounds import (
    classical_corner_points,
    corner_points,
    file_size_bound,
    min_bandwidth_for_storage,
    min_bandwidth_point,
    tradeoff_curve,
)
from .constructions import (
    DcbdCode,
    DesignPlacedCode,
    GabMdsCode,
    RelaxedCode,
    TransposeCode,
    bfr_collect,
    bfr_repair,
)
from .delay import SCHEMES, DelayQuery, decimal, render_csv, repair_delay_sweep
from .errors import BfrError
from .fields import BinaryExtField, TowerField
from .flowgraph import mincut_oracle
from .lrc import (
    LrcMdsCode,
    LrcProjectiveCode,
    LrcRegenCode,
    LrcParams,
    local_dimension,
    resilience_bound,
    resilience_witness_search,
    ura_file_size_bound,
)
from .params import SystemParams, validate_params
from .regenerating import RegenParams
from .shards import load_shards, save_shards, symbol_codec
from .verify import render_report, verify_exhaustive


class _Parser(argparse.ArgumentParser):
    """Argument parser that suggests a close flag on typos."""

    suggestion_pool: tuple = ()

    def error(self, message):
        match = re.search(r"unrecognized arguments: (--?[A-Za-z][\w-]*)", message)
        if match and _Parser.suggestion_pool:
            close = difflib.get_close_matches(
                match.group(1), _Parser.suggestion_pool, n=1, cutoff=0.5
            )
            if close:
                message = f"{message} (did you mean {close[0]}?)"
        super().error(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _int_list(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from exc


def _node_groups(text: str) -> list:
    """Semicolon-separated node lists, one group per chosen block."""
    try:
        return [
            [int(part) for part in group.split(",") if part != ""]
            for group in text.split(";")
        ]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected groups like 0,1;2,3 -- got {text!r}"
        ) from exc


def _show(value) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f} ({decimal(f)})"


def _write_text(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


def _require(args, *names) -> None:
    missing = [
        "--" + name.replace("_", "-")
        for name in names
        if getattr(args, name) is None
    ]
    if missing:
        raise BfrError(
            f"{args.command} needs {', '.join(missing)} for this variant"
        )


# ---------------------------------------------------------------------------
# design


def _cmd_design(args) -> int:
    if args.type == "projective":
        _require(args, "p")
        design = designs.projective_plane(args.p)
    elif args.type == "rbibd":
        _require(args, "p")
        design = designs.rbibd_affine(args.p)
    else:
        _require(args, "v", "kappa", "reps")
        design = designs.dcbd(args.v, args.kappa, args.reps)
    _write_text(designs.design_to_text(design), args.out)
    return 0


# ---------------------------------------------------------------------------
# encode / collect / repair / verify


def _sub_params(args) -> RegenParams:
    _require(args, "sub_n", "sub_k", "sub_d")
    return RegenParams(
        args.sub_n, args.sub_k, args.sub_d, beta=args.sub_beta, mode=args.mode
    )


def _unencoded_code(args):
    bits = args.field_bits
    if args.construction == "gabmds":
        _require(args, "b", "c", "kc")
        outer_len = args.b * args.kc
        field = TowerField(BinaryExtField(bits), outer_len)
        return GabMdsCode(args.b, args.c, args.kc, args.rho, field=field)
    field = BinaryExtField(bits)
    if args.construction == "transpose":
        _require(args, "n", "k")
        return TransposeCode(args.n, args.k, field=field)
    if args.construction == "design":
        _require(args, "p")
        plane = designs.projective_plane(args.p)
        return DesignPlacedCode(
            plane.blocks,
            plane.v,
            _sub_params(args),
            field=field,
            design_name=f"projective-{args.p}",
        )
    if args.construction == "dcbd":
        _require(args, "b", "sigma")
        return DcbdCode(args.b, args.sigma, _sub_params(args), field=field)
    _require(args, "p", "sigma")
    return RelaxedCode(
        args.p, _sub_params(args), sigma=args.sigma, rho=args.rho, field=field
    )


def _bytes_to_symbols(data: bytes, field):
    width, _, unpack = symbol_codec(field)
    if len(data) % width:
        raise BfrError(
            f"input length {len(data)} is not a multiple of the "
            f"{width}-byte symbol width"
        )
    try:
        return [
            unpack(data[i * width : (i + 1) * width])
            for i in range(len(data) // width)
        ]
    except BfrError as exc:
        raise BfrError(
            f"{exc}; arbitrary binary input needs a byte-aligned field "
            "(--field-bits 8 or 16)"
        ) from None


def _symbols_to_bytes(symbols, field) -> bytes:
    _, pack, _ = symbol_codec(field)
    return b"".join(pack(s) for s in symbols)


def _container_target(pathstr: str) -> Path:
    """``--out`` names a container file (*.bfr) or a directory to create."""
    path = Path(pathstr)
    if path.suffix == ".bfr":
        path.parent.mkdir(parents=True, exist_ok=True)
    else:
        path.mkdir(parents=True, exist_ok=True)
    return path


def _cmd_encode(args) -> int:
    code = _unencoded_code(args)
    expected = code.K if isinstance(code, GabMdsCode) else code.params.M
    width, _, _ = symbol_codec(code.field)
    data = Path(args.infile).read_bytes()
    if len(data) != expected * width:
        raise BfrError(
            f"{args.construction} with these parameters stores {expected} "
            f"symbols = {expected * width} bytes; {args.infile} has "
            f"{len(data)} bytes"
        )
    code.encode(_bytes_to_symbols(data, code.field))
    path = save_shards(code, _container_target(args.outdir))
    blocks = len({blk for blk, _ in code.shards})
    print(
        f"encoded {len(data)} bytes into {len(code.shards)} nodes "
        f"({blocks} blocks) -> {path}"
    )
    return 0


def _cmd_collect(args) -> int:
    code = load_shards(args.shards)
    blocks = args.blocks
    groups = args.nodes
    if len(groups) != len(blocks):
        raise BfrError(
            f"--nodes lists {len(groups)} groups for {len(blocks)} blocks"
        )
    decoded = bfr_collect(code, blocks, dict(zip(blocks, groups)))
    payload = _symbols_to_bytes(decoded, code.field)
    if args.out is None:
        sys.stdout.buffer.write(payload)
    else:
        Path(args.out).write_bytes(payload)
        print(f"recovered {len(payload)} bytes -> {args.out}")
    return 0


def _cmd_repair(args) -> int:
    code = load_shards(args.shards)
    if len(args.failed) != 2:
        raise BfrError(f"--failed wants block,node -- got {args.failed}")
    blk, idx = args.failed
    p = code.params
    helpers = args.helpers
    if helpers is None:
        helpers = [x for x in range(p.b) if x != blk][: p.b - p.sigma]
    groups = args.nodes
    if groups is None:
        groups = [list(range(p.d_r))] * len(helpers)
    if len(groups) != len(helpers):
        raise BfrError(
            f"--nodes lists {len(groups)} groups for {len(helpers)} helpers"
        )
    vec, report = bfr_repair(code, (blk, idx), helpers, dict(zip(helpers, groups)))
    per_block = " ".join(
        f"{hb}:{report.per_block[hb]}" for hb in sorted(report.per_block)
    )
    print(f"rebuilt node ({blk}, {idx}): {len(vec)} symbols")
    print(f"downloaded {report.total} symbols; per block: {per_block}")
    ok = tuple(vec) == tuple(code.shards[(blk, idx)])
    print(f"matches stored shard: {'yes' if ok else 'NO'}")
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    code = load_shards(args.shards)
    report = verify_exhaustive(code, budget=args.budget, seed=args.seed)
    sys.stdout.write(render_report(report))
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# bounds / tradeoff / delay


def _bounds_params(args) -> SystemParams:
    k_c = args.k // (args.b - args.rho) if args.b > args.rho else 0
    d_r = args.d // (args.b - args.sigma) if args.b > args.sigma else 0
    c = max(k_c, d_r, 1)
    return SystemParams(
        n=args.b * c,
        b=args.b,
        M=args.M,
        k=args.k,
        rho=args.rho,
        d=args.d,
        sigma=args.sigma,
    )


def _cmd_bounds(args) -> int:
    params = _bounds_params(args)
    regime = validate_params(params)
    print(
        f"parameters: b={params.b} rho={params.rho} sigma={params.sigma} "
        f"k={params.k} d={params.d} M={params.M}"
    )
    print(f"regime: {regime}")
    lines = []
    try:
        msr, mbr = corner_points(params)
        lines.append(("min-storage", msr))
    except BfrError as exc:
        mbr = min_bandwidth_point(params)
        print(f"min-storage point: none ({exc})")
    lines.append(("min-bandwidth", mbr))
    for name, pt in lines:
        print(
            f"{name} point: alpha={_show(pt.alpha)} gamma={_show(pt.gamma)} "
            f"[{pt.source}]"
        )
    if regime == "I.B" and not (params.b == 2 and params.rho == 0):
        print("note: regime I.B corner values are conjectured tight")
    if args.alpha_ratio is not None:
        alpha = args.alpha_ratio * Fraction(params.M) / params.k
        pt = min_bandwidth_for_storage(params, alpha)
        beta = pt.gamma / params.d
        print(
            f"at alpha={_show(alpha)} (ratio {args.alpha_ratio}): least "
            f"gamma={_show(pt.gamma)} beta={_show(beta)} [{pt.source}]"
        )
    if args.oracle:
        two_block = params.b == 2 and params.rho == 0 and params.sigma == 1
        for name, pt in lines:
            beta = pt.gamma / params.d
            closed = file_size_bound(params, pt.alpha, beta)
            oracle = mincut_oracle(
                params,
                pt.alpha,
                beta,
                mode=args.oracle_mode,
                samples=args.oracle_samples,
                seed=args.seed,
            )
            agree = oracle.value == Fraction(params.M) == closed.value
            mode = "sampled" if oracle.sampled else "exhaustive"
            note = " conjectured" if closed.conjectured and not two_block else ""
            print(
                f"oracle[{name}]: cut={_show(oracle.value)} "
                f"closed-form={_show(closed.value)} M={params.M} "
                f"agreement={'yes' if agree else 'NO'} "
                f"({oracle.orders_checked} orders, {mode}{note})"
            )
    return 0


def _csv_lines(header: str, rows) -> str:
    out = [header]
    out.extend(",".join(row) for row in rows)
    return "\n".join(out) + "\n"


def _cmd_tradeoff(args) -> int:
    k_c = -(-args.k // 2)
    c = max(args.d, k_c)
    params = SystemParams(
        n=2 * c, b=2, M=args.M, k=args.k, rho=0, d=args.d, sigma=1
    )
    points = tradeoff_curve(params, steps=args.steps)
    if args.classical:
        points = list(points) + list(classical_corner_points(args.M, args.k, args.d))
    text = _csv_lines(
        "alpha,gamma,source",
        ((decimal(pt.alpha), decimal(pt.gamma), pt.source) for pt in points),
    )
    _write_text(text, args.csv)
    if args.csv is not None:
        print(f"{len(points)} points -> {args.csv}")
    return 0


def _cmd_delay(args) -> int:
    speeds = args.bandwidth if args.bandwidth else [Fraction(1)]
    query = DelayQuery(
        b=args.b,
        n=args.n,
        sigma=args.sigma,
        schemes=tuple(args.schemes.split(",")) if args.schemes else SCHEMES,
        bandwidth=tuple(speeds) if len(speeds) > 1 else speeds[0],
        max_overhead=args.max_overhead,
    )
    points = repair_delay_sweep(query)
    text = render_csv(points)
    _write_text(text, args.csv)
    if args.csv is not None:
        print(f"{len(points)} points -> {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# lrc


def _lrc_probe(args, M: int):
    base = BinaryExtField(args.base_bits)
    if args.construction == "iv":
        _require(args, "p", "kL")
        rho_l = 0 if args.rhoL is None else args.rhoL
        return LrcProjectiveCode(
            args.p, args.b, args.bL, rho_l, args.kL, M, base=base
        )
    if args.construction == "v":
        _require(args, "c", "N")
        return LrcMdsCode(
            args.b, args.bL, args.c, args.N, M, rho_L=args.rhoL, base=base
        )
    _require(args, "sigmaL", "sub_n", "sub_k", "sub_d")
    sub = RegenParams(args.sub_n, args.sub_k, args.sub_d, beta=args.sub_beta, mode=args.mode)
    return LrcRegenCode(args.b, args.bL, args.sigmaL, sub, M, base=base)


def _cmd_lrc_encode(args) -> int:
    probe = _lrc_probe(args, 1)
    width, _, _ = symbol_codec(probe.field)
    data = Path(args.infile).read_bytes()
    if len(data) % width or not data:
        raise BfrError(
            f"input length {len(data)} is not a positive multiple of the "
            f"{width}-byte symbol width"
        )
    M = len(data) // width
    code = _lrc_probe(args, M)
    code.encode(_bytes_to_symbols(data, code.field))
    path = save_shards(code, _container_target(args.outdir))
    print(
        f"encoded {len(data)} bytes ({M} symbols) into {len(code.shards)} "
        f"nodes -> {path}"
    )
    return 0


def _lrc_params(args) -> LrcParams:
    return LrcParams(
        b=args.b,
        b_L=args.bL,
        rho_L=args.rhoL,
        sigma_L=args.sigmaL,
        k_L=args.kL,
        d_L=args.dL,
        beta=args.beta,
        alpha=args.alpha,
    )


def _cmd_lrc_bound(args) -> int:
    params = _lrc_params(args)
    k_l = local_dimension(args.mode, params)
    m_max = ura_file_size_bound(args.mode, params, args.rho)
    print(f"local dimension K_L = {_show(k_l)}")
    print(f"max file size at rho={args.rho}: {_show(m_max)}")
    if args.M is not None:
        r = resilience_bound(args.M, k_l, args.b, args.bL, args.rhoL)
        print(f"resilience bound for M={args.M}: {r}")
    return 0


def _cmd_lrc_witness(args) -> int:
    code = load_shards(args.shards)
    report = resilience_witness_search(code)
    bound = resilience_bound(
        code.M, code.K_L, code.b, code.b_L, getattr(code, "rho_L", 0)
    )
    if report.witness_blocks:
        blocks = ",".join(str(x) for x in report.witness_blocks)
        detail = f"decoding fails with only blocks {blocks} left"
    else:
        detail = f"survives every set of {code.b - 1} block failures"
    print(f"witness resilience: {report.resilience} ({detail})")
    print(f"closed-form bound: {bound}")
    print(f"subsets checked: {report.subsets_checked}")
    print(f"bound met: {'yes' if report.resilience == bound else 'NO'}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_sub_regen_flags(parser) -> None:
    parser.add_argument("--sub-n", type=int, required=True, help="sub-code nodes")
    parser.add_argument("--sub-k", type=int, required=True, help="sub-code dimension")
    parser.add_argument("--sub-d", type=int, required=True, help="sub-code helpers")
    parser.add_argument("--sub-beta", type=int, default=1, help="per-helper symbols")
    parser.add_argument("--mode", choices=("MSR", "MBR"), default="MBR")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bfr", description=__doc__)
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="command", parser_class=_Parser
    )

    p = sub.add_parser("design", help="emit a block design as text")
    p.add_argument("--type", choices=("projective", "dcbd", "rbibd"), required=True)
    p.add_argument("--p", type=int, help="plane/affine order (projective, rbibd)")
    p.add_argument("--v", type=int, help="base point count (dcbd)")
    p.add_argument("--kappa", type=int, help="base block size (dcbd)")
    p.add_argument("--reps", type=int, help="combination repetitions (dcbd)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(handler=_cmd_design)

    p = sub.add_parser("encode", help="encode a file into a shard container")
    p.add_argument(
        "--construction",
        choices=("transpose", "design", "dcbd", "relaxed", "gabmds"),
        required=True,
    )
    p.add_argument("--n", type=int, help="total nodes (transpose)")
    p.add_argument("--k", type=int, help="collection total (transpose)")
    p.add_argument("--p", type=int, help="plane/affine order (design, relaxed)")
    p.add_argument("--b", type=int, help="blocks (dcbd, gabmds)")
    p.add_argument("--sigma", type=int, help="unavailable blocks (dcbd, relaxed)")
    p.add_argument("--rho", type=int, default=0, help="lost blocks (relaxed, gabmds)")
    p.add_argument("--c", type=int, help="nodes per block (gabmds)")
    p.add_argument("--kc", type=int, help="per-block collection count (gabmds)")
    p.add_argument("--sub-n", type=int, help="sub-code nodes")
    p.add_argument("--sub-k", type=int, help="sub-code dimension")
    p.add_argument("--sub-d", type=int, help="sub-code helpers")
    p.add_argument("--sub-beta", type=int, default=1, help="per-helper symbols")
    p.add_argument("--mode", choices=("MSR", "MBR"), default="MBR")
    p.add_argument("--field-bits", type=int, default=8, help="symbol width in bits")
    p.add_argument("--in", dest="infile", required=True, help="input file")
    p.add_argument("--out", dest="outdir", required=True, help="container directory")
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("collect", help="decode the file from chosen nodes")
    p.add_argument("--shards", required=True, help="container directory or file")
    p.add_argument("--blocks", type=_int_list, required=True, help="blocks, e.g. 0,1")
    p.add_argument(
        "--nodes", type=_node_groups, required=True, help="per-block nodes, e.g. 0,1;2,3"
    )
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(handler=_cmd_collect)

    p = sub.add_parser("repair", help="rebuild one node and meter bandwidth")
    p.add_argument("--shards", required=True, help="container directory or file")
    p.add_argument("--failed", type=_int_list, required=True, help="block,node")
    p.add_argument("--helpers", type=_int_list, help="helper blocks (default: first feasible)")
    p.add_argument(
        "--nodes", type=_node_groups, help="per-helper nodes (default: first d_r each)"
    )
    p.set_defaults(handler=_cmd_repair)

    p = sub.add_parser("verify", help="sweep collect/repair scenarios")
    p.add_argument("--shards", required=True, help="container directory or file")
    p.add_argument("--budget", type=int, default=1000, help="scenarios per category")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("bounds", help="file-size bound corner points")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--M", type=int, default=1, help="file size (scale only)")
    p.add_argument(
        "--alpha-ratio",
        type=_fraction,
        help="also bound bandwidth at alpha = ratio * M/k",
    )
    p.add_argument("--oracle", action="store_true", help="cross-check with the min-cut oracle")
    p.add_argument("--oracle-mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--oracle-samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0, help="oracle sampling seed")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("tradeoff", help="two-block trade-off sweep as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--M", type=int, default=1, help="file size (scale only)")
    p.add_argument("--steps", type=int, default=17)
    p.add_argument(
        "--classical", action="store_true", help="append unblocked corner points"
    )
    p.add_argument("--csv", help="output path (default stdout)")
    p.set_defaults(handler=_cmd_tradeoff)

    p = sub.add_parser("delay", help="repair-delay sweep as CSV")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--schemes", help=f"comma list from {','.join(SCHEMES)}")
    p.add_argument(
        "--bandwidth",
        type=_fraction,
        action="append",
        default=None,
        help="helper-block bandwidth; repeat for per-block values",
    )
    p.add_argument("--max-overhead", type=_fraction, help="drop points above this overhead")
    p.add_argument("--csv", help="output path (default stdout)")
    p.set_defaults(handler=_cmd_delay)

    p = sub.add_parser("lrc", help="locality layer")
    lrc_sub = p.add_subparsers(
        dest="lrc_command", required=True, metavar="subcommand", parser_class=_Parser
    )

    q = lrc_sub.add_parser("encode", help="encode with local groups")
    q.add_argument("--construction", choices=("iv", "v", "vi"), required=True)
    q.add_argument("--b", type=int, required=True, help="total blocks")
    q.add_argument("--bL", type=int, required=True, help="blocks per group")
    q.add_argument("--p", type=int, help="plane order (iv)")
    q.add_argument("--rhoL", type=int, default=None, help="local block loss (iv, v)")
    q.add_argument("--kL", type=int, help="local collection total (iv)")
    q.add_argument("--c", type=int, help="symbols per block (v)")
    q.add_argument("--N", type=int, help="codeword length (v)")
    q.add_argument("--sigmaL", type=int, help="local unavailable blocks (vi)")
    q.add_argument("--sub-n", type=int, help="local sub-code nodes (vi)")
    q.add_argument("--sub-k", type=int, help="local sub-code dimension (vi)")
    q.add_argument("--sub-d", type=int, help="local sub-code helpers (vi)")
    q.add_argument("--sub-beta", type=int, default=1)
    q.add_argument("--mode", choices=("MSR", "MBR"), default="MBR")
    q.add_argument("--base-bits", type=int, default=8, help="base-field bits")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--out", dest="outdir", required=True)
    q.set_defaults(handler=_cmd_lrc_encode)

    q = lrc_sub.add_parser("bound", help="locality file-size/resilience bounds")
    q.add_argument("--mode", choices=("MSR", "MBR"), required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--bL", type=int, required=True)
    q.add_argument("--rho", type=int, required=True, help="block losses to survive")
    q.add_argument("--rhoL", type=int, default=0)
    q.add_argument("--sigmaL", type=int, default=1)
    q.add_argument("--kL", type=int)
    q.add_argument("--dL", type=int)
    q.add_argument("--beta", type=int, default=1)
    q.add_argument("--alpha", type=int)
    q.add_argument("--M", type=int, help="also bound resilience for this file size")
    q.set_defaults(handler=_cmd_lrc_bound)

    q = lrc_sub.add_parser("witness", help="search worst-case block erasures")
    q.add_argument("--shards", required=True, help="container directory or file")
    q.set_defaults(handler=_cmd_lrc_witness)

    pool = set()

    def collect(node):
        for action in node._actions:
            pool.update(action.option_strings)
            if isinstance(action, argparse._SubParsersAction):
                for choice in action.choices.values():
                    collect(choice)

    collect(parser)
    _Parser.suggestion_pool = tuple(sorted(pool))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BfrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
