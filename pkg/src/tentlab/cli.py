"""Command-line surface.

Subcommands: ``lattice gen|validate``, ``norm rm|hardy|bergman|tent|bloch``,
``seq norm|dual``, ``carleson check|classical``, ``tg apply|check``,
``verify all|norms|carleson|tg``.

Reports are JSON with an embedded run manifest (command, input hashes,
configuration, version, timing); ``verify`` emits CSV with one row per
check.  Identical invocations produce byte-identical reports except for the
manifest's timing block.  Exit codes: 0 success, 1 input error or failed
verification, 2 when --expect-bounded was given and the verdict came back
unbounded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .carleson import classical_carleson_constant, condition_report
from .functions import function_from_spec
from .lattice import generate_luecking_lattice, lattice_from_json, lattice_to_json, validate_lattice
from .measures import measure_from_spec
from .norms import BlochGrid, ExponentSet, QuadratureConfig, bergman_norm, bloch_seminorm, hardy_norm, rm_norm, tent_norm
from .seqtent import closed_form_dual_norm, dual_norm_estimate, seq_tent_norm
from .tgop import symbol_condition_hardy, symbol_condition_rm, tg_apply
from . import verify as verify_mod


class CliError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise CliError(message)


def _load_arg(text: str, inputs: dict) -> dict:
    """Parse an inline JSON argument or @file reference, hashing files."""
    if text.startswith("@"):
        path = text[1:]
        try:
            raw = open(path, "rb").read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}")
        inputs[path] = hashlib.sha256(raw).hexdigest()
        text = raw.decode()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON argument: {exc}")


def _parse_exponent(text: str) -> float:
    if text in ("inf", "Inf", "INF"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise CliError(f"bad exponent value: {text!r}")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise CliError(f"bad complex value: {text!r}")


def _quad_config(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(
            radial_nodes=args.radial_nodes,
            angular_nodes=args.angular_nodes,
            boundary_cutoff=args.cutoff,
            refinement_levels=args.levels,
            rel_tol=args.rel_tol,
        )
    except ValueError as exc:
        raise CliError(str(exc))


def _add_quad_flags(p: argparse.ArgumentParser):
    p.add_argument("--radial-nodes", type=int, default=64)
    p.add_argument("--angular-nodes", type=int, default=256)
    p.add_argument("--cutoff", type=float, default=1e-6)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--rel-tol", type=float, default=1e-6)


def _manifest(argv, inputs, config, t0, outputs) -> dict:
    return {
        "command": " ".join(argv),
        "inputs": inputs,
        "config": config,
        "version": __version__,
        "threads": int(os.environ.get("TENTLAB_THREADS", "1")),
        "timing": {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "wall_clock_s": round(time.monotonic() - t0, 6),
        },
        "outputs": outputs,
    }


def _emit(doc: dict, out_path: str | None):
    text = json.dumps(doc, indent=1, sort_keys=True, default=float)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _norm_estimate_payload(est) -> dict:
    return {"value": est.value, "abs_error": est.abs_error, "config": est.config}


def build_parser() -> Parser:
    root = Parser(prog="tentlab", description=__doc__)
    sub = root.add_subparsers(dest="cmd", required=True)

    lat = sub.add_parser("lattice").add_subparsers(dest="sub", required=True)
    g = lat.add_parser("gen")
    g.add_argument("--max-level", type=int, required=True)
    g.add_argument("--out")
    v = lat.add_parser("validate")
    v.add_argument("--lattice", required=True)
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--multiplicity-k", type=float, default=1.0)
    v.add_argument("--out")

    norm = sub.add_parser("norm").add_subparsers(dest="sub", required=True)
    for mode in ("rm", "hardy", "bergman", "tent", "bloch"):
        p = norm.add_parser(mode)
        p.add_argument("--f", required=True, help="function spec JSON or @file")
        if mode in ("rm", "tent"):
            p.add_argument("--p", required=True)
            p.add_argument("--q", required=True)
            p.add_argument("--n", type=int, default=0)
        if mode == "tent":
            p.add_argument("--alpha", type=float, required=True)
            p.add_argument("--M", type=float, default=2.0)
            p.add_argument("--weight-exponent", type=float, default=None)
        if mode == "hardy":
            p.add_argument("--s", type=float, required=True)
        if mode == "bergman":
            p.add_argument("--p", required=True)
        if mode == "bloch":
            p.add_argument("--gamma", type=float, required=True)
        _add_quad_flags(p)
        p.add_argument("--out")

    seq = sub.add_parser("seq").add_subparsers(dest="sub", required=True)
    sn = seq.add_parser("norm")
    sn.add_argument("--lattice", required=True, help="lattice file from `lattice gen`")
    sn.add_argument("--seq", required=True, help="JSON array (or @file) aligned to the lattice")
    sn.add_argument("--p", required=True)
    sn.add_argument("--q", required=True)
    sn.add_argument("--M", type=float, default=2.0)
    sn.add_argument("--xi-nodes", type=int, default=1024)
    sn.add_argument("--out")
    sd = seq.add_parser("dual")
    sd.add_argument("--lattice", required=True)
    sd.add_argument("--seq", required=True)
    sd.add_argument("--p", required=True)
    sd.add_argument("--q", required=True)
    sd.add_argument("--trials", type=int, default=8)
    sd.add_argument("--iters", type=int, default=60)
    sd.add_argument("--out")

    car = sub.add_parser("carleson").add_subparsers(dest="sub", required=True)
    cc = car.add_parser("check")
    cc.add_argument("--mu", required=True, help="measure spec JSON or @file")
    for name in ("p", "q", "s", "t"):
        cc.add_argument(f"--{name}", required=True)
    cc.add_argument("--alpha", type=float, default=1.0)
    cc.add_argument("--M", type=float, default=2.0)
    cc.add_argument("--max-level", type=int, default=9)
    cc.add_argument("--depths", default=None, help="comma-separated, e.g. 6,7,8,9")
    cc.add_argument("--expect-bounded", action="store_true")
    cc.add_argument("--out")
    cl = car.add_parser("classical")
    cl.add_argument("--mu", required=True)
    cl.add_argument("--depth", type=int, required=True)
    _add_quad_flags(cl)
    cl.add_argument("--out")

    tg = sub.add_parser("tg").add_subparsers(dest="sub", required=True)
    ta = tg.add_parser("apply")
    ta.add_argument("--g", required=True)
    ta.add_argument("--f", required=True)
    ta.add_argument("--z", required=True, help="complex point, e.g. 0.3+0.4j")
    ta.add_argument("--nodes", type=int, default=128)
    ta.add_argument("--out")
    tc = tg.add_parser("check")
    tc.add_argument("--g", required=True)
    tc.add_argument("--p", required=True)
    tc.add_argument("--q", required=True)
    tc.add_argument("--t", default=None)
    tc.add_argument("--s", default=None)
    tc.add_argument("--hardy-s", default=None, help="target Hardy exponent (instead of --t/--s)")
    tc.add_argument("--max-level", type=int, default=9)
    tc.add_argument("--expect-bounded", action="store_true")
    _add_quad_flags(tc)
    tc.add_argument("--out")

    ver = sub.add_parser("verify")
    ver.add_argument("group", choices=["all", "norms", "carleson", "tg"])
    ver.add_argument("--out")
    return root


def _cmd_lattice(args, argv, t0):
    inputs: dict = {}
    if args.sub == "gen":
        lat = generate_luecking_lattice(args.max_level)
        doc = json.loads(lattice_to_json(lat))
        doc["manifest"] = _manifest(argv, inputs, {"max_level": args.max_level}, t0,
                                    [args.out] if args.out else [])
        _emit(doc, args.out)
        return 0
    raw = open(args.lattice).read()
    inputs[args.lattice] = hashlib.sha256(raw.encode()).hexdigest()
    lat = lattice_from_json(raw)
    rep = validate_lattice(lat, samples=args.samples, K=args.multiplicity_k)
    result = {
        "covering_ok": rep.covering_ok,
        "separation_ok": rep.separation_ok,
        "multiplicity": rep.multiplicity,
        "max_cover_dist": rep.max_cover_dist,
        "min_pair_dist": rep.min_pair_dist,
    }
    doc = {"result": result,
           "manifest": _manifest(argv, inputs, {"samples": args.samples}, t0,
                                 [args.out] if args.out else [])}
    _emit(doc, args.out)
    return 0


def _cmd_norm(args, argv, t0):
    inputs: dict = {}
    f = function_from_spec(_load_arg(args.f, inputs))
    cfg = _quad_config(args)
    try:
        if args.sub == "rm":
            est = rm_norm(f, _parse_exponent(args.p), _parse_exponent(args.q), cfg, n=args.n)
        elif args.sub == "hardy":
            est = hardy_norm(f, args.s, cfg)
        elif args.sub == "bergman":
            est = bergman_norm(f, _parse_exponent(args.p), cfg)
        elif args.sub == "tent":
            est = tent_norm(
                f, _parse_exponent(args.p), _parse_exponent(args.q), args.alpha,
                M=args.M, n=args.n, cfg=cfg, weight_exponent=args.weight_exponent,
            )
        else:
            est = bloch_seminorm(f, args.gamma)
    except ValueError as exc:
        raise CliError(str(exc))
    doc = {"result": _norm_estimate_payload(est),
           "manifest": _manifest(argv, inputs, cfg.snapshot(), t0, [args.out] if args.out else [])}
    _emit(doc, args.out)
    return 0


def _load_lattice_and_seq(args, inputs):
    raw = open(args.lattice).read()
    inputs[args.lattice] = hashlib.sha256(raw.encode()).hexdigest()
    lat = lattice_from_json(raw)
    seq_doc = _load_arg(args.seq, inputs)
    vals = []
    for v in seq_doc:
        vals.append(complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v))
    seq = np.asarray(vals, dtype=complex)
    if seq.shape != (len(lat),):
        raise CliError(f"sequence length {len(seq)} does not match lattice size {len(lat)}")
    return lat, seq


def _cmd_seq(args, argv, t0):
    inputs: dict = {}
    lat, seq = _load_lattice_and_seq(args, inputs)
    p, q = _parse_exponent(args.p), _parse_exponent(args.q)
    if args.sub == "norm":
        est = seq_tent_norm(seq, lat, p, q, M=args.M, xi_nodes=args.xi_nodes)
        result = _norm_estimate_payload(est)
        config = {"M": args.M, "xi_nodes": args.xi_nodes}
    else:
        est = dual_norm_estimate(seq, lat, p, q, trials=args.trials, iters=args.iters)
        result = {"estimate": est, "closed_form_dual": closed_form_dual_norm(seq, lat, p, q)}
        config = {"trials": args.trials, "iters": args.iters}
    doc = {"result": result,
           "manifest": _manifest(argv, inputs, config, t0, [args.out] if args.out else [])}
    _emit(doc, args.out)
    return 0


def _cmd_carleson(args, argv, t0):
    inputs: dict = {}
    mu = measure_from_spec(_load_arg(args.mu, inputs))
    if args.sub == "classical":
        cfg = _quad_config(args)
        try:
            const = classical_carleson_constant(mu, args.depth, cfg)
        except ValueError as exc:
            raise CliError(str(exc))
        doc = {"result": {"constant": const, "depth": args.depth},
               "manifest": _manifest(argv, inputs, cfg.snapshot(), t0,
                                     [args.out] if args.out else [])}
        _emit(doc, args.out)
        return 0
    try:
        exps = ExponentSet(
            p=_parse_exponent(args.p), q=_parse_exponent(args.q),
            s=_parse_exponent(args.s), t=_parse_exponent(args.t),
            alpha=args.alpha, M=args.M,
        )
        lat = generate_luecking_lattice(args.max_level)
        depths = ([int(d) for d in args.depths.split(",")] if args.depths
                  else list(range(max(2, args.max_level - 3), args.max_level + 1)))
        rep = condition_report(mu, lat, exps, depths)
    except ValueError as exc:
        raise CliError(str(exc))
    doc = {"result": rep.to_dict(),
           "manifest": _manifest(argv, inputs, {"max_level": args.max_level}, t0,
                                 [args.out] if args.out else [])}
    _emit(doc, args.out)
    if args.expect_bounded and rep.verdict == "unbounded":
        return 2
    return 0


def _cmd_tg(args, argv, t0):
    inputs: dict = {}
    g = function_from_spec(_load_arg(args.g, inputs))
    if args.sub == "apply":
        f = function_from_spec(_load_arg(args.f, inputs))
        z = _parse_complex(args.z)
        try:
            val = tg_apply(g, f, z, nodes=args.nodes)
        except ValueError as exc:
            raise CliError(str(exc))
        doc = {"result": {"re": val.real, "im": val.imag},
               "manifest": _manifest(argv, inputs, {"nodes": args.nodes}, t0,
                                     [args.out] if args.out else [])}
        _emit(doc, args.out)
        return 0
    cfg = _quad_config(args)
    lat = generate_luecking_lattice(args.max_level)
    try:
        if args.hardy_s is not None:
            rep = symbol_condition_hardy(
                g, _parse_exponent(args.p), _parse_exponent(args.q),
                _parse_exponent(args.hardy_s), lat, cfg,
            )
        else:
            if args.t is None or args.s is None:
                raise CliError("tg check needs either --t and --s, or --hardy-s")
            rep = symbol_condition_rm(
                g, _parse_exponent(args.p), _parse_exponent(args.q),
                _parse_exponent(args.t), _parse_exponent(args.s), lat, cfg,
            )
    except ValueError as exc:
        raise CliError(str(exc))
    doc = {"result": rep.to_dict(),
           "manifest": _manifest(argv, inputs, cfg.snapshot(), t0,
                                 [args.out] if args.out else [])}
    _emit(doc, args.out)
    if args.expect_bounded and ("unbounded" in (rep.norm_verdict, rep.lattice_verdict)):
        return 2
    return 0


def _cmd_verify(args, argv, t0):
    rows = verify_mod.run_all() if args.group == "all" else verify_mod.run_group(args.group)
    csv = verify_mod.rows_to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    for r in rows:
        print(r.line(), file=sys.stderr)
    return 0 if all(r.passed for r in rows) else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    t0 = time.monotonic()
    try:
        args = parser.parse_args(argv)
        if args.cmd == "lattice":
            return _cmd_lattice(args, argv, t0)
        if args.cmd == "norm":
            return _cmd_norm(args, argv, t0)
        if args.cmd == "seq":
            return _cmd_seq(args, argv, t0)
        if args.cmd == "carleson":
            return _cmd_carleson(args, argv, t0)
        if args.cmd == "tg":
            return _cmd_tg(args, argv, t0)
        if args.cmd == "verify":
            return _cmd_verify(args, argv, t0)
        raise CliError(f"unknown command {args.cmd!r}")
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
