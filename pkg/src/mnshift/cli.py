"""Command line interface.

Exit codes: 0 on success (or a certified/clean result), 1 when a check finds
a violation, a counterexample, or no witness, 2 on usage or input errors.
JSON goes to stdout; diagnostics go to stderr.

The MNSHIFT_THREADS environment variable is read for interface stability;
all computations are deterministic and single-threaded, so any positive
value behaves identically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import action, analysis, config, efunc, freegroup, matrep, model
from .freegroup import Signature

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read_threads() -> int:
    raw = os.environ.get("MNSHIFT_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        raise UsageError(f"MNSHIFT_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise UsageError("MNSHIFT_THREADS must be >= 1")
    return threads


def _sig(args: argparse.Namespace) -> Signature:
    return Signature(args.n, args.m)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}")


def _emit(obj: object) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _config_arg(args: argparse.Namespace) -> config.Configuration:
    return config.from_json_obj(_load_json(args.config))


def _efunc_arg(args: argparse.Namespace) -> efunc.PartialEFunction:
    return efunc.from_json_obj(_load_json(args.efunc))


def _pset_arg(args: argparse.Namespace) -> matrep.PartialIsometrySet:
    return matrep.from_json_obj(_load_json(args.set))


def _emit_config(cfg: config.Configuration, dot: bool) -> None:
    if dot:
        sys.stdout.write(config.to_dot(cfg))
    else:
        _emit(config.to_json_obj(cfg))


def cmd_ball(args) -> int:
    sig = _sig(args)
    words = freegroup.ball(sig, args.radius)
    _emit({"n": sig.n, "m": sig.m, "radius": args.radius, "size": len(words),
           "words": [freegroup.word_str(w) for w in words]})
    return EXIT_OK


def cmd_f2(args) -> int:
    sig = _sig(args)
    word = freegroup.parse_word(args.word, sig)
    _emit({"word": freegroup.word_str(word),
           "image": freegroup.word_str(freegroup.f2_image(word, sig))})
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _config_arg(args)
    report = config.validate(cfg)
    _emit({"ok": report.ok,
           "violations": [{"member": freegroup.word_str(w), "reason": why}
                          for w, why in report.violations]})
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_enumerate_omega(args) -> int:
    sig = _sig(args)
    configs = config.enumerate_omega(sig, args.depth, root_pattern=args.root_pattern)
    _emit({"n": sig.n, "m": sig.m, "depth": args.depth, "count": len(configs),
           "configurations": [config.to_json_obj(c) for c in configs]})
    return EXIT_OK


def cmd_enumerate_pef(args) -> int:
    sig = _sig(args)
    out = [efunc.to_json_obj(f) for f in efunc.enumerate_pef(sig, args.depth)]
    _emit({"n": sig.n, "m": sig.m, "r": args.depth, "count": len(out), "functions": out})
    return EXIT_OK


def cmd_psi(args) -> int:
    _emit_config(efunc.psi(_efunc_arg(args)), args.dot)
    return EXIT_OK


def cmd_phi(args) -> int:
    _emit(efunc.to_json_obj(efunc.phi(_config_arg(args))))
    return EXIT_OK


def cmd_extend(args) -> int:
    pef = _efunc_arg(args)
    ext = efunc.extend_forced(pef)
    report = efunc.check_conditions(ext)
    values = [{"alpha": efunc.e_word_str(a), "value": str(v)}
              for a, v in sorted(ext.values.items(),
                                 key=lambda kv: (len(kv[0]), tuple(x.sort_key() for x in kv[0])))]
    _emit({"n": pef.sig.n, "m": pef.sig.m, "depth": ext.depth, "values": values,
           "conditions": {"ok": report.ok, "checked": report.checked,
                          "skipped": report.skipped,
                          "violations": len(report.violations)}})
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_deepen(args) -> int:
    pef = _efunc_arg(args)
    deeper = efunc.deepen(pef, args.depth, policy=args.policy, seed=args.seed)
    _emit(efunc.to_json_obj(deeper))
    return EXIT_OK


def cmd_act(args) -> int:
    pef = _efunc_arg(args)
    g = freegroup.parse_word(args.word, pef.sig)
    image = action.act(g, pef)
    if image is None:
        _emit({"defined": False, "word": freegroup.word_str(g)})
        return EXIT_FINDING
    _emit({"defined": True, "word": freegroup.word_str(g),
           "image": efunc.to_json_obj(image)})
    return EXIT_OK


def cmd_gamma(args) -> int:
    pt = model.from_json_obj(_load_json(args.point))
    _emit_config(model.gamma(pt, args.depth), args.dot)
    return EXIT_OK


def cmd_fixed_point(args) -> int:
    sig = _sig(args)
    pt = model.fixed_point(sig, capacity=args.capacity)
    _emit(model.to_json_obj(pt))
    return EXIT_OK


def cmd_freeness(args) -> int:
    sig = _sig(args)
    cert = analysis.certify_freeness(sig, args.max_word, args.open_depth)
    _emit({"n": sig.n, "m": sig.m, "max_word_length": cert.max_word_length,
           "open_depth": cert.open_depth, "certified": cert.certified,
           "total_rows": cert.total_rows(),
           "words": [{"g": freegroup.word_str(r.g), "kind": r.kind, "rows": r.rows,
                      "witnesses": r.witnesses, "empty_domains": r.empty_domains,
                      "detail": r.detail}
                     for r in cert.reports]})
    return EXIT_OK if cert.certified else EXIT_FINDING


def cmd_isotropy(args) -> int:
    cfg = _config_arg(args)
    if args.element is not None:
        x = freegroup.parse_word(args.element, cfg.sig)
        ok = analysis.depth_isotropy_check(x, cfg)
        _emit({"element": freegroup.word_str(x), "depth": cfg.depth, "isotropy": ok})
        return EXIT_OK if ok else EXIT_FINDING
    try:
        witness = analysis.free_subgroup_witness(cfg)
    except analysis.NoRepeatWithinDepthError as exc:
        _emit({"found": False, "reason": str(exc)})
        return EXIT_FINDING
    _emit({"found": True,
           "x": freegroup.word_str(witness.x), "y": freegroup.word_str(witness.y),
           "x_image": freegroup.word_str(witness.x_image),
           "y_image": freegroup.word_str(witness.y_image),
           "certified_depth": witness.certified_depth})
    return EXIT_OK


def cmd_orbit(args) -> int:
    cfg = _config_arg(args)
    pairs = analysis.orbit(cfg, args.max_length)
    _emit({"depth": cfg.depth, "max_length": args.max_length,
           "orbit": [{"g": freegroup.word_str(g), "translate": config.to_json_obj(c)}
                     for g, c in pairs]})
    return EXIT_OK


def cmd_check_r(args) -> int:
    pset = _pset_arg(args)
    report = matrep.check_R(pset)
    proj = matrep.check_R_projections(pset)
    ok = report.max_residual <= args.tol and proj.max_residual <= args.tol
    _emit({"d": pset.d, "tol": args.tol, "ok": ok,
           "relations": report.as_dict(), "max_residual": report.max_residual,
           "projection_relations": proj.as_dict(),
           "projection_max_residual": proj.max_residual})
    return EXIT_OK if ok else EXIT_FINDING


def cmd_tame(args) -> int:
    pset = _pset_arg(args)
    result = matrep.tame_check(pset, args.max_length, tol=args.tol)
    _emit({"tame": result.tame, "max_length": result.max_length,
           "words_checked": result.words_checked,
           "violation_word": result.violation_word,
           "violation_defect": result.violation_defect})
    return EXIT_OK if result.tame else EXIT_FINDING


def cmd_trace(args) -> int:
    pset = _pset_arg(args)
    report = matrep.trace_obstruction(pset)
    _emit({"d": report.d, "t_w": report.t_w, "t_v": report.t_v,
           "skew": report.skew, "unit_defect": report.unit_defect,
           "forces_zero_dimension": report.forces_zero_dimension})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mnshift", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    def sig_args(p):
        p.add_argument("-n", type=int, required=True, help="a-family size")
        p.add_argument("-m", type=int, required=True, help="b-family size")

    p = add("ball", cmd_ball, help="enumerate the word ball")
    sig_args(p)
    p.add_argument("-L", "--radius", type=int, required=True)

    p = add("f2", cmd_f2, help="rank-two collapse image of a word")
    sig_args(p)
    p.add_argument("--word", required=True)

    p = add("validate", cmd_validate, help="validate a configuration")
    p.add_argument("--config", required=True)

    p = add("enumerate-omega", cmd_enumerate_omega, help="enumerate configurations")
    sig_args(p)
    p.add_argument("-L", "--depth", type=int, required=True)
    p.add_argument("--root-pattern", choices=["C1", "C2"], default=None)

    p = add("enumerate-pef", cmd_enumerate_pef, help="enumerate partial E-functions")
    sig_args(p)
    p.add_argument("-r", "--depth", type=int, required=True)

    p = add("psi", cmd_psi, help="configuration presented by tables")
    p.add_argument("--efunc", required=True)
    p.add_argument("--dot", action="store_true")

    p = add("phi", cmd_phi, help="read tables off a configuration")
    p.add_argument("--config", required=True)

    p = add("extend", cmd_extend, help="forced total extension plus condition check")
    p.add_argument("--efunc", required=True)

    p = add("deepen", cmd_deepen, help="extend tables to a larger depth")
    p.add_argument("--efunc", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--policy", choices=["lex-min", "seeded"], default="lex-min")
    p.add_argument("--seed", type=int, default=None)

    p = add("act", cmd_act, help="apply a word to tables")
    p.add_argument("--efunc", required=True)
    p.add_argument("--word", required=True)

    p = add("gamma", cmd_gamma, help="membership configuration of a model point")
    p.add_argument("--point", required=True)
    p.add_argument("-L", "--depth", type=int, required=True)
    p.add_argument("--dot", action="store_true")

    p = add("fixed-point", cmd_fixed_point, help="the all-ones model point")
    sig_args(p)
    p.add_argument("--capacity", type=int, default=8)

    p = add("freeness", cmd_freeness, help="certify topological freeness at depth")
    sig_args(p)
    p.add_argument("--max-word", type=int, required=True)
    p.add_argument("--open-depth", type=int, required=True)

    p = add("isotropy", cmd_isotropy, help="isotropy checks and free subgroup witness")
    p.add_argument("--config", required=True)
    p.add_argument("--element", default=None,
                   help="check one element; omit to search for witnesses")

    p = add("orbit", cmd_orbit, help="translates by short words")
    p.add_argument("--config", required=True)
    p.add_argument("--max-length", type=int, required=True)

    p = add("check-r", cmd_check_r, help="relation residuals of a matrix set")
    p.add_argument("--set", required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("tame", cmd_tame, help="partial-isometry check over short products")
    p.add_argument("--set", required=True)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("trace", cmd_trace, help="trace obstruction bookkeeping")
    p.add_argument("--set", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        _read_threads()
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
