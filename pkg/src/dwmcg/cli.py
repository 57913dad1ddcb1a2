"""``dwmcg`` command line.

Exit codes: 0 pass, 1 a check ran and failed, 2 bad input, 3 a cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cocycles import verify_cocycle
from .io import (CONVENTIONS_VERSION, ConfigError, RunConfig, build_bundle, bundle_matrices,
                 cached_closure, parse_relations, read_bundle, resolve_cocycle, resolve_group,
                 surface_of, write_bundle)
from .monomial import MonomialError, check_relation
from .surfaces import count_conjugation_orbits, enumerate_spanning

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _labels(text: str) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"boundary labels must be integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser, surface: bool = True):
    p.add_argument("--group", default="Z2", help="builtin name (Z4, Z2xZ2, S3, D4, Q8) or JSON file")
    p.add_argument("--cocycle", default="trivial",
                   help="trivial, cyclic:p, a JSON file, or several joined by '+'")
    if surface:
        p.add_argument("--genus", type=int, default=1)
        p.add_argument("--boundary", type=_labels, default=(), metavar="k1,k2,...")
    p.add_argument("--cap", type=int, default=10 ** 6, help="closure size cap")
    p.add_argument("--out", help="write the JSON result here")
    p.add_argument("--cache-dir", help="closure cache directory")
    p.add_argument("--no-cache", action="store_true", help="ignore and do not write the cache")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dwmcg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("cocycle-verify", help="check normalization and the cocycle identity"),
            surface=False)
    _common(sub.add_parser("rep-build", help="write a representation bundle"))
    p = sub.add_parser("rep-image", help="order of the image group by BFS closure")
    _common(p)
    p.add_argument("--bundle", help="use an existing bundle instead of building one")
    p = sub.add_parser("rep-check", help="check relations between generator words")
    _common(p)
    p.add_argument("--bundle")
    p.add_argument("--relations", required=True, help="file of 'lhs = rhs ; mode' lines")
    _common(sub.add_parser("spanning-count", help="spanning-set size and conjugation orbits"))
    return ap


def _config(ns) -> RunConfig:
    return RunConfig(group=ns.group, cocycle=ns.cocycle, genus=getattr(ns, "genus", 0),
                     boundary=tuple(getattr(ns, "boundary", ())), cap=ns.cap, out=ns.out,
                     cache_dir=ns.cache_dir, use_cache=not ns.no_cache)


def _emit(result: dict, out):
    if out:
        Path(out).write_text(json.dumps(result, sort_keys=True, indent=1) + "\n")


def _bundle(ns, cfg):
    if getattr(ns, "bundle", None):
        return read_bundle(ns.bundle)
    g = resolve_group(cfg.group)
    w = resolve_cocycle(cfg.cocycle, g)
    report = verify_cocycle(w)
    if not report:
        raise ConfigError(f"cocycle invalid: {report.describe()}")
    return build_bundle(g, w, surface_of(cfg, g))


def cmd_cocycle_verify(ns, cfg) -> int:
    g = resolve_group(cfg.group)
    w = resolve_cocycle(cfg.cocycle, g)
    report = verify_cocycle(w)
    print(f"{'PASS' if report else 'FAIL'}: {report.describe()}")
    _emit({"ok": report.ok, "kind": report.kind, "witness": list(report.witness),
           "digest": w.digest()}, cfg.out)
    return EXIT_OK if report else EXIT_FAIL


def cmd_rep_build(ns, cfg) -> int:
    bundle = _bundle(ns, cfg)
    for msg in bundle["warnings"]:
        print(f"warning: {msg}", file=sys.stderr)
    gens = bundle["generators"]
    degree = len(bundle["spanning_set"])
    print(f"|S| = {degree}, {len(gens)} generators: {' '.join(gens) or '(none)'}")
    if cfg.out:
        write_bundle(bundle, cfg.out)
    return EXIT_OK


def cmd_rep_image(ns, cfg) -> int:
    bundle = _bundle(ns, cfg)
    res, hit = cached_closure(bundle, cfg.cap, cfg.cache_dir, cfg.use_cache)
    _emit({**res.to_json(), "cached": hit, "conventions_version": CONVENTIONS_VERSION}, cfg.out)
    if res.cap_exceeded:
        print(f"cap-exceeded: more than {cfg.cap} elements")
        return EXIT_CAP
    print(f"image order {res.order} (levels {res.levels}){' [cached]' if hit else ''}")
    return EXIT_OK


def cmd_rep_check(ns, cfg) -> int:
    bundle = _bundle(ns, cfg)
    try:
        rels = parse_relations(Path(ns.relations).read_text())
    except OSError as e:
        raise ConfigError(f"cannot read relations: {e}") from e
    gens = bundle_matrices(bundle)
    reports, ok = [], True
    for lhs, rhs, mode in rels:
        try:
            r = check_relation(lhs, rhs, gens, mode)
        except MonomialError as e:
            raise ConfigError(str(e)) from e
        ok &= r.ok
        extra = f" scalar {r.scalar}" if r.ok and mode != "exact" else ""
        if not r.ok:
            extra = f" (lhs {r.lhs_digest}, rhs {r.rhs_digest})"
        print(f"{'PASS' if r.ok else 'FAIL'} [{mode}] {lhs} = {rhs}{extra}")
        reports.append(r.to_json())
    _emit({"ok": ok, "relations": reports}, cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_spanning_count(ns, cfg) -> int:
    g = resolve_group(cfg.group)
    surface = surface_of(cfg, g)
    s = enumerate_spanning(surface, g)
    result = {"surface": surface.to_json(), "group": g.name, "size": len(s)}
    line = f"|S| = {len(s)}"
    if surface.closed:
        orb = count_conjugation_orbits(s)
        result.update(orb.to_json())
        line += f", conjugation orbits {orb.orbit_count}, |S|/|G| = {len(s) / g.order:g}"
    print(line)
    _emit(result, cfg.out)
    return EXIT_OK


COMMANDS = {"cocycle-verify": cmd_cocycle_verify, "rep-build": cmd_rep_build,
            "rep-image": cmd_rep_image, "rep-check": cmd_rep_check,
            "spanning-count": cmd_spanning_count}


def main(argv=None) -> int:
    ap = make_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(ns)
        return COMMANDS[ns.command](ns, cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        # validation errors from the library (bad labels, group tables, ...)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
