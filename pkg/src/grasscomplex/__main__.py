"""Command-line interface: verify / relator / audit.

`verify` runs named checks from the catalog and writes a deterministic JSON
report; `relator` builds a single named relator combination and prints it
with its boundary image; `audit` lists the catalog and flags entries missing
a statement or bound.
"""

from __future__ import annotations

import argparse
import sys

from .derivation import Derivation
from .field import CoprimeBase, Field
from .groups import (
    B2Element,
    Beta2Element,
    BetaDElement,
    Context,
    cath2,
    delta2,
    partialD2,
    partialD3,
    partialD_mid,
    relator,
)
from .verify import CATALOG, Settings, audit_catalog, report_to_json, run_suite


def _parse_config_file(path: str):
    """KEY=VALUE lines; `<check_id>.<key>` scopes a value to one check."""
    globals_: dict = {}
    overrides: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected KEY=VALUE, got {raw.rstrip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key.endswith(".derivation") or key == "derivation":
                value = tuple(s.strip() for s in value.split(","))
            if "." in key:
                check_id, sub = key.split(".", 1)
                overrides.setdefault(check_id, {})[sub] = value
            else:
                globals_[key] = value
    return globals_, overrides


_GLOBAL_CASTS = {
    "seed": int,
    "trials": int,
    "precision": int,
    "tol": float,
    "vars": int,
    "coeff_bound": int,
    "derivation": tuple,
}


def _build_settings(args) -> Settings:
    settings = Settings()
    if args.config:
        globals_, overrides = _parse_config_file(args.config)
        for key, value in globals_.items():
            cast = _GLOBAL_CASTS.get(key)
            if cast is None:
                raise ValueError(f"unknown config key {key!r}")
            setattr(settings, key, cast(value))
        settings.overrides = overrides
    # Explicit command-line flags win over the config file.
    if args.seed is not None:
        settings.seed = args.seed
    if args.trials is not None:
        settings.trials = args.trials
    if args.precision is not None:
        settings.precision = args.precision
    if args.tol is not None:
        settings.tol = args.tol
    if args.vars is not None:
        settings.vars = args.vars
    if args.coeff_bound is not None:
        settings.coeff_bound = args.coeff_bound
    return settings


def _cmd_verify(args) -> int:
    try:
        settings = _build_settings(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.target != "all" and args.target not in CATALOG:
        print(f"error: unknown check {args.target!r}", file=sys.stderr)
        print("available checks:", file=sys.stderr)
        for check_id in CATALOG:
            print(f"  {check_id}", file=sys.stderr)
        return 2
    ids = None if args.target == "all" else [args.target]
    report = run_suite(settings, ids=ids, log=print)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report))
        print(f"report written to {args.json}")
    print("all checks PASS" if report["all_pass"] else "FAILURES present")
    return 0 if report["all_pass"] else 1


def _cmd_relator(args) -> int:
    names = tuple(f"t{i}" for i in range(1, args.vars + 1))
    field = Field(names)
    if field.k >= 2:
        derivation = Derivation.special_two_variable(field)
    else:
        g = field.gen(0)
        derivation = Derivation(field, (g * (field.one - g),))
    ctx = Context(field, derivation, CoprimeBase(field))
    params = {}
    for name in ("a", "b", "c"):
        text = getattr(args, name)
        if text is not None:
            params[name] = field.parse(text)
    try:
        el = relator(ctx, args.kind, **params)
    except TypeError:
        print(f"error: wrong parameters for {args.kind!r} (gave {sorted(params)})",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(el)
    if isinstance(el, B2Element):
        print("delta2 image:")
        print(delta2(el).serialize())
    elif isinstance(el, Beta2Element):
        print("boundary image:")
        print(cath2(el).serialize())
    elif isinstance(el, BetaDElement) and el.weight == 2:
        print("partialD2 image:")
        print(partialD2(el).serialize())
    else:
        mid = partialD3(el)
        print(f"partialD3 image: {mid!r}")
        print("wedge image after partialD_mid:")
        print(partialD_mid(mid).serialize())
    return 0


def _cmd_audit(args) -> int:
    missing = audit_catalog()
    for desc in CATALOG.values():
        print(f"{desc.id:28s} [{desc.tier:6s}] trials={desc.default_trials:<4d} "
              f"bound: {desc.bound}")
    if missing:
        print(f"\nstatements with no bound check: {missing}")
        return 1
    print(f"\n{len(CATALOG)} checks, all with statements and bounds")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="grasscomplex",
        description="exact and numeric checks for configuration-complex maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run catalog checks")
    p_verify.add_argument("target", help="'all' or a single check id")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--precision", type=int, default=None)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--vars", type=int, default=None)
    p_verify.add_argument("--coeff-bound", type=int, default=None, dest="coeff_bound")
    p_verify.add_argument("--json", metavar="PATH", default=None)
    p_verify.add_argument("--config", metavar="PATH", default=None)
    p_verify.set_defaults(fn=_cmd_verify)

    p_relator = sub.add_parser("relator", help="build a named relator")
    p_relator.add_argument("kind")
    p_relator.add_argument("--a", default=None)
    p_relator.add_argument("--b", default=None)
    p_relator.add_argument("--c", default=None)
    p_relator.add_argument("--vars", type=int, default=2)
    p_relator.set_defaults(fn=_cmd_relator)

    p_audit = sub.add_parser("audit", help="list the catalog and its bounds")
    p_audit.set_defaults(fn=_cmd_audit)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
