"""Command-line front end: ``hydra-ct <command> --config FILE ...``.

Exit codes: 0 ok, 2 parse/config error, 3 budget exceeded, 4 coverage
error.  Errors are reported on stderr as one line ``error:<code>: ...``.
The same config, flags and seed always produce the same bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import yaml

from . import __version__
from .automorphisms import HydraConfig, hydra_theta
from .cayley import enumerate_ball, estimate_delta, geodesic_audit
from .ct_criterion import (corollary_check, corollary_samples, mitra_profiles, shadow)
from .distortion import ackermann, distortion_table, h2_lambda_word, h2_seeds
from .errors import ConfigError, CoverageError, HydraError
from .free_by_cyclic import (FcGroup, SubgroupBasis, hydra_g, hydra_h_basis,
                             hydra_lambda_basis)
from .modulus import (VisualParams, make_proxies, modulus_profile, profile_csv,
                      wildness_experiment)
from .words import FreeGroup, serialize

SCHEMA = 1


class GroupSetup:
    def __init__(self, kind: str, group, basis: SubgroupBasis, k: int | None = None):
        self.kind = kind
        self.group = group
        self.basis = basis
        self.k = k

    @property
    def is_h2(self) -> bool:
        return (self.kind == "g" and self.k == 2
                and [self.group.format_element(im) for im in self.basis.images]
                == ["a1 | 1", "a2 | 1"])


def load_group(path: str) -> GroupSetup:
    """Read a YAML group config and build (and verify) the group and basis."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file {path!r} not found")
    try:
        data = yaml.safe_load(p.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a key/value document")
    kind = str(data.get("kind", "gamma"))
    basis = data.get("basis")
    if basis is not None and (not isinstance(basis, list) or not basis):
        raise ConfigError("basis must be a non-empty list of words")

    if kind == "g":
        try:
            k = int(data["k"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError("kind g needs an integer k") from None
        G = hydra_g(k)
        default = hydra_h_basis(G)
    elif kind == "gamma":
        cfg = HydraConfig.from_mapping(data)
        G = FcGroup(hydra_theta(cfg))
        k = cfg.k
        default = hydra_lambda_basis(G)
    elif kind == "free":
        gens = data.get("generators")
        if not isinstance(gens, list) or not gens:
            raise ConfigError("kind free needs a list of generators")
        try:
            G = FreeGroup([str(g) for g in gens])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        k = None
        default = SubgroupBasis(G, list(G.alphabet.names), free=True)
    else:
        raise ConfigError(f"unknown group kind {kind!r} (use g, gamma or free)")

    if basis is None:
        B = default
    else:
        words = [str(w) for w in basis]
        same = [" ".join(w.split()) for w in words] == default.words
        free = bool(data.get("basis_free", same))
        B = SubgroupBasis(G, words, free=free)
    return GroupSetup(kind, G, B, k)


# output ------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, float):
        return round(x, 12)
    return x


def emit(args, text: str, payload: dict, summary: str | None = None) -> None:
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **payload}
        text = json.dumps(payload, sort_keys=True, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        if summary:
            print(summary)
    else:
        sys.stdout.write(text)
        if summary:
            print(summary, file=sys.stderr)


# commands ----------------------------------------------------------------

def cmd_normal_form(args) -> None:
    setup = load_group(args.config)
    G = setup.group
    g = G.parse(args.word)
    out = G.format_element(g) if isinstance(G, FcGroup) else serialize(g)
    emit(args, out + "\n", {"input": args.word, "element": out})


def cmd_ball(args) -> None:
    setup = load_group(args.config)
    index = enumerate_ball(setup.group, radius=args.radius, budget=args.budget,
                           track_parents=False)
    lines = index.dump()
    emit(args, "".join(ln + "\n" for ln in lines),
         {"radius": args.radius, "size": len(lines), "sphere_sizes": index.sphere_sizes(),
          "rows": lines},
         f"ball radius {args.radius}: {len(lines)} elements")


def cmd_delta(args) -> None:
    setup = load_group(args.config)
    G = setup.group
    index = enumerate_ball(G, radius=args.radius, budget=args.budget, track_parents=False)
    exhaustive = None if args.mode == "auto" else args.mode == "exhaustive"
    est = estimate_delta(index, exhaustive=exhaustive, samples=args.samples,
                         seed=args.seed, cap=args.cap)
    witness = ";".join(G.format_element(p) for p in est.witness)
    row = {"radius": args.radius, "points": est.points, "quadruples": est.quadruples,
           "exhaustive": est.exhaustive, "seed": est.seed, "delta_hat": est.value,
           "witness": witness}
    cols = list(row)
    if args.audit:
        rep = geodesic_audit(index, est.value, slack=args.slack, threads=args.threads)
        row.update({"audit_pairs": len(rep.rows), "audit_skipped": len(rep.skipped),
                    "audit_violations": len(rep.violations), "max_defect": rep.max_defect})
        cols = list(row)
    text = ",".join(cols) + "\n" + ",".join(_csv(row[c]) for c in cols) + "\n"
    emit(args, text, {k: _jsonable(v) for k, v in row.items()},
         f"delta-hat {est.value} over {est.points} points"
         + (" (exhaustive)" if est.exhaustive else f" ({est.quadruples} samples)"))


def _csv(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return str(x).lower()
    return str(x)


def _table(args, setup):
    G, B = setup.group, setup.basis
    seeds, membership = (), None
    if setup.is_h2 and not args.no_seeds:
        seeds = h2_seeds(G, B, args.n_max)
        membership = lambda g: h2_lambda_word(G, B, g)  # noqa: E731
    return distortion_table(G, B, args.n_max, args.r_lambda, budget=args.budget,
                            gamma_radius=args.gamma_radius, seeds=seeds,
                            membership=membership)


def cmd_distortion(args) -> None:
    setup = load_group(args.config)
    table = _table(args, setup)
    fmt = setup.group.format_element
    rows = [{"n": r.n, "dist_lb": r.dist_lb, "saturated": r.saturated,
             "witness": fmt(r.witness), "lambda_word": str(r.lambda_word),
             "gamma_word": r.gamma_word} for r in table.rows]
    emit(args, table.to_csv(), {"rows": rows, "summary": table.summary(),
                                "R_lambda": args.r_lambda, "n_max": args.n_max},
         table.summary())


def cmd_ackermann(args) -> None:
    v = ackermann(args.k, args.n, max_bits=args.max_bits)
    if hasattr(sys, "set_int_max_str_digits"):
        # big naturals are printed in full decimal
        sys.set_int_max_str_digits(0)
    emit(args, f"k,n,value\n{args.k},{args.n},{v}\n",
         {"k": args.k, "n": args.n, "value": str(v)})


def cmd_mitra(args) -> None:
    setup = load_group(args.config)
    prof = mitra_profiles(setup.group, setup.basis, args.n_max,
                          lambda_radius=args.lambda_radius, tail=args.tail,
                          gamma_radius=args.gamma_radius, budget=args.budget,
                          threads=args.threads)
    rows = [{"N": r.N, "M": _jsonable(r.M), "M_prime": r.M_prime, "M_dprime": r.M_dprime}
            for r in prof.rows]
    emit(args, prof.to_csv(), {"rows": rows, "provenance": prof.provenance()},
         f"Mitra profile N <= {args.n_max}: range-restricted upper bounds")


def cmd_shadow(args) -> None:
    setup = load_group(args.config)
    if not isinstance(setup.group, FcGroup):
        raise ConfigError("shadow needs a free-by-cyclic group")
    B = setup.basis
    sh = shadow(setup.group, B, B.parse(args.alpha), B.parse(args.beta))
    lines = ["i,start,end,length"]
    rows = []
    for i, seg in enumerate(sh.segments):
        a, b = serialize(seg[0]) or "e", serialize(seg[-1]) or "e"
        lines.append(f"{i},{a},{b},{len(seg) - 1}")
        rows.append({"i": i, "start": a, "end": b, "length": len(seg) - 1})
    md = sh.min_distance
    emit(args, "\n".join(lines) + "\n", {"rows": rows, "min_distance": md},
         f"shadow of {len(sh)} segments; tree distance to e: "
         + ("none" if md is None else str(md)))


def cmd_corollary(args) -> None:
    setup = load_group(args.config)
    B = setup.basis
    samples = corollary_samples(B, args.N, args.beta_length, args.samples, args.seed)
    rep = corollary_check(setup.group, B, args.N, args.m_target, samples,
                          gamma_radius=args.gamma_radius, budget=args.budget,
                          threads=args.threads)
    rows = [{"word": str(ln.alpha * ln.beta), "min_dist": ln.min_dist, "pass": ln.passed}
            for ln in rep.lines]
    emit(args, rep.to_text(), {"rows": rows, "N": args.N, "M_target": args.m_target,
                               "violations": len(rep.violations)},
         f"{len(rep.lines) - len(rep.violations)}/{len(rep.lines)} samples pass")


def cmd_wildness(args) -> None:
    setup = load_group(args.config)
    G, B = setup.group, setup.basis
    params = VisualParams(args.r, args.s, args.k1, args.k2)
    proxies = make_proxies(B, args.depth)
    if args.delta_hat is not None:
        dhat = args.delta_hat
    else:
        index = enumerate_ball(G, radius=args.delta_radius, budget=args.budget,
                               track_parents=False)
        dhat = estimate_delta(index, seed=args.seed).value
    table = _table(args, setup)
    rep = wildness_experiment(G, B, table, proxies, params, dhat,
                              gamma_depth=args.gamma_depth, gamma_radius=args.gamma_radius)
    text = rep.to_csv()
    payload = {
        "rows": [{"n": r.n, "dist_lb": r.dist_lb, "i": r.i, "j": r.j,
                  "lambda_product": r.lambda_product, "C": r.C, "slack": r.slack,
                  "gamma_product_ub": _jsonable(r.gamma_product_ub),
                  "delta_in_log": _jsonable(r.delta_in_log),
                  "eps_lb_log": _jsonable(r.eps_lb_log)} for r in rep.rows],
        "C": rep.C, "delta_hat": _jsonable(dhat), "notes": rep.notes, "ok": rep.ok,
    }
    if args.profile:
        k, C0, C1, C2 = args.profile
        try:
            k, C0f, C1f = int(k), float(C0), float(C1)
            float(C2)
        except ValueError:
            raise ConfigError(f"--profile expects K C0 C1 C2 numbers, got {args.profile}") from None
        etas = args.etas or [C0f / 2 ** i for i in range(1, 7)]
        prof = modulus_profile(k, C0f, C1f, C2, etas)
        text += "\n" + profile_csv(prof, C2)
        payload["profile"] = [{"eta": r.eta, "m": r.m, "delta": r.delta_text(C2)}
                              for r in prof]
    emit(args, text, payload,
         f"wildness n <= {args.n_max}: Lambda-side chain "
         + ("holds" if rep.ok else "FAILS") + f"; C = {rep.C}, delta-hat = {dhat}")


# parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error:2: {message}\n")


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = -1
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return n


def _pos(text: str) -> int:
    n = _nat(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return n


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common(p: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        p.add_argument("--config", required=True, help="YAML group config")
    p.add_argument("--json", action="store_true", help="emit JSON (schema 1)")
    p.add_argument("--threads", type=_pos, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--budget", type=_pos, default=5_000_000, help="enumeration size cap")


def _table_args(p) -> None:
    p.add_argument("--n-max", type=_nat, default=8)
    p.add_argument("--r-lambda", type=_nat, default=8)
    p.add_argument("--gamma-radius", type=_nat, default=None,
                   help="BFS radius of the Gamma-ball (default n-max)")
    p.add_argument("--no-seeds", action="store_true",
                   help="disable exact H_2 membership and seeded witnesses")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hydra-ct", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normal-form", help="normal form of a word")
    _common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("ball", help="dump a Cayley ball")
    _common(p)
    p.add_argument("--radius", type=_nat, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("delta", help="four-point delta-hat of a ball")
    _common(p)
    p.add_argument("--radius", type=_nat, required=True)
    p.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    p.add_argument("--samples", type=_nat, default=100_000)
    p.add_argument("--cap", type=_nat, default=400, help="exhaustive point cap in auto mode")
    p.add_argument("--audit", action="store_true", help="also run the geodesic audit")
    p.add_argument("--slack", type=_fraction, default=Fraction(0))
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("distortion", help="distortion lower-bound table")
    _common(p)
    _table_args(p)
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser("ackermann", help="A_k(n)")
    _common(p, config=False)
    p.add_argument("k", type=_pos)
    p.add_argument("n", type=_nat)
    p.add_argument("--max-bits", type=_nat, default=1 << 17)
    p.set_defaults(func=cmd_ackermann)

    p = sub.add_parser("mitra", help="Mitra functions M, M', M''")
    _common(p)
    p.add_argument("--n-max", type=_nat, default=4)
    p.add_argument("--lambda-radius", type=_nat, default=None)
    p.add_argument("--tail", type=_nat, default=1)
    p.add_argument("--gamma-radius", type=_nat, default=10)
    p.set_defaults(func=cmd_mitra)

    p = sub.add_parser("shadow", help="shadow of a suffix beta after alpha")
    _common(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("corollary-check", help="geodesics [alpha, alpha beta] vs a ball")
    _common(p)
    p.add_argument("--N", type=_nat, required=True)
    p.add_argument("--m-target", type=_nat, required=True)
    p.add_argument("--samples", type=_nat, default=20)
    p.add_argument("--beta-length", type=_nat, default=2)
    p.add_argument("--gamma-radius", type=_nat, default=12)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("wildness", help="modulus-of-continuity experiment")
    _common(p)
    _table_args(p)
    p.add_argument("--depth", type=_pos, default=20, help="proxy depth")
    p.add_argument("--gamma-depth", type=_nat, default=2)
    p.add_argument("--delta-hat", type=_fraction, default=None)
    p.add_argument("--delta-radius", type=_nat, default=4)
    p.add_argument("--r", type=_fraction, default=Fraction(2))
    p.add_argument("--s", type=_fraction, default=Fraction(2))
    p.add_argument("--k1", type=_fraction, default=Fraction(1))
    p.add_argument("--k2", type=_fraction, default=Fraction(1))
    p.add_argument("--profile", nargs=4, metavar=("K", "C0", "C1", "C2"))
    p.add_argument("--etas", type=_floats, help="comma-separated eta grid for --profile")
    p.set_defaults(func=cmd_wildness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CoverageError as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error:{exc.exit_code}: {msg}", file=sys.stderr)
        return exc.exit_code
    except HydraError as exc:
        print(f"error:{exc.exit_code}: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}",
              file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error:2: {exc}", file=sys.stderr)
        return 2
    return 0
