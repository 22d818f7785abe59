"""Command-line front end.

    hesselink strata  --type C2 [--json]
    hesselink strata  --relative su21
    hesselink optimal --type C2 --support 2a+b
    hesselink mu-p    --type C2 --levi a
    hesselink induce  --type C2 --levi "" --stratum trivial

Every command first builds one structured record (schema below); the human
table is rendered from that record.  Rationals are serialized as "p/q".
Exit codes: 0 ok, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from .errors import BudgetExceeded, EngineError
from .exact_geometry import limits, zero
from .induction import DEFAULT_SEED, InductionResult, induce
from .instability import KempfDatum, torus_optimal
from .root_datum import ParabolicSpec, RootDatum, build, build_relative, dominantize, mu_P
from .stratification import StratumLabel, enumerate_strata, make_label

SCHEMA_VERSION = "1"


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def vec_out(v: Sequence[Fraction]) -> list[str]:
    return [rat(x) for x in v]


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


def parse_vec(xs: Sequence[str]) -> tuple[Fraction, ...]:
    return tuple(parse_rat(x) for x in xs)


def root_name(root: Sequence[Fraction], datum: RootDatum) -> str:
    """'2a+b' style name of a root from its simple-root expansion."""
    try:
        c = datum.expansion(tuple(root))
    except KeyError:
        return "[" + ",".join(str(x) for x in root) + "]"
    names = datum.simple_root_names()
    parts = []
    for k, n in zip(c, names):
        if not k:
            continue
        sign = "-" if k < 0 else "+"
        mag = abs(k)
        parts.append(f"{sign}{'' if mag == 1 else mag}{n}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def certificate_summary(cert: dict | None) -> dict | None:
    if cert is None:
        return None
    return {
        "semistable": cert["semistable"],
        "group": cert["group"],
        "graded_weights": [vec_out(w) for w in cert["graded_weights"]],
        "levi_roots": [vec_out(w) for w in cert["levi_roots"]],
        "projected_weights": [[vec_out(w), m] for w, m in cert["projected_weights"]],
    }


def label_record(s: StratumLabel) -> dict[str, Any]:
    return {
        "mu": vec_out(s.mu),
        "lambda": vec_out(s.lam),
        "m": s.m,
        "q2": rat(s.q2),
        "parabolic": {"levi": [s.parabolic.datum.simple_root_names()[i] for i in s.parabolic.levi], "dim": s.parabolic.dim},
        "dim_saturation": s.dim_saturation,
        "dim_stratum": s.dim_stratum,
        "certificate": certificate_summary(s.certificate),
    }


def kempf_record(k: KempfDatum, datum: RootDatum) -> dict[str, Any]:
    c = k.certificate
    return {
        "mu": vec_out(k.mu),
        "lambda": vec_out(k.lam),
        "m": k.m,
        "q2": rat(k.q2),
        "dominant": vec_out(dominantize(k.mu, datum)[0]),
        "active": [root_name(c.constraints[i], datum) for i in c.active_set],
        "multipliers": vec_out(c.multipliers),
    }


def induction_record(r: InductionResult) -> dict[str, Any]:
    return {
        "eta": vec_out(r.eta),
        "formula_eta": vec_out(r.formula_eta),
        "blade_nonempty": r.blade_nonempty,
        "method": r.method,
        "flagged": r.flagged,
        "induced": label_record(r.induced) if r.induced is not None else None,
        "fallback": None
        if r.fallback is None
        else {
            "label": label_record(r.fallback.label),
            "samples": r.fallback.samples,
            "seed": r.fallback.seed,
            "best_effort": True,
        },
        "diagnostics": list(r.diagnostics),
    }


def make_record(command: str, inputs: dict, results: list, diagnostics: list | None = None) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics or [],
    }


def dumps(record: dict) -> str:
    return json.dumps(record, indent=2, ensure_ascii=False)


# --------------------------------------------------------------------------
# input parsing
# --------------------------------------------------------------------------


def parse_root_expr(expr: str, datum: RootDatum) -> tuple[Fraction, ...]:
    """'2a+b' -> character coordinates; '[1,-1]' -> raw coordinates."""
    expr = expr.strip()
    if expr.startswith("[") or expr.startswith("("):
        body = expr.strip("[]() ")
        v = tuple(Fraction(t) for t in re.split(r"[,\s]+", body) if t)
        if len(v) != datum.rank:
            raise ValueError(f"{expr!r} has {len(v)} coordinates, rank is {datum.rank}")
        return v
    names = {n: i for i, n in enumerate(datum.simple_root_names())}
    terms = re.findall(r"([+-]?)\s*(\d*)\s*([a-z])", expr)
    if not terms or re.sub(r"[\s+\-\d a-z]", "", expr):
        raise ValueError(f"cannot parse root name {expr!r}")
    out = zero(datum.rank)
    for sign, k, n in terms:
        if n not in names:
            raise ValueError(f"unknown simple root {n!r} in {expr!r}")
        c = Fraction(int(k) if k else 1) * (-1 if sign == "-" else 1)
        out = tuple(x + c * y for x, y in zip(out, datum.simple_roots[names[n]]))
    return out


def split_list(s: str) -> list[str]:
    return [t.strip() for t in re.findall(r"\[[^\]]*\]|\([^)]*\)|[^,]+", s) if t.strip()]


def load_scales(path: str | None) -> list[Fraction] | None:
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        toks = fh.read().split()
    return [Fraction(t) for t in toks]


def load_datum(args) -> RootDatum:
    if args.type and args.relative:
        raise ValueError("give --type or --relative, not both")
    if args.relative:
        spec = args.relative
        if os.path.exists(spec):
            with open(spec, encoding="utf-8") as fh:
                spec = fh.read()
        d = build_relative(spec)
    elif args.type:
        d = build(args.type, load_scales(args.gram))
        if args.lattice != "sc":
            d = d.with_lattice(args.lattice)
    else:
        raise ValueError("one of --type or --relative is required")
    return d


def _parabolic(datum: RootDatum, levi: str) -> ParabolicSpec:
    return ParabolicSpec.from_names(datum, split_list(levi))


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _inputs(args, **extra) -> dict:
    out = {"type": args.type, "relative": args.relative, "lattice": args.lattice}
    out.update(extra)
    return out


def cmd_strata(args) -> dict:
    d = load_datum(args)
    table = enumerate_strata(d)
    results = [label_record(s) for s in table]
    diags = [
        {
            "kind": "rejected_candidate",
            "mu": vec_out(r.mu),
            "q2": rat(r.q2),
            "reason": r.reason,
            "certificate": certificate_summary(r.certificate),
        }
        for r in table.rejected
    ]
    return make_record("strata", _inputs(args), results, diags)


def cmd_optimal(args) -> dict:
    d = load_datum(args)
    support = [parse_root_expr(t, d) for t in split_list(args.support)]
    k = torus_optimal(support, d.gram, d.lattice)
    return make_record("optimal", _inputs(args, support=[vec_out(s) for s in support]), [kempf_record(k, d)])


def cmd_mu_p(args) -> dict:
    d = load_datum(args)
    p = _parabolic(d, args.levi)
    return make_record(
        "mu-p",
        _inputs(args, levi=[d.simple_root_names()[i] for i in p.levi]),
        [{"mu_P": vec_out(mu_P(p)), "delta_P": [root_name(a, d) for a in p.delta_P]}],
    )


def cmd_induce(args) -> dict:
    d = load_datum(args)
    p = _parabolic(d, args.levi)
    stratum = args.stratum.strip()
    xi = None
    if stratum != "trivial":
        m = p.levi_datum()
        if stratum.lstrip("-").isdigit():
            rows = enumerate_strata(m).strata
            idx = int(stratum)
            if not 0 <= idx < len(rows):
                raise ValueError(f"Levi stratum index {idx} out of range 0..{len(rows) - 1}")
            xi = rows[idx]
        else:
            mu = parse_root_expr(stratum, d)
            xi = make_label(dominantize(mu, m)[0], m)
        if xi.m == 0:
            xi = None
    r = induce(p, xi, seed=args.seed)
    return make_record(
        "induce",
        _inputs(
            args,
            levi=[d.simple_root_names()[i] for i in p.levi],
            stratum=stratum,
            levi_stratum=None if xi is None else vec_out(xi.mu),
            seed=args.seed,
        ),
        [induction_record(r)],
    )


# --------------------------------------------------------------------------
# human rendering (from the record only)
# --------------------------------------------------------------------------


def _v(xs: list[str]) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in xs) + ")"


def render(record: dict) -> str:
    cmd = record["command"]
    lines = []
    inp = record["inputs"]
    lines.append(f"# {cmd}  type={inp.get('type') or inp.get('relative')}  lattice={inp.get('lattice')}")
    if cmd == "strata":
        hdr = f"{'mu':<22}{'lambda':<18}{'m':>3}{'q2':>8}  {'levi':<10}{'dimP':>5}{'dimV1':>6}{'dim':>5}  cert"
        lines.append(hdr)
        for r in record["results"]:
            cert = r["certificate"]
            cs = "-" if cert is None else f"KN ok ({cert['group']})"
            lines.append(
                f"{_v(r['mu']):<22}{_v(r['lambda']):<18}{r['m']:>3}{str(Fraction(r['q2'])):>8}  "
                f"{'{' + ','.join(r['parabolic']['levi']) + '}':<10}{r['parabolic']['dim']:>5}"
                f"{r['dim_saturation']:>6}{r['dim_stratum']:>5}  {cs}"
            )
        for dg in record["diagnostics"]:
            lines.append(f"! rejected candidate {_v(dg['mu'])} q2={Fraction(dg['q2'])}: {dg['reason']}")
    elif cmd == "optimal":
        r = record["results"][0]
        lines.append(f"mu = {_v(r['mu'])}   dominant {_v(r['dominant'])}")
        lines.append(f"lambda = {_v(r['lambda'])}   m = {r['m']}   q2 = {Fraction(r['q2'])}")
        lines.append(f"active: {', '.join(r['active'])}   multipliers {_v(r['multipliers'])}")
    elif cmd == "mu-p":
        r = record["results"][0]
        lines.append(f"mu_P = {_v(r['mu_P'])}   Delta_P = {{{', '.join(r['delta_P'])}}}")
    elif cmd == "induce":
        r = record["results"][0]
        lines.append(f"eta = {_v(r['eta'])}   (xi + mu_P = {_v(r['formula_eta'])})")
        if r["flagged"]:
            fb = r["fallback"]
            extra = "" if fb is None else f"; best-effort {_v(fb['label']['mu'])} from {fb['samples']} samples"
            lines.append(f"FLAGGED{extra}")
        else:
            ind = r["induced"]
            lines.append(f"induced stratum mu = {_v(ind['mu'])}  m = {ind['m']}  dim = {ind['dim_stratum']}")
        for dg in r["diagnostics"]:
            lines.append(f"! {dg}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type tag, e.g. A2, C2, A1xA1")
    common.add_argument("--relative", help="builtin relative datum (su21, bc1(m1,m2), split:<tag>) or description file")
    common.add_argument("--lattice", choices=("sc", "adjoint"), default="sc")
    common.add_argument("--json", action="store_true", help="emit the structured record")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--gram", help="file with one positive rational Gram scale per factor")
    common.add_argument("--budget", type=int, help="cap on enumerated active subsets")

    p = argparse.ArgumentParser(prog="hesselink", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("strata", parents=[common], help="stratum table")
    o = sub.add_parser("optimal", parents=[common], help="torus-optimal datum of a support")
    o.add_argument("--support", required=True, help="comma list of root names (2a+b) or [coords]")
    m = sub.add_parser("mu-p", parents=[common], help="mu_P of a standard parabolic")
    m.add_argument("--levi", default="", help="comma list of Levi simple roots")
    i = sub.add_parser("induce", parents=[common], help="induce a Levi stratum")
    i.add_argument("--levi", default="")
    i.add_argument("--stratum", default="trivial", help="'trivial', a Levi table index, or a label [coords]")
    return p


COMMANDS = {"strata": cmd_strata, "optimal": cmd_optimal, "mu-p": cmd_mu_p, "induce": cmd_induce}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"max_subsets": args.budget} if args.budget else {}
    try:
        with limits(**overrides):
            record = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (EngineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(dumps(record) if args.json else render(record))
    return 0


if __name__ == "__main__":
    sys.exit(main())
