"""Command-line front end: verify, quiver, ext, transfer, homology, params.

Exit codes: 0 ok, 1 a check failed, 2 invalid configuration or unwritable output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import _kernels
from .ainfty import build_A, build_B, build_W, build_X, build_Y, module_stasheff_defect, stasheff_defect, transfer
from .apps import params_from_brauer_tree, params_from_group, params_from_hecke, summarize
from .arquiver import check_duality as check_duality_mesh
from .arquiver import (
    HomMatrix, build_bar_quiver, build_stable_quiver, graded_end_dims, hom_matrix,
    oracle_isomorphism, orbit_oracle, path_vanishing, sigma_orbits, sorted_spectrum, to_dict, to_dot, wrap_map,
)
from .dga import ParamSet, build_Q, build_R, d_squared_violations, expected_homology, homology_dims, hopf_checks, homotopy_violations
from .exactlin import RATIONALS, FieldSpec, _is_prime, parse_field, prime_field
from .extcalc import _normalize_class, dsg_hom_dims, end_report, expected_degree_zero, ext_dims, presentation_dims

SCHEMA_VERSION = 1
CHECK_NAMES = ["d-squared", "homotopy", "hopf", "transfer", "stasheff", "ext-presentation",
               "end-dims", "duality", "harada-sai", "counts", "oracle"]
CORRUPT_TARGETS = ["ainfty", "differential", "mesh"]
TRANSFER_LIMIT_MS = 60_000


class ConfigError(ValueError):
    pass


def _ints(text: str, n: int, what: str) -> list:
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise ConfigError(f"{what}: expected {n} comma-separated integers, got {text!r}") from None
    if len(parts) != n:
        raise ConfigError(f"{what}: expected {n} integers, got {len(parts)}")
    return parts


def resolve_params(args) -> ParamSet:
    try:
        if args.params is not None:
            return ParamSet(*_ints(args.params, 4, "--params"))
        if args.group is not None:
            return params_from_group(*_ints(args.group, 3, "--group"))
        if args.brauer is not None:
            return params_from_brauer_tree(*_ints(args.brauer, 2, "--brauer"))
        if args.hecke is not None:
            return params_from_hecke(args.hecke)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(str(e)) from None
    raise ConfigError("one of --params, --group, --brauer, --hecke is required")


def resolve_field(args) -> FieldSpec:
    try:
        return parse_field(args.field)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _window(args, default: int) -> int:
    if args.window is None:
        return default
    if args.window <= 0:
        raise ConfigError("--window must be positive")
    return args.window


def _prime_of_power(n: int) -> int | None:
    for p in range(2, n + 1):
        if n % p == 0 and _is_prime(p):
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return None


def _bd(d) -> list:
    return [int(d[0]), int(d[1])]


# checks --------------------------------------------------------------------------------

def check_d_squared(p, fld, window, corrupt):
    words = _kernels.enumerate_words(p.h, window // p.l)
    flip = int(corrupt == "differential")
    bad = sum(int(_kernels.d_squared_sweep(w, p.h, flip)[0]) for w in words)
    R = build_R(p.a, 8)
    bad_r = d_squared_violations(R, R.words())
    return bad == 0 and not bad_r, {"window": window, "q_words": sum(len(w) for w in words), "q_violations": bad,
                                    "r_weight": 8, "r_words": len(R.words()), "r_violations": len(bad_r)}


def check_homotopy(p, fld, window, corrupt):
    words = _kernels.enumerate_words(p.h, window // p.l)
    flip = int(corrupt == "differential")
    bad = sum(int(_kernels.homotopy_sweep(w, p.h, flip)[0]) for w in words)
    R = build_R(p.a, 8)
    bad_r = homotopy_violations(R, R.words())
    try:
        got = {k: v for k, v in homology_dims(build_Q(p), window, fld).items() if v}
        hom_ok = got == expected_homology(p, window)
    except ArithmeticError:
        got, hom_ok = {}, False
    return bad == 0 and not bad_r and hom_ok, {"window": window, "q_violations": bad, "r_violations": len(bad_r),
                                              "homology_total": sum(got.values()), "homology_matches": hom_ok}


def check_hopf(p, fld, window, corrupt):
    char = _prime_of_power(p.l)
    if char is None:
        return None, {"skipped": f"l = {p.l} is not a prime power, so the relation is not primitive in any characteristic"}
    w = min(2 * p.h * p.l, 40)
    r = hopf_checks(build_Q(p), w, prime_field(char))
    keys = ("d_delta", "cocommutative", "antipode", "multiplicative")
    return r["ok"], {"field": f"fp:{char}", "window": w, "monomials": r["monomials"],
                     **{k: len(r[k]) for k in keys}}


def check_transfer(p, fld, window, corrupt):
    t0 = time.perf_counter()
    r = transfer(build_Q(p), p.h + 1, p.h * p.l + p.h)
    ms = (time.perf_counter() - t0) * 1000
    xi = (0, 1)
    mh = r.ops.get((p.h, (xi,) * p.h), {})
    ok = not r.mismatches and mh == {(p.l, 0): -1} and ms <= TRANSFER_LIMIT_MS
    return ok, {"max_arity": p.h + 1, "mismatches": len(r.mismatches), "m_h_xi": _element_label(mh),
                "global_sign": r.global_sign, "within_limit": ms <= TRANSFER_LIMIT_MS}


def check_stasheff(p, fld, window, corrupt):
    bad = corrupt == "ainfty"
    out = {
        "A": len(stasheff_defect(build_A(p, corrupt=bad), p.h + 2)),
        "B": len(stasheff_defect(build_B(p, corrupt=bad), p.l + 2)),
        "W": sum(len(module_stasheff_defect(build_W(p, i), p.l + 2, 0)) for i in range(1, p.l + 1)),
        "X": sum(len(module_stasheff_defect(build_X(p, i), p.l + 1, 0)) for i in range(1, p.h + 1)),
        "Y": sum(len(module_stasheff_defect(build_Y(p, i), p.h + 2, 0)) for i in range(1, p.h)),
    }
    return not any(out.values()), {"defects": out}


def check_ext(p, fld, window, corrupt):
    wrong = []
    for i in range(1, p.h):
        for j in range(1, p.h):
            if ext_dims(p, i, j, fld=fld).dims != presentation_dims(p, i, j):
                wrong.append([i, j])
    xh = dsg_hom_dims(p, p.h, p.h, fld)
    return not wrong and not xh, {"pairs": (p.h - 1) ** 2, "mismatched_pairs": wrong, "x_h_vanishes": not xh}


def check_end_dims(p, fld, window, corrupt, quiver=None):
    q, H = quiver
    rows, ok = [], True
    for i in range(1, p.h):
        r = end_report(p, i, fld)
        row = {"i": i, "total": r.total_K_dim, "graded_end": graded_end_dims(q, i, H),
               "degree_zero": {str(k): v for k, v in sorted(r.degree_zero_dims.items())},
               "socle": _bd(r.socle_bidegree) if r.socle_bidegree is not None else None}
        ok &= (r.total_K_dim == 2 * min(i, p.h - i) == row["graded_end"]
               and r.degree_zero_dims == expected_degree_zero(p, i)
               and row["socle"] == [2 * p.a - 1, p.l])
        rows.append(row)
    return ok, {"reports": rows}


def check_duality(p, fld, window, corrupt, quiver=None):
    q, H = quiver
    mesh = check_duality_mesh(q, H)
    D = {(i, j): dsg_hom_dims(p, i, j, fld) for i in range(1, p.h) for j in range(1, p.h)}
    tate = 0
    for (i, j), dims in D.items():
        back = D[j, i]
        for (n, w), d in dims.items():
            if back.get(_normalize_class(p, 2 * p.a - 1 - n, p.l - w), 0) != d:
                tate += 1
    return mesh["ok"] and tate == 0, {"mesh_pairs": mesh["checked"], "mesh_violations": len(mesh["violations"]),
                                      "dsg_violations": tate}



def check_harada_sai(p, fld, window, corrupt, quiver=None):
    q, _ = quiver
    r = path_vanishing(q, fld)
    return r["ok"] and r["max_nonzero_path_len"] < p.h, {"max_nonzero_path_len": r["max_nonzero_path_len"], "h": p.h}


def check_counts(p, fld, window, corrupt, quiver=None):
    q, _ = quiver
    try:
        s = summarize(p)
    except ArithmeticError as e:
        return False, {"error": str(e)}
    bar = build_bar_quiver(p)
    fibers = {}
    for v in wrap_map(bar, q).values():
        fibers[v] = fibers.get(v, 0) + 1
    ok = (s.sing_count == len(q.vertices) == abs(p.b) * (p.h - 1) and s.sing_orbits == len(sigma_orbits(q))
          and len(bar.vertices) == p.l * len(q.vertices) and set(fibers.values()) == {p.l}
          and len(fibers) == len(q.vertices))
    return ok, {**s.as_dict(), "arrows": len(q.arrows), "bar_vertices": len(bar.vertices),
                "wrap_fiber_sizes": sorted(set(fibers.values()))}


def check_oracle(p, fld, window, corrupt, quiver=None):
    q, H = quiver
    spec_ok = sorted_spectrum(orbit_oracle(p)) == sorted_spectrum(H.dims)
    iso = oracle_isomorphism(q, H)
    return spec_ok and iso is not None, {"spectrum_matches": spec_ok, "isomorphism": None if iso is None else
                                         {"shift": iso["shift"], "reflect": iso["reflect"]}}


def _stable_homs(p, fld, corrupt):
    q = build_stable_quiver(p)
    H = hom_matrix(q, fld)
    if corrupt == "mesh":
        dims = dict(H.dims)
        v = q.vertices[0]
        dims[v, v] += 1
        H = HomMatrix(H.vertices, dims, H.max_nonzero_path_len, H.length_h_vanishes)
    return q, H


def run_verify(p: ParamSet, fld: FieldSpec = RATIONALS, window: int | None = None, corrupt: str | None = None,
               timing: bool = True) -> dict:
    window = window or 4 * p.h * p.l
    quiver = _stable_homs(p, fld, corrupt)
    plain = {"d-squared": check_d_squared, "homotopy": check_homotopy, "hopf": check_hopf,
             "transfer": check_transfer, "stasheff": check_stasheff, "ext-presentation": check_ext}
    on_quiver = {"end-dims": check_end_dims, "duality": check_duality, "harada-sai": check_harada_sai,
                 "counts": check_counts, "oracle": check_oracle}
    checks = []
    for name in CHECK_NAMES:
        t0 = time.perf_counter()
        if name in plain:
            ok, details = plain[name](p, fld, window, corrupt)
        else:
            ok, details = on_quiver[name](p, fld, window, corrupt, quiver=quiver)
        ms = round((time.perf_counter() - t0) * 1000, 1) if timing else 0
        checks.append({"name": name, "pass": ok, "details": details, "ms": ms})
    failed = [c["name"] for c in checks if c["pass"] is False]
    skipped = [c["name"] for c in checks if c["pass"] is None]
    summary = {"ok": not failed, "passed": len(checks) - len(failed) - len(skipped), "failed": failed,
               "skipped": skipped, "field": str(fld), "corrupt": corrupt}
    summary.update({k: v for k, v in summarize(p, cross_check=False).as_dict().items() if k != "params"})
    return {"schema_version": SCHEMA_VERSION, "params": list(p.astuple()), "checks": checks, "summary": summary}


# exports -------------------------------------------------------------------------------

def _element_label(e: dict) -> str:
    if not e:
        return "0"
    terms = []
    for (j, x), c in sorted(e.items()):
        mono = " ".join(([f"tau^{j}" if j > 1 else "tau"] if j else []) + (["xi"] if x else [])) or "1"
        terms.append(f"{c}*{mono}" if c != 1 else mono)
    return " + ".join(terms)


def transfer_report(p: ParamSet, window: int) -> dict:
    r = transfer(build_Q(p), p.h + 1, window)
    ops = [{"arity": n, "inputs": [_element_label({a: 1}) for a in args], "output": _element_label(v)}
           for (n, args), v in sorted(r.ops.items()) if v]
    xi = (0, 1)
    higher = [{"arity": n, "value": _element_label(r.ops[n, (xi,) * n])}
              for n in range(3, p.h + 2) if r.ops.get((n, (xi,) * n))]
    return {"schema_version": SCHEMA_VERSION, "params": list(p.astuple()), "max_arity": p.h + 1, "window": window,
            "global_sign": r.global_sign, "mismatches": len(r.mismatches), "higher_ops_on_xi": higher, "ops": ops}


def _table(header: list, rows: list, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    return "".join(" ".join(str(x).rjust(n) for x, n in zip(r, widths)) + "\n" for r in [header, *rows])


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _verify_text(rep: dict) -> str:
    lines = [f"params {','.join(map(str, rep['params']))}"]
    for c in rep["checks"]:
        tag = "SKIP" if c["pass"] is None else ("PASS" if c["pass"] else "FAIL")
        lines.append(f"{tag} {c['name']} ({c['ms']} ms)")
    lines.append("OK" if rep["summary"]["ok"] else "FAILED: " + ", ".join(rep["summary"]["failed"]))
    return "\n".join(lines) + "\n"


# commands ------------------------------------------------------------------------------

def _fmt(args, allowed: tuple) -> str:
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise ConfigError(f"{args.command} supports --format {'|'.join(allowed)}, not {fmt}")
    return fmt


def cmd_verify(args) -> tuple:
    fmt = _fmt(args, ("json", "text"))
    p, fld = resolve_params(args), resolve_field(args)
    rep = run_verify(p, fld, _window(args, 4 * p.h * p.l), args.corrupt, timing=not args.no_timing)
    return (_dump(rep) if fmt == "json" else _verify_text(rep)), (0 if rep["summary"]["ok"] else 1)


def cmd_quiver(args) -> tuple:
    fmt = _fmt(args, ("json", "dot"))
    p, fld = resolve_params(args), resolve_field(args)
    q = build_bar_quiver(p) if args.bar else build_stable_quiver(p)
    if fmt == "dot":
        return to_dot(q), 0
    d = to_dict(q, None if args.bar else hom_matrix(q, fld))
    d["schema_version"] = SCHEMA_VERSION
    d["kind"] = "bar" if args.bar else "stable"
    d["sigma_orbits"] = len(sigma_orbits(q))
    if args.bar:
        stable = build_stable_quiver(p)
        index = {v: n for n, v in enumerate(stable.vertices)}
        w = wrap_map(q, stable)
        d["wrap"] = [index[w[v]] for v in q.vertices]
    return _dump(d), 0


def cmd_ext(args) -> tuple:
    fmt = _fmt(args, ("csv", "json", "text"))
    p, fld = resolve_params(args), resolve_field(args)
    for name, v in (("--i", args.i), ("--j", args.j)):
        if not 1 <= v <= p.h:
            raise ConfigError(f"{name} must lie in 1..h = 1..{p.h}")
    t = ext_dims(p, args.i, args.j, window=None if args.window is None else _window(args, 0), fld=fld)
    rows = [[s, v, w, d] for (s, (v, w)), d in sorted(t.dims.items())]
    if fmt == "json":
        dsg = dsg_hom_dims(p, args.i, args.j, fld)
        return _dump({"schema_version": SCHEMA_VERSION, "params": list(p.astuple()), "i": args.i, "j": args.j,
                      "hom_steps": t.hom_steps, "window": t.window, "field": str(fld), "e2": rows,
                      "dsg": [[n, w, d] for (n, w), d in sorted(dsg.items())]}), 0
    return _table(["s", "v", "w", "dim"], rows, fmt), 0


def cmd_transfer(args) -> tuple:
    _fmt(args, ("json",))
    p = resolve_params(args)
    return _dump(transfer_report(p, _window(args, p.h * p.l + p.h))), 0


def cmd_homology(args) -> tuple:
    fmt = _fmt(args, ("csv", "json", "text"))
    p, fld = resolve_params(args), resolve_field(args)
    window = _window(args, 4 * p.h * p.l)
    got = homology_dims(build_Q(p), window, fld)
    want = expected_homology(p, window)
    rows = [[n, w, d, want.get((n, w), 0)] for (n, w), d in sorted(got.items()) if d or want.get((n, w))]
    if fmt == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "params": list(p.astuple()), "window": window,
                      "field": str(fld), "rows": rows, "matches_expected": all(r[2] == r[3] for r in rows)}), 0
    return _table(["homological", "internal", "dim", "expected"], rows, fmt), 0


def cmd_params(args) -> tuple:
    fmt = _fmt(args, ("json", "text"))
    d = summarize(resolve_params(args)).as_dict()
    if fmt == "text":
        return "".join(f"{k} {v}\n" for k, v in d.items()), 0
    return _dump({"schema_version": SCHEMA_VERSION, **d}), 0


COMMANDS = {"verify": cmd_verify, "quiver": cmd_quiver, "ext": cmd_ext, "transfer": cmd_transfer,
            "homology": cmd_homology, "params": cmd_params}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--params", metavar="a,b,h,l")
    src.add_argument("--group", metavar="p,n,q", help="cyclic Sylow p-subgroup of order p^n, inertial index q")
    src.add_argument("--brauer", metavar="e,lambda", help="Brauer tree with e edges and multiplicity lambda")
    src.add_argument("--hecke", metavar="n", type=int, help="Hecke algebra at an n-th root of unity")
    common.add_argument("--field", default="rat", help="rat or fp:<p> (default rat)")
    common.add_argument("--window", type=int, help="internal-degree window")
    common.add_argument("--format", choices=["json", "dot", "csv", "text"])
    common.add_argument("--out", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="masseysg", description="Massey-product models of singularity categories.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run every named check")
    v.add_argument("--corrupt", nargs="?", const="ainfty", choices=CORRUPT_TARGETS,
                   help="flip one structure constant (negative control); default target ainfty")
    v.add_argument("--no-timing", action="store_true", help="report ms as 0 for byte-identical output")
    q = sub.add_parser("quiver", parents=[common], help="stable AR quiver as json or dot")
    q.add_argument("--bar", action="store_true", help="the l-fold cover on the other side")
    e = sub.add_parser("ext", parents=[common], help="E2 table of Ext(X_i, X_j)")
    e.add_argument("--i", type=int, required=True)
    e.add_argument("--j", type=int, required=True)
    sub.add_parser("transfer", parents=[common], help="transferred A-infinity operations")
    sub.add_parser("homology", parents=[common], help="bigraded homology of Q")
    sub.add_parser("params", parents=[common], help="object counts for a parameter set")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"masseysg: {e}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w") as f:
                f.write(text)
        except OSError as e:
            print(f"masseysg: cannot write {args.out}: {e}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
