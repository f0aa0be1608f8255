"""Command-line surface: counting, moments, convolution, and verification.

Machine-first output (JSON/TSV); `--pretty` adds indentation.  Exit codes:
0 pass, 1 check failure, 2 usage/schema error, 3 degree cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import Algebra, LinMap, flip_map, matrix_to_json
from .jacobi import (
    DegreeCapError,
    fock_moment,
    free_poisson,
    moment,
    params_from_json,
    poisson_limit_check,
    word_from_json,
)
from .joint import (
    JointModel,
    colored_word_from_json,
    free_convolve_moments,
    joint_moment,
    joint_moment_free_recursion,
    two_by_two_model_check,
    verify_jacobi_consistency,
)
from .partitions import count_family
from .scalar import (
    free_convolve_scalar,
    nu_moments,
    table_to_tsv,
    tcnc_recursion,
    tcnc_table,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGREE_CAP = 3


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _emit(payload, pretty: bool):
    print(json.dumps(payload, indent=2 if pretty else None, sort_keys=True, default=_json_default))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    family, n, k, l = args.family, args.n, args.k, args.l
    if family == "TCNC2" and (k is None or l is None):
        raise UsageError("TCNC2 requires --k and --l")
    methods = []
    if family in ("NC12", "NC2"):
        if args.method not in ("enumerate", "all"):
            raise UsageError(f"--method {args.method} applies only to TCNC2")
        fam = family if k is None else family + "^k"
        methods.append(("enumerate", count_family(fam, n, k)))
    else:
        wanted = ["enumerate", "recursion", "cumulant"] if args.method == "all" else [args.method]
        if "recursion" in wanted and k != l:
            if args.method == "all":
                wanted.remove("recursion")
            else:
                raise UsageError("--method recursion requires k = l")
        if n % 2 and ("recursion" in wanted or "cumulant" in wanted):
            raise UsageError("recursion/cumulant methods count even degrees only")
        for meth in wanted:
            if meth == "enumerate":
                methods.append((meth, count_family("TCNC2^{k,l}", n, k, l)))
            elif meth == "recursion":
                methods.append((meth, 1 if n == 0 else tcnc_recursion(k, n // 2)[-1]))
            elif meth == "cumulant":
                mk = nu_moments(k, n)
                ml = nu_moments(l, n)
                val = free_convolve_scalar(mk, ml, n)[n]
                methods.append((meth, int(val)))
    for _, value in methods:
        print(value)
    if len({v for _, v in methods}) > 1:
        print("method disagreement: " + ", ".join(f"{m}={v}" for m, v in methods), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def cmd_table(args) -> int:
    if args.kmax < 2 or args.nmax < 2 or args.nmax % 2:
        raise UsageError("require --kmax >= 2 and even --nmax >= 2")
    sys.stdout.write(table_to_tsv(tcnc_table(args.kmax, args.nmax // 2)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# moments / joint / convolve
# ---------------------------------------------------------------------------


def cmd_moments(args) -> int:
    params = params_from_json(_load_json(args.params))
    alg, coeffs = word_from_json(_load_json(args.word))
    if alg != params.algebra:
        raise UsageError("word and parameters use different algebras")
    value = moment(params, coeffs)
    out = {"degree": len(coeffs) - 1, "value": matrix_to_json(value)}
    if args.oracle:
        other = fock_moment(params, coeffs)
        out["oracle_value"] = matrix_to_json(other)
        out["max_deviation"] = float(np.max(np.abs(value - other)))
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_joint(args) -> int:
    obj = _load_json(args.model)
    try:
        model = JointModel(params_from_json(obj["params1"]), params_from_json(obj["params2"]))
    except KeyError as exc:
        raise UsageError(f"model file missing {exc}") from None
    word = colored_word_from_json(_load_json(args.word))
    if word.algebra != model.algebra:
        raise UsageError("word and model use different algebras")
    value = joint_moment(model, word)
    out = {"degree": word.degree, "value": matrix_to_json(value)}
    if args.oracle:
        other = joint_moment_free_recursion(model, word)
        out["oracle_value"] = matrix_to_json(other)
        out["max_deviation"] = float(np.max(np.abs(value - other)))
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_convolve(args) -> int:
    p1 = params_from_json(_load_json(args.p1))
    p2 = params_from_json(_load_json(args.p2))
    if p1.algebra != p2.algebra:
        raise UsageError("parameter sets use different algebras")
    table = free_convolve_moments(JointModel(p1, p2), args.degree)
    seq = table.sequence(p1.algebra.unit())
    _emit(
        {"degree": args.degree, "moments": [matrix_to_json(m) for m in seq]},
        args.pretty,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _suite_table() -> list[dict]:
    checks = []
    expected_rows = tcnc_table(6, 6)
    ok_entries = 0
    for label, rec_vals in expected_rows:
        k = 7 if label.startswith("k>") else int(label)
        mk = nu_moments(k, 12)
        conv = free_convolve_scalar(mk, mk, 12)
        for idx, n in enumerate(range(2, 13, 2)):
            enum = count_family("TCNC2^{k,l}", n, k, k)
            cum = int(conv[n])
            if enum == cum == rec_vals[idx]:
                ok_entries += 1
            else:
                checks.append(
                    {
                        "name": f"table[k={label}, n={n}]",
                        "pass": False,
                        "detail": {"enumerate": enum, "recursion": rec_vals[idx], "cumulant": cum},
                    }
                )
    checks.append(
        {
            "name": "table entries (enumerate = recursion = cumulant)",
            "pass": ok_entries == 36,
            "detail": {"agreeing_entries": ok_entries, "expected": 36},
        }
    )
    row2 = tcnc_recursion(2, 6)
    checks.append(
        {
            "name": "k=2 row equals central binomials",
            "pass": row2 == [2, 6, 20, 70, 252, 924],
            "detail": {"row": row2},
        }
    )
    stable = expected_rows[-1]
    checks.append(
        {
            "name": "stabilized row equals 2^n Catalan(n)",
            "pass": stable[0] == "k>6" and stable[1] == [2, 8, 40, 224, 1344, 8448],
            "detail": {"label": stable[0], "row": stable[1]},
        }
    )
    return checks


def _suite_counterexample() -> list[dict]:
    algd = Algebra("diagonal", 2)
    bflip = free_convolve_moments(
        JointModel(
            _bernoulli(algd, flip_map()),
            _bernoulli(algd, LinMap.identity(algd)),
        ),
        4,
    )
    res = verify_jacobi_consistency(bflip)
    checks = [
        {
            "name": "Bernoulli(flip) boxplus Bernoulli(identity) is not Jacobi",
            "pass": not res["consistent"],
            "detail": {"residual": res["residual"], "witness": res.get("witness")},
        }
    ]
    rng = np.random.default_rng(7)
    alg2 = Algebra("full", 2)
    k1 = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))]
    k2 = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))]
    from .jacobi import semicircular

    s1 = semicircular(alg2, LinMap.from_kraus(alg2, k1))
    s2 = semicircular(alg2, LinMap.from_kraus(alg2, k2))
    res2 = verify_jacobi_consistency(free_convolve_moments(JointModel(s1, s2), 4))
    checks.append(
        {
            "name": "semicircular boxplus semicircular stays Jacobi",
            "pass": bool(res2["consistent"]),
            "detail": {"residual": res2["residual"]},
        }
    )
    return checks


def _bernoulli(algebra: Algebra, alpha: LinMap):
    from .jacobi import JacobiParams

    return JacobiParams(
        algebra,
        (algebra.zero(), algebra.zero()),
        (alpha,),
        algebra.zero(),
        LinMap.zero(algebra),
    )


def _suite_two_by_two() -> list[dict]:
    checks = []
    samples = [(3.0, 3.0), (3.0, 2.7), (4.0, 2.0), (5.0, 2.0), (-3.0, -3.0),
               (2.5, 4.0), (4.0, 4.0), (10.0, 0.9), (-5.0, -2.0), (7.0, 3.0)]
    worst = 0.0
    for lam, gam in samples:
        rep = two_by_two_model_check(lam, gam, terms=80)
        worst = max(worst, rep["g_mu_diff"], rep["g_conv_diff"], rep["subordination_residual"])
    checks.append(
        {
            "name": "closed forms vs series at 10 sample points",
            "pass": worst < 1e-8,
            "detail": {"worst_residual": worst},
        }
    )
    z = 3.0
    rep = two_by_two_model_check(z, z)
    arc = float(np.sqrt(z * z - 4))
    diag = np.diag(rep["f_conv_closed"]).real
    checks.append(
        {
            "name": "lambda = gamma reduces to the arcsine F-transform",
            "pass": bool(np.allclose(diag, arc)),
            "detail": {"entries": list(diag), "sqrt(z^2-4)": arc},
        }
    )
    return checks


def _suite_poisson_limit() -> list[dict]:
    errs = {}
    for n_steps in (10, 100, 1000):
        approx, target = poisson_limit_check(n_steps, 1.0, 1.0, 1.0, degree=4)
        errs[n_steps] = max(abs(a - t) for a, t in zip(approx, target))
    r1 = errs[10] / errs[100]
    r2 = errs[100] / errs[1000]
    ok = 5.0 <= r1 <= 20.0 and 5.0 <= r2 <= 20.0
    return [
        {
            "name": "degree-4 error decays like 1/N (N = 10, 100, 1000)",
            "pass": ok,
            "detail": {"errors": {str(k): v for k, v in errs.items()}, "ratios": [r1, r2]},
        }
    ]


SUITES = {
    "table": _suite_table,
    "counterexample": _suite_counterexample,
    "two_by_two": _suite_two_by_two,
    "poisson_limit": _suite_poisson_limit,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = {"suites": {}}
    all_pass = True
    for name in names:
        checks = SUITES[name]()
        suite_pass = all(c["pass"] for c in checks)
        all_pass = all_pass and suite_pass
        report["suites"][name] = {"pass": suite_pass, "checks": checks}
    report["pass"] = all_pass
    _emit(report, args.pretty)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncfree")
    ap.add_argument("--pretty", action="store_true", help="indent JSON output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("count", help="count non-crossing partition families", parents=[common])
    p.add_argument("--family", required=True, choices=["NC12", "NC2", "TCNC2"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--method", default="enumerate", choices=["enumerate", "recursion", "cumulant", "all"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="TSV table of |TCNC_2^{k,k}(n)|", parents=[common])
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("moments", help="moment of a word under Jacobi parameters", parents=[common])
    p.add_argument("--params", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("joint", help="joint moment of a two-color word", parents=[common])
    p.add_argument("--model", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("convolve", help="free convolution moment sequence", parents=[common])
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("verify", help="run named acceptance suites", parents=[common])
    p.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegreeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREE_CAP
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
