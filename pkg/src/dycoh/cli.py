"""Command line interface: ``dycoh dy | verify | info | export``.

Exit codes: 0 success, 1 malformed input or invalid options, 2 an internal
consistency check failed (``d o d != 0``, cross-method mismatch, or a failed
verification).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from . import __version__
from .serialize import SchemaError, dumps


EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    k: Optional[int] = None
    input: Optional[str] = None
    nmax: int = 4
    functor: str = "identity"
    coeff_files: List[str] = field(default_factory=list)
    method: str = "bar"
    fmt: str = "table"
    threads: int = 1
    modular: bool = False
    check: Optional[str] = None
    timings: bool = False

    def validate(self) -> None:
        if self.nmax < 0:
            raise InputError("--nmax must be nonnegative")
        if self.k is not None and self.k < 0:
            raise InputError("--bk must be nonnegative")
        if self.threads < 1:
            raise InputError("--threads must be positive")
        if self.method in ("resolution", "both"):
            if self.k is None:
                raise InputError("method 'resolution' needs a B_k input (--bk)")
            if self.k < 1:
                raise InputError("method 'resolution' needs k >= 1")
            if self.functor == "coeff":
                raise InputError("method 'resolution' supports the identity and forgetful functors only")


def _threads(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("DYCOH_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"DYCOH_THREADS must be an integer, got {env!r}") from None
    return 1


def _load_algebra(cfg: RunConfig):
    from .bk import bk
    from .serialize import hopf_from_json, load_file
    if cfg.k is not None:
        return bk(cfg.k)
    return hopf_from_json(load_file(cfg.input))


# -- dy --------------------------------------------------------------------------

def _run_bar(cfg: RunConfig, H):
    from .double import coreg_coefficient, trivial_coefficient
    from .dycomplex import cohomology_dims, dual_hochschild, dy_complex
    from .serialize import coefficient_from_json, load_file

    rank_method = "auto" if cfg.modular else "exact"
    if cfg.functor == "identity":
        T = trivial_coefficient(H)
        C = dy_complex(H, T, T, cfg.nmax, rank_method=rank_method, workers=cfg.threads)
    elif cfg.functor == "forgetful":
        C = dual_hochschild(H, cfg.nmax, rank_method=rank_method)
    else:
        X = coefficient_from_json(load_file(cfg.coeff_files[0]), H, "X")
        Y = coefficient_from_json(load_file(cfg.coeff_files[1]), H, "Y")
        C = dy_complex(H, X, Y, cfg.nmax, rank_method=rank_method, workers=cfg.threads)
    return cohomology_dims(C)


def _run_resolution(cfg: RunConfig, H):
    from .bk import resolution_cohomology
    from .double import coreg_coefficient
    Y = "Iplus" if cfg.functor == "identity" else coreg_coefficient(H)
    return resolution_cohomology(cfg.k, Y, cfg.nmax)


def _emit_dy(cfg: RunConfig, H, tables, verdict: Optional[str], out) -> None:
    from .bk import predicted_dim
    predicted = None
    if cfg.k is not None and cfg.functor in ("identity", "forgetful"):
        predicted = [predicted_dim(cfg.k, n) for n in range(cfg.nmax + 1)]
    if cfg.fmt == "json":
        doc = {
            "command": "dy",
            "algebra": H.name,
            "k": cfg.k,
            "functor": cfg.functor,
            "nmax": cfg.nmax,
            "predicted": predicted,
            "tables": [],
            "verdict": verdict,
        }
        for method, tab in tables:
            t = tab.to_dict()
            if not cfg.timings:
                t.pop("timings", None)
            t["method"] = method
            if predicted is not None:
                t["match"] = [a == b for a, b in zip(tab.dims, predicted)]
            doc["tables"].append(t)
        out.write(dumps(doc))
        return
    if cfg.fmt == "csv":
        out.write("method,n,dim,predicted,match,truncated\n")
        for method, tab in tables:
            for n, v in enumerate(tab.dims):
                p = predicted[n] if predicted else ""
                m = ("MATCH" if v == p else "MISMATCH") if predicted else ""
                trunc = "yes" if (tab.truncated_top and n == cfg.nmax) else "no"
                out.write(f"{method},{n},{v},{p},{m},{trunc}\n")
        if verdict:
            out.write(f"# verdict,{verdict}\n")
        return
    for method, tab in tables:
        out.write(f"# {H.name}  functor={cfg.functor}  method={method}  nmax={cfg.nmax}\n")
        out.write(f"{'n':>3}  {'dim':>6}  {'binom':>6}  match\n")
        for n, v in enumerate(tab.dims):
            p = predicted[n] if predicted else None
            m = ("MATCH" if v == p else "MISMATCH") if predicted else "-"
            ps = str(p) if p is not None else "-"
            flag = "  (upper bound)" if tab.truncated_top and n == cfg.nmax else ""
            out.write(f"{n:>3}  {v:>6}  {ps:>6}  {m}{flag}\n")
        if cfg.timings:
            out.write(f"# timings: {tab.metadata.get('timings')}\n")
    if verdict:
        out.write(f"verdict: {verdict}\n")


def cmd_dy(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    H = _load_algebra(cfg)
    from .hopf import check_hopf_axioms
    rep = check_hopf_axioms(H)
    if not rep.passed:
        sys.stderr.write(f"input fails Hopf axioms: {rep.failed_names()}\n")
        return EXIT_INPUT
    tables = []
    if cfg.method in ("bar", "both"):
        tables.append(("bar" if cfg.functor != "forgetful" else "hochschild", _run_bar(cfg, H)))
    if cfg.method in ("resolution", "both"):
        tables.append(("resolution", _run_resolution(cfg, H)))
    verdict = None
    code = EXIT_OK
    if cfg.method == "both":
        a, b = tables[0][1], tables[1][1]
        same = a.dims == b.dims
        verdict = "match" if same else "mismatch"
        if not same:
            code = EXIT_CHECK
    _emit_dy(cfg, H, tables, verdict, out)
    return code


# -- verify ----------------------------------------------------------------------

CHECKS = ("hopf", "dual", "double", "relations", "zmodule", "named", "decompositions",
          "koszul", "bar", "projectivity", "cointegral")


def _verify_battery(H, k: Optional[int], only: Optional[str]):
    from .bk import (NAMED_MODULES, dbk_relations, g_projectivity_check, koszul_resolution,
                     named_module, verify_decompositions)
    from .double import check_double, check_zmodule, coreg_coefficient, trivial_coefficient, DoubleAlgebra
    from .dycomplex import bar_complex, g_exactness_probe
    from .hopf import check_hopf_axioms, cointegral_search, dual_hopf

    results = {}

    def want(name):
        return only is None or only == name

    hopf = check_hopf_axioms(H)
    if want("hopf"):
        results["hopf"] = hopf.to_dict()
    if not hopf.passed:
        return results
    if want("dual"):
        D = dual_hopf(H, validate=False) if H._dual is None else H.dual
        r = check_hopf_axioms(D).to_dict()
        r["antipode_choice"] = getattr(D, "antipode_choice", None)
        results["dual"] = r
    if want("double"):
        results["double"] = check_double(DoubleAlgebra(H)).to_dict()
    if want("zmodule"):
        out = {}
        for Z in (trivial_coefficient(H), coreg_coefficient(H)):
            out[Z.name] = check_zmodule(H, Z.module, Z.beta).to_dict()
        results["zmodule"] = {"passed": all(v["passed"] for v in out.values()), "coefficients": out}
    if want("cointegral"):
        lam = cointegral_search(H)
        from .exactlin import qstr
        results["cointegral"] = {
            "passed": True,
            "status": "present" if lam is not None else "absent (non-semisimple)",
            "value": [qstr(x) for x in lam] if lam is not None else None,
        }
    if want("bar"):
        from .bk import named_module as nm
        T = trivial_coefficient(H)
        cx = bar_complex(H, T, 3)
        probes = [nm(k, "Iplus"), nm(k, "Iminus"), nm(k, "Cplus")] if k else []
        pr = g_exactness_probe(H, cx, probes) if probes else None
        ok = cx.dd_zero() and cx.equivariant() and all(cx.exact_positions())
        results["bar"] = {"passed": bool(ok and (pr is None or pr.passed)), "dd_zero": cx.dd_zero(),
                          "exact_positions": cx.exact_positions(),
                          "probes": None if pr is None else pr.passed}
    if not k:
        return results
    if want("relations"):
        results["relations"] = dbk_relations(k).to_dict()
    if want("named"):
        out = {}
        for name in NAMED_MODULES:
            M = named_module(k, name)
            out[name] = {"dim": M.dim, "passed": M.check().passed}
        results["named"] = {"passed": all(v["passed"] for v in out.values()), "modules": out}
    if want("decompositions"):
        results["decompositions"] = verify_decompositions(k).to_dict()
    if want("koszul"):
        r = koszul_resolution(k, 5).check()
        r["passed"] = bool(r["binomial"] and r["dd_zero"] and r["equivariant"] and r["exact"])
        results["koszul"] = r
    if want("projectivity"):
        got = {name: g_projectivity_check(k, name) for name in ("Cplus", "Cminus", "Iplus")}
        expect = {"Cplus": True, "Cminus": True, "Iplus": False}
        results["projectivity"] = {"passed": got == expect, "g_projective": got}
    return results


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.check is not None and cfg.check not in CHECKS:
        raise InputError(f"unknown check {cfg.check!r}; expected one of {', '.join(CHECKS)}")
    H = _load_algebra(cfg)
    results = _verify_battery(H, cfg.k, cfg.check)
    passed = all(r.get("passed", False) for r in results.values())
    if cfg.check and cfg.check not in results:
        raise InputError(f"check {cfg.check!r} does not apply to this input")
    doc = {"command": "verify", "algebra": H.name, "k": cfg.k, "passed": passed, "checks": results}
    if cfg.fmt == "json":
        out.write(dumps(doc))
    else:
        out.write(f"# verify {H.name}\n")
        for name, r in results.items():
            status = "pass" if r.get("passed") else "FAIL"
            extra = f"  {r['status']}" if "status" in r else ""
            out.write(f"{name:<16}{status}{extra}\n")
            for f in r.get("failures", []):
                out.write(f"    {f['axiom']} at {f['witness']}\n")
    return EXIT_OK if passed else EXIT_CHECK


# -- info / export ---------------------------------------------------------------------

def cmd_info(path: str, out=None) -> int:
    out = out or sys.stdout
    from .hopf import check_hopf_axioms
    from .serialize import hopf_from_json, load_file
    H = hopf_from_json(load_file(path))
    rep = check_hopf_axioms(H)
    status = "pass" if rep.passed else "fail (" + ", ".join(rep.failed_names()) + ")"
    out.write(f"dim {H.dim}, Hopf axioms: {status}, D(H) dim {H.dim * H.dim}\n")
    out.write(f"name: {H.name}\n")
    out.write(f"basis: {' '.join(H.labels)}\n")
    out.write(f"dual dim: {H.dim}\n")
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_export(args, out=None) -> int:
    out = out or sys.stdout
    from .bk import bk, named_module
    from .double import coreg_coefficient, trivial_coefficient
    from .serialize import dmodule_to_json, hopf_to_json, zcoef_to_json
    H = bk(args.bk)
    if args.module:
        try:
            doc = dmodule_to_json(named_module(args.bk, args.module))
        except ValueError as e:
            raise InputError(str(e)) from None
    elif args.coefficient:
        Z = trivial_coefficient(H) if args.coefficient == "trivial" else coreg_coefficient(H)
        doc = zcoef_to_json(Z)
    else:
        doc = hopf_to_json(H)
    out.write(dumps(doc))
    return EXIT_OK


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dycoh", description="Davydov-Yetter cohomology of Hopf algebra module categories.")
    p.add_argument("--version", action="version", version=f"dycoh {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--bk", type=int, metavar="K", help="use the built-in B_K")
        g.add_argument("--input", metavar="FILE", help="Hopf algebra JSON file")

    dy = sub.add_parser("dy", help="compute cohomology dimensions")
    source(dy)
    dy.add_argument("--nmax", type=int, default=4)
    dy.add_argument("--functor", nargs="+", default=["identity"], metavar="F",
                    help="identity | forgetful | coeff X.json Y.json")
    dy.add_argument("--method", choices=["bar", "resolution", "both"], default="bar")
    dy.add_argument("--format", dest="fmt", choices=["table", "json", "csv"], default="table")
    dy.add_argument("--threads", type=int, default=None)
    dy.add_argument("--modular", choices=["on", "off"], default="off")
    dy.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")

    ve = sub.add_parser("verify", help="run the verification battery")
    source(ve)
    ve.add_argument("--check", metavar="NAME", help="run a single check: " + ", ".join(CHECKS))
    ve.add_argument("--format", dest="fmt", choices=["json", "table"], default="json")

    inf = sub.add_parser("info", help="summarize a Hopf algebra JSON file")
    inf.add_argument("file")

    ex = sub.add_parser("export", help="write a built-in algebra, module or coefficient as JSON")
    ex.add_argument("--bk", type=int, required=True, metavar="K")
    g = ex.add_mutually_exclusive_group()
    g.add_argument("--module", metavar="NAME")
    g.add_argument("--coefficient", choices=["trivial", "coregular"])
    return p


def _config(args) -> RunConfig:
    functor = args.functor[0]
    files: List[str] = []
    if functor == "coeff":
        if len(args.functor) != 3:
            raise InputError("--functor coeff needs two files: X.json Y.json")
        files = args.functor[1:]
    elif functor in ("identity", "forgetful"):
        if len(args.functor) != 1:
            raise InputError(f"--functor {functor} takes no arguments")
    else:
        raise InputError(f"unknown functor {functor!r}")
    return RunConfig(command="dy", k=args.bk, input=args.input, nmax=args.nmax, functor=functor,
                     coeff_files=files, method=args.method, fmt=args.fmt, threads=_threads(args.threads),
                     modular=args.modular == "on", timings=args.timings)


def main(argv: Optional[List[str]] = None) -> int:
    from .dycomplex import ComplexError
    from .hopf import HopfAxiomError

    args = build_parser().parse_args(argv)
    try:
        if args.command == "dy":
            cfg = _config(args)
            cfg.validate()
            return cmd_dy(cfg)
        if args.command == "verify":
            cfg = RunConfig(command="verify", k=args.bk, input=args.input, check=args.check, fmt=args.fmt)
            cfg.validate()
            return cmd_verify(cfg)
        if args.command == "info":
            return cmd_info(args.file)
        if args.command == "export":
            return cmd_export(args)
    except (InputError, SchemaError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except HopfAxiomError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except ComplexError as e:
        sys.stderr.write(f"consistency failure: {e}\n")
        return EXIT_CHECK
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
