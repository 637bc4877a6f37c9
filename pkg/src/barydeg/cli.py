"""Command-line front end.

Subcommands:

* ``generate`` -- sample a mass-chain benchmark onto a frequency grid and
  write it as a CSV sample file.
* ``fit`` -- fit a sample file with a prescribed relative degree (AAA or
  vector-fitting backend), write a JSON report and a JSON model file.
* ``identify`` -- run the degree-identification sweep and report the
  winning degree with the full candidate table.
* ``eval`` -- evaluate a saved model over a frequency sweep and write a
  CSV with the value and the evaluation branch used.

Exit codes: 0 on success, 2 on usage or input errors, 3 when a fit did not
converge or the identification failed.
"""

import argparse
import json
import sys
import time
from importlib import resources

import numpy as np

from . import __version__
from .aaa import AaaConfig, aaa
from .asymptotic import AsymptoticModel, PiecewiseModel, eval_piecewise, make_piecewise
from .benchmarks import MassChainSystem, add_noise, forward_tf, inverse_tf, load_samples, sample_grid, save_samples
from .core import BarycentricModel, GeneralBarycentricModel, SampleSet, classify
from .errors import BarydegError
from .identify import aaa_backend, identify, vf_backend
from .vf import VfConfig, vf_adaptive

REPORT_SCHEMA_VERSION = "1"
MODEL_SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3


def report_schema():
    """The JSON schema shipped with the package, as a dict."""
    text = resources.files("barydeg").joinpath("schema/report-v1.json").read_text()
    return json.loads(text)


def _json_safe(obj):
    """Recursively replace non-finite floats by "inf"/"-inf"/"nan" strings."""
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if np.isfinite(f):
            return f
        if np.isnan(f):
            return "nan"
        return "inf" if f > 0 else "-inf"
    return obj


def _complex_pairs(values):
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def _pairs_to_complex(pairs):
    return np.array([complex(re, im) for re, im in pairs])


def model_to_json(pm):
    """Serialize a piecewise model losslessly (raw coefficients, no poles)."""
    bary = pm.bary
    doc = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "supports": _complex_pairs(bary.supports),
        "asymptotic": {
            "mu": pm.asym.mu,
            "nu": pm.asym.nu,
            "rdeg": pm.asym.rdeg,
            "order": pm.asym.order,
            "scale": pm.asym.scale,
            "num_moments_scaled": _complex_pairs(pm.asym.num_moments_scaled),
            "den_moments_scaled": _complex_pairs(pm.asym.den_moments_scaled),
        },
        "cutoff": pm.cutoff,
        "train_T": pm.train_T,
        "train_eps": pm.train_eps,
    }
    if isinstance(bary, GeneralBarycentricModel):
        doc["kind"] = "general"
        doc["num_weights"] = _complex_pairs(bary.num_weights)
        doc["den_weights"] = _complex_pairs(bary.den_weights)
    else:
        doc["kind"] = "interpolatory"
        doc["support_values"] = _complex_pairs(bary.support_values)
        doc["weights"] = _complex_pairs(bary.weights)
    return doc


def model_from_json(doc):
    """Rebuild a piecewise model written by :func:`model_to_json`."""
    supports = _pairs_to_complex(doc["supports"])
    if doc["kind"] == "general":
        bary = GeneralBarycentricModel(
            supports,
            _pairs_to_complex(doc["num_weights"]),
            _pairs_to_complex(doc["den_weights"]),
        )
    else:
        bary = BarycentricModel(
            supports,
            _pairs_to_complex(doc["support_values"]),
            _pairs_to_complex(doc["weights"]),
        )
    a = doc["asymptotic"]
    asym = AsymptoticModel(
        mu=a["mu"], nu=a["nu"], rdeg=a["rdeg"], order=a["order"], scale=a["scale"],
        num_moments_scaled=_pairs_to_complex(a["num_moments_scaled"]),
        den_moments_scaled=_pairs_to_complex(a["den_moments_scaled"]),
    )
    return PiecewiseModel(bary=bary, asym=asym, cutoff=doc["cutoff"],
                          train_T=doc["train_T"], train_eps=doc["train_eps"])


def _write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_json_safe(doc), fh, indent=2)
        fh.write("\n")


def _base_report(command, args_echo, config):
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "package_version": __version__,
        "command": command,
        "argv": args_echo,
        "config": config,
        "timing_ms": None,
    }


def _fit_summary(report, signature, pm):
    return {
        "terms": report.terms,
        "effective_degree": report.effective_degree,
        "linf_rel_error": report.linf_rel_error,
        "l2_rel_error": report.l2_rel_error,
        "converged": report.converged,
        "constraint_residual": report.constraint_residual,
        "leading_sum_magnitudes": list(report.leading_sum_magnitudes),
        "classified_rdeg": None if signature is None else signature.rdeg,
        "classified_mu": None if signature is None else signature.mu,
        "classified_nu": None if signature is None else signature.nu,
        "cutoff": None if pm is None else pm.cutoff,
        "train_T": None if pm is None else pm.train_T,
        "train_eps": None if pm is None else pm.train_eps,
    }


def cmd_generate(args):
    sys_ = MassChainSystem(args.chain)
    grid = sample_grid(args.wmin, args.wmax, args.count, args.spacing)
    values = inverse_tf(sys_, grid) if args.inverted else forward_tf(sys_, grid)
    if args.noise > 0:
        values = add_noise(values, args.noise, args.seed)
    save_samples(SampleSet(grid, values), args.output)
    expected = 2 * args.chain if args.inverted else -2 * args.chain
    kind = "inverted" if args.inverted else "forward"
    print(f"wrote {args.count} samples of the {kind} {args.chain}-mass chain to {args.output}")
    print(f"expected relative degree: {expected:+d}")
    return EXIT_OK


def _load_input(path):
    try:
        return load_samples(path)
    except FileNotFoundError:
        raise BarydegError(f"input file not found: {path}") from None


def cmd_fit(args):
    samples = _load_input(args.input)
    t0 = time.perf_counter()
    if args.backend == "aaa":
        model, rep = aaa(samples, AaaConfig(tol=args.tol, target_degree=args.degree,
                                            max_terms=args.max_terms))
    else:
        model, rep = vf_adaptive(samples, VfConfig(
            tol=args.tol, target_degree=args.degree,
            max_terms=args.max_terms if args.max_terms is not None else 60))
    signature = pm = None
    try:
        signature = classify(model)
        pm = make_piecewise(model, samples, args.order)
    except BarydegError:
        pass
    elapsed = (time.perf_counter() - t0) * 1e3

    doc = _base_report("fit", _echo(args), {
        "input": args.input, "backend": args.backend, "tol": args.tol,
        "degree": args.degree, "order": args.order, "max_terms": args.max_terms,
    })
    doc["result"] = _fit_summary(rep, signature, pm)
    doc["timing_ms"] = elapsed
    _write_json(args.report, doc)
    if args.model_out and pm is not None:
        _write_json(args.model_out, model_to_json(pm))
    print(f"fit: {rep.terms} terms, linf={rep.linf_rel_error:.3e}, "
          f"converged={rep.converged}; report -> {args.report}")
    return EXIT_OK if rep.converged else EXIT_NOT_CONVERGED


def cmd_identify(args):
    samples = _load_input(args.input)
    backend = (aaa_backend(tol=args.tol, max_terms=args.max_terms) if args.backend == "aaa"
               else vf_backend(tol=args.tol, max_terms=args.max_terms))
    t0 = time.perf_counter()
    result = identify(samples, backend, max_abs_degree=args.max_abs_degree, order=args.order)
    elapsed = (time.perf_counter() - t0) * 1e3

    doc = _base_report("identify", _echo(args), {
        "input": args.input, "backend": args.backend, "tol": args.tol,
        "max_abs_degree": args.max_abs_degree, "order": args.order,
        "max_terms": args.max_terms,
    })
    doc["result"] = {
        "identified": result.converged,
        "best_degree": result.best_degree,
        "best_terms": result.best.terms,
        "best_linf_rel_error": result.best.linf_rel_error,
        "cutoff": None if result.piecewise is None else result.piecewise.cutoff,
    }
    doc["candidates"] = [
        {"degree": c.degree, "terms": c.terms, "linf_rel_error": c.linf_rel_error,
         "converged": c.converged}
        for c in result.candidates
    ]
    doc["timing_ms"] = elapsed
    _write_json(args.report, doc)
    if args.model_out and result.piecewise is not None:
        _write_json(args.model_out, model_to_json(result.piecewise))
    if not result.converged:
        print(f"identification failed: no candidate converged; report -> {args.report}")
        return EXIT_NOT_CONVERGED
    print(f"identified relative degree {result.best_degree:+d} "
          f"({result.best.terms} terms); report -> {args.report}")
    return EXIT_OK


def cmd_eval(args):
    with open(args.model) as fh:
        pm = model_from_json(json.load(fh))
    grid = sample_grid(args.wmin, args.wmax, args.count, args.spacing)
    near = np.abs(grid) <= pm.cutoff
    values = eval_piecewise(pm, grid)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write("s_abs,r_re,r_im,r_abs,branch\n")
        for s, v, n in zip(grid, values, near):
            branch = "bary" if n else "asym"
            fh.write(f"{abs(s):.17g},{v.real:.17g},{v.imag:.17g},{abs(v):.17g},{branch}\n")
    print(f"wrote {args.count} evaluations to {args.output}")
    return EXIT_OK


def _echo(args):
    return {k: v for k, v in vars(args).items() if k != "func"}


def build_parser():
    p = argparse.ArgumentParser(
        prog="barydeg",
        description="Rational approximation of frequency-response data with "
                    "prescribed or identified relative degree.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a mass-chain benchmark to CSV")
    g.add_argument("--chain", type=int, required=True, help="number of masses (>= 2)")
    kind = g.add_mutually_exclusive_group()
    kind.add_argument("--forward", dest="inverted", action="store_false",
                      help="force-to-position map (default)")
    kind.add_argument("--inverted", dest="inverted", action="store_true",
                      help="position-to-force map")
    g.set_defaults(inverted=False)
    g.add_argument("--wmin", type=float, required=True)
    g.add_argument("--wmax", type=float, required=True)
    g.add_argument("--count", type=int, default=200)
    g.add_argument("--spacing", choices=["log", "linear"], default="log")
    g.add_argument("--noise", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o", required=True)
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fit", help="fit a sample file with a prescribed degree")
    f.add_argument("input")
    f.add_argument("--backend", choices=["aaa", "vf"], default="aaa")
    f.add_argument("--tol", type=float, default=1e-6)
    f.add_argument("--degree", type=int, default=0)
    f.add_argument("--order", type=int, default=10, help="asymptotic truncation order")
    f.add_argument("--max-terms", type=int, default=None)
    f.add_argument("--report", "-o", required=True)
    f.add_argument("--model-out", default=None)
    f.set_defaults(func=cmd_fit)

    i = sub.add_parser("identify", help="identify the relative degree from data")
    i.add_argument("input")
    i.add_argument("--backend", choices=["aaa", "vf"], default="aaa")
    i.add_argument("--tol", type=float, default=1e-6)
    i.add_argument("--max-abs-degree", type=int, default=20)
    i.add_argument("--order", type=int, default=10)
    i.add_argument("--max-terms", type=int, default=None)
    i.add_argument("--report", "-o", required=True)
    i.add_argument("--model-out", default=None)
    i.set_defaults(func=cmd_identify)

    e = sub.add_parser("eval", help="evaluate a saved model over a sweep")
    e.add_argument("--model", required=True)
    e.add_argument("--wmin", type=float, required=True)
    e.add_argument("--wmax", type=float, required=True)
    e.add_argument("--count", type=int, default=200)
    e.add_argument("--spacing", choices=["log", "linear"], default="log")
    e.add_argument("--output", "-o", required=True)
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help/--version
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (BarydegError, ValueError, OSError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
