"""Command-line front end: evaluate, sweep, ingest custom channels, verify.

Exit codes: 0 success, 2 invalid arguments or schema, 3 I/O failure,
4 CPTP validation failure. All probabilities are printed with shortest
round-trip decimals so JSON and CSV outputs diff cleanly across runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .channels import (
    Channel,
    CPTPError,
    channel_from_dict,
    make_amplitude_damping,
    make_depolarizing,
    make_dephasing,
    make_erasure,
    make_generalized_dephasing,
    mixed_unitary_pair_d3,
    mixed_unitary_pair_d6,
)
from .discrimination import (
    DiscriminationResult,
    ad_maxent_closed,
    ad_nonmax_closed,
    ad_single_closed,
    dephasing_closed,
    depolarizing_maxent_closed,
    depolarizing_nonmax_closed,
    depolarizing_single_closed,
    discrim_fixed_entangled,
    discrim_fixed_single,
    erasure_closed,
    gen_dephasing_closed,
    gen_dephasing_optimal_probe,
)
from .linalg import from_pairs
from .optimize import OptimizerOptions, optimize_entangled, optimize_single
from .probes import (
    basis_probe,
    bloch_qubit,
    max_entangled,
    nonmax_qubit,
    product_probe,
    schmidt_pair,
    uniform_superposition,
    zeta_probe,
)
from .verify import render_table, run_acceptance

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CPTP = 4

_FAMILIES = (
    "depolarizing",
    "dephasing",
    "gen-dephasing",
    "amplitude-damping",
    "erasure",
    "mixed-unitary-d3",
    "mixed-unitary-d6",
)


class UsageError(ValueError):
    """Invalid parameters or malformed input files (exit code 2)."""


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# channel construction from CLI flags
# ---------------------------------------------------------------------------


def _require(args, names: list[str], family: str):
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        flags = ", ".join(f"--{n}" for n in missing)
        raise UsageError(f"family {family!r} requires {flags}")


def _parse_weights(text: str) -> tuple[float, float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise UsageError(f"--weights expects three comma-separated values, got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def _unitary_from_args(args) -> np.ndarray:
    if args.phases is not None and args.unitary_json is not None:
        raise UsageError("give either --phases or --unitary-json, not both")
    if args.phases is not None:
        phases = [float(p) for p in args.phases.split(",") if p.strip()]
        if len(phases) < 2:
            raise UsageError("--phases needs at least two comma-separated angles")
        return np.diag(np.exp(1j * np.array(phases)))
    if args.unitary_json is not None:
        try:
            with open(args.unitary_json, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read unitary file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"unitary file is not valid JSON: {exc}") from exc
        try:
            return from_pairs(data)
        except ValueError as exc:
            raise UsageError(f"unitary file: {exc}") from exc
    raise UsageError("family 'gen-dephasing' requires --phases or --unitary-json")


def build_channel_pair(family: str, args) -> tuple[Channel, Channel, dict]:
    """Construct the two channels named by the eval/sweep flags."""
    if family == "depolarizing":
        _require(args, ["q1", "q2"], family)
        d = args.d or 2
        return (
            make_depolarizing(d, args.q1),
            make_depolarizing(d, args.q2),
            {"d": d, "q1": args.q1, "q2": args.q2},
        )
    if family == "dephasing":
        _require(args, ["r1", "r2"], family)
        d = args.d or 2
        return (
            make_dephasing(d, args.r1),
            make_dephasing(d, args.r2),
            {"d": d, "r1": args.r1, "r2": args.r2},
        )
    if family == "gen-dephasing":
        _require(args, ["r1", "r2"], family)
        u = _unitary_from_args(args)
        return (
            make_generalized_dephasing(u, args.r1),
            make_generalized_dephasing(u, args.r2),
            {"d": u.shape[0], "r1": args.r1, "r2": args.r2, "_unitary": u},
        )
    if family == "amplitude-damping":
        _require(args, ["mu1", "mu2"], family)
        return (
            make_amplitude_damping(args.mu1),
            make_amplitude_damping(args.mu2),
            {"mu1": args.mu1, "mu2": args.mu2},
        )
    if family == "erasure":
        _require(args, ["eps1", "eps2"], family)
        d = args.d or 2
        return (
            make_erasure(d, args.eps1),
            make_erasure(d, args.eps2),
            {"d": d, "eps1": args.eps1, "eps2": args.eps2},
        )
    if family in ("mixed-unitary-d3", "mixed-unitary-d6"):
        weights = _parse_weights(args.weights) if args.weights else (1 / 3, 1 / 3, 1 / 3)
        maker = mixed_unitary_pair_d3 if family.endswith("d3") else mixed_unitary_pair_d6
        ch1, ch2 = maker(weights)
        return ch1, ch2, {"d": ch1.dim_in, "weights": list(weights)}
    raise UsageError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# probe-class grammar
# ---------------------------------------------------------------------------


def _parse_kv(text: str, what: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise UsageError(f"malformed {what} spec near {piece!r}")
        key, value = piece.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _parse_zeta(body: str) -> tuple[complex, complex]:
    # format: c1=<re>,<im>,c2=<re>,<im>
    marker = ",c2="
    if not body.startswith("c1=") or marker not in body:
        raise UsageError("zeta probe spec must look like zeta:c1=<re>,<im>,c2=<re>,<im>")
    left, right = body.split(marker, 1)
    try:
        re1, im1 = (float(x) for x in left[len("c1="):].split(","))
        re2, im2 = (float(x) for x in right.split(","))
    except ValueError as exc:
        raise UsageError(f"zeta probe spec has non-numeric components: {exc}") from exc
    return complex(re1, im1), complex(re2, im2)


def _fixed_single_probe(body: str, dim: int):
    if body == "uniform":
        return uniform_superposition(dim)
    if body.startswith("|") and body.endswith(">"):
        try:
            index = int(body[1:-1])
        except ValueError as exc:
            raise UsageError(f"bad basis probe spec {body!r}") from exc
        return basis_probe(dim, index)
    if body.startswith("theta="):
        kv = _parse_kv(body, "single probe")
        theta = float(kv.get("theta", "0"))
        delta = float(kv.get("delta", "0"))
        if dim != 2:
            raise UsageError("theta/delta probes are qubit-only")
        return bloch_qubit(theta, delta)
    raise UsageError(
        f"bad single probe spec {body!r}; use single:uniform, single:|k>, "
        f"or single:theta=<t>,delta=<d>"
    )


def evaluate_probe_class(
    family: str,
    params: dict,
    ch1: Channel,
    ch2: Channel,
    probe_spec: str,
    p1: float,
    opts: OptimizerOptions,
) -> DiscriminationResult:
    """Dispatch a probe-class spec onto closed forms, fixed probes, or optimizers."""
    spec = probe_spec.strip()
    head, _, body = spec.partition(":")

    if head in ("single", "product") and not body:
        result = _closed_single(family, params)
        if result is None:
            raise UsageError(
                f"family {family!r} has no single-probe closed form; use "
                f"single:|k>, single:uniform, or optimize-single"
            )
        if p1 != 0.5:
            raise UsageError("closed forms assume equal priors; drop --p1 or use a fixed probe")
        if head == "product":
            result.probe_class = "product"
        return result

    if head == "maxent" and not body:
        if p1 == 0.5:
            result = _closed_maxent(family, params)
            if result is not None:
                return result
        fixed = discrim_fixed_entangled(ch1, ch2, max_entangled(ch1.dim_in), p1)
        fixed.probe_class = "max_entangled"
        return fixed

    if head == "nonmax":
        kv = _parse_kv(body, "nonmax probe")
        if "g" not in kv:
            raise UsageError("nonmax probe spec must give g, e.g. nonmax:g=0.3")
        g = float(kv["g"])
        z = float(kv.get("z", "0"))
        if family == "depolarizing" and params.get("d", 2) == 2 and p1 == 0.5:
            value = depolarizing_nonmax_closed(g, params["q1"], params["q2"])
            probe = nonmax_qubit(g, z)
            return DiscriminationResult(
                value, probe_class="nonmax", probe=probe.to_dict(), method="closed_form"
            )
        if ch1.dim_in != 2:
            raise UsageError("nonmax:g probes are qubit probes; channel input must be 2")
        fixed = discrim_fixed_entangled(ch1, ch2, nonmax_qubit(g, z), p1)
        fixed.probe_class = "nonmax"
        return fixed

    if head == "schmidt":
        kv = _parse_kv(body, "schmidt probe")
        if "p" not in kv:
            raise UsageError("schmidt probe spec must give p, e.g. schmidt:p=0.1")
        p = float(kv["p"])
        if family == "amplitude-damping" and p1 == 0.5:
            value = ad_nonmax_closed(p, params["mu1"], params["mu2"])
            return DiscriminationResult(
                value,
                probe_class="schmidt",
                probe=schmidt_pair(p).to_dict(),
                method="closed_form",
            )
        if ch1.dim_in != 2:
            raise UsageError("schmidt:p probes are qubit probes; channel input must be 2")
        fixed = discrim_fixed_entangled(ch1, ch2, schmidt_pair(p), p1)
        fixed.probe_class = "schmidt"
        return fixed

    if head == "zeta":
        c1, c2 = _parse_zeta(body)
        if ch1.dim_in != 3:
            raise UsageError("zeta probes live on qutrits; channel input must be 3")
        fixed = discrim_fixed_entangled(ch1, ch2, zeta_probe(c1, c2), p1)
        fixed.probe_class = "zeta"
        return fixed

    if head == "single" and body:
        probe = _fixed_single_probe(body, ch1.dim_in)
        return discrim_fixed_single(ch1, ch2, probe, p1)

    if head == "product" and body:
        probe = _fixed_single_probe(body, ch1.dim_in)
        fixed = discrim_fixed_entangled(
            ch1, ch2, product_probe(probe, basis_probe(2, 0)), p1
        )
        fixed.probe_class = "product"
        return fixed

    if spec == "optimize-single":
        if p1 != 0.5:
            raise UsageError("the optimizers assume equal priors")
        return optimize_single(ch1, ch2, opts)
    if spec == "optimize-ent":
        if p1 != 0.5:
            raise UsageError("the optimizers assume equal priors")
        return optimize_entangled(ch1, ch2, opts)

    raise UsageError(
        f"unknown probe class {probe_spec!r}; expected single, product, maxent, "
        f"nonmax:g=<x>, schmidt:p=<x>, zeta:c1=<re>,<im>,c2=<re>,<im>, "
        f"single:|k>, single:uniform, optimize-single, or optimize-ent"
    )


def _closed_single(family: str, params: dict) -> DiscriminationResult | None:
    if family == "depolarizing":
        value = depolarizing_single_closed(params["d"], params["q1"], params["q2"])
        probe = basis_probe(params["d"], 0)
    elif family == "dephasing":
        value = dephasing_closed(params["r1"], params["r2"])
        probe = uniform_superposition(params["d"])
    elif family == "gen-dephasing":
        u = params["_unitary"]
        value = gen_dephasing_closed(u, params["r1"], params["r2"])
        probe = gen_dephasing_optimal_probe(u)
    elif family == "amplitude-damping":
        value, theta = ad_single_closed(params["mu1"], params["mu2"])
        probe = bloch_qubit(theta, 0.0)
    elif family == "erasure":
        value = erasure_closed(params["eps1"], params["eps2"])
        probe = basis_probe(params["d"], 0)
    else:
        return None
    return DiscriminationResult(
        value, probe_class="single", probe=probe.to_dict(), method="closed_form"
    )


def _closed_maxent(family: str, params: dict) -> DiscriminationResult | None:
    if family == "depolarizing":
        value = depolarizing_maxent_closed(params["d"], params["q1"], params["q2"])
        d = params["d"]
    elif family == "amplitude-damping":
        value = ad_maxent_closed(params["mu1"], params["mu2"])
        d = 2
    elif family == "erasure":
        value = erasure_closed(params["eps1"], params["eps2"])
        d = params["d"]
    else:
        return None
    return DiscriminationResult(
        value,
        probe_class="max_entangled",
        probe=max_entangled(d).to_dict(),
        method="closed_form",
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _result_payload(family: str, params: dict, p1: float, result: DiscriminationResult) -> dict:
    shown = {k: v for k, v in params.items() if not k.startswith("_")}
    return {
        "family": family,
        "params": shown,
        "p1": p1,
        "probe_class": result.probe_class,
        "method": result.method,
        "probability": result.probability,
        "probe": result.probe,
        "optimizer_meta": result.optimizer_meta,
    }


def _emit(text: str, out_path: str | None) -> int:
    print(text)
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {out_path!r}: {exc}")
    return EXIT_OK


def cmd_eval(args) -> int:
    opts = _optimizer_options(args)
    try:
        ch1, ch2, params = build_channel_pair(args.family, args)
        result = evaluate_probe_class(
            args.family, params, ch1, ch2, args.probe, args.p1, opts
        )
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except CPTPError as exc:
        return _fail(EXIT_CPTP, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    payload = _result_payload(args.family, params, args.p1, result)
    return _emit(json.dumps(payload, indent=2), args.out)


def _parse_param_spec(text: str) -> tuple[str, list[float]]:
    if "=" not in text:
        raise UsageError(f"--param expects name=value or name=start:stop:step, got {text!r}")
    name, spec = text.split("=", 1)
    name = name.strip()
    if ":" in spec:
        pieces = spec.split(":")
        if len(pieces) != 3:
            raise UsageError(f"range spec must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in pieces)
        if step <= 0:
            raise UsageError(f"range step must be positive, got {step!r}")
        values = []
        v = start
        while v <= stop + 1e-12 * max(1.0, abs(stop)):
            values.append(round(v, 12))
            v += step
        if not values:
            raise UsageError(f"range {spec!r} produced no values")
        return name, values
    return name, [float(spec)]


_SWEEP_CLASSES = ("maxent-closed", "nonmax-closed", "optimize-ent", "optimize-single", "single-closed")


def _sweep_value(family, fixed, probe_class, args) -> tuple[float, dict]:
    detail: dict = {}
    if probe_class == "single-closed":
        if family == "depolarizing":
            value = depolarizing_single_closed(int(fixed["d"]), fixed["q1"], fixed["q2"])
        elif family == "dephasing":
            value = dephasing_closed(fixed["r1"], fixed["r2"])
        elif family == "gen-dephasing":
            value = gen_dephasing_closed(fixed["_unitary"], fixed["r1"], fixed["r2"])
        elif family == "amplitude-damping":
            value, theta = ad_single_closed(fixed["mu1"], fixed["mu2"])
            detail["theta_opt"] = theta
        elif family == "erasure":
            value = erasure_closed(fixed["eps1"], fixed["eps2"])
        else:
            raise UsageError(f"single-closed is not available for family {family!r}")
    elif probe_class == "maxent-closed":
        if family == "depolarizing":
            value = depolarizing_maxent_closed(int(fixed["d"]), fixed["q1"], fixed["q2"])
        elif family == "dephasing":
            value = dephasing_closed(fixed["r1"], fixed["r2"])
        elif family == "gen-dephasing":
            u = fixed["_unitary"]
            overlap = abs(np.trace(u)) ** 2 / u.shape[0] ** 2
            value = 0.5 * (
                1.0 + abs(fixed["r1"] - fixed["r2"]) * np.sqrt(max(0.0, 1.0 - overlap))
            )
        elif family == "amplitude-damping":
            value = ad_maxent_closed(fixed["mu1"], fixed["mu2"])
        elif family == "erasure":
            value = erasure_closed(fixed["eps1"], fixed["eps2"])
        else:
            raise UsageError(f"maxent-closed is not available for family {family!r}")
    elif probe_class == "nonmax-closed":
        if family == "depolarizing":
            if int(fixed.get("d", 2)) != 2:
                raise UsageError("nonmax-closed for depolarizing needs d=2")
            if "g" not in fixed:
                raise UsageError("nonmax-closed for depolarizing needs a g parameter")
            value = depolarizing_nonmax_closed(fixed["g"], fixed["q1"], fixed["q2"])
            detail["g"] = fixed["g"]
        elif family == "amplitude-damping":
            if "p" not in fixed:
                raise UsageError("nonmax-closed for amplitude-damping needs a p parameter")
            value = ad_nonmax_closed(fixed["p"], fixed["mu1"], fixed["mu2"])
            detail["p"] = fixed["p"]
        else:
            raise UsageError(f"nonmax-closed is not available for family {family!r}")
    elif probe_class in ("optimize-single", "optimize-ent"):
        ns = argparse.Namespace(**{k: fixed.get(k) for k in
                                   ("d", "q1", "q2", "r1", "r2", "mu1", "mu2",
                                    "eps1", "eps2", "weights")})
        ns.phases = getattr(args, "phases", None)
        ns.unitary_json = getattr(args, "unitary_json", None)
        if "d" in fixed:
            ns.d = int(fixed["d"])
        ch1, ch2, _ = build_channel_pair(family, ns)
        opts = _optimizer_options(args)
        run = optimize_single if probe_class == "optimize-single" else optimize_entangled
        result = run(ch1, ch2, opts)
        value = result.probability
        detail["optimizer_meta"] = {
            k: result.optimizer_meta[k] for k in ("restarts", "iterations", "final_step")
        }
    else:
        raise UsageError(
            f"unknown sweep probe class {probe_class!r}; expected one of {_SWEEP_CLASSES}"
        )
    return float(value), detail


def cmd_sweep(args) -> int:
    try:
        params: dict[str, list[float]] = {}
        for spec in args.param or []:
            name, values = _parse_param_spec(spec)
            if name in params:
                raise UsageError(f"parameter {name!r} given twice")
            params[name] = values
        if not params:
            raise UsageError("sweep needs at least one --param")
        ranged = [n for n, vs in params.items() if len(vs) > 1]
        if len(ranged) > 2:
            raise UsageError(f"at most two parameters may be ranged, got {ranged}")
        probe_classes = sorted({p.strip() for p in args.probes.split(",") if p.strip()})
        if not probe_classes:
            raise UsageError("--probes needs at least one probe class")
        for pc in probe_classes:
            if pc not in _SWEEP_CLASSES:
                raise UsageError(
                    f"unknown sweep probe class {pc!r}; expected one of {_SWEEP_CLASSES}"
                )

        axis = ranged if ranged else list(params)[:1]
        rows = []
        grids = [sorted(params[name]) for name in axis]
        mesh = [(v,) for v in grids[0]] if len(grids) == 1 else [
            (a, b) for a in grids[0] for b in grids[1]
        ]
        unitary = _unitary_from_args(args) if args.family == "gen-dephasing" else None
        for point in mesh:
            fixed = {n: vs[0] for n, vs in params.items()}
            for name, value in zip(axis, point):
                fixed[name] = value
            if args.family in ("depolarizing", "dephasing", "erasure"):
                fixed.setdefault("d", 2)
            if "d" in fixed:
                fixed["d"] = int(fixed["d"])
            if unitary is not None:
                fixed["_unitary"] = unitary
            for pc in probe_classes:
                value, detail = _sweep_value(args.family, fixed, pc, args)
                shown = {k: v for k, v in fixed.items() if not k.startswith("_")}
                shown.update(detail)
                rows.append(
                    (
                        args.family,
                        repr(float(point[0])),
                        repr(float(point[1])) if len(point) > 1 else "",
                        pc,
                        repr(value),
                        json.dumps(shown, sort_keys=True),
                    )
                )
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    except (CPTPError, ValueError) as exc:
        code = EXIT_CPTP if isinstance(exc, CPTPError) else EXIT_USAGE
        return _fail(code, str(exc))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["family", "param1", "param2", "probe_class", "probability", "probe_params"])
    writer.writerows(rows)
    text = buffer.getvalue()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {args.out!r}: {exc}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_custom(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.file!r}: {exc}")
    except json.JSONDecodeError as exc:
        return _fail(EXIT_USAGE, f"{args.file!r} is not valid JSON: {exc}")
    if not isinstance(data, dict) or "channel1" not in data or "channel2" not in data:
        return _fail(
            EXIT_USAGE, 'custom file must be an object with "channel1" and "channel2"'
        )
    try:
        ch1 = channel_from_dict(data["channel1"])
        ch2 = channel_from_dict(data["channel2"])
    except CPTPError as exc:
        return _fail(
            EXIT_CPTP,
            f"channel failed CPTP validation: sum K†K residual = "
            f"{exc.tp_residual:.3e}, min Choi eigenvalue = {exc.choi_min_eigenvalue:.3e}",
        )
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))

    opts = _optimizer_options(args)
    try:
        result = evaluate_probe_class(
            "custom", {}, ch1, ch2, args.probe, args.p1, opts
        )
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    payload = _result_payload("custom", {"file": args.file}, args.p1, result)
    return _emit(json.dumps(payload, indent=2), args.out)


def cmd_verify(args) -> int:
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",") if x.strip()}
        except ValueError:
            return _fail(EXIT_USAGE, f"--only expects comma-separated integers, got {args.only!r}")
    reports = run_acceptance(
        tolerance_scale=args.tolerance_scale, seed=args.seed or 0, only=only
    )
    as_json = json.dumps([r.to_dict() for r in reports], indent=2)
    if args.json:
        print(as_json)
    else:
        print(render_table(reports))
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(as_json + "\n")
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {args.out!r}: {exc}")
    return EXIT_OK if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


def _optimizer_options(args) -> OptimizerOptions:
    kwargs = {}
    if getattr(args, "restarts", None) is not None:
        kwargs["restarts"] = args.restarts
    if getattr(args, "step_tolerance", None) is not None:
        kwargs["step_tolerance"] = args.step_tolerance
    if getattr(args, "max_iterations", None) is not None:
        kwargs["max_iterations"] = args.max_iterations
    kwargs["seed"] = args.seed or 0
    return OptimizerOptions(**kwargs)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, default=None, help="seed for all randomized steps")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--out", default=None, help="write the primary output to this path")


def _add_family_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--d", type=int, default=None, help="local dimension (default 2)")
    parser.add_argument("--q1", type=float, default=None)
    parser.add_argument("--q2", type=float, default=None)
    parser.add_argument("--r1", type=float, default=None)
    parser.add_argument("--r2", type=float, default=None)
    parser.add_argument("--mu1", type=float, default=None)
    parser.add_argument("--mu2", type=float, default=None)
    parser.add_argument("--eps1", type=float, default=None)
    parser.add_argument("--eps2", type=float, default=None)
    parser.add_argument("--weights", default=None, help="w1,w2,w3 for mixed-unitary pairs")
    parser.add_argument("--phases", default=None, help="diagonal unitary phases a,b,...")
    parser.add_argument("--unitary-json", default=None, help="path to a [re,im]-pair matrix")


def _add_optimizer_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--step-tolerance", type=float, default=None)
    parser.add_argument("--max-iterations", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chandiscrim",
        description="Single-shot distinguishability of noisy quantum channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one channel pair under one probe class")
    p_eval.add_argument("family", choices=_FAMILIES)
    _add_family_flags(p_eval)
    p_eval.add_argument("--probe", required=True, help="probe class spec")
    p_eval.add_argument("--p1", type=float, default=0.5, help="prior of the first channel")
    _add_optimizer_flags(p_eval)
    _add_common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="grid-sweep parameters to CSV")
    p_sweep.add_argument("family", choices=_FAMILIES)
    p_sweep.add_argument(
        "--param",
        action="append",
        help="name=value or name=start:stop:step (repeatable, at most two ranged)",
    )
    p_sweep.add_argument("--probes", required=True, help="comma-separated probe classes")
    p_sweep.add_argument("--phases", default=None, help="diagonal unitary phases a,b,...")
    p_sweep.add_argument("--unitary-json", default=None)
    _add_optimizer_flags(p_sweep)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_custom = sub.add_parser("custom", help="evaluate user-supplied Kraus channels")
    p_custom.add_argument("file", help="JSON file with channel1/channel2 Kraus data")
    p_custom.add_argument("--probe", required=True)
    p_custom.add_argument("--p1", type=float, default=0.5)
    _add_optimizer_flags(p_custom)
    _add_common(p_custom)
    p_custom.set_defaults(func=cmd_custom)

    p_verify = sub.add_parser("verify", help="run the full verification battery")
    p_verify.add_argument("--tolerance-scale", type=float, default=1.0)
    p_verify.add_argument("--only", default=None, help="comma-separated criterion numbers")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint():
    sys.exit(main())
