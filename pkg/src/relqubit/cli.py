"""Command-line front end: verification suites, packet transforms, BB84 runs.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 topological obstruction, 4 no shared PND.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .bb84 import (
    BB84Config,
    EncodingKind,
    EncodingScheme,
    Trajectory,
    config_from_dict,
    run_bb84,
)
from .errors import (
    NoSharedPND,
    RelQubitError,
    SingularAxis,
    TopologicalObstruction,
)
from .frames import (
    frame_equivariance_check,
    frame_normalization_residual,
    frame_reconstruction_residual,
    make_spin_frame,
)
from .littlegroup import wigner_matrix
from .observables import (
    QuantizationAxis,
    basis_change,
    bb84_change_matrix,
    phase_aligned_distance,
    pl_projection_matrix,
)
from .pnd import PNDKind, principal_null_directions
from .sampling import (
    random_momentum,
    random_sl2c,
    random_spacelike_orthogonal,
    random_spinor,
    random_valid_triple,
)
from .spinor import (
    NU_MINUS,
    NU_PLUS,
    boost_z,
    boost_z_rapidity,
    null_rotation,
    rotation_x,
    rotation_z,
    validate_sl2c,
)
from .wavepacket import (
    packet_from_json,
    packet_norm,
    packet_to_json,
    poincare_transform,
    product_form_residual,
)

MASS_GRID = (0.1, 1.0, 10.0)


def _tol(default: float) -> float:
    override = os.environ.get("RELQUBIT_TOL")
    return float(override) if override else default


def _sl2c_json(L) -> list:
    return [[[z.real, z.imag] for z in row] for row in np.asarray(L, dtype=complex)]


def _report_failure(suite, seed, index, residual, sample):
    print(
        json.dumps(
            {
                "suite": suite,
                "seed": seed,
                "index": index,
                "residual": residual,
                "sample": sample,
            }
        )
    )


def _suite_su2(n, seed):
    tol = _tol(1e-10)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        mass = MASS_GRID[i % len(MASS_GRID)]
        L, p, nu = random_valid_triple(rng, mass)
        u = wigner_matrix(L, p, nu).u
        res = max(
            float(np.abs(u.conj().T @ u - np.eye(2)).max()),
            abs(np.linalg.det(u) - 1.0),
        )
        worst = max(worst, res)
        if res > tol:
            _report_failure(
                "su2", seed, i, res,
                {"L": _sl2c_json(L), "p": list(p.vector), "mass": mass,
                 "nu": [nu[0].real, nu[0].imag, nu[1].real, nu[1].imag]},
            )
            return worst, tol, False
    return worst, tol, True


def _suite_cocycle(n, seed):
    tol = _tol(1e-9)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        mass = MASS_GRID[i % len(MASS_GRID)]
        L1, p, nu = random_valid_triple(rng, mass)
        L2, _, _ = random_valid_triple(rng, mass)
        from .littlegroup import cocycle_residual

        try:
            res = cocycle_residual(L1, L2, p, nu)
        except RelQubitError:
            continue  # a frame degenerated along the chain; not a valid draw
        worst = max(worst, res)
        if res > tol:
            _report_failure(
                "cocycle", seed, i, res,
                {"L1": _sl2c_json(L1), "L2": _sl2c_json(L2), "p": list(p.vector), "mass": mass},
            )
            return worst, tol, False
    return worst, tol, True


def _suite_equivariance(n, seed):
    tol = _tol(1e-10)
    rng = np.random.default_rng(seed)
    masses = (0.0, 0.1, 1.0, 10.0)
    worst = 0.0
    for i in range(n):
        mass = masses[i % len(masses)]
        L, p, nu = random_valid_triple(rng, mass)
        frame = make_spin_frame(nu, p)
        res = max(
            frame_normalization_residual(frame),
            frame_reconstruction_residual(frame) / max(1.0, p.energy),
            frame_equivariance_check(L, nu, p),
        )
        worst = max(worst, res)
        if res > tol:
            _report_failure(
                "equivariance", seed, i, res,
                {"L": _sl2c_json(L), "p": list(p.vector), "mass": mass},
            )
            return worst, tol, False
    return worst, tol, True


def _suite_pnd(n, seed):
    tol = _tol(1e-10)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        kind_draw = i % 4
        if kind_draw == 0:
            L = boost_z(float(rng.uniform(-0.95, 0.95)))
        elif kind_draw == 1:
            L = null_rotation(complex(rng.normal(), rng.normal()))
        else:
            L = random_sl2c(rng)
        result = principal_null_directions(L)
        for nu, lam in result.directions:
            res = float(np.linalg.norm(L @ nu - lam * nu))
            worst = max(worst, res)
            if res > tol:
                _report_failure("pnd", seed, i, res, {"L": _sl2c_json(L)})
                return worst, tol, False
        # classification vs a brute-force eigensolver
        eigs = np.linalg.eigvals(np.asarray(L, dtype=complex))
        gap = abs(eigs[0] - eigs[1])
        if result.kind is PNDKind.TWO_DISTINCT and gap < 1e-8:
            _report_failure("pnd", seed, i, gap, {"L": _sl2c_json(L), "why": "claimed two, gap tiny"})
            return worst, tol, False
        if result.kind is not PNDKind.TWO_DISTINCT and gap > 1e-4:
            _report_failure("pnd", seed, i, gap, {"L": _sl2c_json(L), "why": "claimed degenerate, gap large"})
            return worst, tol, False

    # PND diagonality and momentum-independence of the phase
    for j in range(max(1, n // 200)):
        L = random_sl2c(rng)
        result = principal_null_directions(L)
        for nu, _ in result.directions:
            phases = []
            offdiag = 0.0
            for _ in range(100):
                mass = MASS_GRID[j % len(MASS_GRID)]
                p = random_momentum(rng, mass)
                u = wigner_matrix(L, p, nu).u
                offdiag = max(offdiag, float(abs(u[0, 1])), float(abs(u[1, 0])))
                phases.append(u[0, 0])
            phases = np.array(phases)
            rel = np.angle(phases * np.conj(phases[0]))
            var = float(np.var(rel))
            worst = max(worst, offdiag)
            if offdiag > tol or var > _tol(1e-20):
                _report_failure(
                    "pnd", seed, -j, max(offdiag, var),
                    {"L": _sl2c_json(L), "why": "off-diagonal or phase variance"},
                )
                return worst, tol, False
    return worst, tol, True


def _suite_gauge(n, seed):
    tol = _tol(1e-10)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        mass = MASS_GRID[i % len(MASS_GRID)]
        p = random_momentum(rng, mass)
        nu = random_spinor(rng)
        frame = make_spin_frame(nu, p)
        t = random_spacelike_orthogonal(rng, p)
        theta = float(rng.uniform(-10.0, 10.0))
        axis_a = QuantizationAxis.custom(lambda q, t=t: t, nu)
        axis_b = QuantizationAxis.custom(lambda q, t=t, th=theta: t + th * q.vector, nu)
        try:
            proj_a = pl_projection_matrix(axis_a, frame)
            proj_b = pl_projection_matrix(axis_b, frame)
        except SingularAxis:
            continue
        res = float(np.abs(proj_a - proj_b).max())
        worst = max(worst, res)
        if res > tol:
            _report_failure(
                "gauge", seed, i, res,
                {"p": list(p.vector), "mass": mass, "t": list(t), "theta": theta},
            )
            return worst, tol, False
    return worst, tol, True


def _suite_bb84matrix(n, seed):
    tol = _tol(1e-10)
    tol_inv = _tol(1e-12)
    rng = np.random.default_rng(seed)
    worst = 0.0
    axis_plus = QuantizationAxis.null_pnd(NU_PLUS)
    for i in range(n):
        mass = MASS_GRID[i % len(MASS_GRID)]
        p = random_momentum(rng, mass)
        try:
            w = basis_change(make_spin_frame(NU_MINUS, p), axis_plus).w
        except SingularAxis:
            continue
        res = phase_aligned_distance(w, bb84_change_matrix(p))
        beta = float(rng.uniform(-0.99, 0.99))
        res_inv = float(
            np.abs(
                bb84_change_matrix(p.boosted(boost_z(beta))) - bb84_change_matrix(p)
            ).max()
        )
        worst = max(worst, res, res_inv)
        if res > tol or res_inv > tol_inv:
            _report_failure(
                "bb84matrix", seed, i, max(res, res_inv),
                {"p": list(p.vector), "mass": mass, "beta": beta},
            )
            return worst, tol, False
    return worst, tol, True


SUITES = {
    "su2": _suite_su2,
    "cocycle": _suite_cocycle,
    "equivariance": _suite_equivariance,
    "pnd": _suite_pnd,
    "gauge": _suite_gauge,
    "bb84matrix": _suite_bb84matrix,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        worst, tol, passed = SUITES[name](args.n, args.seed)
        status = "PASS" if passed else "FAIL"
        print(
            f"{name}: n={args.n} seed={args.seed} max_residual={worst:.3e} tol={tol:.1e} {status}"
        )
        ok = ok and passed
    return 0 if ok else 1


def parse_transform_spec(spec: str) -> np.ndarray:
    """Compose SL(2,C) factors from 'op=value' terms, e.g.

    'boost_z=0.6,rotation_z=0.3,null_rotation=1+2j' (applied right to left).
    """
    L = np.eye(2, dtype=complex)
    if not spec:
        return L
    for term in spec.split(","):
        name, _, value = term.partition("=")
        name = name.strip()
        if name == "boost_z":
            factor = boost_z(float(value))
        elif name == "rapidity":
            factor = boost_z_rapidity(float(value))
        elif name == "rotation_z":
            factor = rotation_z(float(value))
        elif name == "rotation_x":
            factor = rotation_x(float(value))
        elif name == "null_rotation":
            factor = null_rotation(complex(value))
        else:
            raise RelQubitError(f"unknown transform factor {name!r}")
        L = L @ factor
    return validate_sl2c(L)


def cmd_transform(args) -> int:
    try:
        with open(args.packet_file, encoding="utf-8") as fh:
            packet = packet_from_json(fh.read())
        L = parse_transform_spec(args.transform)
        y = np.asarray([float(x) for x in args.y.split(",")], dtype=float)
        if y.size != 4:
            raise RelQubitError("y must have four components")
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    norm_in = packet_norm(packet)
    try:
        out = poincare_transform(packet, y, L)
    except TopologicalObstruction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    norm_out = packet_norm(out)
    residual = product_form_residual(out)
    if residual < 1e-12:
        residual = 0.0  # below double-precision resolution of the purity
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(packet_to_json(out))
    print(f"norm_before={norm_in!r} norm_after={norm_out!r}")
    print(f"product_form_residual={residual:.1e}")
    return 0


def _write_report(report, transcript, out_prefix: str):
    with open(out_prefix + ".report.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
    with open(out_prefix + ".transcript.jsonl", "w", encoding="utf-8") as fh:
        for record in transcript:
            fh.write(json.dumps(record) + "\n")
    with open(out_prefix + ".report.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["rounds", "sifted", "errors", "qber", "expected_qber",
             "encoding", "correction_applied", "seed"]
        )
        writer.writerow(
            [report.rounds, report.sifted, report.errors, repr(report.qber),
             repr(report.expected_qber), report.encoding,
             str(report.correction_applied).lower(), report.seed]
        )


def _load_config(path: str) -> BB84Config:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def cmd_bb84(args) -> int:
    try:
        config = _load_config(args.config_file)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report, transcript = run_bb84(config)
    except NoSharedPND as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    _write_report(report, transcript, args.out_prefix)
    print(
        f"rounds={report.rounds} sifted={report.sifted} errors={report.errors} "
        f"qber={report.qber!r} expected={report.expected_qber!r}"
    )
    return 0


def cmd_sweep(args) -> int:
    try:
        config = _load_config(args.config_file)
        with open(args.grid_file, encoding="utf-8") as fh:
            grid = json.load(fh)
        rapidities = [float(x) for x in grid.get("rapidities", [0.0])]
        spreads = [float(x) for x in grid.get("angular_spreads", [config.packet.angular_spread])]
        encodings = [EncodingKind(e) for e in grid.get("encodings", [config.encoding.kind.value])]
        corrections = [bool(c) for c in grid.get("corrections", [config.apply_correction])]
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    from dataclasses import replace

    rows = []
    try:
        for xi in rapidities:
            # positive rapidity = approach along the packet axis (blueshift),
            # keeping helicity frames well away from their singular ray
            trajectory = Trajectory.z_boost_profile([-float(np.tanh(xi))])
            for spread in spreads:
                for enc in encodings:
                    for corr in corrections:
                        cfg = replace(
                            config,
                            trajectory=trajectory,
                            packet=replace(config.packet, angular_spread=spread),
                            encoding=EncodingScheme(kind=enc, nu=config.encoding.nu),
                            apply_correction=corr,
                        )
                        report, _ = run_bb84(cfg)
                        rows.append(
                            [repr(xi), repr(spread), enc.value,
                             str(corr).lower(), repr(report.expected_qber),
                             repr(report.qber), report.rounds, report.seed]
                        )
    except NoSharedPND as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["rapidity", "angular_spread", "encoding", "correction",
             "expected_qber", "sampled_qber", "n_rounds", "seed"]
        )
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relqubit",
        description="Relativistic qubit toolkit: verification suites, packet transforms, BB84.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a randomized invariant suite")
    p_verify.add_argument(
        "--suite", choices=["all", *SUITES], default="all",
        help="which property suite to run",
    )
    p_verify.add_argument("--n", type=int, default=1000, help="sample count")
    p_verify.add_argument("--seed", type=int, required=True, help="RNG seed")
    p_verify.set_defaults(func=cmd_verify)

    p_tr = sub.add_parser("transform", help="apply a Poincare transformation to a packet file")
    p_tr.add_argument("packet_file")
    p_tr.add_argument("--transform", default="", help="e.g. boost_z=0.6,null_rotation=1+2j")
    p_tr.add_argument("--y", default="0,0,0,0", help="translation four-vector t,x,y,z")
    p_tr.add_argument("--out", required=True)
    p_tr.set_defaults(func=cmd_transform)

    p_bb = sub.add_parser("bb84", help="run the BB84 simulation from a JSON config")
    p_bb.add_argument("config_file")
    p_bb.add_argument("--out-prefix", required=True)
    p_bb.set_defaults(func=cmd_bb84)

    p_sw = sub.add_parser("sweep", help="parameter sweep writing one CSV row per grid point")
    p_sw.add_argument("config_file")
    p_sw.add_argument("grid_file")
    p_sw.add_argument("--out", required=True)
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
