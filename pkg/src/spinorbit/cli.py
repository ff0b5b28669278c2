"""Command-line front end emitting fringe/field data as CSV and Bell results as JSON.

Subcommands:
  field   polarization direction field of a q-plate output, CSV x,y,ex,ey
  fringe  coincidence vs analyzer rotation difference, CSV delta,coincidence
  chsh    exact CHSH parameter S (optionally optimized settings), JSON
  sample  Monte Carlo CHSH estimate with counting statistics, JSON

All outputs are deterministic for fixed flags and seed: CSV uses 17
significant digits and LF line endings, JSON uses sorted keys. Charges are
given as `--q` rational tokens like 1, -2, 1/2 or -3/2. The optional
`--plot` flag on `field` and `fringe` renders the same data to an image
file alongside the delimited output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bell, source, stochastic, vectorfield
from .bell import ChshSettings
from .devices import Analyzer
from .errors import SimulationError

_FMT = "{:.17g}"


def _parse_q(token: str) -> int:
    """Parse a charge q given as an integer or half-integer token into 2q."""
    token = token.strip()
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            if int(den) != 2:
                raise ValueError
            twoQ = int(num)
        else:
            twoQ = 2 * int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid charge {token!r}: expected an integer or a half like 3/2"
        ) from None
    if twoQ == 0:
        raise argparse.ArgumentTypeError("charge q must be nonzero")
    return twoQ


def _parse_settings(token: str) -> str | tuple[float, ...]:
    token = token.strip()
    if token == "auto":
        return "auto"
    parts = token.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("settings must be 'auto' or four comma-separated radians")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid settings token {token!r}") from None


def _add_common(parser: argparse.ArgumentParser, spectrum: bool = True) -> None:
    parser.add_argument("--q", type=_parse_q, required=True, dest="twoQ",
                        help="q-plate charge: integer or half-integer token "
                        "(e.g. 1, 3/2; write negatives as --q=-3/2)")
    parser.add_argument("--theta", type=float, default=0.0,
                        help="incident linear polarization angle (rad), default 0")
    if spectrum:
        parser.add_argument("--spectrum", choices=["flat", "gaussian"], default="flat",
                            help="pair-OAM spectrum shape, default flat")
        parser.add_argument("--mmax", type=int, default=8,
                            help="OAM truncation |m| <= mmax, default 8")
        parser.add_argument("--sigma", type=float, default=2.0,
                            help="gaussian spectrum width, default 2")
    parser.add_argument("--out", default=None,
                        help="output file (default: standard output)")


def _build_joint(args):
    if abs(args.twoQ) > args.mmax:
        raise ValueError(f"charge 2q={args.twoQ} exceeds --mmax {args.mmax}")
    spectrum = source.make_spectrum(args.spectrum, args.mmax, args.sigma)
    return source.hyper_state(spectrum), spectrum


def _spectrum_info(args) -> dict:
    info = {"shape": args.spectrum, "m_max": args.mmax}
    info["sigma"] = args.sigma if args.spectrum == "gaussian" else None
    return info


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n", encoding="utf-8") as handle:
            handle.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_FMT.format(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _fringe_scan(joint, twoQ: int, theta: float, steps: int):
    deltas = [2.0 * math.pi * i / steps for i in range(steps)]
    rates = [
        bell.coincidence(joint, Analyzer(twoQ, theta, d), Analyzer(-twoQ, -theta, 0.0))
        for d in deltas
    ]
    return deltas, rates


def _cmd_field(args) -> int:
    if args.rings < 1 or args.points < 4:
        raise ValueError("need --rings >= 1 and --points >= 4")
    samples = vectorfield.sample_field(args.twoQ, args.theta, args.rings, args.points)
    text = _csv("x,y,ex,ey", ((s.x, s.y, s.ex, s.ey) for s in samples))
    _write_text(args.out, text)
    if args.plot:
        from . import plots

        plots.render_field(samples, args.plot, title=f"2q={args.twoQ}, theta={args.theta:g}")
    return 0


def _cmd_fringe(args) -> int:
    if args.steps < 8:
        raise ValueError("need --steps >= 8")
    joint, _ = _build_joint(args)
    deltas, rates = _fringe_scan(joint, args.twoQ, args.theta, args.steps)
    text = _csv("delta,coincidence", zip(deltas, rates))
    _write_text(args.out, text)
    if args.plot:
        from . import plots

        fit = bell.fringe_fit(list(zip(deltas, rates)))
        plots.render_fringe(deltas, rates, args.plot, fit,
                            title=f"coincidence fringe, 2q={args.twoQ}")
    return 0


def _fit_payload(joint, twoQ: int) -> dict:
    deltas, rates = _fringe_scan(joint, twoQ, 0.0, 128)
    fit = bell.fringe_fit(list(zip(deltas, rates)))
    return {"visibility": fit.visibility, "offset_delta0": fit.offset_delta0}


def _settings_payload(settings: ChshSettings) -> dict:
    return {
        "beta_t": settings.beta_t,
        "beta_r": settings.beta_r,
        "beta_t_prime": settings.beta_t_prime,
        "beta_r_prime": settings.beta_r_prime,
    }


def _cmd_chsh(args) -> int:
    joint, _ = _build_joint(args)
    if args.optimize:
        settings, s_value = bell.optimize_chsh(joint, args.twoQ, args.resolution)
    else:
        settings = bell.optimal_settings(args.twoQ)
        s_value = bell.chsh_S(joint, settings)
    payload = {
        "S": s_value,
        "settings": _settings_payload(settings),
        "spectrum": _spectrum_info(args),
    }
    payload.update(_fit_payload(joint, args.twoQ))
    _write_text(args.out, _json(payload))
    return 0


def _cmd_sample(args) -> int:
    if args.pairs < 4:
        raise ValueError("need --pairs >= 4")
    joint, _ = _build_joint(args)
    if args.settings == "auto":
        settings, s_value = bell.optimize_chsh(joint, args.twoQ, args.resolution)
    else:
        settings = ChshSettings(*args.settings, twoQ=args.twoQ)
        s_value = bell.chsh_S(joint, settings)
    s_hat, stderr = stochastic.estimate_S(joint, settings, args.pairs, args.seed)
    payload = {
        "S": s_value,
        "s_hat": s_hat,
        "stderr": stderr,
        "pairs": args.pairs,
        "seed": args.seed,
        "settings": _settings_payload(settings),
        "spectrum": _spectrum_info(args),
    }
    payload.update(_fit_payload(joint, args.twoQ))
    _write_text(args.out, _json(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorbit",
        description="Spin-orbit photon state simulator: vector beams, coincidence "
        "fringes, and CHSH Bell tests of the two-photon source.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="sample the q-plate polarization direction field")
    _add_common(p_field, spectrum=False)
    p_field.add_argument("--rings", type=int, default=8, help="radial grid rings, default 8")
    p_field.add_argument("--points", type=int, default=64,
                         help="samples per ring, default 64")
    p_field.add_argument("--plot", default=None, help="also render a quiver figure to this file")
    p_field.set_defaults(func=_cmd_field)

    p_fringe = sub.add_parser("fringe", help="scan the coincidence fringe vs rotation difference")
    _add_common(p_fringe)
    p_fringe.add_argument("--steps", type=int, default=360,
                          help="scan points over a 2*pi rotation range, default 360")
    p_fringe.add_argument("--plot", default=None, help="also render the fringe to this file")
    p_fringe.set_defaults(func=_cmd_fringe)

    p_chsh = sub.add_parser("chsh", help="exact CHSH parameter for the source state")
    _add_common(p_chsh)
    p_chsh.add_argument("--optimize", action="store_true",
                        help="search analyzer rotations for the maximal S")
    p_chsh.add_argument("--resolution", type=float, default=1e-3,
                        help="optimizer grid resolution in radians, default 1e-3")
    p_chsh.set_defaults(func=_cmd_chsh)

    p_sample = sub.add_parser("sample", help="Monte Carlo CHSH estimate from counted pairs")
    _add_common(p_sample)
    p_sample.add_argument("--pairs", type=int, default=10000,
                          help="photon pairs counted per setting pair, default 10000")
    p_sample.add_argument("--seed", type=int, default=0, help="RNG seed, default 0")
    p_sample.add_argument("--settings", type=_parse_settings, default="auto",
                          help="'auto' or four comma-separated rotations in radians")
    p_sample.add_argument("--resolution", type=float, default=1e-3,
                          help="optimizer grid resolution for auto settings, default 1e-3")
    p_sample.set_defaults(func=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
