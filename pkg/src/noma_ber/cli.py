"""Command-line entry point: ``noma-ber {sweep,point,verify}``.

SNR values are transmit SNR P_s/N0 in dB; N0 = P_s / 10**(snr_db/10).
Exit codes: 0 ok, 1 validation error, 2 runtime/numerical error,
3 verify-suite failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import analytic, verify
from .errors import ConfigError, DomainError, NomaBerError
from .model import allocate_power, effective_snrs, mean_effective_snrs
from .sim import AwgnFixedGain, NoiseModel, RayleighFlat, SimConfig, simulate_ber
from .sweep import SweepSpec, render_output, run_sweep, validate_spec, write_output

log = logging.getLogger("noma_ber")

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME, EXIT_VERIFY = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser, trials_default: int):
    p.add_argument("--alpha", type=float, default=0.2, help="NU power fraction, in (0, 0.5)")
    p.add_argument("--power", type=float, default=1.0, help="total transmit power P_s")
    p.add_argument("--channel", choices=("awgn", "rayleigh"), default="rayleigh")
    p.add_argument("--gain", type=float, default=1.0, help="fixed |h| (awgn)")
    p.add_argument("--mean-power-nu", type=float, default=1.0, help="E|h_NU|^2 (rayleigh)")
    p.add_argument("--mean-power-fu", type=float, default=1.0, help="E|h_FU|^2 (rayleigh)")
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noma-ber", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="analytic vs simulated BER over an SNR grid")
    _common(sw, 1_000_000)
    sw.add_argument("--snr-start", type=float, default=0.0)
    sw.add_argument("--snr-stop", type=float, default=30.0)
    sw.add_argument("--snr-step", type=float, default=5.0)
    sw.add_argument("--out", default=None, help="output file (stdout if omitted)")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")

    pt = sub.add_parser("point", help="effective SNRs and BER breakdown at one SNR")
    _common(pt, 1_000_000)
    pt.add_argument("--snr", type=float, default=10.0)

    vf = sub.add_parser("verify", help="run the oracle suite")
    vf.add_argument("--trials", type=int, default=1_000_000)
    vf.add_argument("--seed", type=int, default=1)
    vf.add_argument("--workers", type=int, default=1)
    return parser


def _spec_from_args(args) -> SweepSpec:
    return SweepSpec(
        alpha=args.alpha,
        total_power=args.power,
        snr_db_start=args.snr_start,
        snr_db_stop=args.snr_stop,
        snr_db_step=args.snr_step,
        channel=args.channel,
        fixed_gain=args.gain,
        mean_power_nu=args.mean_power_nu,
        mean_power_fu=args.mean_power_fu,
        trials=args.trials,
        seed=args.seed,
        output_path=args.out,
        format=args.format,
        workers=args.workers,
    )


def cmd_sweep(args) -> int:
    spec = validate_spec(_spec_from_args(args))
    rows = run_sweep(spec)
    if spec.output_path:
        write_output(rows, spec)
        log.info("wrote %d rows to %s", len(rows), spec.output_path)
    else:
        sys.stdout.write(render_output(rows, spec))
    return EXIT_OK


def cmd_point(args) -> int:
    spec = validate_spec(_spec_from_args(argparse.Namespace(
        **vars(args), snr_start=args.snr, snr_stop=args.snr, snr_step=1.0, out=None, format="csv",
    )))
    alloc = allocate_power(spec.alpha, spec.total_power)
    n0 = spec.total_power / 10 ** (args.snr / 10)
    print(f"alpha={alloc.alpha} eps1={alloc.eps1!r} eps2={alloc.eps2!r} N0={n0!r}")
    if spec.channel == "awgn":
        fu_snrs = nu_snrs = effective_snrs(alloc, spec.fixed_gain**2, n0)
        fu_ref = analytic.fu_ber_awgn(fu_snrs)
        nu_ref = analytic.nu_ber_awgn(nu_snrs)
        channel = fu_channel = AwgnFixedGain(spec.fixed_gain)
        print("effective SNRs (linear):")
    else:
        fu_snrs = mean_effective_snrs(alloc, spec.mean_power_fu, n0)
        nu_snrs = mean_effective_snrs(alloc, spec.mean_power_nu, n0)
        fu_ref = analytic.fu_ber_rayleigh(fu_snrs)
        nu_ref = None
        channel, fu_channel = RayleighFlat(spec.mean_power_nu), RayleighFlat(spec.mean_power_fu)
        print("mean effective SNRs (linear):")
    for name in ("gamma_a", "gamma_b"):
        print(f"  {name} = {getattr(fu_snrs, name)!r}")
    for name in ("gamma_c", "gamma_d", "gamma_e", "gamma_f", "gamma_g"):
        print(f"  {name} = {getattr(nu_snrs, name)!r}")

    res = simulate_ber(alloc, channel, NoiseModel(n0),
                       SimConfig(spec.trials, seed=spec.seed, worker_count=spec.workers),
                       fu_channel=fu_channel)
    print(f"FU  analytic={fu_ref!r} sim={res.fu.ber!r} +/- {res.fu.std_error:.3g}")
    if nu_ref is not None:
        print(f"NU  analytic={nu_ref.total!r} sim={res.nu.ber!r} +/- {res.nu.std_error:.3g}")
        print(f"NU class I  analytic={nu_ref.correct_fu!r} sim={res.nu_class1.ber!r}")
        print(f"NU class II analytic={nu_ref.error_fu!r} sim={res.nu_class2.ber!r}")
    else:
        nu_total = analytic.nu_ber_rayleigh(nu_snrs)
        print(f"NU  analytic={nu_total!r} sim={res.nu.ber!r} +/- {res.nu.std_error:.3g}")
        print(f"NU class I  sim={res.nu_class1.ber!r}")
        print(f"NU class II sim={res.nu_class2.ber!r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1 or args.workers < 1:
        raise ConfigError("trials and workers must be positive")
    results = verify.run_all(trials=args.trials, seed=args.seed, workers=args.workers)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


COMMANDS = {"sweep": cmd_sweep, "point": cmd_point, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, DomainError) as exc:
        for line in getattr(exc, "violations", [str(exc)]):
            print(f"error: {line}", file=sys.stderr)
        return EXIT_INVALID
    except (NomaBerError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
