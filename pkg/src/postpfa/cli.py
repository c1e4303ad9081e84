"""Command-line harness: build, run, sample, and report on the machines.

Exit codes: 0 on success, 1 when a computation or suite check fails,
2 on usage errors.  Rationals are printed as "p/q" together with a
12-significant-digit decimal; only the exact form ever feeds a decision.
An optional JSON config file supplies defaults; explicit flags win.
"""

import argparse
import json
import sys

from . import coin, counter, serialize, suites, verifier, zoo
from .engine import run_exact, simulate_monte_carlo
from .errors import PostPFAError
from .ratio import approx_decimal, format_rational, parse_rational


def _show(label, value):
    print("%s: %s (~%s)" % (label, format_rational(value),
                            approx_decimal(value)))


def _bits(text):
    if not text or any(ch not in "01" for ch in text):
        raise argparse.ArgumentTypeError("bits must be a nonempty 0/1 string")
    return [int(ch) for ch in text]


_FAMILIES = ("equal", "equal-blocks", "equal-blocks-f", "log", "dima3",
             "dima3i", "upower", "upowerk", "usquare", "upower6i")


def _build_machine(args):
    family = args.family
    if family == "equal":
        return zoo.build_equal(parse_rational(args.x))
    if family == "equal-blocks":
        return zoo.build_equal_blocks(parse_rational(args.x))
    if family == "equal-blocks-f":
        return zoo.build_equal_blocks_f(parse_rational(args.x),
                                        args.slope, args.offset)
    if family == "log":
        return zoo.build_log(parse_rational(args.x))
    if family == "dima3":
        return counter.build_dima3(parse_rational(args.x))
    if family == "dima3i":
        return counter.build_dima3I(parse_rational(args.y), args.bits,
                                    args.precision)
    if family == "upower":
        return verifier.build_upower_verifier(parse_rational(args.x))
    if family == "upowerk":
        return verifier.build_upowerk_verifier(parse_rational(args.x),
                                               args.k)
    if family == "usquare":
        return verifier.build_usquare_verifier(parse_rational(args.x))
    # upower6i
    return verifier.build_upower6I_verifier(args.bits, args.precision)


def cmd_build(args):
    machine = _build_machine(args)
    text = serialize.serialize_automaton(machine)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print("wrote %s (%d states)" % (args.out, len(machine.states)))
    else:
        sys.stdout.write(text)
    return 0


def _load(path):
    with open(path, "r", encoding="utf-8") as handle:
        return serialize.parse_automaton(handle.read())


def _certificate(args, machine):
    prefix = tuple(args.cert) if args.cert else ()
    return verifier.Certificate(prefix, args.cert_tail)


def cmd_run(args):
    machine = _load(args.automaton)
    kind = serialize.automaton_kind(machine)
    if kind == "pfa":
        result = run_exact(machine, args.input)
    elif kind == "pca":
        result = counter.run_pca_exact(machine, args.input)
    else:
        result = verifier.run_verifier_exact(machine, args.input,
                                             _certificate(args, machine))
    _show("accept mass", result.accept_mass)
    _show("reject mass", result.reject_mass)
    if result.defined:
        _show("acceptance", result.acceptance)
        _show("rejection", result.rejection)
    else:
        print("acceptance: undefined (no mass on the deciding states)")
    return 0


def cmd_mc(args):
    machine = _load(args.automaton)
    kind = serialize.automaton_kind(machine)
    if kind == "pfa":
        result = simulate_monte_carlo(machine, args.input, args.trials,
                                      seed=args.seed)
    elif kind == "pca":
        result = counter.run_pca_mc(machine, args.input, args.trials,
                                    seed=args.seed)
    else:
        print("mc supports plain and counter machines only", file=sys.stderr)
        return 2
    print("trials: %d  accepted: %d  rejected: %d"
          % (result.trials, result.accepted, result.rejected))
    print("estimate: %s" % result.estimate)
    print("mean passes: %s" % (result.total_passes / result.trials))
    return 0


def _cert_text(cert):
    body = "".join(cert.prefix)
    if body.endswith(cert.tail_symbol):
        return body
    return body + cert.tail_symbol


def cmd_cert(args):
    if args.protocol == "upower":
        cert = verifier.honest_cert_upower(args.n)
    elif args.protocol == "usquare":
        cert = verifier.honest_cert_usquare(args.n)
    else:
        two = verifier.honest_cert_upower6(args.k)
        print("track1: %s" % _cert_text(two.track1))
        print("track2: %s" % _cert_text(two.track2))
        return 0
    print(_cert_text(cert))
    return 0


def cmd_soundness(args):
    machine = _load(args.automaton)
    if serialize.automaton_kind(machine) != "verifier":
        print("soundness search needs a certificate-reading machine",
              file=sys.stderr)
        return 2
    best, witness = verifier.soundness_search(machine, args.input,
                                              args.max_prefix,
                                              budget=args.budget)
    _show("max acceptance", best)
    print("witness: %s" % _cert_text(witness))
    return 0


def cmd_coin(args):
    p = coin.encode_coin(args.bits)
    _show("coin bias", p)
    target = args.bits[args.k - 1] if args.k <= len(args.bits) else 0
    if args.exact:
        _show("exact decode success", coin.exact_guess_success(p, args.k,
                                                               target))
    if args.trials:
        _show("empirical decode success",
              coin.mc_guess_success(p, args.k, target, args.trials,
                                    seed=args.seed))
    return 0


def cmd_suite(args):
    names = list(suites.CRITERIA) if args.name == "all" else [args.name]
    rows = []
    for name in names:
        rows.extend(suites.run_criterion(name))
    sys.stdout.write(suites.render_text(rows))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as handle:
            handle.write(suites.render_csv(rows))
        print("wrote %s" % args.csv)
    return 0 if all(r.passed for r in rows) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="postpfa",
        description="Exact simulation of postselecting realtime automata.")
    parser.add_argument("--config", help="JSON file with default options")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a machine and serialize it")
    p.add_argument("--family", required=True, choices=_FAMILIES)
    p.add_argument("--x", default="1/4", help="error parameter as p/q")
    p.add_argument("--y", default="1/20", help="vote weight as p/q")
    p.add_argument("--slope", type=int, default=1)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--bits", type=_bits, default=[1],
                   help="advice bits as a 0/1 string")
    p.add_argument("--precision", type=int, default=4)
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="exact run on one input word")
    p.add_argument("--automaton", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--cert", default="",
                   help="certificate prefix (verifier machines)")
    p.add_argument("--cert-tail", default="$")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("mc", help="Monte Carlo restart simulation")
    p.add_argument("--automaton", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--trials", type=int, default=10 ** 4)
    p.add_argument("--seed", default="0")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("cert", help="print an honest certificate")
    p.add_argument("--protocol", required=True,
                   choices=("upower", "usquare", "upower6"))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("soundness",
                       help="exhaustive search over certificate prefixes")
    p.add_argument("--automaton", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--max-prefix", type=int, required=True)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_soundness)

    p = sub.add_parser("coin", help="coin encoding and decode success")
    p.add_argument("--bits", type=_bits, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", default="0")
    p.set_defaults(func=cmd_coin)

    p = sub.add_parser("suite", help="run a named acceptance suite")
    p.add_argument("--name", required=True,
                   choices=tuple(suites.CRITERIA) + ("all",))
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_suite)
    return parser


def cli_main(argv=None):
    parser = build_parser()
    # config file provides defaults; explicit flags take precedence
    preview, _ = parser.parse_known_args(argv)
    if preview.config:
        try:
            with open(preview.config, "r", encoding="utf-8") as handle:
                overrides = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            print("bad config file: %s" % exc, file=sys.stderr)
            return 2
        if not isinstance(overrides, dict):
            print("config file must hold a JSON object", file=sys.stderr)
            return 2
        for action in parser._subparsers._group_actions[0].choices.values():
            action.set_defaults(**{k: v for k, v in overrides.items()
                                   if any(a.dest == k
                                          for a in action._actions)})
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PostPFAError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
