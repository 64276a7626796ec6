"""Command-line interface: train a generator, sample profiles, score sets."""

import argparse
import json
import sys

import numpy as np

from .data import load_samples_csv, save_samples_csv
from .metrics import empirical_wasserstein, fid, median_bandwidth_kernel, mmd2
from .model import TrainConfig
from .train import generate, load_bundle, save_bundle, train


def cmd_train(args):
    data = load_samples_csv(args.data)
    cfg = TrainConfig(epochs=args.epochs, rho=args.rho, seed=args.seed,
                      batch_size=args.batch_size)
    bundle, report = train(data, cfg)
    save_bundle(args.out, bundle)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report.as_dict(), fh, indent=1)
    print(f"trained {args.epochs} epochs; final held-out "
          f"mmd={report.final_mmd:.5f} fid={report.final_fid:.3f} "
          f"wd={report.final_wasserstein:.3f}; model -> {args.out}")
    return 0


def cmd_generate(args):
    bundle = load_bundle(args.model)
    samples = generate(bundle, args.n, seed=args.seed)
    save_samples_csv(args.out, samples)
    print(f"wrote {args.n} profiles to {args.out}")
    return 0


def cmd_metrics(args):
    real = load_samples_csv(args.real)
    fake = load_samples_csv(args.fake)
    kernel = median_bandwidth_kernel(real, fake)
    out = {
        "mmd2": mmd2(fake, real, kernel, biased=True),
        "wasserstein": empirical_wasserstein(fake[:args.max_atoms],
                                             real[:args.max_atoms]),
    }
    ridge = 1e-6 * np.eye(real.shape[1])
    out["fid"] = fid(real.mean(axis=0), np.cov(real, rowvar=False) + ridge,
                     fake.mean(axis=0), np.cov(fake, rowvar=False) + ridge)
    print(json.dumps(out, indent=1))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scengen",
        description="Renewable daily-profile generator (adversarial, "
                    "gradient-penalty training) with quality metrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train")
    p.add_argument("--data", required=True)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--rho", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("generate")
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("metrics")
    p.add_argument("--real", required=True)
    p.add_argument("--fake", required=True)
    p.add_argument("--max-atoms", type=int, default=64)
    p.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
