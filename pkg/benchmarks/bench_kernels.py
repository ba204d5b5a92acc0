"""Time the pure-Python kernels against the compiled twins.

Both backends expose the same functions on scaled integers, so each
row below calls one function with identical arguments through both
modules and reports the wall-clock ratio.  Set GROSSUM_PURE=1 before
importing grossum to pin the whole package to the Python backend; this
script sidesteps that switch and imports the two modules directly.

Usage:
    python benchmarks/bench_kernels.py [--repeat N] [--precision P]
"""

import argparse
import time

import grossum._kernels_py as kpy

try:
    import grossum._kernels_cy as kcy
except ImportError:
    kcy = None


def timed(fn, args, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best


def cases(prec):
    """(label, function name, args) rows covering the hot paths."""
    man = 10**(prec - 1) + 12345
    half = (5 * 10**(prec - 1), -prec)       # 0.5 at working precision
    near_one = (10**prec + 7, -prec)         # 1.000...7
    return [
        ("add_mp", "add_mp", (man, -prec, man // 3, -prec, prec)),
        ("mul_mp", "mul_mp", (man, -prec, man // 7, -prec, prec)),
        ("div_mp", "div_mp", (man, -prec, man // 7, -prec, prec)),
        ("sqrt_mp", "sqrt_mp", (man, -prec, prec)),
        ("exp_mp(0.5)", "exp_mp", (*half, prec)),
        ("ln_mp(1+eps)", "ln_mp", (*near_one, prec)),
        ("atan_mp(0.5)", "atan_mp", (*half, prec)),
        ("sin_mp(0.5)", "sin_mp", (*half, prec)),
        ("pi_mp", "pi_mp", (prec,)),
        ("inth_root", "inth_root", (man**3, 3)),
        ("sieve_primes(10^5)", "sieve_primes", (10**5,)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=25,
                    help="takes the best of this many runs (default 25)")
    ap.add_argument("--precision", type=int, default=64,
                    help="working precision in decimal digits (default 64)")
    args = ap.parse_args(argv)

    if kcy is None:
        print("compiled backend not built; showing pure-Python times only")
    print(f"precision={args.precision}  repeat={args.repeat}  (best-of)")
    header = f"{'case':<20} {'python':>12} {'compiled':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, call_args in cases(args.precision):
        t_py = timed(getattr(kpy, name), call_args, args.repeat)
        if kcy is None:
            print(f"{label:<20} {t_py * 1e6:>10.1f}us {'-':>12} {'-':>8}")
            continue
        t_cy = timed(getattr(kcy, name), call_args, args.repeat)
        ratio = t_py / t_cy if t_cy > 0 else float("inf")
        print(f"{label:<20} {t_py * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us "
              f"{ratio:>7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
