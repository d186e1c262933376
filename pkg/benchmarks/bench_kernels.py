"""Time the compiled and pure-Python kernels on representative inputs.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from bohrkit import kernels


def workloads(rng):
    num = rng.normal(size=13) + 1j * rng.normal(size=13)
    den = np.concatenate([[1.0], 0.3 * (rng.normal(size=12) + 1j * rng.normal(size=12))])
    w = rng.random(200)
    c = rng.normal(size=200) + 1j * rng.normal(size=200)
    grid = np.sin(np.linspace(0.1, 30.0, 4097))
    exps = rng.integers(0, 9, size=(400, 3)).astype(np.int64)
    coeffs = rng.normal(size=400) + 1j * rng.normal(size=400)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    return {
        "rational_taylor(T=200)": lambda m: m.rational_taylor(num, den, 200),
        "horner_sum(200)": lambda m: m.horner_sum(w, 0.7, 0),
        "horner_complex(200)": lambda m: m.horner_complex(c, 0.3 + 0.4j),
        "first_sign_change(4097)": lambda m: m.first_sign_change(grid),
        "section_coeffs(400 terms)": lambda m: m.section_coeffs(exps, coeffs, b, 24),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args(argv)
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python backend only")
    names = list(backends)
    print(f"{'kernel':<28}" + "".join(f"{n + ' (us)':>16}" for n in names) + f"{'speedup':>10}")
    for label, fn in workloads(np.random.default_rng(0)).items():
        times = {}
        for n, mod in backends.items():
            t = min(timeit.repeat(lambda: fn(mod), repeat=args.repeat, number=args.number))
            times[n] = 1e6 * t / args.number
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<28}" + "".join(f"{times[n]:>16.2f}" for n in names) + f"{speed:>10.1f}")


if __name__ == "__main__":
    main()
