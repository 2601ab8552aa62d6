#!/usr/bin/env python3
"""Benchmark the hot kernels on every available backend.

Times one call of each kernel (reaction-diffusion step, Hamilton-Jacobi
step, eikonal relaxation pass) on representative problem sizes, for the
pure-NumPy backend and, when built, the compiled extension.  Prints a table
of per-call times and the compiled/pure speedup.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 200x100,400x200] [--repeat 5]
"""

import argparse
import time

import numpy as np

from traitfront import _kernels


def _problem_arrays(n_theta, n_x, rng):
    """Representative inputs shared by all backends for one grid size."""
    hx = 4.0 / (n_x - 1)
    hth = 2.5 / (n_theta - 1)
    theta = np.linspace(0.0, 2.5, n_theta)
    dbar = theta.copy()

    u = rng.uniform(0.0, 1.0, size=(n_theta, n_x))
    f = rng.uniform(-0.5, 3.0, size=(n_theta, n_x))
    sigma_x = 2.0 * dbar * 3.0
    sigma_th = np.full(n_theta, 6.0)

    d = np.full((n_theta, n_x), np.inf)
    frozen = np.zeros((n_theta, n_x), dtype=bool)
    frozen[: n_theta // 8, : n_x // 8] = True
    d[frozen] = 0.0

    eps = 0.1
    dt_rd = 0.9 / (2.0 * eps * dbar.max() / hx**2 + 2.0 * eps / hth**2 + 1.0 / eps)
    dt_hj = 0.9 * min(hx / (4.0 * sigma_x.max()), hth / (4.0 * sigma_th.max()))
    return {
        "rd": (u, dbar, eps, dt_rd, hx, hth),
        "hj": (f, dbar, sigma_x, sigma_th, dt_hj, hx, hth, False),
        "eik": (d, dbar, frozen, hx, hth),
    }


def _time_call(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(name, sizes, repeat, seed):
    backend = _kernels.get_backend(name)
    rows = []
    for n_theta, n_x in sizes:
        arrays = _problem_arrays(n_theta, n_x, np.random.default_rng(seed))
        u, dbar, eps, dt_rd, hx, hth = arrays["rd"]
        f, _, sigma_x, sigma_th, dt_hj, _, _, geo = arrays["hj"]
        d0, _, frozen, _, _ = arrays["eik"]

        t_rd = _time_call(lambda: backend.rd_step(u, dbar, eps, dt_rd, hx, hth), repeat)
        t_hj = _time_call(
            lambda: backend.hj_step(f, dbar, sigma_x, sigma_th, dt_hj, hx, hth, geo),
            repeat,
        )

        def eik_once():
            d = d0.copy()
            backend.eikonal_pass(d, dbar, frozen, hx, hth, 0)

        t_eik = _time_call(eik_once, repeat)
        rows.append(((n_theta, n_x), {"rd_step": t_rd, "hj_step": t_hj, "eikonal_pass": t_eik}))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="200x100,400x200,800x400",
        help="comma-separated n_x-by-n_theta grid sizes, e.g. 400x200",
    )
    parser.add_argument("--repeat", type=int, default=7, help="timing repetitions (best-of)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    sizes = []
    for token in args.sizes.split(","):
        n_x, n_theta = (int(part) for part in token.lower().split("x"))
        sizes.append((n_theta, n_x))

    names = list(_kernels.available_backends())
    print(f"backends available: {', '.join(names)}")
    results = {name: bench_backend(name, sizes, args.repeat, args.seed) for name in names}

    header = f"{'kernel':<14}{'grid':<12}" + "".join(f"{name:>14}" for name in names)
    if "pure" in results and "compiled" in results:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for idx, (n_theta, n_x) in enumerate(sizes):
        for kernel in ("rd_step", "hj_step", "eikonal_pass"):
            row = f"{kernel:<14}{f'{n_x}x{n_theta}':<12}"
            for name in names:
                row += f"{results[name][idx][1][kernel] * 1e6:>12.1f}us"
            if "pure" in results and "compiled" in results:
                ratio = results["pure"][idx][1][kernel] / results["compiled"][idx][1][kernel]
                row += f"{ratio:>9.2f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
