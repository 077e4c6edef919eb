"""Timing comparison: compiled kernels vs the pure-Python twins.

Run as `python benchmarks/bench_kernels.py`.  The first rows time the kernel
entry points directly; the last row times a full cutoff-oracle scattering
point through the public layer, which is where the march dominates.
"""

import timeit

import numpy as np

from singtunnel import _kernels_py as kp
from singtunnel import backend
from singtunnel.oracle import CutoffPotential, cutoff_scatter

try:
    from singtunnel import _kernels_cy as kc
except ImportError:  # pragma: no cover
    kc = None

_NUMEROV_F = np.sin(np.linspace(0.0, 40.0, 20001)) - 2.0


def make_workloads(k):
    return [
        ("hyp1f1 series (dd)", 50,
         lambda: k.hyp1f1_series(1.0 - 2.0j, 0.5 + 2.0j, 14.0j, True, 100000)),
        ("log-case U sums (dd)", 50,
         lambda: k.hyperu_log_sums(0.3 - 1.2j, 0, 3.0 + 2.0j, True, 100000)),
        ("incomplete gamma CF", 200,
         lambda: k.incgamma_upper_cf(0.25 + 1.0j, 8.0 + 3.0j, 100000)),
        ("bessel J/Y (x=9)", 200,
         lambda: k.bessel_jy_small(1.3, 9.0, 100000)),
        ("numerov 20k nodes", 5,
         lambda: k.numerov_two_solutions(_NUMEROV_F, 2e-3, 1.0, 2e-3)),
    ]


def time_one(fn, number):
    fn()  # warm up outside the timed region
    return min(timeit.repeat(fn, number=number, repeat=3)) / number


def run():
    if kc is None:
        raise SystemExit(
            "compiled kernels not built; reinstall with a C toolchain present"
        )
    print(f"{'workload':<24}{'python':>12}{'cython':>12}{'speedup':>10}")
    rows = zip(make_workloads(kp), make_workloads(kc))
    for (name, number, py_fn), (_, _, cy_fn) in rows:
        t_py = time_one(py_fn, number)
        t_cy = time_one(cy_fn, number)
        print(
            f"{name:<24}{t_py * 1e3:>10.3f}ms{t_cy * 1e3:>10.3f}ms"
            f"{t_py / t_cy:>9.1f}x"
        )

    point = lambda: cutoff_scatter(CutoffPotential(1.0, 1.0, 0.05), 1.0)  # noqa: E731
    times = {}
    for which in ("python", "cython"):
        backend.set_backend(which)
        times[which] = time_one(point, 3)
    backend.set_backend("cython")
    print(
        f"{'cutoff oracle point':<24}{times['python'] * 1e3:>10.3f}ms"
        f"{times['cython'] * 1e3:>10.3f}ms"
        f"{times['python'] / times['cython']:>9.1f}x"
    )


if __name__ == "__main__":
    run()
