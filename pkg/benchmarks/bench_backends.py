#!/usr/bin/env python3
"""Compare the compiled evaluation kernel against the pure-Python twin.

Generates a seeded corpus of formulas and interpretations, lowers each
pair once, then times `eval_rows` per backend over identical inputs:

    python3 benchmarks/bench_backends.py --formulas 300 --domain-size 3
"""

import argparse
import statistics
import time

from foli import kernel
from foli.gen import FormulaGen, random_interpretation
from foli.syntax import Signature
from foli.verify import domain_of_size

SIG = Signature({"p": 1, "q": 2, "r": 0}, {"c": 0, "f": 1})


def build_corpus(seed: int, formulas: int, domain_size: int, models: int):
    domain = domain_of_size(domain_size)
    gen = FormulaGen(seed, SIG)
    worlds = [random_interpretation(seed + i, SIG, domain) for i in range(models)]
    jobs = []
    for _ in range(formulas):
        phi = gen.formula()
        program = kernel.lower_formula(phi, domain)
        for world in worlds:
            jobs.append((program, kernel.lower_tables(world, program)))
    return jobs


def time_backend(name: str, jobs, repeat: int) -> list[float]:
    impl = kernel.backend_module(name)
    runs = []
    for _ in range(repeat):
        started = time.perf_counter()
        for program, tables in jobs:
            kernel.eval_rows(program, tables, impl=impl)
        runs.append(time.perf_counter() - started)
    return runs


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--formulas", type=int, default=300)
    ap.add_argument("--models", type=int, default=10)
    ap.add_argument("--domain-size", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    jobs = build_corpus(args.seed, args.formulas, args.domain_size, args.models)
    print(
        f"{len(jobs)} evaluations "
        f"({args.formulas} formulas x {args.models} models, "
        f"domain size {args.domain_size}), best of {args.repeat}"
    )

    results = {}
    for name in kernel.available_backends():
        runs = time_backend(name, jobs, args.repeat)
        results[name] = min(runs)
        print(
            f"  {name:>7}: {min(runs)*1000:8.1f} ms  "
            f"(median {statistics.median(runs)*1000:.1f} ms)"
        )
    if {"python", "cython"} <= results.keys():
        print(f"  speedup: {results['python'] / results['cython']:.1f}x")
    else:
        print("  compiled kernel not built; only the pure-Python twin ran")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
