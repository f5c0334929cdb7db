#!/usr/bin/env python3
"""Scalability sweep: generate, materialize and query kbs of increasing
size, printing one row per size.

Usage:
    python3 scripts/run_scale_experiment.py [--sizes 100,250,500,1000] [--seed 1]
"""

import argparse
import statistics
import sys
import time

from ssdkb.bench import DEFAULT_DL_QUERIES, DEFAULT_SPARQL_QUERIES
from ssdkb.classify import materialize_types
from ssdkb.dlquery import eval_dl_query, parse_dl_query
from ssdkb.generate import GenProfile, generate_studies
from ssdkb.kb import kb_stats
from ssdkb.sparql import eval_sparql, parse_sparql


def median_query_ms(kb, reps=5):
    times = []
    for text in DEFAULT_DL_QUERIES.values():
        expr = parse_dl_query(text)
        for _ in range(reps):
            start = time.perf_counter()
            eval_dl_query(expr, kb)
            times.append((time.perf_counter() - start) * 1000)
    for text in DEFAULT_SPARQL_QUERIES.values():
        query = parse_sparql(text)
        for _ in range(reps):
            start = time.perf_counter()
            eval_sparql(query, kb)
            times.append((time.perf_counter() - start) * 1000)
    return statistics.median(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,250,500,1000")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'studies':>8} {'triples':>9} {'individuals':>11} "
          f"{'gen_ms':>8} {'mat_ms':>8} {'query_ms':>9}")
    for n in sizes:
        start = time.perf_counter()
        kb = generate_studies(n, GenProfile(seed=args.seed))
        gen_ms = (time.perf_counter() - start) * 1000

        start = time.perf_counter()
        kb = materialize_types(kb)
        mat_ms = (time.perf_counter() - start) * 1000

        stats = kb_stats(kb)
        q_ms = median_query_ms(kb)
        print(f"{n:>8} {stats.triple_count:>9} {stats.individual_count:>11} "
              f"{gen_ms:>8.0f} {mat_ms:>8.0f} {q_ms:>9.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
