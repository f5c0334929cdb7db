#!/usr/bin/env python3
"""Generate a synthetic corpus, write it to Turtle and print its stats.

Usage:
    python3 scripts/build_corpus.py -n 1000 --seed 1 -o corpus.ttl
"""

import argparse
import sys

from ssdkb.generate import GenProfile, generate_graph
from ssdkb.kb import graph_to_kb, kb_stats
from ssdkb.turtle import serialize_turtle


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", "--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--profile", help="profile file (key = value lines)")
    parser.add_argument("-o", "--output", required=True)
    args = parser.parse_args(argv)

    profile = GenProfile.from_file(args.profile) if args.profile else GenProfile()
    if args.seed is not None:
        from dataclasses import replace

        profile = replace(profile, seed=args.seed)

    graph = generate_graph(args.count, profile)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(serialize_turtle(graph))

    stats = kb_stats(graph_to_kb(graph))
    print(f"wrote {args.output}: {stats.study_count} studies, "
          f"{stats.triple_count} triples, {stats.individual_count} individuals")
    return 0


if __name__ == "__main__":
    sys.exit(main())
