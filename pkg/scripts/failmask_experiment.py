#!/usr/bin/env python3
"""Fail-mask on/off comparison over a corpus.

Runs every problem under one strategy with masks enabled and disabled,
writes the full stats CSV plus a scatter file (problem, time_on, time_off),
and prints a per-problem summary of how many tuples the masks kept away
from the redundancy criteria.
"""

import argparse
import os
import tempfile

from enuminst.bench import NO_FAILMASK_SUFFIX, run_bench, write_csv, write_scatter
from enuminst.corpus import write_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=None,
                        help="problem directory (default: a freshly generated corpus)")
    parser.add_argument("--strategy", default="u")
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--csv", default="failmask.csv")
    parser.add_argument("--scatter", default="failmask_scatter.csv")
    args = parser.parse_args()

    corpus = args.corpus
    if corpus is None:
        corpus = os.path.join(tempfile.mkdtemp(prefix="enuminst_"), "corpus")
        write_corpus(corpus)
        print("generated corpus under %s" % corpus)

    on, off = args.strategy, args.strategy + NO_FAILMASK_SUFFIX
    records = run_bench(corpus, [on, off], timeout_s=args.timeout)
    write_csv(records, args.csv)
    write_scatter(records, on, off, args.scatter)

    by_problem = {}
    for r in records:
        by_problem.setdefault(r.problem, {})[r.failmask] = r
    print("%-24s %10s %10s %10s" % ("problem", "checked_on", "checked_off", "masked"))
    for problem in sorted(by_problem):
        pair = by_problem[problem]
        if True not in pair or False not in pair:
            continue
        r_on, r_off = pair[True], pair[False]
        print("%-24s %10d %10d %10d" % (
            problem,
            r_on.tuples - r_on.masked_skips,
            r_off.tuples - r_off.masked_skips,
            r_on.masked_skips))
    print("wrote %s (stats) and %s (scatter)" % (args.csv, args.scatter))


if __name__ == "__main__":
    main()
