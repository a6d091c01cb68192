#!/usr/bin/env python3
"""Write the crafted benchmark corpus to a directory of .smt2 files."""

import argparse

from enuminst.corpus import write_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="corpus", help="output directory")
    args = parser.parse_args()
    paths = write_corpus(args.out)
    print("wrote %d problems under %s" % (len(paths), args.out))


if __name__ == "__main__":
    main()
