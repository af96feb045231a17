#!/usr/bin/env python3
"""Searches for a quasi-additive linear order on 5 atoms that no measure represents.

Start from a generic measure, swap the comparisons A/B and A+C/B+C for every C
disjoint from A and B when all of those pairs are adjacent in the induced chain,
and keep the result if the LP with a strict margin is infeasible.
"""
import argparse
import itertools
import json
import random

import numpy as np
from scipy.optimize import linprog

N = 5
FULL = (1 << N) - 1


def members(s):
    return [i for i in range(N) if s >> i & 1]


def chain_of(weights):
    return sorted(range(1 << N), key=lambda s: sum(weights[i] for i in members(s)))


def quasi_additive(pos):
    for x in range(1 << N):
        for y in range(1 << N):
            a, b = x & ~y, y & ~x
            if (pos[x] >= pos[y]) != (pos[a] >= pos[b]):
                return False
    return True


def representable(chain):
    # maximize t subject to w(chain[k+1]) - w(chain[k]) >= t, w >= 0, sum w = 1
    rows, rhs = [], []
    for lo, hi in zip(chain, chain[1:]):
        v = np.zeros(N + 1)
        for i in members(hi):
            v[i] -= 1
        for i in members(lo):
            v[i] += 1
        v[N] = 1
        rows.append(v)
        rhs.append(0.0)
    res = linprog(
        c=np.r_[np.zeros(N), -1.0],
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        A_eq=np.array([np.r_[np.ones(N), 0.0]]),
        b_eq=[1.0],
        bounds=[(0, None)] * N + [(None, 1)],
        method="highs",
    )
    return res.status == 0 and -res.fun > 1e-9


def attempt(rng):
    weights = [rng.randint(1, 200) for _ in range(N)]
    chain = chain_of(weights)
    sums = [sum(weights[i] for i in members(s)) for s in chain]
    if len(set(sums)) != len(sums):
        return None
    pos = {s: k for k, s in enumerate(chain)}
    for a, b in itertools.permutations(range(1, 1 << N), 2):
        if a & b or pos[a] < pos[b]:
            continue
        rest = FULL & ~(a | b)
        cs = [c for c in range(1 << N) if c & ~rest == 0]
        if not all(pos[a | c] == pos[b | c] + 1 for c in cs):
            continue
        swapped = list(chain)
        for c in cs:
            i, j = pos[b | c], pos[a | c]
            swapped[i], swapped[j] = swapped[j], swapped[i]
        spos = {s: k for k, s in enumerate(swapped)}
        if quasi_additive(spos) and not representable(swapped):
            return swapped
    return None


def subset_text(s):
    return "{" + ",".join(str(i) for i in members(s)) + "}"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--tries", type=int, default=200000)
    ap.add_argument("--out", default="tests/fixtures/order5.json")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for t in range(args.tries):
        found = attempt(rng)
        if found:
            comps = [[subset_text(hi), subset_text(lo), ">"] for lo, hi in zip(found, found[1:])]
            lines = ",\n  ".join(json.dumps(c) for c in comps)
            with open(args.out, "w") as f:
                f.write('{"atoms": %d,\n "comparisons": [\n  %s\n ]}\n' % (N, lines))
            print(f"found after {t + 1} tries")
            return
    raise SystemExit("no instance found")


if __name__ == "__main__":
    main()
