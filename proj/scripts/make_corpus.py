#!/usr/bin/env python3
"""Regenerates the bundled graph corpus under data/corpus/.

The corpus is committed; this script only exists so the files can be
reproduced. Run from the repository root:

    python3 scripts/make_corpus.py
"""

import itertools
import os
import random

ROOT = os.path.join(os.path.dirname(__file__), "..", "data", "corpus")


def write_graph(path, n, edges, comment=None):
    edges = sorted((min(u, v), max(u, v)) for u, v in edges)
    assert len(set(edges)) == len(edges)
    with open(path, "w") as f:
        if comment:
            f.write(f"# {comment}\n")
        f.write(f"{n} {len(edges)}\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")


def path_graph(n):
    return n, [(i, i + 1) for i in range(n - 1)]


def cycle_graph(n):
    return n, [(i, (i + 1) % n) for i in range(n)]


def complete_graph(n):
    return n, list(itertools.combinations(range(n), 2))


def binary_tree7():
    return 7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]


def petersen():
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))          # outer cycle
        edges.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
        edges.append((i, 5 + i))                # spokes
    return 10, edges


def connected(n, edges):
    if n == 0:
        return False
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def random_connected(n, p, seed):
    rng = random.Random(seed)
    while True:
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
                 if rng.random() < p]
        if connected(n, edges):
            return n, edges


def main():
    named = os.path.join(ROOT, "named")
    small4 = os.path.join(ROOT, "small4")
    perf = os.path.join(ROOT, "perf")
    for d in (named, small4, perf):
        os.makedirs(d, exist_ok=True)

    for n in range(1, 9):
        write_graph(os.path.join(named, f"p{n}.el"), *path_graph(n),
                    comment=f"path P{n}")
    for n in range(3, 9):
        write_graph(os.path.join(named, f"c{n}.el"), *cycle_graph(n),
                    comment=f"cycle C{n}")
    for n in range(1, 7):
        write_graph(os.path.join(named, f"k{n}.el"), *complete_graph(n),
                    comment=f"complete graph K{n}")
    write_graph(os.path.join(named, "tree7.el"), *binary_tree7(),
                comment="complete binary tree on 7 vertices")
    write_graph(os.path.join(named, "petersen.el"), *petersen(),
                comment="Petersen graph")

    # Every connected labeled graph on 1..4 vertices.
    count = 0
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if not connected(n, edges):
                continue
            write_graph(os.path.join(small4, f"n{n}_m{mask:02d}.el"),
                        n, edges)
            count += 1
    assert count == 44, count

    write_graph(os.path.join(perf, "rand200.el"),
                *random_connected(200, 0.05, seed=20240601),
                comment="seeded random connected graph, n=200")
    write_graph(os.path.join(perf, "rand30.el"),
                *random_connected(30, 0.2, seed=20240602),
                comment="seeded random connected graph, n=30")
    print("corpus written to", os.path.abspath(ROOT))


if __name__ == "__main__":
    main()
