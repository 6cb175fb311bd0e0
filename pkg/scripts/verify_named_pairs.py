"""Run the cospectrality harness over a small corpus of named pairs and print a table."""

import argparse

from symwl.generators import cfi_pair, complete, cycle, named, star
from symwl.graph import disjoint_union, empty_graph, relabel
from symwl.harness import verify_props, verify_theorem1


def corpus():
    yield "shrikhande/rook4x4", named("shrikhande"), named("rook4x4")
    yield "K1,4 / C4+K1", star(4), disjoint_union(cycle(4), empty_graph(1))
    p = named("petersen")
    yield "petersen/relabel", p, relabel(p, [3, 7, 1, 9, 0, 5, 2, 8, 6, 4])
    pair = cfi_pair(complete(4))
    yield "cfi(K4)", pair.plain, pair.twisted


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=1)
    args = ap.parse_args()
    print(f"{'pair':22} {'status':20} {'pass':5} checks")
    for name, g, h in corpus():
        rep = verify_theorem1(g, h, args.k)
        outcomes = " ".join(f"{c.claim}:{c.outcome}" for c in rep.checks)
        print(f"{name:22} {rep.status:20} {str(rep.passed):5} {outcomes}")
    print()
    print(f"{'graph':12} {'k':2} trace rows (literal transfer form / orbit-averaged form)")
    for gname in ("path(3)", "cycle(4)", "k4", "petersen"):
        g = named(gname)
        for k in (2, 3):
            if k > g.n:
                continue
            rep = verify_props(g, k, 6)
            rows = [c.detail for c in rep.checks if c.claim == "prop3" and "r" in c.detail]
            lit = sum(d["transfer_equal"] for d in rows)
            avg = sum(d["averaged_equal"] for d in rows)
            print(f"{gname:12} {k:2} {lit}/{len(rows)} literal, {avg}/{len(rows)} averaged")


if __name__ == "__main__":
    main()
