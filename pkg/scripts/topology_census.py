"""Count topologies and homeomorphism classes on small point sets, with family sizes."""

import argparse

from compatorder.functions import ValueGrid, family_size
from compatorder.topology import all_topologies, connected_components, topologies_up_to_homeomorphism


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-points", type=int, default=4)
    ap.add_argument("--grid", default="0,1")
    args = ap.parse_args()
    grid = ValueGrid.parse(args.grid)
    print(f"{'n':>2} {'topologies':>10} {'classes':>8} {'connected':>9} {'max family':>10}")
    for n in range(args.max_points + 1):
        classes = topologies_up_to_homeomorphism(n)
        connected = sum(1 for s in classes if len(connected_components(s)) <= 1)
        biggest = max(family_size(s, grid) for s in classes)
        print(f"{n:>2} {len(all_topologies(n)):>10} {len(classes):>8} {connected:>9} {biggest:>10}")


if __name__ == "__main__":
    main()
