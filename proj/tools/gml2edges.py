#!/usr/bin/env python3
# Copyright 2026 The ELP Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convert a GML graph into the edge-list and truth formats read by `elp`.

Nodes are written by their GML `id`, since labels may contain spaces.

    gml2edges.py football.gml football.edges --truth football.truth
    elp fetch-datasets --import football --edges football.edges --truth football.truth
"""

import argparse
import sys

import networkx as nx


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("gml")
    ap.add_argument("edges", help="output edge list")
    ap.add_argument("--truth", help="output truth file (node community)")
    ap.add_argument("--attr", default="value", help="node attribute holding the community")
    args = ap.parse_args()

    g = nx.Graph(nx.read_gml(args.gml, label="id"))
    g.remove_edges_from(list(nx.selfloop_edges(g)))

    with open(args.edges, "w", encoding="utf-8") as out:
        for u, v in sorted(g.edges(), key=lambda e: (min(e), max(e))):
            out.write(f"{min(u, v)} {max(u, v)}\n")

    if args.truth:
        missing = [n for n in g.nodes if args.attr not in g.nodes[n]]
        if missing:
            print(f"nodes without '{args.attr}': {missing[:5]}", file=sys.stderr)
            return 3
        # Categorical values (e.g. "l", "n", "c") become dense integers.
        values = sorted({str(g.nodes[n][args.attr]) for n in g.nodes})
        code = {v: i for i, v in enumerate(values)}
        with open(args.truth, "w", encoding="utf-8") as out:
            for n in sorted(g.nodes):
                out.write(f"{n} {code[str(g.nodes[n][args.attr])]}\n")

    print(f"{args.gml}: N={g.number_of_nodes()} E={g.number_of_edges()}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
