# Shifts every node and edge id and reverses list order; reads and writes graph JSON.
import json
import sys

g = json.load(sys.stdin)
node = {n["id"]: n["id"] * 7 + 1000 for n in g["nodes"]}
edge = {e["id"]: e["id"] * 3 + 500 for e in g["edges"]}
for n in g["nodes"]:
    n["id"] = node[n["id"]]
for e in g["edges"]:
    e["id"], e["tail"], e["head"] = edge[e["id"]], node[e["tail"]], node[e["head"]]
g["nodes"].reverse()
g["edges"].reverse()
if "iota" in g:
    g["iota"]["nodes"] = [[node[a], node[b]] for a, b in g["iota"]["nodes"]]
    g["iota"]["edges"] = [[edge[a], edge[b]] for a, b in g["iota"]["edges"]]
json.dump(g, sys.stdout)
