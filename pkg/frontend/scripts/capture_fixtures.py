"""Capture HTTP responses from a live crosscut server into JSON fixtures.

The UI tests render from these files instead of talking to a server, so
they stay fast and deterministic while still exercising the exact wire
format. Rerun after any change to the API payloads:

    python3 scripts/capture_fixtures.py
"""

import json
import tempfile
import urllib.parse
import urllib.request
from pathlib import Path

from crosscut.server import start_background
from crosscut.session import open_session

F1_SRC = 'fn g(x){ return @{ x * 2 }; }  fn f(a){ if a > 0 { return g(a); } else { return g(0 - a); } }  #example "ex1" { f(3); f(-2); }'
F2_SRC = 'fn g(x){ return @{ x * 2 }; }  fn f(a){ return g(a); }  fn h(a){ return g(a + 1); }  #example "ex1" { f(3); h(3); g(10); }'
F3_SRC = 'fn fact(n){ if n <= 1 { return 1; } return n * @{ fact(n - 1) }; }  #example "fact3" { fact(3); }'

FIXTURES = {
    "f1": (F1_SRC, "m.cc:1:17"),
    "f2": (F2_SRC, "m.cc:1:17"),
    "f3": (F3_SRC, "m.cc:1:48"),
}

OUT_DIR = Path(__file__).resolve().parent.parent / "test" / "fixtures"


def get(base, path, **params):
    url = base + path
    if params:
        url += "?" + urllib.parse.urlencode(params)
    with urllib.request.urlopen(url) as resp:
        return json.loads(resp.read().decode("utf-8"))


def hit_seqs(node, out):
    if node["type"] == "probe":
        out.append(node["seq"])
        return
    for child in node.get("children", ()):
        hit_seqs(child, out)


def capture(name, src, probe_id):
    with tempfile.TemporaryDirectory() as tmp:
        Path(tmp, "m.cc").write_text(src, encoding="utf-8")
        session = open_session(tmp, run_on_open=True)
        server = start_background(session)
        base = f"http://127.0.0.1:{server.port}"
        try:
            examples = get(base, "/examples")
            run_id = examples["examples"][0]["run"]["run_id"]
            quoted = urllib.parse.quote(probe_id, safe="")
            tree = get(base, f"/runs/{run_id}/tree")
            seqs = []
            hit_seqs(tree["root"], seqs)
            data = {
                "example_id": examples["examples"][0]["id"],
                "probe_id": probe_id,
                "examples": examples,
                "source": get(base, "/source/m.cc"),
                "tree": tree,
                "tree_filter_g": get(base, f"/runs/{run_id}/tree", filter="g"),
                "summarized": get(
                    base, f"/runs/{run_id}/paths", target=f"probe:{probe_id}", mode="summarized"
                ),
                "detailed": get(
                    base, f"/runs/{run_id}/paths", target=f"probe:{probe_id}", mode="detailed"
                ),
                "values": get(base, f"/runs/{run_id}/probe/{quoted}/values"),
                "probe_log": get(base, f"/runs/{run_id}/probe-log"),
                "procedures": get(base, f"/runs/{run_id}/procedures"),
                "annotations": get(base, f"/runs/{run_id}/annotations"),
                "succession": {
                    str(seq): get(base, f"/runs/{run_id}/node/{seq}/succession") for seq in seqs
                },
                "callees_root": get(base, f"/runs/{run_id}/node/{tree['root']['seq']}/callees"),
            }
        finally:
            server.shutdown()
    out = OUT_DIR / f"{name}.json"
    out.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(seqs)} probe hits)")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, (src, probe_id) in FIXTURES.items():
        capture(name, src, probe_id)


if __name__ == "__main__":
    main()
