"""CLI invocations pinned by golden files.

Run ``python tests/golden_cases.py`` to regenerate the files after an
intentional output change.
"""

import io
from pathlib import Path

from markovkit.cli import run_command

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

CASES = {
    "sample": ["sample", "--chain", f"{DATA}/kite.json", "--steps", "200", "--start", "4"],
    "mcmc": ["mcmc", "--target", f"{DATA}/weights5.json", "--base", f"{DATA}/kite_graph.json",
             "--steps", "5000", "--burn-in", "100", "--thinning", "2"],
    "gibbs": ["gibbs", "--n", "6", "--sweeps", "5000", "--burn-in", "50"],
    "anneal": ["anneal", "--graph", f"{DATA}/trap8.json", "--objective",
               f"{DATA}/trap8_f.json", "--steps", "300", "--start", "7", "--trace"],
    "polya": ["polya", "--a", "1", "--b", "1", "--steps", "10", "--trials", "2000"],
    "gen-graph": ["gen-graph", "--kind", "erdos_renyi", "--size", "12", "--p", "0.3"],
}


def run_case(name, seed=42):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(CASES[name] + ["--seed", str(seed)], stdout=out, stderr=err)
    if code != 0:
        raise RuntimeError(f"{name} exited {code}: {err.getvalue()}")
    # output never echoes input paths, so it does not depend on the checkout location
    return out.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name in CASES:
        (GOLDEN / f"{name}.csv").write_text(run_case(name))
        print("wrote", name)
