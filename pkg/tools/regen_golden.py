"""Record the fixed-seed golden files under tests/golden/.

Run only when the scenario generator or the shipped scenario deliberately
changes; the tests compare against these files byte for byte.
"""
import json
import shutil
import tempfile
from importlib.resources import files
from pathlib import Path

from vsdnplace import generate_vsdns, load_scenario, parse_graphml
from vsdnplace.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
DATA = files("vsdnplace").joinpath("data")


def run():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    topo_path = Path(str(DATA.joinpath("att_north_america.graphml")))
    cfg_path = Path(str(DATA.joinpath("att_scenario.cfg")))
    topo = parse_graphml(topo_path.read_bytes())
    cfg = load_scenario(cfg_path.read_text())
    vsdns = generate_vsdns(cfg, topo)
    (GOLDEN / "att_vsdns.json").write_text(json.dumps(
        {"seed": cfg.seed, "vsdns": [[v.id, list(v.demand_nodes)] for v in vsdns]}) + "\n")

    with tempfile.TemporaryDirectory() as tmp:
        common = ["--topology", str(topo_path), "--scenario", str(cfg_path), "--out", tmp, "--quiet"]
        assert main(["rpf", "--scan", *common]) == 0
        assert main(["converge", "--iterations", "100", *common]) == 0
        shutil.copy(Path(tmp) / "scan.csv", GOLDEN / "att_scan.csv")
        shutil.copy(Path(tmp) / "converge.csv", GOLDEN / "att_converge_100.csv")


if __name__ == "__main__":
    run()
