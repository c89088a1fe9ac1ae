"""Regenerate the byte-level golden output of ``skewmorita reduce --json`` on d10.

The pairing-term golden (d10_pairing_terms.json) is written by hand and is not touched here.
"""

from pathlib import Path

from skewmorita.instance import load_instance_file
from skewmorita.morita import build_qg

FIX = Path(__file__).resolve().parents[1] / "src" / "skewmorita" / "fixtures"

if __name__ == "__main__":
    qg = build_qg(load_instance_file(FIX / "d10.json"))
    (FIX / "golden" / "d10_reduce.json").write_text(qg.dumps() + "\n")
    print("wrote d10_reduce.json")
