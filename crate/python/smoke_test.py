"""Build the extension with `cargo build -p periodica-py` first."""

import glob
import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def import_extension():
    candidates = sorted(
        glob.glob(os.path.join(ROOT, "target", "*", "libperiodica.so")),
        key=os.path.getmtime,
    )
    if not candidates:
        sys.exit("libperiodica.so not found; run `cargo build -p periodica-py`")
    tmp = tempfile.mkdtemp()
    shutil.copy(candidates[-1], os.path.join(tmp, "periodica.so"))
    sys.path.insert(0, tmp)
    import periodica

    return periodica


def main():
    pc = import_extension()

    assert pc.normalize("Sq^2 Sq^2") == "Sq^3 Sq^1"
    assert pc.normalize("Sq^1 Sq^1") == "0"
    assert pc.normalize("P^1 P^1", 3) == "2 P^2"
    assert len(pc.admissible_basis(9)) == 5
    assert pc.excess("Sq^6 Sq^2 Sq^1") == 3
    assert pc.is_indecomposable(8) and not pc.is_indecomposable(6)

    ring = pc.Ring.load(os.path.join(ROOT, "fixtures", "candidate-16.ring"))
    assert ring.dim(20) == 1
    assert ring.act("Sq^8 Sq^4", "y8") == "y4*x"
    assert ring.is_periodic("x")
    report = json.loads(ring.periodicity(minimal=True))
    assert report["body"]["minimal_period"] == 16

    poly = pc.Ring("prime 2\ncap 48\ngen x 16\n")
    audit = json.loads(poly.audit("adams", "x"))
    assert audit["body"][0]["verdict"] == "contradiction"

    doc = json.loads(pc.verify("half-power-family", k=16))
    assert all(r["passed"] for r in doc["body"])

    try:
        pc.normalize("Sq^")
    except ValueError as e:
        assert "expected" in str(e)
    else:
        raise AssertionError("parse error not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
