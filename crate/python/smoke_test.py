"""Smoke test for the horn_rank extension module.

Build first with `cargo build -p horn-py --release` (or debug); the script
copies the shared library into a temporary directory as `horn_rank.so` and
imports it from there.
"""

import importlib
import os
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    explicit = os.environ.get("HORN_RANK_LIB")
    candidates = [Path(explicit)] if explicit else [
        ROOT / "target" / profile / "libhorn_rank.so" for profile in ("release", "debug")
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("libhorn_rank.so not found; run `cargo build -p horn-py` first")
    tmp = tempfile.mkdtemp(prefix="horn_rank_")
    shutil.copy(lib, os.path.join(tmp, "horn_rank.so"))
    sys.path.insert(0, tmp)
    return importlib.import_module("horn_rank")


def main():
    hr = load()

    h = hr.HornSystem([[1, 0], [-2, 1], [1, -2], [0, 1]], seed=1)
    r = h.rank()
    assert (r["rank"], r["puiseux_rank"], r["volume"], r["lattice_index"]) == (4, 1, 3, 1), r

    f1 = hr.HornSystem([[1, 1], [1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1]])
    r = f1.rank()
    assert (r["rank"], r["sum_dependent"], r["artinian"]) == (3, 1, False), r

    pair = hr.HornSystem([[4, 5], [-3, -5]], c=["0", "0"])
    polys = pair.puiseux()["polynomials"]
    assert len(polys) == 15
    big = max(polys, key=lambda p: len(p["x_terms"]))
    coeffs = sorted(Fraction(t["coefficient"]) for t in big["x_terms"])
    assert coeffs == [2, 2, 5, 40], coeffs

    tc = hr.HornSystem([[-1, 2], [0, -3], [3, 0], [-2, 1]], window=6)
    assert hr.lattice_index(tc.rows) == "3"
    s = tc.series()
    assert s["count"] == 9 and s["clean"], s["count"]

    assert hr.resultant(["0", "1"], ["-1", "1"]) == "1"
    assert hr.resultant(["-1", "0", "1"], ["-2", "1"]) == "3"
    assert hr.gale_dual([[1, 0], [-2, 1], [1, -2], [0, 1]])[0] == [1, 1, 1, 1]

    report = hr.run_job("rank", "B: 3 2\n2 -1\n-1 2\n-1 -1\nc: generic\n")
    assert report["schema"] == 1 and report["results"]["rank"]["rank"] == 4

    try:
        hr.HornSystem([[1, 0], [0, 1], [1, 1]])
    except hr.HornRankError as e:
        assert "column" in str(e)
    else:
        raise AssertionError("non-zero column sums accepted")

    print("horn_rank smoke test: ok")


if __name__ == "__main__":
    main()
