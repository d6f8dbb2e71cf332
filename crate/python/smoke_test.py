"""Smoke test for the pyhopftwist extension.

Build it first with `cargo build -p pyhopftwist --release` (or a debug
build); the test copies the shared library next to itself under the module
name and imports it. Run with `python3 python/smoke_test.py` or pytest.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libpyhopftwist.so"
        if lib.exists():
            break
    else:
        raise SystemExit("libpyhopftwist.so not found; run cargo build -p pyhopftwist")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "pyhopftwist.so")
    sys.path.insert(0, str(tmp))
    import pyhopftwist

    return pyhopftwist


def test_smoke():
    m = load()

    dump = json.loads(m.catalog_dump())
    assert len(dump["coproducts"]) == 26
    assert len(dump["spacetimes"]) == 3

    cfg = json.dumps({"deformations": ["theta_kl+kappa"], "indices": "k=1,l=2,i=3", "checks": ["cybe", "antipode"]})
    report = json.loads(m.run_verify(cfg))
    assert report["summary"]["fail"] == 0
    assert all(r["status"] == "pass" for r in report["records"])

    st = json.loads(m.spacetime_table("theta_kl+kappa", "k=1,l=2,i=3"))
    assert st["tables"][0]["matches_catalog"] is True

    c = json.loads(m.contract("theta_kl+kappa", "k=1,l=2,i=3", 3))
    assert c["galilei"] == "xi_kl+lambda"
    assert len(c["coproducts"]) == 10

    try:
        m.run_verify(json.dumps({"deformations": ["kappa"], "indices": "k=1,i=1"}))
    except ValueError as e:
        assert "i != k" in str(e)
    else:
        raise AssertionError("invalid indices accepted")


if __name__ == "__main__":
    test_smoke()
    print("ok")
