"""Smoke test for the brace_forge_py extension.

Build first with
    cargo build -p brace-forge-py --features extension-module
then run
    python3 crates/py/python/smoke_test.py
"""

import importlib.util
import json
import os
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[3]


def load():
    try:
        import brace_forge_py

        return brace_forge_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libbrace_forge_py.so", "libbrace_forge_py.dylib"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                tmp = pathlib.Path(tempfile.mkdtemp())
                dest = tmp / "brace_forge_py.so"
                shutil.copy(lib, dest)
                spec = importlib.util.spec_from_file_location("brace_forge_py", dest)
                mod = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(mod)
                return mod
    sys.exit("extension not built; run cargo build -p brace-forge-py --features extension-module")


def main():
    bf = load()

    assert bf.group_order("M11") == 7920
    assert bf.group_order("D4") == 8
    assert bf.pgl2_factorization(7) == (8, 42, 1, 336)

    text = bf.psl2_certificate(5)
    cert = json.loads(text)
    assert cert["kind"] == "realization"
    report = bf.verify_certificate(text)
    names = [r[0] for r in report]
    assert "regularity" in names and "brace_axiom" in names, names

    cert["payload"]["xi"][3], cert["payload"]["xi"][4] = cert["payload"]["xi"][4], cert["payload"]["xi"][3]
    try:
        bf.verify_certificate(json.dumps(cert))
    except bf.VerificationError as e:
        assert e.args[0] == "regularity", e.args
    else:
        raise AssertionError("tampered certificate verified")

    for bad in (3, 6):
        try:
            bf.psl2_certificate(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"q={bad} accepted")

    try:
        bf.code1("M11", max_order=100)
    except bf.SizeLimitError:
        pass
    else:
        raise AssertionError("size limit ignored")

    fac, real = bf.code1("S4")
    assert json.loads(fac)["kind"] == "factorization"
    bf.verify_certificate(fac)
    bf.verify_certificate(real)
    print("smoke test passed")


if __name__ == "__main__":
    main()
