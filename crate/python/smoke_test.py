"""Smoke test for the `frobenius` extension module.

Build first:
    cargo build --release -p frobenius-py --features extension-module
then run `python3 python/smoke_test.py` from the workspace root. Set
FROBENIUS_LIB to point at a different build of the shared library.
"""

import importlib.util
import os
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    lib = os.environ.get("FROBENIUS_LIB")
    if lib is None:
        for name in ("libfrobenius.so", "libfrobenius.dylib", "frobenius.dll"):
            candidate = ROOT / "target" / "release" / name
            if candidate.exists():
                lib = str(candidate)
                break
    if lib is None:
        sys.exit("build the extension first: cargo build --release -p frobenius-py --features extension-module")
    suffix = ".pyd" if lib.endswith(".dll") else ".so"
    target = Path(tempfile.mkdtemp()) / ("frobenius" + suffix)
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("frobenius", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    fr = load()

    m23 = fr.Monoid.numerical([2, 3])
    assert m23.elements_up_to(7) == [[0], [2], [3], [4], [5], [6], [7]]
    assert m23.divides(2, 6) and not m23.divides(4, 5)
    assert m23.interval(6) == {"elements": ["2", "3", "4"], "covers": [[0, 2]]}
    assert fr.betti(m23, 6) == {2: 1}
    assert fr.betti(m23, [6], field=2, method="resolution") == {2: 1}

    n = fr.Monoid.free(1)
    assert [fr.betti(n, k) for k in range(4)] == [{0: 1}, {1: 1}, {}, {}]
    assert fr.poincare(n, 3) == [(0, [0], {0: 1}), (1, [1], {1: 1})]

    gm = fr.Monoid.glued(n, n, 3, 2)
    rho = gm.rho()
    assert gm.degree(rho) == 6
    assert gm.normalize([[3], [0]]) == rho
    assert fr.betti(gm, rho) == fr.predicted_betti(gm, rho) == {2: 1}
    assert fr.poincare(gm, 20) == fr.poincare(gm, 20, predicted=True)

    report = fr.verify_gluing(gm, 24)
    assert report["summary"]["mismatched"] == 0 and report["summary"]["errors"] == 0

    root = fr.Monoid.adjoin_root(m23, 6, 2)
    assert root.degree(root.rho()) == 12
    assert fr.verify_gluing(root, 20, field=2)["summary"]["mismatched"] == 0

    dirsum = fr.verify_dirsum(m23, n, 10)
    assert dirsum["summary"]["mismatched"] == 0
    comp = fr.verify_compositions(fr.Monoid.free(2), 6)
    assert comp["summary"]["matched"] == comp["summary"]["total"]

    complex_ = fr.frobenius_complex(m23, 6)
    assert fr.complex_betti(complex_["facets"]) == {2: 1}
    # six vertex projective plane
    rp2 = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
           [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5]]
    assert fr.complex_betti(rp2) == {}
    assert fr.complex_betti(rp2, field=2) == {3: 1, 4: 1}

    try:
        fr.Monoid('{"type": "free", "rank": "two"}')
    except fr.FrobeniusError as e:
        assert "$.rank" in str(e)
    else:
        raise AssertionError("bad descriptor accepted")
    try:
        fr.Monoid.adjoin_root(n, 1, 2)
    except fr.FrobeniusError:
        pass
    else:
        raise AssertionError("irreducible root accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
