"""Builds the extension module with cargo and exercises it from Python.

Usage: python3 python/smoke_test.py [--no-build]
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "kiselman-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    return locate()


def locate() -> Path:
    for name in ("libpykiselman.so", "libpykiselman.dylib", "pykiselman.dll"):
        lib = ROOT / "target" / "release" / name
        if lib.exists():
            return lib
    sys.exit("extension library not found; build it first")


def load(lib: Path):
    dest = Path(tempfile.mkdtemp(prefix="pykiselman-"))
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, dest / f"pykiselman{suffix}")
    sys.path.insert(0, str(dest))
    import pykiselman

    return pykiselman


def main() -> None:
    lib = locate() if "--no-build" in sys.argv else build()
    k = load(lib)

    k2 = k.KiselmanMonoid(2)
    assert k2.normal_form([1, 2, 1]) == [2, 1]
    assert k2.normal_form([1, 1]) == [1]
    assert k2.elements() == [[], [1], [2], [1, 2], [2, 1]]
    assert len(k2.rules()) == 4 and k2.unresolved_critical_pairs() == 0

    k3 = k.KiselmanMonoid(3)
    elements = k3.elements()
    assert len(elements) == 18
    assert sum(k3.is_idempotent(w) for w in elements) == 8
    assert k3.idempotent([1, 3]) == [3, 1]
    a, b, c = k3.tfae_check([1], [2])
    assert a == b == c

    x = k.SetSequence([[1, 2], [2]])
    unit = k.SetSequence.unit(2)
    assert x.is_monotone() and x * unit == x and unit.star(x) == x
    assert not k.SetSequence([[2], [1]]).is_monotone()
    assert len(k.monotone_sequences(3)) == 330

    m = k.psi(x)
    assert m.rows() == [[1, 0], [1, 1]] and m.avoids_pattern()
    assert k.psi_inv(m) == x
    assert k.BoolMatrix.identity(2) @ m == m
    assert not k.BoolMatrix([[0, 1], [1, 0]]).avoids_pattern()
    assert k.count_dn(3) == 330
    assert k.find_units(3) == [k.BoolMatrix.identity(3)]

    ends = k.brute_force_endomorphisms(k3)
    assert len(ends) == 330
    f = k.Endomorphism.from_sequence(x)
    assert f.images() == [[1, 2], [2]]
    assert f.apply(k2, [1]) == [2, 1]
    assert f.compose(k.Endomorphism.identity(2)) == f
    assert f.phi() == x and f.to_matrix() == m

    assert k.closed_count(2, 2) == 15
    assert k.closed_count(3, 1) == 8
    assert k.brute_count(3, 3) == 330
    assert k.closed_count(5, 40) > 2**64

    try:
        k.closed_count(7, 2)
    except k.KiselmanError:
        pass
    else:
        raise AssertionError("m = 7 should be rejected")

    report = json.loads(k.verify_report(2))
    assert all(check["passed"] for check in report["checks"])

    print("pykiselman smoke test passed")


if __name__ == "__main__":
    main()
