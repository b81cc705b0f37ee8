"""Builds the extension if needed, imports it from a scratch directory and checks a few values."""

import json
import os
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library():
    for profile in ("release", "debug"):
        for name in ("libcubic_fjrw.so", "libcubic_fjrw.dylib", "cubic_fjrw.dll"):
            p = ROOT / "target" / profile / name
            if p.exists():
                return p
    return None


def load():
    lib = locate_library()
    if lib is None:
        subprocess.run(["cargo", "build", "-p", "cubic-fjrw-py"], cwd=ROOT, check=True)
        lib = locate_library()
    scratch = tempfile.mkdtemp()
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, os.path.join(scratch, "cubic_fjrw" + suffix))
    sys.path.insert(0, scratch)
    import cubic_fjrw

    return cubic_fjrw


def main():
    m = load()
    assert m.theta_three_spin() == Fraction(1, 108)
    assert m.theta_msp() == Fraction(1, 108)
    print("theta, both methods:", m.theta_three_spin(), m.theta_msp())
    print("maximal group:", m.theta_max_group())

    d_irr, d02, d03 = (m.M13Class.generator(n) for n in ("d_irr", "d02", "d03"))
    assert (d_irr * d02 * d03).degree() == Fraction(3, 2)
    assert (d_irr * d_irr * d02).degree() == 0

    v = m.WClass.virtual_class()
    assert str(v.push()) == "-1/36*d_irr - 1/3*d02 - 1/3*d03"
    assert (v ** 3).degree() == Fraction(1, 108)
    assert m.st(d03) == m.WClass.generator("D03").scale("3")

    assert m.eval_expr("deg(push(virt()^3))") == Fraction(1, 108)
    assert m.eval_expr("push(virt())") == "-1/36*d_irr - 1/3*d02 - 1/3*d03"
    try:
        m.eval_expr("d02 +")
    except ValueError as e:
        print("parse error as expected:", e)
    else:
        raise AssertionError("parse error not raised")

    totals = [t for _, _, t in m.table2()]
    assert totals[6] == Fraction(1, 72)
    assert [t for _, _, t in m.table3()][-1] == -48

    graphs = m.graphs()
    assert len(graphs) == 8
    for g in graphs:
        print(" ", g, g.contribution())
    assert graphs[4].contribution() == "-1/108"

    report = json.loads(m.report_json())
    assert report["agree"] is True
    assert report["msp"]["partial_sum"] == "1/648"
    assert m.theta_three_spin(m.tables_json()) == Fraction(1, 108)
    print("ok")


if __name__ == "__main__":
    main()
