#!/usr/bin/env python3
"""Smoke test for the arithlab_py extension module.

Build the module first:

    cargo build -p arithlab-py --release

then run:

    python3 python/smoke_test.py

The script locates the compiled cdylib under target/, exposes it as an
importable module, and checks a handful of known values end to end.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_library():
    names = ["libarithlab_py.so", "libarithlab_py.dylib", "arithlab_py.dll"]
    candidates = []
    for profile in ("release", "debug"):
        for name in names:
            p = ROOT / "target" / profile / name
            if p.is_file():
                candidates.append(p)
    if not candidates:
        sys.exit(
            "compiled module not found; run `cargo build -p arithlab-py --release` first"
        )
    return max(candidates, key=lambda p: p.stat().st_mtime)


def import_module():
    lib = locate_library()
    staging = pathlib.Path(tempfile.mkdtemp(prefix="arithlab-py-"))
    suffix = ".so" if lib.suffix != ".dll" else ".pyd"
    shutil.copy2(lib, staging / f"arithlab_py{suffix}")
    sys.path.insert(0, str(staging))
    import arithlab_py

    return arithlab_py


def main():
    m = import_module()
    checks = 0

    def check(label, cond):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL: {label}")
        checks += 1
        print(f"  ok: {label}")

    # parser round trip
    check("parser", m.parse_ratfunc("(z^2 - 1)/(z - 1)") == "z + 1")

    # Wilson obstruction at p = 5: corner of A_5 is -z^{-5} = 4/z^5
    out = json.loads(m.p_curvature("[[0, 1/z],[0, 0]]", 5))
    check("wilson status", out["status"] == "nonzero")
    check("wilson corner", out["matrix"][0][1] == "(4)/(z^5)")

    # rank-one algebraic system: all-zero scan
    scan = json.loads(m.scan_p_curvatures("[[1/z]]", 50))
    check("rank-one scan", scan["counts"]["nonzero"] == 0)

    # fundamental matrix for y' = y/(z-1) at p = 5 is 1 - z
    y = m.cartier_solve("[[1/(z-1)]]", 5)
    check("cartier solve", y == [["4*z + 1"]])

    # hypergeometric companion matrix entry
    hg = m.hypergeometric_matrix("1/4", "-1/4", "1/2")
    check("hypergeometric", hg[1][0] == "(1/16)/(z^2 - z)")

    # Cartier classification
    check("form log-exact", m.classify_form("1/z", 7) == "log-exact")
    check("form exact", m.classify_form("2*z", 7) == "exact")
    check("form neither", m.classify_form("z^4", 5) == "neither")

    # lattice slopes on the hexagonal Gram
    slopes = json.loads(m.lattice_slopes(json.dumps([[2, -1], [-1, 2]])))
    check("lattice degree", slopes["degree"]["det_exact"] == "3")
    check("mu_max upper", slopes["mu_max"]["upper"] == 0.0)

    # Minkowski short vector on Z^2
    mink = json.loads(m.minkowski_short_vector(json.dumps([[1, 0], [0, 1]])))
    check("minkowski", mink["norm2_exact"] == "1")

    # Siegel solver on (1, 1, 1)
    siegel = json.loads(m.siegel_solve([[1, 1, 1]]))
    check("siegel ell_inf", siegel["ell_inf"] == "1")
    check("siegel within classical", siegel["within_classical"] is True)

    # Catalan branch expansion and detection round trip
    catalan = m.expand_branch([[1], [-1], [0, 1]], "1", 20)
    check("catalan expansion", catalan[:6] == ["1", "1", "2", "5", "14", "42"])
    check("catalan relation", m.detect_algebraic(catalan, 1, 2) == "X*Y^2 - Y + 1")
    check("catalan not rational", m.detect_rational(catalan, 3) is None)

    # rational detection
    geo = ["1"] + ["2"] * 10
    check("rational detection", m.detect_rational(geo, 1) == "(x + 1)/(-x + 1)")

    # Eisenstein constant of sqrt(1+x)
    sqrt_series = m.expand_branch([[-1, -1], [0], [1]], "1", 50)
    eis = json.loads(m.eisenstein(sqrt_series))
    check("eisenstein A = 4", eis["a"] == "4")

    # invariants of an integer series: finite-place rho vanishes
    inv = json.loads(m.invariants(catalan, [2, 3]))
    check("integer series rho_2 = 0", inv["places"][0]["rho_prefix"] == 0.0)

    # Borel-Dwork on the geometric series with a meromorphic radius hint
    bd = json.loads(m.borel_dwork(["1"] * 13, 10.0))
    check("borel-dwork prediction", "rational" in bd["prediction"])

    # Kronecker density of x - 3 is exactly 1
    kr = json.loads(m.kronecker_scan("x - 3", 100))
    check("kronecker verdict", kr["verdict"] == "rational-consistent")

    # elliptic point counts and Hasse congruence
    check("point count", m.ec_count_points([0, 0, 0, 0, 1], 5) == 6)
    check("hasse", m.hasse_invariant([0, 0, 0, -1, 0], 5) == (3, 8))
    iso = json.loads(m.isogeny_scan([0, -1, 1, -10, -20], [0, -1, 1, 0, 0], 100))
    check("isogeny consistent", iso["first_mismatch"] is None)

    print(f"all {checks} smoke checks passed")


if __name__ == "__main__":
    main()
