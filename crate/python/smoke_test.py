#!/usr/bin/env python3
"""Smoke test for the capcolor_py extension module.

Copies the built cdylib next to a temp directory under the importable name
and exercises the main entry points. Run `cargo build -p capcolor-py` first.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_module():
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libcapcolor_py.so"
        if built.exists():
            tmp = Path(tempfile.mkdtemp(prefix="capcolor-py-"))
            shutil.copy(built, tmp / "capcolor_py.so")
            sys.path.insert(0, str(tmp))
            import capcolor_py

            return capcolor_py
    raise SystemExit("build the extension first: cargo build -p capcolor-py")


def main():
    cc = import_module()

    c5 = cc.cycle(5)
    assert repr(c5) == "Graph(n=5, m=5)"
    report = cc.color(c5)
    assert report["colors_used"] == 3, report
    assert report["bound"] == 3
    assert cc.verify_coloring(c5, report["colors"], report["colors_used"])

    haj = cc.hajos()
    assert cc.exact_chromatic_number(haj) == 4
    assert cc.exact_clique_number(haj) == 3
    assert cc.color(haj, mode="strict")["colors_used"] == 4
    assert cc.classify(haj)["in_class"]

    c6 = cc.cycle(6)
    verdict = cc.classify(c6)
    assert not verdict["in_class"]
    assert len(verdict["even_hole"]) == 6
    try:
        cc.color(c6, mode="strict")
    except RuntimeError as e:
        assert "even hole" in str(e)
    else:
        raise AssertionError("strict mode accepted C6")

    g1 = cc.gk(1)
    assert g1.n == 10 and cc.exact_clique_number(g1) == 4
    assert g1.write_dimacs() == cc.blowup(cc.cycle(5), [2] * 5).write_dimacs()

    chordal = cc.random_chordal(60, seed=3)
    peo = cc.chordal_peo(chordal)
    assert peo is not None and len(peo) == 60
    rep = cc.color(chordal)
    assert rep["omega_exact"] and rep["colors_used"] == rep["omega"]

    roundtrip = cc.Graph.parse_dimacs(chordal.write_dimacs())
    assert roundtrip.write_dimacs() == chordal.write_dimacs()

    bowtie = cc.Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    assert sorted(map(sorted, cc.atoms(bowtie))) == [[0, 1, 2], [2, 3, 4]]

    colors, k = cc.beta_greedy(cc.complete(4))
    assert k == 4 and sorted(colors) == [0, 1, 2, 3]

    print(json.dumps({"smoke_test": "ok"}))


if __name__ == "__main__":
    main()
