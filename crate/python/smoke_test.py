"""Smoke test for the Python extension.

Builds the extension with cargo (unless LEAKY_AQUIFER_PY_LIB points at a
built library), loads it under its module name and exercises each binding.
"""

import cmath
import csv
import importlib.util
import io
import math
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def built_library():
    lib = os.environ.get("LEAKY_AQUIFER_PY_LIB")
    if lib:
        return pathlib.Path(lib)
    subprocess.run(
        ["cargo", "build", "--release", "-p", "leaky-aquifer-py"],
        cwd=ROOT,
        check=True,
    )
    target = pathlib.Path(os.environ.get("CARGO_TARGET_DIR", ROOT / "target"))
    for name in ("libleaky_aquifer_py.so", "libleaky_aquifer_py.dylib", "leaky_aquifer_py.dll"):
        path = target / "release" / name
        if path.exists():
            return path
    sys.exit("built library not found under " + str(target))


def load(lib):
    tmp = pathlib.Path(tempfile.mkdtemp())
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    dest = tmp / ("leaky_aquifer_py" + suffix)
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("leaky_aquifer_py", dest)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def well_function(u):
    total, term = 0.0, 1.0
    for k in range(1, 200):
        term *= -u / k
        total += term / k
        if abs(term / k) < 1e-17 * abs(total):
            break
    return -0.5772156649015329 - math.log(u) - total


GROUPS = {
    "K_D": 1.0, "R_Kr": 0.01, "R_Kz": 0.01, "R_Ss": 0.01, "R_b": math.inf,
    "rw_b": 0.02, "C_wD": 100.0, "d_D": 0.0, "l_D": 0.6, "a_kD": 10.0,
    "a_cD": 10.0, "psi_aD": 0.0, "psi_kD": 0.0, "S_D": 1000.0, "L_D": math.inf,
}


def main():
    la = load(built_library())

    names = la.builtin_names()
    assert names == ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"], names

    theis = dict(GROUPS, d_D=0.0, l_D=1.0, C_wD=0.0, rw_b=1e-6, S_D=0.0,
                 R_Kr=0.0, R_Kz=0.0, water_table="instantaneous")
    times = [0.1, 1.0, 100.0]
    s = la.drawdown(theis, 1.0, 0.4, times)
    for t, v in zip(times, s):
        w = well_function(1.0 / (4.0 * t))
        assert abs(v - w) < 1e-6 * w, (t, v, w)

    below = la.laplace_drawdown(GROUPS, 0.5, 0.0, 0.3 + 0.1j, medium="aquitard")
    above = la.laplace_drawdown(GROUPS, 0.5, 0.0, 0.3 + 0.1j)
    assert cmath.isclose(below, above, rel_tol=1e-6), (below, above)

    avg = la.drawdown(GROUPS, 0.5, 0.1, [10.0], z_d2=0.4)
    assert avg[0] > 0.0

    cfg = la.builtin_config("fig2b")
    cfg = cfg.replace("log10_end = 6", "log10_end = 1")
    curves = la.run_scenario(cfg, cross_check=True)
    assert len(curves) == 2
    for c in curves:
        assert len(c["t_s"]) == 7
        assert set(c["flag"]) == {"converged"}, c["flag"]
        for sd, st in zip(c["s_D"], c["stehfest"]):
            assert abs(sd - st) <= 1e-3 * abs(st), (sd, st)
    leaky, closed = curves
    assert leaky["variant_key"] == "impermeable_base"
    assert leaky["s_D"][-1] < closed["s_D"][-1]

    rows = list(csv.reader(io.StringIO(la.scenario_csv(cfg))))
    assert rows[0][:3] == ["scenario_id", "variant_key", "variant_value"]
    assert len(rows) == 1 + 14

    report = la.convergence_report(cfg)
    assert "0 not converged" in report, report

    for bad in (lambda: la.builtin_config("fig10"),
                lambda: la.drawdown(dict(GROUPS, K_D=-1.0), 0.5, 0.25, [1.0]),
                lambda: la.drawdown({"K_D": 1.0}, 0.5, 0.25, [1.0]),
                lambda: la.run_scenario("id = \"x\"\nbogus = 1\n")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
