"""Builds the extension module, imports it and runs the whole toolkit once.

Usage: python3 python/smoke_test.py
"""

import importlib
import json
import math
import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build(dest: pathlib.Path) -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "bookpop-python"], cwd=ROOT, check=True
    )
    lib = ROOT / "target" / "release" / "libbookpop_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(lib, dest / f"bookpop_py{suffix}")


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        build(tmp)
        sys.path.insert(0, str(tmp))
        bp = importlib.import_module("bookpop_py")

        corpus = tmp / "corpus.jsonl"
        assert bp.synth(str(corpus), books_per_category=10, seed=3) == 200
        assert bp.validate(str(corpus)) == []

        columns, ids, rows, targets = bp.featurize(str(corpus))
        assert len(columns) == 26 and len(ids) == len(rows) == len(targets) == 200

        ranked = bp.rank(str(corpus), seed=3)
        assert len(ranked) == 26
        assert all(a[1] >= b[1] for a, b in zip(ranked, ranked[1:]))

        report = json.loads(bp.eval_cv(str(corpus), selector="all", folds=5, seed=3))
        truth = [r["truth"] for r in report["rows"]]
        pred = [r["predicted"] for r in report["rows"]]
        assert math.isclose(bp.pearson_r(truth, pred), report["pearson_r"], abs_tol=1e-12)
        assert math.isclose(bp.rmse(truth, pred), report["rmse"], abs_tol=1e-12)

        topk = json.loads(bp.eval_topk(str(corpus), seed=3))
        assert [r["unit"] for r in topk][0] == "top 3"
        assert len(json.loads(bp.eval_category(str(corpus), seed=3))) == 20

        try:
            bp.eval_cv(str(corpus), selector="bogus")
        except ValueError:
            pass
        else:
            raise AssertionError("bad selector accepted")

        print(f"ok: cv r={report['pearson_r']:.3f} rmse={report['rmse']:.3f}; top feature {ranked[0][0]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
