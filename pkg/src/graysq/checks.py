"""The named verification checks, their registry, and report writing.

Every check id maps to one verifier with config-supplied default
parameters.  Reports are deterministic: artifacts never include timings,
so identical inputs give byte-identical files; timing is returned to the
caller for console display only.
"""

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import companion as comp_mod
from . import double as double_mod
from . import gray as gray_mod
from .config import Config
from .fincat import BudgetError
from .shapes import build_globular_sum


def _twocat_by_name(name):
    if name.startswith("T("):
        n, m = (int(v) for v in name[2:-1].split(","))
        return gray_mod.tensor_simplices(n, m)
    return build_globular_sum(name)


def _double_by_name(name):
    kind, rest = name.split("(", 1)
    C = build_globular_sum(rest.rstrip(")"))
    if kind == "Sq":
        return double_mod.squares(C)
    if kind == "V":
        return double_mod.inclusion(C, "v")
    if kind == "H":
        return double_mod.inclusion(C, "h")
    raise ValueError("unknown double-category spec: %r" % (name,))


def _run_square_colimit(params, budget):
    rep = gray_mod.verify_square_colimit()
    return rep["passed"], rep


def _run_quotient_prop(params, budget):
    details = {}
    ok = True
    for n, m in (tuple(s) for s in params["sizes"]):
        rep = gray_mod.verify_quotient_prop(n, m, budget=budget)
        details["%d,%d" % (n, m)] = rep
        ok = ok and rep["passed"]
    return ok, details


def _run_funny_equation(params, budget):
    n, m, k = params["params"]
    rep = gray_mod.verify_funny_equation(n, m, k, budget=budget)
    return rep["passed"], rep


def _run_crush_product(params, budget):
    details = {}
    ok = True
    for n, m, k in (tuple(s) for s in params["sizes"]):
        rep = gray_mod.verify_crush_product(n, m, k, budget=budget)
        details["%d,%d,%d" % (n, m, k)] = rep
        ok = ok and rep["passed"]
    return ok, details


def _run_step2(params, budget):
    rep = double_mod.verify_double_pushouts("step2", tuple(params["params"]), budget=budget)
    return rep["passed"], rep


def _run_step3(params, budget):
    rep = double_mod.verify_double_pushouts("step3", tuple(params["params"]), budget=budget)
    return rep["passed"], rep


def _run_duality(params, budget):
    details = {}
    ok = True
    for a, b in params["pairs"]:
        rep = gray_mod.verify_duality(a, b)
        details["%s,%s" % (a, b)] = rep
        ok = ok and rep["passed"]
    return ok, details


def _run_rigidity(params, budget):
    count = gray_mod.verify_rigidity(tuple(params["subsite"]), budget=budget)
    return count == params["expected"], {"count": count, "expected": params["expected"]}


def _run_triple_gaunt(params, budget):
    rep = gray_mod.verify_triple_gaunt(params["max_nm"], budget=budget)
    return rep["passed"], rep


def _run_adjunction_counts(params, budget):
    details = {}
    ok = True
    for cn in params["factors"]:
        for dn in params["factors"]:
            for en in params["targets"]:
                C, D = _twocat_by_name(cn), _twocat_by_name(dn)
                E = _twocat_by_name(en)
                rep = double_mod.verify_adjunction_counts(C, D, E, budget=budget)
                details["%s,%s,%s" % (cn, dn, en)] = [
                    rep["double_count"],
                    rep["tensor_count"],
                ]
                ok = ok and rep["passed"]
    return ok, details


def _run_uni_prop(side):
    def run(params, budget):
        C = build_globular_sum(params["C"])
        details = {}
        ok = True
        for tn in params["targets"]:
            Q = _double_by_name(tn)
            rep = comp_mod.verify_universal_property(C, Q, side, budget=budget)
            details[tn] = rep
            ok = ok and rep["passed"]
        return ok, details

    return run


def _run_comp_core(params, budget):
    rep = comp_mod.verify_comp_core(tuple(params["names"]))
    return rep["passed"], rep


def _run_cech(params, budget):
    rep = double_mod.verify_cech_squares(tuple(params["names"]), params["max_level"], budget=budget)
    return rep["passed"], rep


class _Check:
    def __init__(self, statement, run):
        self.statement = statement
        self.run = run


REGISTRY = {
    "square-colimit": _Check(
        "The free lax square is the levelwise colimit of its five-term representable diagram.",
        _run_square_colimit,
    ),
    "quotient-prop": _Check(
        "Crushing the columns or the rows of a simplex tensor yields pushout squares onto the globular sum.",
        _run_quotient_prop,
    ),
    "funny-equation": _Check(
        "The vertex-inclusion square presenting a globular sum tensored with a simplex is a pushout.",
        _run_funny_equation,
    ),
    "crush-product": _Check(
        "The comparison from the tensor to the cartesian product sits in crush pushout squares.",
        _run_crush_product,
    ),
    "step2": _Check(
        "The mixed square combining a vertex collapse with a cartesian factor is a pushout.",
        _run_step2,
    ),
    "step3": _Check(
        "Collapsing the free grid onto its globular sum against a vertical factor is a pushout of double categories.",
        _run_step3,
    ),
    "duality": _Check(
        "Reversing 1-cells or 2-cells of a tensor swaps and dualizes its factors.",
        _run_duality,
    ),
    "rigidity": _Check(
        "The tensor admits exactly one endomorphism family natural over the chosen shapes.",
        _run_rigidity,
    ),
    "triple-gaunt": _Check(
        "Iterated tensors of simplices are gaunt, including a triple tensor.",
        _run_triple_gaunt,
    ),
    "adjunction-counts": _Check(
        "Double functors from a horizontal-by-vertical product into lax squares match 2-functors out of the tensor.",
        _run_adjunction_counts,
    ),
    "uni-prop-vertical": _Check(
        "Restriction along the vertical embedding is injective with image the maps hitting companion-admitting verticals.",
        _run_uni_prop("vertical"),
    ),
    "uni-prop-horizontal": _Check(
        "Restriction along the horizontal embedding is injective with image the maps hitting companion horizontals.",
        _run_uni_prop("horizontal"),
    ),
    "comp-core-complete": _Check(
        "For squares of a gaunt 2-category the companion core is the whole double category.",
        _run_comp_core,
    ),
    "cech-equals-sq": _Check(
        "The directed nerve of the 1-skeleton inclusion coincides with the lax squares construction.",
        _run_cech,
    ),
}


def run_check(check_id, overrides=None, config=None):
    if check_id not in REGISTRY:
        raise ValueError("unknown check id: %r" % (check_id,))
    config = config or Config()
    params = config.check_params(check_id)
    params.update(overrides or {})
    start = time.perf_counter()
    try:
        passed, details = REGISTRY[check_id].run(params, config.budget())
        status = "pass" if passed else "fail"
    except BudgetError as exc:
        status = "inconclusive"
        details = {"reason": str(exc) or "enumeration budget exhausted"}
    seconds = time.perf_counter() - start
    return {
        "id": check_id,
        "status": status,
        "statement": REGISTRY[check_id].statement,
        "params": params,
        "details": details,
        "config_hash": config.hash(),
        "seconds": round(seconds, 3),
    }


def _worker(job):
    check_id, overrides, data = job
    return run_check(check_id, overrides=overrides, config=Config(data))


def run_all(parallel=False, config=None, only=None, overrides=None):
    config = config or Config()
    overrides = overrides or {}
    ids = sorted(REGISTRY)
    if only is not None:
        only = set(only)
        unknown = only - set(REGISTRY)
        if unknown:
            raise ValueError("unknown check ids: %s" % ", ".join(sorted(unknown)))
        ids = [i for i in ids if i in only]
    jobs = [(i, overrides.get(i), config.data) for i in ids]
    if parallel and len(jobs) > 1:
        workers = int(os.environ.get("GRAYSQ_WORKERS", "0")) or min(
            len(jobs), os.cpu_count() or 2
        )
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(job) for job in jobs]
    results.sort(key=lambda r: r["id"])
    counts = {
        s: sum(1 for r in results if r["status"] == s)
        for s in ("pass", "fail", "inconclusive")
    }
    return {
        "passed": counts["fail"] == 0 and counts["inconclusive"] == 0,
        "counts": counts,
        "config_hash": config.hash(),
        "results": results,
    }


def write_reports(summary, outdir):
    """report.csv plus one witness JSON per check and a status chart."""
    out = Path(outdir)
    (out / "witnesses").mkdir(parents=True, exist_ok=True)
    with open(out / "report.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "status", "config_hash", "params"])
        for r in summary["results"]:
            writer.writerow(
                [r["id"], r["status"], r["config_hash"], json.dumps(r["params"], sort_keys=True)]
            )
    for r in summary["results"]:
        doc = {k: v for k, v in r.items() if k != "seconds"}
        with open(out / "witnesses" / ("%s.json" % r["id"]), "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _render_summary(summary, out / "summary.png")
    return out / "report.csv"


def _render_summary(summary, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    results = summary["results"]
    colors = {"pass": "#2a9d4e", "fail": "#c0321e", "inconclusive": "#d9a321"}
    fig, ax = plt.subplots(figsize=(8, 0.42 * max(len(results), 1) + 1.4))
    ax.barh(
        range(len(results)),
        [1] * len(results),
        color=[colors[r["status"]] for r in results],
    )
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels([r["id"] for r in results])
    ax.invert_yaxis()
    ax.set_xticks([])
    for i, r in enumerate(results):
        ax.text(0.5, i, r["status"], ha="center", va="center", color="white")
    c = summary["counts"]
    ax.set_title(
        "%d pass / %d fail / %d inconclusive" % (c["pass"], c["fail"], c["inconclusive"])
    )
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
