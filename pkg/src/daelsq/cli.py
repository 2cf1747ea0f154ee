"""Command-line driver: single runs, parameter sweeps, experiment presets and
the node tables.  Output is CSV (default) or JSON with fixed columns.

    daelsq --example campbell_moore --interval 0 1 --N 5 --n 5
    daelsq --example index3_l0 --n 1 --sweep N=1:25 --basis rk:gle:monomial
    daelsq --table lebesgue
    daelsq --preset exp10 --json --out exp10.json
"""
import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .assembly import CollocationConfig, assemble, write_matrix_market
from .basis import BasisKind, BasisSpec
from .errors import AnsatzSolution, error_norms
from .lsq import DEFERRED_OMEGA, solve_deferred, solve_direct, solve_weighted
from .nodes import NodeKind, lebesgue_constant, make_nodes
from .problem import EXAMPLES, get_example, load_problem_file, uniform_partition
from .vandermonde import Functional, build_vandermonde, cond2

__all__ = ["RunSpec", "COLUMNS", "run", "sweep", "tables", "presets", "main"]

COLUMNS = ["example", "N", "n", "M", "nodes", "basis", "functional", "solver", "ordering",
           "omega", "alpha", "l2", "linf", "h1d", "residual_lsq", "residual_constraint",
           "iterations", "converged", "rank_deficient", "wall_time"]
NODE_CHOICES = [k.value for k in NodeKind if k is not NodeKind.Custom]
SOLVERS = ("direct", "weighted", "deferred")


@dataclass(frozen=True)
class RunSpec:
    example: str | None = "index3_l0"
    problem_file: str | None = None
    param: float | None = None
    interval: tuple[float, float] | None = None
    N: int = 5
    n: int = 1
    M: int | None = None
    nodes: str = "gle"
    basis: str = "legendre"
    functional: str = "R"
    solver: str = "direct"
    omega: float | None = None
    alpha: float = 1.0
    tol: float = 1e-15
    max_iter: int = 2
    ordering: str = "interleaved"
    norms: bool = True

    def __post_init__(self):
        # fail early, before any assembly
        if (self.example is None) == (self.problem_file is None):
            raise ValueError("give exactly one of example / problem_file")
        if self.example is not None and self.example not in EXAMPLES:
            raise ValueError(f"unknown example {self.example!r}; choose from {sorted(EXAMPLES)}")
        if self.N < 1 or self.n < 1:
            raise ValueError("N and n must be positive")
        if self.M is not None and self.M < self.N + 1:
            raise ValueError(f"M = {self.M} < N + 1 = {self.N + 1}")
        NodeKind(self.nodes)
        Functional(self.functional)
        parse_basis(self.basis, self.N)
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}")
        if self.omega is not None and self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.alpha <= 0 or self.tol <= 0 or self.max_iter < 1:
            raise ValueError("need alpha > 0, tol > 0, max_iter >= 1")
        if self.ordering not in ("interleaved", "constraints-first"):
            raise ValueError("ordering must be interleaved or constraints-first")

    @property
    def M_eff(self) -> int:
        return self.N + 1 if self.M is None else self.M

    def problem(self):
        if self.problem_file:
            return load_problem_file(self.problem_file)
        return get_example(self.example, self.param, self.interval)


def parse_basis(text: str, N: int) -> BasisSpec:
    """monomial | legendre | chebyshev | rk:<nodes>[:<representation>]"""
    parts = text.split(":")
    if parts[0] != "rk":
        if len(parts) != 1:
            raise ValueError(f"bad basis {text!r}")
        return BasisSpec(BasisKind(parts[0]), N)
    if len(parts) not in (2, 3):
        raise ValueError(f"bad basis {text!r}; use rk:<nodes>[:<representation>]")
    rep = parts[2] if len(parts) == 3 else "legendre"
    return BasisSpec(BasisKind.RungeKutta, N, NodeKind(parts[1]), BasisKind(rep))


def build_system(spec: RunSpec):
    pr = spec.problem()
    cfg = CollocationConfig(spec.M_eff, spec.nodes, spec.functional, spec.alpha)
    return assemble(pr, uniform_partition(pr, spec.n), parse_basis(spec.basis, spec.N), cfg)


def run(spec: RunSpec) -> dict:
    """Assemble, solve and measure one configuration."""
    t0 = time.perf_counter()
    system = build_system(spec)
    if spec.solver == "direct":
        rep = solve_direct(system)
    elif spec.solver == "weighted":
        rep = solve_weighted(system, 1.0 if spec.omega is None else spec.omega, spec.ordering)
    else:
        rep = solve_deferred(system, DEFERRED_OMEGA if spec.omega is None else spec.omega,
                             spec.tol, spec.max_iter, spec.ordering)
    wall = time.perf_counter() - t0
    row = {
        "example": spec.example or spec.problem_file, "N": spec.N, "n": spec.n,
        "M": spec.M_eff, "nodes": spec.nodes, "basis": spec.basis,
        "functional": spec.functional, "solver": spec.solver,
        "ordering": rep.ordering or "", "omega": rep.omega if rep.omega is not None else "",
        "alpha": spec.alpha, "l2": "", "linf": "", "h1d": "",
        "residual_lsq": rep.residual_lsq, "residual_constraint": rep.residual_constraint,
        "iterations": rep.iterations, "converged": rep.converged,
        "rank_deficient": rep.rank_deficient, "wall_time": round(wall, 6),
    }
    if spec.norms and system.problem.has_exact:
        row.update(error_norms(AnsatzSolution.from_system(system, rep.coefficients)))
    return row


def _convert(name: str, value: str):
    f = {f.name: f for f in fields(RunSpec)}.get(name)
    if f is None or name in ("problem_file", "interval", "norms"):
        raise ValueError(f"cannot sweep {name!r}")
    if name in ("N", "n", "M", "max_iter"):
        return int(value)
    if name in ("param", "omega", "alpha", "tol"):
        return float(value)
    return value


def parse_sweep(text: str) -> tuple[str, list]:
    """'name=v1,v2,...' or integer range 'name=a:b' (inclusive)."""
    if "=" not in text:
        raise ValueError("sweep must look like name=v1,v2,...")
    name, vals = text.split("=", 1)
    name = name.strip()
    if ":" in vals and name in ("N", "n", "M") and "," not in vals:
        a, b = vals.split(":")
        return name, list(range(int(a), int(b) + 1))
    return name, [_convert(name, v.strip()) for v in vals.split(",") if v.strip()]


def sweep(spec: RunSpec, vary: str, values, jobs: int = 1) -> list[dict]:
    """One row per value, in the order given."""
    specs = []
    for v in values:
        upd = {vary: _convert(vary, str(v)) if isinstance(v, str) else v}
        if vary == "N" and spec.M is not None:
            upd["M"] = None
        specs.append(replace(spec, **upd))
    return run_many(specs, jobs)


def run_many(specs, jobs: int = 1) -> list[dict]:
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(run, specs))  # map keeps input order
    return [run(s) for s in specs]


# ------------------------------------------------------------------ tables

_LEB_KINDS = [("C", "chebyshev"), ("L", "gle"), ("Lo", "lobatto"), ("R", "radau"),
              ("U", "uniform-closed"), ("O", "uniform-open")]
_COND_KINDS = [("GLe", "gle"), ("GR", "radau"), ("GLo", "lobatto"), ("Ch", "chebyshev"),
               ("cNC", "uniform-closed"), ("oNC", "uniform-open")]


def tables(which: str, Ms=None) -> list[dict]:
    """Lebesgue constants or cond2 of the scaled Vandermonde-like matrix."""
    if which == "lebesgue":
        Ms = Ms or (5, 10, 15, 20)
        return [{"M": M, **{lab: round(lebesgue_constant(make_nodes(k, M)), 3)
                            for lab, k in _LEB_KINDS}} for M in Ms]
    if which in ("vcond", "vandermonde_cond"):
        Ms = Ms or (5, 10, 20, 50, 100)
        return [{"M": M, **{lab: float(f"{cond2(build_vandermonde(make_nodes(k, M))):.3g}")
                            for lab, k in _COND_KINDS}} for M in Ms]
    raise ValueError("table must be lebesgue or vcond")


# ----------------------------------------------------------------- presets

_UNIT = (0.0, 1.0)  # published error tables for campbell_moore use t in [0, 1]
_CM = dict(example="campbell_moore", interval=_UNIT)


def presets() -> dict:
    """Experiment presets as lists of RunSpec (desk-scale: n <= 320, N <= 25)."""
    Ns = range(1, 26)
    ns = (5, 10, 20, 40, 80, 160, 320)
    omegas = [10.0 ** e for e in range(-9, 11)]
    alphas = [10.0 ** e for e in range(-10, 11)]
    rk_reps = ("rk:gle:monomial", "rk:gle:legendre", "rk:gle:chebyshev")
    rk_nodes = ("rk:uniform-open", "rk:gle", "rk:chebyshev")
    bases = ("rk:gle", "legendre", "chebyshev")

    def grid(base, **axes):
        out = [base]
        for k, vals in axes.items():
            out = [{**b, k: v} for b in out for v in vals]
        return [RunSpec(**b) for b in out]

    e41 = dict(example="index3_l0", n=1)
    e42 = dict(**_CM, n=1)
    cases12 = [(3, 320), (5, 80), (10, 5), (20, 5)]
    cases13 = [(4, 320), (5, 160), (10, 5), (20, 5)]
    return {
        "exp1": grid(e41, basis=rk_reps, N=Ns),
        "exp2": grid(e41, basis=rk_nodes, N=Ns),
        "exp3": grid(e41, basis=bases, N=Ns),
        "exp4": grid(e42, basis=rk_reps, N=Ns),
        "exp5": grid(e42, basis=rk_nodes, N=Ns),
        "exp6": grid(e42, basis=bases, N=Ns),
        "exp7": grid(dict(_CM), nodes=("gle", "radau", "lobatto"), N=(3, 5, 10, 20), n=ns)
        + grid(dict(_CM, functional="C"), nodes=("gle", "radau", "lobatto"),
               N=(3, 5, 10, 20), n=ns),
        "exp8": grid(dict(_CM, N=5, n=160), alpha=alphas)
        + grid(dict(_CM, N=20, n=20), alpha=alphas),
        "exp9": grid(dict(example="index4_bvp", N=5, n=20), alpha=alphas)
        + grid(dict(example="index4_bvp", N=20, n=5), alpha=alphas),
        "exp10": grid(dict(_CM, N=5, n=160, solver="weighted"), omega=omegas)
        + grid(dict(_CM, N=20, n=20, solver="weighted"), omega=omegas),
        "exp11": [RunSpec(**_CM, N=N, n=n, solver="deferred", omega=w)
                  for N, n in ((5, 160), (20, 20)) for w in (0.01, 10.0, DEFERRED_OMEGA)]
        + [RunSpec(example="index4_bvp", N=N, n=n, solver="deferred", omega=w)
           for N, n in ((5, 20), (20, 5)) for w in (0.01, 10.0, DEFERRED_OMEGA)],
        "exp12": [RunSpec(**_CM, N=N, n=n, basis=b, functional=f, solver=s)
                  for b in ("legendre", "chebyshev") for N, n in cases12
                  for f in ("R", "C") for s in SOLVERS],
        "exp13": [RunSpec(example="index4_bvp", N=N, n=n, basis=b, functional=f, solver=s)
                  for b in ("legendre", "chebyshev") for N, n in cases13
                  for f in ("R", "C") for s in SOLVERS],
    }


# -------------------------------------------------------------------- main

def _emit(rows: list[dict], as_json: bool, out, columns=None):
    if as_json:
        out.write(json.dumps(rows, indent=1, default=float) + "\n")
        return
    cols = columns or (list(rows[0]) if rows else COLUMNS)
    w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="daelsq", allow_abbrev=False,
                                description="Least-squares collocation for linear DAE BVPs.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--example", choices=sorted(EXAMPLES))
    src.add_argument("--problem-file", help="JSON problem description")
    p.add_argument("--param", type=float, help="example parameter (eta, rho or lambda)")
    p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"),
                   help="override the example's time interval")
    p.add_argument("--N", type=int, default=5, help="polynomial degree")
    p.add_argument("--n", type=int, default=1, help="number of subintervals")
    p.add_argument("--M", type=int, help="collocation nodes per interval (default N+1)")
    p.add_argument("--nodes", choices=NODE_CHOICES, default="gle")
    p.add_argument("--basis", default="legendre",
                   help="monomial | legendre | chebyshev | rk:<nodes>[:<representation>]")
    p.add_argument("--functional", choices=("C", "I", "R"), default="R")
    p.add_argument("--solver", choices=SOLVERS, default="direct")
    p.add_argument("--omega", type=float, help="constraint weight")
    p.add_argument("--alpha", type=float, default=1.0, help="boundary-condition weight")
    p.add_argument("--tol", type=float, default=1e-15, help="deferred-correction tolerance")
    p.add_argument("--max-iter", type=int, default=2)
    p.add_argument("--ordering", choices=("interleaved", "constraints-first"),
                   default="interleaved", help="row order of the weighted system")
    p.add_argument("--sweep", metavar="PARAM=V1,V2,...")
    p.add_argument("--table", choices=("lebesgue", "vcond"))
    p.add_argument("--preset", choices=[f"exp{i}" for i in range(1, 14)])
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--dump-system", metavar="PREFIX",
                   help="also write A, C, r as Matrix Market files")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="output file (default stdout)")
    return p


def main(argv=None) -> int:
    p = build_parser()
    a = p.parse_args(argv)
    try:
        if a.table:
            rows = tables(a.table)
        elif a.preset:
            rows = run_many(presets()[a.preset], a.jobs)
        else:
            example = a.example if a.problem_file is None else None
            if example is None and a.problem_file is None:
                example = "index3_l0"
            spec = RunSpec(example=example, problem_file=a.problem_file, param=a.param,
                           interval=tuple(a.interval) if a.interval else None,
                           N=a.N, n=a.n, M=a.M, nodes=a.nodes, basis=a.basis,
                           functional=a.functional, solver=a.solver, omega=a.omega,
                           alpha=a.alpha, tol=a.tol, max_iter=a.max_iter,
                           ordering=a.ordering)
            if a.dump_system:
                for path in write_matrix_market(build_system(spec), a.dump_system):
                    print(path, file=sys.stderr)
            if a.sweep:
                name, vals = parse_sweep(a.sweep)
                rows = sweep(spec, name, vals, a.jobs)
            else:
                rows = [run(spec)]
    except (ValueError, np.linalg.LinAlgError) as e:
        p.error(str(e))
    cols = None if a.table else COLUMNS
    if a.out:
        with open(a.out, "w", newline="") as fh:
            _emit(rows, a.json, fh, cols)
    else:
        buf = io.StringIO()
        _emit(rows, a.json, buf, cols)
        sys.stdout.write(buf.getvalue())
    return 0


if __name__ == "__main__":
    sys.exit(main())
