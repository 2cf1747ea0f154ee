"""Least-squares collocation for linear higher-index DAE boundary-value problems."""
from .assembly import CollocationConfig, DiscreteSystem, assemble, functional_value
from .basis import BasisKind, BasisSpec, eval_antiderivative_basis, eval_basis, scale_to_interval
from .errors import AnsatzSolution, convergence_order, error_norms, evaluate
from .kernels import BACKEND
from .lsq import Ordering, SolverReport, solve_deferred, solve_direct, solve_weighted
from .nodes import NodeKind, NodeSet, lebesgue_constant, make_nodes, nodal_poly_l2norm
from .orthopoly import Family, PolySeries, antiderivative_coeffs, clenshaw, eval_all
from .problem import (DaeProblem, Partition, example_campbell_moore, example_index3_l0,
                      example_index4_bvp, get_example, load_problem_file, uniform_partition)
from .vandermonde import Functional, build_vandermonde, cond2, mass_factor, mass_matrix

__version__ = "0.1.0"
