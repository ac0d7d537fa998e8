"""Lipschitz-free norms on finite metric spaces, the tree metric rho, and
truncated reduction builders, with a verification engine.

Kernels (``lipfree.kernels``) run compiled when the Cython extension is
built and fall back to pure Python otherwise.
"""
from .errors import CheckFailed, InputError, LipfreeError
from .freenorm import MassVector, NormCertificate, free_norm, free_norm_dual, free_norm_flow, xi_map
from .lipschitz import LipFunction, lip_constant, mcshane_extend
from .metric import (PointedMetric, concavity_gap, min_separation, restrict, separated_set_size,
                     validate)
from .reductions import (BallC0, DenseSample, ExplicitSample, ReductionSpec, SetSpec,
                         branch_indices, build_compactness, build_generic_delta, build_thm1,
                         build_thm2, containing_metric, p_member)
from .suites import SuiteReport, run_suite
from .trees import FinTree, canonical_enum, chains, is_tree, meet, omega_embed, rank, rho

__version__ = "0.1.0"
