from .admissible import (AdmissibleQuadruple, AssociatedTriple, GreenbergConstants,
                         combine_admissible_components, combine_admissible_smooth,
                         empty_variety_quadruple, greenberg_constants)
from .newton import (ApproxSolution, PolySystem, best_minor, jacobian_residual, smooth_lift)
from .residue import ResidueSolutions, default_residue_solver, univariate_roots
from .roots import PuiseuxRoot, RootSearch, puiseux_roots
from .solve import SolveReport, solve_in_R_infty
from .certify import CertificationReport, SampleOutcome, certify_triple

__all__ = [
    "AdmissibleQuadruple", "AssociatedTriple", "GreenbergConstants", "combine_admissible_components",
    "combine_admissible_smooth", "empty_variety_quadruple", "greenberg_constants",
    "ApproxSolution", "PolySystem", "best_minor", "jacobian_residual", "smooth_lift",
    "ResidueSolutions", "default_residue_solver", "univariate_roots",
    "PuiseuxRoot", "RootSearch", "puiseux_roots", "SolveReport", "solve_in_R_infty",
    "CertificationReport", "SampleOutcome", "certify_triple",
]
