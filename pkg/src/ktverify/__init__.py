"""Exact Racah polynomials, Racah coefficients and the |4F3| <= 1 bound."""
from .exact import DomainError, FactoredRational, HalfInt, Surd, SurdSum, factored_factorial, sqrt_to_surd
from .hyper import HypParams, WhippleRoles, eval_4f3_unit, pochhammer, termination_index, whipple_transform
from .intersection import IntersectionTensor, b_matrix, b_star_matrix, p_tensor, structure_check
from .leonard import RacahSystem, build_system, matrix_a, matrix_a_star, matrix_p, orthogonality_check, u_table, v_table
from .matrix import RationalMatrix
from .racah import be_residual, is_admissible, racah_w, triangle_delta_sq, w_quarter_closed
from .verify import SampleSpec, VerificationReport

__version__ = "0.1.0"
