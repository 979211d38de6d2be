"""twistlab: exact verification of Drinfeld twists, r-matrices and dual brackets for sl(3)."""

from .scalars import S, Scalar, parse_scalar, render_scalar
from .liealg import BracketTable, LieElement, bracket, generator
from .bialg import cybe, dual_brackets, pencil_solve, wedge
from .reps import rep_by_name
from .uexpr import eval_expr, parse, render
from .twistcat import catalog, closed_form_R, get_dual_table, get_rmatrix, get_table, get_twist, involution
from .verify import Report, run_all

__version__ = "0.1.0"
