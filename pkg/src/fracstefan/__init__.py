"""Two fractional Stefan problems (Caputo and Riemann-Liouville forms), the
Wright-function machinery behind their explicit self-similar solutions, and
verification sweeps showing the solutions differ for orders below 1 yet both
collapse onto the classical Stefan solution in the limit.

Modules
-------
specfun    Wright/Mainardi series and Gamma/error-function helpers
frcalc     product-integration oracle for fractional operators
equations  front-coefficient equations and the bracketed solver
stefan     the closed-form solutions, fluxes, fronts, residual checks
verify     batch sweeps emitting deterministic CSV/JSON reports
cli        the ``fracstefan`` command-line tool
"""

from .equations import (
    FrontCoefficient,
    RootKind,
    RootProblem,
    classical_residual,
    eta0_residual,
    eta_residual,
    solve,
    xi_residual,
    xi_residual_long,
)
from .errors import (
    ExtrapolationUnstableError,
    FracStefanError,
    InvalidParameterError,
    MaxIterationsError,
    NeedsMoreGridError,
    NoSignChangeError,
    NonConvergentError,
    OutOfDomainError,
    PoleError,
)
from .frcalc import SampledFunction, caputo_derivative, rl_derivative, rl_integral
from .specfun import (
    Alpha,
    SeriesAccuracy,
    SeriesValue,
    WrightEval,
    double_factorial,
    erf,
    erfc,
    gamma,
    log_gamma,
    mainardi,
    rgamma,
    wright,
)
from .stefan import (
    SelfSimilarSolution,
    SolutionKind,
    SpaceTimePoint,
    caputo_solution,
    classical_solution,
    pde_residual_caputo,
    riemann_liouville_solution,
    stefan_condition_residual_caputo,
    stefan_condition_residual_rl,
)
from .verify import (
    SweepReport,
    convergence_sweep,
    figure_data,
    limit_sweep,
    ordering_sweep,
)

__version__ = "0.1.0"
