"""
Engine constants and configuration

This module contains the constants shared by the engine and the CLI:
- Numeric tolerances and sampling defaults for the verification oracles
- Metric sampling bounds
- Report schema version and stable report keys
- CLI exit codes and suite names
"""
from typing import Dict, List, Tuple

# =================== Verification Defaults ===================
DEFAULT_SAMPLES = 20
DEFAULT_TOL = 1e-9
STRICT_TOL = 1e-12
DEFAULT_SEED = 7

# Central finite differences
FD_STEP = 1e-5
FD_REL_TOL = 1e-6
FD_SAMPLES = 50

# Flow finite differences (Lie derivative, prolonged automorphisms)
FLOW_STEP = 1e-5
FLOW_TOL = 1e-6

# =================== Sampling ===================
# Multivelocities, jet parameters and free symbols are drawn from [-1, 1]
SAMPLE_LOW = -1.0
SAMPLE_HIGH = 1.0

# Metrics are drawn as L^T eta L with cond(L) <= METRIC_COND_BOUND
METRIC_COND_BOUND = 10.0
METRIC_PERTURBATION = 0.3
MAX_SAMPLE_ATTEMPTS = 100

# Bound metric values must satisfy g . g^-1 = identity to this accuracy
METRIC_INVERSE_TOL = 1e-12

# =================== Conventions ===================
# Lorentzian signature (-, +, +, ...) for every Minkowski metric
MINKOWSKI_TIME_SIGN = -1

# Kinds of metric a theory may declare
METRIC_KINDS: List[str] = ["fixed", "parametric", "variational", "none"]

# =================== Reports ===================
REPORT_SCHEMA_VERSION = "1.0"

REPORT_KEYS: Tuple[str, ...] = (
    "multimomenta",
    "covariant_hamiltonian",
    "cartan_form",
    "euler_lagrange",
    "momentum_map",
    "noether_current",
    "divergence_residual",
    "vertical_transitivity",
    "check_results",
    "on_shell",
    "converse_equations",
)

# =================== CLI ===================
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

SUITES: List[str] = ["forms", "legendre", "noether", "bracket", "transitivity"]

# Shipped theory files, keyed by catalog id
SHIPPED_THEORIES: Dict[str, str] = {
    "relativistic_particle": "relativistic_particle.thy",
    "maxwell": "maxwell.thy",
    "maxwell_parametric": "maxwell_parametric.thy",
    "chern_simons": "chern_simons.thy",
    "polyakov": "polyakov.thy",
}
