"""Hurwitz zeta, generalized Bernoulli function and hyperbolic distributions.

The package evaluates the Hurwitz zeta function and the moment functions of
the hyperbolic sinh/cosh/tanh laws, and certifies the identities that relate
them by computing both sides independently.
"""

from hyperzeta.errors import (
    ConvergenceError,
    DomainError,
    HyperzetaError,
    PoleError,
    SingularityError,
)
from hyperzeta.distributions import (
    DistributionSpec,
    Family,
    Scale,
    cdf,
    cf,
    complex_moment,
    cosh_law,
    pdf,
    sample,
    sinh_law,
    tanh_law,
)
from hyperzeta.harness import REGISTRY, run_check, run_suite
from hyperzeta.moments import (
    Kind,
    MomentFunctionKind,
    closed_form_value,
    gen_bernoulli,
    integral_value,
    series_value,
    zeta_u2_representation,
)
from hyperzeta.numerics import (
    bernoulli_number,
    complex_pow_principal,
    log_gamma_complex,
)
from hyperzeta.zeta import (
    alternating_hurwitz_zeta,
    dirichlet_beta,
    dirichlet_eta,
    gen_bernoulli_functional,
    hurwitz_zeta,
    riemann_zeta,
)

__version__ = "0.1.0"

__all__ = [
    "REGISTRY",
    "ConvergenceError",
    "DistributionSpec",
    "DomainError",
    "Family",
    "HyperzetaError",
    "Kind",
    "MomentFunctionKind",
    "PoleError",
    "Scale",
    "SingularityError",
    "alternating_hurwitz_zeta",
    "bernoulli_number",
    "cdf",
    "cf",
    "closed_form_value",
    "complex_moment",
    "complex_pow_principal",
    "cosh_law",
    "dirichlet_beta",
    "dirichlet_eta",
    "gen_bernoulli",
    "gen_bernoulli_functional",
    "hurwitz_zeta",
    "integral_value",
    "log_gamma_complex",
    "pdf",
    "riemann_zeta",
    "run_check",
    "run_suite",
    "sample",
    "series_value",
    "sinh_law",
    "tanh_law",
    "zeta_u2_representation",
]
