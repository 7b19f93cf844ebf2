"""Taylor approximation of smooth functions on the cube and the unit-volume ball."""

from .approximate import ApproximationPlan, approximate, plan, select_order_ball, select_order_cube
from .errors import (
    CertificateError,
    DomainError,
    InfeasibleStepError,
    MissingOracleError,
    OrderExceededError,
    ResourceLimitError,
    UnknownFunctionError,
)
from .funcspace import ClassCertificate, Domain, SmoothFunction, get_function, registry, unit_volume_radius
from .l1_spherical import l1_bound, mc_l1_error, select_order_l1, sphere_average
from .multiindex import count, enumerate_indices, rank, unrank
from .sampling_fd import build_from_samples, default_step, mixed_forward_difference, sample
from .taylor import TaylorModel, build_from_oracle
from .tractability import build_report, classify, cost_ball, cost_cube, log_count, qpt_fit, wt_diagonal
from .verify import certificate_check, fd_convergence, sup_error

__version__ = "0.1.0"
