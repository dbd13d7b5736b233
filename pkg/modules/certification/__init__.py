# modules/certification/__init__.py

from .jordan_chains import JordanCertificate, jordan_certificate, jordan_matrix, transition_residual
from .metric_operator import MetricCertificate, metric_certificate
from .multiplicity import geometric_multiplicity, numerical_rank
from .splitting_probe import ClusterExponent, perturbation_matrix, splitting_exponent

__all__ = [
    "ClusterExponent",
    "JordanCertificate",
    "MetricCertificate",
    "geometric_multiplicity",
    "jordan_certificate",
    "jordan_matrix",
    "metric_certificate",
    "numerical_rank",
    "perturbation_matrix",
    "splitting_exponent",
    "transition_residual",
]
