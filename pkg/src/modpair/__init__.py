"""Standard pairs on a discretized Schrödinger representation, with numerical
tests for half-sided modular inclusions."""
__version__ = "0.1.0"

from .numgrid import GridSpec, WaveFunction, fourier, inverse_fourier, inner_product, probe_family
from .phases import (BlaschkeProduct, BoundaryPhase, ConjugateOf, ExponentialFactor, MatrixPhase,
                     ProductOf, ScalingPhase, SinhPhase, TrivialPhase, inner_test, parse_phase)
from .inclusion import StandardPairModel, InclusionVerdict, check_inclusion, relative_phase

__all__ = [
    "GridSpec", "WaveFunction", "fourier", "inverse_fourier", "inner_product", "probe_family",
    "BoundaryPhase", "TrivialPhase", "BlaschkeProduct", "ExponentialFactor", "ScalingPhase",
    "SinhPhase", "ConjugateOf", "ProductOf", "MatrixPhase", "inner_test", "parse_phase",
    "StandardPairModel", "InclusionVerdict", "check_inclusion", "relative_phase",
]
