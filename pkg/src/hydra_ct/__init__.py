"""Free-by-cyclic groups, Cayley-ball geometry and Cannon-Thurston
experiments for the hydra groups G_k and Gamma_k."""

__version__ = "0.1.0"

from .errors import (AlphabetMismatch, BudgetExceeded, ConfigError, ContractError,  # noqa: E402
                     CoverageError, HydraError, HypothesisError, NotAnAutomorphism,
                     ParseError, StabilizationError)
from .words import Alphabet, FreeGroup, Word, serialize  # noqa: E402
from .automorphisms import (Automorphism, GeneratorMap, HydraConfig, hydra_phi,  # noqa: E402
                            hydra_theta)
from .free_by_cyclic import (Element, FcGroup, SubgroupBasis, hydra_g,  # noqa: E402
                             hydra_h_basis, hydra_lambda_basis)
from .cayley import BallIndex, WordMetric, enumerate_ball, estimate_delta  # noqa: E402
from .distortion import ackermann, distortion_table  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = [
    "AlphabetMismatch", "BudgetExceeded", "ConfigError", "ContractError", "CoverageError",
    "HydraError", "HypothesisError", "NotAnAutomorphism", "ParseError", "StabilizationError",
    "Alphabet", "FreeGroup", "Word", "serialize",
    "Automorphism", "GeneratorMap", "HydraConfig", "hydra_phi", "hydra_theta",
    "Element", "FcGroup", "SubgroupBasis", "hydra_g", "hydra_h_basis", "hydra_lambda_basis",
    "BallIndex", "WordMetric", "enumerate_ball", "estimate_delta",
    "ackermann", "distortion_table", "BACKEND", "__version__",
]
