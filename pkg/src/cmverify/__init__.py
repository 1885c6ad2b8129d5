"""Exact (co)homology, tower limits and a cohomology-manifold classifier.

Modules:

* ``abelian``       integer matrices, Smith normal form, f.g. abelian groups
* ``chaincomplex``  chain complexes, homology with coefficients, lens spaces
* ``tower``         inverse/direct systems: lim, lim^1, colim, Mittag-Leffler
* ``exactseq``      deduction over exact sequences with a replayable trace
* ``solenoid``      cohomology tables for the quotient of S^3 by a solenoid
* ``verdict``       the cm/hm classification per coefficient ring
* ``cli``           the ``cmverify`` command
"""

from .abelian import (
    INTEGERS,
    RATIONALS,
    CoefficientRing,
    FgAbGroup,
    IntMatrix,
    Mod,
    SymbolicGroup,
    group_from_relations,
    kernel_cokernel,
    smith_normal_form,
)
from .chaincomplex import (
    ChainComplex,
    GradedGroupTable,
    cohomology_with_coefficients,
    homology_with_coefficients,
    integral_homology,
    lens_complex,
    suspension_homology,
)
from .exactseq import ExactSequence, InconsistencyError, deduce, replay
from .primes import MultiplierSequence, PrimeSet
from .solenoid import (
    SolenoidModel,
    clc_report,
    complement_cohomology,
    local_cohomology_at_wild_point,
    pair_tower,
    quotient_pair_cohomology,
)
from .tower import Tower, colim, lim, lim_one, mittag_leffler, truncated_limits_oracle
from .verdict import ClassificationVerdict, classify

__version__ = "0.1.0"

__all__ = [
    "INTEGERS", "RATIONALS", "CoefficientRing", "FgAbGroup", "IntMatrix", "Mod", "SymbolicGroup",
    "group_from_relations", "kernel_cokernel", "smith_normal_form",
    "ChainComplex", "GradedGroupTable", "cohomology_with_coefficients", "homology_with_coefficients",
    "integral_homology", "lens_complex", "suspension_homology",
    "ExactSequence", "InconsistencyError", "deduce", "replay",
    "MultiplierSequence", "PrimeSet",
    "SolenoidModel", "clc_report", "complement_cohomology", "local_cohomology_at_wild_point",
    "pair_tower", "quotient_pair_cohomology",
    "Tower", "colim", "lim", "lim_one", "mittag_leffler", "truncated_limits_oracle",
    "ClassificationVerdict", "classify",
]
