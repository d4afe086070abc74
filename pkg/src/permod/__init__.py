"""permod: membership decisions with certificates in finitely generated
order-invariant submodules of permutation modules over the rationals.
"""

from permod.decide import (
    CharacterCert,
    CyclicResult,
    Decision,
    ExplicitWitness,
    FunctionalCert,
    SpanWitnessCert,
    VerificationError,
    cyclic_generator,
    generates_all,
    membership,
    min_support,
    reduct_membership,
    verify_certificate,
)
from permod.kernels import BACKEND as KERNEL_BACKEND
from permod.oracle import (
    Grid,
    Instance,
    InstanceProfile,
    OracleResult,
    grid_span,
    oracle_membership,
    random_instance,
)
from permod.pmod import (
    AugVector,
    ModVector,
    act,
    is_aug_zero,
    omega,
    omega_empty,
    orbit_reps_over,
    support_points,
)
from permod.ring import GF, QQ, ZZ, CharacterQZ, ExactMatrix, RingError, RingSpec
from permod.structure import (
    DLO,
    DenseLinearOrder,
    ParamSet,
    PatternKey,
    Placement,
    ReductSpec,
    StructureOracle,
)

__version__ = "0.1.0"
