"""Exact intersection-lattice calculator for log K3 surfaces of type II."""

from .boundary import (
    BoundaryError,
    Circular,
    Elliptic,
    LogSurfacePair,
    Nodal,
    Realization,
    format_shape,
    free_realization,
    make_circular,
    validate_pair,
)
from .classify import (
    a1_abundance,
    b2_fails_on_model,
    enumerate_types,
    fig2_witness,
    hodge_obstruction,
    normalize,
)
from .grouparith import FiniteGroupModel, MarkedPoint, find_marked_point, verify_marked_point
from .iitaka import (
    IitakaType,
    build_counterexample,
    build_model,
    cyclic_quotient_invariants,
    iitaka_classes_for,
)
from .lattice import (
    IntersectionLattice,
    LatticeError,
    blowup_lattice,
    contract_lattice,
    is_negative_definite,
    kernel_dim,
    pairing,
    signature,
)
from .surgery import (
    CanonicalBlowdown,
    CanonicalBlowup,
    HalfPointAttach,
    Pivot,
    SurgeryError,
    canonical_blowdown,
    canonical_blowup,
    half_point_attach,
    pivot,
    proper_transform,
    run_script,
)

__version__ = "0.1.0"
