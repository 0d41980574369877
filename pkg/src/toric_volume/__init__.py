"""Exact intersection theory and volume calculus for toric weighted blow-ups
of a smooth surface germ, with certificates of iterated accumulation."""

from .accumulation import AccumulationCertificate, build_chain, sample_values, verify_certificate
from .blowup_chain import FactorizationStep, chain_multiplicities, factorize
from .germ import REFERENCE_GERM, GermParams, compute_a0, load_germ, log_discrepancy, validate_germ
from .intersection import (
    UNDEFINED,
    IntersectionMatrix,
    adjacent_intersection,
    intersection_matrix,
    pullback_b1,
    self_intersection,
    verify_linear_relations,
)
from .lattice_fan import Cone2D, LatticeVector, WeightSequence, build_fan, cone_multiplicity, is_primitive
from .snp import SnpVerdict, check_membership, extend, q_threshold, raise_tail, seed, truncate
from .volume import (
    VolumeReport,
    f_value,
    lift_to_dimension,
    nef_pairing,
    tail_increment,
    volume_via_intersection,
    volume_z,
)

__version__ = "0.1.0"
