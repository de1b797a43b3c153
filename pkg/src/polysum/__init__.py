"""Constructive representations of naturals by generalized polygonal sums.

The package proves-by-witness: for the supported universal sums it
builds, for every n, explicit indices together with a machine-checkable
certificate of the full derivation chain, and it can exhaustively probe
universality claims at desk scale.
"""

from .errors import CertificateError, PipelineFailure, SearchExhausted
from .polygonal import PolygonalKind, square_complete
from .ternary import (
    COPRIME3,
    COPRIME6,
    Constraint,
    DiagonalForm,
    ODD,
    Representation,
    UNCONSTRAINED,
    dickson_member,
    excluded_set_bruteforce,
    represent,
    residue_set,
    three_squares_odd,
)
from .transforms import (
    RewriteStep,
    coprime3_rewrite_x2_2y2,
    five_split,
    identity21_apply,
    jacobi_split,
    lemma21_rewrite,
    lemma22_rewrite,
)
from .sums import ReductionTarget, SumForm, decode_index, parse_sum, reduction_for_sum
from .pipelines import (
    PENTAGONAL_PAIRS,
    SUPPORTED_SUMS,
    reduce_pentagonal,
    witness_3p3p5p7,
    witness_for_sum,
    witness_p3p5p11,
    witness_theorem11,
)
from .certify import Certificate, VerifyResult, from_json, roundtrip, to_json, verify
from .universality import (
    CONJECTURE10_PAIRS,
    KNOWN_UNIVERSAL_PAIRS,
    ScanReport,
    THEOREM10_PAIRS,
    check_range,
    conjecture10_check,
    find_counterexample,
    theorem10_filter,
)

__version__ = "0.1.0"
