"""conelab: positive cone geometry on direct sums of matrix algebras."""

from .algebra import (
    AlgebraShape,
    Classification,
    Element,
    ElementClass,
    classify,
    diag,
    is_central,
    random_central,
    random_element,
    unit,
)
from .cone import (
    OrderVerdict,
    diamond_p,
    geometric_mean,
    loewner_leq,
    order_witness_from_norms,
    sequential_product,
    thompson_distance,
)
from .errors import (
    ConeLabError,
    DomainError,
    HarnessFailure,
    Inconclusive,
    InvalidRange,
    NoConvergence,
    NumericalHealthFailure,
    ParseError,
    ShapeMismatch,
    SingularError,
    UnsupportedElement,
    UsageError,
    WitnessNotFound,
)
from .io import element_io, load, save
from .jordan import (
    ConeMap,
    JordanIso,
    apply_cone_map,
    apply_jordan,
    extract_jordan_sandwich,
    extract_jordan_sqrt_congruence,
    random_jordan_iso,
    verify_jordan,
)
from .spectral import (
    PositiveProduct,
    func_calc,
    hermitian_eig,
    inf_dominance,
    op_norm,
    spectral_seminorm,
    spectrum_of_positive_product,
)
from .suites import Mutation, SuiteId, SuiteReport, mutate_and_expect_failure, run_suite
from .witnesses import (
    Witness,
    search_nonadditivity_witness,
    search_seminorm_gap_witness,
    search_squaring_witness,
)

__version__ = "0.1.0"
