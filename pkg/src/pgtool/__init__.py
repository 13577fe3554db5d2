"""Exact-arithmetic toolkit for quadratic embeddings of PG(n, q).

Finite fields with canonical moduli, projective geometry with reduced
bases, the degree-2 monomial (Veronese) map, the quadric-intersection
closure operator, arc and conic recognition, and a verifier plus
reconstructor for candidate quadratic embeddings, all over exact
integer arithmetic.
"""

from .arcs import (
    PlaneArc,
    SegreReport,
    is_arc,
    is_oval,
    is_regular_conic,
    lemma_h6_set,
    plane_arc,
    segre_scan,
    tangent_meet,
    unisecants_at,
)
from .embeddings import (
    AffineExtension,
    EmbeddingReport,
    FrameData,
    PointMap,
    Reconstruction,
    build_iota,
    build_Q_frame,
    check_closure_image,
    default_complement,
    extend_beta,
    is_quadratic_embedding,
    is_regular,
    is_regular_at,
    load_point_map,
    nu_T,
    overnu,
    random_complement,
    reconstruct_kappa,
    recover_automorphism,
    save_point_map,
)
from .fields import (
    GaloisField,
    apply_automorphism,
    automorphisms,
    create_field,
    element_ops,
    field_from_descriptor,
    prime_power,
)
from .generate import (
    broken_map,
    frame_injection_map,
    generate_embedding,
    random_semilinear,
    space_for,
    veronese_kappa_map,
    veronese_point_map,
)
from .prng import SplitMix64
from .projective import (
    ProjectiveSpace,
    SemilinearMap,
    Subspace,
    apply_semilinear,
    enumerate_points,
    frame_coordinates,
    is_frame,
    standard_frame,
)
from .quadrics import (
    ClosedSet,
    QuadraticForm,
    closure_points,
    closure_points_by_forms,
    evaluate_form,
    is_closed,
    longest_closed_chain,
    quadratic_closure,
    zero_set,
)
from .suites import BUDGETS, SUITE_ORDER, SuiteResult, run_suite
from .veronese import VeroneseMap, delta, rho, rho_preimage, veronese_for

__version__ = "0.1.0"
