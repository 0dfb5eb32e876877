"""Exact computer algebra for graded generalized geometry.

Graded polynomial function algebras, Cartan calculus for graded Lie
algebroids, twisted Dorfman brackets, Dirac structures, generalized
complex structures, compatible differentials and graded Lie bialgebras.
All coefficients stay in Q or Q(i), so every identity is decided exactly.
"""

from .errors import (
    ArityMismatch,
    ChartMismatch,
    DegreeMismatch,
    FlavorMismatch,
    FrameMismatch,
    GradedGeomError,
    NotASubspace,
    NotAlmostComplex,
    ParityMismatch,
    ParseError,
    PreconditionUnmet,
    ShiftMismatch,
    UnknownCoordinate,
    UnsolvableError,
    ValidationError,
)
from .gralg import Chart, GFunction
from .scalars import GAUSSIAN, RATIONAL, GaussianRational, I
from .calculus import (
    SKEW,
    SYM,
    Algebroid,
    Form,
    Frame,
    Section,
    VectorField,
    check_cartan,
    cotangent_frame,
    d_form,
    d_function,
    form1_to_section,
    interior,
    lie_form,
    lie_multivector,
    pair_form_section,
    plug,
    schouten,
    section_from_dual_form,
    section_as_dual_form,
    section_to_form1,
    section_to_vf,
    sym_prod,
    tangent_algebroid,
    tangent_frame,
    vf_to_section,
    wedge,
)
from .courant import (
    CourantData,
    GenSection,
    b_transform,
    check_courant_axioms,
    curvature_defect,
    dee,
    dorfman,
    jacobiator,
    omega_flat,
    pairing,
    splitting_curvature,
)
from .dirac_gc import (
    Bivector,
    GCSMap,
    QuadSpace,
    Subspace,
    annihilator,
    check_dirac_graph,
    complex_gcs,
    cotangent_algebroid,
    fiber_subspace,
    gcs_checks,
    generalized_fiber,
    graph_of_pi,
    graph_section,
    hamiltonian,
    is_isotropic,
    is_max_isotropic,
    koszul_bracket,
    nijenhuis,
    orthogonal_complement,
    pi_sharp,
    plus_i_eigenspace,
    poisson_bracket,
    symplectic_gcs,
    twisted_poisson_defects,
)
from .dgca import (
    DeltaSpec,
    HomologicalSection,
    check_delta_axioms,
    d_primitive,
    delta_apply,
    delta_from_section,
    delta_section,
    dirac_delta_compat,
    gcs_delta_compat,
)
from .reporting import CheckResult, Report

__version__ = "0.1.0"
