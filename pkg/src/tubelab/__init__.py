"""Tube volumes about curves, curvature-condition checkers, and solvable
group models built on generalized Heisenberg algebras."""

from .catalog import ch2, cp2, euclidean, get_space, hyperbolic, product, sphere
from .curvature import (
    CurvatureDiagnostics,
    JacobiOperator,
    PQTensors,
    RiemannCurvature,
    SteinReport,
    curvature_from_json,
    curvature_to_json,
    gray_vanhecke_A,
    gray_vanhecke_B_einstein_geodesic,
    jacobi_operator,
    pq_identity_check,
    pq_tensors,
    power_sum,
    ricci,
    scalar,
    stein_check,
    stein_probes,
    validate_curvature,
)
from .curves import (
    CurveSpec,
    arc_r3,
    datri_second_term,
    general_curve_tube_volume,
    great_circle_s3,
    line_r3,
    omega_density,
    small_circle_s3,
    tilde_jacobi_form,
)
from .damek_ricci import (
    DamekRicciSpace,
    GroupPoint,
    HeisenbergAlgebra,
    build_heisenberg,
    euler_arnold_residual,
    tube_surface_area,
    tube_volume_closed_form,
)
from .lie import (
    LieAlgebraData,
    ad_power_trace,
    ad_power_trace_eigen,
    curvature_from_structure_constants,
    jacobi_identity_residual,
    so3_so3_symmetric_pair,
)
from .quadrature import (
    SphereQuadrature,
    gauss_legendre,
    hyperplane_basis,
    monomial_sphere_integral,
    radial_sphere_integral,
    sphere_area,
    sphere_rule,
    unit_ball_volume,
)
from .series import (
    CotCoefficients,
    MatrixTrig,
    PoleGuardError,
    SeriesConvergenceError,
    bernoulli_numbers,
    cot_coeffs,
    cotc_sqrt,
    log_det_sinc_series,
    matrix_trig,
    sinc_sqrt,
)
from .tubes import (
    TubeVolumeReport,
    geodesic_tube_integrand,
    geodesic_tube_volume,
    k_integral_coefficient,
    trig_poly_top_component,
    tube_directions,
    tube_property_scan,
)
from .verify import ALL_CHECKS, CheckResult, run_checks

__version__ = "0.1.0"
