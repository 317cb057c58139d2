"""Quaternionic Hermite polynomials, slice calculus, kernels and coherent states."""

from .quaternion import (
    Quaternion,
    PolarForm,
    UnitImaginary,
    SliceForm,
    PatternViolation,
    ONE,
    ZERO,
    I,
    J,
    K,
    polar,
    slice_compose,
    slice_decompose,
    su2_factor,
    to_matrix,
    from_matrix,
    q_exp,
    quat_allclose,
)
from .series import (
    Mode,
    QSeries,
    Side,
    SliceResidual,
    cullen_derivative,
    cullen_derivative_numeric,
    eval_series,
    regularity_residual,
    slice_split,
    taylor_coeffs,
)
from .hermite import (
    b_n,
    h_nm_eval_q,
    h_nm_eval_z,
    h_nm_poly,
    H_nm_poly,
    hermite_q,
    hermite_q_normalized,
    hermite_real,
    hermite_z,
    landau_apply,
    landau_eigenfunction,
    landau_eigenvalue,
)
from .kernels import (
    KernelValue,
    K_n_series,
    K_s_closed_complex,
    K_s_closed_diagonal,
    K_s_series,
    bargmann_kernel,
    frak_K_closed,
)
from .coherent import (
    CanonicalFamily,
    CSVector,
    HermiteNMFamily,
    HermiteSFamily,
    cs_build,
    isometry_W,
    ladder,
    overlap,
    resolution_of_identity,
)
from .quadrature import (
    QuadratureSpec,
    gauss_hermite,
    haar_su2,
    integrate_C,
    integrate_H,
    planar_gauss_lambda,
    planar_nu,
)

__version__ = "0.1.0"
