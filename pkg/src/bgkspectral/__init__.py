"""Analytic spectral solver for the Fourier-transformed 1D BGK equation."""

from .coefficients import (InitialData, SliceWorkspace, SpectralSlice,
                           compute_C0, compute_K0, extract_slice,
                           slice_from_json, slice_to_json)
from .corpus import CHI0_XI, CORPUS_XI, PROFILES, corpus_sampler, make_initial_data
from .dispersion import (DispersionPoint, DispersionTable,
                         build_dispersion_table, constraint_residual,
                         eta_of_xi, lambda_of_xi, table_to_csv)
from .evolution import (ComplexField2D, DecayReport, decay_study,
                        density_moment, evolve_spectral, gds_solution,
                        oracle_integrate, oracle_trajectory,
                        reconstruction_error)
from .operator import (VSliceFunction, apply_L, apply_resolvent,
                       collision_moment, spectrum_distance)
from .quadrature import (PVKernelSpec, VelocityGrid, gauss_hermite, phi_inner,
                         phi_norm, pv_integral)
from .riemann import (BoundaryCoefficients, CanonicalSolution, IndexResult,
                      boundary_A, boundary_B, boundary_G, boundary_G_from_AB,
                      gamma_plus, get_canonical, winding_index)
from .specfun import SQRT_PI, dawson, gaussian_weight, hilbert_gaussian, xi_function
from .cli import RunConfig, main
from .plotting import line_plot_svg
from .verify import inject_fault, run_suite, run_suites

__version__ = "0.1.0"
