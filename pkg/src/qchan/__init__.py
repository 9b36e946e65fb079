"""Qubit channels: CP tests, canonical form, extreme points, decomposition,
image geometry and Holevo capacity.

The Kraus convention is ``rho -> sum_k A_k^dagger rho A_k`` (dagger on the
left), trace preserving when ``sum_k A_k A_k^dagger = I``.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .pauli import (I2, SX, SY, SZ, KrausSet, PauliVec, TMatrix, adjoint_channel,
                    apply_channel, channel_from_kraus, compose, mat2_to_pauli, pauli_to_mat2)
from .choi import (ChoiMatrix, EigenSystem, choi_hat_of, choi_of, choi_rank, eigensystem,
                   is_psd, kraus_from_choi)
from .canonical import CanonicalForm, reconstruct, reduce, su2_from_so3
from .cpcheck import (ContractionReport, InequalityReport, inequality_report, is_cp,
                      is_cp_theorem1, r_phi)
from .extreme import (ExtremalClass, Kind, TrigParams, channel_from_trig, classify,
                      kraus_products_independent, kraus_trig, trig_from_canonical)
from .decompose import MidpointDecomposition, decompose_midpoint, split_contraction
from .geometry import (Ellipsoid, SurfaceContact, cross_section, extreme_curve, image_ellipsoid,
                       max_image_norm, solve_two_point_map, sphere_contacts)
from .capacity import (CapacityConfig, CapacityResult, Ensemble, binary_channel_capacity,
                       binary_entropy, holevo_capacity, orthogonal_and_minentropy_baselines,
                       output_entropy)
