"""Exact checks of the level-one Fock representation of the twisted quantum toroidal algebra."""
from .coeff import ONE, Q, V, ZERO, QRat, qint, qpow, vpow
from .fock import BasisState, FockVector, basis_states, heis_apply, group_apply, vacuum
from .lattice import CartanData, CartanValidationError, cartan_load, cocycle, pairing
from .polyring import MPoly, serre_f, serre_f_check, serre_poly_k1
from .relations import (
    CheckReport,
    check_cocycle,
    check_delta,
    check_heisenberg,
    check_locality,
    check_ope,
    check_phipsi,
    check_serre_operator,
    check_serre_symbolic,
    check_series_oracle,
)
from .series import TruncSeries, g_series, qpow_homog, qpow_twisted
from .vertex import normal_pair_mode, phi_psi_mode, product_mode, vertex_mode

__version__ = "0.1.0"
