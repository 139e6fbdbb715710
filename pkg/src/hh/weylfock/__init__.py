"""Truncated Fock-space model of the Schroedinger-type representation and the Weyl transform."""

from hh.weylfock.matrix import OperatorMatrix
from hh.weylfock.transform import (
    displacement_matrix_element,
    hs_inner_alpha,
    inverse_weyl,
    ladder,
    ladder_action,
    pairing,
    plancherel_constant,
    projection,
    require_columns_in,
    tau,
    tau1,
    tau2,
    twisted_convolve_fock,
    unitary_action,
    unitary_action_numeric,
    weyl_correspondence,
    weyl_transform,
)
from hh.weylfock.truncation import FockTruncation, IrredIndex, gram_weight, irreducibles

__all__ = [
    "FockTruncation", "IrredIndex", "OperatorMatrix", "displacement_matrix_element", "gram_weight",
    "hs_inner_alpha", "inverse_weyl", "irreducibles", "ladder", "ladder_action", "pairing",
    "plancherel_constant", "projection", "require_columns_in", "tau", "tau1", "tau2",
    "twisted_convolve_fock", "unitary_action", "unitary_action_numeric", "weyl_correspondence",
    "weyl_transform",
]
