"""Bipartite entanglement of three coupled harmonic oscillators in Fock states.

The weak-coupling diagonalisation pins every Euler angle to one mixing angle
theta; marginal purities of the three bipartitions (x|yz), (y|xz), (xy|z)
are then single Taylor coefficients of rational generating functions.

    >>> from trio_osc import entropies
    >>> [round(s, 6) for s in entropies((1, 0, 0), 0.3)]
    [0.421211, 0.421208, 7e-06]
"""

from .angles import MixingAngle, euler_angles, mu_phi_from_theta, mu_Phi_from_theta
from .closed_forms import (
    KappaSet,
    entropy_x_single,
    entropy_y_single,
    entropy_z_single,
    falling_factorial,
    jacobi,
    kappa_set,
    purity_x_double,
    two_osc_purity_n0,
)
from .errors import TrioError
from .oscillator import (
    DiagonalizationResult,
    EulerAngles,
    OscillatorParams,
    build_potential_matrix,
    diagonalize,
    rotation_matrix,
    solve_phi_roots,
)
from .purity import (
    Bipartition,
    FockState,
    SweepRow,
    entropies,
    linear_entropy,
    purity,
    purity_at_angles,
    sweep_row,
    tradeoff,
    two_oscillator_purity,
)
from .series import TruncatedSeries

__version__ = "0.1.0"
