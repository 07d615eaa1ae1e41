"""Ermakov-Milne-Pinney amplitudes, Darboux transforms and Milne quantization."""

from .darboux import (
    TransformSpec,
    apply_transforms,
    auxiliary_equality_profile,
    transform_chain_two,
    transform_first_order,
    transform_inverse,
    transform_second_order,
)
from .diagnostics import InvariantReport, QuantumNumberSample, lewis_invariant, quantum_number, quantum_number_shift
from .emp import (
    AmplitudePhaseParams,
    EmpCoefficients,
    EmpSolution,
    amplitude_phase_wavefunction,
    emp_from_pair,
    emp_residual,
    emp_residual_profile,
    integrate_emp,
    phase,
)
from .errors import *  # noqa: F401,F403
from .grid import Grid, Interval
from .potentials import (
    GeneratingFunction,
    Potential,
    Superpotential,
    partner_pair_first_order,
    partner_pair_second_order,
    reducible_superpotentials,
)
from .quantization import Level, SpectrumReport, find_bound_states, scan_quantum_number
from .schrodinger import (
    SolutionPair,
    Wavefunction,
    integrate_pair,
    integrate_wavefunction,
    map_pair_first,
    map_wavefunction_first,
    map_wavefunction_second,
    wronskian,
)

__version__ = "0.1.0"
