"""Sharp Bohr-Rogosinski radii, certified functional evaluation and sharpness witnesses."""

from .functionals import FunctionalKind, FunctionalValue, Mode, evaluate
from .kernels import BACKEND
from .radii import (
    ClosedForm,
    NoRootFound,
    RapEquation,
    RNEquation,
    RNPrimeEquation,
    RootResult,
    YEquation,
    figure1_data,
    solve_radius,
    table1,
)
from .schwarz import SchwarzMap, monomial_schwarz, random_schwarz
from .series import (
    ExtremalFa,
    ExtremalFaStar,
    FiniteBlaschke,
    Monomial,
    PowerSeries,
    SchurSequence,
    eval_series,
    tail_bound,
    taylor,
)
from .sharpness import NoWitness, SharpnessReport, witness_search
from .verify import VerificationConfig, VerificationReport, run_trials

__version__ = "0.1.0"
