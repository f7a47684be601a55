"""RO(C_2)-graded computations for tmf_1(3) and its localizations."""

from .abelian import FGAbelianGroup, smith_normal_form
from .algebra import Element, Generator, Monomial, MonomialAlgebra
from .grading import Degree, RHO, SIGMA
from .mackey import MackeyFunctor
from .sseq import Differential, Page, SSWindow, run_to_stable
from .tmf13 import SCENARIOS, build_scenario, e_infinity_page

__version__ = "0.1.0"

__all__ = [
    "Degree",
    "RHO",
    "SIGMA",
    "FGAbelianGroup",
    "smith_normal_form",
    "Generator",
    "Monomial",
    "MonomialAlgebra",
    "Element",
    "MackeyFunctor",
    "Differential",
    "Page",
    "SSWindow",
    "run_to_stable",
    "SCENARIOS",
    "build_scenario",
    "e_infinity_page",
]
