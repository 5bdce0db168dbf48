"""entanglion - Entanglement measures and their monogamy and polygamy relations.

This package provides:
- Negativity, CREN/CRENoA, LCREN/LCRENoA and the tangle of bipartite cuts
- A numerical convex-roof optimizer for mixed states
- Weighted monogamy and polygamy relations with side-condition checks
- Pydantic models for reports and state documents
- A command-line interface
"""

__version__ = "0.1.0"
__author__ = "Andres Ingelmo Poveda"
__email__ = "aingelmo@gmail.com"

from entanglion.inequalities import (
    MeasureProfile,
    check_monogamy,
    check_negative_alpha,
    check_polygamy,
    ckw_check,
    compare_tightness,
    measure_profile,
    quoted_profile,
)
from entanglion.measures import Bipartition, all_measures, cren, crenoa, lcren, lcrenoa, negativity
from entanglion.states import QuantumState, catalog_state, load_state

__all__ = [
    "Bipartition",
    "MeasureProfile",
    "QuantumState",
    "__version__",
    "all_measures",
    "catalog_state",
    "check_monogamy",
    "check_negative_alpha",
    "check_polygamy",
    "ckw_check",
    "compare_tightness",
    "cren",
    "crenoa",
    "lcren",
    "lcrenoa",
    "load_state",
    "measure_profile",
    "negativity",
    "quoted_profile",
]
