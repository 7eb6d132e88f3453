"""Maximum flow by large-medium excess scaling push-relabel."""

from .dimacs import parse_dimacs, parse_solution, write_dimacs, write_solution
from .enhanced import enhanced_solve
from .generators import layered, pathological, random_network
from .generic import gpr_solve
from .instrumentation import Counters, report
from .lmes import lmes_solve
from .network import Network, build_network
from .oracle import min_cut, oracle_max_flow, verify_flow
from .quantity import Quantity

__all__ = [
    "Counters", "Network", "Quantity", "build_network", "enhanced_solve", "gpr_solve",
    "layered", "lmes_solve", "min_cut", "oracle_max_flow", "parse_dimacs", "parse_solution",
    "pathological", "random_network", "report", "verify_flow", "write_dimacs", "write_solution",
]
