"""Multiway rewriting systems with a ZX-calculus frontend."""
from .multiway import (EngineConfig, MultiwayGraph, ResourceLimitError, RewriteSystem,
                       branchial, causal_graph, check_causal_invariance, check_confluence,
                       complete, evolve, path_weights)
from .systems import SetSystem, StringSystem, TermSystem, TMSystem, tm_rulial
from .rulial import monoidal_experiment, quantum_toy, rulial_compose
from .zx.diagram import Diagram, parse
from .zx.rules import enumerate_rules, identity_rule, instantiate, verify_rule
from .zx.semantics import diagram_matrix, verify_pair
from .zx.system import ZXSystem

__all__ = [
    "Diagram", "EngineConfig", "MultiwayGraph", "ResourceLimitError", "RewriteSystem",
    "SetSystem", "StringSystem", "TMSystem", "TermSystem", "ZXSystem", "branchial",
    "causal_graph", "check_causal_invariance", "check_confluence", "complete",
    "diagram_matrix", "enumerate_rules", "evolve", "identity_rule", "instantiate",
    "monoidal_experiment", "parse", "path_weights", "quantum_toy", "rulial_compose",
    "tm_rulial", "verify_pair", "verify_rule",
]
