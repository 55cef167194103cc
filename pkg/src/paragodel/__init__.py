"""Decision procedures for the paraconsistent Gödel modal logic with
sceptical (box) and credulous (dia) aggregation over finitely branching
fuzzy bi-relational Kripke models."""
from .algebra import ONE, ZERO, Rational01, gcoimpl, gimpl, rational01
from .formula import ParseError, desugar, metrics, parse, to_text
from .model import KripkeModel, ValuePair, check_validity_on_model, evaluate, frame_predicates, load_model
from .oracle import SearchBounds, search_countermodel, search_satisfying, verify_verdict
from .tableau import Countermodel, Proved, ResourceLimitExceeded, decide_sat, expand, prove

__all__ = [
    "ONE", "ZERO", "Rational01", "gcoimpl", "gimpl", "rational01",
    "ParseError", "desugar", "metrics", "parse", "to_text",
    "KripkeModel", "ValuePair", "check_validity_on_model", "evaluate", "frame_predicates", "load_model",
    "SearchBounds", "search_countermodel", "search_satisfying", "verify_verdict",
    "Countermodel", "Proved", "ResourceLimitExceeded", "decide_sat", "expand", "prove",
]
