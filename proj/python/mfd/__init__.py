"""Reasoning about monoidal functional dependencies.

Theories and queries use the text grammar of the command-line tool, e.g.
``"p -> u x\\nu y -> q"`` and ``"p p -> q q"``.
"""

import json as _json
import os as _os

from . import _mfd
from ._mfd import (
    ContractingTheory,
    ParseError,
    ProofError,
    booleanize,
    check_proof,
    classical_entails,
    is_non_contracting,
    is_trivial,
    normalize,
)

__all__ = [
    "ContractingTheory",
    "ParseError",
    "ProofError",
    "booleanize",
    "check_proof",
    "check_relation",
    "classical_entails",
    "complete_algebra",
    "decide",
    "enumerate_pomonoids",
    "is_non_contracting",
    "is_trivial",
    "member",
    "normalize",
]


def decide(theory, query, bfs_nodes=100_000, model_evaluations=1_000_000, max_size=5):
    """Verdict as a dict with key "verdict" in {"proved", "refuted", "unknown"}."""
    return _json.loads(_mfd.decide_json(theory, query, bfs_nodes, model_evaluations, max_size))


def member(theory, query):
    return _json.loads(_mfd.member_json(theory, query))


def _json_text(doc):
    # dict, JSON text, or a path to a JSON file
    if isinstance(doc, _os.PathLike) or (isinstance(doc, str) and _os.path.isfile(doc)):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    return doc if isinstance(doc, str) else _json.dumps(doc)


def check_relation(relation, theory):
    """`relation` is a dict, JSON text, or a path, in the relation file layout."""
    relation = _json_text(relation)
    return _json.loads(_mfd.check_relation_json(relation, theory))


def complete_algebra(algebra):
    return _json.loads(_mfd.complete_algebra_json(_json_text(algebra)))


def enumerate_pomonoids(max_size):
    return [_json.loads(doc) for doc in _mfd.enumerate_pomonoids_json(max_size)]
