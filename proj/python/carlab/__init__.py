"""Unitary displacement and product-state equivalence diagnostics."""

import json

from ._core import (
    Error,
    __version__,
    block_gaps,
    chain_gaps,
    classify,
    closed_form,
    is_unitary,
    kron,
    operator_norm,
    oracle_distance,
    product_vector,
    rotation_unitary,
    run_text,
    separation,
    sequence,
    state_distance,
    trace_norm,
    witness_search,
)

EXPERIMENTS = (
    "lemma1-verify",
    "lemma2-adjudicate",
    "reduce",
    "cauchy-gaps",
    "separation",
    "fsigma-search",
    "product-test",
)


def run(experiment, **config):
    """Run a batch experiment and return its report as a dict."""
    return json.loads(run_text(experiment, json.dumps(config), "json"))


__all__ = [
    "EXPERIMENTS",
    "Error",
    "__version__",
    "block_gaps",
    "chain_gaps",
    "classify",
    "closed_form",
    "is_unitary",
    "kron",
    "operator_norm",
    "oracle_distance",
    "product_vector",
    "rotation_unitary",
    "run",
    "run_text",
    "separation",
    "sequence",
    "state_distance",
    "trace_norm",
    "witness_search",
]
