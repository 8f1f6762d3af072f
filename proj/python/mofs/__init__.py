"""Multi-objective feature selection: an evolutionary mask search with an
entropy-based stopping rule and evidential-reasoning solution picking."""

import json as _json

from ._core import (  # noqa: F401
    ConfigError,
    DataError,
    Dataset,
    Fitness,
    __version__,
    auc,
    correlation_matrix,
    er_combine,
    evaluate_mask,
    generate_synthetic,
    load_csv,
    relief_rank,
    select_solution,
    sfs_auc,
    stratified_folds,
    write_csv,
)
from ._core import run_json as _run_json
from ._core import sweep_json as _sweep_json


def run(data, config=None, test=None):
    """Run the full pipeline; returns the report as a dict."""
    text = _json.dumps(config) if config else ""
    return _json.loads(_run_json(data, text, test))


def sweep(data, param, config=None):
    """Selector sensitivity sweep over 'weights' or 'refpoints'."""
    text = _json.dumps(config) if config else ""
    return _json.loads(_sweep_json(data, param, text))
