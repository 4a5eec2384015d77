"""Low-bandwidth evaluation of linear functions on Reed-Solomon coded data."""

from __future__ import annotations

from .algebra import BaseField, FieldExtension, make_extension_field, recover_from_traces, trace
from .bounds import BoundReport, bound_report, dstar_bruteforce, mds_lower_bound, obs_lower_bound, prop_lower_bound
from .errors import RSEvalError
from .rs_scheme import (
    EvaluationScheme,
    GoodTriple,
    SchemeParams,
    WindowScheme,
    build_scheme,
    consistent_polynomial,
    decompose_target,
    evaluate_full,
    is_good,
    main_params,
    mod_star,
    rate_half_params,
    rs_reconstruct,
    sigma,
    single_window_scheme,
    window,
)
from .rscode import RSCode, encode, naive_recover, rs_code, systematic_encode
from .scheme_core import (
    NodeResponse,
    SubspaceAssignment,
    decompose_witness,
    generic_reconstruct,
    perp_char_check,
    verify_linear_scheme,
)
from .simulator import (
    Cluster,
    EvalResult,
    deploy,
    evaluate,
    evaluate_batched_base_field,
    evaluate_naive,
    evaluate_sum_of_squares,
    fail_nodes,
)

__version__ = "0.1.0"
