"""Exact simulation toolkit for postselecting realtime automata.

Three machine kinds share one postselection semantics: plain finite
automata, certificate-reading verifiers with a one-way proof head, and
counter-augmented machines.  Every probability is an exact rational.
"""

from .coin import (crossing_guess, encode_coin, encoding_error_bound,
                   exact_crossing_success, exact_guess_success,
                   guess_bit_from_heads, mc_guess_success)
from .counter import (PostPCA, build_dima3, build_dima3I, dima3_member,
                      run_pca_exact, run_pca_mc, validate_pca)
from .engine import (ACCEPT_STATE, LEFT_END, MonteCarloResult, PostPFA,
                     REJECT_STATE, RIGHT_END, RunResult, SINK_STATE,
                     distribution_trace, random_post_pfa,
                     restart_statistics, run_exact, simulate_monte_carlo,
                     validate_pfa)
from .errors import (BadParameter, BudgetExceeded, EmptyTrialSet,
                     MalformedAutomaton, NotAMember, ParseError,
                     PostPFAError, PostselectionUndefined,
                     RestartCapExceeded, ValidationError)
from .ratio import Q, approx_decimal, format_rational, parse_rational
from .serialize import (automaton_kind, parse_automaton,
                        serialize_automaton)
from .verifier import (Certificate, TwoTrackCertificate, VerifierPFA,
                       build_upower6I_verifier, build_upower_verifier,
                       build_upowerk_verifier, build_usquare_verifier,
                       honest_cert_upower, honest_cert_upower6,
                       honest_cert_usquare, run_verifier_exact,
                       soundness_search, validate_verifier,
                       verifier_from_pfa)
from .zoo import (build_equal, build_equal_blocks, build_equal_blocks_f,
                  build_log, blocks_event_probs, equal_event_probs,
                  log_event_probs, pad_log, pair_acceptance,
                  reference_membership)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
