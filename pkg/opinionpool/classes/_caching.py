"""Lazily computed pairwise structure of an ExpertSet.

Every getter takes the ExpertSet and caches its result in ``E._cache``.  The pair
structure is a symmetric M x M GraphBLAS Matrix whose diagonal holds the
self-pairs, so sums over it already count each off-diagonal pair twice.
"""
import numpy as np
from graphblas import Matrix, Vector, binary, monoid, select, unary


def pairwise_terms(mean_a, var_a, mean_b, var_b):
    """Per-dimension cross terms of two diagonal Gaussians (arrays broadcast).

    Returns ``(mu_ij, var_ij, log_affinity)`` where ``log_affinity`` is still per
    dimension; sum over the last axis for the joint log affinity.  Every
    expression is written so that swapping the two inputs gives bit-identical output.
    """
    total = var_a + var_b
    prod = var_a * var_b
    mu_ij = (mean_a * var_b + mean_b * var_a) / total
    var_ij = 2 * prod / total
    log_affinity = 0.5 * np.log(2 * np.sqrt(prod) / total) - (mean_a - mean_b) ** 2 / (
        4 * total
    )
    return mu_ij, var_ij, log_affinity


def get_log_affinity(E):
    """log S_ij for every pair, with zeros on the diagonal"""
    cache = E._cache
    if "log_affinity" not in cache:
        M = len(E)
        rows, cols = np.triu_indices(M, 1)
        _, _, log_aff = pairwise_terms(
            E.means[rows], E.variances[rows], E.means[cols], E.variances[cols]
        )
        log_aff = log_aff.sum(axis=-1)
        diag = np.arange(M)
        cache["log_affinity"] = Matrix.from_coo(
            np.concatenate([rows, cols, diag]),
            np.concatenate([cols, rows, diag]),
            np.concatenate([log_aff, log_aff, np.zeros(M)]),
            nrows=M,
            ncols=M,
            dtype=float,
            name="log_affinity",
        )
    return cache["log_affinity"]


def get_log_weights(E):
    """log(lambda_j); -inf for experts with zero weight"""
    cache = E._cache
    if "log_weights" not in cache:
        with np.errstate(divide="ignore"):
            log_w = np.log(E.weights)
        cache["log_weights"] = Vector.from_coo(
            np.arange(len(E)), log_w, size=len(E), dtype=float, name="log_weights"
        )
    return cache["log_weights"]


def get_pair_weights(E):
    """lambda_i lambda_j S_ij / exp(shift), entries that underflow to zero dropped

    The shift (the largest log pair weight) is cached under ``"pair_log_shift"``.
    """
    cache = E._cache
    if "pair_weights" not in cache:
        log_aff, log_w = E.get_properties("log_affinity log_weights")
        W = log_w.outer(log_w, binary.plus).new(name="pair_weights")
        W << binary.plus(W & log_aff)
        shift = W.reduce_scalar(monoid.max).get(0.0)
        W << W.apply(binary.minus, right=shift)
        W << unary.exp(W)
        cache["pair_log_shift"] = float(shift)
        cache["pair_weights"] = select.valuegt(W, 0.0).new(name="pair_weights")
    return cache["pair_weights"]


def get_pair_log_shift(E):
    cache = E._cache
    if "pair_log_shift" not in cache:
        get_pair_weights(E)
    return cache["pair_log_shift"]
