"""Linear-chain CRF: log-space forward-backward training and Viterbi decoding.

Feature dicts from `features.extract_features` are turned into indicator
keys ("name=value"), so string, boolean and integer feature values all
become sparse binary features. Parameters are per-feature/label emission
weights plus label-transition, begin and end potentials.

Training minimizes the L2-penalized negative conditional log-likelihood
with L-BFGS; initialization is all-zeros, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .errors import ConfigMismatch, EmptyData, NonFiniteObjective, UnlabeledData
from .features import FeatureConfig, extract_sentence_features


def feature_keys(feats: dict):
    return [f"{name}={value}" for name, value in feats.items()]


def forward_backward(unary, trans, begin, end):
    """Log-space forward-backward.

    unary: (T, L) emission scores; trans: (L, L); begin/end: (L,).
    Returns (log_partition, unary_marginals (T, L), pairwise_marginals
    (T-1, L, L)).
    """
    T, L = unary.shape
    alpha = np.empty((T, L))
    alpha[0] = begin + unary[0]
    for t in range(1, T):
        alpha[t] = unary[t] + logsumexp(alpha[t - 1][:, None] + trans, axis=0)
    log_z = logsumexp(alpha[-1] + end)

    beta = np.empty((T, L))
    beta[-1] = end
    for t in range(T - 2, -1, -1):
        beta[t] = logsumexp(trans + (unary[t + 1] + beta[t + 1])[None, :], axis=1)

    unary_marg = np.exp(alpha + beta - log_z)
    pair_marg = np.empty((T - 1, L, L))
    for t in range(T - 1):
        pair_marg[t] = np.exp(
            alpha[t][:, None]
            + trans
            + (unary[t + 1] + beta[t + 1])[None, :]
            - log_z
        )
    return log_z, unary_marg, pair_marg


def viterbi_decode(unary, trans, begin, end):
    """Highest-scoring label sequence; ties resolve to the lowest index."""
    T, L = unary.shape
    backpointers = np.empty((T, L), dtype=np.intp)
    score = begin + unary[0]
    for t in range(1, T):
        candidate = score[:, None] + trans
        backpointers[t] = np.argmax(candidate, axis=0)
        score = unary[t] + np.max(candidate, axis=0)
    score = score + end
    path = np.empty(T, dtype=np.intp)
    path[-1] = int(np.argmax(score))
    for t in range(T - 1, 0, -1):
        path[t - 1] = backpointers[t, path[t]]
    return path


def sequence_score(unary, trans, begin, end, labels):
    score = begin[labels[0]] + end[labels[-1]]
    score += unary[np.arange(len(labels)), labels].sum()
    for t in range(1, len(labels)):
        score += trans[labels[t - 1], labels[t]]
    return score


@dataclass
class CrfModel:
    labels: tuple  # EtymologyLabel enumeration order used for indexing
    scheme: str
    feature_index: dict  # indicator key -> column in weights
    weights: np.ndarray  # (F, L)
    trans: np.ndarray  # (L, L)
    begin: np.ndarray  # (L,)
    end: np.ndarray  # (L,)
    fingerprint: str
    hyper: dict
    final_objective: float
    objective_history: list = field(default_factory=list)
    cfg: Optional[FeatureConfig] = None  # in-memory only, not serialized

    def attach_config(self, cfg: FeatureConfig):
        if cfg.fingerprint() != self.fingerprint:
            raise ConfigMismatch(
                "feature configuration differs from the one used at training"
            )
        self.cfg = cfg

    def encode(self, sentence, cfg=None):
        """(T, L) unary score matrix for one sentence."""
        cfg = cfg if cfg is not None else self.cfg
        if cfg is None:
            raise ConfigMismatch("no feature configuration attached to the model")
        if cfg.fingerprint() != self.fingerprint:
            raise ConfigMismatch(
                "feature configuration differs from the one used at training"
            )
        unary = np.zeros((len(sentence), len(self.labels)))
        for t, feats in enumerate(extract_sentence_features(sentence, cfg)):
            for key in feature_keys(feats):
                idx = self.feature_index.get(key)
                if idx is not None:
                    unary[t] += self.weights[idx]
        return unary


def _encode_dataset(data, cfg, label_order):
    """Feature-index the training data. Returns (feature_index, encoded)
    where encoded is a list of (active-index lists per token, label indices)."""
    label_pos = {label: i for i, label in enumerate(label_order)}
    feature_index = {}
    encoded = []
    for sentence in data:
        if sentence.labels is None:
            raise UnlabeledData("CRF training requires labeled sentences")
        rows = []
        for feats in extract_sentence_features(sentence, cfg):
            active = []
            for key in feature_keys(feats):
                idx = feature_index.setdefault(key, len(feature_index))
                active.append(idx)
            rows.append(np.asarray(active, dtype=np.intp))
        gold = np.asarray([label_pos[l] for l in sentence.labels], dtype=np.intp)
        encoded.append((rows, gold))
    return feature_index, encoded


def crf_train(data, cfg: FeatureConfig, scheme, label_order, hyper=None) -> CrfModel:
    """Train on labeled sentences whose labels are drawn from label_order."""
    data = list(data)
    if not data:
        raise EmptyData("no training sentences")
    hyper = {"l2": 0.1, "max_iter": 200, "seed": 0, **(hyper or {})}
    l2 = float(hyper["l2"])
    feature_index, encoded = _encode_dataset(data, cfg, label_order)
    F = len(feature_index)
    L = len(label_order)
    n_weights = F * L

    def unpack(theta):
        weights = theta[:n_weights].reshape(F, L)
        trans = theta[n_weights : n_weights + L * L].reshape(L, L)
        begin = theta[n_weights + L * L : n_weights + L * L + L]
        end = theta[n_weights + L * L + L :]
        return weights, trans, begin, end

    def objective(theta):
        weights, trans, begin, end = unpack(theta)
        grad_w = np.zeros_like(weights)
        grad_t = np.zeros_like(trans)
        grad_b = np.zeros_like(begin)
        grad_e = np.zeros_like(end)
        loss = 0.0
        for rows, gold in encoded:
            T = len(rows)
            unary = np.empty((T, L))
            for t, active in enumerate(rows):
                unary[t] = weights[active].sum(axis=0)
            log_z, unary_marg, pair_marg = forward_backward(unary, trans, begin, end)
            loss += log_z - sequence_score(unary, trans, begin, end, gold)
            # Begin/end gradients use the first/last marginals, so read them
            # before the in-place gold subtraction below.
            grad_b += unary_marg[0]
            grad_b[gold[0]] -= 1.0
            grad_e += unary_marg[-1]
            grad_e[gold[-1]] -= 1.0
            if T > 1:
                grad_t += pair_marg.sum(axis=0)
                for t in range(1, T):
                    grad_t[gold[t - 1], gold[t]] -= 1.0
            d_unary = unary_marg
            d_unary[np.arange(T), gold] -= 1.0
            for t, active in enumerate(rows):
                grad_w[active] += d_unary[t]
        loss += l2 * float(theta @ theta)
        grad = np.concatenate(
            [grad_w.ravel(), grad_t.ravel(), grad_b, grad_e]
        ) + 2.0 * l2 * theta
        if not np.isfinite(loss):
            raise NonFiniteObjective(f"objective became {loss}")
        return loss, grad

    history = []

    def record(theta):
        value, _ = objective(theta)
        history.append(-value)  # penalized log-likelihood, should not decrease

    theta0 = np.zeros(n_weights + L * L + 2 * L)
    result = minimize(
        objective,
        theta0,
        jac=True,
        method="L-BFGS-B",
        callback=record,
        options={"maxiter": int(hyper["max_iter"]), "ftol": 1e-10, "gtol": 1e-8},
    )
    weights, trans, begin, end = unpack(result.x)
    return CrfModel(
        labels=tuple(label_order),
        scheme=scheme,
        feature_index=feature_index,
        weights=weights,
        trans=trans,
        begin=begin,
        end=end,
        fingerprint=cfg.fingerprint(),
        hyper=hyper,
        final_objective=float(result.fun),
        objective_history=history,
        cfg=cfg,
    )


def crf_predict(model: CrfModel, sentence, cfg=None):
    """Viterbi labels for one sentence."""
    if len(sentence) == 0:
        return []
    unary = model.encode(sentence, cfg)
    path = viterbi_decode(unary, model.trans, model.begin, model.end)
    return [model.labels[i] for i in path]


def crf_marginals(model: CrfModel, sentence, cfg=None):
    """Per-position label marginals (T, L); rows sum to 1."""
    unary = model.encode(sentence, cfg)
    _, unary_marg, _ = forward_backward(unary, model.trans, model.begin, model.end)
    return unary_marg
