"""Exact inference for the linear-chain CRF, all in log space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .model import CrfModel
from .templates import BEGIN, FeatureTemplate, Observation, active_features, feature_string, observation_keys


@dataclass(frozen=True)
class CompiledSequence:
    """Sparse (position, prev, cur, feature) incidences for one sequence.

    ``prev`` index 0 is ``BEGIN``; label ``k`` of the alphabet is ``k + 1``.
    Only features present in the feature index are kept.
    """

    length: int
    n_labels: int
    t: np.ndarray
    prev: np.ndarray
    cur: np.ndarray
    feat: np.ndarray

    def potentials(self, weights: np.ndarray) -> np.ndarray:
        psi = np.zeros((self.length, self.n_labels + 1, self.n_labels))
        if len(self.feat):
            np.add.at(psi, (self.t, self.prev, self.cur), weights[self.feat])
        return psi


def compile_sequence(
    seq: Sequence[Observation],
    templates: Sequence[FeatureTemplate],
    labels: Sequence[str],
    index: Mapping[str, int],
    grow: bool = False,
) -> CompiledSequence:
    """Map the candidate features of ``seq`` onto ``index``.

    With ``grow`` set, unseen features are appended to ``index`` (which must
    then be a mutable dict).
    """
    ts, ps, cs, fs = [], [], [], []
    prevs = [BEGIN, *labels]

    def lookup(name: str):
        idx = index.get(name)
        if idx is None and grow:
            idx = index[name] = len(index)
        return idx

    for t, keys in enumerate(observation_keys(seq, templates)):
        prev_range = range(1) if t == 0 else range(1, len(prevs))
        for tpl, key in zip(templates, keys):
            for c, cur in enumerate(labels):
                if tpl.transition:
                    for p in prev_range:
                        idx = lookup(feature_string(tpl, key, prevs[p], cur))
                        if idx is not None:
                            ts.append(t), ps.append(p), cs.append(c), fs.append(idx)
                else:
                    # State features contribute to every incoming edge.
                    idx = lookup(feature_string(tpl, key, BEGIN, cur))
                    if idx is not None:
                        for p in prev_range:
                            ts.append(t), ps.append(p), cs.append(c), fs.append(idx)
    return CompiledSequence(len(seq), len(labels), *(np.asarray(xs, dtype=np.intp) for xs in (ts, ps, cs, fs)))


def _logsumexp(a: np.ndarray, axis=None) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    out = m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))
    return np.squeeze(out, axis=axis) if axis is not None else out.reshape(())


def forward(psi: np.ndarray) -> np.ndarray:
    T = psi.shape[0]
    alpha = np.empty((T, psi.shape[2]))
    alpha[0] = psi[0, 0]
    for t in range(1, T):
        alpha[t] = _logsumexp(alpha[t - 1][:, None] + psi[t, 1:], axis=0)
    return alpha


def backward(psi: np.ndarray) -> np.ndarray:
    T, K = psi.shape[0], psi.shape[2]
    beta = np.zeros((T, K))
    for t in range(T - 2, -1, -1):
        beta[t] = _logsumexp(psi[t + 1, 1:] + beta[t + 1][None, :], axis=1)
    return beta


def _psi(seq, model: CrfModel) -> np.ndarray:
    index, weights = model.feature_index()
    return compile_sequence(seq, model.templates, model.labels, index).potentials(weights)


def sequence_score(seq: Sequence[Observation], labels: Sequence[str], model: CrfModel) -> float:
    """Unnormalized log-score: summed weights of the features the labeling fires."""
    if len(labels) != len(seq):
        raise ValueError(f"{len(labels)} labels for a sequence of length {len(seq)}")
    for y in labels:
        model.label_index(y)
    return float(sum(model.weights.get(f, 0.0) for f in active_features(seq, model.templates, labels)))


def log_partition(seq: Sequence[Observation], model: CrfModel) -> float:
    if not len(seq):
        raise ValueError("log_partition needs a non-empty sequence")
    alpha = forward(_psi(seq, model))
    return float(_logsumexp(alpha[-1]))


def viterbi(seq: Sequence[Observation], model: CrfModel) -> tuple[list[str], float]:
    """Highest-scoring labeling and its score.

    Among equally scored labelings the lexicographically smallest sequence
    of label indices wins: best completion scores are computed right to
    left, then labels are chosen left to right taking the smallest index
    that attains the maximum.
    """
    if not len(seq):
        raise ValueError("viterbi needs a non-empty sequence")
    psi = _psi(seq, model)
    T, K = psi.shape[0], psi.shape[2]
    best = np.zeros((T, K))
    for t in range(T - 2, -1, -1):
        best[t] = np.max(psi[t + 1, 1:] + best[t + 1][None, :], axis=1)
    path = [int(np.argmax(psi[0, 0] + best[0]))]
    for t in range(1, T):
        path.append(int(np.argmax(psi[t, path[-1] + 1] + best[t])))
    labels = [model.labels[k] for k in path]
    return labels, sequence_score(seq, labels, model)


@dataclass(frozen=True)
class Marginals:
    labels: tuple[str, ...]
    nodes: np.ndarray  # (T, K): P(y_t = k)
    edges: np.ndarray  # (T-1, K, K): P(y_{t-1} = j, y_t = k)
    log_z: float

    def at(self, t: int) -> dict[str, float]:
        return dict(zip(self.labels, self.nodes[t].tolist()))


def marginals_from_potentials(psi: np.ndarray, labels: Sequence[str] = ()) -> Marginals:
    alpha, beta = forward(psi), backward(psi)
    log_z = float(_logsumexp(alpha[-1]))
    nodes = np.exp(alpha + beta - log_z)
    edges = np.exp(alpha[:-1, :, None] + psi[1:, 1:, :] + beta[1:, None, :] - log_z)
    return Marginals(tuple(labels), nodes, edges, log_z)


def posterior_marginals(seq: Sequence[Observation], model: CrfModel) -> Marginals:
    if not len(seq):
        raise ValueError("posterior_marginals needs a non-empty sequence")
    return marginals_from_potentials(_psi(seq, model), model.labels)


def label_probability(seq, labels: Sequence[str], model: CrfModel, log_z: Optional[float] = None) -> float:
    if log_z is None:
        log_z = log_partition(seq, model)
    return float(np.exp(sequence_score(seq, labels, model) - log_z))
