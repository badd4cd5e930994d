"""Regularized conditional log-likelihood, its gradient, and batch training."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .inference import CompiledSequence, compile_sequence, marginals_from_potentials
from .model import CrfModel
from .templates import FeatureTemplate, Observation

log = logging.getLogger(__name__)

Corpus = Sequence[tuple[Sequence[Observation], Sequence[str]]]


class CorpusError(ValueError):
    pass


class TrainingDivergedError(RuntimeError):
    def __init__(self, iteration: int, value: float):
        super().__init__(f"non-finite log-likelihood {value} at iteration {iteration}")
        self.iteration = iteration


@dataclass(frozen=True)
class TrainingParams:
    l2: float = 1.0
    max_iters: int = 200
    tolerance: float = 1e-4
    seed: int = 0


class _Objective:
    """Corpus compiled against a fixed feature index."""

    def __init__(self, corpus: Corpus, templates, labels, index: dict[str, int], grow: bool):
        self.labels = tuple(labels)
        label_ids = {y: k for k, y in enumerate(self.labels)}
        self.items: list[tuple[CompiledSequence, np.ndarray]] = []
        for n, (seq, gold) in enumerate(corpus):
            if len(seq) != len(gold):
                raise CorpusError(f"sequence {n}: {len(seq)} observations but {len(gold)} labels")
            try:
                gold_ids = np.array([label_ids[y] for y in gold], dtype=np.intp)
            except KeyError as exc:
                raise CorpusError(f"sequence {n}: label {exc.args[0]!r} not in alphabet") from None
            if not len(seq):
                continue
            self.items.append((compile_sequence(seq, templates, self.labels, index, grow=grow), gold_ids))
        self.size = len(index)
        self.observed = np.zeros(self.size)
        for compiled, gold in self.items:
            prev = np.concatenate(([0], gold[:-1] + 1))
            hit = (compiled.prev == prev[compiled.t]) & (compiled.cur == gold[compiled.t])
            np.add.at(self.observed, compiled.feat[hit], 1.0)

    def __call__(self, w: np.ndarray, l2: float) -> tuple[float, np.ndarray]:
        value = float(np.dot(self.observed, w))
        expected = np.zeros(self.size)
        for compiled, _ in self.items:
            psi = compiled.potentials(w)
            marg = marginals_from_potentials(psi)
            value -= marg.log_z
            # Probability mass on each (t, prev, cur) incidence.
            mass = np.empty(len(compiled.feat))
            first = compiled.t == 0
            mass[first] = marg.nodes[0, compiled.cur[first]]
            rest = ~first
            mass[rest] = marg.edges[compiled.t[rest] - 1, compiled.prev[rest] - 1, compiled.cur[rest]]
            np.add.at(expected, compiled.feat, mass)
        value -= 0.5 * l2 * float(np.dot(w, w))
        return value, self.observed - expected - l2 * w


def log_likelihood_and_gradient(corpus: Corpus, model: CrfModel, l2: float) -> tuple[float, dict[str, float]]:
    """Penalized conditional log-likelihood and its gradient.

    The gradient covers the model's weights plus every candidate feature the
    corpus can fire (those currently weigh zero).
    """
    index, weights = model.feature_index()
    index = dict(index)
    objective = _Objective(corpus, model.templates, model.labels, index, grow=True)
    w = np.zeros(len(index))
    w[: len(weights)] = weights
    value, grad = objective(w, l2)
    names = sorted(index, key=index.__getitem__)
    return value, dict(zip(names, grad.tolist()))


def train(
    corpus: Corpus,
    templates: Sequence[FeatureTemplate],
    labels: Sequence[str],
    params: TrainingParams = TrainingParams(),
) -> CrfModel:
    """Gradient ascent from zero weights with Barzilai-Borwein trial steps and
    Armijo backtracking, stopping when the gradient max-norm drops below
    ``params.tolerance`` or after ``params.max_iters`` steps.

    The optimizer is deterministic; ``params.seed`` is recorded in the model
    metadata so runs can be matched to their configuration.
    """
    if not corpus:
        raise CorpusError("cannot train on an empty corpus")
    labels = tuple(labels)
    index: dict[str, int] = {}
    objective = _Objective(corpus, templates, labels, index, grow=True)
    # Canonical feature order, independent of corpus traversal.
    names = sorted(index)
    order = np.array([index[n] for n in names], dtype=np.intp)
    w = np.zeros(len(names))

    def evaluate(x: np.ndarray) -> tuple[float, np.ndarray]:
        full = np.empty(len(x))
        full[order] = x
        value, grad = objective(full, params.l2)
        return value, grad[order]

    value, grad = evaluate(w)
    if not math.isfinite(value):
        raise TrainingDivergedError(0, value)
    step = 1.0 / max(1.0, float(np.linalg.norm(grad)))
    prev_w = prev_grad = None
    iteration = 0
    converged = float(np.max(np.abs(grad), initial=0.0)) < params.tolerance
    while not converged and iteration < params.max_iters:
        iteration += 1
        if prev_w is not None:
            s, y = w - prev_w, grad - prev_grad
            curvature = -float(np.dot(s, y))
            if curvature > 0:
                step = float(np.dot(s, s)) / curvature
        gnorm2 = float(np.dot(grad, grad))
        while step >= 1e-30:
            candidate = w + step * grad
            new_value, new_grad = evaluate(candidate)
            if math.isfinite(new_value) and new_value >= value + 1e-4 * step * gnorm2:
                break
            step *= 0.5
        else:
            if not math.isfinite(new_value):
                raise TrainingDivergedError(iteration, new_value)
            log.debug("line search stalled at iteration %d", iteration)
            break
        prev_w, prev_grad = w, grad
        w, value, grad = candidate, new_value, new_grad
        converged = float(np.max(np.abs(grad), initial=0.0)) < params.tolerance
        log.debug("iter %d: loglik %.6f |grad|max %.3e", iteration, value, np.max(np.abs(grad), initial=0.0))

    meta = {
        "l2": repr(float(params.l2)),
        "max_iters": str(params.max_iters),
        "tolerance": repr(float(params.tolerance)),
        "seed": str(params.seed),
        "iterations": str(iteration),
        "converged": "yes" if converged else "no",
        "loglik": repr(value),
    }
    return CrfModel(labels, tuple(templates), dict(zip(names, w.tolist())), meta=meta)


def gradient_max_norm(corpus: Corpus, model: CrfModel, l2: float) -> float:
    _, grad = log_likelihood_and_gradient(corpus, model, l2)
    return max((abs(g) for g in grad.values()), default=0.0)

