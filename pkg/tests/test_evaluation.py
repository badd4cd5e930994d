import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamildep.core import DependencyTree
from tamildep.evaluation import AlignmentError, Metrics, edge_prf, f_measure, format_percent, sentence_accuracy

from oracles import random_tree_heads


def tree(*heads):
    return DependencyTree.from_heads(heads)


def test_perfect_prediction():
    gold = [tree(3, 3, 0), tree(0)]
    m = edge_prf(gold, gold)
    assert (m.precision, m.recall, m.f_measure) == (1.0, 1.0, 1.0)
    assert (m.correct_sentences, m.total_sentences) == (2, 2)


def test_partial_prediction_counts():
    # 5 gold edges, 4 predicted, 2 of them right.
    gold = [tree(2, 0, 2), tree(0, 1)]
    pred = [(2, 0, None), (2, 2)]
    m = edge_prf(gold, pred)
    assert m.precision == 0.5 and m.recall == 0.4
    assert m.f_measure == pytest.approx(4 / 9, abs=1e-15)
    assert sentence_accuracy(gold, pred) == (0, 2)


@pytest.mark.parametrize("p,r,f", [(0.8278, 0.9367, 0.8789), (0.6378, 0.5632, 0.5982)])
def test_table_values(p, r, f):
    assert abs(f_measure(p, r) - f) <= 0.00005
    assert format_percent(f_measure(p, r)) == f"{100 * f:.2f}"


def test_sentence_accuracy_ratio():
    gold = [tree(0)] * 150
    pred = [(0,)] * 120 + [(None,)] * 30
    assert sentence_accuracy(gold, pred) == (120, 150)
    assert edge_prf(gold, pred).sentence_accuracy == pytest.approx(0.8)


def test_alignment_errors():
    with pytest.raises(AlignmentError):
        edge_prf([tree(0)], [])
    with pytest.raises(AlignmentError):
        edge_prf([tree(0)], [(0, 1)])
    with pytest.raises(AlignmentError):
        sentence_accuracy([tree(0), tree(0)], [(0,)])


def test_empty_prediction_is_zero():
    m = edge_prf([tree(0)], [(None,)])
    assert (m.precision, m.recall, m.f_measure) == (0.0, 0.0, 0.0)
    assert f_measure(0.0, 0.0) == 0.0
    assert Metrics.from_pr(0.5, 0.5).f_measure == 0.5


unit = st.floats(min_value=1e-6, max_value=1.0)


@given(unit, unit)
def test_harmonic_mean_identity(p, r):
    exact = Fraction(2) * Fraction(p) * Fraction(r) / (Fraction(p) + Fraction(r))
    f = f_measure(p, r)
    assert f == pytest.approx(float(exact), rel=1e-14)
    assert 1 / f == pytest.approx((1 / p + 1 / r) / 2, rel=1e-12)
    assert min(p, r) - 1e-15 <= f <= max(p, r) + 1e-15


@given(st.integers(0, 10**6))
def test_permutation_invariance(seed):
    rng = random.Random(seed)
    gold, pred = [], []
    for _ in range(rng.randint(1, 8)):
        n = rng.randint(1, 6)
        gold.append(tree(*random_tree_heads(rng, n)))
        pred.append(tuple(rng.choice([None, *range(n + 1)]) for _ in range(n)))
    order = list(range(len(gold)))
    rng.shuffle(order)
    a = edge_prf(gold, pred)
    b = edge_prf([gold[i] for i in order], [pred[i] for i in order])
    assert a == b
