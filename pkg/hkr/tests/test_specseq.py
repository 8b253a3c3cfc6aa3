import numpy as np
from numpy.testing import assert_raises

from hkr.exceptions import (InvalidFiltration, NotAComplex, WeightMismatch,
                            NotPrimitiveRoot, IndexOutOfRange)
from hkr import specseq
from hkr.specseq import FilteredComplex


def test_two_step():
    for p in (2, 3):
        FC = specseq.two_step_complex(p)
        E2 = specseq.compute_page(FC, 2)
        assert E2.dims() == {(0, 0): 1, (2, -1): 1}
        assert E2.d_rank(0, 0) == 1
        assert specseq.compute_page(FC, 3).total_dim == 0
        assert FC.total_cohomology() == 0


def test_first_page_rejected():
    FC = specseq.two_step_complex(2)
    assert_raises(IndexOutOfRange, specseq.compute_page, FC, 1)


def test_invalid_complexes():
    assert_raises(InvalidFiltration, FilteredComplex, 2, {0: 1, 1: 1},
                  {0: [[1]]}, {0: [1], 1: [0]})
    assert_raises(NotAComplex, FilteredComplex, 2, {0: 1, 1: 1, 2: 1},
                  {0: [[1]], 1: [[1]]})
    assert_raises(WeightMismatch, FilteredComplex, 3, {0: 1, 1: 1},
                  {0: [[1]]}, {0: [0], 1: [0]}, {0: [1], 1: [2]})


def test_graded_complex_degenerates():
    # the same map inside one level is killed on E_2
    FC = FilteredComplex(3, {0: 1, 1: 1}, {0: [[1]]}, {0: [1], 1: [1]})
    assert specseq.compute_page(FC, 2).total_dim == 0


def test_convergence():
    rng = np.random.RandomState(0)
    for p in (2, 3, 5):
        for _ in range(100):
            FC = specseq.random_filtered_complex(p, rng)
            P = specseq.pages(FC)
            assert P[0].r == 2
            assert P[-1].r == specseq.infinity_page(FC).r
            assert specseq.convergence_holds(FC)


def test_split_vanishing():
    rng = np.random.RandomState(1)
    for p in (2, 3):
        for n in range(3):
            for _ in range(15):
                FC, SD, _ = specseq.split_complex(p, n, rng)
                assert specseq.verify_split(FC, SD)
                assert specseq.split_vanishing_check(FC, SD)
                assert specseq.edge_matches_page(FC, SD)


def test_identity_split():
    FC = FilteredComplex(2, {0: 2, 1: 1}, {0: [[1, 0]]},
                         {0: [0, 2], 1: [0]})
    SD = specseq.identity_split(FC, 1)
    assert specseq.verify_split(FC, SD)
    assert specseq.extension_edge(FC, SD).is_zero()


def test_allowed_pages():
    assert specseq.allowed_pages(5, 2, 13) == [5, 9, 13]
    assert specseq.allowed_pages(3, 2, 7) == [3, 5, 7]
    assert_raises(NotPrimitiveRoot, specseq.allowed_pages, 7, 2, 10)


def test_adams_vanishing():
    rng = np.random.RandomState(2)
    for p, m in [(3, 2), (5, 2), (7, 3)]:
        for _ in range(15):
            FC = specseq.weight_pure_complex(p, m, rng)
            result = specseq.adams_vanishing_check(FC, m)
            assert result['ok'], result
    FC = specseq.weight_pure_complex(5, 2, rng)
    assert_raises(WeightMismatch, specseq.adams_vanishing_check, FC, 2, 3)
    assert_raises(NotPrimitiveRoot, specseq.weight_pure_complex, 5, 4, rng)


def test_weight_purity():
    FC = FilteredComplex(5, {0: 1}, levels={0: [1]}, weights={0: [3]})
    assert_raises(WeightMismatch, specseq.check_weight_purity, FC, 2)
    FC = FilteredComplex(5, {0: 1}, levels={0: [1]})
    assert_raises(WeightMismatch, specseq.check_weight_purity, FC, 2)
