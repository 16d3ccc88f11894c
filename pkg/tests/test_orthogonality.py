import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantor_spectra.errors import DomainError, InstanceTooLargeError, PreconditionError
from cantor_spectra.numeric import mu_hat_values, truncation_level
from cantor_spectra.orthogonality import (
    HadamardCandidate,
    are_orthogonal,
    branching_profile,
    enumerate_hadamard_L,
    greedy_maximal_completion,
    hadamard_matrix,
    hadamard_triple_check,
    is_orthogonal_family,
    max_ratio_closed_subset,
    max_ratio_closed_subset_size,
    mu_hat_is_zero,
    scan_order,
    unitarity_deviation,
)
from cantor_spectra.system import build_system

from conftest import systems


class TestZeroTest:
    def test_examples(self, s4):
        assert mu_hat_is_zero(s4, 1)
        assert not mu_hat_is_zero(s4, 0)
        assert not mu_hat_is_zero(s4, 2)

    def test_against_product_on_random_systems(self):
        rng = random.Random(3)
        for _ in range(40):
            p = rng.choice([2, 3])
            alpha = rng.randint(1, 3)
            N = p**alpha
            m = rng.randint(1, N)
            D = [r + N * rng.randint(0, 2) for r in rng.sample(range(N), m)]
            s = build_system(p, alpha, D)
            ks = list(range(-200, 201))
            J = truncation_level(s, 200)
            vals = np.abs(mu_hat_values(s, ks, J))
            for k, v in zip(ks, vals):
                if mu_hat_is_zero(s, k):
                    assert v < 1e-9, (s, k)
                else:
                    assert v > 1e-9, (s, k)


class TestOrthogonality:
    def test_pairs(self, s4):
        assert are_orthogonal(s4, 0, 1)
        assert not are_orthogonal(s4, 5, 5)
        assert not are_orthogonal(s4, 0, 2)

    @given(systems(), st.integers(-300, 300), st.integers(-300, 300), st.integers(-300, 300))
    def test_symmetric_and_translation_invariant(self, s, a, b, c):
        assert are_orthogonal(s, a, b) == are_orthogonal(s, b, a)
        assert are_orthogonal(s, a + c, b + c) == are_orthogonal(s, a, b)

    def test_families(self, s4, s8):
        assert is_orthogonal_family(s8, [0]) == (True, None)
        assert is_orthogonal_family(s4, [0, 1, 4, 5]) == (True, None)
        assert is_orthogonal_family(s4, [2, 0]) == (False, (0, 2))
        assert is_orthogonal_family(s4, [0, 1, 3, 5, 2]) == (False, (0, 2))


class TestBranching:
    def test_examples(self, s4):
        prof = branching_profile(s4, [0, 1], 1)
        assert prof[()].digits == {0, 1} and prof[()].count == 2 and prof.within_bound
        assert all(r.count == 1 for r in branching_profile(s4, [0], 3))
        bad = branching_profile(s4, [0, 1, 2], 1)
        assert bad[()].count == 3 and not bad[()].within_bound
        assert bad.violations() == [bad[()]]
        assert not is_orthogonal_family(s4, [0, 1, 2])[0]

    def test_depth_validated(self, s4):
        with pytest.raises(DomainError):
            branching_profile(s4, [0], 0)

    def test_bound_on_small_subsets(self, s4):
        # all orthogonal subsets of [0, 32) of size <= 4 containing 0
        for r in range(1, 4):
            for rest in itertools.combinations(range(1, 32), r):
                S = (0,) + rest
                if is_orthogonal_family(s4, S)[0]:
                    assert branching_profile(s4, S, 3).within_bound, S

    @given(st.lists(st.integers(-2000, 2000), max_size=12))
    def test_bound_on_random_orthogonal_families(self, seed):
        s = build_system(2, 3, [0, 2, 4, 6])
        S = []
        for k in seed:
            if all(are_orthogonal(s, k, m) for m in S):
                S.append(k)
        assert branching_profile(s, S, 4).max_count <= 4


class TestHadamard:
    def test_examples(self):
        assert hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 1)))
        assert hadamard_triple_check(HadamardCandidate(8, (0, 2, 4, 6), (0, 2, 5, 7)))
        assert not hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 2)))
        assert hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 1)), "numeric")
        assert not hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 2)), "numeric")

    def test_matrix(self):
        M = hadamard_matrix(4, (0, 2), (0, 1))
        assert np.allclose(M, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
        assert unitarity_deviation(M) < 1e-15

    def test_candidate_validation(self):
        with pytest.raises(DomainError):
            HadamardCandidate(4, (0, 2), (0, 0))
        with pytest.raises(DomainError):
            HadamardCandidate(4, (0, 2), (0, 4))
        with pytest.raises(DomainError):
            hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 1, 2)))
        with pytest.raises(DomainError):
            hadamard_triple_check(HadamardCandidate(4, (0, 2), (0, 1)), "fuzzy")

    @pytest.mark.parametrize(
        "N,D",
        [(4, (0, 2)), (4, (0, 1)), (4, (1, 3, 6)), (8, (0, 2, 4, 6)), (8, (0, 4)), (8, (0, 1, 2, 3)),
         (8, (0, 2, 4, 5)), (9, (0, 3, 6)), (9, (0, 1, 2)), (9, (0, 4, 8)), (9, (0, 1))],
    )
    def test_modes_agree(self, N, D):
        for L in itertools.combinations(range(N), len(D)):
            cand = HadamardCandidate(N, D, L)
            assert hadamard_triple_check(cand, "exact") == hadamard_triple_check(cand, "numeric"), L

    def brute_force(self, N, D):
        return [L for L in itertools.combinations(range(N), len(D))
                if unitarity_deviation(hadamard_matrix(N, D, L)) < 1e-10]

    def test_enumerate_eight(self, s8):
        sets = enumerate_hadamard_L(s8)
        assert len(sets) == 16
        assert sets == self.brute_force(8, s8.D)
        pairs = [{0, 4}, {1, 5}, {2, 6}, {3, 7}]
        assert all(all(len(set(L) & pr) == 1 for pr in pairs) for L in sets)
        assert len(enumerate_hadamard_L(s8, containing_zero=True)) == 8

    def test_enumerate_small(self, s4, s3):
        assert enumerate_hadamard_L(s4) == [(0, 1), (0, 3), (1, 2), (2, 3)]
        assert enumerate_hadamard_L(s3) == [(0, 1, 2)]
        s9 = build_system(3, 2, [0, 1, 2])
        assert enumerate_hadamard_L(s9) == self.brute_force(9, (0, 1, 2))

    def test_enumerate_non_product(self, caplog):
        assert enumerate_hadamard_L(build_system(2, 3, [0, 2, 4, 5])) == []
        assert "not a product" in caplog.text


def brute_ratio_closed(p, betas):
    """Independent oracle: all subsets of the roots, largest that is ratio closed."""
    roots = {Fraction(0)} | {Fraction(s, p**b) for b in betas for s in range(p**b) if s % p}
    roots = sorted(roots)
    for size in range(len(roots), 0, -1):
        for sub in itertools.combinations(roots, size):
            if all((a - b) % 1 in roots for a in sub for b in sub):
                return size
    return 0


class TestRatioClosed:
    def test_examples(self):
        assert max_ratio_closed_subset_size(2, []) == 1
        assert max_ratio_closed_subset_size(2, [2]) == 2
        assert max_ratio_closed_subset_size(2, [1, 2]) == 4
        assert max_ratio_closed_subset(2, [1, 2]) == tuple(Fraction(k, 4) for k in range(4))

    @pytest.mark.parametrize("p,betas", [(2, [1]), (2, [3]), (2, [1, 3]), (3, [1]), (3, [2]), (3, [1, 2]), (2, [1, 2, 3])])
    def test_brute_force(self, p, betas):
        assert max_ratio_closed_subset_size(p, betas) == brute_ratio_closed(p, betas)

    @pytest.mark.parametrize("p,betas", [(2, [1, 2, 3]), (2, [2, 4, 5]), (3, [1, 3]), (2, [6])])
    def test_bound(self, p, betas):
        witness = max_ratio_closed_subset(p, betas)
        assert len(witness) <= p ** len(betas)
        roots = {Fraction(0)} | {Fraction(s, p**b) for b in betas for s in range(p**b) if s % p}
        assert all((a - b) % 1 in roots for a in witness for b in witness)

    def test_guard(self):
        with pytest.raises(InstanceTooLargeError):
            max_ratio_closed_subset_size(2, [7])
        with pytest.raises(InstanceTooLargeError):
            max_ratio_closed_subset_size(2, [1, 2, 3, 4])
        with pytest.raises(DomainError):
            max_ratio_closed_subset_size(4, [1])


class TestGreedy:
    def test_scan_order(self):
        assert list(scan_order(2)) == [0, 1, -1, 2, -2]

    def test_trivial(self, s4):
        assert greedy_maximal_completion(s4, [0], 0).elements == (0,)

    def test_small_window(self, s4):
        S = greedy_maximal_completion(s4, [0], 20)
        assert is_orthogonal_family(s4, S)[0]
        # window maximality: every other integer clashes with a member
        for k in range(-20, 21):
            if k not in S:
                assert any(not are_orthogonal(s4, k, m) for m in S)
        prof = branching_profile(s4, S, 2)
        assert prof[()].count == 2

    def test_eight(self, s8):
        S = greedy_maximal_completion(s8, [0], 511)
        prof = branching_profile(s8, S, 2)
        assert prof[()].count == 4
        assert all(r.count == 4 for r in prof if len(r.prefix) == 1)

    def test_preconditions(self, s4):
        with pytest.raises(PreconditionError, match="2 - 0"):
            greedy_maximal_completion(s4, [0, 2], 10)
        with pytest.raises(PreconditionError):
            greedy_maximal_completion(s4, [0, 17], 10)

    def test_keeps_seed(self, s4):
        S = greedy_maximal_completion(s4, [3], 30)
        assert 3 in S and is_orthogonal_family(s4, S)[0]
