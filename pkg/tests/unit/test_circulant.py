# tests/unit/test_circulant.py
"""
Unit tests for circulant matrices over F_q
"""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from twisted_dpd.circulant import (
    Circulant,
    circ_inverse,
    circ_is_invertible,
    circ_is_invertible_by_elimination,
    circ_matvec,
    circ_mul,
    circ_solve,
    circ_solve_many,
    count_invertible,
    estimate_prob_invertible,
    expand,
    prob_invertible,
    random_reversible_vector,
    shift_index,
    z_vector,
)
from twisted_dpd.exceptions import InvalidParametersError, SingularCirculantError


class TestCirculant:
    """Tests for the Circulant value type and its dense expansion."""

    def test_expand_layout(self):
        """Test entry (i, j) = c[(i - j) mod n]: columns are downward shifts."""
        dense = expand(Circulant([1, 2, 3], 5))

        assert dense.tolist() == [[1, 3, 2], [2, 1, 3], [3, 2, 1]]

    def test_identity(self):
        """Test that the identity circulant expands to the identity matrix."""
        assert (expand(Circulant.identity(4, 7)) == np.eye(4, dtype=np.int64)).all()

    def test_reduces_column(self):
        """Test that columns are stored reduced and read-only."""
        C = Circulant([7, -1], 5)

        assert C.col.tolist() == [2, 4]
        assert not C.col.flags.writeable

    def test_shift_index_read_only(self):
        """Test that the cached index table cannot be mutated."""
        with pytest.raises(ValueError):
            shift_index(3)[0, 0] = 1

    def test_equality(self):
        """Test value equality."""
        assert Circulant([1, 2], 5) == Circulant([6, 7], 5)
        assert Circulant([1, 2], 5) != Circulant([1, 2], 7)


class TestProducts:
    """Tests for matrix-vector and matrix-matrix products."""

    def test_matvec_matches_dense(self, rng):
        """Test circ_matvec against expand-then-multiply."""
        q = 5
        for _ in range(20):
            C = Circulant(rng.integers(0, q, 5), q)
            x = rng.integers(0, q, 5)

            assert (circ_matvec(C, x) == (expand(C) @ x) % q).all()

    def test_matvec_dimension_mismatch(self):
        """Test that mismatched sizes raise."""
        with pytest.raises(InvalidParametersError):
            circ_matvec(Circulant([1, 2, 3], 5), [1, 2])

    def test_mul_matches_dense(self, rng):
        """Test that the product of circulants is the circulant of M_A applied to B's column."""
        q = 19
        A = Circulant(rng.integers(0, q, 19), q)
        B = Circulant(rng.integers(0, q, 19), q)

        assert (expand(circ_mul(A, B)) == (expand(A) @ expand(B)) % q).all()

    def test_mul_mismatch(self):
        """Test that circulants over different fields do not multiply."""
        with pytest.raises(InvalidParametersError):
            circ_mul(Circulant([1, 2], 5), Circulant([1, 2], 7))

    @pytest.mark.parametrize("n,q", [(19, 19), (23, 23), (41, 41), (6, 3)])
    def test_z_vector_factorization(self, n, q, rng):
        """Test M_z(b, c) = M_c M_b."""
        for _ in range(20):
            b = rng.integers(0, q, n)
            c = rng.integers(0, q, n)

            assert Circulant(z_vector(b, c, q), q) == circ_mul(Circulant(c, q), Circulant(b, q))

    def test_z_vector_by_definition(self):
        """Test z_l = sum over i + j = l of b_i c_j on a small case."""
        assert z_vector([1, 2, 0], [0, 1, 1], 5).tolist() == [2, 1, 3]


class TestInvertibility:
    """Tests for invertibility, inverses and solving."""

    @pytest.mark.parametrize("n,q", [(2, 3), (3, 3), (3, 5)])
    def test_gcd_matches_elimination_exhaustively(self, n, q):
        """Test that the gcd and rank verdicts agree on every column."""
        for col in product(range(q), repeat=n):
            C = Circulant(col, q)
            assert circ_is_invertible(C) == circ_is_invertible_by_elimination(C)

    def test_gcd_matches_elimination_random(self, rng):
        """Test agreement on random (19, 19) instances."""
        for _ in range(200):
            C = Circulant(rng.integers(0, 19, 19), 19)
            assert circ_is_invertible(C) == circ_is_invertible_by_elimination(C)

    def test_identity_invertible(self):
        """Test that M_1 is invertible."""
        assert circ_is_invertible(Circulant.identity(19, 19))

    def test_all_ones_singular(self):
        """Test that the all-ones column is singular when q divides n."""
        assert not circ_is_invertible(Circulant([1] * 19, 19))

    def test_inverse(self, rng):
        """Test M_c M_c^-1 = I on random invertible circulants."""
        q = 23
        checked = 0
        while checked < 20:
            C = Circulant(rng.integers(0, q, 23), q)
            if not circ_is_invertible(C):
                continue
            assert circ_mul(C, circ_inverse(C)) == Circulant.identity(23, q)
            checked += 1

    def test_singular_inverse_raises(self):
        """Test that inverting a singular circulant raises."""
        with pytest.raises(SingularCirculantError):
            circ_inverse(Circulant([1] * 19, 19))

    def test_solve(self, rng):
        """Test that circ_solve returns the unique a with M_c a = w."""
        q = 41
        C = Circulant([3] + [0] * 39 + [5], q)
        a = rng.integers(0, q, 41)
        w = circ_matvec(C, a)

        assert (circ_solve(C, w) == a).all()

    def test_solve_many(self, rng):
        """Test that one elimination serves several right-hand sides."""
        q = 19
        C = Circulant([1, 1] + [0] * 17, q)
        targets = [rng.integers(0, q, 19) for _ in range(3)]

        solutions = circ_solve_many(C, [circ_matvec(C, a) for a in targets])

        assert len(solutions) == 3
        for a, solution in zip(targets, solutions):
            assert (solution == a).all()
            assert (solution == circ_solve(C, circ_matvec(C, a))).all()

    def test_solve_agrees_with_inverse(self, rng):
        """Test that elimination and the gcd inverse give the same answer."""
        q = 23
        C = Circulant(random_reversible_vector(q, 23, rng), q)
        while not circ_is_invertible(C):
            C = Circulant(random_reversible_vector(q, 23, rng), q)
        w = rng.integers(0, q, 23)

        assert (circ_solve(C, w) == circ_matvec(circ_inverse(C), w)).all()

    def test_solve_many_singular_raises(self):
        """Test that a singular circulant is reported once for the whole batch."""
        C = Circulant([1] * 19, 19)

        with pytest.raises(SingularCirculantError):
            circ_solve_many(C, [np.zeros(19, dtype=np.int64), np.ones(19, dtype=np.int64)])


class TestCounting:
    """Tests for the invertible-circulant counting formula."""

    @pytest.mark.parametrize("n,q,expected", [(2, 3, 4), (3, 3, 18), (3, 5, 96)])
    def test_count_matches_enumeration(self, n, q, expected):
        """Test the product formula against brute force."""
        brute = sum(circ_is_invertible_by_elimination(Circulant(col, q)) for col in product(range(q), repeat=n))

        assert count_invertible(n, q) == expected == brute

    @pytest.mark.parametrize(
        "n,q,expected", [(19, 19, Fraction(18, 19)), (3, 3, Fraction(2, 3)), (4, 5, Fraction(256, 625))]
    )
    def test_prob_invertible(self, n, q, expected):
        """Test exact probabilities."""
        assert prob_invertible(n, q) == expected

    @pytest.mark.parametrize("q", [19, 23, 41])
    def test_prime_power_order(self, q):
        """Test that n = q gives probability exactly 1 - 1/q."""
        assert prob_invertible(q, q) == 1 - Fraction(1, q)

    def test_count_rejects_non_prime(self):
        """Test that counting over Z/9 is refused."""
        with pytest.raises(InvalidParametersError):
            count_invertible(3, 9)


class TestSampling:
    """Tests for reversible sampling and Monte Carlo estimates."""

    @pytest.mark.parametrize("n", [2, 5, 6, 19])
    def test_reversible_vector(self, n, rng):
        """Test b[i] = b[n - i] for i >= 1."""
        for _ in range(10):
            b = random_reversible_vector(19, n, rng)
            assert all(b[i] == b[n - i] for i in range(1, n))

    def test_estimate_requires_trials(self):
        """Test that at least one trial is required."""
        with pytest.raises(InvalidParametersError):
            estimate_prob_invertible(3, 3, 0, seed=1)

    @pytest.mark.parametrize("n,q", [(3, 9), (4, 4), (5, 1)])
    def test_estimate_rejects_non_prime(self, n, q):
        """Test that a composite modulus fails cleanly instead of overflowing the sampler."""
        with pytest.raises(InvalidParametersError):
            estimate_prob_invertible(n, q, 10, seed=1)

    def test_estimate_deterministic(self):
        """Test that equal seeds give equal estimates."""
        assert estimate_prob_invertible(5, 5, 300, seed=9) == estimate_prob_invertible(5, 5, 300, seed=9)

    def test_estimate_near_exact(self):
        """Test that the (3, 3) estimate is close to 2/3."""
        estimate = estimate_prob_invertible(3, 3, 3000, seed=3)

        assert abs(float(estimate) - 2 / 3) < 0.04

    def test_reversible_estimate_in_range(self):
        """Test that the reversible estimate is a probability."""
        estimate = estimate_prob_invertible(19, 19, 200, seed=3, reversible=True)

        assert 0 <= estimate <= 1
