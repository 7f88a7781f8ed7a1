import itertools

import pytest

from hallie.hall import (ARFamily, HallConfig, closed_subspace_tuples,
                         first_primes, hall_number_grass, hall_number_hom,
                         lagrange_interpolate)
from hallie.knit import knit
from hallie.reps import (MultiplicityVector, direct_sum, simple_rep,
                         sub_quotient)


@pytest.fixture(scope="module")
def a2_setup(algebras):
    spec = algebras["a2"]
    return spec, {p: knit(spec, p) for p in (2, 3, 5)}


def a2_modules(spec, ar, p):
    s1 = simple_rep(spec, "1", p)
    s2 = simple_rep(spec, "2", p)
    p1 = ar.vertex("1-1").rep
    return s1, s2, p1


class TestFirstPrimes:
    def test_basic(self):
        assert first_primes(4) == [2, 3, 5, 7]

    def test_excluded(self):
        assert first_primes(3, excluded=(2, 5)) == [3, 7, 11]


class TestCounting:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_unique_submodule(self, a2_setup, p):
        spec, ars = a2_setup
        ar = ars[p]
        s1, s2, p1 = a2_modules(spec, ar, p)
        assert hall_number_grass(ar, s2, s1, p1) == 1
        assert hall_number_hom(ar, s2, s1, p1) == 1

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_wrong_direction_is_empty(self, a2_setup, p):
        spec, ars = a2_setup
        ar = ars[p]
        s1, s2, p1 = a2_modules(spec, ar, p)
        assert hall_number_grass(ar, s1, s2, p1) == 0
        assert hall_number_hom(ar, s1, s2, p1) == 0

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_projective_line_count(self, a2_setup, p):
        spec, ars = a2_setup
        ar = ars[p]
        s1 = simple_rep(spec, "1", p)
        square = direct_sum(spec, s1.field, [s1, s1])
        assert hall_number_grass(ar, s1, s1, square) == p + 1
        assert hall_number_hom(ar, s1, s1, square) == p + 1

    def test_dimension_mismatch_gives_zero(self, a2_setup):
        spec, ars = a2_setup
        ar = ars[2]
        s1, s2, p1 = a2_modules(spec, ar, 2)
        assert hall_number_grass(ar, s1, s1, p1) == 0
        assert hall_number_hom(ar, s1, s1, p1) == 0

    def test_zero_submodule_class(self, a2_setup):
        spec, ars = a2_setup
        ar = ars[3]
        s1, s2, p1 = a2_modules(spec, ar, 3)
        from hallie.reps import zero_rep
        z = zero_rep(spec, p1.field)
        assert hall_number_grass(ar, z, p1, p1) == 1
        assert hall_number_hom(ar, z, p1, p1) == 1
        assert hall_number_grass(ar, p1, z, p1) == 1


class TestClosedTuples:
    def test_count_bounds_hall_number(self, a2_setup):
        # every counted submodule is in particular a stable tuple
        spec, ars = a2_setup
        ar = ars[2]
        s1, s2, p1 = a2_modules(spec, ar, 2)
        m = direct_sum(spec, p1.field, [p1, s2])
        for e1 in range(m.dims[0] + 1):
            for e2 in range(m.dims[1] + 1):
                tuples = list(closed_subspace_tuples(m, (e1, e2)))
                total = 0
                for n1_parts in _classes_of_dim(spec, ar, (e1, e2), 2):
                    n2_dims = (m.dims[0] - e1, m.dims[1] - e2)
                    for n2_parts in _classes_of_dim(spec, ar, n2_dims, 2):
                        total += hall_number_grass(ar, n1_parts, n2_parts, m)
                assert total <= len(tuples)

    def test_tuples_are_stable(self, a2_setup):
        spec, ars = a2_setup
        ar = ars[3]
        p1 = ar.vertex("1-1").rep
        m = direct_sum(spec, p1.field, [p1, p1])
        for tup in closed_subspace_tuples(m, (1, 1)):
            sub_quotient(m, tup)  # raises NotClosed if enumeration lied


def _classes_of_dim(spec, ar, dims, p):
    """All modules of the given dimension vector, as explicit direct sums."""
    from hallie.liealg import enumerate_module_classes
    for mv in enumerate_module_classes(ar, dims):
        yield ar.class_module(mv)


class TestOracleAgreement:
    @pytest.mark.parametrize("p", [2, 3])
    def test_a2_exhaustive_small(self, a2_setup, p):
        # every class triple with ambient total dimension <= 3
        spec, ars = a2_setup
        ar = ars[p]
        from hallie.liealg import enumerate_module_classes
        dim_vectors = [(d1, d2) for d1 in range(4) for d2 in range(4)
                       if 0 < d1 + d2 <= 3]
        for d in dim_vectors:
            for b in enumerate_module_classes(ar, d):
                m = ar.class_module(b)
                for e in itertools.product(*(range(x + 1) for x in d)):
                    rest = tuple(x - y for x, y in zip(d, e))
                    for a_mv in enumerate_module_classes(ar, e):
                        for c_mv in enumerate_module_classes(ar, rest):
                            n1 = ar.class_module(a_mv)
                            n2 = ar.class_module(c_mv)
                            grass = hall_number_grass(ar, n1, n2, m)
                            hom = hall_number_hom(ar, n1, n2, m)
                            assert grass == hom, (a_mv, c_mv, b, p)


class TestInterpolation:
    def test_lagrange_exact(self):
        # nodes (2,3,5), values of 2t^2 - t + 3
        coeffs = lagrange_interpolate([2, 3, 5], [9, 18, 48])
        assert coeffs == [3, -1, 2]

    def test_projective_line_polynomial(self, families):
        fam = families["a2"]
        s1 = MultiplicityVector.unit("1-0")
        b = MultiplicityVector({"1-0": 2})
        poly = fam.polynomial(s1, s1, b)
        assert poly.coefficients == (1, 1)
        assert poly.primes == (2, 3)
        assert poly.counts == (3, 4)
        assert poly.validation_prime == 5
        assert poly.validation_count == 6
        assert poly.evaluate(1) == 2

    def test_constant_polynomial(self, families):
        fam = families["a2"]
        poly = fam.polynomial(MultiplicityVector.unit("0-1"),
                              MultiplicityVector.unit("1-0"),
                              MultiplicityVector.unit("1-1"))
        assert poly.coefficients == (1,)

    def test_dim_law_violation_gives_zero_poly(self, families):
        fam = families["a2"]
        poly = fam.polynomial(MultiplicityVector.unit("1-0"),
                              MultiplicityVector.unit("1-0"),
                              MultiplicityVector.unit("1-1"))
        assert poly.is_zero()

    def test_polynomial_reproduces_every_observed_count(self, families):
        fam = families["a2"]
        s1 = MultiplicityVector.unit("1-0")
        b = MultiplicityVector({"1-0": 2})
        poly = fam.polynomial(s1, s1, b)
        for p, count in zip(poly.primes, poly.counts):
            assert poly.evaluate(p) == count
        assert poly.evaluate(poly.validation_prime) == poly.validation_count

    def test_excluded_primes_shift_nodes(self, algebras):
        fam = ARFamily(algebras["a2"], HallConfig(excluded_primes=(2,)))
        s1 = MultiplicityVector.unit("1-0")
        b = MultiplicityVector({"1-0": 2})
        poly = fam.polynomial(s1, s1, b)
        assert poly.primes == (3, 5)
        assert poly.validation_prime == 7
        assert poly.coefficients == (1, 1)
        assert poly.counts == (4, 6)

    def test_euler_characteristic(self, families):
        fam = families["a2"]
        assert fam.euler(MultiplicityVector.unit("0-1"),
                         MultiplicityVector.unit("1-0"),
                         MultiplicityVector.unit("1-1")) == 1
        assert fam.euler(MultiplicityVector.unit("1-0"),
                         MultiplicityVector.unit("1-0"),
                         MultiplicityVector({"1-0": 2})) == 2
        # mismatched dimension vectors
        assert fam.euler(MultiplicityVector.unit("1-0"),
                         MultiplicityVector.unit("1-0"),
                         MultiplicityVector.unit("1-1")) == 0


class TestBadPrimeProtocol:
    def _corrupt(self, fam, corruptions):
        real = fam.count

        def corrupted(a, c, b, p):
            return real(a, c, b, p) + corruptions.get(p, 0)
        fam.count = corrupted

    def test_retry_excludes_smallest_prime(self, algebras):
        from hallie.hall import ARFamily
        fam = ARFamily(algebras["a2"])
        self._corrupt(fam, {2: 1})  # make 2 look like a bad prime
        s1 = MultiplicityVector.unit("1-0")
        poly = fam.polynomial(s1, s1, MultiplicityVector({"1-0": 2}))
        assert poly.excluded_primes == (2,)
        assert poly.primes == (3, 5)
        assert poly.validation_prime == 7
        assert poly.coefficients == (1, 1)

    def test_persistent_disagreement_fails(self, algebras):
        from hallie.errors import InconsistentCounts
        from hallie.hall import ARFamily
        fam = ARFamily(algebras["a2"])
        self._corrupt(fam, {5: 2})  # corrupt the first validation prime
        s1 = MultiplicityVector.unit("1-0")
        with pytest.raises(InconsistentCounts):
            fam.polynomial(s1, s1, MultiplicityVector({"1-0": 2}))


class TestOracleEquivalenceReport:
    def test_small_report(self, algebras):
        from hallie.hall import check_oracle_equivalence
        rep = check_oracle_equivalence(algebras["a2"], (2,), max_total_dim=2)
        assert rep.ok
        assert rep.compared > 0 and rep.skipped == 0


class TestStrategyConfig:
    def test_hom_strategy_matches_grass(self, algebras):
        fam_g = ARFamily(algebras["a3_bound"], HallConfig(strategy="grass"))
        fam_h = ARFamily(algebras["a3_bound"], HallConfig(strategy="hom"))
        fam_a = ARFamily(algebras["a3_bound"], HallConfig(strategy="auto"))
        ar = fam_g.reference_quiver()
        s3 = MultiplicityVector.unit("0-0-1")
        p2 = MultiplicityVector.unit("0-1-1")
        s2 = MultiplicityVector.unit("0-1-0")
        for fam in (fam_g, fam_h, fam_a):
            assert fam.count(s3, s2, p2, 3) == 1

    def test_jobs_config_gives_same_polynomial(self, algebras):
        fam1 = ARFamily(algebras["a2"], HallConfig(jobs=1))
        fam4 = ARFamily(algebras["a2"], HallConfig(jobs=4))
        s1 = MultiplicityVector.unit("1-0")
        b = MultiplicityVector({"1-0": 2})
        assert fam1.polynomial(s1, s1, b) == fam4.polynomial(s1, s1, b)
