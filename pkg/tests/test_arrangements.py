"""Arrangements: hyperplanes, genericity with witnesses, stability, chambers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevalley.arrangements import (ArrangementError, Plane, find_stable_element,
                                    is_generic, lyapunov_hyperplanes,
                                    weyl_chambers)
from chevalley.roots import Root, build_root_system, standard_sl_roots

F = Fraction


def nullspace_oracle(rows, dim):
    """Independent tiny solver used to confirm expected lines."""
    work = [[F(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(dim):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for free in (c for c in range(dim) if c not in pivots):
        vec = [F(0)] * dim
        vec[free] = F(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][free]
        basis.append(tuple(vec))
    return basis


EXAMPLE_EQS = [[1, 1, 1, 1], [0, 1, 2, 3]]


class TestHyperplanes:
    def test_restricted_n2_gives_four(self):
        hps = lyapunov_hyperplanes(build_root_system(2).roots, 2)
        assert sorted(h.normal for h in hps) == [(0, 1), (1, -1), (1, 0), (1, 1)]

    def test_sl4_standard_gives_six(self):
        assert len(lyapunov_hyperplanes(standard_sl_roots(4), 4)) == 6

    def test_single_long_root(self):
        hps = lyapunov_hyperplanes([Root.of(2, 1)], 2)
        assert len(hps) == 1 and hps[0].normal == (1, 0)

    def test_merged_labels_are_antipodal_or_proportional(self):
        hps = lyapunov_hyperplanes(build_root_system(2).roots, 2)
        for h in hps:
            base = h.labels[0]
            for other in h.labels[1:]:
                ratio = None
                for a, b in zip(base.coeffs, other.coeffs):
                    if (a == 0) != (b == 0):
                        ratio = "bad"
                        break
                    if a:
                        q = F(b, a)
                        if ratio is None:
                            ratio = q
                        elif ratio != q:
                            ratio = "bad"
                            break
                assert ratio != "bad", (base, other)

    def test_zero_functional_rejected(self):
        with pytest.raises(ArrangementError):
            lyapunov_hyperplanes([(0, 0)], 2)


class TestGenericity:
    def test_example_plane_non_generic_with_expected_witness(self):
        hps = lyapunov_hyperplanes(standard_sl_roots(4), 4)
        plane = Plane.from_equations(4, EXAMPLE_EQS)
        verdict = is_generic(plane, hps)
        assert not verdict.generic and verdict.reason == "shared-line"
        normals = {h.normal for h in verdict.witness_pair}
        assert normals == {(1, 0, 0, -1), (0, 1, -1, 0)}  # L1-L4 and L2-L3
        assert verdict.shared_line == (1, -1, -1, 1)

    def test_shared_line_against_independent_solver(self):
        # the line must solve both {plane equations + functional = 0} systems
        line = nullspace_oracle(EXAMPLE_EQS + [[1, 0, 0, -1]], 4)
        line2 = nullspace_oracle(EXAMPLE_EQS + [[0, 1, -1, 0]], 4)
        assert len(line) == 1 and len(line2) == 1
        v = line[0]
        scale = next(x for x in line2[0] if x)
        scale0 = next(x for x in v if x)
        assert tuple(x / scale0 for x in v) == \
            tuple(x / scale for x in line2[0])
        normalized = tuple(x / scale0 for x in v)
        assert normalized == (1, -1, -1, 1)

    def test_full_plane_n2_generic(self):
        hps = lyapunov_hyperplanes(build_root_system(2).roots, 2)
        assert is_generic(Plane.full(2), hps).generic

    def test_containment_witness(self):
        hps = lyapunov_hyperplanes([Root.of(2, 1, 2, 1, -1)], 2)
        # a 1-dimensional "plane" is rejected outright
        with pytest.raises(ArrangementError):
            is_generic(Plane(2, ((1, 1),)), hps)
        contained = Plane(4, ((1, 1, 0, 0), (0, 0, 1, 1)))
        hp44 = lyapunov_hyperplanes([Root.of(4, 1, 2, 1, -1)], 4)
        verdict = is_generic(contained, hp44)
        assert not verdict.generic and verdict.reason == "contained"

    def test_basis_change_invariance(self):
        hps = lyapunov_hyperplanes(standard_sl_roots(4), 4)
        p1 = Plane.from_equations(4, EXAMPLE_EQS)
        b1, b2 = p1.basis
        alt = Plane(4, (tuple(3 * x + y for x, y in zip(b1, b2)),
                        tuple(x - y for x, y in zip(b1, b2))),
                    p1.constraints)
        v1 = is_generic(p1, hps)
        v2 = is_generic(alt, hps)
        assert v1.generic == v2.generic
        assert {h.normal for h in v1.witness_pair} == \
            {h.normal for h in v2.witness_pair}
        assert v1.shared_line == v2.shared_line

    def test_dependent_basis_rejected(self):
        with pytest.raises(ArrangementError):
            Plane(3, ((1, 2, 3), (2, 4, 6)))

    @given(st.lists(st.integers(-4, 4), min_size=4, max_size=4),
           st.lists(st.integers(-4, 4), min_size=4, max_size=4))
    @settings(max_examples=80, deadline=None)
    def test_random_plane_verdicts_are_self_certifying(self, b1, b2):
        # rank check: skip dependent picks
        m = [list(map(Fraction, b1)), list(map(Fraction, b2))]
        det_ok = any(m[0][i] * m[1][j] - m[0][j] * m[1][i]
                     for i in range(4) for j in range(i + 1, 4))
        if not det_ok:
            return
        plane = Plane(4, (tuple(b1), tuple(b2)))
        hps = lyapunov_hyperplanes(standard_sl_roots(4), 4)
        verdict = is_generic(plane, hps)
        if verdict.generic:
            return
        if verdict.reason == "contained":
            h = verdict.witness_pair[0]
            assert h.eval_at(b1) == 0 and h.eval_at(b2) == 0
        else:
            h1, h2 = verdict.witness_pair
            line = verdict.shared_line
            # the witness line lies on the plane and in both hyperplanes
            assert plane.contains(line)
            assert h1.eval_at(line) == 0 and h2.eval_at(line) == 0
            assert any(line)


class TestStableElements:
    def test_reference_points_validate(self):
        for point, roots in (((5, -8, 1, 2),
                              [Root.of(4, 3, 4, 1, -1), Root.of(4, 2, 3, 1, -1)]),
                             ((0, -1, 2, -1),
                              [Root.of(4, 1, 3, 1, -1), Root.of(4, 2, 3, 1, -1)])):
            assert all(r.eval(point) < 0 for r in roots)

    def test_found_point_strictly_negative(self):
        roots = [Root.of(4, 3, 4, 1, -1), Root.of(4, 2, 3, 1, -1)]
        res = find_stable_element(roots, ambient_dim=4)
        assert res.feasible
        assert all(r.eval(res.point) < 0 for r in roots)

    def test_on_region(self):
        plane = Plane.from_equations(4, EXAMPLE_EQS)
        roots = [Root.of(4, 3, 4, 1, -1), Root.of(4, 2, 3, 1, -1)]
        res = find_stable_element(roots, region=plane)
        assert res.feasible
        assert plane.contains(res.point)
        assert all(r.eval(res.point) < 0 for r in roots)

    def test_antipodal_certificate(self):
        r = Root.of(2, 1, 2, 1, -1)
        res = find_stable_element([r, -r], ambient_dim=2)
        assert not res.feasible
        # Farkas: nonnegative weights, not all zero, combination vanishes
        weights = dict(res.certificate)
        assert all(w >= 0 for w in weights.values()) and any(weights.values())
        combo = [F(0), F(0)]
        for idx, w in weights.items():
            vec = [r, -r][idx].coeffs
            combo = [c + w * x for c, x in zip(combo, vec)]
        assert not any(combo)

    def test_certificate_vanishes_on_region(self):
        # roots forced nonnegative-sum on the region: infeasible with proof
        plane = Plane(2, ((1, 1),))
        roots = [Root.of(2, 1, 2, 1, -1), Root.of(2, 2, 1, 1, -1)]
        res = find_stable_element(roots, region=plane)
        assert not res.feasible
        weights = dict(res.certificate)
        combo = [F(0), F(0)]
        for idx, w in weights.items():
            assert w >= 0
            combo = [c + w * x for c, x in zip(combo, roots[idx].coeffs)]
        # the combination need not vanish in ambient, but must on the region
        b = plane.basis[0]
        assert sum(c * x for c, x in zip(combo, b)) == 0

    def test_needs_roots(self):
        with pytest.raises(ArrangementError):
            find_stable_element([], ambient_dim=2)

    @given(st.sets(st.integers(0, 17), min_size=1, max_size=6))
    @settings(max_examples=120, deadline=None)
    def test_solver_always_proves_its_answer(self, picks):
        # every answer is self-certifying: a strictly-negative point, or
        # nonnegative weights combining the functionals to zero
        roots = build_root_system(3).roots
        chosen = [roots[k] for k in sorted(picks)]
        res = find_stable_element(chosen, ambient_dim=3)
        if res.feasible:
            assert all(r.eval(res.point) < 0 for r in chosen)
        else:
            weights = dict(res.certificate)
            assert all(w >= 0 for w in weights.values()) and weights
            combo = [Fraction(0)] * 3
            for idx, w in weights.items():
                combo = [c + w * x for c, x in zip(combo, chosen[idx].coeffs)]
            assert not any(combo)

    @given(st.sets(st.integers(0, 17), min_size=1, max_size=5),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_solver_on_random_line_regions(self, picks, direction):
        if not any(direction):
            direction = [1, 0, 0]
        region = Plane(3, (tuple(direction),))
        roots = build_root_system(3).roots
        chosen = [roots[k] for k in sorted(picks)]
        res = find_stable_element(chosen, region=region)
        if res.feasible:
            assert region.contains(res.point)
            assert all(r.eval(res.point) < 0 for r in chosen)
        else:
            weights = dict(res.certificate)
            assert all(w >= 0 for w in weights.values()) and weights
            combo = [Fraction(0)] * 3
            for idx, w in weights.items():
                combo = [c + w * x for c, x in zip(combo, chosen[idx].coeffs)]
            # the weighted functional vanishes on the region
            assert sum(c * x for c, x in zip(combo, direction)) == 0


class TestChambers:
    def test_restricted_n2_eight(self):
        hps = lyapunov_hyperplanes(build_root_system(2).roots, 2)
        cm = weyl_chambers(hps, ambient_dim=2)
        assert len(cm) == 8

    def test_single_hyperplane_two(self):
        hps = lyapunov_hyperplanes([Root.of(2, 1)], 2)
        assert len(weyl_chambers(hps, ambient_dim=2)) == 2

    def test_sl4_trace_zero_gives_weyl_group_order(self):
        hps = lyapunov_hyperplanes(standard_sl_roots(4), 4)
        region = Plane.from_equations(4, [[1, 1, 1, 1]])
        assert len(weyl_chambers(hps, region=region)) == 24

    def test_samples_realize_signs(self):
        hps = lyapunov_hyperplanes(build_root_system(2).roots, 2)
        cm = weyl_chambers(hps, ambient_dim=2)
        signatures = set()
        for signs, pt in cm.chambers:
            signatures.add(signs)
            for s, h in zip(signs, cm.hyperplanes):
                assert s * h.eval_at(pt) > 0
        assert len(signatures) == len(cm.chambers)
