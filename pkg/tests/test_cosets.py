import pytest

from meridian.abelian import abelianization
from meridian.cosets import (
    CosetOverflow,
    InvalidSubgroup,
    SubgroupSpec,
    abelian_invariants_of_subset,
    check_table,
    cyclic_table,
    dihedral_table,
    find_epimorphisms,
    regular_rep,
    regular_rep_and_center,
    reidemeister_schreier,
    todd_coxeter,
)
from meridian.fpgroups import Presentation, parse_presentation


def perm_closure_order(gens, degree):
    """Order of the permutation group generated by gens (tuples on 0..d-1)."""
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return len(seen)


class TestToddCoxeter:
    def test_degtyarev_projective_has_order_320(self, presets):
        table = todd_coxeter(presets["degtyarev-projective"])
        assert table.index == 320
        assert check_table(presets["degtyarev-projective"], table)

    def test_triangle_235_against_permutation_oracle(self):
        pres = parse_presentation("gens x y; rel x^2; rel y^3; rel (x*y)^5;")
        assert todd_coxeter(pres).index == 60
        # independent oracle: breadth-first closure of a permutation model;
        # searched once over S_5 and frozen here
        x = (1, 0, 3, 2, 4)
        found = None
        import itertools

        perms = list(itertools.permutations(range(5)))
        for cand in perms:
            # order 3 and x*cand of order 5, generating a group of order 60
            if _perm_order(cand) != 3:
                continue
            xy = tuple(cand[x[i]] for i in range(5))
            if _perm_order(xy) != 5:
                continue
            if perm_closure_order([x, cand], 5) == 60:
                found = cand
                break
        assert found is not None
        assert perm_closure_order([x, found], 5) == 60

    def test_triangle_223_order_six(self):
        pres = parse_presentation("gens x y; rel x^2; rel y^2; rel (x*y)^3;")
        assert todd_coxeter(pres).index == 6

    def test_xt_coordinates_give_same_quotient(self, presets):
        # the generators x, t = x^-1 y present the same group
        quotient = presets["degtyarev-affine-xt"].with_relators([(1,) * 5])
        assert todd_coxeter(quotient).index == 320

    def test_relators_fix_all_cosets(self, presets):
        pres = presets["degtyarev-projective"]
        tables = [todd_coxeter(pres)]
        orb = presets["p1-2-5-10"]
        tables.append(todd_coxeter(orb, SubgroupSpec.kernel_of(
            (10,), list(abelianization(orb).gen_images))))
        for source, table in zip((pres, orb), tables):
            assert check_table(source, table)
            for g in range(table.n_gens):
                assert sorted(table.action[g]) == list(range(table.index))

    def test_subgroup_words_mode(self):
        pres = parse_presentation("gens x y; rel x^2; rel y^3; rel (x*y)^5;")
        sub = SubgroupSpec.from_words([(1,)])   # subgroup generated by x
        table = todd_coxeter(pres, sub)
        assert table.index == 30
        assert table.trace(0, (1,)) == 0

    def test_overflow_is_distinguishable(self):
        free = parse_presentation("gens x y;")
        with pytest.raises(CosetOverflow):
            todd_coxeter(free, max_cosets=50)

    def test_kernel_mode_rejects_non_kernel_relator(self):
        pres = parse_presentation("gens x; rel x^3;")
        with pytest.raises(InvalidSubgroup):
            todd_coxeter(pres, SubgroupSpec.kernel_of((2,), [(1,)]))

    def test_kernel_mode_table(self, presets):
        pres = presets["p1-2-5-10"]
        ab = abelianization(pres)
        table = todd_coxeter(pres, SubgroupSpec.kernel_of(
            (10,), list(ab.gen_images)))
        assert table.index == 10
        assert check_table(pres, table)


def _perm_order(p):
    n = 1
    q = p
    identity = tuple(range(len(p)))
    while q != identity:
        q = tuple(p[q[i]] for i in range(len(p)))
        n += 1
    return nicht if False else n


class TestRegularRep:
    def test_degtyarev_center_is_klein(self, presets):
        table = todd_coxeter(presets["degtyarev-projective"])
        mt, center, invariants = regular_rep_and_center(table)
        assert mt.size == 320
        assert len(center) == 4
        assert invariants.torsion == (2, 2)
        assert mt.validate()

    def test_cyclic_center(self):
        pres = parse_presentation("gens x; rel x^5;")
        _, center, invariants = regular_rep_and_center(todd_coxeter(pres))
        assert len(center) == 5
        assert invariants.torsion == (5,)

    def test_odd_dihedral_center_trivial(self):
        pres = parse_presentation("gens x y; rel x^2; rel y^5; rel (x*y)^2;")
        _, center, invariants = regular_rep_and_center(todd_coxeter(pres))
        assert len(center) == 1
        assert invariants.torsion == ()

    def test_closure_of_generators_is_whole_group(self, presets):
        table = todd_coxeter(presets["p1-2-5-10"].with_relators([(1, 2) * 2]))
        mt = regular_rep(table)
        assert len(mt.closure(mt.generator_elements)) == mt.size

    def test_nontrivial_subgroup_rejected(self):
        pres = parse_presentation("gens x y; rel x^2; rel y^3; rel (x*y)^5;")
        table = todd_coxeter(pres, SubgroupSpec.from_words([(1,)]))
        with pytest.raises(ValueError):
            regular_rep(table)


class TestReidemeisterSchreier:
    def test_free_group_index_two(self):
        free = parse_presentation("gens x y;")
        table = todd_coxeter(free, SubgroupSpec.kernel_of((2,), [(1,), (1,)]))
        sub = reidemeister_schreier(free, table)
        ab = abelianization(sub)
        assert (ab.rank, ab.torsion) == (3, ())
        assert sub.relators == ()

    @pytest.mark.parametrize("index", [2, 3, 4])
    def test_nielsen_schreier_rank(self, index):
        free = parse_presentation("gens x y;")
        table = todd_coxeter(free, SubgroupSpec.kernel_of(
            (index,), [(1,), (0,)]))
        sub = reidemeister_schreier(free, table)
        ab = abelianization(sub)
        assert sub.relators == ()
        assert (ab.rank, ab.torsion) == (1 + index * (2 - 1), ())

    def test_index_one_keeps_abelianization(self, presets):
        pres = presets["p1-2-5-10"]
        table = todd_coxeter(pres, SubgroupSpec.from_words([(1,), (2,)]))
        assert table.index == 1
        sub = reidemeister_schreier(pres, table)
        a, b = abelianization(pres), abelianization(sub)
        assert (a.rank, a.torsion) == (b.rank, b.torsion)

    def test_orbifold_kernel_is_genus_two_surface(self, presets):
        pres = presets["p1-2-5-10"]
        ab = abelianization(pres)
        table = todd_coxeter(pres, SubgroupSpec.kernel_of(
            (10,), list(ab.gen_images)))
        sub = reidemeister_schreier(pres, table)
        sub_ab = abelianization(sub)
        assert (sub_ab.rank, sub_ab.torsion) == (4, ())

    def test_degtyarev_kernel_matches_recurrence_presentation(self, presets):
        """The derived subgroup presentation with the shift recurrence.

        An independent abelianization: generators t_n, n in Z, with relations
        t_(n+1) + t_(n+3) = t_n + t_(n+2) + t_(n+4) forces every t_n to be a
        Z-combination of t_0..t_3, and the alternating-sum relations become
        trivial, so H_1 = Z^4.  The rewritten kernel must agree.
        """
        from meridian.abelian import smith_normal_form

        window = 30
        rows = []
        for n in range(window - 4):
            row = [0] * window
            for offset, coeff in ((0, -1), (1, 1), (2, -1), (3, 1), (4, -1)):
                row[n + offset] = coeff
            rows.append(row)
        for n in range(window - 5):
            row = [0] * window
            for offset, coeff in ((0, 1), (1, -2), (2, 2), (3, -2), (4, 2),
                                  (5, -1)):
                row[n + offset] = coeff
            rows.append(row)
        snf = smith_normal_form(rows)
        rank = window - len([d for d in snf.diagonal if d])
        torsion = tuple(d for d in snf.diagonal if d >= 2)
        assert (rank, torsion) == (4, ())

        pres = presets["degtyarev-affine"].with_relators([(1, 2) * 5])
        table = todd_coxeter(pres, SubgroupSpec.kernel_of((10,), [(1,), (1,)]))
        sub = reidemeister_schreier(pres, table)
        ab = abelianization(sub)
        assert (ab.rank, ab.torsion) == (4, ())


class TestEpimorphisms:
    def test_affine_onto_dihedral_ten(self, presets):
        found = find_epimorphisms(presets["degtyarev-affine"], dihedral_table(10))
        assert found

    def test_projective_onto_cyclic_five(self, presets):
        found = find_epimorphisms(presets["degtyarev-projective"], cyclic_table(5))
        assert len(found) == 4

    def test_order_obstruction(self):
        pres = parse_presentation("gens x; rel x^2;")
        assert find_epimorphisms(pres, cyclic_table(3)) == []

    def test_stable_under_relator_reordering(self, presets):
        pres = presets["degtyarev-affine"]
        reordered = Presentation(pres.generators, pres.relators[::-1])
        a = find_epimorphisms(pres, dihedral_table(10))
        b = find_epimorphisms(reordered, dihedral_table(10))
        assert a == b

    def test_cap(self, presets):
        with pytest.raises(ValueError):
            find_epimorphisms(presets["degtyarev-affine"], dihedral_table(10),
                              cap=10)


class TestMultTables:
    def test_dihedral_validates(self):
        for order in (2, 6, 10, 12):
            assert dihedral_table(order).validate()

    def test_cyclic_validates(self):
        assert cyclic_table(7).validate()

    def test_abelian_invariants_of_subset(self):
        mt = cyclic_table(12)
        inv = abelian_invariants_of_subset(mt, list(range(12)))
        assert inv.torsion == (12,)
        klein = dihedral_table(4)          # the Klein four group
        inv = abelian_invariants_of_subset(klein, list(range(4)))
        assert inv.torsion == (2, 2)
