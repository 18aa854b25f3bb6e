import random

from meridian.abelian import (
    AbelianGroup,
    abelianization,
    characters_of_order_dividing,
    mat_mul,
    smith_normal_form,
    surjects_onto,
)
from meridian.fpgroups import parse_presentation


def check_snf(matrix):
    snf = smith_normal_form(matrix)
    rows, cols = len(matrix), len(matrix[0])
    product = mat_mul(snf.u, mat_mul(matrix, snf.v))
    for i in range(rows):
        for j in range(cols):
            expected = snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
            assert product[i][j] == expected
    for a, b in zip(snf.diagonal, snf.diagonal[1:]):
        assert a > 0 and b % a == 0
    return snf


class TestSmithNormalForm:
    def test_identity(self):
        assert check_snf([[1, 0], [0, 1]]).diagonal == [1, 1]

    def test_divisibility_example(self):
        assert check_snf([[2, 4], [6, 8]]).diagonal == [2, 4]

    def test_rank_one(self):
        # exponent matrix of the two-bridge style relator plus a commutator
        assert check_snf([[1, -1], [0, 0]]).diagonal == [1]

    def test_random_transform_identity(self):
        rng = random.Random(10)
        for _ in range(40):
            m = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
            check_snf(m)

    def test_diagonal_product_is_determinant(self):
        rng = random.Random(12)
        for _ in range(30):
            m = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                   - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                   + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
            diag = smith_normal_form(m).diagonal
            product = 1
            for d in diag:
                product *= d
            if len(diag) == 3:
                assert product == abs(det)
            else:
                assert det == 0

    def test_invariants_stable_under_permutations(self):
        rng = random.Random(11)
        for _ in range(40):
            m = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(3)]
            base = smith_normal_form(m).diagonal
            rows = m[:]
            rng.shuffle(rows)
            cols = list(range(4))
            rng.shuffle(cols)
            shuffled = [[row[j] for j in cols] for row in rows]
            assert smith_normal_form(shuffled).diagonal == base


class TestAbelianization:
    def test_rank_one(self):
        p = parse_presentation(
            "gens x y; rel x*y*x*y*x = y*x*y*x*y;"
            " rel [x, y*x*y^-1*x*y*x*y^-1*x*y];")
        ab = abelianization(p)
        assert (ab.rank, ab.torsion) == (1, ())

    def test_plus_x5_is_z5(self, presets):
        ab = abelianization(presets["degtyarev-projective"])
        assert (ab.rank, ab.torsion) == (0, (5,))

    def test_orbifold_is_z10(self, presets):
        ab = abelianization(presets["p1-2-5-10"])
        assert (ab.rank, ab.torsion) == (0, (10,))
        assert str(ab) == "Z/10"

    def test_gen_images_kill_relators(self, presets):
        for p in presets.values():
            ab = abelianization(p)
            for rel in p.relators:
                assert ab.is_trivial_image(rel)

    def test_free_group(self):
        ab = abelianization(parse_presentation("gens x y z;"))
        assert (ab.rank, ab.torsion) == (3, ())


class TestCharacters:
    def test_full_torus_of_z10(self):
        a = AbelianGroup(0, (10,), ((1,),))
        chars = characters_of_order_dividing(a, 10)
        assert len(chars) == 10
        assert chars[0].is_trivial()
        assert [c.exponents for c in chars] == [(k,) for k in range(10)]

    def test_free_coordinate(self):
        a = AbelianGroup(1, (), ((1,),))
        assert len(characters_of_order_dividing(a, 10)) == 10

    def test_crt_torus(self):
        # Z/2 + Z/5 (canonically Z/10) still has ten characters of order | 10
        b = AbelianGroup(0, (2, 5))
        assert len(characters_of_order_dividing(b, 10)) == 10

    def test_modulus_one(self):
        a = AbelianGroup(1, (4,))
        chars = characters_of_order_dividing(a, 1)
        assert len(chars) == 1 and chars[0].is_trivial()

    def test_character_order(self):
        a = AbelianGroup(0, (10,))
        orders = sorted(c.order() for c in characters_of_order_dividing(a, 10))
        assert orders == [1, 2, 5, 5, 5, 5, 10, 10, 10, 10]


class TestSurjectsOnto:
    def test_cyclic_divisibility(self):
        assert surjects_onto(AbelianGroup(0, (4,)), AbelianGroup(0, (2,)))
        assert not surjects_onto(AbelianGroup(0, (5,)), AbelianGroup(0, (2,)))

    def test_cyclic_cannot_hit_rank_two(self):
        assert not surjects_onto(AbelianGroup(0, (4,)), AbelianGroup(0, (2, 2)))

    def test_free_rank_covers(self):
        assert surjects_onto(AbelianGroup(2, ()), AbelianGroup(0, (2, 2)))
        assert not surjects_onto(AbelianGroup(1, ()), AbelianGroup(0, (2, 2)))
