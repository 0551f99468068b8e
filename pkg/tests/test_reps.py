"""Simple modules, characters, and decomposition of integer representations."""

import math
import random

import pytest

from klcells.algebra import kl_regular_matrices
from klcells.cells import cell_module
from klcells.dihedral import dihedral_group
from klcells.exact import block_matrix, identity_matrix, mat_mul, zero_matrix
from klcells.reps import (
    Decomposition,
    NotAModuleError,
    OneDim,
    TwoDim,
    char_poly_two_dim,
    character,
    decompose,
    kl_generator_matrices,
    module_dim,
    simple_name,
    simples,
)


def test_simples_inventory():
    for n in range(3, 10):
        modules = simples(n)
        onedims = [m for m in modules if isinstance(m, OneDim)]
        twodims = [m for m in modules if isinstance(m, TwoDim)]
        if n % 2 == 0:
            assert len(onedims) == 4
        else:
            assert len(onedims) == 2
            assert all(m.eps == m.delta for m in onedims)
        assert len(twodims) == (n - 1) // 2 if n % 2 else n // 2 - 1
        assert sum(module_dim(m) ** 2 for m in modules) == 2 * n
    with pytest.raises(ValueError):
        simples(2)


def test_simple_names():
    assert [simple_name(m, 4) for m in simples(4)] == [
        "V(1,1)",
        "V(1,-1)",
        "V(-1,1)",
        "V(-1,-1)",
        "V(4,1)",
    ]
    assert [simple_name(m, 5) for m in simples(5)] == [
        "V(1,1)",
        "V(-1,-1)",
        "V(5,1)",
        "V(5,2)",
    ]


def test_character_values():
    group = dihedral_group(4)
    text = group.element_from_text
    v = TwoDim(1)
    assert character(v, 4, group.identity()) == pytest.approx(2.0)
    assert character(v, 4, text("s")) == pytest.approx(0.0)
    assert character(v, 4, text("st")) == pytest.approx(2 * math.cos(math.pi / 2), abs=1e-12)
    assert character(v, 4, group.longest_element()) == pytest.approx(-2.0)
    triv = OneDim(1, 1)
    sign = OneDim(-1, -1)
    for w in group.all_elements():
        assert character(triv, 4, w) == pytest.approx(1.0)
        assert character(sign, 4, w) == pytest.approx((-1.0) ** w.length)
    mixed = OneDim(1, -1)
    assert character(mixed, 4, text("s")) == pytest.approx(1.0)
    assert character(mixed, 4, text("t")) == pytest.approx(-1.0)
    assert character(mixed, 4, text("st")) == pytest.approx(-1.0)


def test_character_orthogonality():
    # characters of the simples form an orthonormal family for the
    # normalized pairing <x, y> = (1/2n) sum_w x(w) y(w)
    for n in range(3, 9):
        group = dihedral_group(n)
        modules = simples(n)
        for a in modules:
            for b in modules:
                pairing = sum(
                    character(a, n, w) * character(b, n, w) for w in group.all_elements()
                ) / (2 * n)
                assert pairing == pytest.approx(1.0 if a == b else 0.0, abs=1e-9)


def test_kl_generator_matrices():
    b_s, b_t = kl_generator_matrices(4, TwoDim(1))
    assert len(b_s) == 2
    # b(s) acts with eigenvalues 2 and 0 in the two-dimensional module
    assert b_s[0][0] == pytest.approx(2.0)
    assert b_s[0][1] == pytest.approx(0.0)
    assert b_s[1][0] == pytest.approx(0.0)
    assert b_s[1][1] == pytest.approx(0.0)
    for n in (3, 4, 5):
        for module in simples(n):
            m_s, m_t = kl_generator_matrices(n, module)
            dim = module_dim(module)
            # both generator images square to twice themselves
            for m in (m_s, m_t):
                sq = [
                    [sum(m[i][k] * m[k][j] for k in range(dim)) for j in range(dim)]
                    for i in range(dim)
                ]
                for i in range(dim):
                    for j in range(dim):
                        assert sq[i][j] == pytest.approx(2 * m[i][j], abs=1e-9)


def test_char_poly_two_dim_integral_cases():
    # x^2 - 4x + c with c = 3, 2, 1 exactly when n/k is 3, 4, 6
    assert char_poly_two_dim(3, 1).integer_coefficients == (3, -4, 1)
    assert char_poly_two_dim(4, 1).integer_coefficients == (2, -4, 1)
    assert char_poly_two_dim(6, 1).integer_coefficients == (1, -4, 1)
    assert char_poly_two_dim(6, 2).integer_coefficients == (3, -4, 1)
    assert char_poly_two_dim(8, 2).integer_coefficients == (2, -4, 1)
    assert char_poly_two_dim(12, 2).integer_coefficients == (1, -4, 1)
    for n, k in ((5, 1), (5, 2), (7, 3), (8, 1)):
        q = char_poly_two_dim(n, k)
        assert not q.has_integer_coefficients
        assert q.integer_coefficients is None
        # the exact constant term is 2 - 2cos(2 pi k / n)
        assert q.coefficients[0] == pytest.approx(2 - 2 * math.cos(2 * math.pi * k / n))
    with pytest.raises(ValueError):
        char_poly_two_dim(4, 0)
    with pytest.raises(ValueError):
        char_poly_two_dim(4, 2)


def test_decompose_cell_modules_frozen():
    assert decompose(4, *cell_module(4, "Le").generator_pair()).render() == "V(-1,-1)"
    assert decompose(4, *cell_module(4, "Lw0").generator_pair()).render() == "V(1,1)"
    assert decompose(4, *cell_module(4, "Ls").generator_pair()).render() == "V(1,-1) ⊕ V(4,1)"
    assert decompose(4, *cell_module(4, "Lt").generator_pair()).render() == "V(-1,1) ⊕ V(4,1)"
    ls = decompose(4, *cell_module(4, "Ls").generator_pair())
    lt = decompose(4, *cell_module(4, "Lt").generator_pair())
    assert ls.as_dict() != lt.as_dict()
    assert ls.multiplicity(TwoDim(1)) == 1
    assert ls.multiplicity(OneDim(1, -1)) == 1
    assert ls.multiplicity(OneDim(-1, 1)) == 0
    assert ls.total_dim() == 3


def test_decompose_regular_representation():
    # every simple occurs with multiplicity equal to its dimension
    for n in (3, 4, 5, 6):
        m_s, m_t = kl_regular_matrices(n)
        dec = decompose(n, m_s, m_t)
        assert dec.as_dict() == {m: module_dim(m) for m in simples(n)}
        assert dec.total_dim() == 2 * n


def test_decompose_odd_n_cells():
    # odd n has no mixed-sign one-dimensionals; middle cells give sums of
    # two-dimensionals only
    dec = decompose(5, *cell_module(5, "Ls").generator_pair())
    assert dec.as_dict() == {TwoDim(1): 1, TwoDim(2): 1}


def test_decompose_rejects_non_modules():
    with pytest.raises(NotAModuleError) as info:
        decompose(4, ((3,),), ((0,),))
    assert info.value.relation == "(A_s - I)^2 != I"
    with pytest.raises(NotAModuleError):
        decompose(4, ((1, 0),), ((0,),))  # not square
    # generator images fine, braid relation broken: order-3 rotation at n=4
    a_s = ((2, 1), (0, 0))
    a_t = ((0, 0), (1, 2))
    with pytest.raises(NotAModuleError) as info:
        decompose(4, a_s, a_t)
    assert "^4 != I" in info.value.relation
    # and the same pair is a perfectly good module at n=3
    assert decompose(3, a_s, a_t).as_dict() == {TwoDim(1): 1}


def unimodular_pair(rng, dim):
    """A random integer matrix with determinant +-1, and its exact inverse."""
    u = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    u_inv = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(3 * dim):
        i, j = rng.randrange(dim), rng.randrange(dim)
        if i == j:
            continue
        c = rng.choice((-1, 1))
        # row_j += c * row_i on u; the inverse composes on the other side
        for k in range(dim):
            u[j][k] += c * u[i][k]
        for k in range(dim):
            u_inv[k][i] -= c * u_inv[k][j]
    return tuple(map(tuple, u)), tuple(map(tuple, u_inv))


def test_decompose_random_conjugated_sums():
    rng = random.Random(40320)
    names = ("Le", "Ls", "Lt", "Lw0")
    for _ in range(120):
        n = rng.randint(3, 6)
        picks = [rng.choice(names) for _ in range(rng.randint(1, 3))]
        modules = [cell_module(n, name) for name in picks]
        sizes = [len(m.cell) for m in modules]
        total = sum(sizes)

        def stacked(letter_index):
            blocks = []
            for i, module in enumerate(modules):
                row = []
                for j, size in enumerate(sizes):
                    if i == j:
                        row.append(module.generator_pair()[letter_index])
                    else:
                        row.append(zero_matrix(sizes[i], size))
                blocks.append(row)
            return block_matrix(blocks)

        a_s, a_t = stacked(0), stacked(1)
        u, u_inv = unimodular_pair(rng, total)
        assert mat_mul(u, u_inv) == identity_matrix(total)
        conj_s = mat_mul(u, mat_mul(a_s, u_inv))
        conj_t = mat_mul(u, mat_mul(a_t, u_inv))

        expected: dict = {}
        for module in modules:
            for simple, mult in decompose(n, *module.generator_pair()).as_dict().items():
                expected[simple] = expected.get(simple, 0) + mult
        assert decompose(n, conj_s, conj_t).as_dict() == expected


def test_decomposition_render_and_json():
    dec = decompose(4, *kl_regular_matrices(4))
    assert dec.render() == "V(1,1) ⊕ V(1,-1) ⊕ V(-1,1) ⊕ V(-1,-1) ⊕ 2·V(4,1)"
    assert dec.to_jsonable() == {
        "V(1,1)": 1,
        "V(1,-1)": 1,
        "V(-1,1)": 1,
        "V(-1,-1)": 1,
        "V(4,1)": 2,
    }
    empty = Decomposition(4, ())
    assert empty.render() == "0"
    assert empty.total_dim() == 0
