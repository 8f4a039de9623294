import json

import numpy as np
import pytest

from thetaframe.frames import (
    BlockFrameSpec,
    GeneralFrameSpec,
    analysis,
    build_block_frame,
    example_g1,
    example_g2,
    frame_from_dict,
    frame_from_json,
    frame_to_json,
    functional_dual_norm,
    identity_frame,
    l2_frame_bounds,
)
from thetaframe.hierarchy import WeightHierarchy, polynomial_hierarchy
from thetaframe.sequences import ScalarSequence

from helpers import random_block_frame


def sphere_grid(n=401):
    """Points on the unit sphere of R^3 from a regular angle grid."""
    th, ph = np.meshgrid(np.linspace(0, np.pi, n), np.linspace(0, 2 * np.pi, n))
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], -1).reshape(-1, 3)


def test_build_block_frame_g1_truncation():
    g = build_block_frame([(2, (1, 1)), (1, (2,)), (1, (3,))])
    assert g.matrix.tolist() == [[1, 0, 0], [1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert (g.m, g.dim) == (4, 3)
    assert g.endpoints.tolist() == [0, 2, 3, 4]
    assert [g.block_of(i) for i in range(4)] == [0, 0, 1, 2]


def test_single_and_negative():
    g = build_block_frame([(1, (1,))])
    assert (g.m, g.dim) == (1, 1)
    assert build_block_frame([(1, (-2,))]).matrix.tolist() == [[-2.0]]


@pytest.mark.parametrize("blocks", [[(1, (0,))], [(0, ())], [(2, (1,))]])
def test_block_constructor_rejects(blocks):
    with pytest.raises(ValueError):
        build_block_frame(blocks)


def test_general_rejects_zero_row():
    with pytest.raises(ValueError, match="row 1"):
        GeneralFrameSpec([[1.0, 0.0], [0.0, 0.0]])


def test_examples():
    assert example_g1(3).matrix.tolist() == [[1, 0, 0], [1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert example_g2(3).matrix.tolist() == [[1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert example_g1(2).matrix.tolist() == [[1, 0], [1, 0], [0, 2]]
    assert example_g1(1).matrix.tolist() == [[1], [1]]
    with pytest.raises(ValueError):
        example_g1(0)
    with pytest.raises(ValueError):
        example_g2(1)


def test_g2_is_not_a_block_frame():
    with pytest.raises(ValueError, match="contiguous"):
        BlockFrameSpec.from_matrix(example_g2(4).matrix)
    assert BlockFrameSpec.from_matrix(example_g1(4).matrix) == example_g1(4)


def test_analysis_examples():
    g = example_g1(3)
    assert analysis(g, [1, 0, 0]) == ScalarSequence([1, 1, 0, 0])
    f = np.array([1.0, 1.0, 1.0])
    assert analysis(g, f) == ScalarSequence(g.matrix @ f)
    assert analysis(g, f).padded(4).tolist() == [1, 1, 2, 3]
    assert analysis(g, np.zeros(3)) == ScalarSequence()
    with pytest.raises(ValueError):
        analysis(g, [1.0, 2.0])


def test_analysis_is_level_independent(rng):
    g = example_g1(4)
    h = polynomial_hierarchy(4, 3)
    f = rng.standard_normal(4)
    assert all(analysis(g, f, s, h) == analysis(g, f) for s in range(4))


def test_block_analysis_support(rng):
    g = random_block_frame(rng)
    for j in range(g.dim):
        v = g.apply(np.eye(g.dim)[j])
        assert np.flatnonzero(v).tolist() == list(range(*g.block_slice(j).indices(g.m)))
        assert np.array_equal(v[g.block_slice(j)], g.t[g.block_slice(j)])


def test_block_and_matrix_analysis_agree(rng):
    for _ in range(20):
        g = random_block_frame(rng)
        f = rng.standard_normal(g.dim)
        assert np.array_equal(g.apply(f), g.as_matrix().apply(f))


def test_dual_norm_against_grid():
    g = example_g1(3)
    pts = sphere_grid()
    grid_max = np.max(np.abs(pts @ g.matrix[2]))
    assert grid_max == pytest.approx(2.0, abs=1e-3)
    assert functional_dual_norm(g, 2) == 2.0
    # weighted unit ball {f : ||a f|| <= 1} = {u / a : ||u|| <= 1}
    h = WeightHierarchy([[1, 1, 1], [1, 4, 4]])
    grid_max = np.max(np.abs((pts / h.level(1)) @ g.matrix[2]))
    assert grid_max == pytest.approx(0.5, abs=1e-3)
    assert functional_dual_norm(g, 2, 1, h) == 0.5


def test_dual_norm_general_rows():
    G = GeneralFrameSpec([[0.6, 0.8], [3.0, 4.0]])
    assert functional_dual_norm(G, 0) == pytest.approx(1.0, rel=1e-15)
    assert functional_dual_norm(G, 1) == pytest.approx(5.0, rel=1e-15)
    with pytest.raises(IndexError):
        functional_dual_norm(G, 2)


def test_dual_norm_general_matches_block(rng):
    g = random_block_frame(rng)
    h = polynomial_hierarchy(g.dim, 2)
    for i in range(g.m):
        for s in range(3):
            assert g.as_matrix().dual_norm(i, s, h) == pytest.approx(g.dual_norm(i, s, h), rel=1e-15)


def test_dual_norm_non_increasing_in_level(rng):
    g = random_block_frame(rng)
    h = polynomial_hierarchy(g.dim, 3)
    for i in range(g.m):
        v = [g.dual_norm(i, s, h) for s in range(4)]
        assert all(a >= b for a, b in zip(v, v[1:]))


def test_frame_bounds_examples():
    # eigenvalues of G^T G, computed independently by LAPACK
    for g, expect in [(example_g1(3), (2.0, 9.0)), (example_g2(3), (1.0, 2.0)), (identity_frame(4), (1.0, 1.0))]:
        w = np.linalg.eigvalsh(g.matrix.T @ g.matrix)
        assert (w[0], w[-1]) == pytest.approx(expect, abs=1e-12)
        assert l2_frame_bounds(g) == pytest.approx(expect, abs=1e-12)


def test_weighted_frame_bounds(rng):
    g = random_block_frame(rng)
    h = polynomial_hierarchy(g.dim, 2)
    for s in range(3):
        M = g.matrix / h.level(s)
        w = np.linalg.eigvalsh(M.T @ M)
        assert l2_frame_bounds(g, s, h) == pytest.approx((w[0], w[-1]), rel=1e-12)
        f = rng.standard_normal(g.dim)
        A, B = l2_frame_bounds(g, s, h)
        energy = np.sum(g.apply(f) ** 2)
        nf2 = h.norm(f, s) ** 2
        assert A * nf2 <= energy * (1 + 1e-12) and energy <= B * nf2 * (1 + 1e-12)


def test_g1_upper_bound_grows():
    B = [l2_frame_bounds(example_g1(J))[1] for J in range(3, 9)]
    assert B == pytest.approx([J * J for J in range(3, 9)], rel=1e-12)


def test_json_round_trip():
    g = example_g1(3)
    text = frame_to_json(g)
    assert json.loads(text) == {"blocks": [{"mult": 2, "t": [1.0, 1.0]}, {"mult": 1, "t": [2.0]},
                                           {"mult": 1, "t": [3.0]}]}
    assert frame_from_json(text) == g
    G = example_g2(3)
    assert frame_from_dict(json.loads(frame_to_json(G))) == G
    with pytest.raises(ValueError):
        frame_from_dict({"rows": []})
