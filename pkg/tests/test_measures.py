"""Atomic measures: transforms against classical oracles, regularity and
decay fits, dyadic frequency pieces, file round trip."""

import math

import numpy as np
import pytest
from scipy import special

from restrictionlab.bumps import dyadic_ring, radial_plateau
from restrictionlab.grids import GridSpec, fourier_on_grid, inverse_fourier_on_grid
from restrictionlab.measures import (
    DiscreteMeasure,
    ball_regularity_profile,
    dyadic_piece,
    fourier_decay_profile,
    fourier_transform_at,
    load_measure,
    make_cantor_measure,
    make_point_mass,
    make_random_cantor_measure,
    make_sphere_measure,
    save_measure,
)


def test_measure_validation():
    with pytest.raises(ValueError, match="shape"):
        DiscreteMeasure(dim=2, atoms=np.zeros((3, 1)), weights=np.full(3, 1 / 3))
    with pytest.raises(ValueError, match="nonnegative"):
        DiscreteMeasure(dim=1, atoms=np.zeros((2, 1)), weights=np.array([1.5, -0.5]))
    with pytest.raises(ValueError, match="sum to 1"):
        DiscreteMeasure(dim=1, atoms=np.zeros((2, 1)), weights=np.array([0.7, 0.7]))


def test_constructor_validation():
    with pytest.raises(ValueError, match="d = 2 .* d = 3"):
        make_sphere_measure(4, 64)
    with pytest.raises(ValueError, match="n_atoms >= 16"):
        make_sphere_measure(2, 8)
    with pytest.raises(ValueError, match="contraction_ratio"):
        make_cantor_measure(0.6, 4)
    with pytest.raises(ValueError, match="levels"):
        make_cantor_measure(0.3, 0)
    with pytest.raises(ValueError, match="levels"):
        make_cantor_measure(0.3, 26)
    with pytest.raises(ValueError, match="experimental"):
        make_random_cantor_measure(0.3, 4)


def test_circle_measure_basic_shape():
    m = make_sphere_measure(2, 16)
    assert m.n_atoms == 16
    assert np.allclose(np.linalg.norm(m.atoms, axis=1), 1.0)
    assert np.all(m.weights == 1.0 / 16)


def test_point_mass_transform_is_one():
    pm = make_point_mass([0.0, 0.0])
    xi = np.array([[0.0, 0.0], [3.0, -1.0], [10.0, 7.5]])
    assert np.max(np.abs(fourier_transform_at(pm, xi) - 1.0)) < 1e-15


def test_transform_at_zero_is_total_mass():
    for m in (make_sphere_measure(2, 64), make_cantor_measure(1 / 3, 6)):
        xi = np.zeros((1, m.dim))
        assert fourier_transform_at(m, xi)[0] == pytest.approx(1.0, abs=1e-14)


def test_circle_transform_matches_bessel():
    # the equispaced rule is spectrally accurate well past the quoted
    # trust radius; probe random points of radius up to 100
    m = make_sphere_measure(2, 1024)
    rng = np.random.default_rng(0)
    ang = rng.uniform(0.0, 2.0 * np.pi, 200)
    rad = rng.uniform(0.0, 100.0, 200)
    xi = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
    got = fourier_transform_at(m, xi)
    assert np.max(np.abs(got - special.j0(2.0 * np.pi * rad))) < 1e-6


def test_circle_transform_axis_point():
    m = make_sphere_measure(2, 1024)
    v = fourier_transform_at(m, np.array([[10.0, 0.0]]))[0]
    assert abs(v - special.j0(20.0 * np.pi)) < 1e-6


def test_sphere_transform_matches_sinc():
    # surface measure of S^2 transforms to sin(2 pi R)/(2 pi R)
    rng = np.random.default_rng(1)
    for n, r_max, tol in ((4096, 8.0, 5e-4), (16384, 16.0, 1e-4)):
        m = make_sphere_measure(3, n)
        rad = np.linspace(0.5, r_max, 120)
        dirs = rng.standard_normal((120, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        got = fourier_transform_at(m, rad[:, None] * dirs)
        assert np.max(np.abs(got - np.sinc(2.0 * rad))) < tol


def test_cantor_transform_is_cosine_product():
    # |mu_hat(xi)| = prod_k |cos(pi (1-c) c^(k-1) xi)| for the level-L set
    for c, levels in ((1 / 3, 10), (1 / 4, 8), (1 / 2, 6)):
        m = make_cantor_measure(c, levels)
        xi = np.linspace(0.3, min(m.alias_radius, 200.0), 250)
        got = np.abs(fourier_transform_at(m, xi))
        k = np.arange(1, levels + 1)
        pred = np.prod(
            np.abs(np.cos(np.pi * np.outer(xi, (1.0 - c) * c ** (k - 1)))), axis=1
        )
        assert np.max(np.abs(got - pred)) < 1e-8


def test_half_ratio_cantor_is_uniform_mesh():
    m = make_cantor_measure(0.5, 3)
    assert np.allclose(np.sort(m.atoms.ravel()), np.arange(8) / 8.0 + 1.0 / 16.0)


def test_transform_modulus_bounded_by_one():
    m = make_cantor_measure(1 / 3, 8)
    xi = np.linspace(-50.0, 50.0, 1001)
    assert np.max(np.abs(fourier_transform_at(m, xi))) <= 1.0 + 1e-12


def test_transform_hermitian_symmetry():
    m = make_sphere_measure(2, 128)
    rng = np.random.default_rng(2)
    xi = rng.uniform(-5.0, 5.0, (50, 2))
    f_pos = fourier_transform_at(m, xi)
    f_neg = fourier_transform_at(m, -xi)
    assert np.max(np.abs(f_neg - np.conj(f_pos))) < 1e-12


def test_translation_changes_only_phase():
    base = make_cantor_measure(1 / 3, 6)
    shifted = DiscreteMeasure(
        dim=1, atoms=base.atoms + 0.37, weights=base.weights, label="shifted"
    )
    xi = np.linspace(0.5, 20.0, 100)
    a = fourier_transform_at(base, xi)
    b = fourier_transform_at(shifted, xi)
    assert np.max(np.abs(np.abs(a) - np.abs(b))) < 1e-12
    # and the phase factor is exactly exp(-2 pi i 0.37 xi)
    assert np.max(np.abs(b - a * np.exp(-2j * np.pi * 0.37 * xi))) < 1e-12


def test_transform_dimension_mismatch():
    m = make_sphere_measure(2, 64)
    with pytest.raises(ValueError, match="dimension"):
        fourier_transform_at(m, np.zeros((3, 3)))


def test_ball_profile_circle_is_one_regular():
    m = make_sphere_measure(2, 4096)
    prof = ball_regularity_profile(m, [2.0 ** (-k) for k in range(2, 9)])
    assert 0.9 <= prof.a_fit <= 1.1
    ratios = np.array(prof.max_ball_ratios)
    assert np.max(ratios) / np.min(ratios) < 1.3


def test_ball_profile_cantor_matches_similarity_dimension():
    m = make_cantor_measure(1 / 3, 14)
    prof = ball_regularity_profile(m, [3.0 ** (-k) for k in range(2, 9)])
    assert abs(prof.a_fit - math.log(2.0) / math.log(3.0)) < 0.01
    ratios = np.array(prof.max_ball_ratios)
    assert np.max(ratios) / np.min(ratios) < 1.01


def test_ball_profile_quarter_ratio_cantor():
    m = make_cantor_measure(0.25, 8)
    prof = ball_regularity_profile(m, [4.0 ** (-k) for k in range(2, 7)])
    assert abs(prof.a_fit - 0.5) < 0.02


def test_ball_profile_point_mass_clamps_to_zero():
    prof = ball_regularity_profile(make_point_mass([0.3]), [0.5, 0.25, 0.125])
    assert prof.a_fit == 0.0
    assert np.allclose(prof.max_ball_ratios, 1.0)


def test_ball_profile_subsampled_centers_match_full():
    # equal weights and symmetric geometry: stride subsampling is exact here
    m = make_sphere_measure(2, 512)
    radii = [2.0 ** (-k) for k in range(2, 6)]
    full = ball_regularity_profile(m, radii)
    sub = ball_regularity_profile(m, radii, n_centers=64)
    assert full.a_fit == pytest.approx(sub.a_fit, abs=1e-12)


def test_ball_profile_radius_validation():
    m = make_sphere_measure(2, 64)
    with pytest.raises(ValueError, match="3 distinct radii"):
        ball_regularity_profile(m, [0.5, 0.25])
    with pytest.raises(ValueError, match="lie in"):
        ball_regularity_profile(m, [2.0, 0.5, 0.25])


def test_decay_profile_circle_has_half_power():
    m = make_sphere_measure(2, 8192)
    prof = fourier_decay_profile(m, [2.0**k for k in range(1, 9)])
    assert 0.45 <= prof.b_fit <= 0.55


def test_decay_profile_cantor_along_scaling_sequence_is_flat():
    # at xi = 3^m every factor with k <= m equals 1, so the sup along the
    # powers of three never decays
    m = make_cantor_measure(1 / 3, 16)
    prof = fourier_decay_profile(m, [3.0**k for k in range(0, 8)])
    assert prof.b_fit < 0.01
    sups = np.array(prof.annulus_sups)
    assert np.max(sups) / np.min(sups) < 1.01


def test_decay_profile_point_mass_has_no_decay():
    prof = fourier_decay_profile(make_point_mass([0.2]), [1.0, 2.0, 4.0, 8.0])
    assert prof.b_fit == 0.0
    assert np.allclose(prof.annulus_sups, 1.0, atol=1e-12)


def test_decay_profile_validation():
    m = make_sphere_measure(2, 256)
    with pytest.raises(ValueError, match="3 radii"):
        fourier_decay_profile(m, [1.0, 2.0])
    with pytest.raises(ValueError, match="increasing"):
        fourier_decay_profile(m, [4.0, 2.0, 1.0])
    with pytest.raises(ValueError, match="R >= 1"):
        fourier_decay_profile(m, [0.5, 2.0, 4.0])
    with pytest.raises(ValueError, match="aliasing radius"):
        fourier_decay_profile(m, [1.0, 2.0, 1e6])


def test_dyadic_piece_of_point_mass_is_pure_ring():
    # mu_hat = 1, so the localized lattice samples are exactly the ring
    g = GridSpec(1, 2.0, 128)
    piece = dyadic_piece(make_point_mass([0.0]), 3, g)
    assert piece.sup_mu_hat_j == pytest.approx(1.0, abs=1e-15)
    back = fourier_on_grid(piece.field.values, g)
    ring = dyadic_ring(g.freq_axis() ** 2, 3)
    assert np.max(np.abs(back - ring)) < 1e-12


def test_dyadic_pieces_sum_to_low_pass():
    g = GridSpec(2, 2.0, 32)
    m = make_sphere_measure(2, 64)
    total = None
    for j in range(3):
        f = dyadic_piece(m, j, g).field.values
        total = f if total is None else total + f
    fx, fy = g.freq_mesh()
    lattice = np.stack([fx.ravel(), fy.ravel()], axis=1)
    mu_hat = fourier_transform_at(m, lattice).reshape(fx.shape)
    ref = inverse_fourier_on_grid(mu_hat * radial_plateau((fx**2 + fy**2) / 4.0**2), g)
    assert np.max(np.abs(total - ref)) < 1e-12


def test_dyadic_piece_resolution_check():
    g = GridSpec(1, 2.0, 128)  # Nyquist radius 16
    with pytest.raises(ValueError, match="too coarse"):
        dyadic_piece(make_point_mass([0.0]), 5, g)
    with pytest.raises(ValueError, match="nonnegative"):
        dyadic_piece(make_point_mass([0.0]), -1, g)
    with pytest.raises(ValueError, match="dimension"):
        dyadic_piece(make_sphere_measure(2, 64), 2, g)


def test_save_load_round_trip(tmp_path):
    m = make_cantor_measure(1 / 3, 5)
    path = tmp_path / "atoms.txt"
    save_measure(m, path)
    back = load_measure(path)
    assert back.dim == m.dim
    assert back.label == m.label
    assert np.array_equal(back.atoms, m.atoms)
    assert np.array_equal(back.weights, m.weights)
    assert back.alias_radius == math.inf


def test_load_rejects_malformed_files(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 3 short\n0.0 1.0\n", encoding="ascii")
    with pytest.raises(ValueError, match="announces"):
        load_measure(bad)
    bad2 = tmp_path / "bad2.txt"
    bad2.write_text("2 1 cols\n0.0 1.0\n", encoding="ascii")
    with pytest.raises(ValueError, match="columns"):
        load_measure(bad2)


def test_random_cantor_is_reproducible_and_valid():
    a = make_random_cantor_measure(1 / 3, 6, seed=5, experimental=True)
    b = make_random_cantor_measure(1 / 3, 6, seed=5, experimental=True)
    assert np.array_equal(a.atoms, b.atoms)
    assert a.n_atoms == 64
    assert np.all(a.atoms >= 0.0) and np.all(a.atoms <= 1.0)
