import numpy as np
import pytest

from henon_pruning.slices import SliceConfig, SliceImage, unstable_slice

FIG4_A = 2.8187 + 0.0119j


def test_deterministic_rerender():
    cfg = SliceConfig(resolution=128)
    a = unstable_slice(FIG4_A, 0.4, cfg)
    b = unstable_slice(FIG4_A, 0.4, cfg)
    assert a.to_pgm() == b.to_pgm()


def test_conjugate_parameter_mirrors_image():
    cfg = SliceConfig(resolution=128)
    plus = unstable_slice(FIG4_A, 0.4, cfg)
    minus = unstable_slice(FIG4_A.conjugate(), 0.4, cfg)
    assert np.array_equal(minus.counts, plus.counts[::-1, :])


def test_metadata_echo():
    img = unstable_slice(FIG4_A, 0.4, SliceConfig(resolution=64))
    assert img.metadata["a"] == FIG4_A
    assert img.metadata["b"] == 0.4
    assert img.metadata["seed_depth"] == 24
    assert img.metadata["budget"] == 200
    assert img.width == img.height == 64


def test_hov_parameter_mostly_escapes():
    img = unstable_slice(10, 0.3, SliceConfig(resolution=256))
    assert 1 - img.escaped_fraction() < 0.05


def test_counts_within_budget():
    img = unstable_slice(FIG4_A, 0.4, SliceConfig(resolution=64, budget=50))
    assert img.counts.dtype == np.uint16
    assert img.counts.max() <= 50


def test_refinement_keeps_coarse_sample_status():
    """Doubling the grid keeps the shared sample points' escaped/bounded
    status for at least 99% of points (odd resolutions share pixel centers)."""
    coarse = unstable_slice(FIG4_A, 0.4, SliceConfig(resolution=65))
    fine = unstable_slice(FIG4_A, 0.4, SliceConfig(resolution=129))
    shared = fine.counts[::2, ::2]
    agreement = np.mean((shared == 0) == (coarse.counts == 0))
    assert agreement >= 0.99


def test_pgm_format():
    img = unstable_slice(FIG4_A, 0.4, SliceConfig(resolution=16))
    text = img.to_pgm().decode("ascii").splitlines()
    assert text[0] == "P2"
    assert text[1].startswith("# a=")
    assert text[2] == "16 16"
    assert text[3] == "200"
    values = [int(v) for row in text[4:] for v in row.split()]
    assert len(values) == 256
    assert values == [int(v) for v in img.counts.ravel()]


def test_config_validation():
    with pytest.raises(ValueError):
        SliceConfig(resolution=1)
    with pytest.raises(ValueError):
        SliceConfig(radius=0)
    with pytest.raises(ValueError):
        SliceConfig(budget=0)


def test_degenerate_parameters_rejected():
    # discriminant (1+b)^2 + 4a = 0 -> no saddle
    with pytest.raises(ValueError):
        unstable_slice(-0.25 * (1.4) ** 2 / 1.0, 0.4, SliceConfig(resolution=16))


def test_real_parameter_image_is_self_mirror():
    img = unstable_slice(5.4, 1.0, SliceConfig(resolution=64))
    assert np.array_equal(img.counts, img.counts[::-1, :])
